// Copyright 2026 The dualreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "numerics.hpp"

using namespace dualreg;
using std::numbers::pi;

TEST_CASE("adaptive quadrature on closed forms") {
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0).value == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
  CHECK(integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, INFINITY).value ==
        doctest::Approx(pi / 2).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY).value ==
        doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  // Reversed limits flip the sign.
  CHECK(integrate([](double x) { return x * x; }, 2.0, 0.0).value == doctest::Approx(-8.0 / 3).epsilon(1e-14));
  // Sharp peak that a single panel misses.
  const double w = 1e-4;
  const auto peak = [w](double x) { return w / (w * w + x * x) / pi; };
  CHECK(integrate(peak, -1.0, 1.0).value == doctest::Approx(2.0 / pi * std::atan(1.0 / w)).epsilon(1e-11));
}

TEST_CASE("quadrature failure is reported, not returned") {
  QuadOptions opt;
  opt.max_depth = 2;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / x); }, 1e-8, 1.0, opt), Error);
}

TEST_CASE("tiny integrals pass through the absolute floor") {
  const auto r = integrate([](double x) { return 1e-300 * std::exp(-x); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1e-300 * (1 - std::exp(-1.0))).epsilon(1e-10));
}

TEST_CASE("endpoint-singular rule handles a log singularity") {
  const auto r = integrate_endpoint_singular([](double x) { return std::log(x); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("piecewise integration sums l1") {
  const auto r = integrate_pieces([](double x) { return std::sin(x); }, {0.0, pi, 2 * pi});
  CHECK(std::abs(r.value) < 1e-13);
  CHECK(r.l1 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("least squares recovers a polynomial and its error bars vanish") {
  std::vector<double> x, y;
  for (int i = 0; i < 7; ++i) {
    x.push_back(0.1 * i);
    y.push_back(1.0 - 2.0 * x.back() + 0.5 * x.back() * x.back());
  }
  const LsqFit f = polyfit(x, y, 2);
  CHECK(f.coef(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.coef(1) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(f.coef(2) == doctest::Approx(0.5).epsilon(1e-11));
  CHECK(f.stderr_(2) < 1e-10);
  CHECK(loglog_slope({1, 2, 4}, {3, 24, 192}) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("Fornberg weights reproduce the centered second difference") {
  const double xs[3] = {-1.0, 0.0, 1.0};
  double c[9];
  fornberg_weights(0.0, xs, 3, 2, c);
  // c[j + 3 m]
  CHECK(c[0 + 6] == doctest::Approx(1.0));
  CHECK(c[1 + 6] == doctest::Approx(-2.0));
  CHECK(c[2 + 6] == doctest::Approx(1.0));
}

TEST_CASE("grid derivative of an odd function uses the mirrored stencil") {
  std::vector<double> x, f;
  for (int i = 0; i <= 200; ++i) {
    x.push_back(0.01 * i * (1 + 0.002 * i));
    f.push_back(std::sin(x.back()));
  }
  const auto d1 = grid_derivative(x, f, 1, Parity::Odd);
  const auto d2 = grid_derivative(x, f, 2, Parity::Odd);
  double e1 = 0, e2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    e1 = std::max(e1, std::abs(d1[i] - std::cos(x[i])));
    e2 = std::max(e2, std::abs(d2[i] + std::sin(x[i])));
  }
  CHECK(e1 < 1e-7);
  CHECK(e2 < 1e-5);
}

TEST_CASE("refined grid is strictly increasing and hits the ends") {
  const auto g = refined_grid(1e-3, 2.0);
  REQUIRE(g.size() > 10);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 2.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}
