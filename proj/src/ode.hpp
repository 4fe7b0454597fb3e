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

#pragma once

#include <array>
#include <boost/numeric/odeint.hpp>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dualreg {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

namespace detail {

// Integrates y' = f(x, y) through the points xs (xs[0] is the start),
// calling obs(i, y) at each. Odeint failures become StepSizeUnderflow.
template <class Sys, class Obs>
void integrate_through(Sys&& sys, State& y, const std::vector<double>& xs, double tol, Obs&& obs) {
  if (xs.size() < 2) {
    if (!xs.empty()) obs(0, y);
    return;
  }
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
  std::size_t i = 0;
  try {
    odeint::integrate_times(
        stepper, [&](const State& s, State& ds, double x) { sys(x, s, ds); }, y, xs.begin(), xs.end(),
        (xs[1] - xs[0]) * 0.5, [&](const State& s, double) { obs(i++, s); }, odeint::max_step_checker(100000));
  } catch (const std::exception& e) {
    fail(ErrorCode::StepSizeUnderflow, std::string("ODE integration stalled near x = ") +
                                           std::to_string(xs[std::min(i, xs.size() - 1)]) + " (" + e.what() + ")");
  }
}

}  // namespace detail

}  // namespace dualreg
