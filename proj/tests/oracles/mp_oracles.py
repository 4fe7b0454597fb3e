"""High-precision reference values frozen into the C++ tests.

Run with: python3 tests/oracles/mp_oracles.py
"""
import mpmath as mp

mp.mp.dps = 30

PROFILES = {
    "tanh": dict(
        s=lambda t: mp.tanh(t),
        d1=lambda t: mp.sech(t) ** 2,
        d2=lambda t: -2 * mp.tanh(t) * mp.sech(t) ** 2,
        support=mp.inf,
    ),
    "algebraic": dict(
        s=lambda t: t / mp.sqrt(1 + t * t),
        d1=lambda t: (1 + t * t) ** mp.mpf(-1.5),
        d2=lambda t: -3 * t * (1 + t * t) ** mp.mpf(-2.5),
        support=mp.inf,
    ),
    "smoothstep": dict(
        s=lambda t: t * (15 - 10 * t**2 + 3 * t**4) / 8 if abs(t) < 1 else mp.sign(t),
        d1=lambda t: mp.mpf(15) / 8 * (1 - t * t) ** 2 if abs(t) < 1 else 0,
        d2=lambda t: -mp.mpf(15) / 2 * t * (1 - t * t) if abs(t) < 1 else 0,
        support=1,
    ),
}


def transform(name, w):
    p = PROFILES[name]
    if p["support"] == 1:
        return 2 * mp.quad(lambda t: p["d1"](t) * mp.cos(w * t), [0, 1])
    if w == 0:
        return 2 * mp.quad(p["d1"], [0, mp.inf])
    return 2 * mp.quadosc(lambda t: p["d1"](t) * mp.cos(w * t), [0, mp.inf], omega=w)


def sq_integral(name):
    p = PROFILES[name]
    return 2 * mp.pi * 2 * mp.quad(lambda t: p["d1"](t) ** 2, [0, p["support"]])


def F_tanh(x):
    # closed form of the tanh transform: pi w / sinh(pi w / 2)
    return mp.quad(lambda z: z * mp.pi * z / mp.sinh(mp.pi * z / 2), [0, x])


def vhat(name, a, beta, lam):
    p = PROFILES[name]

    def V(y):
        t = y / a
        return beta / a**3 * (p["d2"](t) / t) / (1 + beta / a * p["s"](t) / t)

    if lam == 0:
        return 2 * mp.quad(V, [0, a, 10 * a, 40 * a, mp.inf])
    return 2 * mp.quad(lambda y: V(y) * mp.cos(lam * y), [0, a, 10 * a, 40 * a, mp.inf])


def sing_kernel_tanh(e):
    # Gauss-Legendre keeps nodes away from the poles at v = 0 and v = -e,
    # where the symmetric pairs cancel to leading order.
    gl = dict(method="gauss-legendre")
    F = lambda x: mp.quad(lambda z: mp.pi * z * z / mp.sinh(mp.pi * z / 2), [0, x], **gl)
    g = lambda v: (F(v + e) - F(v)) ** 2 / (v * (v + e))
    h = mp.mpf(e) / 2
    near0 = mp.quad(lambda t: g(t) + g(-t), [0, h / 8, h / 2, h], **gl)
    nearm = mp.quad(lambda t: g(-e + t) + g(-e - t), [0, h / 8, h / 2, h], **gl)
    right = mp.quad(g, [h, 1, 2, 4, 7, 10, 20, 40, 80], **gl)
    left = mp.quad(g, [-80 - e, -40 - e, -20 - e, -10 - e, -7 - e, -4 - e, -2 - e, -1 - e, -e - h], **gl)
    return near0 + nearm + right + left


def e1_order1_fermi(a, q=mp.pi):
    H = lambda d: (2 * q - abs(d)) / (4 * mp.pi**2)
    return -2 * mp.quad(lambda d: F_tanh(a * d) * H(d), [0, 2 * q]) / a**2


if __name__ == "__main__":
    for n in PROFILES:
        print(f"sq_integral {n} {mp.nstr(sq_integral(n), 20)}")
        for w in (0, 0.3, 1, 2.5, 7):
            print(f"transform {n} w={w} {mp.nstr(transform(n, w), 20)}")
    for x in (0.5, 2, 6):
        print(f"F tanh x={x} {mp.nstr(F_tanh(x), 20)}")
    for lam in (0, 1, 5):
        print(f"vhat tanh a=0.1 beta=0.05 lam={lam} {mp.nstr(vhat('tanh', mp.mpf('0.1'), mp.mpf('0.05'), lam), 20)}")
    print(f"sing_kernel tanh e=1 {mp.nstr(sing_kernel_tanh(1), 20)}")
    print(f"sing_kernel tanh e=0.2 {mp.nstr(sing_kernel_tanh(mp.mpf('0.2')), 20)}")
    print(f"E1_order1 fermi pi a=0.01 {mp.nstr(e1_order1_fermi(mp.mpf('0.01')), 20)}")
