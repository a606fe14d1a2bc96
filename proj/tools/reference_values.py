"""High-precision reference values frozen into the unit tests (requires mpmath)."""

import mpmath as mp

mp.mp.dps = 40

CHI5 = [0, 1, -1, -1, 1]
CHI3 = [0, 1, -1]


def show(label, value):
    print(f"{label:32s} {mp.nstr(value, 34)}")


def khat(s, a, b):
    return (mp.exp(s * s) / s * mp.cos(mp.pi * (s + a)) / mp.cos(mp.pi * a)
            * mp.cos(mp.pi * (s - b)) / mp.cos(mp.pi * b)
            * mp.gamma(s + 0.5 - b) * mp.cos(mp.pi / 2 * (s + 0.5 - b)))


def kernel(x, a, b, c=1, T=16):
    f = lambda t: khat(c + 1j * t, a, b) * mp.power(x, -(c + 1j * t))
    return mp.power(x, b - 0.5) / (2 * mp.pi) * mp.quad(f, mp.linspace(-T, T, 33))


def ghat_series(s):
    return mp.gamma(s + 0.5) * mp.exp(-1j * mp.pi * s / 2) * mp.exp(s * s) * mp.cos(mp.pi * s) / s


def kernel_series(x, T=16):
    c = max(1, mp.log(x) / 2)
    f = lambda t: ghat_series(c + 1j * t) * mp.power(x, -(c + 1j * t))
    return mp.exp(1j * x - 1j * mp.pi / 4) / (2 * mp.pi) * mp.quad(f, mp.linspace(-T, T, 33))


def chars_mod5():
    out = []
    for k in range(4):
        t, a = [0] * 5, 1
        for j in range(4):
            t[a] = mp.mpc(0, 1) ** (k * j)
            a = a * 2 % 5
        out.append(t)
    return out


show("zeta(1/2)", mp.zeta(0.5))
show("zeta(-1/2)", mp.zeta(-0.5))
show("L(1/2, chi_5)", mp.dirichlet(0.5, CHI5))
show("L(1, chi_5)", mp.dirichlet(1, CHI5))
show("L(1/2, chi_3)", mp.dirichlet(0.5, CHI3))
show("zeta(0.3+5i, 0.7)", mp.zeta(mp.mpc(0.3, 5), 0.7))
show("zeta(0.5+40i, 0.25)", mp.zeta(mp.mpc(0.5, 40), 0.25))
show("zeta(-0.5+i, 0.1)", mp.zeta(mp.mpc(-0.5, 1), 0.1))
show("zeta(2, 0.01)", mp.zeta(2, 0.01))
show("Gamma(0.3+0.2i)", mp.gamma(mp.mpc(0.3, 0.2)))
show("Gamma(0.5+10i)", mp.gamma(mp.mpc(0.5, 10)))
show("Gamma(-2.5+0.5i)", mp.gamma(mp.mpc(-2.5, 0.5)))
show("digamma(0.3-0.4i)", mp.digamma(mp.mpc(0.3, -0.4)))
for n in range(4):
    show(f"stieltjes gamma_{n}", mp.stieltjes(n))
show("A = gamma - log 8 pi", mp.euler - mp.log(8 * mp.pi))
show("B = 2 zeta(1/2)^2", 2 * mp.zeta(0.5) ** 2)

for x in (0.5, 2, 10):
    show(f"K_00({x})", kernel(x, 0, 0))
show("K(3; 0.02, 0.01)", kernel(3, 0.02, 0.01))
show("K(0.3; 0.01i, -0.005i)", kernel(0.3, 0.01j, -0.005j))
for x in (1, 5, 100):
    show(f"series kernel K({x})", kernel_series(x))

L = [mp.dirichlet(0.5, chi) for chi in chars_mod5()]
chi = chars_mod5()
show("T(5)", mp.zeta(0.5) ** 2 + mp.mpf(5) / 4 * sum(abs(v) ** 2 for v in L))
show("S(5, 2)", mp.re(sum(abs(L[k]) ** 2 * chi[k][2] for k in range(1, 4))))
