# SPDX-License-Identifier: Apache-2.0
"""Independent reference values frozen into the unit tests.

Run with python3; prints each value. Uses exact fractions, mpmath and a
separate numpy/scipy discretization (L-BFGS on the projected energy) that
shares no code with the C++ solver.
"""

from fractions import Fraction as F

import mpmath as mp
import numpy as np
from scipy.optimize import minimize

mp.mp.dps = 40


def ratio_factor(a, p, q, Q):
    core = a * p * q - Q * (q - p)
    pre = a * p * q / core
    base = Q * (q - p) / core
    expo = Q * (p - q) / (a * p * q)
    return pre, base, expo, mp.mpf(pre.numerator) / pre.denominator * mp.power(
        mp.mpf(base.numerator) / base.denominator, mp.mpf(expo.numerator) / expo.denominator)


def min_norm(orders, p, Q, q):
    pj = [p * Q / (Q - a * p) for a in orders]
    rows = [[F(1)] * len(pj), [1 / x for x in pj]]
    rhs = [F(1), 1 / q]
    g = [[sum(r1[k] * r2[k] for k in range(len(pj))) for r2 in rows] for r1 in rows]
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    y0 = (rhs[0] * g[1][1] - g[0][1] * rhs[1]) / det
    y1 = (g[0][0] * rhs[1] - g[1][0] * rhs[0]) / det
    return [y0 * rows[0][k] + y1 * rows[1][k] for k in range(len(pj))]


def ground_state_1d(n, half, a, p=2.0, q=3.0):
    h = 2 * half / n
    xi = np.pi / half * np.fft.fftfreq(n, d=1.0 / n)
    m = np.abs(xi) ** a

    def parts(u):
        ru = np.real(np.fft.ifft(m * np.fft.fft(u)))
        return ru, h * np.sum(np.abs(ru) ** p), h * np.sum(np.abs(u) ** p), h * np.sum(np.abs(u) ** q)

    def fun(u):
        ru, t1, t2, lq = parts(u)
        mu = ((t1 + t2) / lq) ** (1 / (q - p))
        v = mu * u
        rv = mu * ru
        val = (mu ** p) * (t1 + t2) / p - (mu ** q) * lq / q
        g = np.real(np.fft.ifft(m * np.fft.fft(np.abs(rv) ** (p - 2) * rv)))
        g += np.abs(v) ** (p - 2) * v - np.abs(v) ** (q - 2) * v
        return val, mu * g * h

    x = -half + h * np.arange(n)
    u0 = np.exp(-(x / (half / 8)) ** 2)
    res = minimize(fun, u0, jac=True, method="L-BFGS-B",
                   options={"maxiter": 20000, "ftol": 1e-16, "gtol": 1e-13, "maxcor": 30})
    return res.fun


if __name__ == "__main__":
    pre, base, expo, val = ratio_factor(F(2, 5), F(2), F(3), F(1))
    print("ratio factor (2/5,2,3,1):", pre, base, expo, mp.nstr(val, 30))
    print("critical exponents Q=3,p=2:", [F(2) * 3 / (3 - a * 2) for a in (F(1), F(1, 2), F(0))])
    print("min-norm s, orders (1,1/2,0) p=2 Q=3 q=5/2:", min_norm([F(1), F(1, 2), F(0)], F(2), F(3), F(5, 2)))
    print("min-norm s, orders (2/5,1/5,0) p=2 Q=1 q=3:", min_norm([F(2, 5), F(1, 5), F(0)], F(2), F(1), F(3)))
    print("Gaussian seminorm int |xi|^{4/5} exp(-xi^2) dxi = Gamma(9/10):", mp.nstr(mp.gamma(mp.mpf(9) / 10), 20))
    print("d, N=32 L=20:", repr(ground_state_1d(32, 20.0, 0.4)))
    print("d, N=1024 L=40:", repr(ground_state_1d(1024, 40.0, 0.4)))
