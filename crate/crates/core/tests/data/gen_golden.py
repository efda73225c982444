#!/usr/bin/env python3
"""Regenerate golden.json: high-precision reference values for the test suite.

Every series value is computed twice (mpmath `hyper` and an `nsum`
extrapolation of the termwise gamma sum) at 40 digits and the two must agree
to 30 digits before a value is written. Run from this directory:

    python3 gen_golden.py > golden.json
"""
import json

from mpmath import mp, mpc, mpf, gamma, hyper, inf, loggamma, nsum, pi, rgamma, sin

mp.dps = 40


def c(re, im=0):
    return mpc(mpf(re), mpf(im))


def enc(z):
    z = mpc(z)
    return [mp.nstr(z.real, 25), mp.nstr(z.imag, 25)]


def star_hyper(num, den):
    pre = gamma(num[0]) * gamma(num[1]) * gamma(num[2]) * gamma(num[3])
    pre *= rgamma(den[0]) * rgamma(den[1]) * rgamma(den[2])
    return pre * hyper(num, den, 1)


def star_nsum(num, den):
    def term(k):
        t = gamma(k + num[0]) * gamma(k + num[1]) * gamma(k + num[2]) * gamma(k + num[3])
        return t * rgamma(k + 1) * rgamma(k + den[0]) * rgamma(k + den[1]) * rgamma(k + den[2])

    return nsum(term, [0, inf])


def star(num, den):
    x = star_hyper(num, den)
    y = star_nsum(num, den)
    assert abs(x - y) <= mpf(10) ** -30 * abs(x), (num, den, x, y)
    return x


def balanced_g(a, b, cc, d, e, f):
    return 1 + a + b + cc + d - e - f


def k_fn(x):
    a, b, cc, d, e, f, g = x
    s1 = star([a, b, cc, d], [e, f, g])
    s2 = star([a, 1 + a - e, 1 + a - f, 1 + a - g], [1 + a - b, 1 + a - cc, 1 + a - d])
    pre = sin(pi * a) * gamma(a) ** 2 * gamma(b) * gamma(cc) * gamma(d)
    pre *= gamma(1 + a - e) * gamma(1 + a - f) * gamma(1 + a - g)
    return (s1 + s2) / pre


def l_fn(x):
    a, b, cc, d, e, f, g = x
    s1 = star([a, b, cc, d], [e, f, g])
    s2 = star([1 + a - e, 1 + b - e, 1 + cc - e, 1 + d - e], [2 - e, 1 + f - e, 1 + g - e])
    pre = sin(pi * e) * gamma(a) * gamma(b) * gamma(cc) * gamma(d)
    pre *= gamma(1 + a - e) * gamma(1 + b - e) * gamma(1 + cc - e) * gamma(1 + d - e)
    return (s1 - s2) / pre


def vwp_7f6(A, B, C, D, E, F):
    return hyper(
        [A, 1 + A / 2, B, C, D, E, F],
        [A / 2, 1 + A - B, 1 + A - C, 1 + A - D, 1 + A - E, 1 + A - F],
        1,
    )


out = {}

out["lngamma"] = [
    {"z": enc(z), "value": enc(loggamma(z))}
    for z in [c(1), c("0.5"), c("3.7", "1.2"), c("-2.3", "0.7"), c("0.2", "-4.5"), c("12.5", "3.0")]
]
out["sinpi"] = [{"z": enc(z), "value": enc(sin(pi * z))} for z in [c("0.25", 1), c("-3.7", "0.4")]]
out["recip_gamma"] = [
    {"z": enc(z), "value": enc(rgamma(z))} for z in [c("-2.5", "0.3"), c("4.2", "-1.1")]
]

# x*: the golden point on the balanced hyperplane.
xs = [c("0.31", "0.12"), c("0.42", "-0.07"), c("0.57", "0.21"), c("0.23", "-0.15"), c("0.66", "0.05"), c("0.74", "-0.18")]
xs.append(balanced_g(*xs))
a, b, cc, d, e, f, g = xs

big = [c("1.7", "0.4"), c("2.3", "-0.2"), c("0.9", "0.1"), c("1.4"), c("2.1", "0.3"), c("3.2")]
big.append(balanced_g(*big))

real = [mpf(s) for s in ["0.21", "0.33", "0.47", "0.59", "1.13", "1.27"]]
real.append(balanced_g(*real))

series_points = [
    (real[:4], real[4:]),
    (xs[:4], xs[4:]),
    ([a, 1 + a - e, 1 + a - f, 1 + a - g], [1 + a - b, 1 + a - cc, 1 + a - d]),
    ([1 + a - e, 1 + b - e, 1 + cc - e, 1 + d - e], [2 - e, 1 + f - e, 1 + g - e]),
    (big[:4], big[4:]),
]
out["star_4f3"] = [
    {"num": [enc(v) for v in num], "den": [enc(v) for v in den], "value": enc(star(num, den))}
    for num, den in series_points
]

w0x = [1 - a, 1 - b, 1 - cc, 1 - d, 2 - e, 2 - f, 2 - g]
A_, B_, C_, D_, E_, F_ = d + g - e, g - a, g - b, g - cc, d, 1 + d - e
out["x_star"] = [enc(v) for v in xs]
out["k_x_star"] = enc(k_fn(xs))
out["l_x_star"] = enc(l_fn(xs))
out["k_w0_x_star"] = enc(k_fn(w0x))
out["vwp_x_star"] = {
    "params": [enc(v) for v in (A_, B_, C_, D_, E_, F_)],
    "value": enc(vwp_7f6(A_, B_, C_, D_, E_, F_)),
}

print(json.dumps(out, indent=1))
