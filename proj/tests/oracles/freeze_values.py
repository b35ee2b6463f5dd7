#!/usr/bin/env python3
"""Recomputes the reference values frozen into the unit tests.

Independent of the C++ code: direct evaluation at 50 digits with mpmath,
plus brute-force scans for best responses and equilibrium sets.

    python3 tests/oracles/freeze_values.py
"""
from mpmath import mp, mpf, exp, log

mp.dps = 50
PB0 = mpf("0.001")


def err_ber(gamma, a):
    return mpf(0) if a == 0 else mpf("0.2") * exp(-mpf("1.5") * gamma / (2**a - 1))


def err_pow(gamma, a):
    return -log(5 * PB0) * (2**a - 1) / (mpf("1.5") * gamma)


def cost(err, w, gamma, a, b):
    return w * err(gamma, a) + mpf(b + 1) / (a + 1)


def argmin(values, largest):
    best = min(values)
    idx = [k for k, v in enumerate(values) if v == best]
    return idx[-1] if largest else idx[0]


def psne(err, w, am, g1, g2):
    out = []
    for a1 in range(am + 1):
        for a2 in range(am + 1):
            c1 = cost(err, w, g1, a1, a2)
            c2 = cost(err, w, g2, a2, a1)
            if all(c1 <= cost(err, w, g1, d, a2) for d in range(am + 1)) and all(
                c2 <= cost(err, w, g2, d, a1) for d in range(am + 1)
            ):
                out.append((a1, a2))
    return out


def main():
    w = mpf("0.05")
    print("c_e ber_bound(1, 1)      =", mp.nstr(err_ber(1, 1), 17))
    print("c_e power_proxy(2, 2)    =", mp.nstr(err_pow(2, 2), 17))
    print("cost pp w=.05 (7,4,8)    =", mp.nstr(cost(err_pow, w, 7, 4, 8), 17))
    print("cost ber w=50 (1,1,0)    =", mp.nstr(cost(err_ber, 50, 1, 1, 0), 17))
    sa = [cost(err_pow, w, 7, a, 0) for a in range(10)]
    print("single-agent pp w=.05 g=7 =", argmin(sa, True))
    br = [cost(err_pow, w, 7, a, 8) for a in range(10)]
    print("best response pp (7, 8)  =", argmin(br, True),
          [mp.nstr(v, 4) for v in br[:6]])
    sa_low = [cost(err_ber, 50, mpf("0.001"), a, 0) for a in range(10)]
    print("single-agent ber g=1e-3  =", argmin(sa_low, True))
    for wt in (w, mpf("0.06")):
        eq = psne(err_pow, wt, 9, 7, 8)
        print(f"PSNE pp w={mp.nstr(wt, 3)} (7,8) =", eq,
              "first-component max/min:", max(p[0] for p in eq), min(p[0] for p in eq))
    # Effective SNR with unit powers, noises and gains: relay gain^2 = 1/3,
    # so the path SNR is 1 / (1 + 1 / (G^2 s_r)) = 1 / (1 + 3).
    g_sq = mpf(1) / 3
    print("effective snr unit       =", mp.nstr(1 / (1 + 1 / g_sq), 17))


if __name__ == "__main__":
    main()
