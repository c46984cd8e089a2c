"""Regenerate the frozen reference values used by the test suite.

Independent of the package: everything here is mpmath at 30 digits.  Run
``python tools/oracles.py`` (add ``--fast`` to skip the near-extremal Hardy
ratios, which take a few minutes).
"""

import argparse

import mpmath as mp

mp.mp.dps = 30


def kernel_values():
    term = lambda n: 1 / (mp.sqrt(n) * (1 + n))  # noqa: E731
    part4 = mp.fsum(term(n) for n in range(1, 10_001))
    part5 = mp.fsum(term(n) for n in range(1, 100_001))
    yield "KERNEL_PARTIAL_E2_M1_N1E4", part4
    yield "KERNEL_PARTIAL_E2_M1_N1E5", part5
    # tail bound e m^(1/e) N^(-1/e) with e=2, m=1
    yield "KERNEL_CORRECTED_E2_M1_N1E5", part5 + 2 / mp.sqrt(100_000)
    yield "KERNEL_SERIES_E2_M1", mp.nsum(term, [1, mp.inf])


def zeta_partial():
    yield "ZETA2_PARTIAL_1E4", mp.fsum(mp.mpf(1) / n**2 for n in range(1, 10_001))


def hardy_spike():
    # a_1 = 1, a_n = 1e-12 otherwise; A_n = 1 + (n - 1) eps
    eps, N = mp.mpf("1e-12"), 10_000
    lhs = mp.fsum(((1 + (n - 1) * eps) / n) ** 2 for n in range(1, N + 1))
    yield "HARDY_EPS_RATIO", lhs / (4 * (1 + (N - 1) * eps**2))


def hilbert_decay():
    # a_m = m^-0.6 (binary exponent, as the test feeds it), M = N = 1000, e = 2;
    # the double sum grouped by s = m + n
    a = [mp.mpf(m) ** mp.mpf(-0.6) for m in range(1, 1001)]
    S = mp.fsum(
        mp.fsum(a[m - 1] * a[s - m - 1] for m in range(max(1, s - 1000), min(1000, s - 1) + 1)) / s
        for s in range(2, 2001)
    )
    yield "HILBERT_DECAY06_RATIO", S / (mp.pi * mp.fsum(x**2 for x in a))


def hardy_family(M=200_000):
    """Full-series Hardy ratios for a_n = n^(-1/2 - delta), e = 2.

    Partial sums are exact Hurwitz-zeta differences; past M the sum is an
    integral with Euler-Maclaurin endpoint terms.  The integrand decays like
    t^(-1 - 2 delta), so split points run out to M e^2000.
    """
    for d in ("0.2", "0.1", "0.05", "0.02"):
        s = mp.mpf("0.5") + mp.mpf(d)
        zs = mp.zeta(s)
        A = mp.mpf(0)
        head = []
        for n in range(1, M + 1):
            A += mp.mpf(n) ** -s
            head.append((A / n) ** 2)
        f = lambda t: ((zs - mp.zeta(s, t + 1)) / t) ** 2  # noqa: E731
        pts = [mp.mpf(M)] + [mp.mpf(M) * mp.e**k for k in range(2, 2000, 2)] + [mp.inf]
        tail = mp.quad(f, pts) - f(M) / 2 - mp.diff(f, M) / 12 + mp.diff(f, M, 3) / 720
        yield f"HARDY_FAMILY_RATIOS[{d}]", (mp.fsum(head) + tail) / (4 * mp.zeta(2 * s))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fast", action="store_true", help="skip the near-extremal Hardy ratios")
    args = ap.parse_args()
    groups = [kernel_values, zeta_partial, hardy_spike, hilbert_decay]
    if not args.fast:
        groups.append(hardy_family)
    for group in groups:
        for name, value in group():
            print(f"{name} = {mp.nstr(value, 30)}", flush=True)


if __name__ == "__main__":
    main()
