"""Why almost no sample is 'good' at laboratory sizes.

The five goodness conditions carry fixed exponents (n^.6, n^.2, n^.4).  This
script reports, per n, how often each condition holds and how far the
worst anti-diagonal deviation is from its n^.6 allowance.

    python demos/goodness_diagnostics.py
"""

import numpy as np

from permuton_lab import goodness, make_rng, sample_av_increasing

D, EPS, SAMPLES = 3, 0.05, 20


def main():
    print("    n   c1    c2    c3    c4    c5   good   median max|s(i)+i-n-1| / n^.6")
    for n in (100, 400, 1600):
        flags, ratios = [], []
        for stream in range(SAMPLES):
            s = sample_av_increasing(n, D, make_rng(3, stream), max_n=1600)
            flags.append(goodness(s, EPS, D).condition_flags)
            dev = max(abs(v + i - n - 1) for i, v in enumerate(s, 1))
            ratios.append(dev / n ** 0.6)
        f = np.mean(np.array(flags), axis=0)
        good = np.mean([all(x) for x in flags])
        print(f"{n:5d}  " + "  ".join(f"{x:.2f}" for x in f) + f"   {good:.2f}   {np.median(ratios):.2f}")
    print("\nThe deviation ratio shrinks roughly like n^-0.1, so condition 1 needs n far beyond 10^4.")


if __name__ == "__main__":
    main()
