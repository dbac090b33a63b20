"""Uniform permutations avoiding J_2 + I_1 + I_1 pile up on the anti-diagonal.

Samples pi_n for growing n, prints the mass outside the band |x + y - 1| <= 0.2
and the rectangle-sup distance to the anti-diagonal permuton, then sketches a
sample on a coarse grid.

    python demos/convergence_to_antidiagonal.py
"""

import numpy as np

from permuton_lab import ClassSpec, WRegionSpec, make_rng, mu_w, rect_sup_distance, sample_target_class

SPEC = ClassSpec(2, 1, 1)


def sketch(perm, cells=24):
    n = len(perm)
    grid = np.zeros((cells, cells), dtype=int)
    for i, v in enumerate(perm):
        grid[cells - 1 - (v - 1) * cells // n, i * cells // n] += 1
    for row in grid:
        print("".join("#" if c > 1 else "+" if c else " " for c in row))


def main():
    print("    n   median W_0.2   median rect-sup")
    for n in (50, 200, 800):
        ws, rs = [], []
        for stream in range(20):
            pi = sample_target_class(n, SPEC, make_rng(1, stream))
            ws.append(mu_w(pi, WRegionSpec(0.2)))
            rs.append(rect_sup_distance(pi, 64))
        print(f"{n:5d}   {np.median(ws):12.4f}   {np.median(rs):15.4f}")
    print("\none sample at n = 800:")
    sketch(sample_target_class(800, SPEC, make_rng(1, 0)))


if __name__ == "__main__":
    main()
