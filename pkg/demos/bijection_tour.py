"""A walk through one BWX step and the full four-stage pipeline.

    python demos/bijection_tour.py
"""

from permuton_lab import ClassSpec, bwx_map, color_boxes, extract_lambda, format_perm, pipeline
from permuton_lab.perms import contains, decreasing, direct_sum, increasing

SIGMA = (14, 10, 17, 8, 20, 6, 15, 3, 13, 19, 11, 9, 2, 1, 18, 16, 4, 12, 7, 5)


def draw(perm, heights=None):
    # rows from the top; '#' marks a blue box, 'o' a point
    n = len(perm)
    for v in range(n, 0, -1):
        row = []
        for i, p in enumerate(perm, 1):
            if p == v:
                row.append("o")
            elif heights and v <= heights[i - 1]:
                row.append("#")
            else:
                row.append(".")
        print(" ".join(row))


def main():
    tau = increasing(2)
    print(f"sigma = {format_perm(SIGMA)}")
    print("sigma avoids I_2 + I_2:", not contains(SIGMA, direct_sum(increasing(2), tau)))

    col = color_boxes(SIGMA, tau)
    print("\nBlue boxes sit below and left of some occurrence of 12:")
    draw(SIGMA, col.heights)

    ext = extract_lambda(SIGMA, tau)
    print(f"\nblue points in columns {ext.col_map}; they form a traversal of shape {ext.shape.rows}")

    image = bwx_map(SIGMA, 2, tau, strategy="growth")
    moved = [i for i, (a, b) in enumerate(zip(SIGMA, image), 1) if a != b]
    print(f"image = {format_perm(image)}")
    print(f"moved columns {moved}; everything in the white region stays put")
    print("image avoids J_2 + I_2:", not contains(image, direct_sum(decreasing(2), tau)))
    draw(image, color_boxes(image, tau).heights)

    spec = ClassSpec(2, 1, 1)
    small = (3, 1, 4, 2, 6, 5)
    trace = pipeline(small, spec)
    print(f"\nfull pipeline for class {spec.as_list()} on {format_perm(small)}:")
    for name in ("sigma", "rho", "rho_rc", "pi_rc", "pi"):
        print(f"  {name:7s} {format_perm(getattr(trace, name))}")


if __name__ == "__main__":
    main()
