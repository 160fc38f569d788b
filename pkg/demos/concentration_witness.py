"""Find the shortest inflated increasing oscillation that is not (2,2)-concentrated.

Run: python3 demos/concentration_witness.py
"""
from permgrowth.concentration import cover_for_line, inflated_oscillation_witness, render


def main():
    w = inflated_oscillation_witness(2, 2, 14)
    p, line = w["perm"], w["line"]
    print(f"length {w['n']}: {p.compact()} has no (2,2) cover for {line.orientation} line at {line.position}")
    # for contrast, a (3,2) cover of the same line exists
    cover = cover_for_line(p, line, 3, 2)
    print("a (3,2) cover instead (letters mark rectangles, * the remainder):")
    print(render(p, cover))


if __name__ == "__main__":
    main()
