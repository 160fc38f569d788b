"""Re-derive the small growth-rate charts and show where printed values disagree.

Run: python3 demos/growth_tables.py
"""
from permgrowth import load_manifest, verify_tables
from permgrowth.manifest import ERRATUM


def main():
    report = verify_tables(load_manifest(), timestamp=False)
    for r in report.results:
        if r.entry.kind == "growth" and r.entry.input.startswith(("sum", "skew")):
            print(f"{r.entry.input:>12}  printed {r.entry.expected:>8}  certified {float(r.computed):.5f}  {r.status}")
    print()
    print("rows flagged as printing errors:")
    for r in report.results:
        if r.status == ERRATUM:
            print(f"  {r.entry.id}: printed {r.entry.expected}, recomputed {r.computed}")
    print(report.summary)


if __name__ == "__main__":
    main()
