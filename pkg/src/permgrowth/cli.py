"""Command-line interface: ``permgrowth <group> <command> ...``.

Exit codes: 0 success, 1 computation error, 2 usage or input error,
3 verification mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import classes, concentration, gf, grid, manifest, perm, structure

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _perm(text: str) -> perm.Permutation:
    try:
        return perm.parse_perm(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _matrix(text: str) -> grid.ClassMatrix:
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return grid.load_matrix(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot read matrix: {exc}") from exc


def _ints(text: str) -> list:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


# ---------------------------------------------------------------------------
# handlers: each returns a JSON-serialisable result and a human text form


def _cmd_perm(a):
    p = _perm(a.perm)
    if a.cmd == "contains":
        host = _perm(a.host)
        r = perm.contains(p, host)
        return {"pattern": p.compact(), "host": host.compact(), "contains": r}, str(r).lower()
    if a.cmd == "symmetry":
        q = perm.symmetry(p, a.which)
        return {"perm": p.compact(), "which": a.which, "result": q.compact()}, q.compact()
    if a.cmd == "simple":
        r = perm.is_simple(p)
        return {"perm": p.compact(), "simple": r}, str(r).lower()
    if a.cmd == "decompose":
        t = perm.decompose(p)
        return t.to_dict(), json.dumps(t.to_dict())
    if a.cmd == "depth":
        d = perm.substitution_depth(p)
        return {"perm": p.compact(), "depth": d}, str(d)
    raise UsageError(a.cmd)


def _cmd_enum(a):
    if a.cmd == "members":
        spec = classes.parse_spec(a.spec)
        levels = classes.members(spec, a.n, cap=a.max_n)
        rows = [q.compact() for q in levels[a.n]]
        return {"spec": a.spec, "n": a.n, "members": rows}, "\n".join(rows)
    if a.cmd == "profile":
        p = _perm(a.perm)
        prof = classes.skew_indec_profile(p) if a.skew else classes.sum_indec_profile(p)
        return {"perm": p.compact(), "skew": a.skew, "profile": list(prof.head)}, str(prof)
    if a.cmd == "counts":
        c = classes.counts(classes.parse_spec(a.spec), a.n, cap=a.max_n)
        return {"spec": a.spec, "counts": c}, ",".join(map(str, c))
    raise UsageError(a.cmd)


def _cmd_growth(a):
    tol = a.tolerance or gf.DEFAULT_TOL
    if a.cmd == "profile":
        cert = gf.profile_growth(classes.parse_profile(a.profile), tol)
        return cert.to_dict(), str(cert)
    if a.cmd == "gf":
        f = gf.profile_closure_gf(classes.parse_profile(a.profile))
        return f.to_dict(), str(f)
    if a.cmd == "constant":
        cert = gf.named_constant(a.name, tol)
        return cert.to_dict(), str(cert)
    if a.cmd == "spectrum":
        found = gf.spectrum_below(a.bound, a.k_max, a.l_max)
        rows = [{"value": c.approx, "sources": list(c.sources)} for c in found]
        return {"bound": a.bound, "values": rows}, "\n".join(f"{r['value']:.10f}  {'; '.join(r['sources'])}" for r in rows)
    raise UsageError(a.cmd)


def _cmd_struct(a):
    p = _perm(a.perm)
    if a.cmd == "monotone":
        inc, dec = structure.longest_monotone(p)
        return {"perm": p.compact(), "increasing": inc, "decreasing": dec}, f"{inc} {dec}"
    if a.cmd == "alternation":
        rep = structure.longest_alternation(p, a.kind, a.orientation)
        return rep.to_dict(), f"{rep.length} {[i + 1 for i in rep.witness]}"
    if a.cmd == "two-lines":
        r = structure.two_lines_drawable(p)
        return {"perm": p.compact(), "two_lines": r}, str(r).lower()
    raise UsageError(a.cmd)


def _cmd_grid(a):
    if a.cmd in ("check", "count"):
        p, m = _perm(a.perm), _matrix(a.matrix)
        if a.cmd == "check":
            g = grid.find_gridding(p, m)
            if g is not None and not g.verify(m):
                raise AssertionError("returned gridding failed re-verification")
            data = {"perm": p.compact(), "gridding": g.to_dict() if g else None}
            return data, "none" if g is None else f"columns {list(g.columns)} rows {list(g.rows)}"
        c = grid.count_griddings(p, m)
        return {"perm": p.compact(), "griddings": c}, str(c)
    if a.cmd == "cellgraph":
        comps = grid.cell_graph(_matrix(a.matrix)).components()
        rows = [[list(c) for c in comp] for comp in comps]
        return {"components": rows}, "\n".join(str(r) for r in rows)
    if a.cmd == "decode":
        word = _ints(a.word) if "," in a.word else [int(c) for c in a.word]
        g = grid.vector_decode(word, _ints(a.vector))
        return g.to_dict(), ",".join(map(str, g.perm))
    if a.cmd == "encode":
        p = _perm(a.perm)
        vec = _ints(a.vector)
        cols = tuple(_ints(a.columns))
        g = grid.Gridding(p, cols, (1, len(p) + 1))
        w = grid.vector_encode(g, vec)
        return {"word": list(w)}, "".join(map(str, w))
    if a.cmd == "subword-growth":
        forbidden = [tuple(b) for b in a.forbidden.split(",") if b] if a.forbidden else []
        r = grid.subword_growth(list(a.alphabet), forbidden)
        return r.to_dict(), str(r.growth)
    if a.cmd == "scan":
        m = grid.griddability_scan(classes.parse_spec(a.c), classes.parse_spec(a.g), a.m_max, a.n_max)
        return {"largest_m": m}, str(m)
    raise UsageError(a.cmd)


def _cmd_conc(a):
    if a.cmd == "gamma":
        p = _perm(a.perm)
        r = concentration.gamma_membership(p, a.gamma)
        return {"perm": p.compact(), "gamma": a.gamma, "member": r}, str(r).lower()
    if a.cmd == "independent":
        p = _perm(a.perm)
        g = grid.Gridding(p, tuple(_ints(a.columns)), tuple(_ints(a.rows)))
        k = concentration.max_independent_special_rectangles(g, a.kind)
        return {"perm": p.compact(), "kind": a.kind, "max_independent": k}, str(k)
    p = _perm(a.perm)
    if a.cmd == "check":
        line = concentration.concentration_witness(p, a.q, a.r)
        data = {"perm": p.compact(), "q": a.q, "r": a.r, "concentrated": line is None}
        if line is not None:
            data["failing_line"] = line.to_dict()
        return data, "true" if line is None else f"false (fails at {line.orientation} line {line.position})"
    if a.cmd == "cover":
        line = concentration.parse_line(a.line)
        cover = concentration.cover_for_line(p, line, a.q, a.r)
        if cover is None:
            return {"perm": p.compact(), "cover": None}, "none"
        return cover.to_dict(), concentration.render(p, cover)
    raise UsageError(a.cmd)


def _cmd_antichain(a):
    if a.cmd == "gen":
        p = classes.antichain_member(a.family, a.n)
        return {"family": a.family, "n": a.n, "perm": list(p)}, ",".join(map(str, p))
    if a.cmd == "validate":
        p = _perm(a.perm)
        try:
            ok = classes.antichain_member(a.family, len(p)) == p
        except classes.InadmissibleLength:
            ok = False
        return {"family": a.family, "perm": list(p), "valid": ok}, str(ok).lower()
    raise UsageError(a.cmd)


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--max-n", type=int, default=None, help="length cap (default from PERMGROWTH_MAX_N)")
    c.add_argument("--tolerance", type=float, default=None, help="root isolation width")
    c.add_argument("--json", action="store_true", help="machine-readable output")
    c.add_argument("--csv", action="store_true", help="CSV table output where supported")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--no-timestamp", action="store_true")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="permgrowth", description="Permutation class growth rate toolkit")
    groups = parser.add_subparsers(dest="group", required=True)

    def group(name, help_text):
        g = groups.add_parser(name, help=help_text)
        return g.add_subparsers(dest="cmd", required=True)

    def leaf(sub, name, *args):
        p = sub.add_parser(name, parents=[common])
        for arg in args:
            p.add_argument(arg)
        return p

    s = group("perm", "single permutation queries")
    leaf(s, "contains", "perm", "host")
    leaf(s, "symmetry", "perm", "which")
    leaf(s, "simple", "perm")
    leaf(s, "decompose", "perm")
    leaf(s, "depth", "perm")

    s = group("enum", "class enumeration")
    p = leaf(s, "members", "spec")
    p.add_argument("n", type=int)
    p = leaf(s, "profile", "perm")
    p.add_argument("--skew", action="store_true")
    p = leaf(s, "counts", "spec")
    p.add_argument("n", type=int)

    s = group("growth", "certified growth rates")
    leaf(s, "profile", "profile")
    leaf(s, "gf", "profile")
    leaf(s, "constant", "name")
    p = leaf(s, "spectrum")
    p.add_argument("bound", type=float)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--l-max", type=int, default=6)

    s = group("struct", "structural detectors")
    leaf(s, "monotone", "perm")
    leaf(s, "alternation", "perm", "kind", "orientation")
    leaf(s, "two-lines", "perm")

    s = group("grid", "grid classes")
    leaf(s, "check", "perm", "matrix")
    leaf(s, "count", "perm", "matrix")
    leaf(s, "cellgraph", "matrix")
    leaf(s, "encode", "perm", "vector", "columns")
    leaf(s, "decode", "word", "vector")
    p = leaf(s, "subword-growth", "alphabet")
    p.add_argument("forbidden", nargs="?", default="")
    p = leaf(s, "scan", "c", "g")
    p.add_argument("m_max", type=int)
    p.add_argument("n_max", type=int)

    s = group("conc", "concentration")
    for name in ("check",):
        p = leaf(s, name, "perm")
        p.add_argument("q", type=int)
        p.add_argument("r", type=int)
    p = leaf(s, "cover", "perm", "line")
    p.add_argument("q", type=int)
    p.add_argument("r", type=int)
    p = leaf(s, "independent", "perm", "columns", "rows")
    p.add_argument("kind", choices=concentration.SPECIAL_KINDS)
    leaf(s, "gamma", "perm", "gamma")

    s = group("antichain", "infinite antichains")
    p = leaf(s, "gen", "family")
    p.add_argument("n", type=int)
    leaf(s, "validate", "family", "perm")

    s = group("verify", "table verification")
    p = leaf(s, "paper-tables")
    p.add_argument("--manifest", default=None, help="manifest path (default: the shipped one)")
    return parser


HANDLERS = {
    "perm": _cmd_perm,
    "enum": _cmd_enum,
    "growth": _cmd_growth,
    "struct": _cmd_struct,
    "grid": _cmd_grid,
    "conc": _cmd_conc,
    "antichain": _cmd_antichain,
}


def _verify(a, out) -> int:
    try:
        entries = manifest.load_manifest(a.manifest)
    except (OSError, manifest.ManifestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"verifying {len(entries)} entries", file=sys.stderr)
    report = manifest.verify_tables(entries, jobs=a.jobs, timestamp=not a.no_timestamp)
    if a.json:
        out.write(report.to_json() + "\n")
    elif a.csv:
        out.write(report.to_csv())
    else:
        out.write(report.to_text() + "\n")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(a, "max_n", None) is not None:
        os.environ["PERMGROWTH_MAX_N"] = str(a.max_n)
        concentration.MAX_CONC_N = a.max_n
    if a.group == "verify":
        return _verify(a, out)
    try:
        data, text = HANDLERS[a.group](a)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (classes.CapExceeded, ValueError, AssertionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if a.json:
        out.write(json.dumps(data, sort_keys=True) + "\n")
    elif a.csv and isinstance(data, dict):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(sorted(data))
        w.writerow([json.dumps(data[k]) if isinstance(data[k], (list, dict)) else data[k] for k in sorted(data)])
        out.write(buf.getvalue())
    else:
        out.write(text + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
