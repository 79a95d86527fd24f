"""Command-line interface: ``toricsig <command> ...`` or ``python -m toricsig``.

Exit codes: 0 ok, 1 a verdict was Violated, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import bounds, catalog, classify, frobdec, hkest, polyvol, toric
from .exactlin import RationalInterval

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"not a comma-separated integer list: {text!r}") from exc


def format_value(x, decimal: Optional[int] = None):
    """Reduced ``p/q`` or, with ``decimal``, ``k`` correctly rounded digits."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, RationalInterval):
        return [format_value(x.lo, decimal), format_value(x.hi, decimal)]
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        if decimal is None:
            return catalog.fmt(x)
        scaled = round(x * 10**decimal)  # Fraction rounding is exact, half to even
        sign = "-" if scaled < 0 else ""
        digits = str(abs(scaled)).rjust(decimal + 1, "0")
        if decimal == 0:
            return sign + digits
        return f"{sign}{digits[:-decimal]}.{digits[-decimal:]}"
    if isinstance(x, dict):
        return {k: format_value(v, decimal) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [format_value(v, decimal) for v in x]
    return x


def _reformat_report_value(v, decimal):
    # report values are already "p/q" strings; re-render them when --decimal is set
    if decimal is None:
        return v
    if isinstance(v, str):
        try:
            return format_value(Fraction(v), decimal)
        except (ValueError, ZeroDivisionError):
            return v
    if isinstance(v, dict):
        return {k: _reformat_report_value(x, decimal) for k, x in v.items()}
    if isinstance(v, list):
        return [_reformat_report_value(x, decimal) for x in v]
    return v


def resolve_cone(ring: Optional[str], path: Optional[str]) -> toric.Cone:
    if path is not None:
        try:
            return toric.load_cone(path)
        except (OSError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read cone from {path}: {exc}") from exc
    if ring is None:
        raise InputError("give a catalog ring name or --file")
    try:
        return catalog.entry(ring).cone
    except KeyError:
        pass
    try:
        return toric.load_cone(ring)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, toric.ConeError):
            raise
        raise InputError(f"{ring!r} is neither a catalog ring nor a readable cone file") from exc


# -- commands ----------------------------------------------------------------
# each returns (payload, text lines, exit code)

def cmd_fsig(a):
    cone = resolve_cone(a.ring, a.file)
    res = polyvol.volume(polyvol.dual_zonotope(cone))
    payload = {"ring": cone.name, "fsig": res.volume, "vertices": res.vertex_count,
               "simplices": res.triangulation_size}
    return payload, [format_value(res.volume, a.decimal)], EXIT_OK


def cmd_classgroup(a):
    cone = resolve_cone(a.ring, a.file)
    cl = toric.class_group(cone)
    parts = [f"Z^{cl.free_rank}"] if cl.free_rank else []
    parts += [f"Z/{t}" for t in cl.torsion]
    text = " + ".join(parts) if parts else "0"
    omega = cl.project(toric.canonical_vector(cone))
    return ({"ring": cone.name, "free_rank": cl.free_rank, "torsion": list(cl.torsion),
             "canonical_class": list(omega)}, [text], EXIT_OK)


def cmd_gorenstein(a):
    cone = resolve_cone(a.ring, a.file)
    g = toric.gorenstein_data(cone)
    payload = {"ring": cone.name, "gorenstein": g.is_gorenstein, "q_index": g.q_index,
               "canonical_class": list(g.canonical_class)}
    idx = "none (canonical class has infinite order)" if g.q_index is None else str(g.q_index)
    return payload, [f"gorenstein: {g.is_gorenstein}", f"Q-Gorenstein index: {idx}"], EXIT_OK


def cmd_type(a):
    cone = resolve_cone(a.ring, a.file)
    t = toric.cm_type(cone)
    return {"ring": cone.name, "type": t}, [str(t)], EXIT_OK


def cmd_conic(a):
    cone = resolve_cone(a.ring, a.file)
    dens = parse_int_list(a.denoms) if a.denoms else None
    census = frobdec.conic_census(cone, dens, budget=a.budget or frobdec.DEFAULT_RESIDUE_BUDGET)
    payload = {"ring": cone.name, "count": len(census), "stable": census.stable,
               "denominators": list(census.denominators),
               "classes": [{"class": list(k), "witness": list(w)}
                           for k, w in zip(census.classes, census.witnesses)]}
    lines = [f"{len(census)} conic classes ({'stable' if census.stable else 'NOT stable'}"
             f" over denominators {','.join(map(str, census.denominators))} and doubles)"]
    lines += [f"  class {list(k)}  a = {list(w)}" for k, w in zip(census.classes, census.witnesses)]
    return payload, lines, EXIT_OK


def cmd_decompose(a):
    cone = resolve_cone(a.ring, a.file)
    dec = frobdec.decompose(cone, a.q, budget=a.budget or frobdec.DEFAULT_RESIDUE_BUDGET,
                            workers=a.threads)
    wit = dec.witnesses
    payload = {"ring": cone.name, "q": a.q, "total": dec.total, "free": dec.free_count,
               "canonical": dec.canonical_count, "free_ratio": dec.free_ratio,
               "classes": [{"class": list(k), "count": c, "witness": list(wit[k])}
                           for k, c in dec.class_counts]}
    lines = [f"q = {a.q}: {dec.total} summands, free {dec.free_count}, canonical {dec.canonical_count},"
             f" a_e/q^d = {format_value(dec.free_ratio, a.decimal)}"]
    lines += [f"  class {list(k)}: {c}" for k, c in dec.class_counts]
    return payload, lines, EXIT_OK


def _estimate_payload(rep: hkest.EstimateReport, decimal):
    return {"samples": [{"parameter": s.parameter, "colength": s.colength, "normalized": s.normalized}
                        for s in rep.samples],
            "extrapolated": rep.extrapolated, "claimed_tolerance": rep.claimed_tolerance}


def _estimate_lines(rep, label, decimal):
    lines = [f"  {label} = {s.parameter}: colength {s.colength}, normalized {format_value(s.normalized, decimal)}"
             for s in rep.samples]
    return [f"extrapolated {format_value(rep.extrapolated, decimal)}"
            f" (claimed tolerance {format_value(rep.claimed_tolerance, decimal)})"] + lines


def cmd_ehk(a):
    cone = resolve_cone(a.ring, a.file)
    rep = hkest.ehk_estimate(cone, parse_int_list(a.q_list), budget=a.budget or toric.DEFAULT_POINT_BUDGET)
    return {"ring": cone.name, **_estimate_payload(rep, a.decimal)}, _estimate_lines(rep, "q", a.decimal), EXIT_OK


def cmd_mult(a):
    cone = resolve_cone(a.ring, a.file)
    rep = hkest.multiplicity_estimate(cone, parse_int_list(a.n_list),
                                      budget=a.budget or toric.DEFAULT_POINT_BUDGET)
    return {"ring": cone.name, **_estimate_payload(rep, a.decimal)}, _estimate_lines(rep, "n", a.decimal), EXIT_OK


def _report_lines(rep: dict, decimal) -> list[str]:
    lines = [f"== {rep['ring']} =="]
    for k, v in rep["computed"].items():
        lines.append(f"  {k}: {json.dumps(_reformat_report_value(v, decimal))}")
    for v in rep["verdicts"]:
        lines.append(f"  [{v['verdict']}] {v['name']}: {v['statement']}")
    return lines


def _default_entry(cone: toric.Cone) -> catalog.CatalogEntry:
    d = cone.d
    return catalog.CatalogEntry(cone.name or "cone", cone, {},
                                ehk_q=(8, 16) if d <= 3 else (4, 8),
                                mult_n=(16, 32) if d <= 3 else (), diff_n=None if d <= 3 else d + 2)


def cmd_check(a):
    try:
        ent = catalog.entry(a.ring) if a.file is None and a.ring else None
    except KeyError:
        ent = None
    if ent is None:
        ent = _default_entry(resolve_cone(a.ring, a.file))
    rep = catalog.verify_entry(ent, workers=a.threads, budget=a.budget)
    d = rep.as_dict(timings=a.timings)
    return d, _report_lines(d, a.decimal), EXIT_VIOLATED if rep.violated else EXIT_OK


def cmd_bounds(a):
    dec = a.decimal
    if a.which == "v":
        val = bounds.v(parse_fraction(a.s), a.d)
        return {"s": parse_fraction(a.s), "d": a.d, "v": val}, [str(format_value(val, dec))], EXIT_OK
    if a.which == "ae":
        ts = tuple(parse_fraction(t) for t in a.t.split(",")) if a.t else None
        ctx = bounds.BoundContext(parse_fraction(a.e), a.d, a.r, parse_fraction(a.s), ts)
        val = bounds.ae_bound(ctx)
        return {"e": ctx.e, "d": a.d, "r": a.r, "s": ctx.s, "bound": val}, [str(format_value(val, dec))], EXIT_OK
    if a.which == "table1":
        rows = bounds.conjecture_table(a.dmax)
        width = max(len(str(format_value(x, dec))) for r in rows for x in (r.limit, r.rhs, r.d)) + 2
        cell = lambda x: str(format_value(x, dec)).rjust(width)
        lines = ["d".ljust(10) + "".join(cell(r.d) for r in rows),
                 "1 + c_d".ljust(10) + "".join(cell(r.limit) for r in rows),
                 "RHS_d".ljust(10) + "".join(cell(r.rhs) for r in rows)]
        if a.p is not None:
            lines.append(f"(labels for p = {a.p}; values do not depend on p)")
        lines += [f"note: {n}" for n in bounds.TABLE_NOTES]
        payload = {"rows": [{"d": r.d, "limit": r.limit, "rhs": r.rhs} for r in rows],
                   "notes": list(bounds.TABLE_NOTES)}
        return payload, lines, EXIT_OK
    if a.which == "euler":
        hits = bounds.euler_lemma_scan(a.dmax)
        return ({"dmax": a.dmax, "pairs": [list(p) for p in hits]},
                [" ".join(f"({d},{k})" for d, k in hits)], EXIT_OK)
    raise InputError(f"unknown bounds table {a.which!r}")


def cmd_classify(a):
    space = classify.SearchSpace(a.d, a.n, a.bound, unimodular_only=not a.all_minors)
    res = classify.enumerate_high_fsig(space, parse_fraction(a.threshold), workers=a.threads)
    recs = [r.as_dict() for r in res]
    lines = [f"{len(recs)} class(es) with fsig > {a.threshold}"]
    lines += [f"  fsig {format_value(r.fsig, a.decimal)}  matrix {r.as_dict()['matrix']}" for r in res]
    return {"space": {"d": a.d, "n": a.n, "bound": a.bound, "unimodular_only": not a.all_minors},
            "threshold": parse_fraction(a.threshold), "classes": recs}, lines, EXIT_OK


def cmd_catalog(a):
    if a.action == "list":
        names = [e.name for e in catalog.catalog()]
        return {"rings": names}, names, EXIT_OK
    if a.action == "verify":
        entries = [catalog.entry(n) for n in a.rings] if a.rings else list(catalog.catalog())
        reports = [catalog.verify_entry(e, workers=a.threads, budget=a.budget) for e in entries]
        dicts = [r.as_dict(timings=a.timings) for r in reports]
        lines = []
        for d in dicts:
            lines += _report_lines(d, a.decimal)
        bad = [r.ring for r in reports if r.violated]
        lines.append(f"{len(reports)} rings, {len(bad)} with violations" + (f": {', '.join(bad)}" if bad else ""))
        return {"reports": dicts, "violated": bad}, lines, EXIT_VIOLATED if bad else EXIT_OK
    if a.action in ("golden-write", "golden-check"):
        from . import golden

        if a.action == "golden-write":
            written = golden.write_all(a.dir, workers=a.threads)
            return {"written": written}, [f"wrote {len(written)} files under {a.dir}"], EXIT_OK
        diffs = golden.check_all(a.dir, workers=a.threads)
        lines = [f"mismatch: {p}" for p in diffs] + [f"{len(diffs)} mismatching golden files"]
        return {"mismatches": diffs}, lines, EXIT_VIOLATED if diffs else EXIT_OK
    raise InputError(f"unknown catalog action {a.action!r}")


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--decimal", type=int, metavar="K", help="print K correctly rounded digits")
    common.add_argument("--p", type=int, help="characteristic label (never changes values)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget", type=int, help="raise the enumeration budget")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")

    parser = argparse.ArgumentParser(prog="toricsig",
                                     description="F-signature and Hilbert-Kunz data of toric rings")
    sub = parser.add_subparsers(dest="command", required=True)

    def ring_cmd(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("ring", nargs="?", help="catalog name or cone JSON file")
        sp.add_argument("--file", help="cone JSON file")
        sp.set_defaults(func=func)
        return sp

    ring_cmd("fsig", cmd_fsig, "exact F-signature")
    ring_cmd("classgroup", cmd_classgroup, "divisor class group")
    ring_cmd("gorenstein", cmd_gorenstein, "Gorenstein and Q-Gorenstein index")
    ring_cmd("type", cmd_type, "Cohen-Macaulay type")
    ring_cmd("conic", cmd_conic, "census of conic divisor classes").add_argument("--denoms")
    ring_cmd("decompose", cmd_decompose, "Frobenius pushforward by class").add_argument(
        "--q", type=int, required=True)
    ring_cmd("ehk", cmd_ehk, "Hilbert-Kunz estimate").add_argument("--q-list", default="8,16")
    ring_cmd("mult", cmd_mult, "multiplicity estimate").add_argument("--n-list", default="16,32")
    ring_cmd("check", cmd_check, "full inequality report")

    b = sub.add_parser("bounds", parents=[common], help="volume-bound calculus")
    b.add_argument("which", choices=["v", "ae", "table1", "euler"])
    b.add_argument("--s")
    b.add_argument("--d", type=int)
    b.add_argument("--e")
    b.add_argument("--r", type=int, default=0)
    b.add_argument("--t", help="comma-separated t_i (default all 1)")
    b.add_argument("--dmax", type=int, default=6)
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("classify", parents=[common], help="search cones of large F-signature")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--bound", type=int, default=1)
    c.add_argument("--threshold", default="1/2")
    c.add_argument("--all-minors", action="store_true",
                   help="do not restrict to cones with all maximal minors +-1")
    c.set_defaults(func=cmd_classify)

    k = sub.add_parser("catalog", parents=[common], help="catalog rings")
    k.add_argument("action", choices=["list", "verify", "golden-write", "golden-check"])
    k.add_argument("rings", nargs="*")
    k.add_argument("--dir", default="golden")
    k.set_defaults(func=cmd_catalog)
    return parser


def _check_bounds_args(a):
    if a.command != "bounds":
        return
    need = {"v": ("s", "d"), "ae": ("e", "d", "s"), "table1": (), "euler": ()}[a.which]
    missing = [f"--{n}" for n in need if getattr(a, n) is None]
    if missing:
        raise InputError(f"bounds {a.which} needs {' '.join(missing)}")


def _jsonable(x):
    if isinstance(x, (Fraction, RationalInterval)):
        return format_value(x)
    raise TypeError(f"not serialisable: {type(x)}")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        _check_bounds_args(a)
        payload, lines, code = a.func(a)
    except toric.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except toric.ConeError as exc:
        print(f"invalid cone: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ValueError, KeyError, polyvol.Unbounded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if a.json:
        if a.p is not None:
            payload = {"p": a.p, **payload}
        out = format_value(payload, a.decimal) if a.decimal is not None else payload
        out = _reformat_report_value(out, a.decimal)
        print(json.dumps(out, default=_jsonable, indent=1))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
