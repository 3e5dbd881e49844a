"""Command line front end.

Exit codes: 0 success or true, 1 predicate false or check failed, 2 invalid
input, 3 unsupported input (dimension, unboundedness, non-convexity).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from . import documents as doc
from . import fuzzyset as fz
from . import oracle as orc
from . import topology as top
from .errors import InvalidInputError, UnsupportedError
from .geometry import DualPair
from .polar import bipolar, fuzzy_polar

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2, 3


class _Out:
    """Collects the primary output and writes it to ``-o`` or stdout."""

    def __init__(self, args):
        self.path = getattr(args, "output", None)

    def emit(self, text: str):
        if self.path and self.path != "-":
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            sys.stdout.write(text + "\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"{path}: {exc.strerror}") from exc


def _load_set(path):
    mu, pair = doc.load_document(_read(path))
    return mu, pair or DualPair(mu.dim)


def _scale_range(s: str | None):
    if s is None:
        return top.DEFAULT_SCALE_RANGE
    try:
        lo, hi = (int(p) for p in s.split(":"))
    except ValueError as exc:
        raise InvalidInputError(f"--scale-range: expected lo:hi, got {s!r}") from exc
    return lo, hi


def _rational(s: str, flag: str) -> Fraction:
    return doc.parse_rational(s, flag)


def _fmt(x) -> str:
    return str(x)


def _vec_str(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------

def cmd_polar(args, out):
    mu, pair = _load_set(args.input)
    out.emit(doc.write_document(fuzzy_polar(mu, pair), pair.swapped()))
    return EXIT_OK


def cmd_bipolar(args, out):
    mu, pair = _load_set(args.input)
    out.emit(doc.write_document(bipolar(mu, pair), pair))
    return EXIT_OK


def cmd_add(args, out):
    mu, pair = _load_set(args.left)
    eta, _ = _load_set(args.right)
    out.emit(doc.write_document(fz.add(mu, eta), pair))
    return EXIT_OK


def cmd_scale(args, out):
    t = _rational(args.factor, "factor")
    mu, pair = _load_set(args.input)
    out.emit(doc.write_document(fz.scalar_mul(t, mu), pair))
    return EXIT_OK


def cmd_sup(args, out):
    sets = [_load_set(p) for p in args.inputs]
    op = fz.lattice_sup if args.command == "sup" else fz.lattice_inf
    out.emit(doc.write_document(op(*(m for m, _ in sets)), sets[0][1]))
    return EXIT_OK


def cmd_level(args, out):
    mu, _ = _load_set(args.input)
    out.emit(doc.region_document(fz.level_set(mu, _rational(args.theta, "--theta"))))
    return EXIT_OK


def cmd_check(args, out):
    mu, _ = _load_set(args.input)
    try:
        kind = fz.PredicateKind(args.predicate)
    except ValueError as exc:
        raise InvalidInputError(f"--predicate: unknown predicate {args.predicate!r}") from exc
    value = fz.predicate(kind, mu)
    if args.json:
        out.emit(doc.report_envelope("check", {"predicate": kind.value, "value": value}))
    else:
        out.emit(f"{kind.value}: {'true' if value else 'false'}")
    return EXIT_OK if value else EXIT_FALSE


def cmd_envelope(args, out):
    mu, pair = _load_set(args.input)
    out.emit(doc.write_document(fz.envelope(args.kind, mu), pair))
    return EXIT_OK


def cmd_pushforward(args, out):
    mu, _ = _load_set(args.input)
    m = doc.load_matrix(_read(args.matrix))
    out.emit(doc.write_document(fz.pushforward(m, mu)))
    return EXIT_OK


def cmd_absorbs(args, out):
    mu, _ = _load_set(args.absorber)
    eta, _ = _load_set(args.absorbed)
    t = top.absorbs(mu, eta)
    if args.json:
        out.emit(doc.report_envelope("absorbs", {"witness": None if t is None else _fmt(t)}))
    else:
        out.emit("none" if t is None else f"witness t = {t}")
    return EXIT_FALSE if t is None else EXIT_OK


def _load_base(path):
    members, pair, family = doc.load_collection(_read(path))
    return members, pair or DualPair(members[0].dim), family


def cmd_base_validate(args, out):
    members, pair, family = _load_base(args.base)
    basis = None
    if args.basis:
        basis, _ = doc.load_vectors(_read(args.basis), pair.dim)
    coll = top.FuzzyCollection(pair, tuple(members), family=family)
    rep = top.validate_collection(coll, basis, _scale_range(args.scale_range))
    if args.json:
        out.emit(doc.report_envelope("base-validate", _base_report_obj(rep)))
    else:
        lines = []
        for r in rep.c1:
            w = r.witness
            if w is None:
                desc = "FAIL"
            elif isinstance(w, fz.StepFuzzySet):
                desc = f"constructed set at grade {w.height}" + ("" if r.strict else " (non-strict)")
            else:
                desc = f"generator {w[0]} scaled by {w[1]}" + ("" if r.strict else " (non-strict)")
            lines.append(f"c1 {r.pair}: {desc}")
        lines.append(f"c2: {'true' if rep.c2 else 'false'} (scaling closure)")
        for r in rep.c3:
            w = r.witness
            desc = "FAIL" if w is None else f"generator {w[0]} grade {w[1]} scale {w[2]}"
            lines.append(f"c3 {_vec_str(r.vector)}: {desc}")
        lines.extend(f"warning: {w}" for w in rep.warnings)
        lines.append(f"overall: {'true' if rep.overall else 'false'}")
        out.emit("\n".join(lines))
    return EXIT_OK if rep.overall else EXIT_FALSE


def _base_report_obj(rep: top.BaseReport) -> dict:
    c1 = []
    for r in rep.c1:
        w = r.witness
        if w is None:
            wo = None
        elif isinstance(w, fz.StepFuzzySet):
            wo = {"constructed": doc.fuzzy_set_obj(w)}
        else:
            wo = {"generator": w[0], "scale": _fmt(w[1])}
        c1.append({"pair": list(r.pair), "witness": wo, "strict": r.strict})
    c3 = []
    for r in rep.c3:
        w = r.witness
        wo = None if w is None else {"generator": w[0], "grade": _fmt(w[1]), "scale": _fmt(w[2])}
        c3.append({"vector": doc.vector_obj(r.vector), "witness": wo})
    return {"c1": c1, "c2": rep.c2, "c3": c3, "warnings": rep.warnings, "overall": rep.overall}


def cmd_base_polar(args, out):
    members, pair, _ = _load_base(args.base)
    out.emit(doc.write_collection([fuzzy_polar(m, pair) for m in members], pair.swapped()))
    return EXIT_OK


def cmd_weak_nbhd(args, out):
    pts, _ = doc.load_vectors(_read(args.points))
    n = len(pts[0])
    pair = DualPair(n)
    if args.pairing:
        pair = DualPair(n, doc.load_matrix(_read(args.pairing)))
    lam = _rational(args.lam, "--lambda")
    result = top.weak_neighborhood(pts, lam, pair, args.mode)
    if args.mode == "definition":
        literal = top.weak_neighborhood(pts, lam, pair, "paper_literal")
        if not fz.same_chain(result, literal):
            print("notice: the paper_literal mode gives a different result "
                  f"(grade {lam} on the crisp polar, 0 elsewhere)", file=sys.stderr)
    out.emit(doc.write_document(result, pair.swapped()))
    return EXIT_OK


def cmd_dual_witness(args, out):
    members, pair, _ = _load_base(args.base)
    y = tuple(_rational(s.strip(), "--functional") for s in args.functional.split(","))
    if len(y) != pair.dim:
        raise InvalidInputError(f"--functional: expected {pair.dim} coordinates")
    w = top.dual_witness(members, y, pair)
    if args.json:
        body = {"functional": doc.vector_obj(y),
                "witness": None if w is None else {"index": w[0], "grade": _fmt(w[1])}}
        out.emit(doc.report_envelope("dual-witness", body))
    else:
        out.emit("none" if w is None else f"base element {w[0]}, polar grade {w[1]}")
    return EXIT_FALSE if w is None else EXIT_OK


def cmd_refines(args, out):
    b1, _, _ = _load_base(args.finer)
    b2, _, _ = _load_base(args.coarser)
    value = top.refines(b1, b2, _scale_range(args.scale_range))
    if args.json:
        out.emit(doc.report_envelope("refines", {"value": value}))
    else:
        out.emit(f"refines: {'true' if value else 'false'}")
    return EXIT_OK if value else EXIT_FALSE


def cmd_mackey(args, out):
    members, pair, _ = _load_base(args.base)
    funcs, flags = doc.load_vectors(_read(args.functionals), pair.dim)
    rep = top.verify_mackey_arens(members, funcs, pair, flags)
    if args.json:
        body = {
            "neighborhoods": [
                {"index": r.index, "is_closed_ac": r.is_closed_ac, "bipolar_equal": r.bipolar_equal,
                 "polar_weakly_compact": r.polar_weakly_compact, "error": r.error}
                for r in rep.neighborhoods],
            "functionals": [
                {"functional": doc.vector_obj(r.functional),
                 "witness": None if r.witness is None else {"index": r.witness[0], "grade": _fmt(r.witness[1])},
                 "declared_continuous": r.declared_continuous}
                for r in rep.functionals],
            "overall": rep.overall,
        }
        out.emit(doc.report_envelope("mackey-arens", body))
    else:
        lines = []
        for r in rep.neighborhoods:
            lines.append(f"neighborhood {r.index}: closed_ac={r.is_closed_ac} bipolar_equal={r.bipolar_equal} "
                         f"polar_weakly_compact={r.polar_weakly_compact}"
                         + (f" error={r.error}" if r.error else ""))
        for r in rep.functionals:
            w = "none" if r.witness is None else f"({r.witness[0]}, {r.witness[1]})"
            lines.append(f"functional {_vec_str(r.functional)}: witness {w}")
        lines.append(f"overall: {'true' if rep.overall else 'false'}")
        out.emit("\n".join(lines))
    return EXIT_OK if rep.overall else EXIT_FALSE


def cmd_oracle(args, out):
    mu, pair = _load_set(args.inputs[0])
    grid = orc.Grid.parse(args.grid, mu.dim)
    if args.kind == "membership":
        table = orc.oracle_membership(mu, grid)
    elif args.kind == "polar":
        thetas = None
        if args.theta:
            thetas = [_rational(s.strip(), "--theta") for s in args.theta.split(",")]
            thetas = sorted(set(thetas) | set(orc.breakpoint_lattice(mu)))
        table = orc.oracle_polar(mu, grid, thetas, pair)
    else:
        if len(args.inputs) != 2:
            raise InvalidInputError("oracle --kind add needs two input documents")
        eta, _ = _load_set(args.inputs[1])
        table = orc.oracle_add(mu, eta, grid)
    out.emit(doc.write_table(table))
    return EXIT_OK


def cmd_compare(args, out):
    mu, _ = _load_set(args.exact)
    table = doc.load_table(_read(args.table))
    diffs = orc.compare(mu, table)
    if args.json:
        body = {"differences": [{"point": doc.vector_obj(x), "exact": _fmt(e), "table": _fmt(t)}
                                for x, e, t in diffs], "pass": not diffs}
        out.emit(doc.report_envelope("compare", body))
    else:
        lines = [f"{_vec_str(x)}: exact {e}, table {t}" for x, e, t in diffs]
        lines.append(f"{len(diffs)} difference(s) over {len(table.rows)} point(s)")
        out.emit("\n".join(lines))
    return EXIT_OK if not diffs else EXIT_FALSE


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuzzypolar", description="Exact fuzzy polar calculus.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.set_defaults(func=func)
        return sp

    sp = command("polar", cmd_polar, "fuzzy polar of a fuzzy set")
    sp.add_argument("input")
    sp = command("bipolar", cmd_bipolar, "polar of the polar")
    sp.add_argument("input")
    sp = command("add", cmd_add, "sup-min sum of two fuzzy sets")
    sp.add_argument("left")
    sp.add_argument("right")
    sp = command("scale", cmd_scale, "scalar multiple t*mu")
    sp.add_argument("factor")
    sp.add_argument("input")
    for name, help_ in (("sup", "pointwise maximum"), ("inf", "pointwise minimum")):
        sp = command(name, cmd_sup, help_)
        sp.add_argument("inputs", nargs="+")
    sp = command("level", cmd_level, "theta-cut region")
    sp.add_argument("input")
    sp.add_argument("--theta", required=True)
    sp = command("check", cmd_check, "decide a predicate")
    sp.add_argument("input")
    sp.add_argument("--predicate", required=True)
    sp = command("envelope", cmd_envelope, "convex / absolutely convex / closed envelope")
    sp.add_argument("input")
    sp.add_argument("--kind", default="absolutely_convex",
                    choices=["convex", "absolutely_convex", "closure"])
    sp = command("pushforward", cmd_pushforward, "image under a linear map")
    sp.add_argument("input")
    sp.add_argument("--matrix", required=True, help="JSON file with a matrix of rational strings")
    sp = command("absorbs", cmd_absorbs, "absorption witness scale")
    sp.add_argument("absorber")
    sp.add_argument("absorbed")
    sp = command("base-validate", cmd_base_validate, "check conditions c1-c3 for a collection")
    sp.add_argument("base")
    sp.add_argument("--basis")
    sp.add_argument("--scale-range")
    sp = command("base-polar", cmd_base_polar, "polars of a collection")
    sp.add_argument("base")
    sp = command("weak-nbhd", cmd_weak_nbhd, "polar of a single-grade finite point set")
    sp.add_argument("points")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--mode", default="definition", choices=["definition", "paper_literal"])
    sp.add_argument("--pairing")
    sp = command("dual-witness", cmd_dual_witness, "base element whose polar is positive at a functional")
    sp.add_argument("base")
    sp.add_argument("--functional", required=True, help="comma-separated rationals")
    sp = command("refines", cmd_refines, "is the first base at least as fine as the second")
    sp.add_argument("finer")
    sp.add_argument("coarser")
    sp.add_argument("--scale-range")
    sp = command("mackey-arens", cmd_mackey, "polar-topology checklist for a base")
    sp.add_argument("base")
    sp.add_argument("--functionals", required=True)
    sp = command("oracle", cmd_oracle, "grid brute-force table")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--kind", default="membership", choices=["membership", "polar", "add"])
    sp.add_argument("--grid", action="append", required=True, help="lo:hi:step (once, or per axis)")
    sp.add_argument("--theta", help="extra comma-separated grades for the polar oracle")
    sp = command("compare", cmd_compare, "compare an exact set with an oracle table")
    sp.add_argument("exact")
    sp.add_argument("table")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, _Out(args))
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnsupportedError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
