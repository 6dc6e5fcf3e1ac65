"""Command-line interface: ``dividedcell <command> [options]``.

Exit status: 0 success, 1 bad input, 2 mixed fields or unsupported input,
3 degenerate problem or terminated chain.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import __version__
from . import homogeneous as hom
from .errors import (
    AxisParallel,
    Degenerate,
    DividedCellError,
    Diverged,
    FieldMismatch,
    SchemaError,
    SurdSyntaxError,
    Terminated,
)
from .exactnum import Surd, format_surd, parse_surd, to_decimal
from .figures import preset, render
from .inhomogeneous import (
    anchors,
    chain,
    classify,
    compare_cells,
    initial_cell,
    inner_box,
    is_divided,
    is_I_reduced,
    locate,
    markoff_inhom,
    neighbors,
)
from .oracle import Window, brute_min, minimal_points
from .serialize import (
    ProblemSpec,
    cell_from_json,
    cell_to_json,
    chain_to_csv,
    chain_to_json,
    dumps,
    problem_from_json,
)

DIGITS = 50


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# -- output helpers -----------------------------------------------------------


def _scalar(out: dict, key: str, x):
    """Exact literal under ``key`` and a 50-digit decimal under ``key_decimal``."""
    if x is None:
        out[key], out[f"{key}_decimal"] = "inf", "inf"
    else:
        out[key], out[f"{key}_decimal"] = format_surd(x), str(to_decimal(x, DIGITS))
    return out


def _matrix(rows):
    return [[format_surd(v) for v in r] for r in rows]


def _write(args, text: str):
    if not args.out:
        sys.stdout.write(text)
        return
    target = os.path.abspath(args.out)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp-", suffix=os.path.basename(target))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, obj):
    _write(args, dumps(obj))


# -- input helpers ------------------------------------------------------------


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno})", "") from exc


def _spec(args) -> ProblemSpec:
    given = [x for x in (args.problem, args.rows, args.form) if x]
    if len(given) != 1:
        raise UsageError("give exactly one of --problem, --rows, --form")
    if args.problem:
        return problem_from_json(_load_json(args.problem))
    if args.form:
        parts = args.form.split(",")
        if len(parts) != 3:
            raise UsageError("--form needs A,B,C")
        try:
            return ProblemSpec(form=tuple(Fraction(p.strip()) for p in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"--form: {exc}") from exc
    rows = [r.split(",") for r in args.rows.split(";")]
    if len(rows) != 2 or len({len(r) for r in rows}) != 1 or len(rows[0]) not in (2, 3):
        raise UsageError("--rows needs two rows of 2 or 3 entries, e.g. '1,sqrt(3),0;1,-sqrt(3),0'")
    return ProblemSpec(rows=tuple(tuple(parse_surd(v) for v in r) for r in rows))


def _form(args) -> hom.HomForm:
    obj = _spec(args).build()
    if isinstance(obj, hom.HomForm):
        return obj
    if obj.c0 or obj.c1:
        raise UsageError("this command needs a homogeneous problem")
    return obj.linear


def _problem(args):
    return _spec(args).as_cell()


def _cell(args, attr="cell"):
    path = getattr(args, attr)
    if not path:
        raise UsageError(f"--{attr} is required")
    return cell_from_json(_load_json(path))


def _divided(cell):
    dc = is_divided(cell)
    if dc is None or dc.cell != cell:
        raise UsageError("the cell is not a normalized divided cell")
    return dc


# -- commands -----------------------------------------------------------------


def cmd_reduce(args):
    g, u = hom.reduce(_form(args))
    _emit(args, {"reduced": _matrix(g.rows), "basis": [list(r) for r in u], "delta": format_surd(g.delta())})


def cmd_chain(args):
    steps = hom.chain(_form(args), args.back, args.forward)
    out = []
    for s in steps:
        row = {"index": s.index, "matrix": _matrix(s.matrix.rows), "digit": s.digit, "point": list(s.point)}
        out.append(_scalar(row, "value", s.value))
    _emit(args, out)


def cmd_markoff(args):
    res = hom.markoff(_form(args), args.depth)
    out = _scalar({}, "value", res.value)
    out.update(exact=res.exact, infinite=res.infinite, point=list(res.point) if res.point else None)
    _emit(args, out)


def cmd_lagrange(args):
    seq = hom.lagrange_sequence(parse_surd(args.alpha), args.n)
    out = []
    for n, conv, m in seq:
        out.append(_scalar({"n": n, "convergent": str(conv)}, "M", m))
    _emit(args, out)


def cmd_init_cell(args):
    dc = initial_cell(_problem(args))
    out = {"cell": cell_to_json(dc.cell), "vertices": {str(q): list(p) for p, q in sorted(dc.quadrants.items(), key=lambda kv: kv[1])}}
    out["infinite"] = dc.infinite
    _emit(args, out)


def cmd_dca(args):
    problem = _problem(args)
    start = _divided(_cell(args, "start")) if args.start else None
    rec = chain(problem, args.back, args.forward, start)
    if args.format == "csv":
        _write(args, chain_to_csv(rec))
    else:
        _emit(args, chain_to_json(rec))
    if rec.terminated_forward or rec.terminated_backward:
        raise Terminated("chain terminated: a cell side is parallel to an axis")


def cmd_classify(args):
    cell = _cell(args)
    c = classify(cell)
    out = {
        "kind": c.kind,
        "gaussian": c.gaussian,
        "nongaussian": c.nongaussian,
        "neighbor": c.neighbor_of_g,
        "superfluous": c.superfluous,
        "I_reduced": is_I_reduced(cell),
        "divided": is_divided(cell) is not None,
    }
    if out["I_reduced"]:
        b = inner_box(cell)
        out["inner_box"] = {"xi": [format_surd(b.xi_lo), format_surd(b.xi_hi)], "eta": [format_surd(b.eta_lo), format_surd(b.eta_hi)]}
        _scalar(out["inner_box"], "area", b.area)
    _emit(args, out)


def cmd_neighbors(args):
    n1, n2 = neighbors(_cell(args))
    _emit(args, {"n1": cell_to_json(n1), "n2": cell_to_json(n2)})


def cmd_anchors(args):
    back, fwd = anchors(_divided(_cell(args)))
    _emit(args, {"backward": cell_to_json(back.cell), "forward": cell_to_json(fwd.cell)})


def cmd_imarkoff(args):
    res = markoff_inhom(_problem(args), args.depth, args.window)
    out = _scalar({}, "value", res.value)
    out.update(exact=res.exact, infinite=res.infinite, terminated=res.terminated, vertex=list(res.vertex) if res.vertex else None)
    _emit(args, out)
    if res.terminated:
        raise Terminated("chain terminated; value taken from the brute-force window")


def cmd_locate(args):
    problem = _problem(args)
    a = _divided(_cell(args))
    loc = locate(a, problem)
    out = {"cf_index": loc.cf_index, "offset": loc.offset, "height": format_surd(loc.height)}
    if args.other:
        b = _divided(_cell(args, "other"))
        out["compare"] = compare_cells(a, b, problem)
    _emit(args, out)


def cmd_oracle(args):
    if args.margin >= args.window:
        raise UsageError("--margin must be smaller than --window")
    problem = _spec(args).build()
    w = Window(args.window, args.margin)
    if args.kind == "min":
        m, pts = brute_min(problem, w)
        out = _scalar({"window": args.window}, "min", m)
        out["argmins"] = [list(p) for p in pts]
    else:
        pts = minimal_points(problem, w, args.kind)
        out = {"window": args.window, "margin": args.margin, "kind": args.kind, "points": [list(p) for p in pts]}
    if args.format == "csv":
        rows = out.get("argmins", out.get("points"))
        _write(args, "x,y\n" + "".join(f"{x},{y}\n" for x, y in rows))
    else:
        _emit(args, out)


def cmd_plot(args):
    if args.preset == "hom":
        data = _form(args)
    elif args.preset == "inhom":
        data = _problem(args)
    elif args.preset == "superfluous":
        data = _divided(_cell(args))
    else:
        data = _cell(args)
    scenes = preset(args.preset, data)
    if not isinstance(scenes, tuple):
        scenes = (scenes,)
    for s in scenes:
        s.monochrome = args.monochrome
    if len(scenes) == 1:
        _write(args, render(scenes[0]))
        return
    if not args.out:
        sys.stdout.write("".join(render(s) for s in scenes))
        return
    stem, ext = os.path.splitext(args.out)
    for tag, s in zip(("G", "N"), scenes):
        sub = argparse.Namespace(out=f"{stem}_{tag}{ext or '.svg'}")
        _write(sub, render(s))


COMMANDS = {
    "reduce": (cmd_reduce, "reduce a homogeneous form"),
    "chain": (cmd_chain, "continued-fraction chain of reduced matrices"),
    "markoff": (cmd_markoff, "Markoff value of a homogeneous form"),
    "lagrange": (cmd_lagrange, "Lagrange sequence of a quadratic irrational"),
    "init-cell": (cmd_init_cell, "a divided cell for an inhomogeneous problem"),
    "dca": (cmd_dca, "chain of divided cells"),
    "classify": (cmd_classify, "G/N classification and inner box of a cell"),
    "neighbors": (cmd_neighbors, "the two N-cells next to a G-cell"),
    "anchors": (cmd_anchors, "anchors of a superfluous cell"),
    "imarkoff": (cmd_imarkoff, "inhomogeneous Markoff value"),
    "locate": (cmd_locate, "place a divided cell among the reduced bases"),
    "oracle": (cmd_oracle, "brute-force minimum or minimal points"),
    "plot": (cmd_plot, "render a preset figure as SVG"),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dividedcell", description="Exact divided cell algorithm and continued fractions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def problem_opts(sp):
        sp.add_argument("--problem", metavar="FILE", help="problem JSON (see schemas/problem.schema.json)")
        sp.add_argument("--rows", help="inline rows, e.g. '1,sqrt(3),-1;1,-sqrt(3),-1'")
        sp.add_argument("--form", help="coefficients A,B,C of A x^2 + B xy + C y^2")

    for name, (fn, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--out", metavar="PATH", help="write here (atomically) instead of stdout")
        sp.add_argument("--format", choices=("json", "csv", "svg"), default="json")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
        if name in ("reduce", "chain", "markoff", "init-cell", "dca", "imarkoff", "locate", "oracle", "plot"):
            problem_opts(sp)
        if name in ("classify", "neighbors", "anchors", "locate", "plot"):
            sp.add_argument("--cell", metavar="FILE", help="cell JSON (see schemas/cell.schema.json)")
        if name in ("chain", "dca"):
            sp.add_argument("--back", type=int, default=0)
            sp.add_argument("--forward", type=int, default=10)
        if name in ("markoff", "imarkoff"):
            sp.add_argument("--depth", type=int, default=64)
        if name in ("imarkoff", "oracle"):
            sp.add_argument("--window", type=int, default=50)
        if name == "oracle":
            sp.add_argument("--margin", type=int, default=5)
            sp.add_argument("--kind", choices=("min", "basic", "extended"), default="min")
        if name == "dca":
            sp.add_argument("--start", metavar="FILE", help="start from this divided cell instead of init-cell")
        if name == "lagrange":
            sp.add_argument("--alpha", required=True, help="quadratic irrational in (0, 1)")
            sp.add_argument("--n", type=int, default=20)
        if name == "locate":
            sp.add_argument("--other", metavar="FILE", help="second cell to compare against")
        if name == "plot":
            sp.add_argument("--preset", required=True, choices=("hom", "inhom", "cell_box", "successors", "all_boxes", "superfluous", "three_box"))
            sp.add_argument("--monochrome", action="store_true")
    return p


def _fail(code: int, exc: BaseException) -> int:
    info = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("position", "pointer"):
        if getattr(exc, attr, None) not in (None, ""):
            info[attr] = getattr(exc, attr)
    point = getattr(exc, "point", None)
    if point is not None:
        info["point"] = list(point)
    sys.stderr.write(json.dumps(info) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except UsageError as exc:
        return _fail(1, exc)
    except FieldMismatch as exc:
        return _fail(2, exc)
    except (Degenerate, Terminated, Diverged, AxisParallel) as exc:
        return _fail(3, exc)
    except (SurdSyntaxError, SchemaError, OSError) as exc:
        return _fail(1, exc)
    except (DividedCellError, ValueError, ZeroDivisionError) as exc:
        return _fail(1, exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
