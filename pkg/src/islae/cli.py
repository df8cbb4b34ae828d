"""Command-line interface.

Every command prints a readable report (numbers to 9 significant digits) or, with
``--json``, the same content as a JSON document. ``--report PATH`` writes the
full-precision JSON document. Row indices shown by the CLI are 1-based.

Exit status: 0 when the analysis completed (including a failed certificate),
1 for input or usage errors, 2 for internal numerical failures.
"""

import argparse
import json
import sys

import numpy as np

from . import lp
from ._validation import ISLAEError, InputError, NumericalError
from .certificate import certify_and_solve, check_conditions, report_to_document
from .error_bounds import solution_error_bound
from .kinetics import DEFAULT_EPS_C, DEFAULT_EPS_T, default_dataset, load_dataset, run_demo
from .model import IntervalSystem, load_system, system_to_document
from .oettli_prager import construct_witness, membership
from .oracle import DEFAULT_CAP, HARD_CAP, cross_check, enumerate_orthants
from .testgen import GenSpec, generate

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.9g}"
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _round(v):
    """Round floats in a JSON-able structure to 9 significant digits."""
    if isinstance(v, float):
        return float(f"{v:.9g}")
    if isinstance(v, dict):
        return {k: _round(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_round(x) for x in v]
    return v


def _plain(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, float) and not np.isfinite(v):
        return None if np.isnan(v) else ("inf" if v > 0 else "-inf")
    return v


def _parse_list(text, name="--x"):
    try:
        return np.array([float(t) for t in text.split(",")], dtype=float)
    except ValueError:
        raise UsageError(f"{name}: expected a comma-separated list of numbers, got {text!r}") from None


def _emit(args, doc, lines):
    doc = _plain(doc)
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    if args.json:
        print(json.dumps(_round(doc), indent=2))
    else:
        print("\n".join(lines))


def _condition_lines(doc, margins):
    out = []
    for name, c in doc["conditions"].items():
        verdict = "PASS" if c["passed"] else ("FAIL" if c["evaluated"] else "N/E ")
        line = f"  {name:<4} {verdict}"
        if margins:
            line += f"  lhs={_fmt(c['lhs'])}  rhs={_fmt(c['rhs'])}  margin={_fmt(c['margin'])}"
        if c["note"]:
            line += f"  ({c['note']})"
        out.append(line)
    return out


def cmd_check(args):
    s = load_system(args.system)
    r = check_conditions(s)
    doc = report_to_document(r)
    lines = [
        f"system: m={r.m} n={r.n}",
        f"x_hat: {_fmt(r.x_hat)}",
        f"S: {_fmt(r.signs)}",
        f"sigma_min(A_c): {_fmt(r.sigma_min_Ac)}  sigma_max(A_r): {_fmt(r.sigma_max_Ar)}",
        f"gamma: {_fmt(r.gamma)}  e4_value: {_fmt(r.e4_value)}",
        "conditions:",
        *_condition_lines(doc, args.margins),
        f"overall: {'PASS' if r.overall else 'FAIL'}",
    ]
    lines += [f"note: {d}" for d in r.diagnostics]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_solve(args):
    s = load_system(args.system)
    if args.vertices and s.n != 2:
        raise UsageError(f"--vertices needs n = 2, system has n = {s.n}")
    show_all = not (args.chebyshev or args.box or args.vertices or args.delta)
    sol = certify_and_solve(s)
    r = sol.report
    doc = {"certificate": report_to_document(r)}
    lines = [f"certificate: {'PASS' if r.overall else 'FAIL'}"
             + ("" if r.overall else f" (first failure: {r.first_failure()})")]
    if r.overall:
        if not r.feasible_X:
            doc["verdict"] = "certified-empty"
            lines.append("verdict: certified orthant but empty joined set")
        else:
            doc["verdict"] = "certified"
            doc["orthant"] = r.signs.tolist()
            lines.append(f"verdict: bounded convex polyhedron inside orthant {_fmt(r.signs)}")
            if show_all or args.chebyshev:
                doc["chebyshev_center"], doc["chebyshev_radius"] = sol.center, sol.radius
                lines.append(f"chebyshev center: {_fmt(sol.center)}  radius: {_fmt(sol.radius)}")
            if show_all or args.box:
                doc["box"] = {"lo": sol.box.lo, "hi": sol.box.hi, "status": sol.box.status}
                for j in range(s.n):
                    lines.append(f"x[{j + 1}] in [{_fmt(sol.box.lo[j])}, {_fmt(sol.box.hi[j])}]")
            if show_all or args.delta:
                doc["delta"] = sol.delta
                lines.append(f"delta: {_fmt(sol.delta)}")
            if args.vertices:
                verts = lp.vertices_2d(sol.polyhedron)
                doc["vertices"] = [v.tolist() for v in verts]
                lines.append("vertices:")
                lines += [f"  {_fmt(v)}" for v in verts]
    else:
        # no certificate: describe the joined set piece by piece when affordable
        if s.n > args.cap:
            doc["verdict"] = "uncertified"
            lines.append(f"verdict: uncertified (n = {s.n} above orthant cap {args.cap})")
        else:
            pieces = [p for p in enumerate_orthants(s, args.cap) if p.feasible]
            doc["pieces"] = []
            if not pieces:
                doc["verdict"] = "empty"
                lines.append("verdict: empty joined solution set")
            else:
                doc["verdict"] = "uncertified-nonempty"
                lines.append(f"verdict: joined set meets {len(pieces)} orthant(s)")
            for p in pieces:
                entry = {"orthant": list(p.S_tilde), "bounded": p.bounded,
                         "box": {"lo": p.box.lo, "hi": p.box.hi}}
                lines.append(f"  orthant {_fmt(p.S_tilde)} bounded={_fmt(p.bounded)} "
                             f"lo={_fmt(p.box.lo)} hi={_fmt(p.box.hi)}")
                if args.vertices and p.bounded:
                    entry["vertices"] = [v.tolist() for v in lp.vertices_2d(p.polyhedron)]
                doc["pieces"].append(entry)
            if args.vertices:
                doc["vertices"] = [v for e in doc["pieces"] for v in e.get("vertices", [])]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_member(args):
    s = load_system(args.system)
    v = membership(s, _parse_list(args.x))
    doc = {"member": v.member, "slack": v.slack, "worst_row": v.worst_row + 1}
    lines = [f"member: {_fmt(v.member)}", f"slack: {_fmt(v.slack)}",
             f"worst row: {v.worst_row + 1}"]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_witness(args):
    s = load_system(args.system)
    w = construct_witness(s, _parse_list(args.x))
    point = IntervalSystem(w.A, np.zeros_like(w.A), w.b, np.zeros_like(w.b))
    doc = system_to_document(point, form="endpoints")
    doc["x"] = w.x.tolist()
    doc["residual_norm"] = w.residual_norm
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.json or not args.out:
        print(text)
    else:
        print(f"witness written to {args.out} (residual norm {_fmt(w.residual_norm)})")
    return EXIT_OK


def cmd_oracle(args):
    s = load_system(args.system)
    pieces = enumerate_orthants(s, args.cap)
    doc = {"pieces": [
        {"orthant": list(p.S_tilde), "feasible": p.feasible, "bounded": p.bounded,
         "box": None if p.box is None else {"lo": p.box.lo, "hi": p.box.hi}}
        for p in pieces
    ]}
    feas = [p for p in pieces if p.feasible]
    lines = [f"orthants: {len(pieces)}  feasible: {len(feas)}"]
    for p in feas:
        lines.append(f"  {_fmt(p.S_tilde)} bounded={_fmt(p.bounded)}")
    if args.cross_check:
        if s.m <= s.n:
            raise UsageError("--cross-check needs an overdetermined system (m > n)")
        r = check_conditions(s)
        cc = cross_check(s, r, cap=args.cap, pieces=pieces)
        claims = {
            "unique_orthant": cc.unique_orthant, "one_sided_feasible": cc.one_sided_feasible,
            "margin_consequence": cc.margin_consequence, "membership_agrees": cc.membership_agrees,
        }
        doc["certificate_overall"] = r.overall
        doc["cross_check"] = {**claims, "delta_one_sided": cc.delta_one_sided,
                              "samples": cc.n_samples, "disagreements": cc.n_disagree,
                              "notes": cc.notes}
        lines.append(f"certificate: {'PASS' if r.overall else 'FAIL'}")
        for k, v in claims.items():
            lines.append(f"  {k}: {'skipped' if v is None else _fmt(v)}")
        lines += [f"note: {n}" for n in cc.notes]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_bound(args):
    s = load_system(args.system)
    rep = solution_error_bound(s.A_c, s.A_r, s.b_c, s.b_r)
    doc = {"alpha": rep.alpha, "bound": rep.bound, "sigma_min_A": rep.sigma_min_A,
           "sigma_max_dA": rep.sigma_max_dA, "norm_b": rep.norm_b, "norm_db": rep.norm_db}
    lines = [f"{k}: {_fmt(v)}" for k, v in doc.items()]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_demo(args):
    if args.name != "kinetics":
        raise UsageError(f"unknown demo {args.name!r}; available: kinetics")
    if args.data:
        d = load_dataset(args.data, args.eps_t, args.eps_c)
    else:
        d = default_dataset(args.eps_t, args.eps_c)
    default_run = args.data is None and args.eps_t == DEFAULT_EPS_T and args.eps_c == DEFAULT_EPS_C
    rep = run_demo(d, compare=default_run)
    doc = rep.to_document()
    lines = []
    if rep.checks:
        lines.append(f"{'quantity':<14}{'computed':>16}{'published':>16}  verdict")
        for c in rep.checks:
            lines.append(f"{c['name']:<14}{_fmt(c['value']):>16}{_fmt(c['reference']):>16}  "
                         f"{'PASS' if c['passed'] else 'FAIL'}")
    else:
        lines.append("custom data or radii: published-value comparison skipped")
        lines += [f"{k}: {_fmt(v)}" for k, v in rep.values.items()]
    cert = rep.certificate
    lines.append(f"certificate: {'PASS' if cert['overall'] else 'FAIL'}")
    if rep.box:
        lines.append(f"coefficient box: lo={_fmt(rep.box['lo'])} hi={_fmt(rep.box['hi'])}")
        lines.append(f"chebyshev center: {_fmt(rep.center)}  delta: {_fmt(rep.delta)}")
    lines.append(f"oracle feasible orthants: {rep.cross_check['feasible_orthants']}")
    lines.append(f"runtime: {rep.seconds:.3f} s")
    lines += [f"note: {n}" for n in rep.notes]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_gen(args):
    x_true = None if args.x_true is None else tuple(_parse_list(args.x_true, "--x-true"))
    kwargs = {"x_true": x_true, "radius_scale": args.radius}
    kwargs["noise_scale"] = args.radius / 4 if args.noise is None else args.noise
    g = generate(GenSpec(args.seed, args.m, args.n, **kwargs))
    doc = system_to_document(g.system)
    doc["x_true"] = g.x_true.tolist()
    text = json.dumps(doc, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="islae", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, system=True, report=True):
        sp = sub.add_parser(name, help=help_)
        if system:
            sp.add_argument("system", help="system file (JSON)")
        sp.add_argument("--json", action="store_true", help="print a JSON document")
        if report:
            sp.add_argument("--report", metavar="PATH", help="write full-precision JSON report")
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "evaluate the single-orthant certificate")
    sp.add_argument("--margins", action="store_true", help="show lhs, rhs and margin per condition")

    sp = add("solve", cmd_solve, "certify and solve by linear programming")
    sp.add_argument("--chebyshev", action="store_true")
    sp.add_argument("--box", action="store_true")
    sp.add_argument("--vertices", action="store_true", help="ordered vertex list (n = 2 only)")
    sp.add_argument("--delta", action="store_true")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP,
                    help="orthant cap for the uncertified fallback")

    sp = add("member", cmd_member, "Oettli-Prager membership of a point", report=False)
    sp.add_argument("--x", required=True, help="comma-separated point")

    sp = add("witness", cmd_witness, "explicit (A, b) with A x = b inside the bounds", report=False)
    sp.add_argument("--x", required=True, help="comma-separated point")
    sp.add_argument("--out", help="write the witness system file here")

    sp = add("oracle", cmd_oracle, "enumerate orthant pieces of the joined set")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help=f"max n (hard limit {HARD_CAP})")
    sp.add_argument("--cross-check", action="store_true", help="recheck the certificate claims")

    add("bound", cmd_bound, "a priori error bound for any admissible solution")

    sp = add("demo", cmd_demo, "reproduce the kinetics example", system=False)
    sp.add_argument("name", help="demo name (kinetics)")
    sp.add_argument("--data", help="CSV file with header t,c")
    sp.add_argument("--eps-t", type=float, default=DEFAULT_EPS_T)
    sp.add_argument("--eps-c", type=float, default=DEFAULT_EPS_C)

    sp = add("gen", cmd_gen, "generate a random system with known ground truth",
             system=False, report=False)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--radius", type=float, default=1e-3)
    sp.add_argument("--noise", type=float, default=None, help="default: radius / 4")
    sp.add_argument("--x-true", default=None, help="comma-separated ground-truth point")
    sp.add_argument("-o", "--output", help="output file (default: stdout)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"islae: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ISLAEError, OSError) as exc:
        print(f"islae: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except np.linalg.LinAlgError as exc:
        print(f"islae: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
