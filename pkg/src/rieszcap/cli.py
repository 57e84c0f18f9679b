"""Command-line front end: ``rieszcap <subcommand> [options]``.

Subcommands
-----------
capacity     estimate Cap_p of a set
curve        capacity against p (CSV header p,capacity,energy,gap,iterations,N,closed_form)
equilibrium  discrete equilibrium weights, with an L1 distance to the closed form
validate     closed-form identity suite; exit status 1 if any check fails
figure1      unit-ball capacity table for n = 1..4

Exit status is 2 for argument errors, 1 for a failed ``validate``, 0 otherwise.
"""

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import analysis, closedform
from .analysis import _fmt, to_json
from .energy import DiagonalMode
from .errors import DomainError, InvalidInputError, NonUniqueEquilibriumError, UnsupportedError
from .geometry import Ball, Interval, load_spec, spec_from_json
from .kernel import capacity_from_energy
from .solver import SolverConfig, solve_equilibrium

FIGURE1_GRID = tuple(round(-4.0 + 0.1 * k, 10) for k in range(81))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _diag(text):
    try:
        return DiagonalMode.parse(text)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_common(sub, p_flag=True, grid=False, default_format="json"):
    sub.add_argument("--set", required=True, help="set-spec JSON file, or an inline JSON object")
    if p_flag:
        sub.add_argument("--p", type=float, required=True, help="Riesz exponent")
    if grid:
        sub.add_argument("--p-grid", type=_float_list, required=True, help="strictly increasing comma list")
    sub.add_argument("--ladder", type=_int_list, default=list(analysis.DEFAULT_LADDER), help="node counts, comma list")
    sub.add_argument("--scheme", choices=("grid", "boundary", "native"), default="native")
    sub.add_argument("--diag", type=_diag, default=None, help="exclude, self-cell or self-cell:SIGMA")
    sub.add_argument("--tol", type=float, default=1e-8, help="relative duality-gap tolerance")
    sub.add_argument("--max-iters", type=int, default=50_000)
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default=default_format)
    sub.add_argument("-v", "--verbose", action="store_true")


def build_parser():
    parser = _Parser(prog="rieszcap", description="Riesz p-capacity of compact sets.")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_common(subs.add_parser("capacity", help="estimate Cap_p of a set"))
    _add_common(subs.add_parser("curve", help="capacity against p"), p_flag=False, grid=True, default_format="csv")
    _add_common(subs.add_parser("equilibrium", help="discrete equilibrium weights"))
    val = subs.add_parser("validate", help="closed-form identity suite")
    val.add_argument("--out", default=None)
    val.add_argument("--format", choices=("csv", "json"), default="json")
    fig = subs.add_parser("figure1", help="unit-ball capacity table for n = 1..4")
    fig.add_argument("--p-grid", type=_float_list, default=list(FIGURE1_GRID))
    fig.add_argument("--out", default=None)
    fig.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _load_set(text):
    stripped = text.strip()
    if stripped.startswith("{"):
        return spec_from_json(stripped)
    return load_spec(text)


def _config(args):
    if args.tol <= 0 or args.max_iters < 1:
        raise InvalidInputError("--tol must be positive and --max-iters at least 1")
    return SolverConfig(max_iters=args.max_iters, gap_tol=args.tol, diag=args.diag)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _rows_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


# -- subcommands -------------------------------------------------------------


def cmd_capacity(args):
    spec = _load_set(args.set)
    res = analysis.estimate_capacity(spec, args.p, args.ladder, args.scheme, _config(args))
    doc = {"set": spec.to_dict(), **res.to_dict()}
    if args.format == "json":
        return to_json(doc)
    keys = ("p", "capacity", "finest_capacity", "energy", "gap", "iterations", "converged", "scheme", "diag", "closed_form")
    return _rows_csv(keys, [[doc[k] if not isinstance(doc[k], bool) else str(doc[k]).lower() for k in keys]])


def cmd_curve(args):
    spec = _load_set(args.set)
    table = analysis.capacity_curve(spec, args.p_grid, args.ladder, args.scheme, _config(args))
    return table.to_csv() if args.format == "csv" else to_json(table.to_dict())


def _interval_reference_masses(spec, p, nodes):
    a, b = spec.a, spec.b
    order = np.argsort(nodes)
    x = nodes[order]
    edges = np.concatenate(([a], (x[1:] + x[:-1]) / 2, [b]))
    t = 2.0 * (edges - a) / (b - a) - 1.0
    cdf = np.asarray(closedform.interval_equilibrium_cdf(p, t), dtype=float)
    cdf[0], cdf[-1] = 0.0, 1.0
    masses = np.empty_like(x)
    masses[order] = np.diff(cdf)
    return masses, "cell"


def _ball_reference(spec, p, cloud, w):
    """Closed-form masses on cells (surface regime) or radial shells (volume regime)."""
    n = spec.dim
    rel = (cloud.nodes - spec.center) / spec.radius
    r = np.linalg.norm(rel, axis=1)
    if p <= n - 2:
        ref = cloud.cell_measures / cloud.cell_measures.sum()
        on_sphere = cloud.native_dims == n - 1
        ref = np.where(on_sphere, ref, 0.0)
        ref = ref / ref.sum() if ref.sum() > 0 else ref
        return ref, w, "cell"
    shells = max(4, int(round(len(cloud) ** (1.0 / n) / 2)))
    edges = np.linspace(0.0, 1.0, shells + 1)
    ref = np.diff(closedform.ball_equilibrium_radial_cdf(n, p, edges))
    idx = np.minimum(np.searchsorted(edges, np.minimum(r, 1.0), side="right") - 1, shells - 1)
    solved = np.bincount(idx, weights=w, minlength=shells)
    return ref, solved, "radial-shell"


def cmd_equilibrium(args):
    spec = _load_set(args.set)
    p = args.p
    if p >= spec.dim:
        raise DomainError(f"no equilibrium measure: capacity vanishes for p >= n = {spec.dim}")
    scheme = analysis.resolve_scheme(spec, p, args.scheme)
    cloud = analysis.discretize_for(spec, args.ladder[-1], scheme)
    res = solve_equilibrium(p, cloud, _config(args))
    w = res.weights
    support = w > 0
    doc = {
        "set": spec.to_dict(),
        "p": p,
        "N": len(cloud),
        "scheme": scheme if scheme != "native" else spec.default_scheme,
        "diag": res.diag.label(),
        "energy": float(res.energy),
        "capacity": capacity_from_energy(p, res.energy),
        "gap": res.gap,
        "iterations": res.iterations,
        "converged": res.converged,
        "support_size": int(support.sum()),
        "max_weight": float(w.max()),
        "min_positive_weight": float(w[support].min()),
        "diagnostics": res.diagnostics,
    }
    reference = None
    try:
        if isinstance(spec, Interval) and p < 1:
            ref, kind = _interval_reference_masses(spec, p, cloud.nodes[:, 0])
            reference, solved = ref, w
        elif isinstance(spec, Ball) and spec.dim >= 2:
            closedform.ball_equilibrium_density(spec.dim, p, np.zeros(spec.dim))
            reference, solved, kind = _ball_reference(spec, p, cloud, w)
    except NonUniqueEquilibriumError as exc:
        doc["closed_form_note"] = f"{exc}; {exc.description}"
    if reference is not None:
        doc["l1_to_closed_form"] = float(np.abs(solved - reference).sum())
        doc["l1_binning"] = kind
    if args.format == "json":
        doc["nodes"] = cloud.nodes
        doc["weights"] = w
        return to_json(doc)
    header = [f"x{k}" for k in range(cloud.dim)] + ["cell_measure", "weight"]
    rows = [list(cloud.nodes[i]) + [cloud.cell_measures[i], w[i]] for i in range(len(cloud))]
    return _rows_csv(header, rows)


def _one_sided(f, p0, delta, side):
    """Linear extrapolation to p0 from one side: 2 f(p0 -/+ d) - f(p0 -/+ 2d)."""
    s = -1.0 if side == "left" else 1.0
    return 2.0 * f(p0 + s * delta) - f(p0 + 2.0 * s * delta)


def validation_checks():
    """Closed-form identity suite as a list of dicts with a ``passed`` flag."""
    checks = []

    def add(name, value, expected, tol):
        err = abs(value - expected) / max(1.0, abs(expected))
        checks.append({"check": name, "value": value, "expected": expected, "error": err, "tol": tol, "passed": bool(err <= tol)})

    for n in range(1, 5):
        add(f"gotz_identity_n{n}", closedform.gotz_constant(n, n) * closedform.ball_volume(n) ** 2, closedform.sphere_area(n), 1e-12)
    e = math.e
    endpoints = [
        ("cap_p0_n1", closedform.interval_capacity(0.0), 0.5),
        ("cap_p0_n2", closedform.ball_capacity(2, 0.0), 1.0),
        ("cap_p0_n3", closedform.ball_capacity(3, 0.0), 2.0 / math.sqrt(e)),
        ("cap_p0_n4", closedform.ball_capacity(4, 0.0), e**0.25),
        ("cap_newton_n3", closedform.ball_capacity(3, 1.0), 1.0),
        ("cap_newton_n2", closedform.ball_capacity(2, 1.0), 2.0 / math.pi),
        ("cap_interval_pm1", closedform.interval_capacity(-1.0), 1.0),
    ] + [(f"cap_pm2_n{n}", closedform.ball_capacity(n, -2.0), math.sqrt(2.0)) for n in (2, 3, 4)]
    for name, value, expected in endpoints:
        add(name, value, expected, 1e-12)
    delta = 1e-6
    for n in range(2, 5):
        f = lambda p, n=n: closedform.ball_capacity(n, p)
        for p0 in sorted({-2.0, 0.0, float(n - 2)}):
            left = _one_sided(f, p0, delta, "left")
            right = _one_sided(f, p0, delta, "right")
            add(f"continuity_n{n}_p{p0:g}", left, right, 1e-9)
    return checks


def cmd_validate(args):
    checks = validation_checks()
    passed = all(c["passed"] for c in checks)
    if args.format == "json":
        text = to_json({"passed": passed, "checks": checks})
    else:
        keys = ("check", "value", "expected", "error", "tol", "passed")
        text = _rows_csv(keys, [[c[k] if k != "passed" else str(c[k]).lower() for k in keys] for c in checks])
    return text, 0 if passed else 1


def cmd_figure1(args):
    grid = sorted(set(args.p_grid))
    if grid != list(args.p_grid):
        raise InvalidInputError("--p-grid must be strictly increasing")
    curves = {}
    for n in range(1, 5):
        curves[n] = [0.0 if p >= n else closedform.ball_capacity(n, p) for p in grid]
    if args.format == "json":
        return to_json({"p_grid": grid, "capacity": {str(n): curves[n] for n in curves}})
    header = ["n"] + [_fmt(p) for p in grid]
    return _rows_csv(header, [[n] + curves[n] for n in range(1, 5)])


COMMANDS = {
    "capacity": cmd_capacity,
    "curve": cmd_curve,
    "equilibrium": cmd_equilibrium,
    "figure1": cmd_figure1,
}


_VALUE_FLAGS = ("--p", "--p-grid")
_NUMBER = re.compile(r"^-[0-9.]")


def _join_negative_values(argv):
    """Let ``--p -1`` and ``--p-grid -3,-2`` through argparse as ``--p=-1``."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and _NUMBER.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        if args.command == "validate":
            text, code = cmd_validate(args)
        else:
            text, code = COMMANDS[args.command](args), 0
    except (DomainError, InvalidInputError, UnsupportedError, OSError, json.JSONDecodeError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"rieszcap: error: {exc}\n")
        return 2
    _emit(text, args.out)
    return code


def run(argv):
    """Run the CLI on ``argv`` and return the exit status."""
    try:
        return main(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
