"""Command-line front end.

Input documents are JSON and their kind is detected by shape::

    [0.5, 0.5]                                   one distribution
    {"marginals": [[0.5, 0.5], [0.3, 0.7]]}      factored (independent) system
    {"shape": [2, 2], "probs": [...]}            explicit joint, row-major

Exit codes: 0 ok, 2 malformed input, 3 parameter domain error,
4 joint table is not independent, 5 internal identity failure, 6 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classic_info import interaction_information, multi_information, mutual_information
from .composition import audit_expansions
from .distribution import (
    DEFAULT_MAX_CELLS,
    FactoredSystem,
    JointTable,
    Pmf,
    factor_joint,
    independence_defect,
    materialize,
)
from .entropy import (
    EntropyParams,
    _bgs,
    entropy_bgs,
    entropy_generalized,
    entropy_joint_factored,
    entropy_joint_table,
)
from .errors import DistributionError, DomainError
from .synergy import dyadic_synergy_expanded, polyadic_synergy, triadic_synergy_expanded

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_DEPENDENT = 4
EXIT_IDENTITY = 5
EXIT_IO = 6

# joint tables fed to `synergy` must factor to within this
TOL_INDEPENDENT = 1e-9

SWEEP_HEADER = ["q", "r", "synergy", "classification"]
VERIFY_HEADER = ["q", "r", "direct", "derived", "printed", "abs_printed_minus_direct", "printed_mismatch"]


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- input -------------------------------------------------------------------


def _numbers(values, what: str) -> list[float]:
    if not isinstance(values, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
    ):
        raise CliError(f"{what} must be a JSON array of numbers", EXIT_PARSE)
    return [float(v) for v in values]


def parse_document(doc):
    """Turn a decoded JSON document into a Pmf, FactoredSystem or JointTable."""
    try:
        if isinstance(doc, list):
            return Pmf(_numbers(doc, "distribution"))
        if isinstance(doc, dict) and "marginals" in doc:
            marginals = doc["marginals"]
            if not isinstance(marginals, list):
                raise CliError('"marginals" must be an array of arrays', EXIT_PARSE)
            return FactoredSystem(tuple(Pmf(_numbers(m, "marginal")) for m in marginals))
        if isinstance(doc, dict) and "shape" in doc:
            shape = doc["shape"]
            if not isinstance(shape, list) or not all(
                isinstance(s, int) and not isinstance(s, bool) for s in shape
            ):
                raise CliError('"shape" must be an array of integers', EXIT_PARSE)
            return JointTable(tuple(shape), _numbers(doc.get("probs"), '"probs"'))
    except DistributionError as exc:
        raise CliError(f"invalid distribution: {exc}", EXIT_PARSE) from exc
    raise CliError(
        'input must be an array, an object with "marginals", or an object with "shape"',
        EXIT_PARSE,
    )


def load_input(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}", EXIT_PARSE) from exc
    return parse_document(doc)


def to_document(obj) -> object:
    """Inverse of :func:`parse_document`."""
    if isinstance(obj, Pmf):
        return obj.tolist()
    if isinstance(obj, FactoredSystem):
        return {"marginals": [m.tolist() for m in obj.marginals]}
    if isinstance(obj, JointTable):
        return {"shape": list(obj.shape), "probs": obj.probs.tolist()}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _max_cells() -> int:
    raw = os.environ.get("POLYENT_MAX_CELLS")
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        value = int(raw)
    except ValueError:
        raise CliError(f"POLYENT_MAX_CELLS must be an integer, got {raw!r}", EXIT_DOMAIN) from None
    if value < 1:
        raise CliError("POLYENT_MAX_CELLS must be positive", EXIT_DOMAIN)
    return value


def as_factored(obj) -> FactoredSystem:
    if isinstance(obj, FactoredSystem):
        return obj
    if isinstance(obj, JointTable):
        defect = independence_defect(obj)
        if defect > TOL_INDEPENDENT:
            raise CliError(
                f"joint table is not a product of its marginals (defect {defect:.3g})",
                EXIT_DEPENDENT,
            )
        return factor_joint(obj)
    raise CliError("a factored system or joint table is required, not a single distribution", EXIT_DOMAIN)


def as_joint(obj) -> JointTable:
    if isinstance(obj, JointTable):
        return obj
    if isinstance(obj, FactoredSystem):
        return materialize(obj, _max_cells())
    raise CliError("a joint table or factored system is required, not a single distribution", EXIT_DOMAIN)


# -- argument types ----------------------------------------------------------


def parse_base(text: str) -> float:
    if text.strip().lower() == "e":
        return math.e
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"base must be a number or 'e', got {text!r}") from None


@dataclass(frozen=True)
class SweepGrid:
    q_min: float
    q_max: float
    q_steps: int
    r_min: float
    r_max: float
    r_steps: int

    @classmethod
    def parse(cls, text: str) -> "SweepGrid":
        """Parse ``qmin:qmax:steps,rmin:rmax:steps``."""
        try:
            q_part, r_part = text.split(",")
            q_min, q_max, q_steps = q_part.split(":")
            r_min, r_max, r_steps = r_part.split(":")
            grid = cls(float(q_min), float(q_max), int(q_steps), float(r_min), float(r_max), int(r_steps))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"grid must look like qmin:qmax:steps,rmin:rmax:steps, got {text!r}"
            ) from None
        if grid.q_steps < 1 or grid.r_steps < 1:
            raise argparse.ArgumentTypeError("grid steps must be at least 1")
        return grid

    @staticmethod
    def _axis(lo: float, hi: float, steps: int) -> list[float]:
        if steps == 1:
            return [lo]
        return [float(v) for v in np.linspace(lo, hi, steps)]

    def points(self) -> list[tuple[float, float]]:
        """Grid points in row-major order (q outer, r inner)."""
        qs = self._axis(self.q_min, self.q_max, self.q_steps)
        rs = self._axis(self.r_min, self.r_max, self.r_steps)
        return [(q, r) for q in qs for r in rs]


def _params(q: float, r: float) -> EntropyParams:
    try:
        return EntropyParams(q, r)
    except DomainError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from exc


def _grid_points(args) -> list[tuple[float, float]]:
    if args.grid is not None:
        points = args.grid.points()
    else:
        points = [(args.q, args.r)]
    for q, r in points:
        _params(q, r)
    return points


# -- commands ----------------------------------------------------------------


def _units(base: float) -> str:
    if base == 2:
        return "bit"
    if base == math.e:
        return "nat"
    return f"log{base!r}"


def cmd_entropy(args) -> dict:
    obj = load_input(args.input)
    params = _params(args.q, args.r)
    if params.is_bgs:
        base = args.base
        if isinstance(obj, Pmf):
            value = entropy_bgs(obj, base)
        elif isinstance(obj, FactoredSystem):
            value = sum(entropy_bgs(m, base) for m in obj.marginals)
        else:
            value = _bgs(obj.probs, base)
        return {"entropy": value, "q": params.q, "r": params.r, "units": _units(base)}
    if isinstance(obj, Pmf):
        value = entropy_generalized(obj, params)
    elif isinstance(obj, FactoredSystem):
        value = entropy_joint_factored(obj, params)
    else:
        value = entropy_joint_table(obj, params)
    return {"entropy": value, "q": params.q, "r": params.r, "units": "nat"}


def synergy_report(system: FactoredSystem, params: EntropyParams):
    report = polyadic_synergy(system, params)
    if system.arity == 2:
        expanded = dyadic_synergy_expanded(*system.marginals, params)
        report.term_breakdown = [(f"expanded:{name}", v) for name, v in expanded.term_breakdown]
        report.term_breakdown.append(("expanded", expanded.value))
    elif system.arity == 3:
        report.term_breakdown = triadic_synergy_expanded(*system.marginals, params).term_breakdown
    return report


def cmd_synergy(args) -> dict:
    obj = load_input(args.input)
    params = _params(args.q, args.r)
    return synergy_report(as_factored(obj), params).to_dict()


def _rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def verify_csv(system: FactoredSystem, points) -> tuple[str, bool]:
    """Audit CSV text and whether every derived value matched the direct one."""
    reports = audit_expansions(system, points)
    rows = [
        [
            rep.params.q,
            rep.params.r,
            rep.direct,
            rep.derived,
            rep.printed,
            rep.max_abs_discrepancy_printed,
            int(rep.printed_mismatch),
        ]
        for rep in reports
    ]
    return _rows_to_csv(VERIFY_HEADER, rows), all(rep.derived_ok for rep in reports)


def cmd_verify(args) -> str:
    system = as_factored(load_input(args.input))
    if system.arity not in (2, 3):
        raise CliError(f"verify needs 2 or 3 marginals, got {system.arity}", EXIT_DOMAIN)
    text, ok = verify_csv(system, _grid_points(args))
    if not ok:
        _emit(text, args.out)
        raise CliError("derived expansion disagrees with the direct joint entropy", EXIT_IDENTITY)
    return text


def sweep_csv(system: FactoredSystem, points, jobs: int = 1) -> str:
    """Synergy over ``points`` as CSV; row order never depends on ``jobs``."""

    def evaluate(point):
        rep = polyadic_synergy(system, EntropyParams(*point))
        return [point[0], point[1], rep.value, rep.classification]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(evaluate, points))
    else:
        rows = [evaluate(p) for p in points]
    if not all(math.isfinite(row[2]) for row in rows):
        raise CliError("non-finite synergy value in sweep", EXIT_IDENTITY)
    return _rows_to_csv(SWEEP_HEADER, rows)


def cmd_sweep(args) -> str:
    system = as_factored(load_input(args.input))
    if system.arity < 2:
        raise CliError("sweep needs at least two marginals", EXIT_DOMAIN)
    if args.jobs < 1:
        raise CliError("--jobs must be at least 1", EXIT_DOMAIN)
    return sweep_csv(system, _grid_points(args), args.jobs)


_MEASURES = {
    "mi": mutual_information,
    "multi": multi_information,
    "interaction": interaction_information,
}


def cmd_info(args) -> dict:
    joint = as_joint(load_input(args.input))
    return _MEASURES[args.measure](joint, args.base).to_dict()


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyent",
        description="Generalized (q, r) entropies and polyadic synergy of discrete distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="JSON input file, or - for stdin")

    def add_qr(p):
        p.add_argument("--q", type=float, default=1.0)
        p.add_argument("--r", type=float, default=1.0)

    p = sub.add_parser("entropy", help="generalized entropy of a distribution, system or table")
    add_input(p)
    add_qr(p)
    p.add_argument("--base", type=parse_base, default=math.e, help="log base for q = r = 1 (default e)")

    p = sub.add_parser("synergy", help="polyadic synergy of independent subsystems")
    add_input(p)
    add_qr(p)

    p = sub.add_parser("verify", help="audit closed-form joint-entropy expansions as CSV")
    add_input(p)
    add_qr(p)
    p.add_argument("--grid", type=SweepGrid.parse, help="qmin:qmax:steps,rmin:rmax:steps (overrides --q/--r)")
    p.add_argument("--out", help="write CSV here instead of stdout")

    p = sub.add_parser("sweep", help="synergy over a (q, r) grid as CSV")
    add_input(p)
    p.add_argument("--grid", type=SweepGrid.parse, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker threads (output is order-independent)")
    p.set_defaults(q=None, r=None)

    p = sub.add_parser("info", help="classical information measures of a joint table")
    add_input(p)
    p.add_argument("--measure", choices=sorted(_MEASURES), default="mi")
    p.add_argument("--base", type=parse_base, default=math.e)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", EXIT_IO) from exc


_COMMANDS = {
    "entropy": cmd_entropy,
    "synergy": cmd_synergy,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "info": cmd_info,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = _COMMANDS[args.command](args)
        if isinstance(result, dict):
            _emit(json.dumps(result, allow_nan=False) + "\n", None)
        else:
            _emit(result, getattr(args, "out", None))
    except CliError as exc:
        print(f"polyent: {exc}", file=sys.stderr)
        return exc.code
    except DomainError as exc:
        print(f"polyent: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DistributionError as exc:
        print(f"polyent: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK
