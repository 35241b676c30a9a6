"""Dyadic and triadic joint-entropy expansions for independent subsystems.

Three values are computed for every case:

``direct``
    the joint entropy of the product distribution (ground truth);
``derived``
    an exact expansion built from the power-sum telescoping identity
    ``A_r B_r - A_q B_q = B_r (A_r - A_q) + A_q (B_r - B_q)``, rewritten in
    entropies with ``A_s = 1 + (1 - s) H_{s,1}(A)``;
``printed``
    the published closed-form expansion transcribed term by term.

The printed triadic form does not agree with ``direct`` away from
``q = r = 1``; that gap is reported as a discrepancy and never corrected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .distribution import FactoredSystem, Pmf, as_pmf
from .entropy import EntropyParams, _as_params, entropy_generalized, entropy_joint_factored
from .errors import UnsupportedArity

TOL_DISCREPANCY = 1e-9


@dataclass
class ExpansionReport:
    direct: float
    derived: float
    printed: float
    params: EntropyParams
    term_breakdown: list[tuple[str, float]] = field(default_factory=list)

    @property
    def max_abs_discrepancy_printed(self) -> float:
        return abs(self.printed - self.direct)

    @property
    def max_abs_discrepancy_derived(self) -> float:
        return abs(self.derived - self.direct)

    @property
    def printed_mismatch(self) -> bool:
        return self.max_abs_discrepancy_printed > TOL_DISCREPANCY

    @property
    def derived_ok(self) -> bool:
        return self.max_abs_discrepancy_derived <= TOL_DISCREPANCY

    def term(self, name: str) -> float:
        return dict(self.term_breakdown)[name]


class _Marginal:
    """Entropies of one marginal that the expansions draw on."""

    def __init__(self, p: Pmf, q: float, r: float):
        self.h = entropy_generalized(p, (q, r))
        self.h_q1 = entropy_generalized(p, (q, 1.0))
        self.h_r1 = entropy_generalized(p, (r, 1.0))
        self.h_11 = entropy_generalized(p, (1.0, 1.0))


def _dyadic_printed_terms(a: _Marginal, b: _Marginal, q: float, r: float) -> list[tuple[str, float]]:
    return [
        ("(1-q)", (1 - q) * a.h * b.h_q1),
        ("(1-r)", (1 - r) * b.h * a.h_r1),
    ]


def _dyadic_derived_terms(a: _Marginal, b: _Marginal, q: float, r: float) -> list[tuple[str, float]]:
    # H_ab = H_a B_r + H_b A_q with B_r = 1 + (1-r) H_{r,1}(b), A_q = 1 + (1-q) H_{q,1}(a)
    return [
        ("(1-q)", (1 - q) * b.h * a.h_q1),
        ("(1-r)", (1 - r) * a.h * b.h_r1),
    ]


def dyadic_expansion(yi, yj, params: EntropyParams) -> ExpansionReport:
    """Joint entropy of two independent subsystems, three ways."""
    params = _as_params(params)
    q, r = params.q, params.r
    yi, yj = as_pmf(yi), as_pmf(yj)
    a, b = _Marginal(yi, q, r), _Marginal(yj, q, r)
    linear = a.h + b.h
    printed_terms = _dyadic_printed_terms(a, b, q, r)
    derived_terms = _dyadic_derived_terms(a, b, q, r)
    direct = entropy_joint_factored(FactoredSystem.of(yi, yj), params)
    breakdown = [("linear", linear)]
    breakdown += [(f"printed:{name}", v) for name, v in printed_terms]
    breakdown += [(f"derived:{name}", v) for name, v in derived_terms]
    return ExpansionReport(
        direct=direct,
        derived=linear + sum(v for _, v in derived_terms),
        printed=linear + sum(v for _, v in printed_terms),
        params=params,
        term_breakdown=breakdown,
    )


def _triadic_printed_terms(a: _Marginal, b: _Marginal, c: _Marginal, q: float, r: float):
    """Nonlinear groups of the published triadic expansion, keyed by prefactor.

    Transcribed literally, including the stand-alone single-entropy terms in
    the first-order groups and the ``H_{1,1}`` factor of the ``(1-r)^2`` group.
    """
    return [
        ("(1-q)", (1 - q) * (a.h + b.h_r1 + (a.h + b.h) * c.h)),
        ("(1-r)", (1 - r) * (b.h + a.h_r1 + (a.h_r1 + b.h_r1) * c.h)),
        ("(1-q)^2", (1 - q) ** 2 * a.h * b.h * c.h),
        ("(1-r)^2", (1 - r) ** 2 * a.h_11 * b.h_r1 * c.h),
        ("(1-q)(1-r)", (1 - q) * (1 - r) * (a.h_r1 * b.h * c.h + a.h_r1 * b.h_r1 * c.h)),
    ]


def _triadic_derived_terms(a: _Marginal, b: _Marginal, c: _Marginal, q: float, r: float):
    """Nonlinear groups of the exact triadic expansion.

    Nesting the dyadic identity as ``(a x b) x c`` gives
    ``H_abc = H_a B_r C_r + H_b A_q C_r + H_c A_q B_q``; expanding each power
    sum in entropies yields the groups below.
    """
    return [
        ("(1-q)", (1 - q) * (b.h * a.h_q1 + c.h * (a.h_q1 + b.h_q1))),
        ("(1-r)", (1 - r) * (a.h * (b.h_r1 + c.h_r1) + b.h * c.h_r1)),
        ("(1-q)^2", (1 - q) ** 2 * c.h * a.h_q1 * b.h_q1),
        ("(1-r)^2", (1 - r) ** 2 * a.h * b.h_r1 * c.h_r1),
        ("(1-q)(1-r)", (1 - q) * (1 - r) * b.h * a.h_q1 * c.h_r1),
    ]


def triadic_expansion(yi, yj, yl, params: EntropyParams) -> ExpansionReport:
    """Joint entropy of three independent subsystems, three ways."""
    params = _as_params(params)
    q, r = params.q, params.r
    pmfs = [as_pmf(p) for p in (yi, yj, yl)]
    a, b, c = (_Marginal(p, q, r) for p in pmfs)
    linear = a.h + b.h + c.h
    printed_terms = _triadic_printed_terms(a, b, c, q, r)
    derived_terms = _triadic_derived_terms(a, b, c, q, r)
    direct = entropy_joint_factored(FactoredSystem(tuple(pmfs)), params)
    breakdown = [("linear", linear)]
    breakdown += [(f"printed:{name}", v) for name, v in printed_terms]
    breakdown += [(f"derived:{name}", v) for name, v in derived_terms]
    return ExpansionReport(
        direct=direct,
        derived=linear + sum(v for _, v in derived_terms),
        printed=linear + sum(v for _, v in printed_terms),
        params=params,
        term_breakdown=breakdown,
    )


def audit_expansions(
    system: FactoredSystem, grid: Iterable[Sequence[float] | EntropyParams]
) -> list[ExpansionReport]:
    """Evaluate the matching expansion at every ``(q, r)`` grid point.

    Check ``report.printed_mismatch`` for points where the printed form
    departs from the direct value by more than ``TOL_DISCREPANCY``.
    """
    if system.arity == 2:
        expand = dyadic_expansion
    elif system.arity == 3:
        expand = triadic_expansion
    else:
        raise UnsupportedArity(f"closed-form expansions exist for 2 or 3 marginals, got {system.arity}")
    return [expand(*system.marginals, _as_params(point)) for point in grid]
