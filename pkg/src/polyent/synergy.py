"""Polyadic synergy among statistically independent subsystems.

Synergy is the joint ``(q, r)`` entropy of a factored system minus the sum of
its marginal entropies.  Positive values mean the combined system carries more
entropy than its parts (synergy), negative values mean less (redundancy).
Both vanish identically for BGS entropies.

The direct difference is the canonical value everywhere.  Expanded forms are
kept as diagnostics in ``term_breakdown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .composition import (
    _dyadic_printed_terms,
    _Marginal,
    _triadic_derived_terms,
    _triadic_printed_terms,
)
from .distribution import FactoredSystem, as_pmf
from .entropy import EntropyParams, _as_params, entropy_generalized, entropy_joint_factored
from .errors import ArityTooSmall, NonPositiveExponent, QEqualsOne

TOL_ZERO = 1e-12

Classification = Literal["synergistic", "redundant", "additive"]
Method = Literal["direct", "expanded_printed", "expanded_derived", "tsallis_printed"]


def classify(value: float, tol: float = TOL_ZERO) -> Classification:
    if value > tol:
        return "synergistic"
    if value < -tol:
        return "redundant"
    return "additive"


@dataclass
class SynergyReport:
    value: float
    arity: int
    params: EntropyParams
    method: Method = "direct"
    term_breakdown: list[tuple[str, float]] = field(default_factory=list)

    @property
    def classification(self) -> Classification:
        return classify(self.value)

    def term(self, name: str) -> float:
        return dict(self.term_breakdown)[name]

    def to_dict(self) -> dict:
        return {
            "value": self.value + 0.0,
            "arity": self.arity,
            "q": self.params.q,
            "r": self.params.r,
            "classification": self.classification,
            "method": self.method,
            # + 0.0 drops the sign of zero terms like (1-q)(1-r) at r = 1
            "term_breakdown": [[name, v + 0.0] for name, v in self.term_breakdown],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SynergyReport":
        return cls(
            value=float(d["value"]),
            arity=int(d["arity"]),
            params=EntropyParams(d["q"], d["r"]),
            method=d["method"],
            term_breakdown=[(str(name), float(v)) for name, v in d["term_breakdown"]],
        )


def _direct(pmfs, params: EntropyParams) -> float:
    joint = entropy_joint_factored(FactoredSystem(tuple(pmfs)), params)
    return joint - sum(entropy_generalized(p, params) for p in pmfs)


def polyadic_synergy(system: FactoredSystem, params: EntropyParams) -> SynergyReport:
    """Joint entropy of ``system`` minus the sum of its marginal entropies."""
    params = _as_params(params)
    if system.arity < 2:
        raise ArityTooSmall(f"synergy needs at least two subsystems, got {system.arity}")
    value = _direct(system.marginals, params)
    return SynergyReport(value=value, arity=system.arity, params=params, method="direct")


def dyadic_synergy_expanded(yi, yj, params: EntropyParams) -> SynergyReport:
    """Two-subsystem synergy from the closed-form product terms.

    Exact for every ``q, r > 0``, so it agrees with :func:`polyadic_synergy`
    up to rounding.
    """
    params = _as_params(params)
    a = _Marginal(as_pmf(yi), params.q, params.r)
    b = _Marginal(as_pmf(yj), params.q, params.r)
    terms = _dyadic_printed_terms(a, b, params.q, params.r)
    return SynergyReport(
        value=sum(v for _, v in terms),
        arity=2,
        params=params,
        method="expanded_printed",
        term_breakdown=terms,
    )


def _tsallis_q(q: float) -> float:
    q = float(q)
    if not q > 0:
        raise NonPositiveExponent(f"q must be positive, got {q!r}")
    if q == 1.0:
        raise QEqualsOne("the Tsallis forms need q != 1; use polyadic_synergy for q = r = 1")
    return q


def tsallis_dyadic_synergy(yi, yj, q: float) -> SynergyReport:
    """``(1 - q) H_q(yi) H_q(yj)`` for Tsallis entropy ``H_q``.

    Positive for ``q < 1`` and negative for ``q > 1`` whenever both marginals
    are non-degenerate.
    """
    q = _tsallis_q(q)
    hi = entropy_generalized(yi, (q, 1.0))
    hj = entropy_generalized(yj, (q, 1.0))
    value = (1 - q) * hi * hj
    return SynergyReport(
        value=value,
        arity=2,
        params=EntropyParams(q, 1.0),
        method="tsallis_printed",
        term_breakdown=[("(1-q)", value)],
    )


def triadic_synergy_expanded(yi, yj, yl, params: EntropyParams) -> SynergyReport:
    """Three-subsystem synergy; returns the direct value.

    ``term_breakdown`` carries the printed and derived group values together
    with their totals (``printed``, ``derived``) for comparison.
    """
    params = _as_params(params)
    q, r = params.q, params.r
    pmfs = [as_pmf(p) for p in (yi, yj, yl)]
    a, b, c = (_Marginal(p, q, r) for p in pmfs)
    printed = _triadic_printed_terms(a, b, c, q, r)
    derived = _triadic_derived_terms(a, b, c, q, r)
    breakdown = [(f"printed:{name}", v) for name, v in printed]
    breakdown += [(f"derived:{name}", v) for name, v in derived]
    breakdown += [
        ("printed", sum(v for _, v in printed)),
        ("derived", sum(v for _, v in derived)),
    ]
    return SynergyReport(
        value=_direct(pmfs, params),
        arity=3,
        params=params,
        method="direct",
        term_breakdown=breakdown,
    )


def tsallis_triadic_derived(hi: float, hj: float, hl: float, q: float) -> float:
    """Iterated pseudo-additivity: ``(1-q)(HiHj + HiHl + HjHl) + (1-q)^2 HiHjHl``."""
    return (1 - q) * (hi * hj + hi * hl + hj * hl) + (1 - q) ** 2 * hi * hj * hl


def tsallis_triadic_printed(hi: float, hj: float, hl: float, h11_j: float, q: float) -> float:
    """Published one-parameter triadic form, transcribed literally."""
    return (1 - q) * (hi + h11_j + (hi + hj) * hl) + (1 - q) ** 2 * hi * hj * hl


def tsallis_triadic_synergy(yi, yj, yl, q: float) -> SynergyReport:
    """Tsallis synergy of three independent subsystems; returns the direct value."""
    q = _tsallis_q(q)
    params = EntropyParams(q, 1.0)
    pmfs = [as_pmf(p) for p in (yi, yj, yl)]
    hi, hj, hl = (entropy_generalized(p, params) for p in pmfs)
    h11_j = entropy_generalized(pmfs[1], (1.0, 1.0))
    return SynergyReport(
        value=_direct(pmfs, params),
        arity=3,
        params=params,
        method="direct",
        term_breakdown=[
            ("derived", tsallis_triadic_derived(hi, hj, hl, q)),
            ("printed", tsallis_triadic_printed(hi, hj, hl, h11_j, q)),
        ],
    )
