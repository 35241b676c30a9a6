"""Two-parameter generalized entropy and its special cases.

The functional is ``H_{q,r}(p) = sum_i (p_i**r - p_i**q) / (q - r)`` with the
scale constant fixed to one.  Tsallis entropy is the ``r = 1`` slice and the
Boltzmann-Gibbs-Shannon (BGS) entropy in nats is ``q = r = 1``.  When ``q`` and
``r`` are closer than ``EPS_PARAM`` the analytic limit
``-sum_i p_i**s ln p_i`` (``s`` the midpoint of ``q`` and ``r``) is used
instead of the difference quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import FactoredSystem, JointTable, Pmf, as_pmf
from .errors import BadBase, NonPositiveExponent

EPS_PARAM = 1e-9
# tables larger than this are summed with error-compensated accumulation
FSUM_THRESHOLD = 10**4


@dataclass(frozen=True)
class EntropyParams:
    q: float = 1.0
    r: float = 1.0

    def __post_init__(self):
        for name in ("q", "r"):
            value = float(getattr(self, name))
            if not value > 0 or not math.isfinite(value):
                raise NonPositiveExponent(f"{name} must be a finite positive number, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def k(self) -> float:
        return 1.0

    @property
    def is_limit(self) -> bool:
        return abs(self.q - self.r) <= EPS_PARAM

    @property
    def is_bgs(self) -> bool:
        return self.q == 1.0 and self.r == 1.0


def _as_params(params) -> EntropyParams:
    if isinstance(params, EntropyParams):
        return params
    q, r = params
    return EntropyParams(q, r)


def _accumulate(terms: np.ndarray) -> float:
    if terms.size > FSUM_THRESHOLD:
        return math.fsum(terms)
    return float(np.sum(terms))


def _logs(probs: np.ndarray) -> np.ndarray:
    # 0**s = 0 for s > 0, so zero cells never contribute
    nz = probs[probs > 0]
    return np.log(nz)


def _power_sum(probs: np.ndarray, s: float) -> float:
    if not s > 0:
        raise NonPositiveExponent(f"exponent must be positive, got {s!r}")
    return _accumulate(np.exp(s * _logs(probs)))


def _entropy(probs: np.ndarray, q: float, r: float) -> float:
    if not (q > 0 and r > 0):
        raise NonPositiveExponent(f"q and r must be positive, got q={q!r}, r={r!r}")
    logs = _logs(probs)
    if abs(q - r) <= EPS_PARAM:
        s = 0.5 * (q + r)
        # + 0.0 turns the -0.0 of a degenerate distribution into 0.0
        return _accumulate(-np.exp(s * logs) * logs) + 0.0
    # termwise differences keep the result exactly symmetric in (q, r)
    return _accumulate(np.exp(r * logs) - np.exp(q * logs)) / (q - r)


def power_sum(p: Pmf, s: float) -> float:
    """Return ``sum_i p_i**s`` for ``s > 0``; zero entries contribute nothing."""
    return _power_sum(as_pmf(p).probs, s)


def entropy_generalized(p: Pmf, params: EntropyParams) -> float:
    """Generalized ``(q, r)`` entropy of a single distribution.

    Symmetric in ``q`` and ``r`` and non-negative.  Values are in nat-compatible
    units; a degenerate distribution has zero entropy for every ``(q, r)``.

    >>> round(entropy_generalized([0.5, 0.5], EntropyParams(2, 0.5)), 7)
    0.6094757
    """
    params = _as_params(params)
    return _entropy(as_pmf(p).probs, params.q, params.r)


def entropy_tsallis(p: Pmf, q: float) -> float:
    """Tsallis entropy ``(1 - sum p**q) / (q - 1)``; Shannon (nats) at ``q = 1``."""
    return entropy_generalized(p, EntropyParams(q, 1.0))


def entropy_bgs(p: Pmf, log_base: float = math.e) -> float:
    """Shannon entropy in units set by ``log_base`` (2 for bits, e for nats)."""
    if not log_base > 1:
        raise BadBase(f"log_base must exceed 1, got {log_base!r}")
    probs = as_pmf(p).probs
    return _bgs(probs, log_base)


def _bgs(probs: np.ndarray, log_base: float) -> float:
    if log_base == 2:
        # log2 avoids the rounding of nats / ln 2 so that a fair coin is exactly 1 bit
        nz = probs[probs > 0]
        return _accumulate(-nz * np.log2(nz))
    return _entropy(probs, 1.0, 1.0) / math.log(log_base)


def entropy_joint_factored(system: FactoredSystem, params: EntropyParams) -> float:
    """Entropy of the product distribution without building it.

    Uses the telescoped form of ``(prod_m A_r[m] - prod_m A_q[m]) / (q - r)``::

        sum_m H_{q,r}(m) * prod_{n<m} A_q[n] * prod_{n>m} A_r[n]

    which costs ``O(sum N_m)``, has no cancellation between the two products,
    and passes continuously into the ``q = r`` limit.
    """
    params = _as_params(params)
    q, r = params.q, params.r
    marginals = [m.probs for m in system.marginals]
    a_q = [_power_sum(p, q) for p in marginals]
    a_r = [_power_sum(p, r) for p in marginals]
    total = 0.0
    for m, probs in enumerate(marginals):
        weight = math.prod(a_q[:m]) * math.prod(a_r[m + 1:])
        total += _entropy(probs, q, r) * weight
    return total


def entropy_joint_table(joint: JointTable, params: EntropyParams) -> float:
    """Brute-force entropy over every cell of an explicit joint table."""
    params = _as_params(params)
    return _entropy(joint.probs, params.q, params.r)
