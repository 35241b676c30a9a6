"""Shannon-based dependence measures on explicit joint tables."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Literal

from .distribution import JointTable, marginalize
from .entropy import _bgs
from .errors import BadBase, WrongArity

MAX_AXES = 12

Measure = Literal["mutual_information", "multi_information", "interaction_information"]


@dataclass(frozen=True)
class InfoResult:
    value: float
    measure: Measure
    log_base: float

    def to_dict(self) -> dict:
        return {"value": self.value, "measure": self.measure, "log_base": self.log_base}


def _check_base(log_base: float) -> None:
    if not log_base > 1:
        raise BadBase(f"log_base must exceed 1, got {log_base!r}")


def _subset_entropy(joint: JointTable, axes, log_base: float) -> float:
    if len(axes) == joint.arity:
        return _bgs(joint.probs, log_base)
    return _bgs(marginalize(joint, axes).probs, log_base)


def mutual_information(joint: JointTable, log_base: float = math.e) -> InfoResult:
    """``H(X) + H(Y) - H(X, Y)`` for a two-axis table."""
    _check_base(log_base)
    if joint.arity != 2:
        raise WrongArity(f"mutual information needs a 2-axis table, got {joint.arity}")
    value = (
        _subset_entropy(joint, [0], log_base)
        + _subset_entropy(joint, [1], log_base)
        - _subset_entropy(joint, [0, 1], log_base)
    )
    return InfoResult(value, "mutual_information", log_base)


def multi_information(joint: JointTable, log_base: float = math.e) -> InfoResult:
    """Total correlation: sum of marginal entropies minus the joint entropy."""
    _check_base(log_base)
    if joint.arity < 2:
        raise WrongArity(f"multi-information needs at least 2 axes, got {joint.arity}")
    marginal_sum = sum(_subset_entropy(joint, [ax], log_base) for ax in range(joint.arity))
    value = marginal_sum - _subset_entropy(joint, list(range(joint.arity)), log_base)
    return InfoResult(value, "multi_information", log_base)


def interaction_information(joint: JointTable, log_base: float = math.e) -> InfoResult:
    """Inclusion-exclusion over all non-empty axis subsets.

    ``I = -sum_{T} (-1)**(M - |T|) H(T)``.  With this sign convention the
    two-axis case is the mutual information and a three-bit XOR gives +1 bit
    (synergy).
    """
    _check_base(log_base)
    m = joint.arity
    if not 2 <= m <= MAX_AXES:
        raise WrongArity(f"interaction information supports 2..{MAX_AXES} axes, got {m}")
    value = 0.0
    for size in range(1, m + 1):
        sign = -((-1) ** (m - size))
        for axes in itertools.combinations(range(m), size):
            value += sign * _subset_entropy(joint, list(axes), log_base)
    return InfoResult(value, "interaction_information", log_base)
