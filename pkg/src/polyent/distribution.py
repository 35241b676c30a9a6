"""Discrete distributions: single marginals, factored product systems and
explicit joint tables.

All containers hold read-only float64 arrays and are never renormalized;
invalid input raises instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadAxis,
    EmptyDistribution,
    NegativeProbability,
    NotNormalized,
    ShapeMismatch,
    TooLarge,
)

TOL_SUM = 1e-9
TOL_INTERNAL = 1e-12
DEFAULT_MAX_CELLS = 10**7


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float).ravel()
    arr.flags.writeable = False
    return arr


def _check_probs(arr: np.ndarray, tol: float, expected_total: float = 1.0) -> None:
    if arr.size == 0:
        raise EmptyDistribution("distribution has no entries")
    if not np.all(np.isfinite(arr)):
        raise NotNormalized("distribution contains non-finite entries")
    if np.any(arr < 0):
        idx = int(np.argmax(arr < 0))
        raise NegativeProbability(f"entry {idx} is negative ({arr[idx]!r})")
    total = math.fsum(arr)
    if abs(total - expected_total) > tol:
        raise NotNormalized(f"entries sum to {total!r}, not {expected_total!r}")


@dataclass(frozen=True, eq=False)
class Pmf:
    """Probability mass function over ``N`` microstates."""

    probs: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.probs)
        _check_probs(arr, TOL_SUM)
        object.__setattr__(self, "probs", arr)

    @property
    def n(self) -> int:
        return self.probs.size

    def __len__(self) -> int:
        return self.probs.size

    def tolist(self) -> list[float]:
        return self.probs.tolist()

    def __repr__(self) -> str:
        return f"Pmf({self.tolist()!r})"


def validate_pmf(probs: Sequence[float]) -> Pmf:
    """Validate ``probs`` and wrap it as a :class:`Pmf` (no renormalization)."""
    return Pmf(probs)


def as_pmf(p) -> Pmf:
    return p if isinstance(p, Pmf) else Pmf(p)


@dataclass(frozen=True, eq=False)
class FactoredSystem:
    """Ordered marginals whose joint is, by construction, their product."""

    marginals: tuple[Pmf, ...]

    def __post_init__(self):
        marginals = tuple(as_pmf(m) for m in self.marginals)
        if not marginals:
            raise EmptyDistribution("a factored system needs at least one marginal")
        object.__setattr__(self, "marginals", marginals)

    @classmethod
    def of(cls, *marginals) -> "FactoredSystem":
        return cls(tuple(marginals))

    @property
    def arity(self) -> int:
        return len(self.marginals)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(m.n for m in self.marginals)

    @property
    def cells(self) -> int:
        return math.prod(self.shape)

    def __repr__(self) -> str:
        return f"FactoredSystem({[m.tolist() for m in self.marginals]!r})"


@dataclass(frozen=True, eq=False)
class JointTable:
    """Explicit M-dimensional probability table stored flat in row-major order."""

    shape: tuple[int, ...]
    probs: np.ndarray

    def __post_init__(self):
        shape = tuple(int(s) for s in self.shape)
        if not shape or any(s < 1 for s in shape):
            raise ShapeMismatch(f"shape must be a non-empty list of positive integers, got {shape}")
        arr = _frozen(self.probs)
        if arr.size != math.prod(shape):
            raise ShapeMismatch(f"{arr.size} probabilities for shape {shape}")
        _check_probs(arr, TOL_SUM)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "probs", arr)

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "JointTable":
        table = object.__new__(cls)
        object.__setattr__(table, "shape", tuple(arr.shape))
        object.__setattr__(table, "probs", _frozen(arr))
        return table

    @classmethod
    def from_array(cls, arr) -> "JointTable":
        arr = np.asarray(arr, dtype=float)
        return cls(arr.shape, arr.ravel())

    @property
    def arity(self) -> int:
        return len(self.shape)

    @property
    def array(self) -> np.ndarray:
        return self.probs.reshape(self.shape)

    def flat_pmf(self) -> Pmf:
        return Pmf(self.probs)


def _internal_table(arr: np.ndarray, expected_total: float) -> JointTable:
    # Tables built from already-validated inputs: hold them to the tighter
    # tolerance relative to the mass they were built from.
    _check_probs(arr.ravel(), TOL_INTERNAL, expected_total)
    return JointTable._trusted(arr)


def materialize(system: FactoredSystem, max_cells: int = DEFAULT_MAX_CELLS) -> JointTable:
    """Expand a factored system into its explicit product table."""
    if system.cells > max_cells:
        raise TooLarge(f"joint has {system.cells} cells, cap is {max_cells}")
    arr = np.ones(())
    for m in system.marginals:
        arr = np.multiply.outer(arr, m.probs)
    expected = math.prod(math.fsum(m.probs) for m in system.marginals)
    return _internal_table(arr, expected)


def marginalize(joint: JointTable, keep: Iterable[int]) -> JointTable:
    """Sum out every axis not listed in ``keep``; kept axes retain their order."""
    keep = sorted(set(keep))
    if not keep:
        raise BadAxis("keep must name at least one axis")
    for ax in keep:
        if not 0 <= ax < joint.arity:
            raise BadAxis(f"axis {ax} out of range for a {joint.arity}-axis table")
    drop = tuple(ax for ax in range(joint.arity) if ax not in keep)
    arr = joint.array.sum(axis=drop) if drop else joint.array.copy()
    return _internal_table(np.asarray(arr), math.fsum(joint.probs))


def independence_defect(joint: JointTable) -> float:
    """Largest cellwise gap between ``joint`` and the product of its own marginals."""
    arr = joint.array
    product = np.ones(())
    for ax in range(joint.arity):
        other = tuple(a for a in range(joint.arity) if a != ax)
        product = np.multiply.outer(product, arr.sum(axis=other))
    return float(np.max(np.abs(arr - product)))


def factor_joint(joint: JointTable) -> FactoredSystem:
    """Marginals of ``joint`` as a factored system (exact only if the joint is independent)."""
    return FactoredSystem(tuple(marginalize(joint, [ax]).probs for ax in range(joint.arity)))
