"""Base kernels on tuple elements.

Two concrete kinds cover everything downstream needs: a Gaussian RBF kernel
on real vectors, and a lookup table on a finite label set. A table stores
one triangle only, so symmetry of ``eval_base`` is structural. The
degenerate single-element base set is the table ``{("1","1"): 1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import ConfigError, InputError


@dataclass(frozen=True)
class Point:
    """A point of R^d with finite coordinates."""

    coords: tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        if not coords:
            raise InputError("a point needs at least one coordinate")
        if not all(math.isfinite(c) for c in coords):
            raise InputError(f"non-finite coordinate in {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)


Element = Union[Point, str]


def as_point(value) -> Point:
    if isinstance(value, Point):
        return value
    if isinstance(value, (list, tuple, np.ndarray)):
        return Point(tuple(value))
    raise InputError(f"cannot interpret {value!r} as a point")


def squared_distance(u: Point, v: Point) -> float:
    """Sum of squared coordinate differences, accumulated in index order."""
    if u.dim != v.dim:
        raise InputError(f"dimension mismatch: {u.dim} vs {v.dim}")
    total = 0.0
    for a, b in zip(u.coords, v.coords):
        d = a - b
        total += d * d
    return total


@dataclass(frozen=True)
class RBFKernel:
    """Gaussian kernel exp(-gamma * ||u - v||^2); values lie in (0, 1]."""

    gamma: float

    def __post_init__(self):
        gamma = float(self.gamma)
        if not math.isfinite(gamma) or gamma <= 0.0:
            raise ConfigError(f"gamma must be a positive finite real, got {gamma!r}")
        object.__setattr__(self, "gamma", gamma)


class TableKernel:
    """Kernel given by an explicit symmetric table over a finite label set.

    The constructor checks shape, finiteness and exact symmetry, then keeps
    only the upper triangle; both argument orders read the same stored cell.
    Value-domain problems (negative entries) are representable on purpose so
    that :func:`validate_base` can flag them.
    """

    __slots__ = ("labels", "_index", "_tri")

    def __init__(self, labels: Sequence[str], values) -> None:
        labels = tuple(str(l) for l in labels)
        if not labels:
            raise ConfigError("table kernel needs at least one label")
        if len(set(labels)) != len(labels):
            raise ConfigError("table labels must be unique")
        arr = np.asarray(values, dtype=float)
        n = len(labels)
        if arr.shape != (n, n):
            raise ConfigError(f"table shape {arr.shape} does not match {n} labels")
        if not np.all(np.isfinite(arr)):
            raise ConfigError("table contains non-finite entries")
        if not np.array_equal(arr, arr.T):
            raise ConfigError("table is not exactly symmetric")
        self.labels = labels
        self._index = {label: i for i, label in enumerate(labels)}
        self._tri = tuple(tuple(float(x) for x in arr[i, i:]) for i in range(n))

    def value(self, a: str, b: str) -> float:
        try:
            i, j = self._index[a], self._index[b]
        except KeyError as exc:
            raise InputError(f"unknown table label {exc.args[0]!r}") from None
        if i > j:
            i, j = j, i
        return self._tri[i][j - i]

    def matrix(self) -> np.ndarray:
        n = len(self.labels)
        arr = np.zeros((n, n))
        for i in range(n):
            for j in range(i, n):
                arr[i, j] = arr[j, i] = self._tri[i][j - i]
        return arr

    def __eq__(self, other):
        return (
            isinstance(other, TableKernel)
            and self.labels == other.labels
            and self._tri == other._tri
        )

    def __repr__(self):
        return f"TableKernel(labels={self.labels!r})"


BaseKernel = Union[RBFKernel, TableKernel]

SINGLETON_LABEL = "1"


def constant_one() -> TableKernel:
    """The base kernel on a one-element set, identically 1."""
    return TableKernel((SINGLETON_LABEL,), [[1.0]])


def eval_base(spec: BaseKernel, u, v) -> float:
    """Evaluate the base kernel; symmetric in its arguments by construction."""
    if isinstance(spec, RBFKernel):
        return math.exp(-spec.gamma * squared_distance(as_point(u), as_point(v)))
    if isinstance(spec, TableKernel):
        if not isinstance(u, str) or not isinstance(v, str):
            raise InputError("table kernels take label arguments")
        return spec.value(u, v)
    raise InputError(f"unknown base kernel spec {spec!r}")


@dataclass(frozen=True)
class BaseValidation:
    """Findings from checking a base kernel on a sample of elements."""

    symmetry_violations: tuple[tuple[int, int, float, float], ...]
    negative_values: tuple[tuple[int, int, float], ...]
    min_eigenvalue: float | None

    @property
    def passed(self) -> bool:
        return not self.symmetry_violations and not self.negative_values


def validate_base(spec: BaseKernel, sample: Sequence, include_spectrum: bool = True) -> BaseValidation:
    """Check symmetry and nonnegativity of the base kernel on a sample.

    The minimum eigenvalue of the base Gram matrix is reported when
    ``include_spectrum`` is set, as diagnostics only; nothing is gated on it.
    """
    if not sample:
        raise InputError("validation sample must be non-empty")
    n = len(sample)
    gram = np.zeros((n, n))
    symmetry: list[tuple[int, int, float, float]] = []
    negatives: list[tuple[int, int, float]] = []
    for i in range(n):
        for j in range(i, n):
            kij = eval_base(spec, sample[i], sample[j])
            kji = eval_base(spec, sample[j], sample[i])
            if kij != kji:
                symmetry.append((i, j, kij, kji))
            if kij < 0.0:
                negatives.append((i, j, kij))
            gram[i, j] = gram[j, i] = kij
    min_eig = None
    if include_spectrum:
        from .spectral import jacobi_eigen

        min_eig = jacobi_eigen(gram).min_eigenvalue
    return BaseValidation(tuple(symmetry), tuple(negatives), min_eig)


def parse_base_kernel(obj) -> BaseKernel:
    """Parse ``{"type": "rbf"|"constant_one"|"table", ...}``."""
    if not isinstance(obj, dict):
        raise InputError("base kernel spec must be a JSON object")
    kind = obj.get("type")
    if kind == "rbf":
        if "gamma" not in obj:
            raise InputError('rbf base kernel needs a "gamma" field')
        return RBFKernel(obj["gamma"])
    if kind == "constant_one":
        return constant_one()
    if kind == "table":
        if "labels" not in obj or "values" not in obj:
            raise InputError('table base kernel needs "labels" and "values" fields')
        try:
            return TableKernel(obj["labels"], obj["values"])
        except ConfigError as exc:
            raise InputError(str(exc)) from exc
    raise InputError(f"unknown base kernel type {kind!r}")


def base_kernel_to_json_obj(spec: BaseKernel) -> dict:
    if isinstance(spec, RBFKernel):
        return {"type": "rbf", "gamma": spec.gamma}
    if isinstance(spec, TableKernel):
        if spec == constant_one():
            return {"type": "constant_one"}
        return {
            "type": "table",
            "labels": list(spec.labels),
            "values": [list(map(float, row)) for row in spec.matrix()],
        }
    raise InputError(f"unknown base kernel spec {spec!r}")
