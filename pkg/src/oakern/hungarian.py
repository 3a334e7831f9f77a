"""Exact maximum-total-profit assignment for rectangular matrices.

The shorter side of the matrix is injected into the longer one so that the
returned pairing always has min(m, n) pairs. Rectangular inputs are padded
with zero-profit rows to a square and solved by the O(n^3) shortest
augmenting path form of the Hungarian method on transformed costs
(max entry minus profit); zero padding is safe because profits are
required to be nonnegative. Among equally good pairings the
lexicographically smallest mapping of the shorter side is returned, which
keeps every downstream report reproducible.

``brute_force_assignment`` is the independent oracle: it enumerates every
injection and must stay free of any code shared with the solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InputError

_ORACLE_MAX_SIDE = 8
_ORACLE_CHUNK = 200_000


@dataclass(frozen=True)
class Assignment:
    """An optimal pairing.

    ``pairs`` maps indices of the shorter matrix side to indices of the
    longer one, listed in increasing domain order; ``side`` records which
    side that domain is ("rows" when m <= n, "columns" otherwise).
    ``value`` is the sum of the selected profit entries, accumulated in
    domain index order.
    """

    pairs: tuple[tuple[int, int], ...]
    value: float
    side: str

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


def _validate_profits(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2:
        raise InputError(f"profit matrix must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError("profit matrix must have at least one row and one column")
    if not np.all(np.isfinite(arr)):
        raise InputError("profit matrix contains non-finite entries")
    if np.any(arr < 0.0):
        raise InputError("profit matrix contains negative entries")
    return arr


def _selection_value(wide: np.ndarray, mapping) -> float:
    total = 0.0
    for i, j in enumerate(mapping):
        total += wide[i, j]
    return total


def _lap_min_square(cost: np.ndarray):
    """Shortest-augmenting-path assignment on a square cost matrix.

    Returns ``(col_of_row, u, v)`` where the potentials satisfy
    u[i] + v[j] <= cost[i, j] with equality on assigned edges, so the tight
    edges characterize every optimal assignment.
    """
    n = cost.shape[0]
    # 1-based working arrays; index 0 is the virtual start column.
    a = np.zeros((n + 1, n + 1))
    a[1:, 1:] = cost
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.intp)  # p[j] = row currently matched to column j
    way = np.zeros(n + 1, dtype=np.intp)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            cur = a[i0] - u[i0] - v
            free = ~used
            better = free & (cur < minv)
            minv[better] = cur[better]
            way[better] = j0
            free_idx = np.flatnonzero(free)
            j1 = int(free_idx[np.argmin(minv[free_idx])])
            delta = minv[j1]
            u[p[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0 != 0:
            j1 = int(way[j0])
            p[j0] = p[j1]
            j0 = j1
    col_of_row = np.empty(n, dtype=np.intp)
    for j in range(1, n + 1):
        col_of_row[p[j] - 1] = j - 1
    return col_of_row, u[1:], v[1:]


def _augment(row, tight, row_to_col, col_to_row, fixed_col, visited) -> bool:
    """Kuhn-style rematch of ``row`` through unfixed tight columns."""
    for j in np.flatnonzero(tight[row]):
        if fixed_col[j] or visited[j]:
            continue
        visited[j] = True
        owner = col_to_row[j]
        if owner < 0 or _augment(owner, tight, row_to_col, col_to_row, fixed_col, visited):
            row_to_col[row] = j
            col_to_row[j] = row
            return True
    return False


def _lex_smallest_mapping(tight: np.ndarray, init_col_of_row: np.ndarray, k: int) -> np.ndarray:
    """Lexicographically smallest mapping of rows 0..k-1 over tight edges.

    ``tight`` must contain a perfect matching (the solver's own solution);
    rows >= k are padding whose placement is irrelevant to the ordering.
    """
    n = tight.shape[0]
    row_to_col = init_col_of_row.astype(np.intp).copy()
    col_to_row = np.empty(n, dtype=np.intp)
    col_to_row[row_to_col] = np.arange(n, dtype=np.intp)
    fixed_col = np.zeros(n, dtype=bool)
    for i in range(k):
        chosen = -1
        for j in map(int, np.flatnonzero(tight[i])):
            if fixed_col[j]:
                continue
            if row_to_col[i] == j:
                chosen = j
                break
            # Steer row i onto column j and re-home the displaced row; the
            # matching is perfect here, so column j always has an owner.
            old_col = int(row_to_col[i])
            owner = int(col_to_row[j])
            row_to_col[i] = j
            col_to_row[j] = i
            col_to_row[old_col] = -1
            row_to_col[owner] = -1
            visited = np.zeros(n, dtype=bool)
            visited[j] = True
            if _augment(owner, tight, row_to_col, col_to_row, fixed_col, visited):
                chosen = j
                break
            # revert
            row_to_col[owner] = j
            row_to_col[i] = old_col
            col_to_row[j] = owner
            col_to_row[old_col] = i
        if chosen < 0:  # unreachable: the incumbent column is always available
            raise AssertionError("tight graph lost its perfect matching")
        fixed_col[chosen] = True
    return row_to_col[:k]


def solve_max_assignment(profits) -> Assignment:
    """Maximum-profit injective assignment of the shorter side into the longer.

    The optimal value is exact up to float accumulation; among optimal
    pairings the lexicographically smallest mapping is selected by a
    canonicalization pass over the tight-edge graph of the solved problem.
    """
    P = _validate_profits(profits)
    m, n = P.shape
    transposed = m > n
    wide = P.T if transposed else P
    k, width = wide.shape

    square = np.zeros((width, width))
    square[:k] = wide
    top = float(wide.max())
    cost = top - square
    col_of_row, u, v = _lap_min_square(cost)

    # Complementary slackness: optimal assignments live on tight edges.
    slack = cost - u[:, None] - v[None, :]
    eps = 1e-11 * max(1.0, top)
    tight = slack <= eps
    mapping = _lex_smallest_mapping(tight, col_of_row, k)

    value = _selection_value(wide, mapping)
    base_value = _selection_value(wide, col_of_row[:k])
    if value < base_value - 1e-13 * max(1.0, top):
        # Degenerate near-tie slipped into the tight graph; keep the exact
        # optimum rather than the lexicographic preference.
        mapping = col_of_row[:k].copy()
        value = base_value

    pairs = tuple((i, int(j)) for i, j in enumerate(mapping))
    return Assignment(pairs=pairs, value=float(value), side="columns" if transposed else "rows")


def brute_force_assignment(profits) -> Assignment:
    """Exhaustive oracle over every injection of the shorter side.

    Runtime grows factorially; the shorter side is capped at
    ``_ORACLE_MAX_SIDE``. Ties break to the lexicographically smallest
    mapping, matching :func:`solve_max_assignment`.
    """
    P = _validate_profits(profits)
    m, n = P.shape
    transposed = m > n
    wide = P.T if transposed else P
    k, width = wide.shape
    if k > _ORACLE_MAX_SIDE:
        raise InputError(
            f"oracle limited to min(m, n) <= {_ORACLE_MAX_SIDE}, got {k}"
        )

    rows = np.arange(k)
    best_value = -np.inf
    best_mapping: tuple[int, ...] | None = None
    perms = itertools.permutations(range(width), k)
    while True:
        chunk = np.array(list(itertools.islice(perms, _ORACLE_CHUNK)), dtype=np.intp)
        if chunk.size == 0:
            break
        chunk = chunk.reshape(-1, k)
        values = wide[rows[None, :], chunk].sum(axis=1)
        pos = int(np.argmax(values))  # first maximum = lexicographically smallest
        if values[pos] > best_value:
            best_value = float(values[pos])
            best_mapping = tuple(int(j) for j in chunk[pos])
    assert best_mapping is not None
    value = _selection_value(wide, best_mapping)
    pairs = tuple((i, j) for i, j in enumerate(best_mapping))
    return Assignment(pairs=pairs, value=float(value), side="columns" if transposed else "rows")
