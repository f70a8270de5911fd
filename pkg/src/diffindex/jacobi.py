"""Jacobi number of an order matrix.

``J(A) = max over injections tau of sum_i A[i][tau(i)]``. Small instances are
enumerated directly; larger ones go through a Hungarian (shortest augmenting
path) solver.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from .diffpoly import DiffSystem

ENUMERATION_LIMIT = 100_000


def _check(A: Sequence[Sequence[int]]) -> tuple[int, int]:
    r = len(A)
    if r == 0:
        raise ValueError("order matrix has no rows")
    n = len(A[0])
    if any(len(row) != n for row in A):
        raise ValueError("order matrix rows differ in length")
    if r > n:
        raise ValueError(f"need r <= n, got r={r}, n={n}")
    return r, n


def _hungarian_max(A: Sequence[Sequence[int]], rows: Sequence[int], cols: Sequence[int]) -> int:
    """Maximum assignment weight of the submatrix ``A[rows][cols]`` (``len(rows) <= len(cols)``)."""
    r, n = len(rows), len(cols)
    if r == 0:
        return 0
    INF = math.inf
    # potentials on 1-based rows/cols; cost = -weight
    u = [0] * (r + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[col] = row
    way = [0] * (n + 1)
    for i in range(1, r + 1):
        match[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = INF
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = -A[rows[i0 - 1]][cols[j - 1]] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    return sum(A[rows[match[j] - 1]][cols[j - 1]] for j in range(1, n + 1) if match[j])


def _by_matching(A: Sequence[Sequence[int]], r: int, n: int) -> tuple[int, tuple[int, ...]]:
    best = _hungarian_max(A, range(r), range(n))
    # lexicographically smallest optimal injection, one row at a time
    tau: list[int] = []
    free = list(range(n))
    acc = 0
    for i in range(r):
        for c in free:
            rest = [x for x in free if x != c]
            if acc + A[i][c] + _hungarian_max(A, range(i + 1, r), rest) == best:
                tau.append(c)
                acc += A[i][c]
                free = rest
                break
    return best, tuple(tau)


def _by_enumeration(A: Sequence[Sequence[int]], r: int, n: int) -> tuple[int, tuple[int, ...]]:
    best = -1
    arg: tuple[int, ...] = ()
    for tau in itertools.permutations(range(n), r):
        s = sum(A[i][tau[i]] for i in range(r))
        if s > best:
            best, arg = s, tau
    return best, arg


def jacobi_number(A: Sequence[Sequence[int]], method: str = "auto") -> tuple[int, tuple[int, ...]]:
    """Return ``(J(A), tau)`` with ``tau`` the lexicographically smallest maximizer (0-based)."""
    r, n = _check(A)
    if method == "auto":
        method = "enumerate" if r <= 8 and math.perm(n, r) <= ENUMERATION_LIMIT else "matching"
    if method == "enumerate":
        return _by_enumeration(A, r, n)
    if method == "matching":
        return _by_matching(A, r, n)
    raise ValueError(f"unknown method {method!r}")


def jacobi_bound(system: DiffSystem) -> int:
    """``J(E0) + e - min(E0)``, the minimum taken over every entry of ``E0``."""
    J, _ = jacobi_number(system.E0)
    return J + system.e - system.min_order_entry()
