"""Block pseudo-Jacobians ``J_{k,i}`` and their rank modulo a prolongation ideal."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .diffpoly import DiffPolynomial, DiffSystem, DiffVariable, partial, transform
from .groebner import GroebnerBasis, Poly, _addmul, poly_mul, prolonged_basis

Matrix = list[list[DiffPolynomial]]


class ZeroDivisorError(ArithmeticError):
    """A pivot annihilated a nonzero entry: the prolongation ideal is not prime."""


@dataclass(frozen=True)
class JacobianBlock:
    """``dF^(p) / dY^(q)`` as an ``r x n`` matrix."""

    p: int
    q: int
    entries: tuple[tuple[DiffPolynomial, ...], ...]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)


def jacobian_block(system: DiffSystem, p: int, q: int) -> JacobianBlock:
    """Build ``dF^(p)/dY^(q)`` as ``(dF/dY^(q-p))^(p)``; zero unless ``0 <= q-p <= e``."""
    shift = q - p
    zero = DiffPolynomial()
    if shift < 0 or shift > system.e:
        rows = tuple(tuple(zero for _ in range(system.n)) for _ in range(system.r))
    else:
        rows = tuple(
            tuple(transform(partial(f, DiffVariable(j, shift)), p) for j in range(1, system.n + 1))
            for f in system.equations
        )
    return JacobianBlock(p, q, rows)


@dataclass(frozen=True)
class PseudoJacobian:
    """``J_{k,i}``: ``k x k`` lower block-triangular grid, ``kr x kn`` overall.

    Block ``(a, b)`` (0-based) is ``dF^(i-e+1+a) / dY^(i+1+b)``.
    """

    system: DiffSystem
    k: int
    i: int
    blocks: tuple[tuple[JacobianBlock, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.k * self.system.r, self.k * self.system.n)

    def matrix(self) -> Matrix:
        r, n = self.system.r, self.system.n
        out: Matrix = []
        for a in range(self.k):
            for l in range(r):
                row: list[DiffPolynomial] = []
                for b in range(self.k):
                    row.extend(self.blocks[a][b].entries[l])
                out.append(row)
        return out

    def max_order(self) -> int:
        return self.i + self.k

    def null_rows(self) -> int:
        return sum(1 for row in self.matrix() if all(x.is_zero() for x in row))


def build(system: DiffSystem, k: int, i: int | None = None) -> PseudoJacobian:
    """``J_{k,i}``; ``i`` defaults to ``e - 1``."""
    if i is None:
        i = system.e - 1
    if k < 1:
        raise ValueError("k must be >= 1")
    if i < system.e - 1:
        raise ValueError(f"i must be >= e-1 = {system.e - 1}, got {i}")
    e = system.e
    blocks = tuple(
        tuple(jacobian_block(system, i - e + 1 + a, i + 1 + b) for b in range(k)) for a in range(k)
    )
    return PseudoJacobian(system, k, i, blocks)


def full_jacobian(system: DiffSystem, k: int) -> Matrix:
    """Jacobian of ``f^[k-1]`` with respect to ``Y^[k-1+e]`` (``kr x (k+e)n``)."""
    variables = system.variables(k - 1 + system.e)
    return [[partial(g, v) for v in variables] for g in system.prolongation(k)]


@dataclass(frozen=True)
class MuValue:
    k: int
    rank: int
    mu: int
    pivots: tuple[tuple[int, int], ...] = ()


def _is_const(p: Poly) -> bool:
    return len(p) == 1 and not any(next(iter(p)))


def _degree(p: Poly) -> int:
    return max(sum(a) for a in p)


def matrix_rank_mod(rows: Sequence[Sequence[DiffPolynomial]], G: GroebnerBasis) -> tuple[int, list[tuple[int, int]]]:
    """Rank of ``rows`` over ``Frac(A / (G))`` by fraction-free elimination.

    An entry is zero iff its normal form modulo ``G`` vanishes. Assumes the
    ideal is prime; raises :class:`ZeroDivisorError` on evidence otherwise.
    """
    ring = G.ring
    nf = G.normal_form_raw
    mat: list[list[Poly]] = [[nf(ring.from_diff(x)) for x in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    live_rows = set(range(nrows))
    live_cols = set(range(ncols))
    pivots: list[tuple[int, int]] = []
    while True:
        best = None
        best_key = None
        for rr in live_rows:
            for cc in live_cols:
                x = mat[rr][cc]
                if not x:
                    continue
                key = (0 if _is_const(x) else 1, _degree(x), len(x), rr, cc)
                if best_key is None or key < best_key:
                    best, best_key = (rr, cc), key
        if best is None:
            break
        pr, pc = best
        piv = mat[pr][pc]
        const_pivot = _is_const(piv)
        live_rows.discard(pr)
        live_cols.discard(pc)
        pivots.append(best)
        for rr in live_rows:
            a = mat[rr][pc]
            if not a:
                continue
            neg_a = {m: -c for m, c in a.items()}
            row = mat[rr]
            prow = mat[pr]
            for cc in live_cols:
                x = row[cc]
                if const_pivot:
                    # divide through by the constant pivot instead of scaling the row
                    scaled = dict(x)
                    inv = 1 / next(iter(piv.values()))
                    if prow[cc]:
                        for m, c in neg_a.items():
                            _addmul(scaled, c * inv, m, prow[cc])
                    row[cc] = nf(scaled) if prow[cc] else scaled
                    continue
                px = nf(poly_mul(piv, x)) if x else {}
                if x and not px:
                    raise ZeroDivisorError(
                        f"pivot {ring.to_diff(piv)} annihilates {ring.to_diff(x)} modulo the ideal"
                    )
                if prow[cc]:
                    px = dict(px)
                    for m, c in neg_a.items():
                        _addmul(px, c, m, prow[cc])
                    px = nf(px)
                row[cc] = px
            row[pc] = {}
    return len(pivots), pivots


def default_zero_test(system: DiffSystem, J: PseudoJacobian, extra: int = 0) -> GroebnerBasis:
    """Basis of ``Delta_{i-e+1+k+extra}``, widened to contain every entry of ``J``."""
    level = J.i - system.e + 1 + J.k + extra
    return prolonged_basis(system, level, min_order=J.max_order())


def rank_mod(
    J: PseudoJacobian,
    Z: GroebnerBasis | Callable[[PseudoJacobian], GroebnerBasis] | None = None,
) -> MuValue:
    """Rank of ``J`` over the residue field and ``mu = kr - rank``.

    ``Z`` is the zero-test ideal; by default ``Delta_{i-e+1+k}``.
    """
    if Z is None:
        G = default_zero_test(J.system, J)
    elif isinstance(Z, GroebnerBasis):
        G = Z
    else:
        G = Z(J)
    rank, pivots = matrix_rank_mod(J.matrix(), G)
    rows = J.k * J.system.r
    return MuValue(J.k, rank, rows - rank, tuple(pivots))


def reduced_matrix(J: PseudoJacobian, G: GroebnerBasis | None = None) -> Matrix:
    """Entries of ``J`` replaced by their normal forms (for display)."""
    G = G or default_zero_test(J.system, J)
    return [[G.normal_form(x) for x in row] for row in J.matrix()]

