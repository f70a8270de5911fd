"""Effective membership in the difference ideal ``[F]`` with explicit certificates."""

from __future__ import annotations

from dataclasses import dataclass

from .diffpoly import DiffPolynomial, DiffSystem, transform
from .groebner import buchberger, is_member
from .jacobi import jacobi_number


def order_bound(system: DiffSystem, f: DiffPolynomial, omega: int) -> int:
    """``N = omega + max(-1, ord(f) - e)``."""
    return omega + max(-1, f.order() - system.e)


def coarse_order_bound(system: DiffSystem, f: DiffPolynomial) -> int:
    """``N = J(E0) - min(E0) + max(ord(f), e - 1)``; needs no index computation."""
    J, _ = jacobi_number(system.E0)
    return J - system.min_order_entry() + max(f.order(), system.e - 1)


@dataclass(frozen=True)
class DegreeAudit:
    D: int
    bound: int
    degrees: dict[tuple[int, int], int]

    @property
    def holds(self) -> bool:
        return all(d <= self.bound for d in self.degrees.values())


@dataclass(frozen=True)
class MembershipCertificate:
    """``f = sum g[(i, j)] * f_i^(j)`` with ``1 <= i <= r`` and ``0 <= j <= N``."""

    f: DiffPolynomial
    N: int
    cofactors: dict[tuple[int, int], DiffPolynomial]
    audit: DegreeAudit

    def expand(self, system: DiffSystem) -> DiffPolynomial:
        total = DiffPolynomial()
        for (i, j), g in self.cofactors.items():
            total = total + g * transform(system.equations[i - 1], j)
        return total

    def verify(self, system: DiffSystem) -> bool:
        return all(j <= self.N for _, j in self.cofactors) and self.expand(system) == self.f


@dataclass(frozen=True)
class NotMember:
    """``f`` is not in ``Delta_{N+1}``; ``remainder`` is its normal form."""

    f: DiffPolynomial
    N: int
    remainder: DiffPolynomial

    def __bool__(self) -> bool:
        return False


def certify(system: DiffSystem, f: DiffPolynomial, N: int) -> MembershipCertificate | NotMember:
    """Decide ``f in Delta_{N+1}`` and, if so, return cofactors for ``f_i^(j)``, ``j <= N``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    ambient = system.variables(max(N + system.e, f.order()))
    gens = system.prolongation(N + 1)
    G = buchberger(gens, variables=ambient)
    result = is_member(f, G)
    if not result.member:
        return NotMember(f, N, result.remainder)
    assert result.cofactors is not None
    r = system.r
    cofactors: dict[tuple[int, int], DiffPolynomial] = {}
    degrees: dict[tuple[int, int], int] = {}
    for idx, g in enumerate(result.cofactors):
        if g.is_zero():
            continue
        i, j = idx % r + 1, idx // r
        cofactors[(i, j)] = g
        degrees[(i, j)] = (g * gens[idx]).degree()
    D = system.max_degree()
    bound = max(f.degree(), 0) + D ** (r * (N + 1))
    return MembershipCertificate(f, N, cofactors, DegreeAudit(D, bound, degrees))
