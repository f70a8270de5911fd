"""Rank profile, difference index, order and regularity of a difference system.

All computations run in the unlocalized rings ``A_k`` and assume that the
difference ideal generated by the system is prime and reflexive; under that
assumption every prolongation ideal used below is prime.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .diffpoly import DiffSystem
from .groebner import GroebnerBasis, ProlongedIdeal, elimination_ideal, ideal_equal, krull_dimension, prolonged_basis
from .jacobi import jacobi_bound, jacobi_number
from .pseudo_jacobian import MuValue, build, default_zero_test, full_jacobian, matrix_rank_mod, rank_mod

log = logging.getLogger(__name__)


class AnalysisError(RuntimeError):
    """A computation contradicts the quasi-regularity assumptions."""


def mu_cap(system: DiffSystem) -> int:
    """Largest ``k`` ever needed: ``e + sum(e_j) + 1``."""
    return system.e + sum(system.orders) + 1


def mu_lower(system: DiffSystem, k: int) -> int:
    return sum(min(k, system.e - ej) for ej in system.orders)


def mu_upper(system: DiffSystem, k: int) -> int:
    return min(k, system.e) * system.r


@dataclass(frozen=True)
class MuProfile:
    """``values[k] = mu_k`` for ``k = 0 .. omega + 1`` and ``ranks[k] = rank J_{k,i}``."""

    values: tuple[int, ...]
    omega: int
    cap: int
    i: int
    ranks: tuple[int, ...] = ()

    @property
    def mu_omega(self) -> int:
        return self.values[self.omega]


def mu_value(system: DiffSystem, k: int, i: int | None = None, extra: int = 0) -> MuValue:
    """``MuValue`` of ``J_{k,i}`` with zero tests modulo ``Delta_{i-e+1+k+extra}``."""
    if k == 0:
        return MuValue(0, 0, 0)
    J = build(system, k, i)
    return rank_mod(J, default_zero_test(system, J, extra))


def mu_sequence(system: DiffSystem, i: int | None = None, *, extra: int = 0, cap: int | None = None) -> MuProfile:
    """Compute ``mu_k`` until the first repetition ``mu_{k+1} = mu_k``; ``omega`` is that ``k``."""
    if i is None:
        i = system.e - 1
    cap = mu_cap(system) if cap is None else cap
    values = [0]
    ranks = [0]
    for k in range(1, cap + 1):
        mv = mu_value(system, k, i, extra)
        log.debug("k=%d rank=%d mu=%d", k, mv.rank, mv.mu)
        values.append(mv.mu)
        ranks.append(mv.rank)
        if values[k] < values[k - 1]:
            raise AnalysisError(f"mu decreased at k={k}: {values}")
        if values[k] == values[k - 1]:
            return MuProfile(tuple(values), k - 1, cap, i, tuple(ranks))
    raise AnalysisError(f"mu sequence not stabilized within cap {cap}: {values}")


def order_of_ideal(profile: MuProfile, system: DiffSystem) -> int:
    """``ord = e*r - mu_omega``."""
    return system.e * system.r - profile.mu_omega


# -- elimination-ideal oracles ----------------------------------------------


def constraint_ideal(system: DiffSystem, i: int, h: int) -> GroebnerBasis:
    """Reduced basis of ``Delta_h ∩ A_i``."""
    return elimination_ideal(ProlongedIdeal(system, h), system.variables(i))


def omega_by_constraints(system: DiffSystem, i: int | None = None, cap: int | None = None) -> int:
    """Least ``h`` with ``Delta_{i-e+1+h} ∩ A_i`` stationary (equal at ``h``, ``h+1`` and ``h+2``)."""
    if i is None:
        i = system.e - 1
    if i < system.e - 1:
        raise ValueError(f"i must be >= e-1 = {system.e - 1}")
    cap = mu_cap(system) if cap is None else cap
    base = i - system.e + 1
    chain = [constraint_ideal(system, i, base), constraint_ideal(system, i, base + 1)]
    for h in range(cap + 1):
        if ideal_equal(chain[h], chain[h + 1]):
            chain.append(constraint_ideal(system, i, base + h + 2))
            if not ideal_equal(chain[h + 1], chain[h + 2]):
                raise AnalysisError(f"constraint chain grew again after h={h + 1}")
            return h
        chain.append(constraint_ideal(system, i, base + h + 2))
    raise AnalysisError(f"constraint chain not stationary within cap {cap}")


def trdeg_prolongation(system: DiffSystem, i: int, h: int) -> int:
    """Transcendence degree of ``Frac(A_i / (Delta_h ∩ A_i))``."""
    return krull_dimension(constraint_ideal(system, i, h))


def dimension_polynomial(system: DiffSystem, order: int, i: int) -> int:
    return (system.n - system.r) * (i + 1) + order


@dataclass(frozen=True)
class RegularityRow:
    i: int
    level: int
    trdeg: int
    phi: int

    @property
    def agrees(self) -> bool:
        return self.trdeg == self.phi


@dataclass(frozen=True)
class RegularityReport:
    rows: tuple[RegularityRow, ...]
    bound: int
    regularity: int

    @property
    def bound_holds(self) -> bool:
        return self.regularity <= self.bound


def regularity_report(system: DiffSystem, profile: MuProfile | None = None) -> RegularityReport:
    """Compare ``trdeg A_i/(p ∩ A_i)`` with ``phi(i)`` for ``i = 0 .. e+1``.

    ``p ∩ A_i`` is taken as ``Delta_{max(i, e-1) - e + 1 + omega} ∩ A_i``.
    Raises :class:`AnalysisError` if the two disagree for some ``i >= e-1``.
    """
    profile = profile or mu_sequence(system)
    order = order_of_ideal(profile, system)
    e = system.e
    rows = []
    for i in range(e + 2):
        level = max(i, e - 1) - e + 1 + profile.omega
        rows.append(RegularityRow(i, level, trdeg_prolongation(system, i, level), dimension_polynomial(system, order, i)))
    for row in rows:
        if row.i >= e - 1 and not row.agrees:
            raise AnalysisError(f"trdeg {row.trdeg} != phi({row.i}) = {row.phi}")
    regularity = 0
    for row in rows:
        if not row.agrees:
            regularity = row.i + 1
    return RegularityReport(tuple(rows), e - 1, regularity)


# -- quasi-regularity --------------------------------------------------------


@dataclass(frozen=True)
class QuasiRegularityReport:
    k_max: int
    ranks: tuple[int, ...]
    first_failure: int | None

    @property
    def verified(self) -> bool:
        return self.first_failure is None


def quasi_regularity_check(system: DiffSystem, k_max: int) -> QuasiRegularityReport:
    """Check that the Jacobian of ``f^[k-1]`` w.r.t. ``Y^[k-1+e]`` has rank ``k*r`` modulo ``Delta_k``."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    ranks = []
    for k in range(1, k_max + 1):
        rank, _ = matrix_rank_mod(full_jacobian(system, k), prolonged_basis(system, k))
        ranks.append(rank)
        if rank != k * system.r:
            return QuasiRegularityReport(k_max, tuple(ranks), k)
    return QuasiRegularityReport(k_max, tuple(ranks), None)


# -- full report -------------------------------------------------------------


@dataclass
class IndexReport:
    mu_profile: MuProfile
    order: int
    jacobi_number: int
    jacobi_witness: tuple[int, ...]
    jacobi_bound: int
    regularity: RegularityReport
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def omega(self) -> int:
        return self.mu_profile.omega

    @property
    def bound_satisfied(self) -> bool:
        return self.omega + self.order <= self.jacobi_bound

    @property
    def regularity_bound(self) -> int:
        return self.regularity.bound

    @property
    def trdeg_table(self) -> tuple[tuple[int, int], ...]:
        return tuple((row.i, row.trdeg) for row in self.regularity.rows)

    @property
    def all_checks_pass(self) -> bool:
        return all(self.checks.values())


def analyze(system: DiffSystem, i: int | None = None, verify: bool = True) -> IndexReport:
    """Run the whole pipeline and, with ``verify``, the independent cross-checks."""
    profile = mu_sequence(system, i)
    order = order_of_ideal(profile, system)
    J, tau = jacobi_number(system.E0)
    regularity = regularity_report(system, profile)
    report = IndexReport(profile, order, J, tau, jacobi_bound(system), regularity)
    checks = report.checks
    checks["order_nonnegative"] = order >= 0
    checks["mu_bounds"] = all(
        mu_lower(system, k) <= mu <= mu_upper(system, k) for k, mu in enumerate(profile.values)
    )
    checks["jacobi_bound"] = report.bound_satisfied
    checks["regularity_bound"] = regularity.bound_holds
    if verify:
        e = system.e
        other_i = profile.i + 1
        alt = [mu_value(system, k, other_i).mu for k in range(len(profile.values))]
        checks["i_independence"] = tuple(alt) == profile.values
        checks["omega_by_constraints"] = omega_by_constraints(system, e - 1) == profile.omega
        checks["stabilization_persists"] = all(
            mu_value(system, k, profile.i).mu == profile.mu_omega
            for k in (profile.omega + 2, profile.omega + 3)
        )
        checks["trdeg_formula"] = all(
            trdeg_prolongation(system, ii, ii - e + 1 + k)
            == (system.n - system.r) * (ii + 1) + e * system.r - profile.values[k]
            for ii in (e - 1, e)
            for k in (profile.omega, profile.omega + 1)
        )
    return report
