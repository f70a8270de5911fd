"""Groebner bases with representation tracking over finite rings ``A_k``.

Internally a polynomial is a ``dict`` from exponent tuples to
:class:`~fractions.Fraction`; the exponent tuple is indexed by the ring's
variable list. Every basis element carries the cofactors that express it in
terms of the original generators, so membership answers come with an
explicit certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from operator import add, sub
from typing import Iterable, Sequence

from .diffpoly import DiffPolynomial, DiffSystem, DiffVariable, Monomial

Exp = tuple[int, ...]
Poly = dict[Exp, Fraction]
Rep = dict[int, Poly]


@dataclass(frozen=True)
class MonomialOrder:
    """Either ``degrevlex`` or a block elimination order.

    The block order compares the part of the monomial outside ``keep``
    first (by degrevlex) and breaks ties by degrevlex on ``keep``, so every
    monomial with an eliminated variable exceeds every monomial in ``keep``.
    """

    kind: str = "degrevlex"
    keep: frozenset[DiffVariable] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("degrevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if (self.kind == "block") != (self.keep is not None):
            raise ValueError("block order requires a keep set (and only block order takes one)")

    @classmethod
    def degrevlex(cls) -> "MonomialOrder":
        return cls("degrevlex")

    @classmethod
    def block(cls, keep: Iterable[DiffVariable]) -> "MonomialOrder":
        return cls("block", frozenset(keep))


DEGREVLEX = MonomialOrder.degrevlex()


def _grev(a: Exp) -> tuple:
    return (sum(a), tuple(-x for x in reversed(a)))


class PolyRing:
    """``Q[variables]`` with a fixed monomial order.

    Variables are stored largest first; with a block order the eliminated
    block precedes the kept block.
    """

    def __init__(self, variables: Iterable[DiffVariable], order: MonomialOrder = DEGREVLEX):
        vs = set(variables)
        if order.kind == "block":
            assert order.keep is not None
            elim = sorted(vs - order.keep, reverse=True)
            kept = sorted(vs & order.keep, reverse=True)
            self.split = len(elim)
            self.variables: tuple[DiffVariable, ...] = tuple(elim + kept)
        else:
            self.split = 0
            self.variables = tuple(sorted(vs, reverse=True))
        self.order = order
        self.nvars = len(self.variables)
        self.position = {v: k for k, v in enumerate(self.variables)}
        self.zero_exp: Exp = (0,) * self.nvars
        self._keys: dict[Exp, tuple] = {}

    def key(self, a: Exp) -> tuple:
        k = self._keys.get(a)
        if k is None:
            if self.split:
                k = (_grev(a[: self.split]), _grev(a[self.split :]))
            else:
                k = _grev(a)
            self._keys[a] = k
        return k

    def lead(self, p: Poly) -> Exp:
        return max(p, key=self.key)

    # conversion -----------------------------------------------------------

    def from_diff(self, f: DiffPolynomial) -> Poly:
        out: Poly = {}
        for mono, c in f.items():
            a = [0] * self.nvars
            for v, e in mono.powers:
                try:
                    a[self.position[v]] = e
                except KeyError:
                    raise ValueError(f"variable {v} is not in the ring") from None
            out[tuple(a)] = c
        return out

    def to_diff(self, p: Poly) -> DiffPolynomial:
        terms = {}
        for a, c in p.items():
            terms[Monomial((self.variables[k], e) for k, e in enumerate(a) if e)] = c
        return DiffPolynomial(terms)


# ---------------------------------------------------------------------------
# raw polynomial helpers


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(map(max, a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _addmul(p: Poly, c: Fraction, m: Exp, q: Poly) -> None:
    """In place ``p += c * x^m * q``."""
    for a, d in q.items():
        t = tuple(map(add, a, m))
        s = p.get(t, 0) + c * d
        if s:
            p[t] = s
        else:
            p.pop(t, None)


def _scale(p: Poly, c: Fraction) -> Poly:
    return {a: c * d for a, d in p.items()}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for a, c in p.items():
        _addmul(out, c, a, q)
    return out


def poly_sub(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for a, c in q.items():
        s = out.get(a, 0) - c
        if s:
            out[a] = s
        else:
            out.pop(a, None)
    return out


def _rep_addmul(r: Rep, c: Fraction, m: Exp, q: Rep) -> None:
    for idx, qp in q.items():
        target = r.setdefault(idx, {})
        _addmul(target, c, m, qp)
        if not target:
            del r[idx]


def _reduce(
    ring: PolyRing,
    f: Poly,
    rep: Rep | None,
    divisors: Sequence[tuple[Exp, Poly, Rep]],
    quotients: list[Poly] | None = None,
) -> Poly:
    """Full reduction of ``f`` modulo monic ``divisors``; updates ``rep`` and ``quotients`` in place."""
    p = dict(f)
    rem: Poly = {}
    while p:
        m = ring.lead(p)
        c = p[m]
        for idx, (lm, b, brep) in enumerate(divisors):
            if _divides(lm, m):
                q = tuple(map(sub, m, lm))
                _addmul(p, -c, q, b)
                if rep is not None:
                    _rep_addmul(rep, -c, q, brep)
                if quotients is not None:
                    qd = quotients[idx]
                    qd[q] = qd.get(q, 0) + c
                break
        else:
            rem[m] = c
            del p[m]
    return rem


# ---------------------------------------------------------------------------


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis with cofactor representations.

    ``basis[t] == sum(reps[t][l] * generators[l])`` holds exactly. For an
    elimination ideal ``ambient`` is the kept variable set; otherwise it is
    every ring variable.
    """

    ring: PolyRing
    generators: list[Poly]
    basis: list[Poly]
    reps: list[Rep]
    ambient: tuple[DiffVariable, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.ambient:
            self.ambient = self.ring.variables
        self._divisors = [(self.ring.lead(b), b, rep) for b, rep in zip(self.basis, self.reps)]

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def leading_monomials(self) -> list[Exp]:
        return [d[0] for d in self._divisors]

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading_monomials())

    def reduce(self, f: Poly) -> tuple[Poly, list[Poly]]:
        """Remainder of ``f`` and cofactors ``a_l`` with ``f - rem = sum a_l * generators[l]``."""
        quotients: list[Poly] = [{} for _ in self.basis]
        rem = _reduce(self.ring, f, None, self._divisors, quotients)
        cof: Rep = {}
        for q, rep in zip(quotients, self.reps):
            if q:
                for idx, rp in rep.items():
                    target = cof.setdefault(idx, {})
                    for a, c in q.items():
                        _addmul(target, c, a, rp)
                    if not target:
                        del cof[idx]
        return rem, [cof.get(l, {}) for l in range(len(self.generators))]

    def normal_form_raw(self, f: Poly) -> Poly:
        return _reduce(self.ring, f, None, self._divisors)

    def normal_form(self, f: DiffPolynomial) -> DiffPolynomial:
        return self.ring.to_diff(self.normal_form_raw(self.ring.from_diff(f)))

    def polynomials(self) -> list[DiffPolynomial]:
        return [self.ring.to_diff(b) for b in self.basis]

    def generator_polynomials(self) -> list[DiffPolynomial]:
        return [self.ring.to_diff(g) for g in self.generators]

    def cofactor_polynomials(self, t: int) -> list[DiffPolynomial]:
        rep = self.reps[t]
        return [self.ring.to_diff(rep.get(l, {})) for l in range(len(self.generators))]


def _spoly(ring: PolyRing, a: tuple[Exp, Poly, Rep], b: tuple[Exp, Poly, Rep]) -> tuple[Poly, Rep]:
    la, pa, ra = a
    lb, pb, rb = b
    l = _lcm(la, lb)
    ma = tuple(map(sub, l, la))
    mb = tuple(map(sub, l, lb))
    s: Poly = {}
    _addmul(s, Fraction(1), ma, pa)
    _addmul(s, Fraction(-1), mb, pb)
    rep: Rep = {}
    _rep_addmul(rep, Fraction(1), ma, ra)
    _rep_addmul(rep, Fraction(-1), mb, rb)
    return s, rep


def _make_monic(ring: PolyRing, p: Poly, rep: Rep) -> tuple[Poly, Rep]:
    c = p[ring.lead(p)]
    if c == 1:
        return p, rep
    inv = 1 / c
    return _scale(p, inv), {idx: _scale(q, inv) for idx, q in rep.items()}


def _groebner(ring: PolyRing, gens: list[Poly]) -> tuple[list[Poly], list[Rep]]:
    """Buchberger with the Gebauer-Moeller criteria and the normal selection strategy."""
    elems: list[tuple[Exp, Poly, Rep]] = []
    active: list[int] = []
    pairs: set[tuple[int, int]] = set()

    def insert(p: Poly, rep: Rep) -> None:
        p, rep = _make_monic(ring, p, rep)
        h = len(elems)
        lh = ring.lead(p)
        elems.append((lh, p, rep))
        # Gebauer-Moeller update
        cands = list(active)
        lcms = {g: _lcm(lh, elems[g][0]) for g in cands}
        kept: list[int] = []
        for idx, g in enumerate(cands):
            lg = lcms[g]
            if not _coprime(lh, elems[g][0]) and (
                any(_divides(lcms[g2], lg) for g2 in cands[idx + 1 :])
                or any(_divides(lcms[g2], lg) for g2 in kept)
            ):
                continue
            kept.append(g)
        new_pairs = {(g, h) for g in kept if not _coprime(lh, elems[g][0])}
        stale = set()
        for (g1, g2) in pairs:
            l12 = _lcm(elems[g1][0], elems[g2][0])
            if (
                _divides(lh, l12)
                and _lcm(elems[g1][0], lh) != l12
                and _lcm(lh, elems[g2][0]) != l12
            ):
                stale.add((g1, g2))
        pairs.difference_update(stale)
        pairs.update(new_pairs)
        active[:] = [g for g in active if not _divides(lh, elems[g][0])]
        active.append(h)

    def current_divisors() -> list[tuple[Exp, Poly, Rep]]:
        return [elems[g] for g in active]

    for l, g in enumerate(gens):
        if not g:
            continue
        rep: Rep = {l: {ring.zero_exp: Fraction(1)}}
        r = _reduce(ring, g, rep, current_divisors())
        if r:
            insert(r, rep)

    def pair_key(pr: tuple[int, int]) -> tuple:
        l = _lcm(elems[pr[0]][0], elems[pr[1]][0])
        return (sum(l), ring.key(l), pr)

    while pairs:
        pr = min(pairs, key=pair_key)
        pairs.discard(pr)
        s, rep = _spoly(ring, elems[pr[0]], elems[pr[1]])
        r = _reduce(ring, s, rep, current_divisors())
        if r:
            insert(r, rep)

    # inter-reduce the minimal basis
    final = sorted(active, key=lambda g: ring.key(elems[g][0]))
    basis: list[Poly] = []
    reps: list[Rep] = []
    for g in final:
        lg, p, rep = elems[g]
        others = [elems[o] for o in final if o != g]
        rep = {k: dict(v) for k, v in rep.items()}
        # only tails are reduced, leading terms stay fixed
        head = {lg: p[lg]}
        tail = {a: c for a, c in p.items() if a != lg}
        tail_rem = _reduce(ring, tail, rep, others)
        red = dict(tail_rem)
        red[lg] = head[lg]
        red, rep = _make_monic(ring, red, rep)
        basis.append(red)
        reps.append(rep)
    return basis, reps


def _ring_for(gens: Sequence[DiffPolynomial], variables: Iterable[DiffVariable] | None, order: MonomialOrder) -> PolyRing:
    vs = set(variables or ())
    for g in gens:
        vs |= g.variables()
    if order.keep is not None:
        vs |= order.keep
    return PolyRing(vs, order)


def buchberger(
    gens: Sequence[DiffPolynomial],
    order: MonomialOrder = DEGREVLEX,
    variables: Iterable[DiffVariable] | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of ``(gens)`` with cofactors over ``gens``.

    ``variables`` fixes the ambient ring; it is widened to every variable
    that occurs in ``gens``.
    """
    ring = _ring_for(gens, variables, order)
    raw = [ring.from_diff(g) for g in gens]
    basis, reps = _groebner(ring, raw)
    return GroebnerBasis(ring, raw, basis, reps)


def normal_form(f: DiffPolynomial, G: GroebnerBasis) -> DiffPolynomial:
    """Remainder of ``f`` on division by ``G``."""
    return G.normal_form(f)


@dataclass(frozen=True)
class Membership:
    member: bool
    cofactors: tuple[DiffPolynomial, ...] | None
    remainder: DiffPolynomial

    def __bool__(self) -> bool:
        return self.member


def is_member(f: DiffPolynomial, G: GroebnerBasis) -> Membership:
    """Decide ``f in (generators)``; on success give ``a_l`` with ``f = sum a_l * generator_l``."""
    missing = f.variables() - set(G.ring.variables)
    if missing:
        # extend the ring; membership is unaffected by adding free variables
        G = buchberger(G.generator_polynomials(), G.order, set(G.ring.variables) | missing)
    rem, cof = G.reduce(G.ring.from_diff(f))
    remainder = G.ring.to_diff(rem)
    if rem:
        return Membership(False, None, remainder)
    return Membership(True, tuple(G.ring.to_diff(c) for c in cof), remainder)


def ideal_equal(G1: GroebnerBasis, G2: GroebnerBasis) -> bool:
    """Equality of ideals, by comparing reduced bases under the same order."""
    if G1.order.kind != G2.order.kind:
        raise ValueError("bases must use the same kind of monomial order")
    return set(G1.polynomials()) == set(G2.polynomials())


def krull_dimension(G: GroebnerBasis) -> int:
    """Dimension of ``Q[ambient] / (G)``.

    Equals the size of a largest variable set that contains the support of
    no leading monomial, i.e. ``len(ambient)`` minus a minimum hitting set of
    the leading-monomial supports.
    """
    if G.is_unit():
        raise ValueError("unit ideal has no Krull dimension")
    pos = {v: k for k, v in enumerate(G.ambient)}
    supports: list[frozenset[int]] = []
    for lm in G.leading_monomials():
        sup = frozenset(pos[G.ring.variables[k]] for k, e in enumerate(lm) if e)
        supports.append(sup)
    # keep only minimal supports
    supports = sorted(set(supports), key=len)
    minimal: list[frozenset[int]] = []
    for s in supports:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = [len(G.ambient)]

    def search(chosen: frozenset[int], depth: int) -> None:
        if depth >= best[0]:
            return
        for s in minimal:
            if not (s & chosen):
                for v in sorted(s):
                    search(chosen | {v}, depth + 1)
                return
        best[0] = depth

    search(frozenset(), 0)
    return len(G.ambient) - best[0]


# ---------------------------------------------------------------------------
# prolongation ideals


@dataclass(frozen=True)
class ProlongedIdeal:
    """``Delta_k = (f_1^[k-1], ..., f_r^[k-1])`` inside ``A_{k-1+e}``.

    ``min_order`` widens the ambient ring to ``Y^[min_order]`` when a caller
    needs variables beyond ``k-1+e`` (the extra variables are free).
    """

    system: DiffSystem
    level: int
    min_order: int = -1

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError("level must be non-negative")

    @property
    def ambient_order(self) -> int:
        return max(self.level - 1 + self.system.e, self.min_order)

    def ambient(self) -> list[DiffVariable]:
        return self.system.variables(self.ambient_order)

    def generators(self) -> list[DiffPolynomial]:
        return self.system.prolongation(self.level)

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
        return _prolonged_gb(self.system, self.level, self.ambient_order, order)


@lru_cache(maxsize=256)
def _prolonged_gb(system: DiffSystem, level: int, ambient_order: int, order: MonomialOrder) -> GroebnerBasis:
    return buchberger(system.prolongation(level), order, system.variables(ambient_order))


def prolonged_basis(system: DiffSystem, level: int, min_order: int = -1) -> GroebnerBasis:
    """Degrevlex basis of ``Delta_level`` in ``A_{max(level-1+e, min_order)}`` (cached)."""
    return ProlongedIdeal(system, level, min_order).groebner()


def elimination_ideal(P: ProlongedIdeal, keep: Iterable[DiffVariable]) -> GroebnerBasis:
    """Reduced basis of ``Delta_level ∩ Q[keep]`` by block elimination."""
    keep = frozenset(keep)
    ambient_order = max([P.ambient_order] + [v.order for v in keep])
    full = _prolonged_gb(P.system, P.level, ambient_order, MonomialOrder.block(keep))
    kept_idx = [
        t for t, b in enumerate(full.basis)
        if all(not e or full.ring.variables[k] in keep for a in b for k, e in enumerate(a))
    ]
    return GroebnerBasis(
        full.ring,
        full.generators,
        [full.basis[t] for t in kept_idx],
        [full.reps[t] for t in kept_idx],
        ambient=tuple(sorted(keep, reverse=True)),
    )


def s_polynomials_reduce_to_zero(G: GroebnerBasis) -> bool:
    """Buchberger's criterion checked on every pair (used by the test-suite)."""
    divs = G._divisors
    for a, b in itertools.combinations(divs, 2):
        s, _ = _spoly(G.ring, a, b)
        if _reduce(G.ring, s, None, divs):
            return False
    return True
