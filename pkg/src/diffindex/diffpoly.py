"""Difference polynomials over Q with the identity endomorphism.

A difference variable ``y_j^(i)`` is the ``i``-th transform of the
indeterminate ``y_j``. Polynomials are sparse maps from monomials to
nonzero :class:`fractions.Fraction` coefficients; every value is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Mapping, Sequence, Union

Coefficient = Union[int, Fraction]


@total_ordering
@dataclass(frozen=True)
class DiffVariable:
    """The variable ``y_{base_index}^{(order)}``.

    Variables are ordered by ``(order, base_index)``: higher transform order
    is greater, and within one order level the larger base index is greater.
    """

    base_index: int
    order: int = 0

    def __post_init__(self) -> None:
        if self.base_index < 1:
            raise ValueError(f"base_index must be >= 1, got {self.base_index}")
        if self.order < 0:
            raise ValueError(f"order must be >= 0, got {self.order}")

    def sort_key(self) -> tuple[int, int]:
        return (self.order, self.base_index)

    def __lt__(self, other: "DiffVariable") -> bool:
        if not isinstance(other, DiffVariable):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def shift(self, k: int) -> "DiffVariable":
        return DiffVariable(self.base_index, self.order + k)

    def __str__(self) -> str:
        if self.order == 0:
            return f"y{self.base_index}"
        return f"y{self.base_index}^({self.order})"


class Monomial:
    """A power product of difference variables, stored without zero exponents."""

    __slots__ = ("_powers", "_hash")

    def __init__(self, powers: Mapping[DiffVariable, int] | Iterable[tuple[DiffVariable, int]] = ()):
        items = powers.items() if isinstance(powers, Mapping) else powers
        merged: dict[DiffVariable, int] = {}
        for var, exp in items:
            if exp < 0:
                raise ValueError("negative exponent")
            if exp:
                merged[var] = merged.get(var, 0) + exp
        self._powers = tuple(sorted(merged.items()))
        self._hash = hash(self._powers)

    @property
    def powers(self) -> tuple[tuple[DiffVariable, int], ...]:
        return self._powers

    def as_dict(self) -> dict[DiffVariable, int]:
        return dict(self._powers)

    def degree(self) -> int:
        return sum(exp for _, exp in self._powers)

    def variables(self) -> tuple[DiffVariable, ...]:
        return tuple(var for var, _ in self._powers)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self._powers + other._powers)

    def shift(self, k: int) -> "Monomial":
        return Monomial((var.shift(k), exp) for var, exp in self._powers)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._powers == other._powers

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._powers)

    def __repr__(self) -> str:
        return f"Monomial({str(self) or '1'})"

    def __str__(self) -> str:
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in reversed(self._powers))


ONE = Monomial()


def _as_fraction(c: Coefficient) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class DiffPolynomial:
    """Sparse polynomial in difference variables with exact rational coefficients.

    Supports ``+``, ``-``, ``*``, integer powers and equality. Two equal
    polynomials always have identical term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coefficient] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = _as_fraction(coeff)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "DiffPolynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Coefficient) -> "DiffPolynomial":
        return cls({ONE: c})

    @classmethod
    def var(cls, base_index: int, order: int = 0) -> "DiffPolynomial":
        return cls({Monomial({DiffVariable(base_index, order): 1}): 1})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(ONE, Fraction(0))

    def variables(self) -> frozenset[DiffVariable]:
        return frozenset(v for m in self._terms for v in m.variables())

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((m.degree() for m in self._terms), default=-1)

    def order(self) -> int:
        """Largest transform order present; ``-1`` if no variable occurs."""
        return max((v.order for v in self.variables()), default=-1)

    def order_in(self, base_index: int) -> int:
        """Largest order of ``y_{base_index}`` present; ``-1`` if absent."""
        return max((v.order for v in self.variables() if v.base_index == base_index), default=-1)

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> "DiffPolynomial | None":
        if isinstance(other, DiffPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return DiffPolynomial.constant(other)
        return None

    def __add__(self, other: object) -> "DiffPolynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return DiffPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "DiffPolynomial":
        return DiffPolynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "DiffPolynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "DiffPolynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "DiffPolynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = m1 * m2
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return DiffPolynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DiffPolynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = DiffPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"DiffPolynomial({self})"

    def __str__(self) -> str:
        return to_string(self)


def _mono_sort_key(m: Monomial) -> tuple:
    return (m.degree(), [(v.sort_key(), e) for v, e in reversed(m.powers)])


def to_string(p: DiffPolynomial, names: Sequence[str] | None = None) -> str:
    """Render ``p`` in the parser's grammar (re-parseable).

    ``names[j-1]`` is used for ``y_j`` when given.
    """
    if p.is_zero():
        return "0"

    def var_str(v: DiffVariable) -> str:
        base = names[v.base_index - 1] if names else f"y{v.base_index}"
        return base if v.order == 0 else f"{base}^({v.order})"

    parts: list[str] = []
    for mono in sorted(p.terms, key=_mono_sort_key, reverse=True):
        c = p.terms[mono]
        factors = [var_str(v) if e == 1 else f"{var_str(v)}^{e}" for v, e in reversed(mono.powers)]
        mag = abs(c)
        mag_s = str(mag)
        if not factors:
            body = mag_s
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([mag_s] + factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def transform(f: DiffPolynomial, k: int) -> DiffPolynomial:
    """Apply the transform ``k`` times: every ``y_j^(i)`` becomes ``y_j^(i+k)``."""
    if k < 0:
        raise ValueError("transform count must be non-negative")
    if k == 0:
        return f
    return DiffPolynomial._raw({m.shift(k): c for m, c in f.terms.items()})


def partial(f: DiffPolynomial, v: DiffVariable) -> DiffPolynomial:
    """Formal partial derivative of ``f`` with respect to ``v``."""
    out: dict[Monomial, Fraction] = {}
    for m, c in f.terms.items():
        powers = m.as_dict()
        exp = powers.get(v, 0)
        if not exp:
            continue
        powers[v] = exp - 1
        nm = Monomial(powers)
        out[nm] = out.get(nm, 0) + c * exp
    return DiffPolynomial({m: c for m, c in out.items() if c})


@dataclass(frozen=True)
class DiffSystem:
    """A system ``F = (f_1, ..., f_r)`` in ``n`` difference indeterminates.

    ``E0[i][j]`` is the order of ``f_{i+1}`` in ``y_{j+1}`` (0 when absent),
    ``e`` the largest such order and ``orders[i]`` the order of ``f_{i+1}``.
    """

    n: int
    equations: tuple[DiffPolynomial, ...]
    e: int
    orders: tuple[int, ...]
    E0: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    @property
    def r(self) -> int:
        return len(self.equations)

    def variables(self, max_order: int) -> list[DiffVariable]:
        """``Y^[max_order]`` in increasing variable order."""
        return [DiffVariable(j, i) for i in range(max_order + 1) for j in range(1, self.n + 1)]

    def block(self, order: int) -> list[DiffVariable]:
        """``Y^(order)``, i.e. ``y_1^(order), ..., y_n^(order)``."""
        return [DiffVariable(j, order) for j in range(1, self.n + 1)]

    def prolongation(self, k: int) -> list[DiffPolynomial]:
        """Generators ``f_1^[k-1], ..., f_r^[k-1]`` of ``Delta_k``, grouped by transform level."""
        return [transform(f, j) for j in range(k) for f in self.equations]

    def max_degree(self) -> int:
        return max(f.degree() for f in self.equations)

    def min_order_entry(self) -> int:
        return min(min(row) for row in self.E0)


def system_metadata(F: Sequence[DiffPolynomial], n: int, names: Sequence[str] | None = None) -> DiffSystem:
    """Validate ``F`` and compute ``E0``, ``e`` and the per-equation orders."""
    if not F:
        raise ValueError("system must contain at least one equation")
    r = len(F)
    if r > n:
        raise ValueError(f"more equations ({r}) than variables ({n})")
    for idx, f in enumerate(F, 1):
        if f.is_constant():
            raise ValueError(f"equation {idx} is constant")
        for v in f.variables():
            if v.base_index > n:
                raise ValueError(f"equation {idx} uses y{v.base_index} but n = {n}")
    E0 = tuple(tuple(max(f.order_in(j), 0) for j in range(1, n + 1)) for f in F)
    e = max(max(row) for row in E0)
    if e == 0:
        raise ValueError("system involves no transform (maximal order e = 0)")
    orders = tuple(f.order() for f in F)
    return DiffSystem(
        n=n,
        equations=tuple(F),
        e=e,
        orders=orders,
        E0=E0,
        names=tuple(names) if names is not None else None,
    )
