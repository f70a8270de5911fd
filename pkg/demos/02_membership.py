"""Certify membership in a difference ideal with explicit cofactors.

Once the index is known, the transform order needed to decide whether a
polynomial lies in [F] is bounded. Below that order the question becomes an
ordinary Groebner-basis computation whose cofactors are returned.
"""

from __future__ import annotations

from diffindex import certify, mu_sequence, order_bound, parse_polynomial, parse_system
from diffindex.diffpoly import to_string

SYSTEM = """
vars: y1 y2 y3
f1: y1^(1) - y1*y3
f2: y2^(1) - y2*y3
f3: y1 + y2 - 1
"""


def show(system, text: str) -> None:
    names = list(system.names)
    f = parse_polynomial(text, names)
    omega = mu_sequence(system).omega
    N = max(order_bound(system, f, omega), 0)
    result = certify(system, f, N)
    print(f"\nf = {text}   (order bound N = {N})")
    if not result:
        print(f"  not in Delta_{N + 1}; remainder {to_string(result.remainder, names)}")
        return
    for (i, j), g in sorted(result.cofactors.items()):
        print(f"  + ({to_string(g, names)}) * f{i}^({j})")
    print(f"  expansion verified: {result.verify(system)}")
    print(f"  cofactor degrees {result.audit.degrees} within {result.audit.bound}")


def main() -> None:
    system = parse_system(SYSTEM)
    for text in ("y3 - 1", "y1*y3 - y1", "y1^(2) - y1", "y1"):
        show(system, text)


if __name__ == "__main__":
    main()
