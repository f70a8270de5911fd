"""Walk through the index computation for a three-variable system.

The system is

    y1' = y1*y3,   y2' = y2*y3,   y1 + y2 = 1.

Shifting the algebraic constraint once and substituting the dynamics gives
y3*(y1 + y2) = 1, so y3 = 1 is a hidden constraint that only appears after a
transform. The pseudo-Jacobian corank picks this up.
"""

from __future__ import annotations

from diffindex import analyze, build, parse_system, rank_mod
from diffindex.diffpoly import to_string
from diffindex.index import constraint_ideal

SYSTEM = """
vars: y1 y2 y3
f1: y1^(1) - y1*y3
f2: y2^(1) - y2*y3
f3: y1 + y2 - 1
"""


def main() -> None:
    system = parse_system(SYSTEM)
    print(f"n = {system.n}, r = {system.r}, e = {system.e}, E0 = {system.E0}")

    # Corank of the prolonged Jacobian modulo the prolongation ideal.
    print("\nk  rank  mu_k")
    for k in (1, 2, 3):
        value = rank_mod(build(system, k, 0))
        print(f"{k}  {value.rank:4d}  {value.mu:4d}")

    # The same index seen through elimination: the ideal of constraints on
    # y1, y2, y3 stops growing after two prolongation steps.
    names = list(system.names)
    for h in (1, 2, 3):
        basis = constraint_ideal(system, 0, h).polynomials()
        print(f"\nDelta_{h} ∩ A_0: " + ", ".join(to_string(p, names) for p in basis))

    report = analyze(system)
    print(f"\nomega = {report.omega}, ord = {report.order}")
    print(f"Jacobi bound {report.jacobi_bound}; omega + ord <= bound: {report.bound_satisfied}")
    print("cross-checks:", ", ".join(f"{k}={v}" for k, v in report.checks.items()))


if __name__ == "__main__":
    main()
