"""Compare the Jacobi bound with the computed index on a few linear systems.

For each system we print the order matrix, its Jacobi number (the best
assignment of equations to variables), and the index and order found by the
rank computation. The last column is the table of transcendence degrees of
the truncated quotients next to the dimension polynomial.
"""

from __future__ import annotations

from diffindex import analyze, jacobi_number, parse_system

SYSTEMS = {
    "y1' = y1": "vars: y1\nf1: y1^(1) - y1\n",
    "y1'' = y2, y2' = y1": "vars: y1 y2\nf1: y1^(2) - y2\nf2: y2^(1) - y1\n",
    "chain with pinned start": "vars: y1 y2 y3\nf1: y1^(1) - y2\nf2: y2^(1) - y3\nf3: y1\n",
    "underdetermined": "vars: y1 y2 y3\nf1: y1^(2) + y2^(1) - y3\nf2: y2 - y1^(1)\n",
}


def main() -> None:
    for title, text in SYSTEMS.items():
        system = parse_system(text)
        J, tau = jacobi_number(system.E0)
        report = analyze(system)
        print(f"\n{title}")
        print(f"  E0 = {system.E0}, J = {J} via columns {tau}")
        print(f"  mu = {report.mu_profile.values}, omega = {report.omega}, ord = {report.order}")
        print(f"  omega + ord = {report.omega + report.order} <= {report.jacobi_bound}")
        rows = ", ".join(f"i={row.i}: {row.trdeg}/{row.phi}" for row in report.regularity.rows)
        print(f"  trdeg/phi: {rows}; regularity index {report.regularity.regularity}")


if __name__ == "__main__":
    main()
