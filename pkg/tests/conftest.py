from __future__ import annotations

import pytest

from diffindex.parser import parse_system

GOLDEN = """
vars: y1 y2 y3
f1: y1^(1) - y1*y3
f2: y2^(1) - y2*y3
f3: y1 + y2 - 1
"""

# name -> system text; the golden example, two hand-analysed systems and
# four linear systems
SYSTEMS = {
    "golden": GOLDEN,
    "exp": "vars: y1\nf1: y1^(1) - y1\n",
    "second_order": "vars: y1 y2\nf1: y1^(2) - y2\nf2: y2^(1) - y1\n",
    "shift_pair": "vars: y1 y2\nf1: y1^(1) - y2\nf2: y2^(1) - y1\n",
    "pinned": "vars: y1 y2\nf1: y1^(1) - y2\nf2: y1 - 1\n",
    "chain3": "vars: y1 y2 y3\nf1: y1^(1) - y2\nf2: y2^(1) - y3\nf3: y1\n",
    "underdetermined": "vars: y1 y2 y3\nf1: y1^(2) + y2^(1) - y3\nf2: y2 - y1^(1)\n",
}

LINEAR = ["exp", "second_order", "shift_pair", "pinned", "chain3", "underdetermined"]


@pytest.fixture(scope="session")
def systems():
    return {name: parse_system(text) for name, text in SYSTEMS.items()}


@pytest.fixture(scope="session")
def golden(systems):
    return systems["golden"]
