"""Closed-form root sets and the bundled golden corpus.

These are ground truth for tests and for ``bsmonomial verify``; nothing in
here calls the engine.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .engine import RootSet
from .newton import InputError, MonomialIdeal

CORPUS_FORMAT = "bsmonomial-golden"
CORPUS_VERSION = 1


@dataclass(frozen=True)
class GoldenCase:
    name: str
    ideal: MonomialIdeal
    expected: RootSet


def family_two_gen(a: int, b: int) -> RootSet:
    """Roots for the ideal (x^a y, x y^b), a, b >= 2."""
    if a < 2 or b < 2:
        raise InputError("family_two_gen needs a, b >= 2")
    roots = {
        Fraction(-((b - 1) * i + (a - 1) * j), a * b - 1)
        for i in range(1, a + 1)
        for j in range(1, b + 1)
    }
    roots.add(Fraction(-1))
    return RootSet.of(roots)


def family_axes(*exponents: int) -> RootSet:
    """Roots for (x_1^a_1, ..., x_n^a_n): all sums -sum p_i / a_i with 1 <= p_i <= a_i."""
    if not exponents or any(a < 1 for a in exponents):
        raise InputError("family_axes needs positive exponents")
    ranges = [[Fraction(p, a) for p in range(1, a + 1)] for a in exponents]
    return RootSet.of(-sum(t) for t in itertools.product(*ranges))


def family_ex2(d: int, a: int) -> RootSet:
    """Roots for (x^d, x^(d-a) y^a, y^d) with a dividing d: -k/d for 2 <= k <= d + a."""
    if d < 2 or a < 1 or d % a:
        raise InputError("family_ex2 needs d >= 2 and a dividing d")
    return RootSet.of(Fraction(-k, d) for k in range(2, d + a + 1))


def two_gen_ideal(a: int, b: int) -> MonomialIdeal:
    return MonomialIdeal.of((a, 1), (1, b))


def axes_ideal(*exponents: int) -> MonomialIdeal:
    n = len(exponents)
    return MonomialIdeal.of(*(tuple(a if i == j else 0 for j in range(n)) for i, a in enumerate(exponents)))


def ex2_ideal(d: int, a: int) -> MonomialIdeal:
    return MonomialIdeal.of((d, 0), (d - a, a), (0, d))


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def load_corpus(text: str) -> list[GoldenCase]:
    doc = json.loads(text)
    if doc.get("format") != CORPUS_FORMAT or doc.get("version") != CORPUS_VERSION:
        raise InputError("unrecognised golden corpus file")
    cases = []
    for c in doc["cases"]:
        ideal = MonomialIdeal(int(c["vars"]), tuple(map(tuple, c["generators"])))
        expected = RootSet.of(parse_fraction(s) for s in c["expected"])
        cases.append(GoldenCase(c["name"], ideal, expected))
    return cases


def golden_corpus() -> list[GoldenCase]:
    text = resources.files("bsmonomial").joinpath("data/golden.json").read_text(encoding="utf-8")
    return load_corpus(text)


# parameter grids checked by ``verify`` and the acceptance tests
TWO_GEN_RANGE = range(2, 6)
AXES_MAX_EXPONENT = 4
AXES_MAX_VARS = 3
EX2_PARAMS = ((2, 1), (2, 2), (4, 2), (4, 4), (6, 3))


def family_cases():
    """Yield (label, ideal, expected) for every family instance in the verify suite."""
    for a in TWO_GEN_RANGE:
        for b in TWO_GEN_RANGE:
            yield f"two_gen({a},{b})", two_gen_ideal(a, b), family_two_gen(a, b)
    for n in range(1, AXES_MAX_VARS + 1):
        for exps in itertools.product(range(1, AXES_MAX_EXPONENT + 1), repeat=n):
            yield f"axes{exps}", axes_ideal(*exps), family_axes(*exps)
    for d, a in EX2_PARAMS:
        yield f"ex2({d},{a})", ex2_ideal(d, a), family_ex2(d, a)
