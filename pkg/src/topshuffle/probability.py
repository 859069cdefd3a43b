"""Exact counting and probability of reaching a target deck.

A target is reachable through a given shuffle sequence once for every
round-partition whose block count is at least the target's minimum shuffle
size, so the count is a partial sum of ``q_cardinality`` values and the
probability is that count over the total number of outcome tuples.  All
probabilities are exact rationals; any decimal rendering is display-only.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .coefficients import ShuffleSpec, q_cardinality
from .permutations import Permutation, min_shuffle_size
from .wreath import FiniteGroup, GPermutation, is_hat_term


def total_outcomes(spec: ShuffleSpec) -> int:
    """Number of equally likely outcome tuples: the product of P(n, a_i)."""
    return math.prod(math.perm(spec.n, ai) for ai in spec.a)


def ways_to_reach(target: Permutation, spec: ShuffleSpec) -> int:
    """Number of outcome tuples of the shuffle sequence producing ``target``."""
    if target.n != spec.n:
        raise ValueError(f"deck size {target.n} does not match spec size {spec.n}")
    lo = max(spec.j_min, min_shuffle_size(target))
    return sum(q_cardinality(spec, j) for j in range(lo, spec.j_max + 1))


def probability_of(target: Permutation, spec: ShuffleSpec) -> Fraction:
    """Exact probability of ending at ``target``, reduced."""
    return Fraction(ways_to_reach(target, spec), total_outcomes(spec))


def g_total_outcomes(spec: ShuffleSpec, group: FiniteGroup) -> int:
    """Total faced outcome tuples: ``order**sum(a)`` times the plain count."""
    return group.order**spec.total * total_outcomes(spec)


def g_ways_to_reach(
    target: GPermutation, spec: ShuffleSpec, group: FiniteGroup
) -> int:
    """Number of faced outcome tuples producing ``target``.

    Sums, over each block count ``c`` whose faced shuffle sum contains the
    target as a term, the plain partition count times ``order**(sum(a)-c)``.
    Targets showing a non-identity face on a never-touched card simply
    count 0.
    """
    if target.n != spec.n:
        raise ValueError(f"deck size {target.n} does not match spec size {spec.n}")
    total = 0
    for c in range(spec.j_min, spec.j_max + 1):
        if is_hat_term(target, c, group):
            total += q_cardinality(spec, c) * group.order ** (spec.total - c)
    return total


def g_probability_of(
    target: GPermutation, spec: ShuffleSpec, group: FiniteGroup
) -> Fraction:
    """Exact probability of ending at the faced deck ``target``, reduced."""
    return Fraction(g_ways_to_reach(target, spec, group), g_total_outcomes(spec, group))


def rational_as_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(data: dict) -> Fraction:
    num = int(data["num"])
    den = int(data["den"])
    if den <= 0:
        raise ValueError("denominator must be positive")
    return Fraction(num, den)
