"""Integer-coefficient sums of decks and their exact products.

``top_to_random(a, n)`` is the formal sum of every deck reachable by
removing cards ``1..a`` and reinserting them, each with coefficient 1.
Products of such sums collapse back to a combination of single
top-to-random sums; ``expansion`` computes those coefficients through
``coefficients.q_cardinality`` while ``brute_force_product`` provides the
independent check by walking every tuple of factor terms, composing each
tuple left to right, and tallying the outcomes.

All coefficients are exact arbitrary-precision integers.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from .coefficients import ShuffleSpec, q_cardinality
from .errors import CapExceeded
from .permutations import Permutation, _compose_decks, _deck_from_targets

# Ordered letters, pairwise distinct; the operand type of shuffle_product.
Word = tuple[int, ...]

DEFAULT_TUPLE_CAP = 10**7

# Stop memoizing last-factor rows once the cache holds this many decks.
_ROW_CACHE_LIMIT = 2_000_000


def shuffle_product(u: Sequence[int], v: Sequence[int]) -> list[Word]:
    """All interleavings of ``u`` and ``v`` preserving each word's internal
    order; there are C(|u|+|v|, |u|) of them, pairwise distinct."""
    u, v = tuple(u), tuple(v)
    if len(set(u)) != len(u) or len(set(v)) != len(v) or set(u) & set(v):
        raise ValueError("shuffle operands must have pairwise distinct letters")
    total = len(u) + len(v)
    out = []
    for upos in itertools.combinations(range(total), len(u)):
        uset = set(upos)
        ui, vi = iter(u), iter(v)
        out.append(tuple(next(ui) if i in uset else next(vi) for i in range(total)))
    return out


class AlgebraElement:
    """A finite sum of decks with nonnegative integer coefficients.

    Zero coefficients are never stored; equality is exact map equality.
    Treat instances as immutable values.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Permutation, int]):
        if n < 1:
            raise ValueError("deck size must be at least 1")
        pruned: dict[Permutation, int] = {}
        for p, c in terms.items():
            if c < 0:
                raise ValueError("coefficients must be nonnegative")
            if c == 0:
                continue
            if p.n != n:
                raise ValueError(f"term of size {p.n} in an element of size {n}")
            pruned[p] = c
        self.n = n
        self._terms = pruned

    @property
    def terms(self) -> Mapping[Permutation, int]:
        return MappingProxyType(self._terms)

    def coefficient(self, p: Permutation) -> int:
        return self._terms.get(p, 0)

    @property
    def mass(self) -> int:
        """Sum of all coefficients (the number of contributing tuples)."""
        return sum(self._terms.values())

    def sorted_terms(self) -> list[tuple[Permutation, int]]:
        return sorted(self._terms.items(), key=lambda item: item[0].deck)

    def scale(self, c: int) -> "AlgebraElement":
        if c < 0:
            raise ValueError("coefficients must be nonnegative")
        return AlgebraElement(self.n, {p: c * v for p, v in self._terms.items()})

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.n != other.n:
            raise ValueError(f"deck sizes differ: {self.n} != {other.n}")
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return AlgebraElement(self.n, out)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        return f"AlgebraElement(n={self.n}, terms={len(self._terms)}, mass={self.mass})"

    def as_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"deck": p.as_json(), "coeff": str(c)} for p, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraElement":
        return cls(
            int(data["n"]),
            {
                Permutation.from_json(t["deck"]): int(t["coeff"])
                for t in data["terms"]
            },
        )


def _top_to_random_decks(a: int, n: int) -> Iterator[tuple[int, ...]]:
    """Raw decks of ``top_to_random(a, n)``, ordered lexicographically by the
    positions chosen for cards ``1..a``."""
    for targets in itertools.permutations(range(1, n + 1), a):
        yield _deck_from_targets(targets, n)


def top_to_random(a: int, n: int) -> AlgebraElement:
    """Sum of all P(n, a) decks reachable by reinserting cards ``1..a``."""
    if not 1 <= a <= n:
        raise ValueError(f"shuffle size {a} outside 1..{n}")
    return AlgebraElement(n, {Permutation(d): 1 for d in _top_to_random_decks(a, n)})


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Convolution product: coefficient of ``r`` is the sum of
    ``x[p] * y[q]`` over all ``p, q`` with ``compose(p, q) == r``."""
    if x.n != y.n:
        raise ValueError(f"deck sizes differ: {x.n} != {y.n}")
    out: dict[tuple[int, ...], int] = {}
    for p, cp in x.terms.items():
        for q, cq in y.terms.items():
            d = _compose_decks(p.deck, q.deck)
            out[d] = out.get(d, 0) + cp * cq
    return AlgebraElement(x.n, {Permutation(d): c for d, c in out.items()})


def predicted_tuple_count(spec: ShuffleSpec) -> int:
    """Number of term tuples a brute-force walk of the product visits."""
    return math.prod(math.perm(spec.n, ai) for ai in spec.a)


def brute_force_product(
    spec: ShuffleSpec, cap: int = DEFAULT_TUPLE_CAP
) -> AlgebraElement:
    """Exact product of the spec's shuffle sums by exhaustive tuple walk.

    Visits every tuple of factor terms once, composing left to right along
    shared prefixes.  Refuses up front (never truncates) when the tuple
    count exceeds ``cap``.
    """
    required = predicted_tuple_count(spec)
    if required > cap:
        raise CapExceeded(required, cap)
    n = spec.n
    factors = [list(_top_to_random_decks(ai, n)) for ai in spec.a]
    last = factors[-1]
    k = len(factors)
    tally: Counter = Counter()
    row_cache: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    cache_budget = _ROW_CACHE_LIMIT // max(1, len(last))

    def walk(depth: int, cur: tuple[int, ...]) -> None:
        if depth == k - 1:
            row = row_cache.get(cur)
            if row is None:
                row = [tuple(cur[c - 1] for c in d) for d in last]
                if len(row_cache) < cache_budget:
                    row_cache[cur] = row
            tally.update(row)
            return
        for d in factors[depth]:
            walk(depth + 1, tuple(cur[c - 1] for c in d))

    walk(0, tuple(range(1, n + 1)))
    return AlgebraElement(n, {Permutation(d): c for d, c in tally.items()})


def expansion(spec: ShuffleSpec) -> dict[int, int]:
    """Coefficients ``{j: count}`` with the product of the spec's shuffle
    sums equal to ``sum_j count * top_to_random(j, n)``; keys are exactly
    the ``j`` in ``[max(a), min(sum(a), n)]`` with a nonzero count."""
    out: dict[int, int] = {}
    for j in range(spec.j_min, spec.j_max + 1):
        c = q_cardinality(spec, j)
        if c:
            out[j] = c
    return out


def expansion_element(spec: ShuffleSpec) -> AlgebraElement:
    """The expansion materialized as a single element, for comparison
    against ``brute_force_product``."""
    terms: dict[Permutation, int] = {}
    for j, c in expansion(spec).items():
        for d in _top_to_random_decks(j, spec.n):
            p = Permutation(d)
            terms[p] = terms.get(p, 0) + c
    return AlgebraElement(spec.n, terms)
