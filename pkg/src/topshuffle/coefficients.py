"""Counting and enumerating the set partitions behind shuffle products.

Performing top-to-random shuffles of sizes ``a1, ..., ak`` in order touches
some initial run of cards ``1..j``.  Which shuffle slot touched which card
is recorded by a partition of ``[a1 + ... + ak]``: slot ``d`` of round
``i`` is the element ``d + a1 + ... + a_{i-1}``, and it joins the block of
the card that sat at position ``d`` when round ``i`` was applied.  A
single round touches distinct cards, so the elements of one round always
land in distinct blocks; conversely, once a final deck is fixed, every
``j``-block partition with that round-injectivity property is produced by
exactly one shuffle sequence.  ``phi`` and ``phi_inverse`` realize the two
directions of that correspondence, ``iter_segmented_partitions``
enumerates the partitions, and ``q_cardinality`` counts them without
enumeration by summing, over the possible counts of fresh cards per round
(anchor tuples), the number of ways to seat the remaining slots in
already-opened blocks.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass
from functools import cache
from typing import Iterable, Iterator, Sequence

from .permutations import (
    Permutation,
    _compose_decks,
    _deck_from_targets,
    _inverse_deck,
    _min_shuffle_raw,
    min_shuffle_size,
)

# A shuffle sequence: one permutation per round.
ShuffleTuple = tuple[Permutation, ...]


@dataclass(frozen=True)
class ShuffleSpec:
    """A deck size ``n`` together with the shuffle sizes applied in order."""

    n: int
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.n < 1:
            raise ValueError("deck size must be at least 1")
        if not self.a:
            raise ValueError("at least one shuffle size is required")
        for x in self.a:
            if not 1 <= x <= self.n:
                raise ValueError(f"shuffle size {x} outside 1..{self.n}")

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def total(self) -> int:
        return sum(self.a)

    @property
    def j_min(self) -> int:
        """At least this many cards are touched."""
        return max(self.a)

    @property
    def j_max(self) -> int:
        """At most this many cards are touched."""
        return min(self.total, self.n)

    def bounds(self) -> tuple[int, ...]:
        """Cumulative slot counts: round ``i`` owns elements
        ``bounds[i-1]+1 .. bounds[i]``."""
        out = [0]
        for x in self.a:
            out.append(out[-1] + x)
        return tuple(out)


def falling_factorial(m: int, l: int) -> int:
    """Injections of an ``l``-set into an ``m``-set: ``m!/(m-l)!``, 0 if ``l > m``."""
    if m < 0 or l < 0:
        raise ValueError("arguments must be nonnegative")
    return math.perm(m, l)


@cache
def stirling2(k: int, j: int) -> int:
    """Partitions of a ``k``-set into exactly ``j`` nonempty blocks.

    Computed by the classical recurrence S(k,j) = j*S(k-1,j) + S(k-1,j-1),
    deliberately independent of the anchor-sum formula it is tested against.
    """
    if k < 0 or j < 0:
        raise ValueError("arguments must be nonnegative")
    if k == 0:
        return 1 if j == 0 else 0
    if j == 0 or j > k:
        return 0
    return j * stirling2(k - 1, j) + stirling2(k - 1, j - 1)


def bell(k: int) -> int:
    """Partitions of a ``k``-set into any number of blocks, ``k >= 1``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return sum(stirling2(k, j) for j in range(1, k + 1))


def anchor_tuples(spec: ShuffleSpec, j: int) -> Iterator[tuple[int, ...]]:
    """All ways ``(l2, ..., lk)`` to distribute the ``j - a1`` fresh cards
    over rounds ``2..k`` with ``0 <= lc <= ac``, lexicographically."""
    yield from _anchor_tuples(spec.a, j)


def _anchor_tuples(a: tuple[int, ...], j: int) -> Iterator[tuple[int, ...]]:
    rest = a[1:]
    need = j - a[0]
    if need < 0:
        return
    suffix = [0] * (len(rest) + 1)
    for i in range(len(rest) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + rest[i]

    def rec(i: int, need: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if i == len(rest):
            if need == 0:
                yield tuple(acc)
            return
        lo = max(0, need - suffix[i + 1])
        hi = min(rest[i], need)
        for l in range(lo, hi + 1):
            acc.append(l)
            yield from rec(i + 1, need - l, acc)
            acc.pop()

    yield from rec(0, need, [])


def q_cardinality(spec: ShuffleSpec, j: int) -> int:
    """Number of ``j``-block round-partitions for this shuffle sequence;
    0 outside the reachable range ``[max(a), min(sum(a), n)]``."""
    if j < spec.j_min or j > spec.j_max:
        return 0
    return _q_count(spec.a, j)


def _q_count(a: tuple[int, ...], j: int) -> int:
    """Anchor-sum count, with no deck-size truncation."""
    total = 0
    for ls in _anchor_tuples(a, j):
        opened = a[0]
        prod = 1
        for ac, lc in zip(a[1:], ls):
            prod *= math.comb(ac, lc) * math.perm(opened, ac - lc)
            if prod == 0:
                break
            opened += lc
        total += prod
    return total


@dataclass(frozen=True)
class SegmentedPartition:
    """A partition of ``1..m`` into nonempty blocks, stored in increasing
    order of block minima."""

    parts: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        parts = self.parts
        if type(parts) is not tuple or any(type(p) is not frozenset for p in parts):
            parts = tuple(frozenset(int(e) for e in part) for part in self.parts)
        if not parts or any(not part for part in parts):
            raise ValueError("blocks must be nonempty")
        parts = tuple(sorted(parts, key=min))
        object.__setattr__(self, "parts", parts)
        seen: set[int] = set()
        for part in parts:
            if part & seen:
                raise ValueError("blocks must be disjoint")
            seen |= part
        if seen != set(range(1, len(seen) + 1)):
            raise ValueError("blocks must cover an initial integer range")

    @property
    def j(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(len(part) for part in self.parts)

    def block_of(self, element: int) -> int:
        """1-based index of the block containing ``element``."""
        for i, part in enumerate(self.parts):
            if element in part:
                return i + 1
        raise ValueError(f"element {element} not in partition")

    def as_json(self) -> list[list[int]]:
        return [sorted(part) for part in self.parts]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "SegmentedPartition":
        return cls(tuple(frozenset(part) for part in data))


def _round_of(element: int, bounds: tuple[int, ...]) -> int:
    """1-based round owning this slot element, derived from the bounds."""
    return bisect_left(bounds, element)


def respects_rounds(alpha: SegmentedPartition, spec: ShuffleSpec) -> bool:
    """True iff the slots of every round lie in pairwise distinct blocks.

    Together with having the right size, this characterizes the partitions
    reachable from shuffle sequences of the given sizes.
    """
    if alpha.size != spec.total:
        return False
    bounds = spec.bounds()
    for part in alpha.parts:
        rounds = [_round_of(e, bounds) for e in part]
        if len(rounds) != len(set(rounds)):
            return False
    return True


def anchor_signature(alpha: SegmentedPartition, spec: ShuffleSpec) -> tuple[int, ...]:
    """How many blocks each of rounds ``2..k`` opened (their minima counts)."""
    bounds = spec.bounds()
    counts = [0] * spec.k
    for part in alpha.parts:
        counts[_round_of(min(part), bounds) - 1] += 1
    return tuple(counts[1:])


def iter_segmented_partitions(
    spec: ShuffleSpec, j: int
) -> Iterator[SegmentedPartition]:
    """Yield every reachable ``j``-block partition in a fixed order:
    anchor tuples lexicographically, then the anchor slots per round, then
    the placements of the remaining slots into already-opened blocks.

    No deck-size truncation is applied here; callers pass ``j <= n``.
    """
    a = spec.a
    k = spec.k
    bounds = spec.bounds()
    for ls in _anchor_tuples(a, j):
        segments = [
            list(range(bounds[c - 1] + 1, bounds[c] + 1)) for c in range(2, k + 1)
        ]
        anchor_choices = [
            itertools.combinations(seg, lc) for seg, lc in zip(segments, ls)
        ]
        for anchors in itertools.product(*anchor_choices):
            rests = [
                [e for e in seg if e not in set(chosen)]
                for seg, chosen in zip(segments, anchors)
            ]
            opened_before = []
            opened = a[0]
            for lc in ls:
                opened_before.append(opened)
                opened += lc
            placement_iters = [
                itertools.permutations(range(avail), len(rest))
                for avail, rest in zip(opened_before, rests)
            ]
            for placements in itertools.product(*placement_iters):
                blocks: list[set[int]] = [{e} for e in range(1, a[0] + 1)]
                for chosen, rest, placement in zip(anchors, rests, placements):
                    for e in chosen:
                        blocks.append({e})
                    for e, b in zip(rest, placement):
                        blocks[b].add(e)
                yield SegmentedPartition(tuple(frozenset(b) for b in blocks))


def enumerate_segmented_partitions(
    spec: ShuffleSpec, j: int
) -> list[SegmentedPartition]:
    """List form of ``iter_segmented_partitions``."""
    return list(iter_segmented_partitions(spec, j))


def phi(sigmas: Sequence[Permutation], spec: ShuffleSpec) -> SegmentedPartition:
    """The partition recording which shuffle slot touched which card.

    Simulates the rounds on the sorted deck; the number of blocks is the
    number of cards touched, computed here rather than supplied.
    """
    if len(sigmas) != spec.k:
        raise ValueError(f"expected {spec.k} shuffles, got {len(sigmas)}")
    n = spec.n
    touched: list[set[int]] = [set() for _ in range(n)]
    deck = tuple(range(1, n + 1))
    element = 0
    for sigma, ai in zip(sigmas, spec.a):
        if sigma.n != n:
            raise ValueError(f"deck size {sigma.n} does not match spec size {n}")
        if _min_shuffle_raw(sigma.deck) > ai:
            raise ValueError(
                f"{sigma.deck!r} cannot result from shuffling {ai} cards"
            )
        for d in range(ai):
            touched[deck[d] - 1].add(element + d + 1)
        element += ai
        deck = _compose_decks(deck, sigma.deck)
    j = sum(1 for s in touched if s)
    if any(not touched[c] for c in range(j)):
        raise ValueError("touched cards do not form an initial run")
    return SegmentedPartition(tuple(frozenset(touched[c]) for c in range(j)))


def phi_inverse(
    alpha: SegmentedPartition, t: Permutation, spec: ShuffleSpec
) -> ShuffleTuple:
    """The unique shuffle sequence with round-partition ``alpha`` whose
    left-to-right composite is ``t``.

    Unwinds the rounds from the last: in each intermediate deck, the slots
    of the current round must have sent their cards to the positions those
    cards now occupy.
    """
    j = alpha.j
    n = spec.n
    if t.n != n:
        raise ValueError(f"deck size {t.n} does not match spec size {n}")
    if alpha.size != spec.total:
        raise ValueError(
            f"partition covers {alpha.size} slots, spec has {spec.total}"
        )
    if not (max(1, min_shuffle_size(t)) <= j <= n):
        raise ValueError(
            f"deck {t.deck!r} cannot result from shuffling {j} cards"
        )
    if not respects_rounds(alpha, spec):
        raise ValueError("some round has two slots in the same block")

    card_of = [0] * (spec.total + 1)
    for b, part in enumerate(alpha.parts, start=1):
        for e in part:
            card_of[e] = b

    bounds = spec.bounds()
    deck = t.deck
    sigmas: list[Permutation] = [None] * spec.k  # type: ignore[list-item]
    for i in range(spec.k, 0, -1):
        pos = [0] * (n + 1)
        for idx, c in enumerate(deck):
            pos[c] = idx + 1
        targets = [pos[card_of[bounds[i - 1] + d]] for d in range(1, spec.a[i - 1] + 1)]
        sdeck = _deck_from_targets(targets, n)
        sigmas[i - 1] = Permutation(sdeck)
        deck = _compose_decks(deck, _inverse_deck(sdeck))
    if deck != tuple(range(1, n + 1)):
        raise ValueError("partition does not rebuild the sorted deck")
    return tuple(sigmas)
