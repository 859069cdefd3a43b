"""Decks whose cards carry group-element faces, and their shuffle algebra.

A card here is a pair (face, label): shuffling may both move a card and
turn it to show a different face, with faces multiplying along the way.
``hat_top_to_random`` sums over all reinsertions of the top cards with
every face spun independently; its products expand exactly like the plain
case, scaled by a power of the group order, because a fixed final face
factors into touch-count many group elements in equally many ways
regardless of the face (``factorization_count``).

Groups are supplied as validated multiplication tables with element 0 the
identity, so arbitrary finite groups (including nonabelian ones) work.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from .coefficients import ShuffleSpec, q_cardinality
from .errors import CapExceeded
from .permutations import Permutation, _deck_from_targets, _min_shuffle_raw

DEFAULT_TUPLE_CAP = 10**7
DEFAULT_FACTORIZATION_CAP = 10**6


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``cayley[a][b]`` is the product ``a * b``; element 0 is the identity in
    every instance and serialization.  Closure, associativity, the identity
    row/column, and two-sided inverses are all checked on construction.
    """

    __slots__ = ("cayley", "inverse")

    def __init__(self, cayley: Sequence[Sequence[int]]):
        table = tuple(tuple(int(x) for x in row) for row in cayley)
        m = len(table)
        if m == 0:
            raise ValueError("group must have at least one element")
        for row in table:
            if len(row) != m:
                raise ValueError("multiplication table must be square")
            for x in row:
                if not 0 <= x < m:
                    raise ValueError(f"table entry {x} outside 0..{m - 1}")
        for i in range(m):
            if table[0][i] != i or table[i][0] != i:
                raise ValueError("element 0 must act as the identity")
        for a in range(m):
            row_a = table[a]
            for b in range(m):
                ab = row_a[b]
                row_b = table[b]
                tab_ab = table[ab]
                for c in range(m):
                    if tab_ab[c] != row_a[row_b[c]]:
                        raise ValueError("multiplication table is not associative")
        inv = []
        for a in range(m):
            for b in range(m):
                if table[a][b] == 0 and table[b][a] == 0:
                    inv.append(b)
                    break
            else:
                raise ValueError(f"element {a} has no two-sided inverse")
        self.cayley = table
        self.inverse = tuple(inv)

    @property
    def order(self) -> int:
        return len(self.cayley)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.cayley == other.cayley

    def __hash__(self) -> int:
        return hash(self.cayley)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    @classmethod
    def cyclic(cls, m: int) -> "FiniteGroup":
        """Integers mod ``m`` under addition."""
        if m < 1:
            raise ValueError("order must be at least 1")
        return cls(tuple(tuple((i + j) % m for j in range(m)) for i in range(m)))

    @classmethod
    def symmetric_3(cls) -> "FiniteGroup":
        """The nonabelian order-6 group of permutations of three letters,
        multiplied left to right; element 0 is the identity."""
        elems = sorted(itertools.permutations(range(3)))
        index = {e: i for i, e in enumerate(elems)}
        table = tuple(
            tuple(index[tuple(q[p[x]] for x in range(3))] for q in elems)
            for p in elems
        )
        return cls(table)

    def as_json(self) -> dict:
        return {"order": self.order, "cayley": [list(row) for row in self.cayley]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        group = cls(data["cayley"])
        if "order" in data and int(data["order"]) != group.order:
            raise ValueError("declared order does not match table size")
        return group


@dataclass(frozen=True)
class GPermutation:
    """A deck of faced cards: ``deck[i] = (face, card)`` says ``card`` sits
    at position ``i + 1`` showing ``face`` (an index into a group)."""

    deck: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        deck = tuple((int(f), int(c)) for f, c in self.deck)
        object.__setattr__(self, "deck", deck)
        n = len(deck)
        if n == 0:
            raise ValueError("empty deck")
        if sorted(c for _, c in deck) != list(range(1, n + 1)):
            raise ValueError("card labels must form a permutation of 1..n")
        if any(f < 0 for f, _ in deck):
            raise ValueError("faces are nonnegative group-element indices")

    @property
    def n(self) -> int:
        return len(self.deck)

    def __abs__(self) -> Permutation:
        """The underlying deck with every face erased."""
        return Permutation(tuple(c for _, c in self.deck))

    def position_of(self, card: int) -> int:
        for i, (_, c) in enumerate(self.deck):
            if c == card:
                return i + 1
        raise ValueError(f"no card {card}")

    def face_of(self, card: int) -> int:
        for f, c in self.deck:
            if c == card:
                return f
        raise ValueError(f"no card {card}")

    @classmethod
    def plain(cls, p: Permutation) -> "GPermutation":
        """The deck ``p`` with every card showing the identity face."""
        return cls(tuple((0, c) for c in p.deck))

    @classmethod
    def identity(cls, n: int) -> "GPermutation":
        if n < 1:
            raise ValueError("deck size must be at least 1")
        return cls(tuple((0, c) for c in range(1, n + 1)))

    def as_json(self) -> list[dict]:
        return [{"face": f, "card": c} for f, c in self.deck]

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "GPermutation":
        return cls(tuple((int(b["face"]), int(b["card"])) for b in data))


def _sort_key(gp: GPermutation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical order: by underlying deck, then by faces along positions."""
    return tuple(c for _, c in gp.deck), tuple(f for f, _ in gp.deck)


def _check_faces(gp: GPermutation, group: FiniteGroup) -> None:
    if any(f >= group.order for f, _ in gp.deck):
        raise ValueError(f"face index out of range for a group of order {group.order}")


# Raw form used in enumerations: (positions by card, faces by card), 0-based
# card indices.  Composition is cheap in this form.

def _to_raw(gp: GPermutation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = gp.n
    pos = [0] * n
    face = [0] * n
    for i, (f, c) in enumerate(gp.deck):
        pos[c - 1] = i + 1
        face[c - 1] = f
    return tuple(pos), tuple(face)


def _from_raw(raw: tuple[tuple[int, ...], tuple[int, ...]]) -> GPermutation:
    pos, face = raw
    deck: list[tuple[int, int]] = [(0, 0)] * len(pos)
    for c0, p in enumerate(pos):
        deck[p - 1] = (face[c0], c0 + 1)
    return GPermutation(tuple(deck))


def _g_compose_raw(s, t, cayley):
    spos, sface = s
    tpos, tface = t
    pos = tuple(tpos[p - 1] for p in spos)
    face = tuple(cayley[f][tface[p - 1]] for f, p in zip(sface, spos))
    return pos, face


def g_compose(s: GPermutation, t: GPermutation, group: FiniteGroup) -> GPermutation:
    """Left-to-right product: card ``m`` chains through both position maps,
    and its face is ``s``'s face times the face ``t`` gives the card index
    ``s`` sent ``m`` to."""
    if s.n != t.n:
        raise ValueError(f"deck sizes differ: {s.n} != {t.n}")
    _check_faces(s, group)
    _check_faces(t, group)
    return _from_raw(_g_compose_raw(_to_raw(s), _to_raw(t), group.cayley))


class GAlgebraElement:
    """A finite sum of faced decks with nonnegative integer coefficients."""

    __slots__ = ("n", "group", "_terms")

    def __init__(self, n: int, group: FiniteGroup, terms: Mapping[GPermutation, int]):
        if n < 1:
            raise ValueError("deck size must be at least 1")
        pruned: dict[GPermutation, int] = {}
        for gp, c in terms.items():
            if c < 0:
                raise ValueError("coefficients must be nonnegative")
            if c == 0:
                continue
            if gp.n != n:
                raise ValueError(f"term of size {gp.n} in an element of size {n}")
            _check_faces(gp, group)
            pruned[gp] = c
        self.n = n
        self.group = group
        self._terms = pruned

    @property
    def terms(self) -> Mapping[GPermutation, int]:
        return MappingProxyType(self._terms)

    def coefficient(self, gp: GPermutation) -> int:
        return self._terms.get(gp, 0)

    @property
    def mass(self) -> int:
        return sum(self._terms.values())

    def sorted_terms(self) -> list[tuple[GPermutation, int]]:
        return sorted(self._terms.items(), key=lambda item: _sort_key(item[0]))

    def scale(self, c: int) -> "GAlgebraElement":
        if c < 0:
            raise ValueError("coefficients must be nonnegative")
        return GAlgebraElement(
            self.n, self.group, {gp: c * v for gp, v in self._terms.items()}
        )

    def __add__(self, other: "GAlgebraElement") -> "GAlgebraElement":
        if self.n != other.n or self.group != other.group:
            raise ValueError("elements live in different algebras")
        out = dict(self._terms)
        for gp, c in other._terms.items():
            out[gp] = out.get(gp, 0) + c
        return GAlgebraElement(self.n, self.group, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GAlgebraElement):
            return NotImplemented
        return (
            self.n == other.n
            and self.group == other.group
            and self._terms == other._terms
        )

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        return (
            f"GAlgebraElement(n={self.n}, order={self.group.order}, "
            f"terms={len(self._terms)}, mass={self.mass})"
        )

    def as_json(self) -> dict:
        return {
            "n": self.n,
            "group": self.group.as_json(),
            "terms": [
                {"deck": gp.as_json(), "coeff": str(c)}
                for gp, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GAlgebraElement":
        group = FiniteGroup.from_json(data["group"])
        return cls(
            int(data["n"]),
            group,
            {
                GPermutation.from_json(t["deck"]): int(t["coeff"])
                for t in data["terms"]
            },
        )


def _hat_decks_raw(a: int, n: int, order: int) -> Iterator[tuple]:
    """Raw terms of ``hat_top_to_random``: positions lexicographic, then
    faces lexicographic."""
    identity_faces = (0,) * (n - a)
    for targets in itertools.permutations(range(1, n + 1), a):
        base = _deck_from_targets(targets, n)
        pos = [0] * n
        for i, c in enumerate(base):
            pos[c - 1] = i + 1
        pos = tuple(pos)
        for faces in itertools.product(range(order), repeat=a):
            yield pos, faces + identity_faces


def hat_top_to_random(a: int, n: int, group: FiniteGroup) -> GAlgebraElement:
    """Sum of every deck reachable by reinserting cards ``1..a`` with each
    of their faces spun independently; untouched cards keep the identity
    face.  Has ``order**a * P(n, a)`` terms, all with coefficient 1."""
    if not 1 <= a <= n:
        raise ValueError(f"shuffle size {a} outside 1..{n}")
    return GAlgebraElement(
        n, group, {_from_raw(r): 1 for r in _hat_decks_raw(a, n, group.order)}
    )


def g_multiply(x: GAlgebraElement, y: GAlgebraElement) -> GAlgebraElement:
    """Convolution product in the faced-deck algebra."""
    if x.n != y.n or x.group != y.group:
        raise ValueError("elements live in different algebras")
    cayley = x.group.cayley
    xs = [(_to_raw(gp), c) for gp, c in x.terms.items()]
    ys = [(_to_raw(gp), c) for gp, c in y.terms.items()]
    out: dict[tuple, int] = {}
    for rp, cp in xs:
        for rq, cq in ys:
            r = _g_compose_raw(rp, rq, cayley)
            out[r] = out.get(r, 0) + cp * cq
    return GAlgebraElement(x.n, x.group, {_from_raw(r): c for r, c in out.items()})


def factorization_count(l: int, g: int, group: FiniteGroup) -> int:
    """Number of ``l``-tuples of group elements whose product is ``g``:
    ``order**(l-1)``, the same for every ``g``."""
    if l < 1:
        raise ValueError("tuple length must be at least 1")
    if not 0 <= g < group.order:
        raise ValueError(f"element {g} outside 0..{group.order - 1}")
    return group.order ** (l - 1)


def factorization_counts_by_enumeration(
    l: int, group: FiniteGroup, cap: int = DEFAULT_FACTORIZATION_CAP
) -> tuple[int, ...]:
    """Per-element tuple counts obtained by walking all ``order**l`` tuples;
    the independent check of ``factorization_count``."""
    if l < 1:
        raise ValueError("tuple length must be at least 1")
    required = group.order**l
    if required > cap:
        raise CapExceeded(required, cap)
    order = group.order
    cayley = group.cayley
    counts = [0] * order

    def walk(depth: int, acc: int) -> None:
        if depth == l:
            counts[acc] += 1
            return
        row = cayley[acc]
        for x in range(order):
            walk(depth + 1, row[x])

    walk(0, 0)
    return tuple(counts)


def predicted_g_tuple_count(spec: ShuffleSpec, group: FiniteGroup) -> int:
    return math.prod(
        group.order**ai * math.perm(spec.n, ai) for ai in spec.a
    )


def g_brute_force_product(
    spec: ShuffleSpec, group: FiniteGroup, cap: int = DEFAULT_TUPLE_CAP
) -> GAlgebraElement:
    """Exact product of the spec's faced shuffle sums by exhaustive walk of
    all term tuples, composing left to right along shared prefixes."""
    required = predicted_g_tuple_count(spec, group)
    if required > cap:
        raise CapExceeded(required, cap)
    n = spec.n
    cayley = group.cayley
    factors = [list(_hat_decks_raw(ai, n, group.order)) for ai in spec.a]
    k = len(factors)
    tally: Counter = Counter()

    def walk(depth: int, cur) -> None:
        if depth == k - 1:
            for t in factors[depth]:
                tally[_g_compose_raw(cur, t, cayley)] += 1
            return
        for t in factors[depth]:
            walk(depth + 1, _g_compose_raw(cur, t, cayley))

    walk(0, (tuple(range(1, n + 1)), (0,) * n))
    return GAlgebraElement(n, group, {_from_raw(r): c for r, c in tally.items()})


def g_expansion(spec: ShuffleSpec, group: FiniteGroup) -> dict[int, int]:
    """Coefficients ``{c: count}`` with the product of the spec's faced
    shuffle sums equal to ``sum_c count * hat_top_to_random(c, n)``: the
    plain count at ``c`` times ``order**(sum(a) - c)``."""
    out: dict[int, int] = {}
    for c in range(spec.j_min, spec.j_max + 1):
        q = q_cardinality(spec, c)
        if q:
            out[c] = q * group.order ** (spec.total - c)
    return out


def g_expansion_element(spec: ShuffleSpec, group: FiniteGroup) -> GAlgebraElement:
    """The faced expansion materialized as one element, for comparison
    against ``g_brute_force_product``."""
    terms: dict[GPermutation, int] = {}
    for c, coeff in g_expansion(spec, group).items():
        for raw in _hat_decks_raw(c, spec.n, group.order):
            gp = _from_raw(raw)
            terms[gp] = terms.get(gp, 0) + coeff
    return GAlgebraElement(spec.n, group, terms)


def is_hat_term(target: GPermutation, c: int, group: FiniteGroup) -> bool:
    """Is ``target`` in the support of ``hat_top_to_random(c, n, group)``?

    Needs the underlying deck to be reachable by a ``c``-card shuffle and
    every card beyond ``c`` to show the identity face.
    """
    _check_faces(target, group)
    if not 1 <= c <= target.n:
        return False
    if _min_shuffle_raw(tuple(card for _, card in target.deck)) > c:
        return False
    return all(f == 0 for f, card in target.deck if card > c)


def bar_element(p: Permutation, group: FiniteGroup) -> GAlgebraElement:
    """Sum of all ``order**n`` ways to put a face on every card of ``p``."""
    n = p.n
    terms = {
        GPermutation(tuple(zip(faces, p.deck))): 1
        for faces in itertools.product(range(group.order), repeat=n)
    }
    return GAlgebraElement(n, group, terms)


def bar_lift(x, group: FiniteGroup) -> GAlgebraElement:
    """Face-spin every term of a plain element, keeping its coefficients."""
    terms: dict[GPermutation, int] = {}
    for p, c in x.terms.items():
        for faces in itertools.product(range(group.order), repeat=p.n):
            terms[GPermutation(tuple(zip(faces, p.deck)))] = c
    return GAlgebraElement(x.n, group, terms)


def bar_lift_expansion(
    base_coefficients: Mapping, k: int, n: int, group: FiniteGroup
) -> dict:
    """Lift any nonnegative k-fold expansion to fully-faced decks: every
    coefficient picks up the factor ``(order**(k-1))**n``, since each of
    the ``n`` final faces factors into ``k`` touches in ``order**(k-1)``
    ways."""
    if k < 1:
        raise ValueError("number of factors must be at least 1")
    if n < 1:
        raise ValueError("deck size must be at least 1")
    if any(c < 0 for c in base_coefficients.values()):
        raise ValueError("base coefficients must be nonnegative")
    factor = (group.order ** (k - 1)) ** n
    return {r: c * factor for r, c in base_coefficients.items()}
