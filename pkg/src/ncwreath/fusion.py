"""The fusion ring of words over a discrete group.

Irreducible representations are indexed by finite words of group elements
(letters equal to the identity are significant and never reduced; the empty
word is the trivial representation). The tensor product of two words expands
by cancelling an involuted suffix of the first against a prefix of the
second, each cancellation contributing the plain concatenation and — when
both remainders are nonempty — their fusion, which multiplies the boundary
letters.

A dimension homomorphism evaluates words against the dimension ``n`` of the
underlying algebra, and a free-product layer fuses alternating words over
several factor rings, covering states that split into several delta-form
factors.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import DomainError, ValidationError
from .groups import Group

__all__ = [
    "Word",
    "involution",
    "concat",
    "fuse_words",
    "fusion_product",
    "dimension",
    "multiplicity_of_trivial",
    "a_rep_trivial_multiplicity",
    "WordRing",
    "AlternatingWord",
    "free_product_fusion",
    "sorted_combination",
]

MIN_FUSION_DIM = 4


@dataclass(frozen=True)
class Word:
    """A finite sequence of group elements labeling one irreducible."""

    group: Group
    letters: tuple

    def __post_init__(self) -> None:
        letters = tuple(self.group.check(g) for g in self.letters)
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def names(self) -> list[str]:
        return [self.group.element_name(g) for g in self.letters]


def _same_group(x: Word, y: Word) -> Group:
    if x.group != y.group:
        raise DomainError("words belong to different groups")
    return x.group


def involution(x: Word) -> Word:
    """The word of inverted letters in reversed order (the conjugate label)."""
    return Word(x.group, tuple(x.group.inv(g) for g in reversed(x.letters)))


def concat(x: Word, y: Word) -> Word:
    _same_group(x, y)
    return Word(x.group, x.letters + y.letters)


def fuse_words(x: Word, y: Word) -> Word:
    """Merge the last letter of ``x`` into the first of ``y`` by group
    multiplication; both words must be nonempty."""
    group = _same_group(x, y)
    if not x.letters or not y.letters:
        raise DomainError("fusion needs two nonempty words")
    merged = group.mul(x.letters[-1], y.letters[0])
    return Word(group, x.letters[:-1] + (merged,) + y.letters[1:])


def fusion_product(x: Word, y: Word) -> Counter:
    """Decompose the tensor product of two word representations.

    Every suffix ``t`` of ``x`` whose involution is a prefix of ``y``
    contributes the concatenation of the remainders, plus their fusion when
    both remainders are nonempty; the returned counter maps words to
    multiplicities.
    """
    group = _same_group(x, y)
    out: Counter = Counter()
    for cut in range(min(len(x), len(y)) + 1):
        suffix = Word(group, x.letters[len(x) - cut :])
        if involution(suffix).letters != y.letters[:cut]:
            continue
        u = Word(group, x.letters[: len(x) - cut])
        v = Word(group, y.letters[cut:])
        out[concat(u, v)] += 1
        if u.letters and v.letters:
            out[fuse_words(u, v)] += 1
    return out


@functools.lru_cache(maxsize=None)
def _dimension_cached(x: Word, n: int) -> int:
    group = x.group
    if not x.letters:
        return 1
    head = Word(group, x.letters[:-1])
    last = x.letters[-1]
    single = n - (1 if last == group.identity() else 0)
    if not head.letters:
        return single
    value = _dimension_cached(head, n) * single
    value -= _dimension_cached(fuse_words(head, Word(group, (last,))), n)
    if head.letters[-1] == group.inv(last):
        value -= _dimension_cached(Word(group, head.letters[:-1]), n)
    return value


def dimension(x: Word, n: int) -> int:
    """Dimension of the word representation over an algebra of dimension
    ``n``; defined (and strictly positive) for ``n >= 4``."""
    if n < MIN_FUSION_DIM:
        raise DomainError(
            f"word dimensions need an algebra of dimension >= {MIN_FUSION_DIM}, got {n}"
        )
    return _dimension_cached(x, n)


def multiplicity_of_trivial(x: Word, y: Word) -> int:
    """Multiplicity of the trivial representation in the product of two
    words: one exactly when ``y`` is the involution of ``x``."""
    _same_group(x, y)
    return 1 if y == involution(x) else 0


def a_rep_trivial_multiplicity(group: Group, letters: Sequence[Any]) -> int:
    """Multiplicity of the trivial representation in the tensor product of
    the basic representations of the given letters.

    Each basic representation splits as the word of its letter plus, for the
    identity letter, one copy of the trivial representation; the product is
    expanded left to right. Words too long to cancel down to the empty word
    within the remaining steps are dropped early.
    """
    letters = tuple(group.check(g) for g in letters)
    state: Counter = Counter({Word(group, ()): 1})
    for step, g in enumerate(letters):
        remaining = len(letters) - step - 1
        single = Word(group, (g,))
        is_identity = g == group.identity()
        next_state: Counter = Counter()
        for word, mult in state.items():
            if is_identity:
                next_state[word] += mult
            for product, extra in fusion_product(word, single).items():
                if len(product) <= remaining:
                    next_state[product] += mult * extra
        state = next_state
    return state[Word(group, ())]


@dataclass(frozen=True)
class WordRing:
    """The word fusion ring attached to one algebra factor of dimension
    ``dim``; the factor interface used by free products."""

    group: Group
    dim: int

    def __post_init__(self) -> None:
        if self.dim < MIN_FUSION_DIM:
            raise DomainError(
                f"factor rings need dimension >= {MIN_FUSION_DIM}, got {self.dim}"
            )

    def trivial(self) -> Word:
        return Word(self.group, ())

    def involution(self, x: Word) -> Word:
        return involution(x)

    def fuse(self, x: Word, y: Word) -> Counter:
        return fusion_product(x, y)

    def dimension_of(self, x: Word) -> int:
        return dimension(x, self.dim)


@dataclass(frozen=True)
class AlternatingWord:
    """A reduced word of a free product: pairs (factor index, nontrivial
    label) with adjacent factor indices distinct."""

    entries: tuple

    def __post_init__(self) -> None:
        entries = tuple((int(i), label) for i, label in self.entries)
        object.__setattr__(self, "entries", entries)
        for (i, _), (j, _) in zip(entries, entries[1:]):
            if i == j:
                raise ValidationError(f"adjacent entries share factor {i}")
        for _, label in entries:
            if not len(label):
                raise ValidationError("alternating words carry nontrivial labels only")

    def __len__(self) -> int:
        return len(self.entries)


def _check_alternating_word(
    rings: Sequence[WordRing], w: AlternatingWord
) -> None:
    for i, label in w.entries:
        if not 0 <= i < len(rings):
            raise DomainError(f"factor index {i} out of range")
        if label.group != rings[i].group:
            raise DomainError(
                f"label group does not match factor {i}'s ring"
            )


def free_product_fusion(
    rings: Sequence[WordRing], w1: AlternatingWord, w2: AlternatingWord
) -> Counter:
    """Fuse two alternating words over the given factor rings.

    Distinct boundary factors concatenate; equal boundary factors fuse their
    boundary labels inside that factor, splicing each nontrivial result and
    recursing on the truncations weighted by the trivial multiplicity.
    """
    rings = list(rings)
    _check_alternating_word(rings, w1)
    _check_alternating_word(rings, w2)
    return _free_product_fusion(tuple(rings), w1, w2)


def _free_product_fusion(
    rings: tuple, w1: AlternatingWord, w2: AlternatingWord
) -> Counter:
    if not w1.entries:
        return Counter({w2: 1})
    if not w2.entries:
        return Counter({w1: 1})
    (i, a), (j, b) = w1.entries[-1], w2.entries[0]
    if i != j:
        return Counter({AlternatingWord(w1.entries + w2.entries): 1})
    ring = rings[i]
    out: Counter = Counter()
    combination = ring.fuse(a, b)
    for label, mult in combination.items():
        if len(label):
            out[AlternatingWord(w1.entries[:-1] + ((i, label),) + w2.entries[1:])] += mult
    trivial_mult = combination[ring.trivial()]
    if trivial_mult:
        inner = _free_product_fusion(
            rings,
            AlternatingWord(w1.entries[:-1]),
            AlternatingWord(w2.entries[1:]),
        )
        for word, mult in inner.items():
            out[word] += trivial_mult * mult
    return out


def _word_sort_key(x: Word):
    return (len(x.letters), x.letters)


def sorted_combination(combination: Counter) -> list[tuple[Any, int]]:
    """Deterministic listing of a fusion result: words by length then letter
    order; alternating words by length then entry order."""

    def key(item):
        label = item[0]
        if isinstance(label, Word):
            return (0, _word_sort_key(label))
        return (
            1,
            (
                len(label.entries),
                tuple((i, _word_sort_key(w)) for i, w in label.entries),
            ),
        )

    return sorted(combination.items(), key=key)
