"""Freely reduced words over ranked free groups and maps between them.

A letter is a (generator, sign) pair with sign +1 or -1.  Words are kept
reduced at all times; concatenation only re-reduces at the seam, so mapping
a word through a homomorphism stays linear in the output length.  All values
are immutable and all operations pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import InputError, ParseError


class Letter(NamedTuple):
    generator: int
    sign: int


@dataclass(frozen=True)
class Word:
    """A freely reduced word in the free group of the given rank."""

    rank: int
    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def inverse(self) -> Word:
        return Word(self.rank, tuple(Letter(g, -s) for g, s in reversed(self.letters)))

    def format(self, names: list[str] | tuple[str, ...] | None = None) -> str:
        if not self.letters:
            return "1"
        def name(g):
            return names[g] if names is not None else f"g{g}"
        return " ".join(name(g) if s > 0 else f"{name(g)}^-1" for g, s in self.letters)


def empty_word(rank: int) -> Word:
    return Word(rank, ())


def generator_word(rank: int, gen: int, sign: int = 1) -> Word:
    return reduce([(gen, sign)], rank)


def reduce(letters, rank: int) -> Word:
    """Freely reduce a raw letter sequence; idempotent."""
    stack: list[Letter] = []
    for raw in letters:
        g, s = raw
        if not 0 <= g < rank:
            raise InputError(f"generator index {g} out of range for rank {rank}")
        if s not in (1, -1):
            raise InputError(f"letter sign must be +1 or -1, got {s}")
        if stack and stack[-1].generator == g and stack[-1].sign == -s:
            stack.pop()
        else:
            stack.append(Letter(g, s))
    return Word(rank, tuple(stack))


def concat(first: Word, second: Word) -> Word:
    """Product of two reduced words, cancelling only at the seam."""
    if first.rank != second.rank:
        raise InputError(f"rank mismatch: {first.rank} vs {second.rank}")
    left = list(first.letters)
    right = second.letters
    i = 0
    while left and i < len(right) and left[-1].generator == right[i].generator \
            and left[-1].sign == -right[i].sign:
        left.pop()
        i += 1
    return Word(first.rank, tuple(left) + right[i:])


@dataclass(frozen=True)
class FreeHom:
    """A homomorphism between free groups, given by generator images."""

    source_rank: int
    target_rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.source_rank:
            raise InputError(
                f"need {self.source_rank} generator images, got {len(self.images)}"
            )
        for w in self.images:
            if w.rank != self.target_rank:
                raise InputError(f"image rank {w.rank} does not match target {self.target_rank}")

    def apply(self, word: Word) -> Word:
        """Image of a word, letter by letter, freely reduced."""
        if word.rank != self.source_rank:
            raise InputError(f"word rank {word.rank} does not match source {self.source_rank}")
        out: list[Letter] = []
        for g, s in word.letters:
            image = self.images[g].letters if s > 0 else self.images[g].inverse().letters
            for letter in image:
                if out and out[-1].generator == letter.generator and out[-1].sign == -letter.sign:
                    out.pop()
                else:
                    out.append(letter)
        return Word(self.target_rank, tuple(out))


def identity_hom(rank: int) -> FreeHom:
    return FreeHom(rank, rank, tuple(generator_word(rank, g) for g in range(rank)))


def compose(inner: FreeHom, outer: FreeHom) -> FreeHom:
    """The homomorphism sending each generator through inner, then outer."""
    if inner.target_rank != outer.source_rank:
        raise InputError(
            f"rank mismatch: inner targets {inner.target_rank}, outer expects {outer.source_rank}"
        )
    return FreeHom(
        inner.source_rank,
        outer.target_rank,
        tuple(outer.apply(w) for w in inner.images),
    )


def evaluate(word: Word, group, tup) -> int:
    """Evaluate a word at a tuple of group-element indices, left to right.

    The empty word evaluates to the identity.  tup[i] is the image of
    generator i, so this is the homomorphism F_rank -> G determined by tup.
    """
    if word.rank != len(tup):
        raise InputError(f"word rank {word.rank} does not match tuple length {len(tup)}")
    acc = 0
    for g, s in word.letters:
        elt = tup[g] if s > 0 else group.inv(tup[g])
        acc = group.mul(acc, elt)
    return acc


def parse_word(text: str, names: dict[str, int], rank: int, line: int | None = None) -> Word:
    """Parse a whitespace-separated word; "name^-1" is an inverse letter."""
    letters = []
    for token in text.split():
        sign = 1
        name = token
        if token.endswith("^-1"):
            sign = -1
            name = token[: -len("^-1")]
        if name not in names:
            raise ParseError(f"unknown letter {name!r}", line=line)
        letters.append((names[name], sign))
    return reduce(letters, rank)
