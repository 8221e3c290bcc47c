"""Braid words on n strands: letter i is sigma_i, -i its inverse."""

import random
from dataclasses import dataclass
from typing import List, Tuple

from app.core.exceptions import IndexOutOfRange


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise IndexOutOfRange(f"a braid needs at least one strand, got {self.strands}")
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise IndexOutOfRange(f"generator {letter} is out of range on {self.strands} strands")

    @property
    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    @property
    def crossings(self) -> int:
        return len(self.letters)

    def permutation(self) -> List[int]:
        """Where each top position ends up at the bottom"""
        position = list(range(self.strands))
        for letter in self.letters:
            i = abs(letter) - 1
            position[i], position[i + 1] = position[i + 1], position[i]
        return position

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        strands = max(self.strands, other.strands)
        return BraidWord(strands, self.letters + other.letters)

    def stabilize(self, sign: int = 1) -> "BraidWord":
        """Append sigma_n^(+-1) on n + 1 strands"""
        return BraidWord(self.strands + 1, self.letters + (sign * self.strands,))

    def conjugate(self, by: "BraidWord") -> "BraidWord":
        return by * self * by.inverse()

    def __str__(self):
        return " ".join(str(x) for x in self.letters)


def random_word(rng: random.Random, strands: int, length: int) -> BraidWord:
    if strands == 1:
        return BraidWord(1)
    letters = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]
    return BraidWord(strands, tuple(letters))
