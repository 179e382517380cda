"""Exact braid-group word problem via the Artin action on the free group.

Free-group words are tuples of non-zero ints: ``k`` stands for ``x_k`` and
``-k`` for its inverse. A braid word acts through the composition
``phi(b_j1) o phi(b_j2) o ... o phi(b_jl)``: tiles are read left to right and
each new tile is composed on the right. Underlying permutations use the same
order, so ``b1 b2`` on three strands is the cycle 1 -> 2 -> 3 -> 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .motif import ContractError

FreeWord = tuple[int, ...]


def reduce_word(letters: Iterable[int]) -> FreeWord:
    """Freely reduce a word by cancelling adjacent inverse letters."""
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def invert_word(w: Sequence[int]) -> FreeWord:
    return tuple(-a for a in reversed(w))


@dataclass(frozen=True)
class ArtinAutomorphism:
    """Automorphism of the free group F_n given by the images of x_1..x_n."""

    images: tuple[FreeWord, ...]

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> ArtinAutomorphism:
        return cls(tuple((k,) for k in range(1, n + 1)))

    def apply(self, word: Sequence[int]) -> FreeWord:
        out: list[int] = []
        for a in word:
            out.extend(self.images[a - 1] if a > 0 else invert_word(self.images[-a - 1]))
        return reduce_word(out)

    def compose(self, other: ArtinAutomorphism) -> ArtinAutomorphism:
        """``self o other``: apply ``other`` first, then ``self``."""
        if other.n != self.n:
            raise ContractError("automorphisms of free groups of different rank")
        return ArtinAutomorphism(tuple(self.apply(w) for w in other.images))

    def is_identity(self) -> bool:
        return self == ArtinAutomorphism.identity(self.n)


def _check_generator(i: int, n: int) -> None:
    if n < 2:
        raise ContractError("strand count must be >= 2")
    if i == 0 or abs(i) > n - 1:
        raise ContractError(f"generator index {i} out of range for {n} strands")


def artin_generator(i: int, n: int) -> ArtinAutomorphism:
    """Artin automorphism of ``b_i``; negative ``i`` gives the inverse of ``b_|i|``.

    ``b_i``: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i, other generators fixed.
    """
    _check_generator(i, n)
    images = [(k,) for k in range(1, n + 1)]
    k = abs(i)
    if i > 0:
        images[k - 1] = (k, k + 1, -k)
        images[k] = (k,)
    else:
        images[k - 1] = (k + 1,)
        images[k] = (-(k + 1), k, k + 1)
    return ArtinAutomorphism(tuple(images))


def _step(images: list[FreeWord], t: int) -> None:
    """In place: ``images <- images o phi(b_t)``."""
    k = abs(t)
    a, b = images[k - 1], images[k]
    if t > 0:
        images[k - 1] = reduce_word(a + b + invert_word(a))
        images[k] = a
    else:
        images[k - 1] = b
        images[k] = reduce_word(invert_word(b) + a + b)


@dataclass(frozen=True)
class BraidClassKey:
    """Canonical certificate of a braid-group element: its automorphism images."""

    n: int
    images: tuple[FreeWord, ...]

    def to_line(self) -> str:
        """``n=<n> | <image 1> | ... | <image n>``, each image as ``gen^exp`` tokens."""
        parts = [" ".join(f"{abs(a)}^{1 if a > 0 else -1}" for a in w) or "e" for w in self.images]
        return f"n={self.n} | " + " | ".join(parts)

    @classmethod
    def from_line(cls, line: str) -> BraidClassKey:
        head, *parts = [p.strip() for p in line.strip().split("|")]
        if not head.startswith("n="):
            raise ValueError(f"malformed key line: {line!r}")
        images = []
        for p in parts:
            letters = []
            if p != "e":
                for tok in p.split():
                    g, e = tok.split("^")
                    letters.append(int(g) if int(e) > 0 else -int(g))
            images.append(tuple(letters))
        return cls(int(head[2:]), tuple(images))

    def is_identity(self) -> bool:
        return all(w == (k,) for k, w in enumerate(self.images, start=1))


def _tiles_of(beta) -> tuple[Sequence[int], int]:
    return beta.tiles, beta.n


def key_of_tiles(tiles: Sequence[int], n: int) -> BraidClassKey:
    images: list[FreeWord] = [(k,) for k in range(1, n + 1)]
    for t in tiles:
        if t:
            _check_generator(t, n)
            _step(images, t)
    return BraidClassKey(n, tuple(images))


def braid_key(beta) -> BraidClassKey:
    tiles, n = _tiles_of(beta)
    return key_of_tiles(tiles, n)


def braids_equal(beta1, beta2) -> bool:
    if beta1.n != beta2.n:
        raise ContractError(f"strand counts differ: {beta1.n} vs {beta2.n}")
    return braid_key(beta1) == braid_key(beta2)


def writhe(beta) -> int:
    """Exponent sum: the number of positive tiles minus negative tiles."""
    return sum((t > 0) - (t < 0) for t in beta.tiles)


def permutation_of_tiles(tiles: Sequence[int], n: int) -> tuple[int, ...]:
    perm = list(range(1, n + 1))
    for t in tiles:
        if t:
            k = abs(t)
            perm[k - 1], perm[k] = perm[k], perm[k - 1]
    return tuple(perm)


def underlying_permutation(beta) -> tuple[int, ...]:
    """Image of the braid in S_n as ``(pi(1), ..., pi(n))``."""
    tiles, n = _tiles_of(beta)
    return permutation_of_tiles(tiles, n)


def all_keys(n: int, length: int) -> list[BraidClassKey]:
    """Keys of every mosaic of ``(n, length)`` in LEX rank order.

    Walks the prefix tree so shared prefixes are composed once.
    """
    alphabet = list(range(-(n - 1), n))
    out: list[BraidClassKey] = []

    def walk(images: list[FreeWord], depth: int) -> None:
        if depth == length:
            out.append(BraidClassKey(n, tuple(images)))
            return
        for t in alphabet:
            nxt = list(images)
            if t:
                _step(nxt, t)
            walk(nxt, depth + 1)

    walk([(k,) for k in range(1, n + 1)], 0)
    return out
