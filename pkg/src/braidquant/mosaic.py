"""Braid mosaics: words over the signed tile alphabet ``b_-(n-1) .. b_0=1 .. b_(n-1)``.

Tiles are stored as signed ints with ``0`` the identity tile. The LEX order of
tiles is signed index ascending, so a mosaic's LEX rank is its base-``2n-1``
number with digit ``tile + n - 1``.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .motif import CapExceeded, ContractError, MotifSystemConfig, MotifWord, PatternMove, SymbolTable
from .oracle import key_of_tiles

DEFAULT_CAP = 10_000_000


class MosaicParseError(ContractError):
    pass


class TileRangeError(ContractError):
    pass


def _check_n(n: int) -> None:
    if n < 2:
        raise ContractError(f"strand count must be >= 2, got {n}")


@dataclass(frozen=True, order=True)
class BraidMosaic:
    tiles: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(int(t) for t in self.tiles))
        _check_n(self.n)
        if not self.tiles:
            raise ContractError("mosaics have length >= 1")
        for t in self.tiles:
            if abs(t) > self.n - 1:
                raise TileRangeError(f"tile b{t} out of range for {self.n} strands")

    @property
    def length(self) -> int:
        return len(self.tiles)

    def __len__(self) -> int:
        return len(self.tiles)

    def __str__(self) -> str:
        return format_mosaic(self)

    def pretty(self) -> str:
        return " ".join("1" if t == 0 else f"b{t}" for t in self.tiles)

    @property
    def rank(self) -> int:
        return mosaic_rank(self.tiles, self.n)


def parse_mosaic(text: str, n: int) -> BraidMosaic:
    """Parse comma-separated signed tile indices, e.g. ``"0,-1,1,2"``."""
    _check_n(n)
    stripped = "".join(text.split())
    if not stripped:
        raise MosaicParseError("empty mosaic text")
    tiles = []
    for tok in stripped.split(","):
        body = tok[1:] if tok.startswith("-") else tok
        if not body.isdigit() or not body.isascii():
            raise MosaicParseError(f"not a signed integer: {tok!r}")
        tiles.append(int(tok))
    return BraidMosaic(tuple(tiles), n)


def format_mosaic(beta: BraidMosaic) -> str:
    return ",".join(str(t) for t in beta.tiles)


def mosaic_count(n: int, length: int) -> int:
    return (2 * n - 1) ** length


def mosaic_rank(tiles: Sequence[int], n: int) -> int:
    base = 2 * n - 1
    r = 0
    for t in tiles:
        r = r * base + t + n - 1
    return r


def mosaic_from_rank(rank: int, n: int, length: int) -> BraidMosaic:
    base = 2 * n - 1
    if not 0 <= rank < base**length:
        raise ContractError(f"rank {rank} outside (n={n}, len={length})")
    tiles = []
    for _ in range(length):
        rank, d = divmod(rank, base)
        tiles.append(d - (n - 1))
    return BraidMosaic(tuple(reversed(tiles)), n)


def enumerate_mosaics(n: int, length: int, cap: int = DEFAULT_CAP) -> Iterator[BraidMosaic]:
    """All mosaics of ``(n, length)`` in LEX order."""
    _check_n(n)
    if length < 1:
        raise ContractError("length must be >= 1")
    if mosaic_count(n, length) > cap:
        raise CapExceeded(f"(2n-1)^len = {mosaic_count(n, length)} exceeds cap {cap}")
    alphabet = range(-(n - 1), n)
    for tiles in itertools.product(alphabet, repeat=length):
        yield BraidMosaic(tiles, n)


def submosaic(beta: BraidMosaic, p: int, sub_length: int) -> BraidMosaic:
    """The ``sub_length`` consecutive tiles starting at 1-based position ``p``."""
    if p < 1 or sub_length < 1 or p + sub_length - 1 > beta.length:
        raise ContractError(f"window p={p}, len={sub_length} outside mosaic of length {beta.length}")
    return BraidMosaic(beta.tiles[p - 1 : p - 1 + sub_length], beta.n)


def inject_mosaic(beta: BraidMosaic, k: int = 1) -> BraidMosaic:
    """Append ``k`` identity tiles."""
    if k < 0:
        raise ContractError("k must be >= 0")
    return BraidMosaic(beta.tiles + (0,) * k, beta.n)


# --------------------------------------------------------------------------
# moves

FAMILIES = ("P1", "P2", "R2") + tuple(f"R3-F{k}" for k in range(1, 8))


@dataclass(frozen=True)
class MoveDescriptor:
    """One ambient generator: swap ``lhs <-> rhs`` at ``position`` of an ``(n, length)`` mosaic."""

    family: str
    index: int
    position: int
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    n: int
    length: int

    @property
    def width(self) -> int:
        return len(self.lhs)

    @property
    def identity(self) -> tuple[frozenset, int]:
        return frozenset((self.lhs, self.rhs)), self.position

    def to_line(self) -> str:
        csv = lambda t: ",".join(map(str, t))  # noqa: E731
        return f"{self.family} i={self.index} p={self.position} lhs={csv(self.lhs)} rhs={csv(self.rhs)}"

    @classmethod
    def from_line(cls, line: str, n: int, length: int) -> MoveDescriptor:
        family, *fields = line.split()
        kv = dict(f.split("=", 1) for f in fields)
        lhs = tuple(int(x) for x in kv["lhs"].split(","))
        rhs = tuple(int(x) for x in kv["rhs"].split(","))
        return cls(family, int(kv["i"]), int(kv["p"]), lhs, rhs, n, length)

    def as_pattern_move(self) -> PatternMove:
        """The same move over the symbol indices of :func:`braid_alphabet`."""
        enc = lambda t: tuple(tile_symbol(x, self.n) for x in t)  # noqa: E731
        return PatternMove(enc(self.lhs), enc(self.rhs), self.position)

    def lifted(self, extra: int = 1) -> MoveDescriptor:
        """The same generator acting on ``(n, length + extra)``."""
        return MoveDescriptor(self.family, self.index, self.position, self.lhs, self.rhs, self.n, self.length + extra)

    def codes(self) -> tuple[int, int, int, int]:
        """``(scale, block, lhs_code, rhs_code)`` for rank arithmetic."""
        base = 2 * self.n - 1
        scale = base ** (self.length - self.position - self.width + 1)
        block = base**self.width
        return scale, block, mosaic_rank(self.lhs, self.n), mosaic_rank(self.rhs, self.n)

    def apply_rank(self, rank: int) -> int:
        scale, block, lhs, rhs = self.codes()
        w = (rank // scale) % block
        if w == lhs:
            return rank + (rhs - lhs) * scale
        if w == rhs:
            return rank - (rhs - lhs) * scale
        return rank


def apply_move(m: MoveDescriptor, beta: BraidMosaic) -> BraidMosaic:
    if beta.n != m.n or beta.length != m.length:
        raise ContractError(f"move for (n={m.n}, len={m.length}) applied to (n={beta.n}, len={beta.length})")
    start = m.position - 1
    stop = start + m.width
    window = beta.tiles[start:stop]
    if window == m.lhs:
        repl = m.rhs
    elif window == m.rhs:
        repl = m.lhs
    else:
        return beta
    return BraidMosaic(beta.tiles[:start] + repl + beta.tiles[stop:], beta.n)


def _pad(t: tuple[int, ...], width: int) -> tuple[int, ...]:
    return t + (0,) * (width - len(t))


def r3_rows(i: int) -> list[tuple[str, tuple[int, ...], tuple[int, ...]]]:
    """The seven R3 rows for ``b_i b_(i+1) b_i`` (``i > 0``) or its mirror (``i < 0``)."""
    s = 1 if i > 0 else -1
    a, b = i, i + s
    rows = [
        ((a, b, a, -b, -a, -b), ()),
        ((a, b, a, -b, -a), (b,)),
        ((a, b, a, -b), (b, a)),
        ((a, b, a), (b, a, b)),
        ((a, b), (b, a, b, -a)),
        ((a,), (b, a, b, -a, -b)),
        ((), (b, a, b, -a, -b, -a)),
    ]
    out = []
    for k, (lhs, rhs) in enumerate(rows, start=1):
        width = max(len(lhs), len(rhs))
        out.append((f"R3-F{k}", _pad(lhs, width), _pad(rhs, width)))
    return out


def _patterns(n: int) -> Iterator[tuple[str, int, tuple[int, ...], tuple[int, ...]]]:
    nonzero = [i for i in range(-(n - 1), n) if i]
    for i in nonzero:
        yield "P1", i, (0, i), (i, 0)
    for i in nonzero:
        for j in nonzero:
            if abs(i) < abs(j) and abs(j) - abs(i) > 1:
                yield "P2", i, (i, j), (j, i)
    for i in nonzero:
        yield "R2", i, (i, -i), (0, 0)
    for i in [k for k in nonzero if abs(k) <= n - 2]:
        for family, lhs, rhs in r3_rows(i):
            yield family, i, lhs, rhs


def generate_moves(n: int, length: int, validate: bool = True) -> list[MoveDescriptor]:
    """Every distinct P1, P2, R2 and R3 move of ``(n, length)``.

    Moves are deduplicated by (unordered pattern pair, position). With
    ``validate`` each pattern pair is checked to be equal in B_n.
    """
    _check_n(n)
    if length < 1:
        raise ContractError("length must be >= 1")
    seen = set()
    moves = []
    for family, i, lhs, rhs in _patterns(n):
        if validate and key_of_tiles(lhs, n) != key_of_tiles(rhs, n):
            raise AssertionError(f"{family} i={i}: {lhs} and {rhs} are different braids")
        for p in range(1, length - len(lhs) + 2):
            m = MoveDescriptor(family, i, p, lhs, rhs, n, length)
            if m.identity in seen:
                continue
            seen.add(m.identity)
            moves.append(m)
    return moves


def move_counts(moves: Sequence[MoveDescriptor]) -> dict[str, int]:
    counts = {"P1": 0, "P2": 0, "R2": 0, "R3": 0}
    for m in moves:
        counts[m.family[:2]] += 1
    return counts


def paper_move_counts(n: int, length: int) -> dict[str, int]:
    """Closed-form move counts as printed in the source article.

    Only the P1 and R2 expressions agree with direct enumeration; the P2 and
    R3 expressions are reported for comparison.
    """
    if length >= 6:
        r3 = n * (n - 2) * (6 * length - 21)
    elif length == 5:
        r3 = n * (n - 2) * (5 * length - 16)
    elif length == 4:
        r3 = n * (n - 2) * (3 * length - 8)
    elif length == 3:
        r3 = n * (n - 2) * (length - 2)
    else:
        r3 = 0
    return {
        "P1": 2 * (n - 1) * (length - 1),
        "P2": (n - 1) * (2 * n - 6) * (length - 1),
        "R2": 2 * (n - 1) * (length - 1),
        "R3": r3,
    }


def moves_by_position(n: int, length: int) -> set[tuple[frozenset, int, str]]:
    """Second, independent enumeration of the move roster.

    Walks positions first, then brute-forces commuting pairs over all
    two-tile words and derives the R3 rows by splitting the relator
    ``b_i b_(i+1) b_i b_-(i+1) b_-i b_-(i+1)`` at every cut point.
    """
    out: set[tuple[frozenset, int, str]] = set()
    tiles = range(-(n - 1), n)
    relator_heads = [i for i in tiles if i and abs(i) + 1 <= n - 1]
    for p in range(1, length + 1):
        room = length - p + 1
        if room >= 2:
            for x, y in itertools.product(tiles, repeat=2):
                if x and not y:
                    out.add((frozenset({(0, x), (x, 0)}), p, "P1"))
                if x and y and abs(abs(x) - abs(y)) > 1:
                    out.add((frozenset({(x, y), (y, x)}), p, "P2"))
                if x and y == -x:
                    out.add((frozenset({(x, y), (0, 0)}), p, "R2"))
        for i in relator_heads:
            j = i + (1 if i > 0 else -1)
            relator = (i, j, i, -j, -i, -j)
            for cut in range(7):
                left = relator[:cut]
                right = tuple(-t for t in reversed(relator[cut:]))
                width = max(len(left), len(right))
                if width <= room:
                    out.add((frozenset({_pad(left, width), _pad(right, width)}), p, "R3"))
    return out


def move_set_hash(moves: Sequence[MoveDescriptor]) -> str:
    h = hashlib.sha256()
    for m in moves:
        h.update(m.to_line().encode())
        h.update(b"\n")
    return h.hexdigest()


def move_image(m: MoveDescriptor):
    """Image of every LEX rank under ``m`` as an int64 array."""
    from . import kernels

    scale, block, lhs, rhs = m.codes()
    return kernels.move_image(mosaic_count(m.n, m.length), scale, block, lhs, rhs)


# --------------------------------------------------------------------------
# bridge to the generic motif layer

def tile_symbol(t: int, n: int) -> int:
    """Symbol index of tile ``b_t`` in :func:`braid_alphabet` (identity is 0)."""
    if t == 0:
        return 0
    return t if t > 0 else (n - 1) - t


def braid_alphabet(n: int) -> SymbolTable:
    """Tile alphabet with ``1`` at symbol index 0 and LEX order by signed index."""
    _check_n(n)
    symbols = ["1"] + [f"b{t}" for t in range(1, n)] + [f"b{t}" for t in range(-1, -n, -1)]
    tiles = [0] + list(range(1, n)) + list(range(-1, -n, -1))
    return SymbolTable(tuple(symbols), tuple(t + n - 1 for t in tiles))


def to_motif_word(beta: BraidMosaic) -> MotifWord:
    return MotifWord(tuple(tile_symbol(t, beta.n) for t in beta.tiles), braid_alphabet(beta.n))


def from_motif_word(w: MotifWord, n: int) -> BraidMosaic:
    inverse = {tile_symbol(t, n): t for t in range(-(n - 1), n)}
    return BraidMosaic(tuple(inverse[e] for e in w.entries), n)


def braid_system(n: int, length: int) -> MotifSystemConfig:
    return MotifSystemConfig(
        braid_alphabet(n), length, tuple(m.as_pattern_move() for m in generate_moves(n, length))
    )
