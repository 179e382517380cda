"""Generic motif systems: words over an alphabet with a trivial symbol.

An ambient group is presented by a finite list of involutive pattern swaps
(:class:`PatternMove`). Everything here is small and exact; the braid layer
in :mod:`braidquant.mosaic` specialises it and adds fast rank arithmetic.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterator, Sequence


class ContractError(ValueError):
    """An operation was called outside its precondition."""


class MembershipError(ContractError):
    """A word does not belong to the motif set of the system."""


class CapExceeded(RuntimeError):
    """A state space is larger than the caller-declared enumeration cap."""


@dataclass(frozen=True)
class SymbolTable:
    """Alphabet with the trivial symbol at index 0.

    ``order`` optionally gives the rank of every symbol index under the
    alphabet's total order; by default the declaration order is used.
    """

    symbols: tuple[Hashable, ...]
    order: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise ContractError("alphabet must contain the trivial symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ContractError("alphabet symbols must be distinct")
        if self.order is None:
            object.__setattr__(self, "order", tuple(range(len(self.symbols))))
        else:
            object.__setattr__(self, "order", tuple(self.order))
            if sorted(self.order) != list(range(len(self.symbols))):
                raise ContractError("order must be a permutation of the symbol indices")

    @property
    def trivial_index(self) -> int:
        return 0

    @property
    def trivial(self) -> Hashable:
        return self.symbols[0]

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: Hashable) -> int:
        return self.symbols.index(symbol)

    def word(self, *symbols: Hashable) -> MotifWord:
        return MotifWord(tuple(self.index(s) for s in symbols), self)

    def words(self, length: int) -> Iterator[MotifWord]:
        """All words of ``length`` in LEX order."""
        by_rank = sorted(range(len(self)), key=lambda k: self.order[k])
        for entries in itertools.product(by_rank, repeat=length):
            yield MotifWord(entries, self)


@dataclass(frozen=True)
class MotifWord:
    entries: tuple[int, ...]
    alphabet: SymbolTable = field(compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ContractError("words have length >= 1")
        size = len(self.alphabet)
        for e in self.entries:
            if not 0 <= e < size:
                raise ContractError(f"symbol index {e} outside alphabet of size {size}")

    @property
    def length(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def symbols(self) -> tuple[Hashable, ...]:
        return tuple(self.alphabet.symbols[e] for e in self.entries)


def lex_compare(a: MotifWord, b: MotifWord) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if a.length != b.length:
        raise ContractError(f"cannot compare words of lengths {a.length} and {b.length}")
    if a.alphabet != b.alphabet:
        raise ContractError("words over different alphabets")
    order = a.alphabet.order
    for x, y in zip(a.entries, b.entries):
        if x != y:
            return -1 if order[x] < order[y] else 1
    return 0


def inject_word(w: MotifWord, target_length: int) -> MotifWord:
    """Pad ``w`` on the right with the trivial symbol up to ``target_length``."""
    if target_length < w.length:
        raise ContractError(f"target length {target_length} shorter than word length {w.length}")
    return MotifWord(w.entries + (0,) * (target_length - w.length), w.alphabet)


@dataclass(frozen=True)
class PatternMove:
    """The swap ``lhs <-> rhs`` on the window starting at 1-based ``position``."""

    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    position: int

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if len(self.lhs) != len(self.rhs) or not self.lhs:
            raise ContractError("pattern sides must be non-empty and of equal length")
        if self.lhs == self.rhs:
            raise ContractError("a move with equal sides is the identity")
        if self.position < 1:
            raise ContractError("positions are 1-based")

    @property
    def width(self) -> int:
        return len(self.lhs)

    def fits(self, length: int) -> bool:
        return self.position + self.width - 1 <= length


def apply_pattern_move(m: PatternMove, w: MotifWord) -> MotifWord:
    if not m.fits(w.length):
        raise ContractError(f"move at position {m.position} of width {m.width} overruns word of length {w.length}")
    start = m.position - 1
    stop = start + m.width
    window = w.entries[start:stop]
    if window == m.lhs:
        repl = m.rhs
    elif window == m.rhs:
        repl = m.lhs
    else:
        return w
    return MotifWord(w.entries[:start] + repl + w.entries[stop:], w.alphabet)


def _everything(_: MotifWord) -> bool:
    return True


@dataclass(frozen=True)
class MotifSystemConfig:
    """A motif system: members of ``alphabet^word_length`` plus generators.

    When a restricted ``membership`` predicate is given, closure of the member
    set under every generator is checked exhaustively at construction, as long
    as the ambient word space has at most ``closure_check_cap`` elements.
    """

    alphabet: SymbolTable
    word_length: int
    generators: tuple[PatternMove, ...] = ()
    membership: Callable[[MotifWord], bool] = _everything
    closure_check_cap: int = 200_000

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.word_length < 1:
            raise ContractError("word_length must be >= 1")
        for g in self.generators:
            if not g.fits(self.word_length):
                raise ContractError(f"generator {g} does not fit in length {self.word_length}")
            if max(g.lhs + g.rhs) >= len(self.alphabet):
                raise ContractError(f"generator {g} uses symbols outside the alphabet")
        if self.membership is not _everything and len(self.alphabet) ** self.word_length <= self.closure_check_cap:
            for w in self.members():
                for g in self.generators:
                    if not self.membership(apply_pattern_move(g, w)):
                        raise MembershipError(f"member set not closed: {g} maps {w.entries} outside it")

    def contains(self, w: MotifWord) -> bool:
        return w.length == self.word_length and w.alphabet == self.alphabet and bool(self.membership(w))

    def members(self, cap: int | None = None) -> Iterator[MotifWord]:
        if cap is not None and len(self.alphabet) ** self.word_length > cap:
            raise CapExceeded(f"{len(self.alphabet)}^{self.word_length} words exceed cap {cap}")
        for w in self.alphabet.words(self.word_length):
            if self.membership(w):
                yield w

    def neighbours(self, w: MotifWord) -> Iterator[tuple[PatternMove, MotifWord]]:
        for g in self.generators:
            v = apply_pattern_move(g, w)
            if v != w:
                yield g, v

    def _require(self, w: MotifWord) -> None:
        if not self.contains(w):
            raise MembershipError(f"word {w.entries} is not a member of the system")


EQUIVALENT = "equivalent"
INEQUIVALENT = "inequivalent"
BUDGET_EXHAUSTED = "budget_exhausted"


def bfs_same_type(w1: MotifWord, w2: MotifWord, system: MotifSystemConfig, node_budget: int) -> str:
    """Breadth-first search from ``w1`` over generator applications.

    Returns ``"equivalent"``, ``"inequivalent"`` (orbit of ``w1`` exhausted
    without reaching ``w2``) or ``"budget_exhausted"``.
    """
    system._require(w1)
    system._require(w2)
    if node_budget < 1:
        raise ContractError("node_budget must be >= 1")
    if w1 == w2:
        return EQUIVALENT
    seen = {w1.entries}
    queue = deque([w1])
    while queue:
        w = queue.popleft()
        for _, v in system.neighbours(w):
            if v.entries in seen:
                continue
            if v == w2:
                return EQUIVALENT
            if len(seen) >= node_budget:
                return BUDGET_EXHAUSTED
            seen.add(v.entries)
            queue.append(v)
    return INEQUIVALENT


@dataclass(frozen=True)
class InvariantReport:
    holds: bool
    generator: PatternMove | None = None
    word: MotifWord | None = None
    before: Any = None
    after: Any = None


def verify_invariant(invariant: Callable[[MotifWord], Any], system: MotifSystemConfig, cap: int) -> InvariantReport:
    """Check ``invariant(m) == invariant(g m)`` for every member and generator.

    Members are scanned in LEX order and generators in list order; the first
    violation found is reported.
    """
    for w in system.members(cap=cap):
        value = invariant(w)
        for g, v in system.neighbours(w):
            other = invariant(v)
            if other != value:
                return InvariantReport(False, g, w, value, other)
    return InvariantReport(True)


def is_permutation_of_members(g: PatternMove, system: MotifSystemConfig, cap: int) -> bool:
    members = [w.entries for w in system.members(cap=cap)]
    images = {apply_pattern_move(g, MotifWord(e, system.alphabet)).entries for e in members}
    return images == set(members)


def pattern_move(lhs: Sequence[int], rhs: Sequence[int], position: int) -> PatternMove:
    return PatternMove(tuple(lhs), tuple(rhs), position)
