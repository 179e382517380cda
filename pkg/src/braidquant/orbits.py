"""Orbit decomposition of braid-mosaic spaces under the ambient group.

Mosaics are addressed by LEX rank. Every move becomes an int64 image array
and the components of the union of all move graphs are computed by a
min-root union-find, so the label of each rank is the LEX-minimal member
of its orbit. Labels are therefore reproducible across runs and backends.
"""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .mosaic import (
    DEFAULT_CAP,
    BraidMosaic,
    MoveDescriptor,
    generate_moves,
    inject_mosaic,
    mosaic_count,
    mosaic_from_rank,
    move_image,
    move_set_hash,
)
from .motif import CapExceeded, ContractError
from .oracle import all_keys

CACHE_ENV = "BRAIDQUANT_CACHE_DIR"


@dataclass(frozen=True, eq=False)
class OrbitTable:
    n: int
    length: int
    labels: np.ndarray = field(repr=False)
    move_hash: str = ""

    def __post_init__(self):
        self.labels.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, OrbitTable):
            return NotImplemented
        return (
            (self.n, self.length, self.move_hash) == (other.n, other.length, other.move_hash)
            and np.array_equal(self.labels, other.labels)
        )

    __hash__ = None

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def representatives(self) -> np.ndarray:
        """Orbit ids, which are also the ranks of the canonical representatives."""
        return np.unique(self.labels)

    @property
    def orbit_count(self) -> int:
        return len(self.representatives)

    def sizes(self) -> dict[int, int]:
        ids, counts = np.unique(self.labels, return_counts=True)
        return dict(zip(ids.tolist(), counts.tolist()))

    def size_profile(self) -> list[int]:
        return sorted(self.sizes().values(), reverse=True)

    def _check(self, beta: BraidMosaic) -> None:
        if beta.n != self.n or beta.length != self.length:
            raise ContractError(
                f"mosaic of (n={beta.n}, len={beta.length}) queried against table for (n={self.n}, len={self.length})"
            )

    def orbit_id(self, beta: BraidMosaic) -> int:
        self._check(beta)
        return int(self.labels[beta.rank])

    def canonical(self, beta: BraidMosaic) -> BraidMosaic:
        return mosaic_from_rank(self.orbit_id(beta), self.n, self.length)

    def members(self, orbit_id: int) -> list[BraidMosaic]:
        return [mosaic_from_rank(r, self.n, self.length) for r in np.flatnonzero(self.labels == orbit_id).tolist()]

    def orbits(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for r, lab in enumerate(self.labels.tolist()):
            out[lab].append(r)
        return dict(out)


def _check_cap(n: int, length: int, cap: int) -> None:
    if mosaic_count(n, length) > cap:
        raise CapExceeded(f"(2n-1)^len = {mosaic_count(n, length)} exceeds cap {cap}")


def decompose(
    n: int,
    length: int,
    moves: Sequence[MoveDescriptor] | None = None,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> OrbitTable:
    """Partition ``(n, length)`` into orbits of the group generated by ``moves``.

    ``moves`` defaults to the full roster from :func:`generate_moves`.
    ``workers > 1`` computes move images on a thread pool; the result does
    not depend on it.
    """
    _check_cap(n, length, cap)
    if moves is None:
        moves = generate_moves(n, length)
    for m in moves:
        if (m.n, m.length) != (n, length):
            raise ContractError(f"move {m.to_line()} belongs to (n={m.n}, len={m.length})")
    size = mosaic_count(n, length)
    if moves:
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                images = np.stack(list(pool.map(move_image, moves)))
        else:
            images = np.stack([move_image(m) for m in moves])
    else:
        images = np.empty((0, size), dtype=np.int64)
    labels = np.asarray(kernels.orbit_labels(size, images), dtype=np.int64)
    return OrbitTable(n, length, labels, move_set_hash(moves))


def same_type_fixed(beta1: BraidMosaic, beta2: BraidMosaic, table: OrbitTable) -> bool:
    return table.orbit_id(beta1) == table.orbit_id(beta2)


# --------------------------------------------------------------------------
# cache files

def table_to_text(table: OrbitTable) -> str:
    lines = [
        f"# braidquant orbit table v1",
        f"n={table.n} len={table.length} mosaics={table.size} orbits={table.orbit_count} moves={table.move_hash}",
    ]
    lines.extend(f"{r} {lab}" for r, lab in enumerate(table.labels.tolist()))
    return "\n".join(lines) + "\n"


def table_from_text(text: str) -> OrbitTable:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# braidquant orbit table"):
        raise ValueError("not an orbit table file")
    header = dict(kv.split("=", 1) for kv in lines[1].split())
    n, length, size = int(header["n"]), int(header["len"]), int(header["mosaics"])
    labels = np.empty(size, dtype=np.int64)
    body = lines[2:]
    if len(body) != size:
        raise ValueError(f"expected {size} records, found {len(body)}")
    for line in body:
        r, lab = line.split()
        labels[int(r)] = int(lab)
    table = OrbitTable(n, length, labels, header["moves"])
    if table.orbit_count != int(header["orbits"]):
        raise ValueError("orbit count in header does not match records")
    return table


class OrbitCache:
    """Orbit tables on disk keyed by ``(n, length, move-set hash)``."""

    def __init__(self, directory: str | os.PathLike | None = None):
        directory = directory or os.environ.get(CACHE_ENV)
        self.directory = Path(directory) if directory else None
        self.hits = 0
        self.misses = 0

    def path_for(self, n: int, length: int, move_hash: str) -> Path | None:
        if self.directory is None:
            return None
        return self.directory / f"orbits-n{n}-len{length}-{move_hash[:16]}.txt"

    def get(
        self, n: int, length: int, moves: Sequence[MoveDescriptor] | None = None, cap: int = DEFAULT_CAP
    ) -> OrbitTable:
        _check_cap(n, length, cap)
        if moves is None:
            moves = generate_moves(n, length)
        path = self.path_for(n, length, move_set_hash(moves))
        if path is not None and path.exists():
            table = table_from_text(path.read_text())
            if table.move_hash == move_set_hash(moves):
                self.hits += 1
                return table
        self.misses += 1
        table = decompose(n, length, moves, cap=cap)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(table_to_text(table))
            tmp.replace(path)
        return table


# --------------------------------------------------------------------------
# stabilised equivalence

@dataclass(frozen=True)
class StabilizationVerdict:
    k: int | None
    k_max: int

    @property
    def equivalent(self) -> bool:
        return self.k is not None

    def __str__(self) -> str:
        return f"equivalent_at_{self.k}" if self.k is not None else "not_within_budget"


def same_type_stabilized(
    beta1: BraidMosaic,
    beta2: BraidMosaic,
    k_max: int,
    cap: int = DEFAULT_CAP,
    table_for: Callable[[int, int], OrbitTable] | None = None,
) -> StabilizationVerdict:
    """Smallest ``k <= k_max`` with the ``k``-fold padded mosaics in one orbit.

    Never reports inequivalence: exhausting ``k_max`` gives ``not_within_budget``.
    """
    if beta1.n != beta2.n:
        raise ContractError(f"strand counts differ: {beta1.n} vs {beta2.n}")
    if beta1.length != beta2.length:
        raise ContractError(f"lengths differ: {beta1.length} vs {beta2.length}")
    if k_max < 0:
        raise ContractError("k_max must be >= 0")
    if beta1 == beta2:
        return StabilizationVerdict(0, k_max)
    n, length = beta1.n, beta1.length
    _check_cap(n, length + k_max, cap)
    if table_for is None:
        table_for = lambda nn, ll: decompose(nn, ll, cap=cap)  # noqa: E731
    for k in range(k_max + 1):
        table = table_for(n, length + k)
        if same_type_fixed(inject_mosaic(beta1, k), inject_mosaic(beta2, k), table):
            return StabilizationVerdict(k, k_max)
    return StabilizationVerdict(None, k_max)


# --------------------------------------------------------------------------
# comparison against the braid-group oracle

@dataclass
class EquivalenceReport:
    n: int
    length: int
    orbit_count: int
    oracle_class_count: int
    refines: bool
    counterexample: tuple[BraidMosaic, BraidMosaic] | None = None
    split_classes: list[list[int]] = field(default_factory=list)

    @property
    def split_count(self) -> int:
        return len(self.split_classes)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "len": self.length,
            "orbit_count": self.orbit_count,
            "oracle_class_count": self.oracle_class_count,
            "refines": self.refines,
            "counterexample": [str(b) for b in self.counterexample] if self.counterexample else None,
            "split_count": self.split_count,
            "split_classes": [[str(mosaic_from_rank(r, self.n, self.length)) for r in c] for c in self.split_classes],
        }


def oracle_labels(n: int, length: int) -> np.ndarray:
    """Label of every rank by the smallest rank with the same braid key."""
    first: dict = {}
    labels = np.empty(mosaic_count(n, length), dtype=np.int64)
    for r, key in enumerate(all_keys(n, length)):
        labels[r] = first.setdefault(key, r)
    return labels


def compare_with_oracle(n: int, length: int, cap: int = DEFAULT_CAP, table: OrbitTable | None = None) -> EquivalenceReport:
    """Check that every orbit sits inside one braid class and list split classes.

    ``split_classes`` holds, per braid class met by several orbits, the ids
    of those orbits (canonical representative ranks).
    """
    _check_cap(n, length, cap)
    if table is None:
        table = decompose(n, length, cap=cap)
    keys = oracle_labels(n, length)
    counterexample = None
    orbit_class: dict[int, int] = {}
    for r, (orb, cls) in enumerate(zip(table.labels.tolist(), keys.tolist())):
        seen = orbit_class.setdefault(orb, cls)
        if seen != cls and counterexample is None:
            counterexample = (mosaic_from_rank(orb, n, length), mosaic_from_rank(r, n, length))
    class_orbits: dict[int, set[int]] = defaultdict(set)
    for orb, cls in orbit_class.items():
        class_orbits[cls].add(orb)
    splits = sorted(sorted(v) for v in class_orbits.values() if len(v) > 1)
    return EquivalenceReport(
        n,
        length,
        table.orbit_count,
        len(np.unique(keys)),
        counterexample is None,
        counterexample,
        splits,
    )


def find_stabilization_witnesses(
    n: int, length: int, k_max: int, cap: int = DEFAULT_CAP, limit: int | None = None
) -> list[tuple[BraidMosaic, BraidMosaic, StabilizationVerdict]]:
    """Pairs of canonical representatives that are braid-equal but in different orbits.

    For each such pair the bounded stabilisation search is run; pairs are
    listed in LEX order of (first, second) representative.
    """
    tables: dict[tuple[int, int], OrbitTable] = {}

    def table_for(nn: int, ll: int) -> OrbitTable:
        if (nn, ll) not in tables:
            tables[(nn, ll)] = decompose(nn, ll, cap=cap)
        return tables[(nn, ll)]

    report = compare_with_oracle(n, length, cap=cap, table=table_for(n, length))
    out = []
    for cls in report.split_classes:
        for a_i, a in enumerate(cls):
            for b in cls[a_i + 1 :]:
                b1 = mosaic_from_rank(a, n, length)
                b2 = mosaic_from_rank(b, n, length)
                out.append((b1, b2, same_type_stabilized(b1, b2, k_max, cap=cap, table_for=table_for)))
                if limit is not None and len(out) >= limit:
                    return out
    return out


def constant_on_orbits(fn: Callable[[BraidMosaic], object], table: OrbitTable) -> tuple[BraidMosaic, BraidMosaic] | None:
    """First pair ``(representative, member)`` where ``fn`` differs, or ``None``."""
    values: dict[int, object] = {}
    for r, orb in enumerate(table.labels.tolist()):
        beta = mosaic_from_rank(r, table.n, table.length)
        v = fn(beta)
        if orb in values:
            if values[orb] != v:
                return mosaic_from_rank(orb, table.n, table.length), beta
        else:
            values[orb] = v
    return None
