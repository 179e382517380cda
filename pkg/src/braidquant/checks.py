"""Exhaustive property checks for one ``(n, len)`` system, as run by ``braidquant verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mosaic import (
    DEFAULT_CAP,
    enumerate_mosaics,
    generate_moves,
    inject_mosaic,
    mosaic_count,
    mosaic_from_rank,
    move_counts,
    move_image,
    moves_by_position,
)
from .motif import CapExceeded
from .oracle import all_keys, permutation_of_tiles, writhe
from .orbits import compare_with_oracle, decompose
from .quantum import build_observable, check_adjoint_invariance, inject_unitary, unitary_of_move


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def run_checks(n: int, length: int, cap: int = DEFAULT_CAP) -> list[CheckResult]:
    if mosaic_count(n, length) > cap:
        raise CapExceeded(f"(2n-1)^len = {mosaic_count(n, length)} exceeds cap {cap}")
    out: list[CheckResult] = []
    size = mosaic_count(n, length)
    mosaics = list(enumerate_mosaics(n, length, cap=cap))
    moves = generate_moves(n, length)
    images = [move_image(m) for m in moves]
    ranks = np.arange(size)

    bad = [m.to_line() for m, img in zip(moves, images) if not np.array_equal(img[img], ranks)]
    out.append(CheckResult("moves are involutions", not bad, "; ".join(bad[:3])))

    keys = all_keys(n, length)
    bad = [m.to_line() for m, img in zip(moves, images) if any(keys[r] != keys[s] for r, s in enumerate(img.tolist()))]
    out.append(CheckResult("moves preserve the braid element", not bad, "; ".join(bad[:3])))

    counts = move_counts(moves)
    expected = 2 * (n - 1) * (length - 1)
    out.append(
        CheckResult(
            "P1 and R2 counts equal 2(n-1)(len-1)",
            counts["P1"] == counts["R2"] == expected,
            f"P1={counts['P1']} R2={counts['R2']} expected={expected}",
        )
    )
    first = {(m.identity[0], m.position, m.family[:2]) for m in moves}
    out.append(CheckResult("second enumeration agrees", first == moves_by_position(n, length)))

    table = decompose(n, length, moves, cap=cap)
    report = compare_with_oracle(n, length, cap=cap, table=table)
    out.append(
        CheckResult(
            "orbits refine braid classes",
            report.refines,
            f"orbits={report.orbit_count} classes={report.oracle_class_count} splits={report.split_count}",
        )
    )

    writhes = np.array([writhe(b) for b in mosaics])
    perms = [permutation_of_tiles(b.tiles, n) for b in mosaics]
    labels = table.labels
    ok = bool(np.all(writhes == writhes[labels])) and all(perms[r] == perms[lab] for r, lab in enumerate(labels.tolist()))
    out.append(CheckResult("writhe and permutation constant on orbits", ok))

    omega = build_observable(writhe, n, length)
    bad = [m.to_line() for m in moves if not check_adjoint_invariance(omega, unitary_of_move(m))]
    out.append(CheckResult("writhe observable is ambient invariant", not bad, "; ".join(bad[:3])))

    if mosaic_count(n, length + 1) <= cap:
        bad = []
        for m, img in zip(moves, images):
            lifted = m.lifted()
            if any(lifted.apply_rank(inject_mosaic(b).rank) != inject_mosaic(mosaic_from_rank(int(img[b.rank]), n, length)).rank for b in mosaics):
                bad.append(m.to_line())
            elif inject_unitary(unitary_of_move(m)) != unitary_of_move(lifted):
                bad.append(m.to_line())
        out.append(CheckResult("injection commutes with moves", not bad, "; ".join(bad[:3])))
    return out
