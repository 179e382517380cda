"""Quantum braid systems over the LEX-ranked mosaic basis.

States are dense complex vectors indexed by LEX rank. Ambient generators act
as basis permutations and observables are diagonal, so invariance checks are
exact integer/float comparisons with no tolerance.

Sampling uses numpy's Philox4x64-10 counter-based generator keyed by the
seed: shot ``k`` consumes the ``k``-th uniform double of the stream
(``Generator.random``), and the outcome is the first rank whose cumulative
probability exceeds it (``searchsorted(cdf, u, side="right")`` with the CDF
divided by its last entry).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .mosaic import BraidMosaic, MoveDescriptor, mosaic_count, mosaic_from_rank, move_image, parse_mosaic
from .motif import ContractError
from .orbits import OrbitTable

NORM_TOL = 1e-12


def _check_system(a: tuple[int, int], b: tuple[int, int], what: str = "") -> None:
    if a != b:
        raise ContractError(f"system mismatch{what}: (n, len) {a} vs {b}")


@dataclass(frozen=True, eq=False)
class QuantumState:
    amplitudes: np.ndarray = field(repr=False)
    n: int
    length: int

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (mosaic_count(self.n, self.length),):
            raise ContractError(f"expected {mosaic_count(self.n, self.length)} amplitudes, got shape {amps.shape}")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ContractError(f"state is not normalised: |psi|^2 = {norm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def system(self) -> tuple[int, int]:
        return self.n, self.length

    def __eq__(self, other):
        if not isinstance(other, QuantumState):
            return NotImplemented
        return self.system == other.system and np.array_equal(self.amplitudes, other.amplitudes)

    __hash__ = None

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def inner(self, other: QuantumState) -> complex:
        """``<self|other>``."""
        _check_system(self.system, other.system)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def to_triples(self) -> list[tuple[str, float, float]]:
        """Non-zero amplitudes as ``(mosaic text, real, imag)`` in rank order."""
        return [
            (str(mosaic_from_rank(r, self.n, self.length)), float(a.real), float(a.imag))
            for r, a in enumerate(self.amplitudes.tolist())
            if a != 0
        ]

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[str, float, float]], n: int, length: int) -> QuantumState:
        amps = np.zeros(mosaic_count(n, length), dtype=np.complex128)
        for text, re, im in triples:
            beta = parse_mosaic(text, n)
            _check_system((beta.n, beta.length), (n, length))
            amps[beta.rank] += complex(re, im)
        return cls(amps, n, length)


def basis_state(beta: BraidMosaic) -> QuantumState:
    amps = np.zeros(mosaic_count(beta.n, beta.length), dtype=np.complex128)
    amps[beta.rank] = 1.0
    return QuantumState(amps, beta.n, beta.length)


def superposition(terms: Sequence[tuple[BraidMosaic, complex]], normalize: bool = True) -> QuantumState:
    n, length = terms[0][0].n, terms[0][0].length
    amps = np.zeros(mosaic_count(n, length), dtype=np.complex128)
    for beta, c in terms:
        _check_system((beta.n, beta.length), (n, length))
        amps[beta.rank] += c
    if normalize:
        amps /= np.linalg.norm(amps)
    return QuantumState(amps, n, length)


def orbit_state(table: OrbitTable, orbit_id: int) -> QuantumState:
    """Uniform superposition over one orbit."""
    mask = table.labels == orbit_id
    if not mask.any():
        raise ContractError(f"no orbit with id {orbit_id}")
    amps = mask.astype(np.complex128) / np.sqrt(mask.sum())
    return QuantumState(amps, table.n, table.length)


@dataclass(frozen=True, eq=False)
class PermutationUnitary:
    """Basis permutation ``|k> -> |image[k]>``."""

    image: np.ndarray = field(repr=False)
    n: int
    length: int
    provenance: str = ""

    def __post_init__(self):
        img = np.array(self.image, dtype=np.int64)
        size = mosaic_count(self.n, self.length)
        if img.shape != (size,) or not np.array_equal(np.sort(img), np.arange(size)):
            raise ContractError("unitary index map is not a bijection of the basis")
        img.setflags(write=False)
        object.__setattr__(self, "image", img)

    @property
    def system(self) -> tuple[int, int]:
        return self.n, self.length

    def __eq__(self, other):
        if not isinstance(other, PermutationUnitary):
            return NotImplemented
        return self.system == other.system and np.array_equal(self.image, other.image)

    __hash__ = None

    def then(self, other: PermutationUnitary) -> PermutationUnitary:
        """Apply ``self`` first, then ``other``."""
        _check_system(self.system, other.system)
        return PermutationUnitary(other.image[self.image], self.n, self.length, f"{self.provenance}; {other.provenance}")

    def inverse(self) -> PermutationUnitary:
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(len(self.image))
        return PermutationUnitary(inv, self.n, self.length, f"({self.provenance})^-1")

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.image, np.arange(len(self.image))))

    def matrix(self) -> np.ndarray:
        size = len(self.image)
        u = np.zeros((size, size), dtype=np.complex128)
        u[self.image, np.arange(size)] = 1.0
        return u


def unitary_of_move(m: MoveDescriptor, system: tuple[int, int] | None = None) -> PermutationUnitary:
    if system is not None:
        _check_system((m.n, m.length), tuple(system), " between move and system")
    return PermutationUnitary(move_image(m), m.n, m.length, m.to_line())


def apply_unitary(u: PermutationUnitary, psi: QuantumState) -> QuantumState:
    _check_system(u.system, psi.system)
    amps = np.empty_like(psi.amplitudes)
    amps[u.image] = psi.amplitudes
    return QuantumState(amps, psi.n, psi.length)


@dataclass(frozen=True, eq=False)
class DiagonalObservable:
    values: np.ndarray = field(repr=False)
    n: int
    length: int

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64)
        if vals.shape != (mosaic_count(self.n, self.length),):
            raise ContractError("observable needs one value per basis mosaic")
        if not np.all(np.isfinite(vals)):
            raise ContractError("observable values must be finite reals")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def system(self) -> tuple[int, int]:
        return self.n, self.length

    def matrix(self) -> np.ndarray:
        return np.diag(self.values).astype(np.complex128)


def build_observable(invariant: Callable[[BraidMosaic], float], n: int, length: int) -> DiagonalObservable:
    """``sum_beta invariant(beta) |beta><beta|``."""
    vals = [float(invariant(mosaic_from_rank(r, n, length))) for r in range(mosaic_count(n, length))]
    return DiagonalObservable(np.array(vals), n, length)


def observable_from_table(table: OrbitTable) -> DiagonalObservable:
    """Observable whose value on each basis mosaic is its orbit id."""
    return DiagonalObservable(table.labels.astype(np.float64), table.n, table.length)


@dataclass(frozen=True)
class InvarianceVerdict:
    invariant: bool
    index: int | None = None

    def __bool__(self) -> bool:
        return self.invariant


def check_adjoint_invariance(omega: DiagonalObservable, u: PermutationUnitary) -> InvarianceVerdict:
    """Exact test of ``U Omega U^-1 == Omega`` for diagonal ``Omega``."""
    _check_system(omega.system, u.system)
    bad = np.flatnonzero(omega.values[u.image] != omega.values)
    if len(bad):
        return InvarianceVerdict(False, int(bad[0]))
    return InvarianceVerdict(True)


def check_adjoint_invariance_dense(omega: np.ndarray, u: PermutationUnitary, tol: float = 1e-12) -> bool:
    """Dense-matrix check for a general Hermitian ``omega``."""
    omega = np.asarray(omega, dtype=np.complex128)
    if not np.allclose(omega, omega.conj().T, atol=tol, rtol=0):
        raise ContractError("observable is not Hermitian")
    mat = u.matrix()
    return bool(np.max(np.abs(mat @ omega @ mat.conj().T - omega), initial=0.0) <= tol)


def expectation(omega: DiagonalObservable, psi: QuantumState) -> float:
    _check_system(omega.system, psi.system)
    return float(np.dot(np.abs(psi.amplitudes) ** 2, omega.values))


def sample_indices(psi: QuantumState, shots: int, seed: int) -> np.ndarray:
    if shots < 1:
        raise ContractError("shots must be >= 1")
    probs = np.abs(psi.amplitudes) ** 2
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    rng = np.random.Generator(np.random.Philox(seed))
    u = rng.random(shots)
    idx = np.searchsorted(cdf, u, side="right")
    return np.minimum(idx, len(cdf) - 1)


def measure_sample(psi: QuantumState, shots: int, seed: int) -> dict[str, int]:
    """Histogram ``mosaic text -> count`` of ``shots`` Born-rule measurements, in rank order."""
    counts = Counter(sample_indices(psi, shots, seed).tolist())
    return {str(mosaic_from_rank(r, psi.n, psi.length)): counts[r] for r in sorted(counts)}


def hilbert_inject(psi: QuantumState) -> QuantumState:
    """Linear extension of ``|beta> -> |beta 1>``."""
    base = 2 * psi.n - 1
    amps = np.zeros(len(psi.amplitudes) * base, dtype=np.complex128)
    amps[np.arange(len(psi.amplitudes)) * base + (psi.n - 1)] = psi.amplitudes
    return QuantumState(amps, psi.n, psi.length + 1)


def inject_unitary(u: PermutationUnitary) -> PermutationUnitary:
    """The image of ``u`` under the lift to one more tile (last tile left alone)."""
    base = 2 * u.n - 1
    img = (u.image[:, None] * base + np.arange(base)[None, :]).reshape(-1)
    return PermutationUnitary(img, u.n, u.length + 1, f"iota({u.provenance})")


def same_type_quantum(psi1: QuantumState, psi2: QuantumState, table: OrbitTable) -> bool:
    """Fixed-length equivalence for basis states and uniform orbit superpositions.

    Raises :class:`ContractError` for any other kind of state.
    """
    _check_system(psi1.system, psi2.system)
    _check_system(psi1.system, (table.n, table.length))

    def classify(psi: QuantumState) -> tuple[str, int]:
        support = np.flatnonzero(psi.amplitudes)
        if len(support) == 1 and psi.amplitudes[support[0]] == 1:
            return "basis", int(table.labels[support[0]])
        orbit = int(table.labels[support[0]])
        if (
            np.array_equal(support, np.flatnonzero(table.labels == orbit))
            and psi == orbit_state(table, orbit)
        ):
            return "orbit", orbit
        raise ContractError("equivalence is decided only for basis states and uniform orbit superpositions")

    k1, o1 = classify(psi1)
    k2, o2 = classify(psi2)
    if k1 == "orbit" or k2 == "orbit":
        # orbit superpositions are fixed by every ambient unitary
        return psi1 == psi2
    return o1 == o2
