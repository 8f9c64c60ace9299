"""Fock-space bookkeeping: dark bases, dimension counting, truncated ladder operators.

Every other module builds its states and operators from the primitives here.
Basis ordering is fixed (descending east occupation) so that matrices written
in the dark basis have a single, unambiguous row/column convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12


@dataclass(frozen=True, order=True)
class OccupationState:
    """Photon occupation numbers (east, west) labelling one dark basis vector."""

    n_east: int
    n_west: int

    def __post_init__(self) -> None:
        if self.n_east < 0 or self.n_west < 0:
            raise ValueError(f"occupations must be non-negative, got {self}")

    @property
    def total(self) -> int:
        return self.n_east + self.n_west

    @property
    def label(self) -> str:
        return f"{self.n_east},{self.n_west}"

    @classmethod
    def from_label(cls, label: str) -> "OccupationState":
        parts = label.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'n_east,n_west', got {label!r}")
        try:
            n_east, n_west = (int(p.strip()) for p in parts)
        except ValueError as exc:
            raise ValueError(f"expected 'n_east,n_west', got {label!r}") from exc
        return cls(n_east, n_west)


@dataclass(frozen=True)
class DarkBasis:
    """Ordered dark basis for a fixed total photon number."""

    photon_count: int
    states: tuple[OccupationState, ...]

    @property
    def dimension(self) -> int:
        return len(self.states)

    def index_of(self, state: OccupationState) -> int:
        try:
            return self.states.index(state)
        except ValueError as exc:
            raise ValueError(f"{state} is not in the {self.photon_count}-photon dark basis") from exc

    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.states)


def dark_basis(photon_count: int) -> DarkBasis:
    """Dark basis for `photon_count` photons, ordered (P,0), (P-1,1), ..., (0,P)."""
    if photon_count < 0:
        raise ValueError("photon_count must be non-negative")
    states = tuple(OccupationState(photon_count - k, k) for k in range(photon_count + 1))
    return DarkBasis(photon_count, states)


def hilbert_dimension(photon_count: int, mode_count: int) -> int:
    """Number of ways to distribute `photon_count` photons over `mode_count` modes."""
    if photon_count < 0:
        raise ValueError("photon_count must be non-negative")
    if mode_count < 1:
        raise ValueError("mode_count must be positive")
    return math.comb(photon_count + mode_count - 1, photon_count)


def occupation_basis(photon_count: int, mode_count: int) -> tuple[tuple[int, ...], ...]:
    """All occupation tuples with the given total, in descending lexicographic order.

    For two modes this reproduces the dark_basis ordering; the four-mode case
    indexes the photon sectors used by the waveguide propagation lift.
    """

    def _generate(remaining: int, modes: int):
        if modes == 1:
            yield (remaining,)
            return
        for n in range(remaining, -1, -1):
            for rest in _generate(remaining - n, modes - 1):
                yield (n, *rest)

    if photon_count < 0:
        raise ValueError("photon_count must be non-negative")
    if mode_count < 1:
        raise ValueError("mode_count must be positive")
    return tuple(_generate(photon_count, mode_count))


@dataclass(frozen=True)
class ModeOperator:
    """A single-mode operator truncated at a maximum occupation (inclusive)."""

    cutoff: int
    matrix: np.ndarray


def lowering_operator(cutoff: int) -> ModeOperator:
    """Truncated bosonic lowering operator: entry (n-1, n) = sqrt(n)."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    m = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for n in range(1, cutoff + 1):
        m[n - 1, n] = math.sqrt(n)
    return ModeOperator(cutoff, m)


def raising_operator(cutoff: int) -> ModeOperator:
    """Conjugate transpose of the lowering operator at the same cutoff."""
    low = lowering_operator(cutoff)
    return ModeOperator(cutoff, low.matrix.conj().T.copy())


def identity_operator(cutoff: int) -> ModeOperator:
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    return ModeOperator(cutoff, np.eye(cutoff + 1, dtype=complex))


def two_mode_embed(op_east: ModeOperator, op_west: ModeOperator) -> np.ndarray:
    """Kronecker product over the east-major two-mode basis.

    Index convention: flat index = n_east * (cutoff_west + 1) + n_west.
    """
    return np.kron(op_east.matrix, op_west.matrix)


@dataclass(frozen=True)
class PureState:
    """Unit-norm complex amplitude vector over an ordered dark basis."""

    basis: DarkBasis
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.shape[0] != self.basis.dimension:
            raise ValueError(
                f"amplitude vector has length {amp.shape[0]}, basis dimension is {self.basis.dimension}"
            )
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")
        object.__setattr__(self, "amplitudes", amp)


def basis_state(photon_count: int, index: int) -> PureState:
    """The pure state |n_east, n_west> at the given dark-basis index."""
    basis = dark_basis(photon_count)
    if not 0 <= index < basis.dimension:
        raise ValueError(f"index {index} out of range for a {basis.dimension}-dimensional basis")
    amplitudes = np.zeros(basis.dimension, dtype=complex)
    amplitudes[index] = 1.0
    return PureState(basis, amplitudes)
