"""Entanglement quantification for states split between east and west waveguides.

Dark-basis pure states are embedded into the full two-mode occupation product
space before tracing, because the bipartition is physical (east vs west), then
quantified via von Neumann / Renyi-2 entropies, the purity-based separability
test, Schmidt decomposition, and logarithmic negativity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .fock import PureState

Side = Literal["east", "west"]

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIGENVALUE_FLOOR = 1e-12
NEGATIVE_EIGENVALUE_TOL = 1e-9


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian unit-trace matrix over a product of occupation-number modes.

    `dims` lists the local dimensions; the flat index is east-major, i.e.
    index = n_east * d_west + n_west for the two-mode case.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        side = math.prod(self.dims)
        if m.shape != (side, side):
            raise ValueError(f"matrix shape {m.shape} does not match dims {self.dims}")
        herm_defect = np.abs(m - m.conj().T).max()
        if herm_defect > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
        trace_defect = abs(np.trace(m) - 1.0)
        if trace_defect > TRACE_TOL:
            raise ValueError(f"trace deviates from 1 by {trace_defect:.3e}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))


def density_from_pure(state: PureState) -> DensityMatrix:
    """Projector |psi><psi| of a dark state embedded in the two-mode product space."""
    d = state.basis.photon_count + 1
    psi = np.zeros(d * d, dtype=complex)
    for amp, occ in zip(state.amplitudes, state.basis.states):
        psi[occ.n_east * d + occ.n_west] = amp
    return DensityMatrix(np.outer(psi, psi.conj()), (d, d))


def _require_bipartite(rho: DensityMatrix) -> tuple[int, int]:
    if len(rho.dims) != 2:
        raise ValueError(f"operation needs a bipartite density matrix, got dims {rho.dims}")
    return rho.dims[0], rho.dims[1]


def reduce(rho: DensityMatrix, keep: Side) -> DensityMatrix:
    """Partial trace over the discarded mode."""
    d_east, d_west = _require_bipartite(rho)
    t = rho.matrix.reshape(d_east, d_west, d_east, d_west)
    if keep == "east":
        reduced = np.einsum("ijkj->ik", t)
        dims = (d_east,)
    elif keep == "west":
        reduced = np.einsum("ijil->jl", t)
        dims = (d_west,)
    else:
        raise ValueError(f"keep must be 'east' or 'west', got {keep!r}")
    return DensityMatrix(reduced, dims)


def _checked_eigenvalues(rho: DensityMatrix) -> np.ndarray:
    evals = np.linalg.eigvalsh(rho.matrix)
    if evals.min() < -NEGATIVE_EIGENVALUE_TOL:
        raise ValueError(f"density matrix has eigenvalue {evals.min():.3e} below tolerance")
    return np.clip(evals, 0.0, None)


def von_neumann_entropy_bits(rho: DensityMatrix) -> float:
    """-Tr(rho log2 rho); eigenvalues below the floor contribute nothing."""
    evals = _checked_eigenvalues(rho)
    evals = evals[evals > EIGENVALUE_FLOOR]
    return max(0.0, float(-(evals * np.log2(evals)).sum()))


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2)."""
    return float(np.einsum("ij,ji->", rho.matrix, rho.matrix).real)


def renyi2_bits(rho: DensityMatrix) -> float:
    """Second-order Renyi entropy, -log2 Tr(rho^2)."""
    return -math.log2(purity(rho)) + 0.0


def entropic_inequality_violated(global_rho: DensityMatrix) -> tuple[bool, bool]:
    """Purity-based separability test per subsystem.

    Separable states keep each subsystem purity at or above the global purity;
    a strictly smaller subsystem purity therefore witnesses entanglement.
    """
    _require_bipartite(global_rho)
    global_purity = purity(global_rho)
    east_purity = purity(reduce(global_rho, "east"))
    west_purity = purity(reduce(global_rho, "west"))
    margin = 1e-12
    return east_purity < global_purity - margin, west_purity < global_purity - margin


def schmidt(state: PureState) -> np.ndarray:
    """Descending Schmidt coefficients across the east/west split."""
    d = state.basis.photon_count + 1
    m = np.zeros((d, d), dtype=complex)
    for amp, occ in zip(state.amplitudes, state.basis.states):
        m[occ.n_east, occ.n_west] = amp
    return np.linalg.svd(m, compute_uv=False)


def entanglement_entropy_bits(state: PureState) -> float:
    """Entanglement entropy of a pure dark state (entropy of the east reduction)."""
    return von_neumann_entropy_bits(reduce(density_from_pure(state), "east"))


def partial_transpose(rho: DensityMatrix, side: Side) -> np.ndarray:
    """Transpose the chosen mode's indices; Hermitian, unit trace, possibly non-PSD."""
    d_east, d_west = _require_bipartite(rho)
    t = rho.matrix.reshape(d_east, d_west, d_east, d_west)
    if side == "east":
        swapped = t.transpose(2, 1, 0, 3)
    elif side == "west":
        swapped = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"side must be 'east' or 'west', got {side!r}")
    return swapped.reshape(d_east * d_west, d_east * d_west)


def log_negativity(rho: DensityMatrix, side: Side = "east") -> float:
    """log2 of the trace norm of the partial transpose, clamped at zero."""
    pt = partial_transpose(rho, side)
    evals = np.linalg.eigvalsh(pt)
    trace_norm = float(np.abs(evals).sum())
    return max(0.0, math.log2(trace_norm))
