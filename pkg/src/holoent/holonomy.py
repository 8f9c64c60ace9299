"""Holonomy matrices on dark Fock bases and entanglement-maximizing phase search.

The chip's action on the (P+1)-dimensional dark subspace is generated by a
single-parameter rotation of the east/west mode pair; multi-photon inputs see
its bosonic lift. The explicit 3x3 form `u3` is kept as the golden reference
for the two-photon case.
"""

from __future__ import annotations

import math

import numpy as np

from . import entanglement
from .fock import PureState, basis_state, dark_basis, occupation_basis

UNITARITY_TOL = 1e-9
DEFAULT_SWEEP_POINTS = 2048


def u3(phi: float) -> np.ndarray:
    """The 3x3 holonomy on the two-photon dark basis {|2,0>, |1,1>, |0,2>}."""
    c, s = math.cos(phi), math.sin(phi)
    sc = math.sqrt(2.0) * s * c
    return np.array(
        [
            [c * c, -sc, s * s],
            [sc, math.cos(2.0 * phi), -sc],
            [s * s, sc, c * c],
        ],
        dtype=complex,
    )


def single_mode_rotation(phi: float) -> np.ndarray:
    """Rotation on the single-photon dark basis [(1,0), (0,1)]."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]], dtype=complex)


def multimode_lift(u: np.ndarray, photon_count: int) -> np.ndarray:
    """Lift a K-mode single-particle unitary to the `photon_count`-photon sector.

    Each input occupation state is expanded as a product of transformed
    creation operators, (sum_j u[j,k] d_j^dag)^{n_k} acting on vacuum; the
    resulting polynomial coefficients, with the sqrt(n!) normalizations, are
    the matrix elements over occupation_basis(photon_count, K).
    """
    u = np.asarray(u, dtype=complex)
    modes = u.shape[0]
    basis = occupation_basis(photon_count, modes)
    index = {occ: i for i, occ in enumerate(basis)}
    dim = len(basis)
    lifted = np.zeros((dim, dim), dtype=complex)
    for col, occ in enumerate(basis):
        poly: dict[tuple[int, ...], complex] = {(0,) * modes: 1.0 + 0.0j}
        for k, n_k in enumerate(occ):
            for _ in range(n_k):
                grown: dict[tuple[int, ...], complex] = {}
                for mono, coeff in poly.items():
                    for j in range(modes):
                        w = u[j, k]
                        if w == 0:
                            continue
                        key = mono[:j] + (mono[j] + 1,) + mono[j + 1 :]
                        grown[key] = grown.get(key, 0.0j) + coeff * w
                poly = grown
        in_norm = math.prod(math.factorial(n) for n in occ)
        for mono, coeff in poly.items():
            out_norm = math.prod(math.factorial(m) for m in mono)
            lifted[index[mono], col] = coeff * math.sqrt(out_norm / in_norm)
    return lifted


def fock_lift(u2: np.ndarray, photon_count: int) -> np.ndarray:
    """(P+1)x(P+1) representation of a 2x2 unitary on dark_basis(photon_count)."""
    u2 = np.asarray(u2, dtype=complex)
    if u2.shape != (2, 2):
        raise ValueError("fock_lift expects a 2x2 matrix")
    if photon_count < 1:
        raise ValueError("photon_count must be >= 1")
    defect = np.abs(u2 @ u2.conj().T - np.eye(2)).max()
    if defect > UNITARITY_TOL:
        raise ValueError(f"input matrix is not unitary (defect {defect:.3e})")
    return multimode_lift(u2, photon_count)


def apply_holonomy(u: np.ndarray, state: PureState) -> PureState:
    """Apply a dark-basis unitary to a dark state (column-vector convention)."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (state.basis.dimension, state.basis.dimension):
        raise ValueError(
            f"matrix of side {u.shape[0]} does not match basis dimension {state.basis.dimension}"
        )
    return PureState(state.basis, u @ state.amplitudes)


def phi_maximally_entangled() -> float:
    """The phase at which the |1,1> input yields an equal-amplitude superposition."""
    return 0.5 * math.atan(math.sqrt(2.0))


def _golden_section_max(f, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def entropy_at_phase(phi: float, photon_count: int, input_index: int) -> float:
    """Entanglement entropy (bits) of the chip output for one dark basis input."""
    u = fock_lift(single_mode_rotation(phi), photon_count)
    out = apply_holonomy(u, basis_state(photon_count, input_index))
    return entanglement.entanglement_entropy_bits(out)


def max_entropy_over_phase(
    photon_count: int, input_index: int, points: int = DEFAULT_SWEEP_POINTS
) -> tuple[float, float]:
    """Maximize the output entanglement entropy over the phase domain [0, pi).

    Grid scan followed by golden-section refinement of every near-maximal grid
    peak; ties between refined maxima resolve to the lowest phase.
    """
    if photon_count < 1:
        raise ValueError("photon_count must be >= 1")
    if not 0 <= input_index <= photon_count:
        raise ValueError(f"input_index {input_index} out of range for {photon_count} photons")
    if points < 8:
        raise ValueError("points must be >= 8")

    def objective(phi: float) -> float:
        return entropy_at_phase(phi, photon_count, input_index)

    step = math.pi / points
    values = [objective(k * step) for k in range(points)]
    best_grid = max(values)
    # the objective is pi-periodic, so neighbours wrap around the grid
    candidates = [
        k
        for k in range(points)
        if values[k] >= best_grid - 1e-6
        and values[k] >= values[(k - 1) % points]
        and values[k] >= values[(k + 1) % points]
    ]
    refined: list[tuple[float, float]] = []
    for k in candidates:
        lo = max(0.0, (k - 1) * step)
        hi = min(math.pi, (k + 1) * step)
        refined.append(_golden_section_max(objective, lo, hi))
    refined.sort(key=lambda pair: pair[0])
    best_phi, best_val = refined[0]
    for phi, val in refined[1:]:
        if val > best_val + 1e-12:
            best_phi, best_val = phi, val
    return best_phi, best_val
