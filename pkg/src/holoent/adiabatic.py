"""Coupled-mode propagation through the four-waveguide chip.

Mode order is (east, central, west, aux). The central waveguide is a hub: it
couples to each outer waveguide with a Gaussian profile along the propagation
axis and all propagation constants are equal (zero diagonal), which keeps the
zero-eigenvalue dark subspace two-dimensional for a single photon.

The default schedule uses a wide auxiliary pulse bridging the whole chip with
offset east/west pulses inside it. At both facets the auxiliary coupling
dominates, so the instantaneous dark subspace coincides with span{east, west}
exactly where photons enter and leave; in between, the coupling direction
traces a closed loop whose enclosed solid angle sets the dark-subspace
rotation angle. The loop shape is configuration, not code: schedules load from
a JSON file and the packaged default is representative, not a device model.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .fock import occupation_basis
from .holonomy import multimode_lift, single_mode_rotation

MODE_EAST, MODE_CENTRAL, MODE_WEST, MODE_AUX = 0, 1, 2, 3

BOUNDARY_DECAY = 1e-6
UNITARITY_ABORT = 1e-6
DEFAULT_STEPS = 24000


class ScheduleError(ValueError):
    """A pulse schedule violates the facet boundary conditions."""


class IntegrationError(RuntimeError):
    """The propagation integrator drifted beyond tolerance."""


@dataclass(frozen=True)
class CouplingProfile:
    """Gaussian coupling between one outer waveguide and the central hub."""

    peak: float
    center: float
    sigma: float

    def __post_init__(self) -> None:
        if self.peak <= 0:
            raise ScheduleError(f"peak coupling must be positive, got {self.peak}")
        if self.sigma <= 0:
            raise ScheduleError(f"sigma must be positive, got {self.sigma}")

    def value(self, z):
        arg = (np.asarray(z, dtype=float) - self.center) / self.sigma
        return self.peak * np.exp(-0.5 * arg * arg)


@dataclass(frozen=True)
class PulseSchedule:
    """Coupling profiles for the three outer waveguides over a z interval."""

    east: CouplingProfile
    west: CouplingProfile
    aux: CouplingProfile
    z_span: tuple[float, float]
    steps: int = DEFAULT_STEPS

    def __post_init__(self) -> None:
        z_start, z_end = self.z_span
        if not z_start < z_end:
            raise ScheduleError(f"z_span must be increasing, got {self.z_span}")
        if self.steps < 16:
            raise ScheduleError("steps must be >= 16")
        for name, profile in (("east", self.east), ("west", self.west), ("aux", self.aux)):
            for z in (z_start, z_end):
                if profile.value(z) > BOUNDARY_DECAY * profile.peak:
                    raise ScheduleError(
                        f"{name} coupling has not decayed below {BOUNDARY_DECAY:g} of its peak "
                        f"at z = {z}; facet states would not be dark"
                    )
        object.__setattr__(self, "z_span", (float(z_start), float(z_end)))

    @property
    def omega_t(self) -> float:
        """Working pulse area Omega*T with T = sqrt(2) * sigma of the east pulse."""
        return math.sqrt(2.0) * self.east.peak * self.east.sigma

    def dilate(self, scale: float) -> "PulseSchedule":
        """Stretch every length scale by `scale`, leaving peak couplings fixed."""
        if scale <= 0:
            raise ScheduleError("scale must be positive")

        def stretch(p: CouplingProfile) -> CouplingProfile:
            return CouplingProfile(p.peak, p.center * scale, p.sigma * scale)

        return PulseSchedule(
            stretch(self.east),
            stretch(self.west),
            stretch(self.aux),
            (self.z_span[0] * scale, self.z_span[1] * scale),
            self.steps,
        )

    def reversed(self) -> "PulseSchedule":
        """Mirror the schedule in z (traverse the coupling loop backwards)."""
        z_start, z_end = self.z_span

        def mirror(p: CouplingProfile) -> CouplingProfile:
            return CouplingProfile(p.peak, z_start + z_end - p.center, p.sigma)

        return PulseSchedule(
            mirror(self.east), mirror(self.west), mirror(self.aux), self.z_span, self.steps
        )

    def to_dict(self) -> dict:
        return {
            "east": vars(self.east),
            "west": vars(self.west),
            "aux": vars(self.aux),
            "z_span": list(self.z_span),
            "steps": self.steps,
        }


def schedule_from_dict(data: dict) -> PulseSchedule:
    try:
        profiles = {
            name: CouplingProfile(
                float(data[name]["peak"]), float(data[name]["center"]), float(data[name]["sigma"])
            )
            for name in ("east", "west", "aux")
        }
        z_span = (float(data["z_span"][0]), float(data["z_span"][1]))
        steps = int(data.get("steps", DEFAULT_STEPS))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ScheduleError):
            raise
        raise ScheduleError(f"malformed schedule: {exc}") from exc
    return PulseSchedule(profiles["east"], profiles["west"], profiles["aux"], z_span, steps)


def load_schedule(path: str | Path) -> PulseSchedule:
    """Read a schedule from a JSON file (keys east/west/aux, z_span, steps)."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScheduleError(f"schedule file is not valid JSON: {exc}") from exc
    return schedule_from_dict(data)


def default_schedule() -> PulseSchedule:
    """The packaged reference schedule (adiabatic working regime)."""
    text = resources.files("holoent").joinpath("data/default_schedule.json").read_text()
    return schedule_from_dict(json.loads(text))


def hamiltonian_at(schedule: PulseSchedule, z: float) -> np.ndarray:
    """Single-photon coupled-mode Hamiltonian at position z (zero diagonal)."""
    h = np.zeros((4, 4), dtype=complex)
    for mode, profile in (
        (MODE_EAST, schedule.east),
        (MODE_WEST, schedule.west),
        (MODE_AUX, schedule.aux),
    ):
        coupling = float(profile.value(z))
        h[MODE_CENTRAL, mode] = coupling
        h[mode, MODE_CENTRAL] = coupling
    return h


def _coupling_table(schedule: PulseSchedule) -> tuple[np.ndarray, float]:
    """-i*H sampled on the half-step grid needed by RK4."""
    n = schedule.steps
    z_start, z_end = schedule.z_span
    dz = (z_end - z_start) / n
    zs = z_start + 0.5 * dz * np.arange(2 * n + 1)
    table = np.zeros((2 * n + 1, 4, 4), dtype=complex)
    for mode, profile in (
        (MODE_EAST, schedule.east),
        (MODE_WEST, schedule.west),
        (MODE_AUX, schedule.aux),
    ):
        values = -1j * profile.value(zs)
        table[:, MODE_CENTRAL, mode] = values
        table[:, mode, MODE_CENTRAL] = values
    return table, dz


def propagate_single_photon(schedule: PulseSchedule) -> np.ndarray:
    """Transfer matrix of i dpsi/dz = H(z) psi across the chip, via fixed-step RK4."""
    table, dz = _coupling_table(schedule)
    u = np.eye(4, dtype=complex)
    for k in range(schedule.steps):
        g0 = table[2 * k]
        g_mid = table[2 * k + 1]
        g1 = table[2 * k + 2]
        k1 = g0 @ u
        k2 = g_mid @ (u + (0.5 * dz) * k1)
        k3 = g_mid @ (u + (0.5 * dz) * k2)
        k4 = g1 @ (u + dz * k3)
        u = u + (dz / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    drift = np.abs(u @ u.conj().T - np.eye(4)).max()
    if drift > UNITARITY_ABORT:
        raise IntegrationError(
            f"unitarity drift {drift:.3e} exceeds {UNITARITY_ABORT:g}; increase steps"
        )
    return u


def dark_holonomy(schedule: PulseSchedule, photon_count: int) -> tuple[np.ndarray, float]:
    """Holonomy estimate on the P-photon dark facet states {|n_E, 0, n_W, 0>}.

    The single-photon transfer matrix is lifted to the P-photon sector of the
    four-mode occupation space and projected onto the facet-dark block, ordered
    by descending east occupation. Leakage is 1 - (smallest singular value)^2
    of that block.
    """
    if photon_count < 1:
        raise ValueError("photon_count must be >= 1")
    transfer = propagate_single_photon(schedule)
    lifted = multimode_lift(transfer, photon_count)
    basis = occupation_basis(photon_count, 4)
    dark_indices = [
        i for i, occ in enumerate(basis) if occ[MODE_CENTRAL] == 0 and occ[MODE_AUX] == 0
    ]
    block = lifted[np.ix_(dark_indices, dark_indices)]
    smallest = np.linalg.svd(block, compute_uv=False)[-1]
    leakage = max(0.0, 1.0 - float(smallest) ** 2)
    return block, leakage


def fit_rotation_phase(block: np.ndarray, photon_count: int) -> float:
    """Least-squares phase of the single-parameter holonomy closest to `block`.

    Maximizes Re tr(lift(R(phi))^dag block) over phi in (-pi/2, pi/2]; for an
    exactly represented rotation this recovers phi exactly.
    """
    block = np.asarray(block, dtype=complex)

    def score(phi: float) -> float:
        model = multimode_lift(single_mode_rotation(phi), photon_count)
        return float(np.einsum("ij,ij->", model.conj(), block).real)

    points = 720
    grid = [-0.5 * math.pi + (k + 0.5) * math.pi / points for k in range(points)]
    values = [score(phi) for phi in grid]
    best = int(np.argmax(values))
    lo = grid[best] - math.pi / points
    hi = grid[best] + math.pi / points
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = score(c), score(d)
    while (b - a) > 1e-12:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = score(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = score(d)
    return 0.5 * (a + b)


def lz_error(omega_t: float) -> float:
    """Landau-Zener style single-photon diabatic error estimate exp(-sqrt(2)*Omega*T)."""
    if omega_t <= 0:
        raise ValueError("omega_t must be positive")
    return math.exp(-math.sqrt(2.0) * omega_t)


def scan_leakage(schedule: PulseSchedule) -> float:
    """End-of-chip population outside {east, west} for an east-facet input photon."""
    transfer = propagate_single_photon(schedule)
    return float(
        abs(transfer[MODE_CENTRAL, MODE_EAST]) ** 2 + abs(transfer[MODE_AUX, MODE_EAST]) ** 2
    )


def diabatic_scan(
    schedule: PulseSchedule, omega_t_values: list[float]
) -> list[tuple[float, float, float]]:
    """Numeric leakage vs the analytic estimate over a range of pulse areas.

    Each scan point dilates the reference schedule so its working pulse area
    matches the requested omega_t, then propagates a single east photon.
    """
    base = schedule.omega_t
    results = []
    for omega_t in omega_t_values:
        if omega_t <= 0:
            raise ValueError("omega_t values must be positive")
        dilated = schedule.dilate(omega_t / base)
        results.append((float(omega_t), scan_leakage(dilated), lz_error(omega_t)))
    return results
