"""Scattering coefficients and 4x4 matrices of one rod-on-beam unit cell.

Conventions
-----------
Time dependence is e^{-i omega t}, so velocity = -i omega * displacement.
The transverse field in a uniform trench span is a superposition of four
components, ordered everywhere in this package as

    index 0: e^{-ikx}   propagating
    index 1: e^{+kx}    growing evanescent
    index 2: e^{+ikx}   propagating (opposite direction)
    index 3: e^{-kx}    decaying evanescent

A state vector holds the four complex amplitudes at a reference plane.  The
rod couples to the beam through a rigid piston of width a: displacement,
slope and curvature carry across the piston unchanged, while the shear
(third derivative) jumps by sigma * k^3 times the piston displacement, with
sigma the dimensionless dynamic stiffness of the rod.

The scattering matrix G relates the four components heading toward the
piston to the four heading away; the coupling matrix C rearranges the same
relation into a transfer map from the full state on the left of the piston
to the full state on its right.  Translating by half a cell on each side
(diagonal matrix D with phase phi = k(L+a)/2) yields the cell transfer
matrix T = D C D, which maps the state at the left cell edge to the state
at the right cell edge.  At zero coupling T is exactly
diag(e^{-ikL}, e^{+kL}, e^{+ikL}, e^{-kL}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .rod import RodModel, driving_impedance
from .trench import TrenchModel, flexural_wavevector

# above this |sigma| the closed forms switch to their infinite-stiffness
# limits; the switch is continuous to ~1e-8 and avoids cancellation.
SIGMA_LIMIT_SWITCH = 1e8
# working clamp so that characteristic-polynomial arithmetic stays finite
# when sigma is evaluated essentially on a pole
SIGMA_CLAMP = 1e12


@dataclass(frozen=True)
class UnitCellGeometry:
    """One periodic cell: rod of width a centered in a cell of pitch L."""

    rod_width: float  # a (m)
    cell_length: float  # L (m)
    trench: TrenchModel
    rod: RodModel

    def __post_init__(self) -> None:
        if not 0 < self.rod_width < self.cell_length:
            raise ConfigError(
                f"unit cell requires 0 < a < L, got a={self.rod_width}, "
                f"L={self.cell_length}"
            )


@dataclass(frozen=True)
class ScatterCoeffs:
    """Amplitude scattering coefficients of the loaded piston at one frequency.

    r, t            propagating -> propagating reflection / transmission
    r_ef = t_ef     evanescent -> propagating conversion
    r_fe = t_fe     propagating -> evanescent conversion
    r_e, t_e        evanescent -> evanescent reflection / transmission
    f_eff           dynamic stiffness per unit width per unit displacement (N m^-2)
    sigma           f_eff normalized by E_t I_t k^3 (dimensionless)
    """

    r: complex
    t: complex
    r_ef: complex
    t_ef: complex
    r_fe: complex
    t_fe: complex
    r_e: complex
    t_e: complex
    f_eff: float
    sigma: float


@dataclass(frozen=True)
class CellMatrices:
    """Frequency-resolved G, C, D, T matrices of one unit cell."""

    G: np.ndarray
    C: np.ndarray
    D: np.ndarray
    T: np.ndarray
    f: float
    k: float
    phi: float


def forcing_strength(cell: UnitCellGeometry, f: float) -> tuple[float, float]:
    """Dynamic stiffness of the rod on the piston: (f_eff, sigma) at frequency f.

    f_eff = -i omega Z_b is real for real f because Z_b is purely imaginary;
    sigma divides it by E_t I_t k^3.  Near an impedance pole both are huge;
    downstream consumers switch to analytic limits.
    """
    if not f > 0:
        raise ValueError("forcing_strength: f must be > 0")
    omega = 2.0 * math.pi * f
    zb = driving_impedance(cell.rod, f)
    f_eff = (-1j * omega * zb).real
    if math.isinf(f_eff) or math.isnan(f_eff):
        f_eff = math.copysign(math.inf, f_eff if not math.isnan(f_eff) else 1.0)
    k = flexural_wavevector(cell.trench, f)
    sigma = f_eff / (cell.trench.bending_stiffness * k**3)
    return f_eff, sigma


def _coeffs_from_sigma(k: float, a: float, sigma: float) -> tuple[complex, ...]:
    """The six closed-form coefficients (r, t, r_ef, r_fe, r_e, t_e)."""
    e_prop = cmath.exp(-1j * a * k)
    e_mix = cmath.exp((0.5 - 0.5j) * a * k)
    e_evan = cmath.exp(a * k)
    if abs(sigma) > SIGMA_LIMIT_SWITCH:
        # infinite-stiffness limits (virtual fixed constraint)
        r = -((1 - 1j) / 2) * e_prop
        t = ((1 + 1j) / 2) * e_prop
        r_ef = -((1 - 1j) / 2) * e_mix
        r_fe = -((1 + 1j) / 2) * e_mix
        r_e = -((1 + 1j) / 2) * e_evan
        t_e = ((1 - 1j) / 2) * e_evan
        return r, t, r_ef, r_fe, r_e, t_e
    den1 = 2 * sigma + 4 + 4j
    den2 = sigma + 2 + 2j
    r = -(1 - 1j) * e_prop * sigma / den1
    t = (0.5 + 0.5j) * e_prop * (sigma + 4) / den2
    r_ef = -(1 - 1j) * e_mix * sigma / den1
    r_fe = -(1 + 1j) * e_mix * sigma / den1
    r_e = -(1 + 1j) * e_evan * sigma / den1
    t_e = (0.5 - 0.5j) * e_evan * (sigma + 4j) / den2
    return r, t, r_ef, r_fe, r_e, t_e


def scatter_coefficients(cell: UnitCellGeometry, f: float) -> ScatterCoeffs:
    """Evaluate the closed-form scattering coefficients at frequency f."""
    f_eff, sigma = forcing_strength(cell, f)
    k = flexural_wavevector(cell.trench, f)
    r, t, r_ef, r_fe, r_e, t_e = _coeffs_from_sigma(k, cell.rod_width, sigma)
    return ScatterCoeffs(
        r=r, t=t, r_ef=r_ef, t_ef=r_ef, r_fe=r_fe, t_fe=r_fe, r_e=r_e, t_e=t_e,
        f_eff=f_eff, sigma=sigma,
    )


def _assembly_coeffs(k: float, a: float, sigma: float) -> tuple[complex, ...]:
    """Coefficients for matrix assembly: clamped sigma instead of exact limits.

    The exact infinite-stiffness limit makes the transmission block of G
    singular (the pinned piston transmits value and near field dependently),
    which would break the rearrangement into C.  Clamping sigma keeps the
    block invertible while staying within ~1e-12 of the limit coefficients.
    """
    s = clamped_sigma(sigma)
    den1 = 2 * s + 4 + 4j
    den2 = s + 2 + 2j
    e_prop = cmath.exp(-1j * a * k)
    e_mix = cmath.exp((0.5 - 0.5j) * a * k)
    e_evan = cmath.exp(a * k)
    r = -(1 - 1j) * e_prop * s / den1
    t = (0.5 + 0.5j) * e_prop * (s + 4) / den2
    r_ef = -(1 - 1j) * e_mix * s / den1
    r_fe = -(1 + 1j) * e_mix * s / den1
    r_e = -(1 + 1j) * e_evan * s / den1
    t_e = (0.5 - 0.5j) * e_evan * (s + 4j) / den2
    return r, t, r_ef, r_fe, r_e, t_e


def scattering_matrix(coeffs: ScatterCoeffs) -> np.ndarray:
    """Assemble the 4x4 G from the coefficients.

    G maps (incoming-left propagating/evanescent, incoming-right
    propagating/evanescent) amplitudes to the corresponding outgoing ones;
    the cell is mirror symmetric, so the same blocks appear twice.
    """
    r, t = coeffs.r, coeffs.t
    r_ef, t_ef = coeffs.r_ef, coeffs.t_ef
    r_fe, t_fe = coeffs.r_fe, coeffs.t_fe
    r_e, t_e = coeffs.r_e, coeffs.t_e
    return np.array(
        [
            [r, r_ef, t, t_ef],
            [r_fe, r_e, t_fe, t_e],
            [t, t_ef, r, r_ef],
            [t_fe, t_e, r_fe, r_e],
        ],
        dtype=complex,
    )


def coupling_matrix(G: np.ndarray) -> np.ndarray:
    """Rearrange G into the left-to-right transfer map C across the piston.

    Writing the G relation blockwise with R (reflection-like) and M
    (transmission-like) 2x2 blocks, the state on the right of the piston
    follows from the state on its left as

        C = [[ M^-1,        -M^-1 R          ],
             [ R M^-1,       M - R M^-1 R    ]]

    in the (propagating, evanescent) x (toward, away) block grouping.
    """
    R = G[np.ix_([0, 1], [0, 1])]
    M = G[np.ix_([0, 1], [2, 3])]
    Minv = np.linalg.inv(M)
    C = np.empty((4, 4), dtype=complex)
    C[np.ix_([0, 1], [0, 1])] = Minv
    C[np.ix_([0, 1], [2, 3])] = -Minv @ R
    C[np.ix_([2, 3], [0, 1])] = R @ Minv
    C[np.ix_([2, 3], [2, 3])] = M - R @ Minv @ R
    return C


def propagation_matrix(k: float, phi: float) -> np.ndarray:
    """Diagonal half-cell translation D = diag(e^{-i phi}, e^{phi}, e^{i phi}, e^{-phi})."""
    return np.diag(
        [
            cmath.exp(-1j * phi),
            cmath.exp(phi),
            cmath.exp(1j * phi),
            cmath.exp(-phi),
        ]
    ).astype(complex)


def cell_matrices(cell: UnitCellGeometry, f: float) -> CellMatrices:
    """Assemble G, C, D and the cell transfer matrix T = D C D at frequency f."""
    f_eff, sigma = forcing_strength(cell, f)
    k = flexural_wavevector(cell.trench, f)
    r, t, r_ef, r_fe, r_e, t_e = _assembly_coeffs(k, cell.rod_width, sigma)
    coeffs = ScatterCoeffs(
        r=r, t=t, r_ef=r_ef, t_ef=r_ef, r_fe=r_fe, t_fe=r_fe, r_e=r_e, t_e=t_e,
        f_eff=f_eff, sigma=sigma,
    )
    G = scattering_matrix(coeffs)
    C = coupling_matrix(G)
    phi = k * (cell.cell_length + cell.rod_width) / 2.0
    D = propagation_matrix(k, phi)
    T = D @ C @ D
    if not np.all(np.isfinite(T)):
        raise ValueError(f"cell_matrices: non-finite transfer matrix at f={f}")
    return CellMatrices(G=G, C=C, D=D, T=T, f=f, k=k, phi=phi)


def clamped_sigma(sigma: float) -> float:
    """Clamp sigma to +-SIGMA_CLAMP so polynomial arithmetic stays finite."""
    if sigma > SIGMA_CLAMP:
        return SIGMA_CLAMP
    if sigma < -SIGMA_CLAMP:
        return -SIGMA_CLAMP
    return sigma

