"""Flexural-wave dispersion of the bare trench beam.

Only the lowest antisymmetric (flexural) branch is retained; the lateral
stretching branch is neglected because it does not couple to the vertical rod
motion.  Thin-beam validity is not gated here: callers can report
wavelength-over-thickness so users see where the approximation is strained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .materials import LaminateSection


@dataclass(frozen=True)
class TrenchModel:
    """Immutable trench description derived from its laminate section."""

    section: LaminateSection

    @property
    def thickness(self) -> float:
        return self.section.thickness

    @property
    def bending_stiffness(self) -> float:
        """E*I per unit width (N m)."""
        return self.section.effective_E * self.section.inertia_per_width


def flexural_wavevector(trench: TrenchModel, f: float) -> float:
    """Real flexural wavevector k (rad/m) at frequency f > 0.

    Closed form of the positive real root of E I k^4 = rho A omega^2 for the
    per-unit-width section, i.e.
    k = sqrt(2) * 3^(1/4) * sqrt(omega) * rho^(1/4) / (sqrt(h) * E^(1/4)).
    """
    if not f > 0:
        raise ValueError("flexural_wavevector: f must be > 0")
    omega = 2.0 * math.pi * f
    sec = trench.section
    return (
        math.sqrt(2.0)
        * 3.0**0.25
        * math.sqrt(omega)
        * sec.effective_rho**0.25
        / (math.sqrt(sec.thickness) * sec.effective_E**0.25)
    )


def wavelength_over_thickness(trench: TrenchModel, f: float) -> float:
    """Flexural wavelength divided by trench thickness; small values strain the model."""
    k = flexural_wavevector(trench, f)
    return 2.0 * math.pi / k / trench.thickness
