"""Medium and probe parameters for the Er:YAG ladder system.

All rates and Rabi frequencies are dimensionless, measured in units of the
|3>-|1> coherence decay rate gamma31 (= 1 by default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

CONCENTRATIONS: tuple[float, ...] = (0.5, 3.0, 15.0, 33.0, 100.0)


@dataclass(frozen=True)
class TableRow:
    """One row of the Er:YAG concentration table."""

    concentration: float
    mu23: float  # 1e-32 C m
    tau2: float  # us, 4I13/2
    tau3: float  # us, 4S3/2
    omega_c: float


# Concentration-dependent dipole moment, lifetimes and control Rabi frequency.
TABLE_1: tuple[TableRow, ...] = (
    TableRow(0.5, 1.69, 1.00, 2.15, 25.35),
    TableRow(3.0, 1.84, 1.38, 1.61, 27.60),
    TableRow(15.0, 1.36, 1.38, 0.15, 20.40),
    TableRow(33.0, 1.19, 0.31, 0.08, 17.85),
    TableRow(100.0, 1.14, 0.04, 0.01, 17.10),
)

# (mu21, mu31) per concentration, as used for the efficiency curves.
# The 100% row has no dipole pair of its own; it borrows the 33% values.
DIPOLE_PAIRS: dict[float, tuple[float, float]] = {
    0.5: (3.25, 1.59),
    3.0: (3.81, 1.72),
    15.0: (2.82, 1.27),
    33.0: (2.47, 1.11),
}
FALLBACK_DIPOLE_SOURCE = 33.0


class ParameterError(ValueError):
    """Raised when a physical parameter violates its invariant."""


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be a finite positive number, got {value!r}")


def _require_nonnegative(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
        raise ParameterError(f"{name} must be a finite non-negative number, got {value!r}")


def canonical_concentration(label: float) -> float:
    """Map a user-supplied label (``3``, ``"3"``, ``3.0``) onto a table key."""
    try:
        value = float(label)
    except (TypeError, ValueError):
        raise ParameterError(f"unknown concentration {label!r}") from None
    for known in CONCENTRATIONS:
        if abs(value - known) < 1e-9:
            return known
    raise ParameterError(
        f"unknown concentration {label!r}; expected one of "
        + ", ".join(format_concentration(c) for c in CONCENTRATIONS)
    )


def format_concentration(c: float) -> str:
    return f"{c:g}"


def table_row(concentration: float) -> TableRow:
    key = canonical_concentration(concentration)
    return next(row for row in TABLE_1 if row.concentration == key)


@dataclass(frozen=True)
class DecayRates:
    """Coherence and population relaxation rates.

    ``gamma21``, ``gamma31`` and ``gamma32`` damp the coherences; the
    microscopic rates ``Gamma21``, ``Gamma32`` (radiative) and ``gamma2``,
    ``gamma3`` (non-radiative) drive the populations in the steady-state
    solver. Direct |3> -> |1> decay is neglected.
    """

    gamma21: float = 3.0
    gamma31: float = 1.0
    gamma32: float = 1.0
    Gamma21: float = 3.0
    Gamma32: float = 1.0
    gamma2: float = 3.0
    gamma3: float = 1.0

    def __post_init__(self) -> None:
        for name in ("gamma21", "gamma31", "gamma32", "Gamma21", "Gamma32", "gamma2", "gamma3"):
            _require_positive(f"decay.{name}", getattr(self, name))

    @classmethod
    def from_microscopic(
        cls, Gamma21: float, Gamma32: float, gamma2: float, gamma3: float
    ) -> "DecayRates":
        Gamma31 = 0.0
        return cls(
            gamma21=(Gamma21 + gamma2) / 2,
            gamma31=(Gamma31 + Gamma32 + gamma3) / 2,
            gamma32=(Gamma32 + gamma3) / 2,
            Gamma21=Gamma21,
            Gamma32=Gamma32,
            gamma2=gamma2,
            gamma3=gamma3,
        )

    @property
    def level2_decay(self) -> float:
        """Total population decay rate of |2> (to |1>)."""
        return self.Gamma21 + self.gamma2

    @property
    def level3_decay(self) -> float:
        """Total population decay rate of |3> (to |2>)."""
        return self.Gamma32 + self.gamma3


@dataclass(frozen=True)
class MediumConfig:
    """Parameters of one doped crystal."""

    label: float = 3.0
    omega_c: float = 27.60
    mu21: float = 3.81
    mu31: float = 1.72
    beta21: float = 8.0
    beta31: float = 8.0 / 3.0
    tau2: float = 1.38
    tau3: float = 1.61
    mu23: float = 1.84
    decay: DecayRates = field(default_factory=DecayRates)
    dipoles_borrowed: bool = False

    def __post_init__(self) -> None:
        # omega_c = 0 is the control-off limit: plain exponential probe attenuation.
        _require_nonnegative("medium.omega_c", self.omega_c)
        for name in ("mu21", "mu31", "beta21", "beta31", "tau2", "tau3", "mu23"):
            _require_positive(f"medium.{name}", getattr(self, name))
        if not isinstance(self.decay, DecayRates):
            raise ParameterError("medium.decay must be a DecayRates instance")

    @property
    def dipole_ratio(self) -> float:
        return self.mu21 / self.mu31

    def with_overrides(self, **changes) -> "MediumConfig":
        return replace(self, **changes)


def medium_for(concentration: float, **overrides) -> MediumConfig:
    """Build the default medium for a table concentration.

    ``overrides`` replace individual fields after the table defaults are
    filled in (e.g. ``beta21`` or ``decay``).
    """
    row = table_row(concentration)
    borrowed = row.concentration not in DIPOLE_PAIRS
    mu21, mu31 = DIPOLE_PAIRS[FALLBACK_DIPOLE_SOURCE if borrowed else row.concentration]
    medium = MediumConfig(
        label=row.concentration,
        omega_c=row.omega_c,
        mu21=mu21,
        mu31=mu31,
        tau2=row.tau2,
        tau3=row.tau3,
        mu23=row.mu23,
        dipoles_borrowed=borrowed,
    )
    return replace(medium, **overrides) if overrides else medium


def all_media(**overrides) -> list[MediumConfig]:
    return [medium_for(c, **overrides) for c in CONCENTRATIONS]


@dataclass(frozen=True)
class ProbeSpec:
    """Laguerre-Gaussian vortex probe at the crystal entrance."""

    e_p: float = 5.0
    waist: float = 1.0
    ell: int = 1
    delta_p: float = 0.0

    def __post_init__(self) -> None:
        _require_positive("probe.waist", self.waist)
        if isinstance(self.ell, bool) or int(self.ell) != self.ell:
            raise ParameterError(f"probe.ell must be an integer, got {self.ell!r}")
        if not math.isfinite(self.e_p):
            raise ParameterError("probe.e_p must be finite")
        if not math.isfinite(self.delta_p):
            raise ParameterError("probe.delta_p must be finite")
        object.__setattr__(self, "ell", int(self.ell))
