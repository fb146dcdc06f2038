"""Model parameters of the two-mode interacting-boson Hamiltonian.

The Hamiltonian is fixed by six real couplings::

    H = alpha11 a1*a1 + alpha22 a2*a2 + alpha12 (a1*a2 - a2*a1)
        + beta11/2 (a1*^2 - a1^2) + beta22/2 (a2*^2 - a2^2)
        + beta12 (a1*a2* - a2 a1)

The alpha12 and beta terms are anti-Hermitian, so H is non-Hermitian
whenever any of them is nonzero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .errors import ValidationError

JSON_KEYS = ("alpha11", "alpha22", "alpha12", "beta11", "beta22", "beta12")


@dataclass(frozen=True)
class ModelParameters:
    """The six real couplings, in dimensionless energy units.

    Both diagonal energies must be strictly positive; every value must be
    finite.
    """

    alpha11: float
    alpha22: float
    alpha12: float = 0.0
    beta11: float = 0.0
    beta22: float = 0.0
    beta12: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValidationError(f"{f.name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ValidationError(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, float(value))
        if self.alpha11 <= 0 or self.alpha22 <= 0:
            raise ValidationError(
                f"diagonal couplings must be positive: "
                f"alpha11={self.alpha11}, alpha22={self.alpha22}"
            )

    @property
    def is_hermitian(self) -> bool:
        """True when all anti-Hermitian couplings vanish."""
        return self.alpha12 == 0.0 and self.beta11 == 0.0 and self.beta22 == 0.0 and self.beta12 == 0.0

    def to_dict(self) -> dict:
        return {key: getattr(self, key) for key in JSON_KEYS}

    @classmethod
    def from_dict(cls, data: dict) -> "ModelParameters":
        """Build from the canonical JSON mapping; unknown keys are rejected."""
        if not isinstance(data, dict):
            raise ValidationError(f"model must be a JSON object, got {type(data).__name__}")
        unknown = set(data) - set(JSON_KEYS)
        if unknown:
            raise ValidationError(f"unknown model key {sorted(unknown)[0]!r}")
        missing = [k for k in ("alpha11", "alpha22") if k not in data]
        if missing:
            raise ValidationError(f"missing model key {missing[0]!r}")
        return cls(**{key: data[key] for key in JSON_KEYS if key in data})
