from __future__ import annotations

import cmath
from dataclasses import dataclass, fields


class FamilyError(ValueError):
    """A family or transform was specified with forbidden parameters."""


class DomainError(ArithmeticError):
    """A weight could not be evaluated at the requested point."""


@dataclass(frozen=True)
class WeightVector:
    """The seven Boltzmann weights a1..a7 at one evaluation point."""

    a1: complex
    a2: complex
    a3: complex
    a4: complex
    a5: complex
    a6: complex
    a7: complex

    def __post_init__(self):
        for f in fields(self):
            v = complex(getattr(self, f.name))
            if not cmath.isfinite(v):
                raise DomainError(f"weight {f.name} is not finite ({v})")
            object.__setattr__(self, f.name, v)

    @classmethod
    def from_seq(cls, seq) -> "WeightVector":
        return cls(*seq)

    def as_tuple(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a5, self.a6, self.a7)

    def __iter__(self):
        return iter(self.as_tuple())

    def __getitem__(self, i: int) -> complex:
        """1-based access, ``w[1]`` is a1."""
        if not 1 <= i <= 7:
            raise IndexError("weights are indexed 1..7")
        return self.as_tuple()[i - 1]

    def max_modulus(self) -> float:
        return max(abs(a) for a in self.as_tuple())

    def replace(self, **changes) -> "WeightVector":
        vals = {f.name: getattr(self, f.name) for f in fields(self)}
        vals.update(changes)
        return WeightVector(**vals)


IDENTITY_WEIGHTS = WeightVector(1, 1, 1, 1, 0, 0, 0)
