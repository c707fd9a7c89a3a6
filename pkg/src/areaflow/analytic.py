"""Named analytic fields used for initial data and stream functions."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GaussianBump:
    """exp(-ax*(x-x0)^2 - ay*(y-y0)^2), the anisotropic test blob."""

    ax: float = 45.0
    ay: float = 15.0
    x0: float = 0.75
    y0: float = 0.5
    time_dependent: bool = False

    def value(self, x, y, t=0.0):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        return np.exp(-self.ax * (x - self.x0) ** 2 - self.ay * (y - self.y0) ** 2)


@dataclass(frozen=True)
class SineStream:
    """amp*sin(pi x)*sin(pi y); a steady single-cell rotation on the unit square."""

    amp: float = 1.0
    time_dependent: bool = False

    def value(self, x, y, t=0.0):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        return self.amp * np.sin(np.pi * x) * np.sin(np.pi * y)

    def velocity(self, x, y, t=0.0):
        # u = d(psi)/dy, v = -d(psi)/dx
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        u = self.amp * np.pi * np.sin(np.pi * x) * np.cos(np.pi * y)
        v = -self.amp * np.pi * np.cos(np.pi * x) * np.sin(np.pi * y)
        return u, v


@dataclass(frozen=True)
class Paraboloid:
    """-((x-x0)^2 + (y-y0)^2); its super-level sets are discs of area pi*(-c)."""

    x0: float = 0.5
    y0: float = 0.5
    time_dependent: bool = False

    def value(self, x, y, t=0.0):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        return -((x - self.x0) ** 2 + (y - self.y0) ** 2)


@dataclass(frozen=True)
class CompactEddy:
    """amp*max(0, sin(pi x)sin(pi y) - offset)^2; a C1 eddy dead near the walls.

    The squared hinge keeps the velocity continuous across the support edge
    and identically zero in a band along the boundary, so grid sums of the
    transported field see no boundary flux.
    """

    amp: float = 1.0
    offset: float = 0.3
    time_dependent: bool = False

    def value(self, x, y, t=0.0):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        s = np.sin(np.pi * x) * np.sin(np.pi * y) - self.offset
        return self.amp * np.maximum(0.0, s) ** 2

    def velocity(self, x, y, t=0.0):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        hinge = np.maximum(0.0, np.sin(np.pi * x) * np.sin(np.pi * y) - self.offset)
        u = 2.0 * self.amp * hinge * np.pi * np.sin(np.pi * x) * np.cos(np.pi * y)
        v = -2.0 * self.amp * hinge * np.pi * np.cos(np.pi * x) * np.sin(np.pi * y)
        return u, v


REGISTRY = {
    "gaussian": GaussianBump,
    "sine-stream": SineStream,
    "paraboloid": Paraboloid,
    "compact-eddy": CompactEddy,
}


def make_field(name, **params):
    """Instantiate a registered analytic field by name."""
    try:
        cls = REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise ValueError(f"unknown analytic field {name!r} (known: {known})") from None
    try:
        return cls(**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for analytic field {name!r}: {exc}") from None
