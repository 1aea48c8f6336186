"""Composite state vectors: named fields on a grid plus an optional scalar reservoir.

A state is stored as one flat float array; a :class:`StateLayout` records which
contiguous slice belongs to which field and whether a trailing scalar reservoir
slot ``e`` is present.  Keeping a single flat array makes integrators and
operator applications layout-generic across every model in the catalog.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid

#: Field tags understood by layouts, in canonical display order.
FIELD_NAMES = ("phi", "psi", "chi", "p", "q", "w", "theta", "eta", "s")


@dataclass(frozen=True)
class StateLayout:
    """Ordered field names over a grid, plus an optional reservoir slot."""

    grid: Grid
    field_order: tuple
    has_reservoir: bool = True

    def __post_init__(self):
        order = tuple(self.field_order)
        object.__setattr__(self, "field_order", order)
        if not order:
            raise ValueError("layout needs at least one field")
        if len(set(order)) != len(order):
            raise ValueError(f"duplicate field names in layout: {order}")
        unknown = [f for f in order if f not in FIELD_NAMES]
        if unknown:
            raise ValueError(f"unknown field names: {unknown}")

    @property
    def n_fields(self) -> int:
        return len(self.field_order)

    @property
    def flat_dim(self) -> int:
        return self.grid.n * self.n_fields + (1 if self.has_reservoir else 0)

    @property
    def reservoir_index(self) -> int:
        if not self.has_reservoir:
            raise ValueError("layout has no reservoir slot")
        return self.flat_dim - 1

    def field_slice(self, name: str) -> slice:
        try:
            i = self.field_order.index(name)
        except ValueError:
            raise KeyError(f"field {name!r} not in layout {self.field_order}") from None
        n = self.grid.n
        return slice(i * n, (i + 1) * n)

    def __contains__(self, name: str) -> bool:
        return name in self.field_order


class _FlatVector:
    """Shared behaviour of states and cotangent vectors (layout + flat storage)."""

    layout: StateLayout
    flat: np.ndarray

    def _validate(self):
        flat = np.asarray(self.flat, dtype=float)
        if flat.shape != (self.layout.flat_dim,):
            raise ValueError(
                f"flat vector of shape {flat.shape} does not match layout "
                f"dimension {self.layout.flat_dim}"
            )
        object.__setattr__(self, "flat", flat)

    def field(self, name: str) -> np.ndarray:
        """View of the slice belonging to ``name`` (writing through it mutates self)."""
        return self.flat[self.layout.field_slice(name)]

    @property
    def reservoir(self) -> float:
        return float(self.flat[self.layout.reservoir_index])

    @reservoir.setter
    def reservoir(self, value: float):
        self.flat[self.layout.reservoir_index] = value

    def copy(self):
        return type(self)(self.layout, self.flat.copy())

    @classmethod
    def zeros(cls, layout: StateLayout):
        return cls(layout, np.zeros(layout.flat_dim))


@dataclass(eq=False)
class State(_FlatVector):
    """A point z of the state space: field values plus the reservoir scalar."""

    layout: StateLayout
    flat: np.ndarray

    def __post_init__(self):
        self._validate()


@dataclass(eq=False)
class CotangentVector(_FlatVector):
    """A functional derivative dF/dz; same storage shape as a State."""

    layout: StateLayout
    flat: np.ndarray

    def __post_init__(self):
        self._validate()


def get_field(z, name: str) -> np.ndarray:
    return z.field(name)


def set_field(z, name: str, values):
    z.field(name)[:] = z.layout.grid.field(values)


def get_reservoir(z) -> float:
    return z.reservoir


def set_reservoir(z, value: float):
    z.reservoir = value


def unpack(z) -> dict:
    """Split a state into a dict of per-field copies; reservoir under key 'e'."""
    out = {name: z.field(name).copy() for name in z.layout.field_order}
    if z.layout.has_reservoir:
        out["e"] = z.reservoir
    return out


def pack(layout: StateLayout, fields: dict, e: float = 0.0) -> State:
    """Inverse of :func:`unpack`; missing fields default to zero."""
    z = State.zeros(layout)
    for name, values in fields.items():
        if name == "e":
            continue
        set_field(z, name, values)
    if layout.has_reservoir:
        z.reservoir = fields.get("e", e)
    return z


def mixed_inner(layout: StateLayout, a: np.ndarray, b: np.ndarray) -> float:
    """Inner product pairing states with cotangent vectors.

    dx-weighted on field slots, plain Euclidean on the reservoir slot.  All
    adjointness conventions in the package refer to this pairing.
    """
    dx = layout.grid.dx
    nf = layout.grid.n * layout.n_fields
    s = dx * float(np.dot(a[:nf], b[:nf]))
    if layout.has_reservoir:
        s += float(a[nf]) * float(b[nf])
    return s
