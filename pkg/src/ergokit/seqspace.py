"""Truncated sequence spaces and their coordinate vectors.

A :class:`SeqVec` models an element of l_p or c_0 whose coordinates are
*exactly* zero beyond a tracked support index.  All arithmetic preserves
that zero tail, so desk-scale computations on the truncation agree with
the infinite-dimensional model wherever supports stay inside the
truncation dimension.  Scalars are complex throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ergokit.errors import SpaceMismatchError

__all__ = [
    "SpaceSpec",
    "SeqVec",
    "norm",
    "dual_pair",
    "basis",
    "random_unit",
    "zeros",
    "from_coords",
]


@dataclass(frozen=True)
class SpaceSpec:
    """A truncated sequence space: l_p with 1 <= p < inf, or c_0.

    ``dim`` is the truncation dimension N; coordinates are indexed 1..N
    in the mathematics and 0..N-1 in arrays.
    """

    kind: str  # "lp" | "c0"
    p: float | None
    dim: int

    def __post_init__(self) -> None:
        if self.kind not in ("lp", "c0"):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind == "lp":
            if self.p is None or not (1.0 <= float(self.p) < np.inf):
                raise ValueError("l_p requires a finite exponent p >= 1")
            object.__setattr__(self, "p", float(self.p))
        elif self.p is not None:
            raise ValueError("c_0 carries no exponent")
        if int(self.dim) < 1:
            raise ValueError("dimension must be >= 1")
        object.__setattr__(self, "dim", int(self.dim))

    @classmethod
    def lp(cls, p: float, dim: int) -> "SpaceSpec":
        return cls("lp", p, dim)

    @classmethod
    def c0(cls, dim: int) -> "SpaceSpec":
        return cls("c0", None, dim)

    @property
    def is_lp(self) -> bool:
        return self.kind == "lp"

    @property
    def dual_exponent(self) -> float:
        """Conjugate exponent p' = p/(p-1); defined for l_p with p > 1."""
        if not self.is_lp or self.p is None or self.p <= 1.0:
            raise ValueError("dual exponent requires l_p with p > 1")
        return self.p / (self.p - 1.0)

    def dual(self) -> "SpaceSpec":
        """The dual space at the same truncation dimension.

        l_p -> l_{p'} for p > 1 and c_0 -> l_1.  For p = 1 the dual is the
        sup-norm space, which is outside the scope of the dual-space
        operations here, so this raises.
        """
        if self.kind == "c0":
            return SpaceSpec.lp(1.0, self.dim)
        if self.p == 1.0:
            raise ValueError(
                "the dual of l_1 is the sup-norm space; dual-space "
                "operations require 1 < p < inf"
            )
        return SpaceSpec.lp(self.dual_exponent, self.dim)

    def __str__(self) -> str:
        if self.is_lp:
            return f"l_{self.p:g}(dim={self.dim})"
        return f"c_0(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class SeqVec:
    """A coordinate vector with an exactly-zero tail.

    Invariant: ``coords[j] == 0`` for every index j >= ``exact_support``
    (0-based), i.e. the vector has at most ``exact_support`` leading
    coordinates.  The coordinate array is read-only.
    """

    space: SpaceSpec
    coords: np.ndarray
    exact_support: int

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.coords, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] != self.space.dim:
            raise ValueError(
                f"expected {self.space.dim} coordinates, got shape {arr.shape}"
            )
        sup = int(self.exact_support)
        if not 0 <= sup <= self.space.dim:
            raise ValueError("exact_support out of range")
        if sup < self.space.dim and np.any(arr[sup:] != 0):
            raise ValueError("coordinates beyond exact_support must be exactly zero")
        if arr is self.coords and arr.flags.writeable:
            arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coords", arr)
        object.__setattr__(self, "exact_support", sup)

    @classmethod
    def _wrap(cls, space: SpaceSpec, coords: np.ndarray, support: int) -> "SeqVec":
        """Fast constructor for internally produced arrays (no re-checks)."""
        v = object.__new__(cls)
        coords.flags.writeable = False
        object.__setattr__(v, "space", space)
        object.__setattr__(v, "coords", coords)
        object.__setattr__(v, "exact_support", int(support))
        return v

    # -- arithmetic (support-preserving, immutable) --------------------

    def _require_same_space(self, other: "SeqVec") -> None:
        if self.space != other.space:
            raise SpaceMismatchError(
                f"cannot combine vectors from {self.space} and {other.space}"
            )

    def __add__(self, other: "SeqVec") -> "SeqVec":
        self._require_same_space(other)
        return SeqVec._wrap(
            self.space,
            self.coords + other.coords,
            max(self.exact_support, other.exact_support),
        )

    def __sub__(self, other: "SeqVec") -> "SeqVec":
        self._require_same_space(other)
        return SeqVec._wrap(
            self.space,
            self.coords - other.coords,
            max(self.exact_support, other.exact_support),
        )

    def __mul__(self, scalar: complex) -> "SeqVec":
        return SeqVec._wrap(
            self.space, self.coords * complex(scalar), self.exact_support
        )

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "SeqVec":
        return SeqVec._wrap(
            self.space, self.coords / complex(scalar), self.exact_support
        )

    def __neg__(self) -> "SeqVec":
        return SeqVec._wrap(self.space, -self.coords, self.exact_support)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeqVec):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.coords, other.coords)

    def __repr__(self) -> str:
        return f"SeqVec({self.space}, support={self.exact_support})"


def norm(v: SeqVec) -> float:
    """Norm of ``v`` in its own space: (sum |x_j|^p)^(1/p) or sup |x_j|."""
    head = v.coords[: v.exact_support]
    if head.size == 0:
        return 0.0
    a = np.abs(head)
    if v.space.kind == "c0":
        return float(a.max())
    p = v.space.p
    if p == 1.0:
        return float(a.sum())
    return float((a**p).sum() ** (1.0 / p))


def dual_pair(u: SeqVec, x: SeqVec) -> complex:
    """Bilinear pairing sum_j u_j x_j (no conjugation).

    ``u`` is read as a functional on x's space; only the dimensions must
    agree.
    """
    if u.space.dim != x.space.dim:
        raise SpaceMismatchError(
            f"pairing needs equal dimensions, got {u.space.dim} and {x.space.dim}"
        )
    L = min(u.exact_support, x.exact_support)
    if L == 0:
        return 0j
    return complex(np.dot(u.coords[:L], x.coords[:L]))


def basis(space: SpaceSpec, j: int) -> SeqVec:
    """The j-th canonical basis vector e_j (1-based index)."""
    if not 1 <= j <= space.dim:
        raise IndexError(f"basis index {j} out of range 1..{space.dim}")
    c = np.zeros(space.dim, dtype=np.complex128)
    c[j - 1] = 1.0
    return SeqVec._wrap(space, c, j)


def zeros(space: SpaceSpec) -> SeqVec:
    return SeqVec._wrap(space, np.zeros(space.dim, dtype=np.complex128), 0)


def from_coords(space: SpaceSpec, values, exact_support: int | None = None) -> SeqVec:
    """Build a SeqVec from any iterable, padding with exact zeros."""
    vals = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    if vals.ndim != 1 or vals.shape[0] > space.dim:
        raise ValueError(f"expected at most {space.dim} coordinates")
    c = np.zeros(space.dim, dtype=np.complex128)
    c[: vals.shape[0]] = vals
    if exact_support is None:
        nz = np.nonzero(c)[0]
        exact_support = int(nz[-1]) + 1 if nz.size else 0
    return SeqVec(space, c, exact_support)


def random_unit(space: SpaceSpec, seed: int) -> SeqVec:
    """Deterministic random unit vector (complex Gaussian, then normalised)."""
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
    v = SeqVec._wrap(space, c, space.dim)
    return SeqVec._wrap(space, c / norm(v), space.dim)
