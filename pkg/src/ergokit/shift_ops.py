"""Matrix-free linear operators with exact closed-form powers.

The shift families follow the coordinate convention with weights
``w_k = ((k+1)/k)**alpha``:

* backward: ``(x_1, x_2, ...) -> (w_1 x_2, w_2 x_3, ...)``, so the n-th
  power maps coordinate j to ``((j+n)/j)**alpha * x_{j+n}``;
* forward: ``(x_1, x_2, ...) -> (0, w_1 x_1, w_2 x_2, ...)``, n-th power
  ``((j)/(j-n))**alpha * x_{j-n}`` for j > n.

``alpha = 0`` gives the plain shifts.  Forward shifts never truncate:
pushing support past the dimension raises
:class:`~ergokit.errors.SupportOverflowError`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from ergokit import kernels
from ergokit.errors import SpaceMismatchError, SupportOverflowError
from ergokit.seqspace import SeqVec, SpaceSpec, dual_pair, norm

__all__ = [
    "LinOp",
    "BackwardShift",
    "ForwardShift",
    "Identity",
    "Scale",
    "DenseOp",
    "Composite",
    "shift_descriptor",
    "operator_from_name",
    "dense_operator_norm",
]


@dataclass(frozen=True)
class LinOp:
    """Base class: a linear self-map of a truncated sequence space."""

    space: SpaceSpec

    def _check_space(self, x: SeqVec) -> None:
        if x.space != self.space:
            raise SpaceMismatchError(
                f"operator on {self.space} applied to vector in {x.space}"
            )

    def apply(self, x: SeqVec) -> SeqVec:
        return self.apply_power(1, x)

    def apply_power(self, n: int, x: SeqVec) -> SeqVec:
        """n-fold application.  Subclasses override with closed forms."""
        if n < 0:
            raise ValueError("power must be >= 0")
        self._check_space(x)
        y = x
        for _ in range(n):
            y = self.apply(y)
        return y

    def power_norm(self, n: int) -> float:
        """Operator norm of the n-th power, where a closed form or a
        documented estimate exists."""
        raise ValueError(f"no operator norm available for {type(self).__name__}")

    def cesaro_apply(self, n: int, x: SeqVec, start: int = 1) -> SeqVec:
        """Cesàro mean ``(1/n) * sum_{k=start}^{n-1+start} T^k x``.

        ``start=0`` matches the textbook definition ``(1/n) sum_{k<n}``;
        ``start=1`` matches the k = 1..n sums used by the quantitative
        examples.  The two differ by ``(x - T^n x)/n``.
        """
        _check_cesaro_args(n, start)
        self._check_space(x)
        acc = np.zeros(self.space.dim, dtype=np.complex128)
        y = self.apply_power(start, x)
        for k in range(start, start + n):
            acc += y.coords
            if k < start + n - 1:
                y = self.apply(y)
        return SeqVec._wrap(self.space, acc / n, self.space.dim)

    def adjoint(self) -> "LinOp":
        """The transpose with respect to the bilinear pairing, acting on
        the dual space."""
        raise ValueError(f"no adjoint available for {type(self).__name__}")


def _check_cesaro_args(n: int, start: int) -> None:
    if n < 1:
        raise ValueError("Cesàro mean needs n >= 1")
    if start not in (0, 1):
        raise ValueError("start must be 0 or 1")


def _validate_weight(space: SpaceSpec, alpha: float, bound: float, what: str,
                     allow_out_of_range: bool) -> None:
    if alpha == 0.0:
        return
    if not space.is_lp:
        raise ValueError(f"weighted {what} shifts are defined on l_p spaces only")
    if not 0.0 < alpha < bound:
        msg = (
            f"weight exponent alpha={alpha:g} outside the {what}-shift "
            f"range (0, {bound:g}) on {space}"
        )
        if not allow_out_of_range:
            raise ValueError(msg + "; pass allow_out_of_range=True to override")
        warnings.warn(msg, stacklevel=3)


@dataclass(frozen=True)
class BackwardShift(LinOp):
    """(Weighted) backward shift; ``alpha = 0`` is the plain shift.

    The weighted variant on l_p requires ``0 < alpha < 1/p``.
    """

    alpha: float = 0.0
    allow_out_of_range: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        bound = 1.0 / self.space.p if self.space.is_lp else np.inf
        _validate_weight(self.space, self.alpha, bound, "backward",
                         self.allow_out_of_range)

    @property
    def is_weighted(self) -> bool:
        return self.alpha != 0.0

    def apply_power(self, n: int, x: SeqVec) -> SeqVec:
        if n < 0:
            raise ValueError("power must be >= 0")
        self._check_space(x)
        out, sup = kernels.shift_power_apply(
            x.coords, x.exact_support, n, self.alpha, False
        )
        return SeqVec._wrap(self.space, out, sup)

    def power_norm(self, n: int) -> float:
        # sup_j ((j+n)/j)**alpha is attained at j = 1
        if n == 0:
            return 1.0
        return float(n + 1) ** self.alpha

    def cesaro_apply(self, n: int, x: SeqVec, start: int = 1) -> SeqVec:
        _check_cesaro_args(n, start)
        self._check_space(x)
        out, sup = kernels.cesaro_shift_accumulate(
            x.coords, x.exact_support, start, n, self.alpha, False
        )
        return SeqVec._wrap(self.space, out, sup)

    def adjoint(self) -> "ForwardShift":
        return ForwardShift(self.space.dual(), self.alpha,
                            allow_out_of_range=self.allow_out_of_range)


@dataclass(frozen=True)
class ForwardShift(LinOp):
    """(Weighted) forward shift; ``alpha = 0`` is the plain shift.

    The weighted variant on l_p requires ``0 < alpha < 1/p'``.  Forward
    images that would leave the truncation raise SupportOverflowError.
    """

    alpha: float = 0.0
    allow_out_of_range: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.space.is_lp:
            # 1/p' = 1 - 1/p, an empty range on l_1
            bound = 1.0 - 1.0 / self.space.p
        else:
            bound = np.inf
        _validate_weight(self.space, self.alpha, bound, "forward",
                         self.allow_out_of_range)

    @property
    def is_weighted(self) -> bool:
        return self.alpha != 0.0

    def _check_room(self, support: int, shift_by: int) -> None:
        if support > 0 and support + shift_by > self.space.dim:
            raise SupportOverflowError(
                f"forward shift by {shift_by} pushes support {support} past "
                f"dimension {self.space.dim}; raise dim"
            )

    def apply_power(self, n: int, x: SeqVec) -> SeqVec:
        if n < 0:
            raise ValueError("power must be >= 0")
        self._check_space(x)
        self._check_room(x.exact_support, n)
        out, sup = kernels.shift_power_apply(
            x.coords, x.exact_support, n, self.alpha, True
        )
        return SeqVec._wrap(self.space, out, sup)

    def power_norm(self, n: int) -> float:
        if n == 0:
            return 1.0
        return float(n + 1) ** self.alpha

    def cesaro_apply(self, n: int, x: SeqVec, start: int = 1) -> SeqVec:
        _check_cesaro_args(n, start)
        self._check_space(x)
        self._check_room(x.exact_support, start + n - 1)
        out, sup = kernels.cesaro_shift_accumulate(
            x.coords, x.exact_support, start, n, self.alpha, True
        )
        return SeqVec._wrap(self.space, out, sup)

    def adjoint(self) -> BackwardShift:
        return BackwardShift(self.space.dual(), self.alpha,
                             allow_out_of_range=self.allow_out_of_range)


@dataclass(frozen=True)
class Identity(LinOp):
    def apply_power(self, n: int, x: SeqVec) -> SeqVec:
        self._check_space(x)
        return x

    def power_norm(self, n: int) -> float:
        return 1.0

    def cesaro_apply(self, n: int, x: SeqVec, start: int = 1) -> SeqVec:
        _check_cesaro_args(n, start)
        self._check_space(x)
        return x

    def adjoint(self) -> "Identity":
        return Identity(self.space.dual())


@dataclass(frozen=True)
class Scale(LinOp):
    factor: complex = 1.0

    def apply_power(self, n: int, x: SeqVec) -> SeqVec:
        self._check_space(x)
        return x * complex(self.factor) ** n

    def power_norm(self, n: int) -> float:
        return abs(complex(self.factor)) ** n

    def cesaro_apply(self, n: int, x: SeqVec, start: int = 1) -> SeqVec:
        _check_cesaro_args(n, start)
        self._check_space(x)
        lam = complex(self.factor)
        mean = np.sum(lam ** np.arange(start, start + n)) / n
        return x * mean

    def adjoint(self) -> "Scale":
        return Scale(self.space.dual(), self.factor)


def dense_operator_norm(matrix: np.ndarray, space: SpaceSpec,
                        tol: float = 1e-10, max_iter: int = 500) -> float:
    """Operator norm of a small dense matrix on ``space``.

    Exact for l_1 (max column sum), l_2 (largest singular value) and the
    sup norm (max row sum).  For other l_p exponents this runs the dual
    power iteration for p-norms, which converges to a stationary point
    from below; the returned value is a lower-bound estimate with
    relative stagnation tolerance ``tol``.
    """
    A = np.asarray(matrix, dtype=np.complex128)
    if space.kind == "c0":
        return float(np.abs(A).sum(axis=1).max())
    p = space.p
    if p == 1.0:
        return float(np.abs(A).sum(axis=0).max())
    if p == 2.0:
        return float(np.linalg.norm(A, 2))
    q = p / (p - 1.0)

    def _normalized_dual(v: np.ndarray, expo: float) -> np.ndarray:
        a = np.abs(v)
        nz = a > 0
        out = np.zeros_like(v)
        out[nz] = (a[nz] ** (expo - 1.0)) * (v[nz] / a[nz])
        return out

    def _pnorm(v: np.ndarray, expo: float) -> float:
        return float((np.abs(v) ** expo).sum() ** (1.0 / expo))

    # seed with the best basis column, then iterate
    cols = (np.abs(A) ** p).sum(axis=0) ** (1.0 / p)
    x = np.zeros(A.shape[0], dtype=np.complex128)
    x[int(cols.argmax())] = 1.0
    best = 0.0
    for _ in range(max_iter):
        y = A @ x
        g = _pnorm(y, p)
        if g == 0.0:
            return 0.0
        if g <= best * (1.0 + tol):
            best = max(best, g)
            break
        best = g
        z = A.conj().T @ _normalized_dual(y, p)
        if not np.any(z):
            break
        x = _normalized_dual(z, q)
        x = x / _pnorm(x, p)
    return best


@dataclass(frozen=True, eq=False)
class DenseOp(LinOp):
    """A small dense matrix operator (dimension capped at 64).

    Exists to support the symbol checker and small oracles; operator
    norms come from :func:`dense_operator_norm`.
    """

    matrix: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        A = np.ascontiguousarray(self.matrix, dtype=np.complex128)
        if A.shape != (self.space.dim, self.space.dim):
            raise ValueError("matrix shape must match the space dimension")
        if self.space.dim > 64:
            raise ValueError("dense operators are capped at dimension 64")
        A.flags.writeable = False
        object.__setattr__(self, "matrix", A)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseOp):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.matrix, other.matrix)

    def apply(self, x: SeqVec) -> SeqVec:
        self._check_space(x)
        out = self.matrix @ x.coords
        return SeqVec._wrap(self.space, out, _trailing_support(out))

    def apply_power(self, n: int, x: SeqVec) -> SeqVec:
        if n < 0:
            raise ValueError("power must be >= 0")
        self._check_space(x)
        out = np.linalg.matrix_power(self.matrix, n) @ x.coords
        return SeqVec._wrap(self.space, out, _trailing_support(out))

    def power_norm(self, n: int) -> float:
        return dense_operator_norm(np.linalg.matrix_power(self.matrix, n), self.space)

    def adjoint(self) -> "DenseOp":
        return DenseOp(self.space.dual(), self.matrix.T)


def _trailing_support(coords: np.ndarray) -> int:
    nz = np.nonzero(coords)[0]
    return int(nz[-1]) + 1 if nz.size else 0


@dataclass(frozen=True)
class Composite(LinOp):
    """Composition ``ops[0] . ops[1] . ... . ops[-1]`` (last applied first)."""

    ops: tuple[LinOp, ...] = ()

    def __post_init__(self) -> None:
        if not self.ops:
            raise ValueError("composite needs at least one operator")
        for op in self.ops:
            if op.space != self.space:
                raise SpaceMismatchError("all composite factors must share the space")

    def apply(self, x: SeqVec) -> SeqVec:
        self._check_space(x)
        y = x
        for op in reversed(self.ops):
            y = op.apply(y)
        return y

    def adjoint(self) -> "Composite":
        return Composite(self.space.dual(),
                         tuple(op.adjoint() for op in reversed(self.ops)))


def shift_descriptor(op: LinOp) -> tuple[float, bool] | None:
    """(weight exponent, is_forward) for shift-family operators, else None."""
    if isinstance(op, BackwardShift):
        return op.alpha, False
    if isinstance(op, ForwardShift):
        return op.alpha, True
    return None


def operator_from_name(name: str, space: SpaceSpec, alpha: float | None = None,
                       factor: complex | None = None) -> LinOp:
    """Build an operator from its CLI token.

    ``sigma``/``backward`` is the plain backward shift, ``phi_alpha`` the
    weighted backward shift, ``psi_alpha`` the weighted forward shift,
    ``forward`` the plain forward shift; plus ``identity`` and ``scale``.
    """
    key = name.lower()
    if key in ("sigma", "backward"):
        return BackwardShift(space)
    if key == "phi_alpha":
        if alpha is None:
            raise ValueError("phi_alpha requires --alpha")
        return BackwardShift(space, alpha)
    if key == "psi_alpha":
        if alpha is None:
            raise ValueError("psi_alpha requires --alpha")
        return ForwardShift(space, alpha)
    if key == "forward":
        return ForwardShift(space)
    if key == "identity":
        return Identity(space)
    if key == "scale":
        if factor is None:
            raise ValueError("scale requires --factor")
        return Scale(space, factor)
    raise ValueError(f"unknown operator name {name!r}")


def adjoint_pairing_defect(op: LinOp, u: SeqVec, x: SeqVec) -> float:
    """|<adjoint(T)u, x> - <u, Tx>|; zero up to rounding by construction."""
    lhs = dual_pair(op.adjoint().apply(u), x)
    rhs = dual_pair(u, op.apply(x))
    return abs(lhs - rhs)
