"""m-homogeneous polynomials: evaluation, pullback, norms.

Variants:

* ``DiagonalPoly`` - ``p(x) = sum_i c_i x_i^m`` with a dense coefficient
  array up to a tracked support;
* ``FunctionalPower`` - ``p(x) = gamma(x)^m`` for a functional ``gamma``
  in the dual space;
* ``PullbackChain`` - a lazy composition ``base(S_1(S_2(...x)))``;
* ``CesaroSum`` - the lazy Cesàro mean of pullbacks
  ``(1/n) sum_k base(T^k x)``, evaluated pointwise without materialising
  coefficients.

Pullback under shift symbols keeps Diagonal and FunctionalPower closed:
the coefficient array moves by the adjoint index map with weight
exponent ``m * alpha``.  Coefficients pushed past the truncation
multiply coordinates that are identically zero there, so dropping them
is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ergokit import kernels
from ergokit.errors import SpaceMismatchError, SupportOverflowError
from ergokit.seqspace import SeqVec, SpaceSpec, basis, dual_pair, norm, random_unit
from ergokit.shift_ops import Composite, DenseOp, Identity, LinOp, Scale, shift_descriptor

__all__ = [
    "Poly",
    "DiagonalPoly",
    "FunctionalPower",
    "PullbackChain",
    "CesaroSum",
    "diagonal",
    "functional_power",
    "coordinate_power_sum",
    "cesaro_eval_prefix",
    "pullback",
    "pullback_power",
    "poly_norm",
    "pullback_power_norm",
    "NormResult",
]


class Poly:
    """Base class; concrete variants implement ``__call__``."""

    domain: SpaceSpec
    degree: int

    def __call__(self, x: SeqVec) -> complex:
        raise NotImplementedError

    def eval(self, x: SeqVec) -> complex:
        return self(x)

    def _check_domain(self, x: SeqVec) -> None:
        if x.space != self.domain:
            raise SpaceMismatchError(
                f"polynomial on {self.domain} evaluated at vector in {x.space}"
            )


def _check_degree(m: int) -> int:
    m = int(m)
    if m < 1:
        raise ValueError("degree must be >= 1")
    return m


@dataclass(frozen=True, eq=False)
class DiagonalPoly(Poly):
    domain: SpaceSpec
    degree: int
    coeffs: np.ndarray
    coeff_support: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree", _check_degree(self.degree))
        c = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if c.shape != (self.domain.dim,):
            raise ValueError("coefficient array must have one entry per coordinate")
        sup = int(self.coeff_support)
        if not 0 <= sup <= self.domain.dim:
            raise ValueError("coeff_support out of range")
        if sup < self.domain.dim and np.any(c[sup:] != 0):
            raise ValueError("coefficients beyond coeff_support must be exactly zero")
        if c is self.coeffs and c.flags.writeable:
            c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "coeff_support", sup)

    def __call__(self, x: SeqVec) -> complex:
        self._check_domain(x)
        L = min(self.coeff_support, x.exact_support)
        if L == 0:
            return 0j
        return complex(np.dot(self.coeffs[:L], x.coords[:L] ** self.degree))


@dataclass(frozen=True, eq=False)
class FunctionalPower(Poly):
    """``p(x) = gamma(x)^m`` with ``gamma`` a vector of the dual space."""

    domain: SpaceSpec
    degree: int
    gamma: SeqVec

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree", _check_degree(self.degree))
        if self.gamma.space != self.domain.dual():
            raise SpaceMismatchError(
                f"gamma must live in the dual {self.domain.dual()}, "
                f"got {self.gamma.space}"
            )

    def __call__(self, x: SeqVec) -> complex:
        self._check_domain(x)
        return complex(dual_pair(self.gamma, x) ** self.degree)


@dataclass(frozen=True, eq=False)
class PullbackChain(Poly):
    """Lazy pullback ``base(symbols[0](symbols[1](...(x))))``.

    Symbols are applied right to left, so extending the chain on the
    right is pullback by the new symbol.
    """

    base: Poly
    symbols: tuple[LinOp, ...]

    def __post_init__(self) -> None:
        for op in self.symbols:
            if op.space != self.base.domain:
                raise SpaceMismatchError("chain symbols must act on the base domain")

    @property
    def domain(self) -> SpaceSpec:  # type: ignore[override]
        return self.base.domain

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.base.degree

    def __call__(self, x: SeqVec) -> complex:
        self._check_domain(x)
        y = x
        for op in reversed(self.symbols):
            y = op.apply(y)
        return self.base(y)


@dataclass(frozen=True, eq=False)
class CesaroSum(Poly):
    """Cesàro mean ``(1/n) sum_{k=start}^{n-1+start} base(T^k x)``, lazy."""

    base: Poly
    symbol: LinOp
    n: int
    start: int = 1

    def __post_init__(self) -> None:
        if self.symbol.space != self.base.domain:
            raise SpaceMismatchError("symbol must act on the base domain")
        if self.n < 1:
            raise ValueError("Cesàro mean needs n >= 1")
        if self.start not in (0, 1):
            raise ValueError("start must be 0 or 1")

    @property
    def domain(self) -> SpaceSpec:  # type: ignore[override]
        return self.base.domain

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.base.degree

    def __call__(self, x: SeqVec) -> complex:
        return complex(
            cesaro_eval_prefix(self.base, self.symbol, x, self.start, self.n)[-1]
        )


def diagonal(space: SpaceSpec, m: int, coeffs) -> DiagonalPoly:
    """Diagonal polynomial from any coefficient iterable (zero padded)."""
    vals = np.asarray(coeffs, dtype=np.complex128)
    c = np.zeros(space.dim, dtype=np.complex128)
    c[: vals.shape[0]] = vals
    nz = np.nonzero(c)[0]
    sup = int(nz[-1]) + 1 if nz.size else 0
    return DiagonalPoly(space, m, c, sup)


def coordinate_power_sum(space: SpaceSpec, m: int) -> DiagonalPoly:
    """The sparse-norm witness polynomial ``p(x) = sum_i x_i^m``."""
    return DiagonalPoly(space, m, np.ones(space.dim, dtype=np.complex128), space.dim)


def functional_power(gamma: SeqVec, m: int, domain: SpaceSpec | None = None) -> FunctionalPower:
    """``gamma(x)^m``; the domain defaults to the predual of gamma's space."""
    if domain is None:
        domain = gamma.space.dual()
    return FunctionalPower(domain, m, gamma)


# -- evaluation of Cesàro means ------------------------------------------


def cesaro_eval_prefix(base: Poly, symbol: LinOp, x: SeqVec, start: int,
                       nmax: int) -> np.ndarray:
    """Evaluate all Cesàro means ``(1/n) sum_{k=start}^{n-1+start}
    base(T^k x)`` for n = 1..nmax in one pass.

    Shift symbols paired with Diagonal or FunctionalPower bases use the
    fused sweep kernel; other combinations iterate the orbit directly.
    """
    if nmax < 1:
        raise ValueError("need nmax >= 1")
    if start not in (0, 1):
        raise ValueError("start must be 0 or 1")
    base._check_domain(x)
    if symbol.space != base.domain:
        raise SpaceMismatchError("symbol must act on the base domain")
    kmax = start + nmax - 1
    terms = _orbit_terms(base, symbol, x, kmax)
    csum = np.cumsum(terms[start : start + nmax])
    return csum / np.arange(1.0, nmax + 1.0)


def _orbit_terms(base: Poly, symbol: LinOp, x: SeqVec, kmax: int) -> np.ndarray:
    """``base(T^k x)`` for k = 0..kmax."""
    desc = shift_descriptor(symbol)
    m = base.degree
    if desc is not None:
        alpha, fwd = desc
        if fwd and x.exact_support > 0 and x.exact_support + kmax > symbol.space.dim:
            raise SupportOverflowError(
                f"forward orbit of length {kmax} leaves the truncation "
                f"(support {x.exact_support}, dim {symbol.space.dim}); raise dim"
            )
        if isinstance(base, DiagonalPoly):
            y = x.coords**m
            return kernels.shifted_dot_sweep(
                base.coeffs, base.coeff_support, y, x.exact_support,
                kmax, alpha * m, fwd,
            )
        if isinstance(base, FunctionalPower):
            g = kernels.shifted_dot_sweep(
                base.gamma.coords, base.gamma.exact_support,
                x.coords, x.exact_support, kmax, alpha, fwd,
            )
            return g**m
    if isinstance(symbol, Identity):
        return np.full(kmax + 1, complex(base(x)), dtype=np.complex128)
    if isinstance(symbol, Scale):
        lam_m = complex(symbol.factor) ** m
        return complex(base(x)) * lam_m ** np.arange(kmax + 1)
    terms = np.empty(kmax + 1, dtype=np.complex128)
    y = x
    terms[0] = base(y)
    for k in range(1, kmax + 1):
        y = symbol.apply(y)
        terms[k] = base(y)
    return terms


# -- pullback --------------------------------------------------------------


def pullback(p: Poly, T: LinOp) -> Poly:
    """``q = p . T``, i.e. ``q(x) = p(T x)`` for all x."""
    return pullback_power(p, T, 1)


def pullback_power(p: Poly, T: LinOp, n: int) -> Poly:
    """``p . T^n`` with closed forms where the variant stays closed."""
    if n < 0:
        raise ValueError("power must be >= 0")
    if T.space != p.domain:
        raise SpaceMismatchError("symbol must act on the polynomial domain")
    if n == 0 or isinstance(T, Identity):
        return p
    desc = shift_descriptor(T)
    if isinstance(p, DiagonalPoly):
        if desc is not None:
            alpha, fwd = desc
            return _shifted_diagonal(p, n, alpha * p.degree, fwd)
        if isinstance(T, Scale):
            lam = complex(T.factor) ** p.degree
            sup = p.coeff_support if lam != 0 else 0
            return DiagonalPoly(p.domain, p.degree, p.coeffs * lam, sup)
    if isinstance(p, FunctionalPower):
        gp = _adjoint_orbit_functional(p.gamma, T, n)
        if gp is not None:
            return FunctionalPower(p.domain, p.degree, gp)
    return PullbackChain(p, tuple([T] * n))


def _shifted_diagonal(p: DiagonalPoly, n: int, e: float, symbol_forward: bool) -> DiagonalPoly:
    """Coefficient transform of a diagonal polynomial under a shift power.

    The coefficients move by the opposite index map: a backward symbol
    pushes them forward and vice versa.  Entries leaving the truncation
    multiply coordinates that are exactly zero there, so they are
    dropped without error.
    """
    dim = p.domain.dim
    if symbol_forward:
        out, sup = kernels.shift_power_apply(p.coeffs, p.coeff_support, n, e, False)
    else:
        src_sup = max(0, min(p.coeff_support, dim - n))
        out, sup = kernels.shift_power_apply(p.coeffs, src_sup, n, e, True)
    return DiagonalPoly(p.domain, p.degree, out, sup)


def _adjoint_orbit_functional(gamma: SeqVec, T: LinOp, n: int) -> SeqVec | None:
    """``adjoint(T)^n gamma`` with the same truncation-exact dropping as
    the diagonal case; None when no closed or dense form applies."""
    desc = shift_descriptor(T)
    dim = gamma.space.dim
    if desc is not None:
        alpha, fwd = desc
        if fwd:
            out, sup = kernels.shift_power_apply(
                gamma.coords, gamma.exact_support, n, alpha, False
            )
        else:
            src_sup = max(0, min(gamma.exact_support, dim - n))
            out, sup = kernels.shift_power_apply(
                gamma.coords, src_sup, n, alpha, True
            )
        return SeqVec._wrap(gamma.space, out, sup)
    if isinstance(T, Scale):
        return gamma * complex(T.factor) ** n
    if isinstance(T, (DenseOp, Composite)):
        adj = T.adjoint()
        g = gamma
        for _ in range(n):
            g = adj.apply(g)
        return g
    return None


# -- norms -----------------------------------------------------------------


@dataclass(frozen=True)
class NormResult:
    """A polynomial norm with its provenance.

    ``mode`` is "exact" for the closed formulas and "estimate" for the
    sampled lower bound; the two are never conflated.
    """

    value: float
    mode: str
    converged: bool = True

    def __float__(self) -> float:
        return self.value


def _diagonal_norm_exact(p: DiagonalPoly) -> float:
    a = np.abs(p.coeffs[: p.coeff_support])
    if a.size == 0:
        return 0.0
    if p.domain.kind == "c0":
        return float(a.sum())
    pe, m = p.domain.p, p.degree
    if pe <= m:
        # the objective is convex in |x_i|^p, so the sup sits on a vertex
        return float(a.max())
    amax = float(a.max())
    if amax == 0.0:
        return 0.0
    q = pe / (pe - m)
    s = float(((a / amax) ** q).sum())
    return amax * s ** ((pe - m) / pe)


def poly_norm(p: Poly, mode: str = "auto", seed: int = 0,
              basis_limit: int = 128, n_random: int = 48,
              ascent_steps: int = 60) -> NormResult:
    """Sup of |p| over the unit ball.

    Exact closed forms exist for Diagonal and FunctionalPower variants;
    everything else is an "estimate": the best of basis vectors, random
    unit samples and a coordinate-ascent refinement, always a valid
    lower bound.  ``converged=False`` flags an ascent stopped by the
    step budget rather than by its step-size floor.
    """
    if mode not in ("auto", "exact", "estimate"):
        raise ValueError("mode must be auto, exact or estimate")
    if mode != "estimate":
        if isinstance(p, DiagonalPoly):
            return NormResult(_diagonal_norm_exact(p), "exact")
        if isinstance(p, FunctionalPower):
            return NormResult(norm(p.gamma) ** p.degree, "exact")
        if mode == "exact":
            raise ValueError(
                f"no exact norm for {type(p).__name__}; use estimate mode"
            )
    return _estimate_norm(p, seed, basis_limit, n_random, ascent_steps)


def _estimate_norm(p: Poly, seed: int, basis_limit: int, n_random: int,
                   ascent_steps: int) -> NormResult:
    space = p.domain
    best_val = 0.0
    best_x = None
    for j in range(1, min(space.dim, basis_limit) + 1):
        x = basis(space, j)
        v = abs(p(x))
        if v > best_val:
            best_val, best_x = v, x
    for r in range(n_random):
        x = random_unit(space, seed * 1_000_003 + r)
        v = abs(p(x))
        if v > best_val:
            best_val, best_x = v, x
    if best_x is None:
        return NormResult(0.0, "estimate")
    if ascent_steps == 0:
        # pure sampling bound, nothing to converge
        return NormResult(best_val, "estimate")

    # coordinate ascent on the unit sphere from the best sample
    rng = np.random.default_rng(seed + 17)
    x = best_x
    delta = 0.25
    converged = False
    k_dirs = min(space.dim, 12)
    for _ in range(ascent_steps):
        order = np.argsort(-np.abs(x.coords))[:k_dirs]
        extra = rng.integers(0, space.dim, size=4)
        improved = False
        for i in np.concatenate([order, extra]):
            for phase in (1.0, -1.0, 1j, -1j):
                cand = x.coords.copy()
                cand[i] += delta * phase
                v = SeqVec._wrap(space, cand, space.dim)
                nv = norm(v)
                if nv == 0.0:
                    continue
                v = v / nv
                val = abs(p(v))
                if val > best_val * (1 + 1e-14):
                    best_val, x = val, v
                    improved = True
        if not improved:
            delta *= 0.5
            if delta < 1e-6:
                converged = True
                break
    return NormResult(best_val, "estimate", converged)


def pullback_power_norm(p: Poly, T: LinOp, n: int, mode: str = "auto",
                        seed: int = 0) -> NormResult:
    """Norm of ``p . T^n``; exact whenever the pullback stays closed."""
    return poly_norm(pullback_power(p, T, n), mode=mode, seed=seed)
