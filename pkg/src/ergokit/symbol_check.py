"""Well-definedness detector for polynomial symbols.

A composition operator on the m-homogeneous polynomials is well defined
exactly when its symbol is linear.  The numeric detector samples the
homogeneity residual

    |p(phi(lambda x)) - lambda^m p(phi(x))|

over scalings lambda, points x and test polynomials p.  A linear symbol
makes the residual vanish identically; a nonzero component of degree
d != 1 shows up as a factor |lambda^d - lambda|, so sampled moduli
|lambda| are kept away from 1 (where the roots-of-unity ambiguity
lambda^{d-1} = 1 could hide a nonlinear component).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ergokit.errors import SpaceMismatchError
from ergokit.polyspace import DiagonalPoly, FunctionalPower, Poly, diagonal, functional_power
from ergokit.seqspace import SeqVec, SpaceSpec, basis, norm, zeros
from ergokit.shift_ops import LinOp

__all__ = [
    "Component",
    "LinearComponent",
    "PowerComponent",
    "ZeroComponent",
    "Symbol",
    "homogeneity_residual",
    "residual_scale",
    "well_defined_check",
    "linearity_check",
    "WellDefinedVerdict",
    "ResidualWitness",
    "parse_symbol_block",
]


class Component:
    """A homogeneous component of a polynomial symbol."""

    degree: int
    space: SpaceSpec

    def apply(self, x: SeqVec) -> SeqVec:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class LinearComponent(Component):
    op: LinOp

    @property
    def degree(self) -> int:  # type: ignore[override]
        return 1

    @property
    def space(self) -> SpaceSpec:  # type: ignore[override]
        return self.op.space

    def apply(self, x: SeqVec) -> SeqVec:
        return self.op.apply(x)


@dataclass(frozen=True, eq=False)
class PowerComponent(Component):
    """Coordinate-wise power map ``x -> (c_j * x_{perm(j)}**d)_j``.

    ``perm`` is a 1-based source index per output coordinate; identity
    by default.  Exactly d-homogeneous by construction.
    """

    space: SpaceSpec
    degree: int
    coeffs: np.ndarray
    perm: np.ndarray | None = None

    def __post_init__(self) -> None:
        c = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if c.shape != (self.space.dim,):
            raise ValueError("one coefficient per output coordinate required")
        object.__setattr__(self, "coeffs", c)
        if self.perm is not None:
            pi = np.ascontiguousarray(self.perm, dtype=np.int64)
            if pi.shape != (self.space.dim,) or pi.min() < 1 or pi.max() > self.space.dim:
                raise ValueError("perm must give a 1-based source index per coordinate")
            object.__setattr__(self, "perm", pi)
        if int(self.degree) < 1:
            raise ValueError("component degree must be >= 1")

    def apply(self, x: SeqVec) -> SeqVec:
        if x.space != self.space:
            raise SpaceMismatchError("component applied outside its space")
        src = x.coords if self.perm is None else x.coords[self.perm - 1]
        out = self.coeffs * src**self.degree
        nz = np.nonzero(out)[0]
        sup = int(nz[-1]) + 1 if nz.size else 0
        return SeqVec._wrap(self.space, out, sup)


@dataclass(frozen=True, eq=False)
class ZeroComponent(Component):
    space: SpaceSpec
    degree: int

    def apply(self, x: SeqVec) -> SeqVec:
        return zeros(self.space)


@dataclass(frozen=True, eq=False)
class Symbol:
    """A polynomial self-map given by finitely many homogeneous components."""

    space: SpaceSpec
    components: tuple[Component, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("symbol needs at least one component")
        for comp in self.components:
            if comp.space != self.space:
                raise SpaceMismatchError("all components must share the space")

    @property
    def max_degree(self) -> int:
        return max(c.degree for c in self.components)

    def apply(self, x: SeqVec) -> SeqVec:
        acc = zeros(self.space)
        for comp in self.components:
            acc = acc + comp.apply(x)
        return acc

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({c.degree for c in self.components}))


def homogeneity_residual(phi: Symbol, p: Poly, lam: complex, x: SeqVec) -> float:
    """``|p(phi(lambda x)) - lambda^m p(phi(x))|`` (zero for linear phi)."""
    m = p.degree
    a = p(phi.apply(x * lam))
    b = complex(lam) ** m * p(phi.apply(x))
    return abs(a - b)


def residual_scale(phi: Symbol, m: int, lam: complex, x: SeqVec) -> float:
    """Dimensional scale for pass/fail thresholds on the residual."""
    d = m * phi.max_degree
    return (1.0 + abs(lam)) ** d * (1.0 + norm(x)) ** d


@dataclass(frozen=True, eq=False)
class ResidualWitness:
    lam: complex
    x: SeqVec
    polynomial: Poly
    residual: float
    scale: float


@dataclass(frozen=True, eq=False)
class WellDefinedVerdict:
    well_defined: bool
    max_relative_residual: float
    witness: ResidualWitness | None
    trials: int
    seed: int

    def to_dict(self) -> dict:
        d = {
            "well_defined": self.well_defined,
            "max_relative_residual": float(self.max_relative_residual),
            "trials": int(self.trials),
            "seed": int(self.seed),
        }
        if self.witness is not None:
            d["witness"] = {
                "lambda": [float(np.real(self.witness.lam)),
                           float(np.imag(self.witness.lam))],
                "residual": float(self.witness.residual),
                "scale": float(self.witness.scale),
            }
        return d


def _sample_lambda(rng: np.random.Generator) -> complex:
    # moduli stay off the unit circle so lambda^{d-1} = 1 has no solutions
    while True:
        r = rng.uniform(0.5, 2.0)
        if abs(r - 1.0) >= 0.05:
            break
    theta = rng.uniform(0.0, 2.0 * np.pi)
    return r * np.exp(1j * theta)


def _sample_points(space: SpaceSpec, rng: np.random.Generator) -> list[SeqVec]:
    pts = []
    for j in range(1, min(space.dim, 8) + 1):
        scale = 0.5 + rng.uniform(0.0, 1.5)
        pts.append(basis(space, j) * scale)
    sup = min(max(space.dim // 2, 1), 32)
    for _ in range(4):
        c = np.zeros(space.dim, dtype=np.complex128)
        c[:sup] = rng.standard_normal(sup) + 1j * rng.standard_normal(sup)
        pts.append(SeqVec._wrap(space, c, sup))
    return pts


def _sample_polys(space: SpaceSpec, m: int, rng: np.random.Generator) -> list[Poly]:
    dual = space.dual()
    polys: list[Poly] = []
    for j in range(1, min(space.dim, 16) + 1):
        polys.append(functional_power(basis(dual, j), m, space))
    for _ in range(3):
        sup = min(space.dim, 32)
        g = np.zeros(space.dim, dtype=np.complex128)
        g[:sup] = rng.standard_normal(sup) + 1j * rng.standard_normal(sup)
        polys.append(functional_power(SeqVec._wrap(dual, g, sup), m, space))
    coeffs = rng.standard_normal(min(space.dim, 32)) + 1j * rng.standard_normal(min(space.dim, 32))
    polys.append(diagonal(space, m, coeffs))
    return polys


def well_defined_check(phi: Symbol, m: int, trials: int = 64,
                       seed: int = 0, tol: float = 1e-12) -> WellDefinedVerdict:
    """Sampled well-definedness test for the degree-m composition action.

    Residuals are compared against ``tol * scale`` with the dimensional
    scale of :func:`residual_scale`.  The verdict agrees with
    :func:`linearity_check` whenever the theory holds; the test suite
    asserts that agreement rather than reconciling it silently.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = np.random.default_rng(seed)
    points = _sample_points(phi.space, rng)
    polys = _sample_polys(phi.space, m, rng)
    worst: ResidualWitness | None = None
    max_rel = 0.0
    for t in range(trials):
        lam = _sample_lambda(rng)
        x = points[t % len(points)]
        p = polys[(t // len(points)) % len(polys)]
        r = homogeneity_residual(phi, p, lam, x)
        s = residual_scale(phi, m, lam, x)
        rel = r / s
        if rel > max_rel:
            max_rel = rel
            worst = ResidualWitness(lam, x, p, r, s)
    if max_rel > tol:
        return WellDefinedVerdict(False, max_rel, worst, trials, seed)
    return WellDefinedVerdict(True, max_rel, None, trials, seed)


def linearity_check(phi: Symbol, samples) -> bool:
    """True iff every component of degree != 1 vanishes on all samples."""
    for comp in phi.components:
        if comp.degree == 1:
            continue
        for x in samples:
            bound = 1e-12 * (1.0 + norm(x)) ** comp.degree
            if norm(comp.apply(x)) > bound:
                return False
    return True


# -- CLI symbol block ------------------------------------------------------


def parse_symbol_block(text: str, space: SpaceSpec) -> Symbol:
    """Parse the structured symbol description used by the CLI.

    One component per line::

        component degree=1 kind=linear:sigma
        component degree=1 kind=linear:phi_alpha:0.25
        component degree=2 kind=power:2:1,0,0.5

    Linear kinds: ``sigma`` (plain backward), ``phi_alpha:<a>``,
    ``psi_alpha:<a>``, ``forward``, ``identity``, ``scale:<factor>``.
    ``power:<d>:<coeffs>`` is the coordinate-wise power map with the
    comma-separated coefficients (zero padded).  ``zero:<d>`` is the
    zero component of degree d.
    """
    from ergokit.shift_ops import operator_from_name

    comps: list[Component] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] != "component":
            raise ValueError(f"line {lineno}: expected 'component ...'")
        fields = dict(kv.split("=", 1) for kv in parts[1:] if "=" in kv)
        if "degree" not in fields or "kind" not in fields:
            raise ValueError(f"line {lineno}: need degree= and kind=")
        degree = int(fields["degree"])
        kind = fields["kind"]
        toks = kind.split(":")
        if toks[0] == "linear":
            if degree != 1:
                raise ValueError(f"line {lineno}: linear components have degree 1")
            name = toks[1]
            alpha = float(toks[2]) if len(toks) > 2 and name in ("phi_alpha", "psi_alpha") else None
            factor = complex(toks[2]) if len(toks) > 2 and name == "scale" else None
            comps.append(LinearComponent(operator_from_name(name, space, alpha, factor)))
        elif toks[0] == "power":
            d = int(toks[1])
            if d != degree:
                raise ValueError(f"line {lineno}: degree mismatch {degree} vs {d}")
            vals = [complex(v) for v in toks[2].split(",")] if len(toks) > 2 else []
            c = np.zeros(space.dim, dtype=np.complex128)
            c[: len(vals)] = vals
            comps.append(PowerComponent(space, d, c))
        elif toks[0] == "zero":
            d = int(toks[1]) if len(toks) > 1 else degree
            comps.append(ZeroComponent(space, d))
        else:
            raise ValueError(f"line {lineno}: unknown component kind {kind!r}")
    return Symbol(space, tuple(comps))
