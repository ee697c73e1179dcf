"""Finite-horizon dynamical classification probes.

Verdicts produced here are *evidence at a horizon*, never theorems: a
"bounded" trace may grow later, and a small Cesàro gap does not prove
convergence.  Every verdict therefore carries the horizon and the trace
it was judged on.

The divergence certificates follow the witness scheme of the
quantitative shift examples: compare the Cesàro means at n and ratio*n
(default 3) evaluated at the moving basis witness e_{n+1}, where the
plain backward shift yields the constant gap 2/3 and the weighted one a
gap bounded below by 2/3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ergokit import kernels
from ergokit.errors import SupportOverflowError
from ergokit.polyspace import CesaroSum, Poly, cesaro_eval_prefix, poly_norm
from ergokit.seqspace import SeqVec, SpaceSpec, basis, norm
from ergokit.shift_ops import LinOp, shift_descriptor

__all__ = [
    "GROWTH_SLOPE_TOL",
    "FIT_R2_GATE",
    "ProbeVerdict",
    "GapCertificate",
    "ErgodicVerdict",
    "OrbitSample",
    "StableOrbitReport",
    "fit_growth_exponent",
    "orbit_profile",
    "stable_orbit_probe",
    "power_bounded_probe",
    "cesaro_bounded_probe",
    "ergodic_gap",
    "weighted_gap_closed_form",
    "mean_ergodic_probe",
    "growth_witness",
]

GROWTH_SLOPE_TOL = 0.01  # log-log slopes below this count as flat
FIT_R2_GATE = 0.99  # growth exponents are only reported above this r^2


@dataclass(frozen=True, eq=False)
class ProbeVerdict:
    """Outcome of a boundedness probe over a trace of (n, value) pairs.

    ``kind`` is "bounded" (with ``bound`` = max of the trace),
    "unbounded" (with a log-log ``exponent`` fit and its ``r_squared``,
    only reported when the fit is clean) or "inconclusive".
    """

    kind: str
    horizon: int
    ns: np.ndarray
    values: np.ndarray
    bound: float | None = None
    exponent: float | None = None
    r_squared: float | None = None

    @classmethod
    def bounded(cls, horizon, ns, values) -> "ProbeVerdict":
        c = float(np.max(values)) if len(values) else 0.0
        return cls("bounded", horizon, np.asarray(ns), np.asarray(values), bound=c)

    @classmethod
    def unbounded(cls, horizon, ns, values, exponent, r_squared) -> "ProbeVerdict":
        if r_squared < FIT_R2_GATE:
            raise ValueError("growth exponents require r^2 >= 0.99")
        return cls("unbounded", horizon, np.asarray(ns), np.asarray(values),
                   exponent=float(exponent), r_squared=float(r_squared))

    @classmethod
    def inconclusive(cls, horizon, ns, values) -> "ProbeVerdict":
        return cls("inconclusive", horizon, np.asarray(ns), np.asarray(values))

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "horizon": int(self.horizon),
            "trace": [[int(n), float(v)] for n, v in zip(self.ns, self.values)],
        }
        if self.bound is not None:
            d["bound"] = float(self.bound)
        if self.exponent is not None:
            d["exponent"] = float(self.exponent)
            d["r_squared"] = float(self.r_squared)
        return d


def fit_growth_exponent(ns, values) -> tuple[float, float]:
    """Least-squares slope of log(value) against log(n) over the top
    half of the trace, with its r^2.

    The early part of a trace is excluded because transients (support
    exhaustion, warm-up) pollute it.  Constant traces fit slope 0 with
    r^2 = 1.
    """
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    half = ns >= ns[len(ns) // 2]
    keep = half & (values > 0)
    if keep.sum() < 3:
        return 0.0, 1.0
    lx = np.log(ns[keep])
    ly = np.log(values[keep])
    if np.allclose(ly, ly[0], rtol=0.0, atol=1e-13):
        return 0.0, 1.0
    slope, intercept = np.polyfit(lx, ly, 1)
    fitted = slope * lx + intercept
    ss_res = float(np.sum((ly - fitted) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(r2)


def _classify_by_growth(horizon, ns, values) -> ProbeVerdict:
    slope, r2 = fit_growth_exponent(ns, values)
    if slope < GROWTH_SLOPE_TOL:
        return ProbeVerdict.bounded(horizon, ns, values)
    if r2 >= FIT_R2_GATE:
        return ProbeVerdict.unbounded(horizon, ns, values, slope, r2)
    return ProbeVerdict.inconclusive(horizon, ns, values)


def _classify_by_cap(horizon, ns, values, cap) -> ProbeVerdict:
    if float(np.max(values)) <= cap:
        return ProbeVerdict.bounded(horizon, ns, values)
    slope, r2 = fit_growth_exponent(ns, values)
    if r2 >= FIT_R2_GATE:
        return ProbeVerdict.unbounded(horizon, ns, values, slope, r2)
    return ProbeVerdict.inconclusive(horizon, ns, values)


# -- orbits ----------------------------------------------------------------


def orbit_profile(T: LinOp, x: SeqVec, horizon: int) -> np.ndarray:
    """Norms of the orbit: ``[||T^n x||]_{n=0..horizon}``.

    Shift symbols on l_p use the closed-form sweep (one pass); other
    operators iterate.
    """
    desc = shift_descriptor(T)
    if desc is not None and T.space.is_lp:
        alpha, fwd = desc
        sup = x.exact_support
        if fwd and sup > 0 and sup + horizon > T.space.dim:
            raise SupportOverflowError(
                f"forward orbit of length {horizon} leaves the truncation "
                f"(support {sup}, dim {T.space.dim}); raise dim"
            )
        p = T.space.p
        y = np.abs(x.coords) ** p
        ones = np.ones(T.space.dim)
        powers = kernels.shifted_dot_sweep(ones, T.space.dim, y, sup,
                                           horizon, alpha * p, fwd)
        return np.asarray(powers) ** (1.0 / p)
    out = np.empty(horizon + 1)
    y = x
    out[0] = norm(y)
    for n in range(1, horizon + 1):
        y = T.apply(y)
        out[n] = norm(y)
    return out


@dataclass(frozen=True, eq=False)
class OrbitSample:
    label: str
    verdict: ProbeVerdict
    tail_separation: float
    note: str | None = None


@dataclass(frozen=True, eq=False)
class StableOrbitReport:
    samples: tuple[OrbitSample, ...]
    stable: bool
    horizon: int
    cap: float

    def to_dict(self) -> dict:
        return {
            "stable": self.stable,
            "horizon": int(self.horizon),
            "cap": float(self.cap),
            "samples": [
                {
                    "label": s.label,
                    "verdict": s.verdict.to_dict(),
                    "tail_separation": float(s.tail_separation),
                    **({"note": s.note} if s.note else {}),
                }
                for s in self.samples
            ],
        }


def stable_orbit_probe(T: LinOp, samples, horizon: int, cap: float,
                       labels=None) -> StableOrbitReport:
    """Per-sample orbit boundedness with a non-convergence flag.

    A sample is "bounded" when its whole norm trace stays at or below
    ``cap``.  Bounded norms say nothing about relative compactness of
    the orbit, which is out of numeric reach; as a proxy, a bounded
    orbit whose late iterates stay separated
    (``||T^N x - T^{N/2} x||`` above 1e-6) is flagged in a note.
    """
    labels = labels or [f"sample_{i}" for i in range(len(samples))]
    out = []
    for label, x in zip(labels, samples):
        trace = orbit_profile(T, x, horizon)
        ns = np.arange(horizon + 1)
        verdict = _classify_by_cap(horizon, ns, trace, cap)
        sep = norm(T.apply_power(horizon, x) - T.apply_power(horizon // 2, x))
        note = None
        if verdict.kind == "bounded" and sep > 1e-6:
            note = (
                "orbit norms stay bounded but late iterates remain "
                f"separated by {sep:.3g}; no numeric sign of a convergent "
                "(relatively compact) orbit"
            )
        out.append(OrbitSample(label, verdict, sep, note))
    stable = all(s.verdict.kind == "bounded" for s in out)
    return StableOrbitReport(tuple(out), stable, horizon, cap)


def scaled_basis_escape(T: LinOp, horizon: int, s: float | None = None) -> ProbeVerdict:
    """Orbit escape of the compact scaled-basis family under a weighted
    backward shift.

    The family ``{j**(-s) e_j : j <= dim} + {0}`` is compact (it
    converges to 0), yet ``sup_j ||T^n (j^{-s} e_j)|| = (n+1)^(alpha-s)``
    grows without bound for ``s < alpha``: no fixed bounded set can
    contain the orbit of this compact set, which is the failure of
    stable orbits.  No single fixed vector shows this growth - every
    truncated orbit dies once the support is exhausted, and power-law
    tails provably give decaying orbit norms - so the witness is a
    family, not a point.

    The trace is the family sup per step, computed from the one-nonzero
    structure of basis orbits (``||T^n e_j|| = (j/(j-n))^alpha``); tests
    cross-check it against :func:`orbit_profile`.
    """
    desc = shift_descriptor(T)
    if desc is None or desc[1] or not T.space.is_lp:
        raise ValueError("the scaled-basis escape probe needs a backward "
                         "shift on an l_p space")
    alpha = desc[0]
    if s is None:
        s = alpha / 2.0
    dim = T.space.dim
    if horizon >= dim:
        raise SupportOverflowError(
            f"family escape horizon {horizon} needs dim > horizon; raise dim"
        )
    j = np.arange(1.0, dim + 1.0)
    scale = j**(-s)
    ns = np.arange(1, horizon + 1)
    values = np.empty(horizon)
    for i, n in enumerate(ns):
        jj = j[n:]
        values[i] = float(((jj / (jj - n)) ** alpha * scale[n:]).max())
    return _classify_by_growth(horizon, ns, values)


# -- probes ----------------------------------------------------------------


def power_bounded_probe(T: LinOp, horizon: int) -> ProbeVerdict:
    """Trace of operator power norms ``||T^n||`` for n = 1..horizon."""
    ns = np.arange(1, horizon + 1)
    values = np.array([T.power_norm(int(n)) for n in ns])
    return _classify_by_growth(horizon, ns, values)


def cesaro_bounded_probe(T: LinOp, p: Poly, horizon: int, samples,
                         start: int = 1, cap: float | None = None) -> ProbeVerdict:
    """Trace of ``max_x |(1/n) sum_k p(T^k x)| / ||p||`` over the samples.

    With a ``cap`` (e.g. a mean bound the theory provides) the verdict
    is "bounded" as soon as the whole trace stays at or below it; traces
    that saturate slowly towards a plateau would otherwise be mistaken
    for growth by the slope fit.
    """
    pn = poly_norm(p).value
    if pn == 0.0:
        raise ValueError("Cesàro boundedness needs a nonzero polynomial")
    best = np.zeros(horizon)
    for x in samples:
        means = np.abs(cesaro_eval_prefix(p, T, x, start, horizon))
        np.maximum(best, means, out=best)
    ns = np.arange(1, horizon + 1)
    if cap is not None:
        return _classify_by_cap(horizon, ns, best / pn, cap)
    return _classify_by_growth(horizon, ns, best / pn)


# -- gap certificates ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GapCertificate:
    """A recomputable Cesàro divergence witness.

    ``gap = |(C_T)_[n] p (w) - (C_T)_[ratio n] p (w)|`` for polynomial
    targets, or the norm of the corresponding vector difference when
    ``polynomial`` is None.  ``threshold`` is the level the gap was
    compared against.
    """

    n: int
    witness: SeqVec
    polynomial: Poly | None
    symbol: LinOp
    gap: float
    threshold: float
    ratio: int = 3
    start: int = 1

    def recompute(self) -> float:
        if self.polynomial is None:
            a = self.symbol.cesaro_apply(self.n, self.witness, self.start)
            b = self.symbol.cesaro_apply(self.ratio * self.n, self.witness,
                                         self.start)
            return norm(a - b)
        lo = CesaroSum(self.polynomial, self.symbol, self.n, self.start)
        hi = CesaroSum(self.polynomial, self.symbol, self.ratio * self.n,
                       self.start)
        return abs(lo(self.witness) - hi(self.witness))

    def to_dict(self) -> dict:
        wit = self.witness
        if wit.exact_support >= 1 and np.count_nonzero(wit.coords) == 1:
            j = int(np.nonzero(wit.coords)[0][0]) + 1
            desc = {"kind": "basis", "index": j,
                    "scale": _c2pair(wit.coords[j - 1])}
        elif wit.space.dim <= 64:
            desc = {"kind": "dense", "coords": [_c2pair(z) for z in wit.coords]}
        else:
            desc = {"kind": "dense", "support": int(wit.exact_support)}
        return {
            "n": int(self.n),
            "ratio": int(self.ratio),
            "start": int(self.start),
            "gap": float(self.gap),
            "threshold": float(self.threshold),
            "witness": desc,
            "target": "vector" if self.polynomial is None else "polynomial",
        }


def _c2pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def ergodic_gap(T: LinOp, p: Poly, n: int, witness: SeqVec | None = None,
                ratio: int = 3, start: int = 1,
                threshold: float = 2.0 / 3.0) -> GapCertificate:
    """Gap between the n-th and (ratio n)-th Cesàro means of the pulled
    back polynomial, evaluated at the witness (default e_{n+1}).

    The ratio-3 comparison is the scheme both quantitative divergence
    examples use; other ratios are exposed for exploration.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if ratio < 2:
        raise ValueError("need ratio >= 2")
    if witness is None:
        if n + 1 > T.space.dim:
            raise SupportOverflowError(
                f"witness e_{n + 1} needs dimension > {n}; raise dim"
            )
        witness = basis(T.space, n + 1)
    prefix = cesaro_eval_prefix(p, T, witness, start, ratio * n)
    gap = abs(prefix[n - 1] - prefix[ratio * n - 1])
    return GapCertificate(n, witness, p, T, float(gap), float(threshold),
                          ratio, start)


def weighted_gap_closed_form(n: int, m: int, alpha: float) -> float:
    """Reference value ``(2/(3n)) * sum_{k=1}^n ((n+1)/(n+1-k))**(m alpha)``
    for the e_{n+1} witness scheme at ratio 3 and start 1.

    ``alpha = 0`` collapses to the constant 2/3 of the plain shift.
    Deliberately written from the displayed sum, independent of the
    sweep kernels, so it can sit on the other side of a two-path check.
    """
    k = np.arange(1.0, n + 1.0)
    terms = ((n + 1.0) / (n + 1.0 - k)) ** (m * alpha)
    return float(2.0 / (3.0 * n) * terms.sum())


# -- mean ergodicity -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ErgodicVerdict:
    """Cauchy-style evidence for convergence of the Cesàro means.

    ``kind`` is "converges" (with the norm of the limit estimate),
    "diverges" (with a gap certificate) or "inconclusive".
    """

    kind: str
    target_kind: str
    horizon: int
    tol: float
    ns: np.ndarray
    gaps: np.ndarray
    limit_norm: float | None = None
    certificate: GapCertificate | None = None

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "target": self.target_kind,
            "horizon": int(self.horizon),
            "tol": float(self.tol),
            "gap_trace": [[int(n), float(g)] for n, g in zip(self.ns, self.gaps)],
        }
        if self.limit_norm is not None:
            d["limit_norm"] = float(self.limit_norm)
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_dict()
        return d


def _ladder(limit: int) -> list[int]:
    ns = []
    n = 1
    while n <= limit:
        ns.append(n)
        n *= 2
    return ns or [1]


def _decide(gaps: np.ndarray, tol: float) -> str:
    last = gaps[-1]
    if last < tol:
        tail = gaps[-3:]
        if len(tail) < 2 or all(tail[i + 1] <= tail[i] * 1.05 + tol * 0.1
                                for i in range(len(tail) - 1)):
            return "converges"
        return "inconclusive"
    if last >= 0.5 * float(np.max(gaps)):
        return "diverges"
    return "inconclusive"


def mean_ergodic_probe(T: LinOp, target, horizon: int, tol: float = 1e-3,
                       start: int = 1, ratio: int = 3,
                       seed: int = 0) -> ErgodicVerdict:
    """Cauchy probe for the Cesàro means along a geometric ladder.

    Vector targets compare the means at n and 2n in norm; polynomial
    targets run the e_{n+1} witness gap scheme at the given ratio and
    return a divergence certificate when a gap at or above ``tol``
    persists.  Convergent verdicts report the norm of the limit
    estimate (the mean at the largest rung for vectors, a sampled
    lower-bound norm for polynomials).
    """
    if isinstance(target, SeqVec):
        rungs = _ladder(max(1, horizon // 2))
        gaps = []
        last_mean = None
        for n in rungs:
            a = T.cesaro_apply(n, target, start)
            b = T.cesaro_apply(2 * n, target, start)
            gaps.append(norm(a - b))
            last_mean = b
        gaps = np.array(gaps)
        ns = np.array(rungs)
        kind = _decide(gaps, tol)
        if kind == "converges":
            return ErgodicVerdict("converges", "vector", horizon, tol, ns,
                                  gaps, limit_norm=norm(last_mean))
        if kind == "diverges":
            i = int(np.argmax(gaps))
            cert = GapCertificate(int(ns[i]), target, None, T,
                                  float(gaps[i]), tol, 2, start)
            return ErgodicVerdict("diverges", "vector", horizon, tol, ns,
                                  gaps, certificate=cert)
        return ErgodicVerdict("inconclusive", "vector", horizon, tol, ns, gaps)

    if isinstance(target, Poly):
        limit = min(horizon, T.space.dim - 1)
        rungs = _ladder(max(1, limit))
        certs = [ergodic_gap(T, target, n, ratio=ratio, start=start,
                             threshold=tol) for n in rungs]
        gaps = np.array([c.gap for c in certs])
        ns = np.array(rungs)
        kind = _decide(gaps, tol)
        if kind == "converges":
            est = poly_norm(CesaroSum(target, T, rungs[-1] * ratio, start),
                            mode="estimate", seed=seed, basis_limit=32,
                            n_random=8, ascent_steps=0)
            return ErgodicVerdict("converges", "polynomial", horizon, tol,
                                  ns, gaps, limit_norm=est.value)
        if kind == "diverges":
            best = certs[int(np.argmax(gaps))]
            return ErgodicVerdict("diverges", "polynomial", horizon, tol,
                                  ns, gaps, certificate=best)
        return ErgodicVerdict("inconclusive", "polynomial", horizon, tol,
                              ns, gaps)

    raise TypeError("target must be a SeqVec or a Poly")
