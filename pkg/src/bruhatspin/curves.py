"""Convex and locally convex curves, minor functions and itineraries.

A curve is described by a :class:`ConvexCurveSpec`: either piecewise
constant positive coefficients on a grid, or a named closed form (the
``h`` curve ``exp(t h)`` and the ``n`` curve ``exp(t n)``).  At the
lower triangular level the coefficients multiply the ``l_j``; at the
orthogonal level they multiply the skew generators ``a_j``.

Numerical work that has to resolve high-order zeros (event refinement,
multiplicity fits) is done in mpmath at ``dps`` digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .bruhat import signed_bruhat_decompose
from .coxeter import Permutation, mult_vector
from .errors import DegeneracyError, DomainError
from .linalg import (
    Poly,
    SignedPermMatrix,
    det,
    gen_a,
    h_lower,
    identity,
    mat_mul,
    matrix_exp_float,
    mp_expm,
    mp_matrix,
    nilpotent_exp,
    nilpotent_n,
    qr_chart,
    root_multiplicity_at_zero,
    to_exact,
    to_float,
)
from .spinword import SpinWord, pi_so

DETECT_EPS = 1e-7
STEPS = 4096
FIT_RESIDUAL_LIMIT = 0.25


@dataclass(frozen=True)
class ConvexCurveSpec:
    """Piecewise constant coefficients, or a closed form ``"h"`` / ``"n"``.

    ``kappas[m]`` holds the n coefficients on ``[grid[m], grid[m+1]]``.
    ``base`` is the value at ``grid[0]`` (or at t = 0 for closed forms);
    None means the identity.
    """

    n: int
    grid: tuple = ()
    kappas: tuple = ()
    closed_form: str | None = None
    base: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.closed_form is not None:
            if self.closed_form not in ("h", "n"):
                raise DomainError(f"unknown closed form {self.closed_form!r}")
            return
        if len(self.grid) < 2 or len(self.kappas) != len(self.grid) - 1:
            raise DomainError("need len(grid) = len(kappas) + 1 >= 2")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise DomainError("grid must be strictly increasing")
        for ks in self.kappas:
            if len(ks) != self.n:
                raise DomainError(f"each interval needs {self.n} coefficients")
            if any(k <= 0 for k in ks):
                raise DomainError("coefficients must be strictly positive")

    @property
    def t_start(self):
        return 0 if self.closed_form else self.grid[0]

    def interval_coeffs(self, t) -> tuple:
        """Coefficients in force at time t."""
        if self.closed_form == "h":
            n = self.n
            return tuple(math.sqrt(j * (n + 1 - j)) for j in range(1, n + 1))
        if self.closed_form == "n":
            return (1,) * self.n
        return self.kappas[self._interval(t)]

    def _interval(self, t) -> int:
        if t < self.grid[0] or t > self.grid[-1]:
            raise DomainError(f"t = {t} outside [{self.grid[0]}, {self.grid[-1]}]")
        for m in range(len(self.kappas)):
            if t <= self.grid[m + 1]:
                return m
        return len(self.kappas) - 1

    def pieces(self, t0, t1) -> list[tuple]:
        """Split [t0, t1] (t0 <= t1) into (a, b, coeffs) with constant coefficients."""
        if self.closed_form:
            return [(t0, t1, self.interval_coeffs(t0))]
        # float sample times may overshoot the last breakpoint by an ulp
        slack = 1e-12 * max(1.0, abs(float(self.grid[-1])))
        if self.grid[0] - slack <= t0 < self.grid[0]:
            t0 = self.grid[0]
        if self.grid[-1] < t1 <= self.grid[-1] + slack:
            t1 = self.grid[-1]
        out = []
        for m, ks in enumerate(self.kappas):
            a, b = max(t0, self.grid[m]), min(t1, self.grid[m + 1])
            if a < b:
                out.append((a, b, ks))
        if t0 < self.grid[0] or t1 > self.grid[-1]:
            raise DomainError("interval leaves the grid")
        return out

    def to_json(self) -> dict:
        from .linalg import format_scalar, matrix_to_json

        if self.closed_form:
            obj: dict = {"closed_form": self.closed_form, "n": self.n}
        else:
            obj = {
                "grid": [format_scalar(g) for g in self.grid],
                "kappas": [[format_scalar(k) for k in ks] for ks in self.kappas],
                "n": self.n,
            }
        if self.base is not None:
            obj["base"] = matrix_to_json(self.base)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "ConvexCurveSpec":
        from .linalg import matrix_from_json, parse_scalar

        base = None
        if obj.get("base") is not None:
            b = obj["base"]
            if isinstance(b, dict) and "sigma" in b:
                base = pi_so(SpinWord.from_json(b)).to_array()
            else:
                base = matrix_from_json(b)
        if "closed_form" in obj:
            n = obj.get("n")
            if n is None:
                if base is None:
                    raise DomainError("closed form needs n or base")
                n = base.shape[0] - 1
            return cls(int(n), closed_form=obj["closed_form"], base=base)
        kappas = tuple(tuple(parse_scalar(k) for k in ks) for ks in obj["kappas"])
        n = int(obj.get("n", len(kappas[0]) if kappas else 0))
        grid = tuple(parse_scalar(g) for g in obj["grid"])
        return cls(n, grid, kappas, base=base)


@dataclass(frozen=True)
class ItineraryEvent:
    t: float
    sigma: Permutation
    signs: SignedPermMatrix

    def to_json(self) -> dict:
        from .linalg import round_sig

        return {"t": round_sig(self.t), "sigma": list(self.sigma.images), "signs": self.signs.to_json()}


# ---------------------------------------------------------------- lower triangular level


def _beta_matrix(coeffs: Sequence, n: int) -> np.ndarray:
    m = to_exact(np.zeros((n + 1, n + 1), dtype=int))
    for j, b in enumerate(coeffs, start=1):
        m[j, j - 1] = Fraction(b)
    return m


def integrate_convex_exact(spec: ConvexCurveSpec, t1=None, l0: np.ndarray | None = None) -> np.ndarray:
    """Exact ``Gamma(t1)`` for ``Gamma^-1 Gamma' = sum beta_j l_j``, ``Gamma(start) = l0``.

    With ``t1=None`` the result is a matrix of :class:`Poly` in t valid on
    the last grid interval (or everywhere for the ``n`` closed form).
    """
    n = spec.n
    if spec.closed_form == "h":
        raise DomainError("the h curve has irrational coefficients; use the numeric integrator")
    cur = identity(n + 1) if l0 is None else to_exact(l0)
    if spec.closed_form == "n":
        t = Poly.t() if t1 is None else Fraction(t1)
        return mat_mul(cur, nilpotent_exp(nilpotent_n(n), t))
    end = spec.grid[-1] if t1 is None else Fraction(t1)
    for a, b, ks in spec.pieces(spec.grid[0], end):
        if t1 is None and b == spec.grid[-1]:
            var = Poly((-Fraction(a), 1))
            return mat_mul(cur, nilpotent_exp(_beta_matrix(ks, n), var))
        cur = mat_mul(cur, nilpotent_exp(_beta_matrix(ks, n), Fraction(b) - Fraction(a)))
    return cur


def path_sum_entry(spec: ConvexCurveSpec, row: int, col: int, t1) -> Fraction:
    """Entry (row, col) of ``Gamma(start)^-1 Gamma(t1)`` as an iterated integral.

    ``int beta_{row-1}(tau_1) ... beta_col(tau_l)`` over ``tau_1 <= ... <= tau_l``.
    """
    if row < col:
        return Fraction(0)
    if row == col:
        return Fraction(1)
    letters = list(range(row - 1, col - 1, -1))
    pieces = spec.pieces(spec.t_start if spec.closed_form else spec.grid[0], Fraction(t1))
    # F_p(tau) piecewise polynomial; carry the value at interval starts.
    values = [Fraction(1)] + [Fraction(0)] * len(letters)
    for a, b, ks in pieces:
        a, b = Fraction(a), Fraction(b)
        polys = [Poly.const(values[0])]
        for p, j in enumerate(letters, start=1):
            integrand = polys[-1] * Fraction(ks[j - 1])
            prim = integrand.integral()
            polys.append(prim - prim(a) + values[p])
        values = [poly(b) for poly in polys]
    return values[-1]


# ---------------------------------------------------------------- orthogonal level


def _skew_matrix(coeffs: Sequence, n: int) -> np.ndarray:
    m = np.zeros((n + 1, n + 1))
    for j, k in enumerate(coeffs, start=1):
        m += float(k) * gen_a(n, j)
    return m


def _base(spec: ConvexCurveSpec, q0) -> np.ndarray:
    if q0 is not None:
        return to_float(q0)
    if spec.base is not None:
        return to_float(spec.base)
    return np.eye(spec.n + 1)


def _advance(spec: ConvexCurveSpec, q: np.ndarray, a, b) -> np.ndarray:
    """``q`` transported from time a to time b (either order)."""
    if a == b:
        return q
    if spec.closed_form:
        return q @ matrix_exp_float(float(b - a) * _skew_matrix(spec.interval_coeffs(a), spec.n))
    lo, hi = (a, b) if a < b else (b, a)
    mats = [
        matrix_exp_float(float(y - x) * _skew_matrix(ks, spec.n)) for x, y, ks in spec.pieces(lo, hi)
    ]
    prod = np.eye(spec.n + 1)
    for m in mats:
        prod = prod @ m
    return q @ (prod if a < b else prod.T)


def integrate_lc_numeric(
    spec: ConvexCurveSpec,
    q0: np.ndarray | None = None,
    t0=None,
    t1=None,
    step: float | None = None,
) -> tuple[np.ndarray, list[np.ndarray]]:
    """Frames of ``Gamma^-1 Gamma' = sum kappa_j a_j`` sampled every ``step`` on [t0, t1].

    Each step multiplies by an exact exponential of the constant generator
    and re-orthonormalises with QR.
    """
    if spec.closed_form is None:
        t0 = spec.grid[0] if t0 is None else t0
        t1 = spec.grid[-1] if t1 is None else t1
    if t0 is None or t1 is None:
        raise DomainError("closed forms need explicit t0 and t1")
    t0, t1 = float(t0), float(t1)
    if t1 <= t0:
        raise DomainError("need t0 < t1")
    if step is None:
        step = (t1 - t0) / STEPS
    if step <= 0:
        raise DomainError("step must be positive")
    count = max(1, int(math.ceil((t1 - t0) / step - 1e-12)))
    ts = np.array([min(t0 + k * step, t1) for k in range(count + 1)])
    q = _advance(spec, _base(spec, q0), spec.t_start if spec.closed_form else float(spec.grid[0]), t0)
    frames = [q]
    cache: dict = {}
    for k in range(count):
        a, b = ts[k], ts[k + 1]
        if spec.closed_form:
            key = round(b - a, 15)
            if key not in cache:
                cache[key] = _advance(spec, np.eye(spec.n + 1), 0.0, b - a)
            q = q @ cache[key]
        else:
            q = _advance(spec, q, a, b)
        q = qr_chart(q)
        frames.append(q)
    return ts, frames


def gamma_mp(spec: ConvexCurveSpec, t, q0=None, dps: int = 60) -> np.ndarray:
    """High precision ``Gamma(t)`` as an object array of mpf."""
    with mpmath.workdps(dps):
        t = _mpf(t)
        base = mp_matrix(_base(spec, q0) if q0 is not None or spec.base is not None else np.eye(spec.n + 1))
        start = mpmath.mpf(0) if spec.closed_form else _mpf(spec.grid[0])

        def gen(coeffs):
            out = np.empty((spec.n + 1, spec.n + 1), dtype=object)
            for i in range(spec.n + 1):
                for j in range(spec.n + 1):
                    out[i, j] = mpmath.mpf(0)
            for j, k in enumerate(coeffs, start=1):
                kk = mpmath.sqrt(j * (spec.n + 1 - j)) if spec.closed_form == "h" else mp_matrix(
                    np.array([[k]], dtype=object)
                )[0, 0]
                out[j, j - 1] += kk
                out[j - 1, j] -= kk
            return out

        if spec.closed_form:
            return mat_mul(base, mp_expm(gen(spec.interval_coeffs(0)) * (t - start)))
        cur = base
        lo, hi = (start, t) if t >= start else (t, start)
        for a, b, ks in spec.pieces(float(lo), float(hi)):
            a = _mpf(a) if a != float(lo) else lo
            b = _mpf(b) if b != float(hi) else hi
            cur = mat_mul(cur, mp_expm(gen(ks) * (b - a)))
        return cur


# ---------------------------------------------------------------- minors


def m_functions(q: np.ndarray) -> list:
    """Southwest j x j determinants, j = 1..n."""
    size = q.shape[0]
    out = []
    for j in range(1, size):
        block = q[size - j :, :j]
        if q.dtype == object:
            out.append(det(block))
        else:
            out.append(float(np.linalg.det(block)))
    return out


def mult_vector_exact(z0: SpinWord) -> tuple[int, ...]:
    """Orders of vanishing at t = 0 of the southwest minors of ``Pi(z0) exp(t n)``."""
    n = z0.n
    p = pi_so(z0).to_array(exact=True)
    g = mat_mul(p, nilpotent_exp(nilpotent_n(n), Poly.t()))
    return tuple(root_multiplicity_at_zero(_as_poly(m)) for m in m_functions(g))


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def mult_vector_numeric(offsets: Sequence, values: Sequence[Sequence]) -> tuple[tuple[int, ...], float]:
    """Least-squares slopes of ``log|m_j|`` against ``log|t - t0|``.

    ``values[i][j]`` is ``m_{j+1}`` at ``t0 + offsets[i]``.  Returns the
    rounded slopes and the largest distance of a slope from its rounding.
    """
    if not offsets or any(h == 0 for h in offsets):
        raise DomainError("offsets must be nonzero")
    xs = np.array([float(mpmath.log(abs(_mpf(h)))) for h in offsets])
    mults, resid = [], 0.0
    for j in range(len(values[0])):
        col = [values[i][j] for i in range(len(offsets))]
        if any(v == 0 for v in col):
            raise DomainError(f"m_{j + 1} vanishes at a sample; cannot fit")
        ys = np.array([float(mpmath.log(abs(_mpf(v)))) for v in col])
        slope = float(np.polyfit(xs, ys, 1)[0])
        k = max(0, int(round(slope)))
        mults.append(k)
        resid = max(resid, abs(slope - k))
    return tuple(mults), resid


# ---------------------------------------------------------------- itinerary


def _phi_mp(spec, q0, t, dps):
    with mpmath.workdps(dps):
        vals = m_functions(gamma_mp(spec, t, q0, dps))
        return min(abs(v) for v in vals)


def _golden_min(f, a, b, dps: int, width: float = 1e-25, max_iter: int = 200):
    with mpmath.workdps(dps):
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        g = (mpmath.sqrt(5) - 1) / 2
        c = b - g * (b - a)
        d = a + g * (b - a)
        fc, fd = f(c), f(d)
        for _ in range(max_iter):
            if b - a < width:
                break
            if fc <= fd:
                b, d, fd = d, c, fc
                c = b - g * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + g * (b - a)
                fd = f(d)
        return (a + b) / 2


def classify_point(q: np.ndarray, tol: float = 1e-12) -> SignedPermMatrix:
    return signed_bruhat_decompose(q, tol).P


def itinerary(
    spec: ConvexCurveSpec,
    t0,
    t1,
    eps_detect: float = DETECT_EPS,
    step: float | None = None,
    q0: np.ndarray | None = None,
    dps: int = 60,
) -> list[ItineraryEvent]:
    """Times in [t0, t1] where the curve leaves the open cell, with their cells.

    Grid scan flags small or sign-changing minors; flagged clusters are
    refined by golden-section search on ``min_j |m_j|`` in high precision,
    classified by decomposition, and cross-checked against the multiplicity
    vector of the found permutation.
    """
    ts, frames = integrate_lc_numeric(spec, q0, t0, t1, step)
    h = ts[1] - ts[0]
    ms = np.array([m_functions(f) for f in frames])
    flagged = set(np.nonzero(np.any(np.abs(ms) < eps_detect, axis=1))[0].tolist())
    sign_change = np.nonzero(np.any(np.sign(ms[1:]) != np.sign(ms[:-1]), axis=1))[0]
    for i in sign_change.tolist():
        flagged.update((i, i + 1))
    clusters: list[list[int]] = []
    for i in sorted(flagged):
        if clusters and i - clusters[-1][-1] <= 10:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    n = spec.n
    eta = Permutation.top(n)
    events = []
    for cl in clusters:
        a = max(float(t0), ts[cl[0]] - h)
        b = min(float(t1), ts[cl[-1]] + h)
        tstar = _golden_min(lambda t: _phi_mp(spec, q0, t, dps), a, b, dps)
        with mpmath.workdps(dps):
            g = gamma_mp(spec, tstar, q0, dps)
            try:
                p = classify_point(g)
            except DegeneracyError as exc:
                raise DegeneracyError(f"unresolved event in [{a}, {b}]: {exc}") from exc
            if p.sigma == eta:
                continue
            sigma = eta * p.sigma
            offsets = [mpmath.mpf(10) ** (-4 + k / 8) for k in range(9)]
            offsets = offsets + [-o for o in offsets]
            if spec.closed_form is None:
                lo, hi = _mpf(spec.grid[0]), _mpf(spec.grid[-1])
                offsets = [o for o in offsets if lo <= tstar + o <= hi]
            values = [m_functions(gamma_mp(spec, tstar + o, q0, dps)) for o in offsets]
        mults, resid = mult_vector_numeric(offsets, values)
        if resid > FIT_RESIDUAL_LIMIT or mults != mult_vector(sigma):
            raise DegeneracyError(
                f"event near t = {float(tstar)}: decomposition gives {sigma} with multiplicities "
                f"{mult_vector(sigma)}, fit gives {mults} (residual {resid:.3f})"
            )
        events.append(ItineraryEvent(float(tstar), sigma, p))
    return events
