"""Scalars, dense matrices and the triangular charts.

Matrices are numpy arrays.  Exact work uses ``dtype=object`` arrays whose
entries are :class:`fractions.Fraction`, :class:`Root2` or :class:`Poly`;
float work uses ``float64``; high precision uses ``object`` arrays of
``mpmath.mpf``.  Most helpers here only rely on ``+ - * /`` and so accept
all three.

Indices in the public API (index sets, generator numbers) are 1-based.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .coxeter import Permutation, inv_at
from .errors import ChartDomainError, DomainError, RankMismatchError

DEFAULT_TOL = 1e-9


# ---------------------------------------------------------------- scalars


class Root2:
    """Exact element ``(a + b*sqrt2) / 2^m`` of Z[1/sqrt2], normalised with minimal m."""

    __slots__ = ("a", "b", "m")

    def __init__(self, a: int = 0, b: int = 0, m: int = 0):
        if m < 0:
            a, b, m = a * 2 ** (-m), b * 2 ** (-m), 0
        while m > 0 and a % 2 == 0 and b % 2 == 0:
            a //= 2
            b //= 2
            m -= 1
        if a == 0 and b == 0:
            m = 0
        self.a, self.b, self.m = a, b, m

    @classmethod
    def inv_sqrt2(cls) -> "Root2":
        return cls(0, 1, 1)

    def _coerce(self, other) -> "Root2":
        if isinstance(other, Root2):
            return other
        if isinstance(other, int):
            return Root2(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        m = max(self.m, o.m)
        s1, s2 = 1 << (m - self.m), 1 << (m - o.m)
        return Root2(self.a * s1 + o.a * s2, self.b * s1 + o.b * s2, m)

    __radd__ = __add__

    def __neg__(self):
        return Root2(-self.a, -self.b, self.m)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Root2(
            self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a, self.m + o.m
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.a, self.b, self.m) == (o.a, o.b, o.m)

    def __hash__(self):
        return hash((self.a, self.b, self.m))

    def __bool__(self):
        return bool(self.a or self.b)

    def __float__(self):
        return (self.a + self.b * math.sqrt(2)) / 2**self.m

    def __repr__(self):
        return f"Root2({self.a}, {self.b}, {self.m})"

    def __str__(self):
        return format_root2(self)


_ROOT2_RE = re.compile(r"^\(?\s*(-?\d+)\s*([+-]\s*\d+)\s*r2\s*\)?\s*(?:/\s*2\^(\d+))?$")


def format_root2(x: Root2) -> str:
    if x.b == 0 and x.m == 0:
        return str(x.a)
    return f"({x.a}{x.b:+d}r2)/2^{x.m}"


def parse_root2(text: str) -> Root2:
    s = text.strip()
    m = _ROOT2_RE.match(s)
    if m:
        return Root2(int(m.group(1)), int(m.group(2).replace(" ", "")), int(m.group(3) or 0))
    return Root2(int(s))


class Poly:
    """Univariate polynomial in t with Fraction coefficients (lowest degree first)."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, v) -> "Poly":
        return cls((v,))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.c), len(o.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = o.c + (Fraction(0),) * (n - len(o.c))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self.c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        o = self._coerce(other)
        if not o.c:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.c)
        q = [Fraction(0)] * max(len(rem) - len(o.c) + 1, 0)
        lead = o.c[-1]
        for k in range(len(q) - 1, -1, -1):
            coef = rem[k + len(o.c) - 1] / lead
            q[k] = coef
            if coef:
                for i, y in enumerate(o.c):
                    rem[k + i] -= coef * y
        return Poly(q), Poly(rem)

    def __truediv__(self, other):
        """Exact division; raises if the remainder is nonzero."""
        if isinstance(other, (int, Fraction)):
            return Poly(x / other for x in self.c)
        q, r = self.divmod(other)
        if r.c:
            raise DomainError("polynomial division is not exact")
        return q

    def __call__(self, x):
        if isinstance(x, (int, Fraction, Poly)):
            conv = lambda c: c  # noqa: E731
        elif isinstance(x, float):
            conv = float
        else:
            conv = lambda c: type(x)(c.numerator) / c.denominator  # noqa: E731
        acc = 0 * x
        for coef in reversed(self.c):
            acc = acc * x + conv(coef)
        return acc

    def derivative(self) -> "Poly":
        return Poly(k * x for k, x in enumerate(self.c) if k > 0)

    def integral(self) -> "Poly":
        """Antiderivative vanishing at 0."""
        return Poly([0] + [x / (k + 1) for k, x in enumerate(self.c)])

    def shift(self, a) -> "Poly":
        """The polynomial ``t -> p(t + a)``."""
        out = Poly()
        for coef in reversed(self.c):
            out = out * Poly((a, 1)) + coef
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"


def root_multiplicity_at_zero(p: Poly) -> int:
    """Order of vanishing at t = 0; raises for the zero polynomial."""
    if not p.c:
        raise DomainError("the zero polynomial has no finite multiplicity")
    for k, x in enumerate(p.c):
        if x:
            return k
    raise AssertionError


def format_scalar(x) -> str | float:
    """JSON representation: exact scalars as strings, floats as 12 significant digits."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Root2):
        return format_root2(x)
    return round_sig(float(x))


def round_sig(x: float, digits: int = 12) -> float:
    if x == 0 or not math.isfinite(x):
        return 0.0 if x == 0 else x
    return float(f"{x:.{digits}g}")


def parse_scalar(x):
    if isinstance(x, bool):
        raise DomainError("booleans are not scalars")
    if isinstance(x, (int, float)):
        return x
    if isinstance(x, str):
        s = x.strip()
        if "r2" in s:
            return parse_root2(s)
        try:
            return Fraction(s)
        except ValueError:
            return float(s)
    raise DomainError(f"cannot parse scalar {x!r}")


def matrix_to_json(m: np.ndarray) -> dict:
    return {"rows": [[format_scalar(v) for v in row] for row in np.asarray(m)]}


def matrix_from_json(obj) -> np.ndarray:
    rows = obj["rows"] if isinstance(obj, dict) else obj
    vals = [[parse_scalar(v) for v in row] for row in rows]
    if not vals or any(len(r) != len(vals) for r in vals):
        raise RankMismatchError("matrix must be square and nonempty")
    if all(isinstance(v, (int, float)) and not isinstance(v, bool) for r in vals for v in r) and any(
        isinstance(v, float) for r in vals for v in r
    ):
        return np.array(vals, dtype=float)
    if all(isinstance(v, (int, Fraction)) for r in vals for v in r):
        return to_exact(np.array(vals, dtype=object))
    return np.array(vals, dtype=object)


# ---------------------------------------------------------------- matrices


def is_exact(m: np.ndarray) -> bool:
    return m.dtype == object and all(
        isinstance(v, (int, Fraction, Root2, Poly)) for v in m.flat
    )


def to_exact(m) -> np.ndarray:
    a = np.asarray(m, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = v if isinstance(v, (Fraction, Root2, Poly)) else Fraction(v)
    return out


def to_float(m) -> np.ndarray:
    a = np.asarray(m)
    if a.dtype != object:
        return a.astype(float)
    return np.vectorize(float, otypes=[float])(a)


def identity(size: int, exact: bool = True) -> np.ndarray:
    if not exact:
        return np.eye(size)
    m = np.empty((size, size), dtype=object)
    for i in range(size):
        for j in range(size):
            m[i, j] = Fraction(int(i == j))
    return m


def zeros(size: int, exact: bool = True) -> np.ndarray:
    return identity(size, exact) * 0


def gen_l(n: int, j: int, exact: bool = True) -> np.ndarray:
    """``l_j = e_{j+1} e_j^T`` in dimension n+1."""
    _check_gen(n, j)
    m = zeros(n + 1, exact)
    m[j, j - 1] = Fraction(1) if exact else 1.0
    return m


def gen_a(n: int, j: int) -> np.ndarray:
    """``a_j = e_{j+1} e_j^T - e_j e_{j+1}^T`` (float)."""
    _check_gen(n, j)
    m = np.zeros((n + 1, n + 1))
    m[j, j - 1] = 1.0
    m[j - 1, j] = -1.0
    return m


def _check_gen(n: int, j: int) -> None:
    if not 1 <= j <= n:
        raise RankMismatchError(f"generator index {j} out of range 1..{n}")


def nilpotent_n(n: int, exact: bool = True) -> np.ndarray:
    """``sum_j l_j``: ones on the subdiagonal."""
    m = zeros(n + 1, exact)
    for j in range(1, n + 1):
        m[j, j - 1] = Fraction(1) if exact else 1.0
    return m


def h_lower(n: int) -> np.ndarray:
    """``h_L = sum_j sqrt(j(n+1-j)) l_j`` (float)."""
    m = np.zeros((n + 1, n + 1))
    for j in range(1, n + 1):
        m[j, j - 1] = math.sqrt(j * (n + 1 - j))
    return m


def h_skew(n: int) -> np.ndarray:
    hl = h_lower(n)
    return hl - hl.T


def matrix_exp_float(a: np.ndarray) -> np.ndarray:
    """Dense float exponential (Pade scaling and squaring from scipy)."""
    return scipy.linalg.expm(np.asarray(a, dtype=float))


def nilpotent_exp(nmat: np.ndarray, t=1) -> np.ndarray:
    """Exact ``exp(t N)`` for nilpotent N as a finite Taylor sum.

    ``t`` may be a Fraction, an int or a :class:`Poly` (for symbolic t).
    """
    size = nmat.shape[0]
    power = identity(size)
    acc = identity(size)
    fact = 1
    for k in range(1, size + 1):
        power = mat_mul(power, nmat)
        fact *= k
        if not any(bool(v) for v in power.flat):
            return acc
        tk = t**k if not isinstance(t, Poly) else _poly_pow(t, k)
        acc = acc + _scale(power, tk / fact if not isinstance(tk, Poly) else tk * Fraction(1, fact))
    if any(bool(v) for v in mat_mul(power, nmat).flat):
        raise DomainError("matrix is not nilpotent")
    return acc


def _poly_pow(p: Poly, k: int) -> Poly:
    out = Poly.const(1)
    for _ in range(k):
        out = out * p
    return out


def _scale(m: np.ndarray, s) -> np.ndarray:
    out = np.empty(m.shape, dtype=object)
    for idx, v in np.ndenumerate(m):
        out[idx] = s * v if not isinstance(s, Poly) else s * v
    return out


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product that also works for object arrays holding Poly entries."""
    if a.dtype != object and b.dtype != object:
        return a @ b
    n, k = a.shape
    k2, m = b.shape
    if k != k2:
        raise RankMismatchError("inner dimensions differ")
    out = np.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            acc = None
            for l in range(k):
                x, y = a[i, l], b[l, j]
                if _is_zero(x) or _is_zero(y):
                    continue
                term = x * y
                acc = term if acc is None else acc + term
            out[i, j] = acc if acc is not None else _zero_like(a[i, 0])
    return out


def _is_zero(x) -> bool:
    if isinstance(x, (Fraction, int, Root2, Poly)):
        return not x
    return False


def _zero_like(x):
    if isinstance(x, (Fraction, int)):
        return Fraction(0)
    if isinstance(x, Poly):
        return Poly()
    if isinstance(x, Root2):
        return Root2()
    return x * 0


def det(a: np.ndarray):
    """Determinant by fraction-free (Bareiss) elimination.

    Works over any scalar type with exact division by previous pivots,
    which includes Fraction, Poly, float and mpmath numbers.
    """
    m = [list(row) for row in np.asarray(a)]
    size = len(m)
    if size == 0:
        return Fraction(1)
    sign = 1
    prev = None
    for k in range(size - 1):
        if _scalar_is_zero(m[k][k]):
            swap = next((r for r in range(k + 1, size) if not _scalar_is_zero(m[r][k])), None)
            if swap is None:
                return _zero_like(m[0][0])
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                val = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = val if prev is None else val / prev
        prev = pivot
    res = m[size - 1][size - 1]
    return res if sign == 1 else -res


def _scalar_is_zero(x) -> bool:
    if isinstance(x, (Fraction, int, Root2, Poly)):
        return not x
    return x == 0


def minor(a: np.ndarray, rows: Sequence[int], cols: Sequence[int]):
    """Minor on 1-based row and column index sets."""
    r = [i - 1 for i in rows]
    c = [j - 1 for j in cols]
    return det(np.asarray(a)[np.ix_(r, c)])


@lru_cache(maxsize=None)
def index_sets(size: int, k: int) -> tuple[tuple[int, ...], ...]:
    """k-subsets of {1..size} ordered by (sum, lexicographic)."""
    sets = itertools.combinations(range(1, size + 1), k)
    return tuple(sorted(sets, key=lambda s: (sum(s), s)))


def exterior_power(a: np.ndarray, k: int) -> tuple[np.ndarray, tuple[tuple[int, ...], ...]]:
    """``Lambda^k(a)`` in the (sum, lex) basis of k-subsets."""
    size = a.shape[0]
    basis = index_sets(size, k)
    mins = all_minors(a)
    out = np.empty((len(basis), len(basis)), dtype=object if a.dtype == object else float)
    for p, r in enumerate(basis):
        for q, c in enumerate(basis):
            out[p, q] = mins[(r, c)]
    return out, basis


def all_minors(a: np.ndarray) -> dict[tuple[tuple[int, ...], tuple[int, ...]], object]:
    """Every minor of a square matrix by memoised Laplace expansion.

    Keys are pairs of sorted 1-based index tuples of equal length >= 1.
    """
    arr = np.asarray(a)
    size = arr.shape[0]
    entries = [[arr[i, j] for j in range(size)] for i in range(size)]
    out: dict = {}
    zero = _zero_like(entries[0][0])
    for r in range(size):
        for c in range(size):
            out[((r + 1,), (c + 1,))] = entries[r][c]
    for k in range(2, size + 1):
        for rows in itertools.combinations(range(1, size + 1), k):
            for cols in itertools.combinations(range(1, size + 1), k):
                last = cols[-1]
                sub_cols = cols[:-1]
                acc = zero
                for p, r in enumerate(rows):
                    x = entries[r - 1][last - 1]
                    if _scalar_is_zero(x):
                        continue
                    sub = out[(rows[:p] + rows[p + 1 :], sub_cols)]
                    if _scalar_is_zero(sub):
                        continue
                    term = x * sub
                    # sign of the (p, k-1) cofactor
                    acc = acc + term if (p + k - 1) % 2 == 0 else acc - term
                out[(rows, cols)] = acc
    return out


def transpose(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).T.copy()


def inv_lower_unitriangular(l: np.ndarray) -> np.ndarray:
    """Inverse of a lower unitriangular matrix by forward substitution."""
    size = l.shape[0]
    exact = l.dtype == object
    out = identity(size, exact) if exact else np.eye(size)
    if exact and not is_exact(l):
        out = np.array([[l[0, 0] * 0 + (1 if i == j else 0) for j in range(size)] for i in range(size)], dtype=object)
    for i in range(size):
        for j in range(i - 1, -1, -1):
            acc = out[i, j] * 0
            for k in range(j, i):
                acc = acc + l[i, k] * out[k, j]
            out[i, j] = -acc
    return out


def inv_upper_unitriangular(u: np.ndarray) -> np.ndarray:
    return inv_lower_unitriangular(u.T.copy()).T.copy()


def lu_chart(q: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Lower unitriangular L with ``q = L U`` and U upper with positive diagonal.

    Raises :class:`ChartDomainError` naming the first northwest minor that is
    not positive (relative to ``tol * max|q|`` for inexact input).
    """
    a = np.array(q, dtype=q.dtype, copy=True)
    size = a.shape[0]
    exact = is_exact(a)
    scale = 0 if exact else max(abs(v) for v in a.flat)
    thresh = 0 if exact else tol * scale
    l = identity(size, exact) if (exact or a.dtype != object) else _mp_identity(a)
    for k in range(size):
        piv = a[k, k]
        if piv <= thresh:
            raise ChartDomainError(
                f"northwest minor of size {k + 1} is not positive", index=k + 1
            )
        for i in range(k + 1, size):
            f = a[i, k] / piv
            l[i, k] = f
            for j in range(k, size):
                a[i, j] = a[i, j] - f * a[k, j]
    return l


def lu_factor(q: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    l = lu_chart(q, tol)
    if q.dtype == object:
        u = mat_mul(inv_lower_unitriangular(l), q)
    else:
        u = np.linalg.solve(l, q)
    return l, u


def _mp_identity(a: np.ndarray) -> np.ndarray:
    size = a.shape[0]
    one = a[0, 0] * 0 + 1
    zero = a[0, 0] * 0
    return np.array([[one if i == j else zero for j in range(size)] for i in range(size)], dtype=object)


def qr_chart(l: np.ndarray) -> np.ndarray:
    """Orthogonal factor Q of ``l = Q R`` with R upper triangular, positive diagonal."""
    if l.dtype == object and not is_exact(l):
        return _mp_qr(l)
    a = to_float(l)
    q, r = np.linalg.qr(a)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def qr_factor(l: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q = qr_chart(l)
    if q.dtype == object:
        return q, mat_mul(q.T.copy(), l)
    return q, q.T @ to_float(l)


def _mp_qr(a: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt (twice) in whatever precision the entries carry."""
    import mpmath

    size = a.shape[0]
    cols = [[a[i, j] for i in range(size)] for j in range(size)]
    qs: list[list] = []
    for v in cols:
        w = list(v)
        for _ in range(2):
            for u in qs:
                d = sum(x * y for x, y in zip(u, w))
                w = [x - d * y for x, y in zip(w, u)]
        nrm = mpmath.sqrt(sum(x * x for x in w))
        if nrm == 0:
            raise DomainError("matrix is singular")
        qs.append([x / nrm for x in w])
    out = np.empty((size, size), dtype=object)
    for j, u in enumerate(qs):
        for i in range(size):
            out[i, j] = u[i]
    return out


def mp_matrix(a, dps: int | None = None) -> np.ndarray:
    """Convert to an object array of mpmath numbers (current precision)."""
    import mpmath

    arr = np.asarray(a)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        if isinstance(v, Fraction):
            out[idx] = mpmath.mpf(v.numerator) / v.denominator
        elif isinstance(v, Root2):
            out[idx] = (v.a + v.b * mpmath.sqrt(2)) / mpmath.mpf(2) ** v.m
        else:
            out[idx] = mpmath.mpf(v)
    return out


def mp_expm(a: np.ndarray) -> np.ndarray:
    import mpmath

    m = mpmath.expm(mpmath.matrix(a.tolist()))
    size = a.shape[0]
    out = np.empty((size, size), dtype=object)
    for i in range(size):
        for j in range(size):
            out[i, j] = m[i, j]
    return out


# ---------------------------------------------------------------- signed permutation matrices


@dataclass(frozen=True)
class SignedPermMatrix:
    """Matrix with ``e_i^T M = signs[i] e_{i^sigma}^T``."""

    sigma: Permutation
    signs: tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(x) for x in self.signs)
        object.__setattr__(self, "signs", s)
        if len(s) != self.sigma.size or any(x not in (1, -1) for x in s):
            raise DomainError("signs must be +-1, one per row")

    @property
    def n(self) -> int:
        return self.sigma.n

    def to_array(self, exact: bool = False) -> np.ndarray:
        m = zeros(self.sigma.size, exact) if exact else np.zeros((self.sigma.size,) * 2)
        for i, (v, s) in enumerate(zip(self.sigma.images, self.signs)):
            m[i, v - 1] = Fraction(s) if exact else float(s)
        return m

    def det(self) -> int:
        from .coxeter import inv

        d = (-1) ** inv(self.sigma)
        for s in self.signs:
            d *= s
        return d

    def __mul__(self, other: "SignedPermMatrix") -> "SignedPermMatrix":
        # row i of self is s_i e_{i^sigma}; row i^sigma of other is t e_{...}
        sig = self.sigma * other.sigma
        signs = tuple(
            self.signs[i] * other.signs[self.sigma.images[i] - 1] for i in range(self.sigma.size)
        )
        return SignedPermMatrix(sig, signs)

    def transpose(self) -> "SignedPermMatrix":
        inv_sigma = self.sigma.inverse()
        signs = tuple(self.signs[inv_sigma(k) - 1] for k in range(1, self.sigma.size + 1))
        return SignedPermMatrix(inv_sigma, signs)

    @classmethod
    def from_array(cls, m: np.ndarray, tol: float = 1e-9) -> "SignedPermMatrix":
        arr = to_float(m)
        size = arr.shape[0]
        imgs, signs = [], []
        for i in range(size):
            j = int(np.argmax(np.abs(arr[i])))
            if abs(abs(arr[i, j]) - 1) > tol:
                raise DomainError("not a signed permutation matrix")
            imgs.append(j + 1)
            signs.append(1 if arr[i, j] > 0 else -1)
        return cls(Permutation(tuple(imgs)), tuple(signs))

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma.images), "signs": list(self.signs)}

    @classmethod
    def from_json(cls, obj) -> "SignedPermMatrix":
        return cls(Permutation(tuple(obj["sigma"])), tuple(obj["signs"]))


def acute_signs(sigma: Permutation) -> tuple[int, ...]:
    """Row signs ``(-1)^{inv_i(sigma)}`` of the image of the positive lift of sigma."""
    return tuple((-1) ** inv_at(sigma, i) for i in range(1, sigma.size + 1))


def orthogonality_defect(q: np.ndarray) -> float:
    a = to_float(q)
    return float(np.max(np.abs(a.T @ a - np.eye(a.shape[0]))))
