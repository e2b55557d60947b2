"""Signed Bruhat decomposition and cell coordinates on SO(n+1).

Every invertible M factors as ``U1 P U2`` with U1, U2 upper triangular with
positive diagonal and P a signed permutation matrix; P is unique and names
the signed Bruhat cell.  The routines accept float arrays and also
``object`` arrays of ``mpmath.mpf`` when more precision is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coxeter import Permutation, inv, inversions
from .errors import DegeneracyError, DomainError, NotInCellError, RankMismatchError
from .linalg import (
    DEFAULT_TOL,
    SignedPermMatrix,
    lu_chart,
    mat_mul,
    qr_chart,
    to_float,
)
from .spinword import (
    QuatElem,
    SpinWord,
    adv_label,
    chop_label,
    lift_signed_perm,
    pi_so,
    word_product,
)

__all__ = [
    "SignedPermMatrix",
    "Decomposition",
    "SliceCoords",
    "signed_bruhat_decompose",
    "cell_of",
    "unsigned_cell_of",
    "alpha",
    "phi",
    "psi",
    "theta_j",
    "projective_act",
    "slice_coords",
    "slice_free_positions",
    "slice_point",
    "quat_matrix",
    "freesign_cell",
    "adv_point",
    "chop_point",
    "connect_through",
]


@dataclass(frozen=True)
class Decomposition:
    U1: np.ndarray
    P: SignedPermMatrix
    U2: np.ndarray
    residual: float


@dataclass(frozen=True)
class SliceCoords:
    u: tuple[float, ...]
    x: tuple[float, ...]


def _abs(x):
    return abs(x)


def signed_bruhat_decompose(m: np.ndarray, tol: float = DEFAULT_TOL) -> Decomposition:
    """Factor ``m = U1 P U2``.

    Columns are processed left to right; the pivot is the bottom-most unused
    row whose entry counts as nonzero.  An entry is zero when
    ``|e| <= tol * scale`` and nonzero when ``|e| >= 10 * tol * scale``;
    anything in between raises :class:`DegeneracyError`.
    """
    a = np.array(m, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise RankMismatchError("matrix must be square")
    size = a.shape[0]
    mp = a.dtype == object
    if not mp:
        a = a.astype(float)
    one = a[0, 0] * 0 + 1
    zero = a[0, 0] * 0
    u1 = np.array([[one if i == j else zero for j in range(size)] for i in range(size)], dtype=a.dtype)
    u2 = u1.copy()
    scale = max(_abs(v) for v in a.flat)
    if scale == 0:
        raise DomainError("matrix is singular")
    lo, hi = tol * scale, 10 * tol * scale
    used = [False] * size
    pivots = []
    for c in range(size):
        r = None
        for i in range(size - 1, -1, -1):
            if used[i]:
                continue
            e = _abs(a[i, c])
            if e <= lo:
                continue
            if e < hi:
                raise DegeneracyError(
                    f"entry ({i + 1},{c + 1}) is neither zero nor nonzero at tolerance {tol}",
                    row=i + 1,
                    col=c + 1,
                )
            r = i
            break
        if r is None:
            raise DomainError(f"matrix is singular (no pivot in column {c + 1})")
        used[r] = True
        pivots.append(r)
        piv = a[r, c]
        # Clear above: row_i -= f row_r (i < r); record the inverse in U1.
        for i in range(r):
            if a[i, c] == 0:
                continue
            f = a[i, c] / piv
            a[i, :] = a[i, :] - f * a[r, :]
            u1[:, r] = u1[:, r] + f * u1[:, i]
        # Clear right: col_k -= g col_c (k > c); record the inverse in U2.
        for k in range(c + 1, size):
            if a[r, k] == 0:
                continue
            g = a[r, k] / piv
            a[:, k] = a[:, k] - g * a[:, c]
            u2[c, :] = u2[c, :] + g * u2[k, :]
    images = [0] * size
    signs = [0] * size
    for c, r in enumerate(pivots):
        images[r] = c + 1
        v = a[r, c]
        signs[r] = 1 if v > 0 else -1
        u1[:, r] = u1[:, r] * _abs(v)
    p = SignedPermMatrix(Permutation(tuple(images)), tuple(signs))
    parr = p.to_array()
    if mp:
        parr = np.array(parr, dtype=object) * one
        recon = mat_mul(mat_mul(u1, parr), u2)
    else:
        recon = u1 @ parr @ u2
    residual = max(_abs(v) for v in (recon - m).flat)
    return Decomposition(u1, p, u2, float(residual))


def cell_of(q: np.ndarray, tol: float = DEFAULT_TOL) -> SignedPermMatrix:
    return signed_bruhat_decompose(q, tol).P


def unsigned_cell_of(q: np.ndarray, tol: float = DEFAULT_TOL) -> Permutation:
    return signed_bruhat_decompose(q, tol).P.sigma


# ---------------------------------------------------------------- rotations


def alpha(n: int, j: int, theta: float) -> np.ndarray:
    """``exp(theta a_j)``: rotation in the (j, j+1) plane."""
    if not 1 <= j <= n:
        raise RankMismatchError(f"alpha_{j} does not exist for n = {n}")
    m = np.eye(n + 1)
    c, s = math.cos(theta), math.sin(theta)
    m[j - 1, j - 1] = c
    m[j - 1, j] = -s
    m[j, j - 1] = s
    m[j, j] = c
    return m


def _check_angle(theta: float) -> None:
    if not 0 < theta < math.pi:
        raise DomainError(f"angle {theta} is outside (0, pi)")


def phi(q: np.ndarray, j: int, eps: int, theta: float) -> np.ndarray:
    """``Q alpha_j(eps theta)``."""
    _check_angle(theta)
    if eps not in (1, -1):
        raise DomainError("eps must be +1 or -1")
    return to_float(q) @ alpha(q.shape[0] - 1, j, eps * theta)


def quat_matrix(q: QuatElem) -> np.ndarray:
    """Diagonal image of q: entry i is ``(-1)^(e_{i-1} + e_i)``."""
    e = (0, *q.exps, 0)
    return np.diag([float((-1) ** (e[i] + e[i + 1])) for i in range(q.n + 1)])


def psi(q: QuatElem, word: Sequence[int], signs: Sequence[int], thetas: Sequence[float]) -> np.ndarray:
    """``Pi(q) alpha_{i_1}(eps_1 theta_1) ... alpha_{i_k}(eps_k theta_k)``."""
    if not len(word) == len(signs) == len(thetas):
        raise DomainError("word, signs and angles differ in length")
    n = q.n
    out = quat_matrix(q)
    for j, e, th in zip(word, signs, thetas):
        _check_angle(th)
        if e not in (1, -1):
            raise DomainError("signs must be +-1")
        out = out @ alpha(n, j, e * th)
    return out


def theta_j(m: np.ndarray, j: int, eps: int = 1, tol: float = DEFAULT_TOL) -> float:
    """The angle theta with ``m alpha_j(-eps theta)`` in the cell below.

    The cell of m must have ``sigma_0`` with ``sigma_0 a_j`` one step shorter.
    Read off from row j of the right factor U2: ``atan2(U2[j,j], eps U2[j,j+1])``.
    """
    d = signed_bruhat_decompose(m, tol)
    sigma0 = d.P.sigma
    n = sigma0.n
    if not 1 <= j <= n:
        raise RankMismatchError(f"index {j} out of range")
    lower = sigma0 * Permutation.generator(n, j)
    if inv(lower) != inv(sigma0) - 1:
        raise NotInCellError(f"sigma_0 = {sigma0} does not go down under right multiplication by a_{j}")
    u2 = d.U2
    return math.atan2(float(u2[j - 1, j - 1]), eps * float(u2[j - 1, j]))


def projective_act(u: np.ndarray, q: np.ndarray) -> np.ndarray:
    """``Q^U = qr_chart(U^-1 Q)``."""
    ui = np.linalg.solve(to_float(u), to_float(q))
    return qr_chart(ui)


# ---------------------------------------------------------------- slice coordinates


def slice_free_positions(sigma: Permutation) -> list[tuple[int, int]]:
    """Positions (i, j), 1-based, in reading order, that carry the x coordinates.

    These are the entries of ``Pi(z0) L2`` with ``L2`` in ``Lo_{sigma^-1 eta}``:
    ``j < i^sigma`` and ``j^{sigma^-1} < i``.
    """
    sinv = sigma.inverse()
    size = sigma.size
    return [
        (i, j)
        for i in range(1, size + 1)
        for j in range(1, size + 1)
        if j < sigma(i) and sinv(j) < i
    ]


def _split_lower(l: np.ndarray, sigma: Permutation) -> tuple[np.ndarray, np.ndarray]:
    """``l = L1 L2`` with L1 in ``Lo_{sigma^-1}``, L2 in ``Lo_{sigma^-1 eta}``."""
    size = l.shape[0]
    sinv = sigma.inverse()
    # (r, c), r > c, belongs to L1 iff (c, r) is an inversion of sigma^-1.
    in_l1 = {(c, r) for (c, r) in inversions(sinv)}
    l1 = np.eye(size)
    l2 = np.eye(size)
    for gap in range(1, size):
        for c in range(1, size - gap + 1):
            r = c + gap
            acc = sum(l1[r - 1, k - 1] * l2[k - 1, c - 1] for k in range(c + 1, r))
            val = l[r - 1, c - 1] - acc
            if (c, r) in in_l1:
                l1[r - 1, c - 1] = val
            else:
                l2[r - 1, c - 1] = val
    return l1, l2


def slice_coords(z0: SpinWord, q: np.ndarray, tol: float = DEFAULT_TOL) -> SliceCoords:
    """Coordinates ``(u, x)`` near the cell of z0; ``x = 0`` exactly on the cell."""
    sigma = z0.sigma
    n = sigma.n
    if sigma == Permutation.top(n):
        raise DomainError("slice coordinates need a non-open cell")
    p0 = pi_so(z0).to_array()
    l = lu_chart(p0.T @ to_float(q), tol)
    l1, l2 = _split_lower(l, sigma)
    x = tuple(float(l2[sigma(i) - 1, j - 1]) for i, j in slice_free_positions(sigma))
    u1 = p0 @ l1 @ p0.T
    u = tuple(float(u1[i - 1, j - 1]) for i, j in sorted(inversions(sigma)))
    return SliceCoords(u, x)


def slice_point(z0: SpinWord, u: Sequence[float], x: Sequence[float]) -> np.ndarray:
    """Inverse of :func:`slice_coords`: ``qr_chart(U1 Pi(z0) L2)``."""
    sigma = z0.sigma
    size = sigma.size
    p0 = pi_so(z0).to_array()
    u1 = np.eye(size)
    for (i, j), v in zip(sorted(inversions(sigma)), u):
        u1[i - 1, j - 1] = v
    l2 = np.eye(size)
    for (i, j), v in zip(slice_free_positions(sigma), x):
        l2[sigma(i) - 1, j - 1] = v
    return qr_chart(u1 @ p0 @ l2)


# ---------------------------------------------------------------- labels of points


def freesign_cell(word: Sequence[int], times: Sequence, n: int) -> SpinWord:
    """Predicted cell of ``qr_chart(lam_{i_1}(t_1) ... lam_{i_k}(t_k))`` for nonzero times."""
    if any(t == 0 for t in times):
        raise DomainError("times must be nonzero")
    return word_product(word, [1 if t > 0 else -1 for t in times], n)


def adv_point(q: np.ndarray, tol: float = DEFAULT_TOL) -> SignedPermMatrix:
    return pi_so(adv_label(lift_signed_perm(cell_of(q, tol))))


def chop_point(q: np.ndarray, tol: float = DEFAULT_TOL) -> SignedPermMatrix:
    return pi_so(chop_label(lift_signed_perm(cell_of(q, tol))))


def connect_through(q: np.ndarray, ts: Sequence[float], tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Samples at ``ts`` of a convex arc through an open-cell point, passing Q at t = 1/2.

    With ``Q = U1 Pi(q0) Pi(acute eta) U2`` the arc is
    ``Pi(q0) qr_chart(U1' exp(pi t h))`` where ``U1' = Pi(q0) U1 Pi(q0)``.
    """
    from .linalg import h_skew, matrix_exp_float

    d = signed_bruhat_decompose(q, tol)
    n = d.P.n
    if d.P.sigma != Permutation.top(n):
        raise NotInCellError("point is not in an open cell")
    z = lift_signed_perm(d.P)
    dq = quat_matrix(z.q)
    u1p = dq @ to_float(d.U1) @ dq
    h = h_skew(n)
    return [dq @ qr_chart(u1p @ matrix_exp_float(math.pi * t * h)) for t in ts]

