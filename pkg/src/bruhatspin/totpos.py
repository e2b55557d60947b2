"""Totally positive lower unitriangular matrices and their cells.

``Pos_sigma`` is parametrised by a reduced word ``(i_1..i_k)`` of sigma and
positive times: ``lam_{i_1}(t_1) ... lam_{i_k}(t_k)`` with
``lam_j(t) = I + t l_j``.  Membership is decided by the sign pattern of
minors: the minor on rows ``i0`` and columns ``i1`` is positive on
``Pos_sigma`` exactly when ``i0`` can be walked to ``i1`` by arrows taken
along a subword of a reduced word of sigma, and vanishes otherwise.  The
arrow ``i0 ->_j i1`` replaces ``j+1`` by ``j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .coxeter import (
    Permutation,
    all_permutations,
    canonical_word,
    evaluate_word,
    inv,
    vee,
)
from .errors import DomainError, NotPositiveError, NotReducedError, RankMismatchError
from .linalg import (
    DEFAULT_TOL,
    all_minors,
    identity,
    index_sets,
    inv_lower_unitriangular,
    is_exact,
    mat_mul,
    to_exact,
    to_float,
)

Pair = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class PosParams:
    word: tuple[int, ...]
    times: tuple

    def to_json(self) -> dict:
        from .linalg import format_scalar

        return {"word": list(self.word), "times": [format_scalar(t) for t in self.times]}


@dataclass(frozen=True)
class PosCellLabel:
    sigma: Permutation
    orientation: str  # "positive" or "negative"


# ---------------------------------------------------------------- generators


def lam(n: int, j: int, t) -> np.ndarray:
    """``I + t l_j``; exact when t is an int or Fraction."""
    if not 1 <= j <= n:
        raise RankMismatchError(f"lambda_{j} does not exist for n = {n}")
    exact = isinstance(t, (int, Fraction))
    m = identity(n + 1, exact)
    m[j, j - 1] = Fraction(t) if exact else t
    return m


def pos_from_params(word: Sequence[int], times: Sequence, n: int) -> np.ndarray:
    if len(word) != len(times):
        raise DomainError("word and times differ in length")
    exact = all(isinstance(t, (int, Fraction)) for t in times)
    out = identity(n + 1, exact)
    for j, t in zip(word, times):
        out = _right_lam(out, j, t)
    return out


def _right_lam(m: np.ndarray, j: int, t) -> np.ndarray:
    """``m lam_j(t)``: column j gains t times column j+1."""
    out = m.copy()
    out[:, j - 1] = out[:, j - 1] + t * out[:, j]
    return out


def ababab_transition(t1, t2, t3) -> tuple:
    """Times for ``lam_{i+1} lam_i lam_{i+1}`` equal to ``lam_i(t1) lam_{i+1}(t2) lam_i(t3)``."""
    s = t1 + t3
    if s == 0:
        raise DomainError("t1 + t3 must be nonzero")
    return (t2 * t3 / s, s, t1 * t2 / s)


def random_pos_params(
    sigma: Permutation,
    rng: random.Random | None = None,
    word: Sequence[int] | None = None,
    exact: bool = True,
    lo: float = 0.2,
    hi: float = 3.0,
) -> PosParams:
    rng = rng or random.Random()
    w = tuple(canonical_word(sigma) if word is None else word)
    if exact:
        times = tuple(Fraction(rng.randint(1, 12), rng.randint(1, 6)) for _ in w)
    else:
        times = tuple(rng.uniform(lo, hi) for _ in w)
    return PosParams(w, times)


def random_pos(sigma: Permutation, rng: random.Random | None = None, exact: bool = True) -> np.ndarray:
    p = random_pos_params(sigma, rng, exact=exact)
    return pos_from_params(p.word, p.times, sigma.n)


# ---------------------------------------------------------------- sign patterns


def arrow(s: tuple[int, ...], j: int) -> tuple[int, ...] | None:
    """Target of ``s ->_j``: replace j+1 by j, if allowed."""
    if (j + 1) in s and j not in s:
        return tuple(sorted((x if x != j + 1 else j) for x in s))
    return None


def path_exists(word: Sequence[int], i0: Sequence[int], i1: Sequence[int]) -> bool:
    """Is there a walk from i0 to i1 using arrows along a subword of ``word``?"""
    return tuple(sorted(i1)) in _reachable(tuple(word), tuple(sorted(i0)))


@lru_cache(maxsize=None)
def _reachable(word: tuple[int, ...], i0: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    states = {i0}
    for j in word:
        states |= {t for t in (arrow(s, j) for s in states) if t is not None}
    return frozenset(states)


def positive_pairs(sigma: Permutation) -> frozenset[Pair]:
    """Index pairs whose minor is positive on ``Pos_sigma``."""
    return _positive_pairs(sigma.images)


@lru_cache(maxsize=None)
def _positive_pairs(images: tuple[int, ...]) -> frozenset[Pair]:
    sigma = Permutation(images)
    word = canonical_word(sigma)
    size = sigma.size
    out = set()
    for k in range(1, size + 1):
        for i0 in index_sets(size, k):
            for i1 in _reachable(word, i0):
                out.add((i0, i1))
    return frozenset(out)


@lru_cache(maxsize=None)
def _pattern_table(n: int) -> dict[frozenset[Pair], Permutation]:
    return {positive_pairs(s): s for s in all_permutations(n)}


@lru_cache(maxsize=None)
def _lower_pairs(size: int) -> tuple[Pair, ...]:
    """Pairs (i0, i1) with i0 >= i1 entrywise, ordered by (k, sum, lex)."""
    out = []
    for k in range(1, size + 1):
        sets = index_sets(size, k)
        for i0 in sets:
            for i1 in sets:
                if all(a >= b for a, b in zip(i0, i1)):
                    out.append((i0, i1))
    out.sort(key=lambda p: (len(p[0]), sum(p[0]), p[0], sum(p[1]), p[1]))
    return tuple(out)


def _check_lower_unitriangular(l: np.ndarray, tol: float) -> int:
    if l.ndim != 2 or l.shape[0] != l.shape[1]:
        raise RankMismatchError("matrix must be square")
    size = l.shape[0]
    exact = is_exact(l)
    for i in range(size):
        for j in range(i, size):
            want = 1 if i == j else 0
            v = l[i, j]
            if (v != want) if exact else abs(float(v) - want) > tol:
                raise DomainError("matrix is not lower unitriangular")
    return size - 1


def _classify_minors(l: np.ndarray, tol: float) -> dict[Pair, int]:
    """Sign (-1, 0, 1) of each lower minor."""
    size = l.shape[0]
    exact = is_exact(l)
    if exact:
        mins = _integer_minors(l)
    else:
        mins = all_minors(to_float(l))
    scale = 1.0 if exact else max(1.0, float(np.max(np.abs(to_float(l)))))
    out = {}
    for i0, i1 in _lower_pairs(size):
        v = mins[(i0, i1)]
        if exact:
            out[(i0, i1)] = (v > 0) - (v < 0)
        else:
            thr = tol * scale ** len(i0)
            out[(i0, i1)] = 0 if abs(v) <= thr else (1 if v > 0 else -1)
    return out


def _integer_minors(l: np.ndarray) -> dict:
    """Minors of ``D * l`` for a common denominator D (same signs, integer arithmetic)."""
    import math

    d = 1
    for v in l.flat:
        d = d * Fraction(v).denominator // math.gcd(d, Fraction(v).denominator)
    ints = np.empty(l.shape, dtype=object)
    for idx, v in np.ndenumerate(l):
        f = Fraction(v) * d
        ints[idx] = f.numerator
    return all_minors(ints)


def exact_minors(l: np.ndarray) -> dict:
    """Exact minors (Fractions) of an exact matrix."""
    import math

    d = 1
    for v in l.flat:
        d = d * Fraction(v).denominator // math.gcd(d, Fraction(v).denominator)
    ints = np.empty(l.shape, dtype=object)
    for idx, v in np.ndenumerate(l):
        ints[idx] = (Fraction(v) * d).numerator
    raw = all_minors(ints)
    return {key: Fraction(v, d ** len(key[0])) for key, v in raw.items()}


def pos_violation(l: np.ndarray, sigma: Permutation, tol: float = DEFAULT_TOL) -> Pair | None:
    """First minor whose sign disagrees with ``Pos_sigma``, or None if l is in ``Pos_sigma``."""
    n = _check_lower_unitriangular(l, tol)
    if sigma.n != n:
        raise RankMismatchError(f"matrix of size {n + 1} vs S_{sigma.n + 1}")
    pos = positive_pairs(sigma)
    for pair, sgn in _classify_minors(l, tol).items():
        want = 1 if pair in pos else 0
        if sgn != want:
            return pair
    return None


def in_pos(l: np.ndarray, sigma: Permutation, tol: float = DEFAULT_TOL) -> bool:
    return pos_violation(l, sigma, tol) is None


def in_neg(l: np.ndarray, sigma: Permutation, tol: float = DEFAULT_TOL) -> bool:
    return in_pos(neg_mirror(l), sigma, tol)


def neg_mirror(l: np.ndarray) -> np.ndarray:
    """``X l X`` with ``X = diag(1, -1, 1, ...)``; swaps Pos_sigma and Neg_sigma."""
    out = l.copy()
    size = l.shape[0]
    for i in range(size):
        for j in range(size):
            if (i + j) % 2:
                out[i, j] = -out[i, j]
    return out


def cell_of_closure(l: np.ndarray, tol: float = DEFAULT_TOL) -> PosCellLabel | None:
    """The cell ``Pos_sigma`` (or ``Neg_sigma``) containing l, if l is in a closure."""
    n = _check_lower_unitriangular(l, tol)
    table = _pattern_table(n)
    for orient, mat in (("positive", l), ("negative", neg_mirror(l))):
        signs = _classify_minors(mat, tol)
        if any(v < 0 for v in signs.values()):
            continue
        key = frozenset(p for p, v in signs.items() if v > 0)
        sigma = table.get(key)
        if sigma is not None:
            return PosCellLabel(sigma, orient)
    return None


def ll(l0: np.ndarray, l1: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """``l0 << l1``: ``l0^-1 l1`` is in ``Pos_eta``."""
    d = mat_mul(inv_lower_unitriangular(l0), l1)
    n = l0.shape[0] - 1
    return in_pos(d, Permutation.top(n), tol)


def leq(l0: np.ndarray, l1: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """``l0 <= l1``: ``l0^-1 l1`` is in the closure of ``Pos_eta``."""
    d = mat_mul(inv_lower_unitriangular(l0), l1)
    lab = cell_of_closure(d, tol)
    return lab is not None and lab.orientation == "positive"


def product_cell(s0: Permutation, s1: Permutation) -> Permutation:
    """Cell of ``Pos_s0 * Pos_s1``."""
    return vee(s0, s1)


# ---------------------------------------------------------------- factorisation


@lru_cache(maxsize=None)
def _distinguishing_pair(images: tuple[int, ...], j: int) -> Pair:
    sigma = Permutation(images)
    lower = sigma * Permutation.generator(sigma.n, j)
    pos, pos_lower = positive_pairs(sigma), positive_pairs(lower)
    for pair in _lower_pairs(sigma.size):
        i0, i1 = pair
        if pair in pos and pair not in pos_lower and j in i1 and (j + 1) not in i1:
            return pair
    raise AssertionError("no distinguishing minor")


def pos_factorize(
    l: np.ndarray,
    sigma: Permutation | None = None,
    word: Sequence[int] | None = None,
    tol: float = DEFAULT_TOL,
) -> PosParams:
    """Recover the times of ``l`` in ``Pos_sigma`` along ``word``.

    Letters are peeled from the right: the time of the last letter j is the
    unique t for which a distinguishing minor of ``l lam_j(-t)`` vanishes.
    """
    n = _check_lower_unitriangular(l, tol)
    if sigma is None:
        lab = cell_of_closure(l, tol)
        if lab is None or lab.orientation != "positive":
            raise NotPositiveError("matrix is not in the closure of Pos_eta")
        sigma = lab.sigma
    w = tuple(canonical_word(sigma) if word is None else word)
    if evaluate_word(w, n) != sigma or len(w) != inv(sigma):
        raise NotReducedError(f"{list(w)} is not a reduced word of {sigma}")
    exact = is_exact(l)
    cur = to_exact(l) if exact else to_float(l)
    cur_sigma = sigma
    times = []
    for j in reversed(w):
        i0, i1 = _distinguishing_pair(cur_sigma.images, j)
        i1b = tuple(sorted((x if x != j else j + 1) for x in i1))
        a = _minor(cur, i0, i1)
        b = _minor(cur, i0, i1b)
        if (b == 0) if exact else abs(b) <= tol:
            raise NotPositiveError(f"degenerate minor while peeling a_{j}")
        t = a / b
        if (t <= 0) if exact else t <= tol:
            raise NotPositiveError(f"nonpositive time {t} for a_{j}")
        times.append(t)
        cur = _right_lam(cur, j, -t)
        cur_sigma = cur_sigma * Permutation.generator(n, j)
    if exact:
        if any(v != (1 if i == k else 0) for (i, k), v in np.ndenumerate(cur)):
            raise NotPositiveError("matrix is not in Pos_sigma")
    elif float(np.max(np.abs(cur - np.eye(n + 1)))) > max(tol, 1e-9) * max(1.0, float(np.max(np.abs(to_float(l))))):
        raise NotPositiveError("matrix is not in Pos_sigma")
    return PosParams(w, tuple(reversed(times)))


def _minor(m: np.ndarray, rows, cols):
    from .linalg import det

    return det(m[np.ix_([r - 1 for r in rows], [c - 1 for c in cols])])


# ---------------------------------------------------------------- positive speed


@dataclass(frozen=True)
class SpeedData:
    k: int
    j: int
    i0: tuple[int, ...]
    i1: tuple[int, ...]
    i2: tuple[int, ...]


def positive_speed_data(sigma: Permutation) -> SpeedData:
    """Index data for a minor that leaves zero with positive speed from ``Pos_sigma``.

    Requires sigma != eta.  ``k`` is minimal with ``(n-k+2)^sigma != k``,
    ``j = (n-k+2)^sigma - 1``; ``i0 = {n-k+2..n+1}``,
    ``i1 = {1..k-1, j+1}``, ``i2 = {1..k-1, j}``.
    """
    n = sigma.n
    if sigma == Permutation.top(n):
        raise DomainError("eta has no zero minors to leave")
    k = next(k for k in range(1, n + 2) if sigma(n - k + 2) != k)
    j = sigma(n - k + 2) - 1
    i0 = tuple(range(n - k + 2, n + 2))
    base = tuple(range(1, k))
    return SpeedData(k, j, i0, tuple(sorted(base + (j + 1,))), tuple(sorted(base + (j,))))
