"""Normal forms in the spin lift of the signed permutation group.

Elements are pairs ``(q, sigma)`` standing for ``q * acute(sigma)``, where
``q`` lies in the finite group Quat generated by the ``hat a_j`` and
``acute(sigma)`` is the product of the ``acute a_i`` along any reduced word
of sigma.  Relations used throughout:

* ``hat a_j = (acute a_j)^2``, ``hat a_j^2 = -1``;
* ``hat a_i`` and ``hat a_j`` anticommute when ``|i - j| = 1`` and commute otherwise;
* ``acute a_j hat a_i acute a_j^-1`` is ``hat a_i`` unless ``|i - j| = 1``,
  in which case it is ``hat a_j hat a_i``.

A small Clifford algebra implementation with exact coefficients in
Z[1/sqrt2] serves as an independent model of the same group.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coxeter import (
    Permutation,
    canonical_word,
    inv,
    mult_vector,
)
from .errors import DomainError, RankMismatchError
from .linalg import Root2, SignedPermMatrix, acute_signs


# ---------------------------------------------------------------- Quat


@dataclass(frozen=True, order=True)
class QuatElem:
    """``sign * hat a_1^e_1 ... hat a_n^e_n``."""

    sign: int
    exps: tuple[int, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        e = tuple(int(x) for x in self.exps)
        if any(x not in (0, 1) for x in e):
            raise DomainError("exponents must be 0 or 1")
        object.__setattr__(self, "exps", e)

    @property
    def n(self) -> int:
        return len(self.exps)

    @classmethod
    def one(cls, n: int) -> "QuatElem":
        return cls(1, (0,) * n)

    @classmethod
    def gen(cls, n: int, j: int) -> "QuatElem":
        if not 1 <= j <= n:
            raise RankMismatchError(f"hat a_{j} does not exist for n = {n}")
        e = [0] * n
        e[j - 1] = 1
        return cls(1, tuple(e))

    def __neg__(self) -> "QuatElem":
        return QuatElem(-self.sign, self.exps)

    def __mul__(self, other: "QuatElem") -> "QuatElem":
        return quat_mul(self, other)

    def is_scalar(self) -> bool:
        return not any(self.exps)

    def __str__(self) -> str:
        return format_quat(self, ascii_only=False)


def quat_mul(q1: QuatElem, q2: QuatElem) -> QuatElem:
    if q1.n != q2.n:
        raise RankMismatchError(f"rank mismatch: {q1.n} vs {q2.n}")
    e, d = q1.exps, q2.exps
    n = len(e)
    # Sorting the concatenated word: d_k must pass e_{k+1}; then hat a_k^2 = -1.
    flips = sum(d[k] & e[k + 1] for k in range(n - 1)) + sum(a & b for a, b in zip(e, d))
    sign = q1.sign * q2.sign * (-1 if flips % 2 else 1)
    return QuatElem(sign, tuple(a ^ b for a, b in zip(e, d)))


def quat_inverse(q: QuatElem) -> QuatElem:
    mono = QuatElem(1, q.exps)
    sq = quat_mul(mono, mono)  # = +-1
    return QuatElem(q.sign * sq.sign, q.exps)


def all_quat(n: int) -> list[QuatElem]:
    out = []
    for bits in range(2**n):
        exps = tuple((bits >> k) & 1 for k in range(n))
        out.append(QuatElem(1, exps))
        out.append(QuatElem(-1, exps))
    return out


def format_quat(q: QuatElem, ascii_only: bool = True) -> str:
    letter = "a" if ascii_only else "â"
    body = "".join(f"{letter}{k + 1}" for k, e in enumerate(q.exps) if e)
    return ("+" if q.sign > 0 else "-") + (body or "1")


def _conj_gen_image(n: int, j: int, i: int, inverse: bool) -> QuatElem:
    """Image of ``hat a_i`` under conjugation by ``acute a_j`` (or its inverse)."""
    hi = QuatElem.gen(n, i)
    if abs(i - j) != 1:
        return hi
    hj = QuatElem.gen(n, j)
    # acute a_j hat a_i acute a_j^-1 = hat a_j hat a_i; the inverse conjugation gives hat a_i hat a_j.
    return quat_mul(hi, hj) if inverse else quat_mul(hj, hi)


def conj_acute_gen(j: int, q: QuatElem, inverse: bool = False) -> QuatElem:
    """``acute a_j q acute a_j^-1`` (or ``acute a_j^-1 q acute a_j`` when ``inverse``)."""
    n = q.n
    out = QuatElem(q.sign, (0,) * n)
    for i, e in enumerate(q.exps, start=1):
        if e:
            out = quat_mul(out, _conj_gen_image(n, j, i, inverse))
    return out


def conj_acute(sigma: Permutation, q: QuatElem) -> QuatElem:
    """``acute(sigma) q acute(sigma)^-1``."""
    if sigma.n != q.n:
        raise RankMismatchError("rank mismatch")
    return _conj_acute(sigma.images, q)


@lru_cache(maxsize=500_000)
def _conj_acute(images: tuple[int, ...], q: QuatElem) -> QuatElem:
    for j in reversed(canonical_word(Permutation(images))):
        q = conj_acute_gen(j, q)
    return q


# ---------------------------------------------------------------- SpinWord


@dataclass(frozen=True, order=True)
class SpinWord:
    """Normal form ``q * acute(sigma)`` of an element of the spin lift."""

    q: QuatElem
    sigma: Permutation

    def __post_init__(self):
        if self.q.n != self.sigma.n:
            raise RankMismatchError(f"Quat rank {self.q.n} vs S_{self.sigma.n + 1}")

    @property
    def n(self) -> int:
        return self.sigma.n

    @classmethod
    def identity(cls, n: int) -> "SpinWord":
        return cls(QuatElem.one(n), Permutation.identity(n))

    @classmethod
    def acute_gen(cls, n: int, j: int) -> "SpinWord":
        return cls(QuatElem.one(n), Permutation.generator(n, j))

    @classmethod
    def from_quat(cls, q: QuatElem) -> "SpinWord":
        return cls(q, Permutation.identity(q.n))

    def __mul__(self, other: "SpinWord") -> "SpinWord":
        return spin_mul(self, other)

    def __neg__(self) -> "SpinWord":
        return SpinWord(-self.q, self.sigma)

    def __str__(self) -> str:
        return pretty(self)

    def to_json(self) -> dict:
        return {"sign": self.q.sign, "exps": list(self.q.exps), "sigma": list(self.sigma.images)}

    @classmethod
    def from_json(cls, obj) -> "SpinWord":
        sigma = Permutation(tuple(obj["sigma"]))
        exps = tuple(obj.get("exps", (0,) * sigma.n))
        return cls(QuatElem(int(obj.get("sign", 1)), exps), sigma)


def pretty(z: SpinWord) -> str:
    """E.g. ``-â1â3 · acute[3214]``."""
    return f"{format_quat(z.q, ascii_only=False)} · acute[{z.sigma}]"


def acute(sigma: Permutation) -> SpinWord:
    return SpinWord(QuatElem.one(sigma.n), sigma)


def _times_acute_gen(q: QuatElem, sigma: Permutation, j: int) -> tuple[QuatElem, Permutation]:
    """``q acute(sigma) acute a_j`` in normal form."""
    up = sigma * Permutation.generator(sigma.n, j)
    im = sigma.images
    # sigma a_j swaps values j, j+1: longer iff j precedes j+1.
    if im.index(j) < im.index(j + 1):
        return q, up
    # acute(sigma) acute a_j = acute(up) hat a_j = (acute(up) hat a_j acute(up)^-1) acute(up)
    return quat_mul(q, conj_acute(up, QuatElem.gen(sigma.n, j))), up


def spin_mul(z1: SpinWord, z2: SpinWord) -> SpinWord:
    if z1.n != z2.n:
        raise RankMismatchError(f"rank mismatch: {z1.n} vs {z2.n}")
    q = quat_mul(z1.q, conj_acute(z1.sigma, z2.q))
    sigma = z1.sigma
    for j in canonical_word(z2.sigma):
        q, sigma = _times_acute_gen(q, sigma, j)
    return SpinWord(q, sigma)


def spin_pow_gen(z: SpinWord, j: int, k: int) -> SpinWord:
    """``z * (acute a_j)^k`` for any integer k."""
    n = z.n
    if k >= 0:
        step = SpinWord.acute_gen(n, j)
    else:
        # acute a_j^-1 = hat a_j^-1 acute a_j = -hat a_j acute a_j
        step = SpinWord(-QuatElem.gen(n, j), Permutation.generator(n, j))
    for _ in range(abs(k)):
        z = spin_mul(z, step)
    return z


def spin_inverse(z: SpinWord) -> SpinWord:
    n = z.n
    out = SpinWord.from_quat(quat_inverse(z.q))
    for j in canonical_word(z.sigma):
        out = spin_mul(spin_pow_gen(SpinWord.identity(n), j, -1), out)
    return out


def grave(sigma: Permutation) -> SpinWord:
    """Product of the ``grave a_i = acute a_i^-1`` along a reduced word."""
    z = SpinWord.identity(sigma.n)
    for j in canonical_word(sigma):
        z = spin_pow_gen(z, j, -1)
    return z


def word_product(word, signs, n: int) -> SpinWord:
    """``prod_k (acute a_{i_k})^{eps_k}`` for signs eps_k in {+1, -1}."""
    z = SpinWord.identity(n)
    for j, e in zip(word, signs):
        if e not in (1, -1):
            raise DomainError("signs must be +-1")
        z = spin_pow_gen(z, j, e)
    return z


def hat(sigma: Permutation) -> QuatElem:
    """``acute(sigma) grave(sigma)^-1`` by the odd/even step recursion."""
    return _hat(sigma.images)


@lru_cache(maxsize=100_000)
def _hat(images: tuple[int, ...]) -> QuatElem:
    n = len(images) - 1
    im = list(images)
    word = canonical_word(Permutation(images))
    # Walk sigma down to e: sigma_0 = a_i sigma_1 with i the first letter.
    factors = []
    for i in word:
        delta = im[i - 1] - im[i]
        if delta % 2:
            factors.append(i)
        im[i - 1], im[i] = im[i], im[i - 1]
    q = QuatElem.one(n)
    for i in reversed(factors):
        q = quat_mul(QuatElem.gen(n, i), q)
    return q


def hat_by_product(sigma: Permutation) -> QuatElem:
    """Same as :func:`hat`, computed as ``acute(sigma) acute(sigma^-1)``."""
    z = spin_mul(acute(sigma), acute(sigma.inverse()))
    assert z.sigma == Permutation.identity(sigma.n)
    return z.q


def hat_eta_table(n: int) -> QuatElem:
    """Closed form of ``hat(eta)`` by n mod 8."""
    r = n % 8
    if r in (0, 6):
        return QuatElem.one(n)
    if r in (2, 4):
        return QuatElem(-1, (0,) * n)
    odd = tuple(1 if (k % 2 == 1) else 0 for k in range(1, n + 1))
    return QuatElem(1 if r in (1, 7) else -1, odd)


def hat_exponents(sigma: Permutation) -> tuple[int, ...]:
    """Parities of the multiplicity vector: the exponents of ``hat(sigma)``."""
    return tuple(m % 2 for m in mult_vector(sigma))


# ---------------------------------------------------------------- to SO(n+1)


def pi_so(z: SpinWord) -> SignedPermMatrix:
    """Image in SO(n+1) as a signed permutation matrix."""
    e = (0, *z.q.exps, 0)
    diag = [(-1) ** (e[i] + e[i + 1]) for i in range(z.n + 1)]
    signs = tuple(d * s for d, s in zip(diag, acute_signs(z.sigma)))
    return SignedPermMatrix(z.sigma, signs)


def lift_signed_perm(p: SignedPermMatrix) -> SpinWord:
    """One of the two preimages of ``p`` (the other is its negative)."""
    diag = [a * b for a, b in zip(p.signs, acute_signs(p.sigma))]
    exps = []
    prev = 0
    for d in diag[:-1]:
        cur = prev ^ (1 if d < 0 else 0)
        exps.append(cur)
        prev = cur
    if (-1) ** prev != diag[-1]:
        raise DomainError("signed permutation matrix has determinant -1")
    return SpinWord(QuatElem(1, tuple(exps)), p.sigma)


def all_spin(n: int) -> list[SpinWord]:
    from .coxeter import all_permutations

    return [SpinWord(q, s) for s in all_permutations(n) for q in all_quat(n)]


def random_spin(n: int, rng: random.Random | None = None) -> SpinWord:
    from .coxeter import random_permutation

    rng = rng or random.Random()
    exps = tuple(rng.randint(0, 1) for _ in range(n))
    return SpinWord(QuatElem(rng.choice((1, -1)), exps), random_permutation(n, rng))


# ---------------------------------------------------------------- adv / chop


def adv_label(z0: SpinWord) -> SpinWord:
    """``z0 acute(rho0^-1)`` where ``rho0 = eta sigma0``."""
    n = z0.n
    rho = Permutation.top(n) * z0.sigma
    return spin_mul(z0, acute(rho.inverse()))


def chop_label(z0: SpinWord) -> SpinWord:
    """``z0 acute(rho0)^-1`` where ``rho0 = eta sigma0``."""
    n = z0.n
    rho = Permutation.top(n) * z0.sigma
    return spin_mul(z0, spin_inverse(acute(rho)))


# ---------------------------------------------------------------- Clifford model


_CLIFFORD_MAX_N = 10


@lru_cache(maxsize=None)
def _blade_sign(a: int, b: int) -> int:
    """Sign of ``e_A e_B`` reordered to ``e_{A xor B}`` (all e_i^2 = +1)."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    return -1 if swaps % 2 else 1


@dataclass(frozen=True)
class CliffordElem:
    """Even Clifford element over e_1..e_{n+1}; keys are bitmasks of blades."""

    n: int
    coeffs: tuple[tuple[int, Root2], ...]

    @classmethod
    def from_dict(cls, n: int, d: dict[int, Root2]) -> "CliffordElem":
        if n > _CLIFFORD_MAX_N:
            raise DomainError(f"Clifford model limited to n <= {_CLIFFORD_MAX_N}")
        return cls(n, tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict[int, Root2]:
        return dict(self.coeffs)

    @classmethod
    def scalar(cls, n: int, c: int = 1) -> "CliffordElem":
        return cls.from_dict(n, {0: Root2(c)})

    def __mul__(self, other: "CliffordElem") -> "CliffordElem":
        return clifford_mul(self, other)

    def __neg__(self):
        return CliffordElem(self.n, tuple((k, -v) for k, v in self.coeffs))


def clifford_mul(x: CliffordElem, y: CliffordElem) -> CliffordElem:
    if x.n != y.n:
        raise RankMismatchError("rank mismatch")
    # Bring each factor to a common denominator 2^M so the inner loop is integer only.
    mx = max((v.m for _, v in x.coeffs), default=0)
    my = max((v.m for _, v in y.coeffs), default=0)
    xs = [(k, v.a << (mx - v.m), v.b << (mx - v.m)) for k, v in x.coeffs]
    ys = [(k, v.a << (my - v.m), v.b << (my - v.m)) for k, v in y.coeffs]
    acc: dict[int, list[int]] = {}
    for ka, a1, b1 in xs:
        for kb, a2, b2 in ys:
            ra = a1 * a2 + 2 * b1 * b2
            rb = a1 * b2 + b1 * a2
            if _blade_sign(ka, kb) < 0:
                ra, rb = -ra, -rb
            slot = acc.setdefault(ka ^ kb, [0, 0])
            slot[0] += ra
            slot[1] += rb
    m = mx + my
    return CliffordElem.from_dict(x.n, {k: Root2(a, b, m) for k, (a, b) in acc.items()})


def clifford_hat_gen(n: int, j: int) -> CliffordElem:
    """``hat a_j = e_{j+1} e_j = -e_j e_{j+1}``."""
    blade = (1 << (j - 1)) | (1 << j)
    return CliffordElem.from_dict(n, {blade: Root2(-1)})


def clifford_acute_gen(n: int, j: int) -> CliffordElem:
    """``acute a_j = (1 + hat a_j) / sqrt 2``."""
    blade = (1 << (j - 1)) | (1 << j)
    r = Root2.inv_sqrt2()
    return CliffordElem.from_dict(n, {0: r, blade: -r})


def clifford_of(z: SpinWord) -> CliffordElem:
    n = z.n
    out = CliffordElem.scalar(n, z.q.sign)
    for j, e in enumerate(z.q.exps, start=1):
        if e:
            out = clifford_mul(out, clifford_hat_gen(n, j))
    for j in canonical_word(z.sigma):
        out = clifford_mul(out, clifford_acute_gen(n, j))
    return out


def clifford_to_so(x: CliffordElem) -> np.ndarray:
    """Matrix of ``v -> x^-1 v x`` on vectors (float), for cross-checks."""
    n = x.n
    size = n + 1
    rev = CliffordElem.from_dict(
        n, {k: (v if (bin(k).count("1") // 2) % 2 == 0 else -v) for k, v in x.coeffs}
    )
    m = np.zeros((size, size))
    for i in range(size):
        vec = CliffordElem(n, ((1 << i, Root2(1)),))
        img = clifford_mul(clifford_mul(rev, vec), x)
        for k, v in img.coeffs:
            if bin(k).count("1") == 1:
                m[i, k.bit_length() - 1] = float(v)
    return m
