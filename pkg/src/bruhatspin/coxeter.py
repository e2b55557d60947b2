"""Permutations of S_{n+1} with the right action convention.

A permutation is stored by its one-line notation ``(1^s, 2^s, ..., (n+1)^s)``.
Products act on the right: ``k^(s t) = (k^s)^t``.  With this convention
``a_i * s`` swaps the *positions* i, i+1 of the one-line notation and
``s * a_i`` swaps the *values* i, i+1.

Besides the basic Coxeter combinatorics (inversions, multiplicity vectors,
reduced words, Bruhat and weak orders, the join ``vee``) this module builds
Elnitsky polygon tilings and renders them as SVG or ASCII.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import NotAPermutationError, NotReducedError, RankMismatchError

Word = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {1..n+1} given by ``images[k-1] = k^sigma``."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise NotAPermutationError(f"not a bijection of 1..{len(imgs)}: {list(imgs)}")

    @property
    def n(self) -> int:
        """Rank: the permutation lives in S_{n+1}."""
        return len(self.images) - 1

    @property
    def size(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 2)))

    @classmethod
    def top(cls, n: int) -> "Permutation":
        """The longest element eta: j -> n+2-j."""
        return cls(tuple(range(n + 1, 0, -1)))

    @classmethod
    def generator(cls, n: int, i: int) -> "Permutation":
        if not 1 <= i <= n:
            raise RankMismatchError(f"generator a_{i} does not exist in S_{n + 1}")
        imgs = list(range(1, n + 2))
        imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
        return cls(tuple(imgs))

    @classmethod
    def parse(cls, text: str | Sequence[int]) -> "Permutation":
        """Accept ``"7245136"``, ``"10,2,3,..."`` or a sequence of ints."""
        if isinstance(text, str):
            s = text.strip().strip("[]")
            if "," in s or " " in s:
                parts = [p for p in s.replace(",", " ").split() if p]
                return cls(tuple(int(p) for p in parts))
            return cls(tuple(int(c) for c in s))
        return cls(tuple(text))

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def __str__(self) -> str:
        if self.size <= 9:
            return "".join(str(v) for v in self.images)
        return ",".join(str(v) for v in self.images)

    def __repr__(self) -> str:
        return f"Permutation([{str(self)}])"


def _check_same_rank(*perms: Permutation) -> int:
    n = perms[0].n
    for p in perms[1:]:
        if p.n != n:
            raise RankMismatchError(f"rank mismatch: S_{n + 1} vs S_{p.n + 1}")
    return n


def compose(s1: Permutation, s2: Permutation) -> Permutation:
    """Right action product: ``k^(s1 s2) = (k^s1)^s2``."""
    _check_same_rank(s1, s2)
    return Permutation(tuple(s2.images[v - 1] for v in s1.images))


def perm_matrix(sigma: Permutation):
    """Permutation matrix with ``e_k^T P = e_{k^sigma}^T`` (integer numpy array)."""
    import numpy as np

    m = np.zeros((sigma.size, sigma.size), dtype=int)
    for k, v in enumerate(sigma.images):
        m[k, v - 1] = 1
    return m


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in itertools.permutations(range(1, n + 2)):
        yield Permutation(p)


def random_permutation(n: int, rng: random.Random | None = None) -> Permutation:
    rng = rng or random.Random()
    imgs = list(range(1, n + 2))
    rng.shuffle(imgs)
    return Permutation(tuple(imgs))


# ---------------------------------------------------------------- inversions


def inversions(sigma: Permutation) -> frozenset[tuple[int, int]]:
    """Pairs ``(i, j)`` with ``i < j`` and ``i^sigma > j^sigma``."""
    im = sigma.images
    m = len(im)
    return frozenset(
        (i + 1, j + 1) for i in range(m) for j in range(i + 1, m) if im[i] > im[j]
    )


def inv(sigma: Permutation) -> int:
    im = sigma.images
    m = len(im)
    return sum(1 for i in range(m) for j in range(i + 1, m) if im[i] > im[j])


def inv_at(sigma: Permutation, i: int) -> int:
    """``inv_i``: number of j > i with ``j^sigma < i^sigma``."""
    im = sigma.images
    v = im[i - 1]
    return sum(1 for w in im[i:] if w < v)


def inv_vector(sigma: Permutation) -> tuple[int, ...]:
    return tuple(inv_at(sigma, i) for i in range(1, sigma.size + 1))


def mult_vector(sigma: Permutation) -> tuple[int, ...]:
    """``mult_k = sum_{j<=k} (j^sigma - j)`` for k = 1..n."""
    out = []
    acc = 0
    for k in range(1, sigma.n + 1):
        acc += sigma(k) - k
        out.append(acc)
    return tuple(out)


def perm_from_mult(mult: Sequence[int]) -> Permutation:
    """Invert :func:`mult_vector`: ``k^sigma = k + mult_k - mult_{k-1}``."""
    m = [0, *mult, 0]
    imgs = tuple(k + m[k] - m[k - 1] for k in range(1, len(m)))
    return Permutation(imgs)


# ---------------------------------------------------------------- words


def evaluate_word(word: Iterable[int], n: int) -> Permutation:
    """Product ``a_{i1} a_{i2} ... a_{ik}`` in S_{n+1}."""
    imgs = list(range(1, n + 2))
    # Right multiplication by a_i swaps the values i and i+1.
    for i in word:
        if not 1 <= i <= n:
            raise RankMismatchError(f"letter {i} out of range for S_{n + 1}")
        for k, v in enumerate(imgs):
            if v == i:
                imgs[k] = i + 1
            elif v == i + 1:
                imgs[k] = i
    return Permutation(tuple(imgs))


def is_reduced(word: Sequence[int], n: int) -> bool:
    return len(word) == inv(evaluate_word(word, n))


def canonical_word(sigma: Permutation) -> Word:
    """Lexicographically smallest reduced word.

    Repeatedly peel the smallest i with ``i^sigma > (i+1)^sigma`` off the
    left: ``sigma = a_i (a_i sigma)`` with ``a_i sigma`` shorter.
    """
    return _canonical_word(sigma.images)


@lru_cache(maxsize=200_000)
def _canonical_word(images: tuple[int, ...]) -> Word:
    im = list(images)
    out = []
    while True:
        for i in range(len(im) - 1):
            if im[i] > im[i + 1]:
                out.append(i + 1)
                im[i], im[i + 1] = im[i + 1], im[i]
                break
        else:
            return tuple(out)


def reduced_words(sigma: Permutation) -> list[Word]:
    """All reduced words, sorted lexicographically (small n only)."""
    im = sigma.images

    @lru_cache(maxsize=None)
    def rec(images: tuple[int, ...]) -> tuple[Word, ...]:
        lst = list(images)
        res: list[Word] = []
        for i in range(len(lst) - 1):
            if lst[i] > lst[i + 1]:
                nxt = lst.copy()
                nxt[i], nxt[i + 1] = nxt[i + 1], nxt[i]
                for w in rec(tuple(nxt)):
                    res.append((i + 1, *w))
        if not res:
            return ((),)
        return tuple(res)

    return sorted(rec(im))


def random_reduced_word(sigma: Permutation, rng: random.Random | None = None) -> Word:
    """A reduced word of ``sigma`` chosen by random left descents."""
    rng = rng or random.Random()
    im = list(sigma.images)
    out = []
    while True:
        desc = [i for i in range(len(im) - 1) if im[i] > im[i + 1]]
        if not desc:
            return tuple(out)
        i = rng.choice(desc)
        out.append(i + 1)
        im[i], im[i + 1] = im[i + 1], im[i]


# ---------------------------------------------------------------- orders


def _rank_table(sigma: Permutation) -> list[list[int]]:
    # r[k][i] = #{j <= k : j^sigma >= i}
    m = sigma.size
    table = [[0] * (m + 2) for _ in range(m + 1)]
    for k in range(1, m + 1):
        v = sigma(k)
        row, prev = table[k], table[k - 1]
        for i in range(1, m + 1):
            row[i] = prev[i] + (1 if v >= i else 0)
    return table


def bruhat_leq(s0: Permutation, s1: Permutation) -> bool:
    """Strong Bruhat order by rank dominance of the one-line notation."""
    _check_same_rank(s0, s1)
    t0, t1 = _rank_table(s0), _rank_table(s1)
    m = s0.size
    return all(t0[k][i] <= t1[k][i] for k in range(1, m + 1) for i in range(1, m + 1))


def bruhat_leq_subword(s0: Permutation, s1: Permutation) -> bool:
    """Bruhat order via subexpressions of a reduced word of ``s1`` (brute force)."""
    n = _check_same_rank(s0, s1)
    w = canonical_word(s1)
    reach = {Permutation.identity(n)}
    for i in w:
        g = Permutation.generator(n, i)
        reach |= {p * g for p in reach}
    return s0 in reach


def covers_below(sigma: Permutation) -> list[Permutation]:
    """All ``s0`` with ``s0 <. sigma`` (one fewer inversion, differ by a transposition)."""
    im = sigma.images
    m = len(im)
    out = []
    for p in range(m):
        for q in range(p + 1, m):
            hi, lo = im[p], im[q]
            if hi < lo:
                continue
            if any(lo < im[r] < hi for r in range(p + 1, q)):
                continue
            nxt = list(im)
            nxt[p], nxt[q] = lo, hi
            out.append(Permutation(tuple(nxt)))
    return sorted(out)


def covers_above(sigma: Permutation) -> list[Permutation]:
    im = sigma.images
    m = len(im)
    out = []
    for p in range(m):
        for q in range(p + 1, m):
            lo, hi = im[p], im[q]
            if lo > hi:
                continue
            if any(lo < im[r] < hi for r in range(p + 1, q)):
                continue
            nxt = list(im)
            nxt[p], nxt[q] = hi, lo
            out.append(Permutation(tuple(nxt)))
    return sorted(out)


def is_cover(s0: Permutation, s1: Permutation) -> bool:
    _check_same_rank(s0, s1)
    return s0 in covers_below(s1)


def weak_leq_left(s1: Permutation, s0: Permutation) -> bool:
    """``s1 <=_L s0``: ``Inv(s1^-1)`` is contained in ``Inv(s0^-1)``."""
    _check_same_rank(s0, s1)
    return inversions(s1.inverse()) <= inversions(s0.inverse())


def weak_leq_right(s1: Permutation, s0: Permutation) -> bool:
    """``s1 <=_R s0``: ``Inv(s1)`` is contained in ``Inv(s0)``."""
    _check_same_rank(s0, s1)
    return inversions(s1) <= inversions(s0)


def vee(s0: Permutation, s1: Permutation) -> Permutation:
    """The join used for products of positive cells.

    ``s0 v a_i`` is ``s0`` when ``s0 a_i`` is below ``s0`` and ``s0 a_i``
    otherwise; a general ``s1`` is absorbed letter by letter along a
    reduced word.  Not commutative.
    """
    n = _check_same_rank(s0, s1)
    res = list(s0.images)
    for i in canonical_word(s1):
        # s a_i swaps the values i, i+1; it goes up iff i appears before i+1.
        pi = res.index(i)
        pj = res.index(i + 1)
        if pi < pj:
            res[pi], res[pj] = i + 1, i
    del n
    return Permutation(tuple(res))


# ---------------------------------------------------------------- Elnitsky tilings


@dataclass(frozen=True)
class Tile:
    """Parallelogram with vertical diagonal on the line x = column.

    ``left`` and ``right`` are the heights at x = column -/+ 1; ``top`` and
    ``bottom`` the ends of the vertical diagonal.
    """

    column: int
    top: int
    bottom: int
    left: int
    right: int

    @property
    def level(self) -> int:
        return self.top

    def vertices(self) -> list[tuple[int, int]]:
        c = self.column
        return [(c - 1, self.left), (c, self.top), (c + 1, self.right), (c, self.bottom)]


@dataclass(frozen=True)
class ElnitskyTiling:
    sigma: Permutation
    tiles: tuple[Tile, ...]

    @property
    def n(self) -> int:
        return self.sigma.n


def upper_boundary(sigma: Permutation) -> list[int]:
    """Heights ``2 mult_k(sigma) - mult_k(eta)`` for k = 0..n+1."""
    n = sigma.n
    me = mult_vector(Permutation.top(n))
    ms = mult_vector(sigma)
    return [0] + [2 * a - b for a, b in zip(ms, me)] + [0]


def lower_boundary(n: int) -> list[int]:
    me = mult_vector(Permutation.top(n))
    return [0] + [-b for b in me] + [0]


def tiling_from_word(word: Sequence[int], n: int) -> ElnitskyTiling:
    """Tiling of the polygon of ``evaluate_word(word)`` read off a reduced word.

    The first letter is the first tile withdrawn from the top.
    """
    word = tuple(word)
    sigma = evaluate_word(word, n)
    if len(word) != inv(sigma):
        raise NotReducedError(f"word {list(word)} is not reduced")
    im = list(sigma.images)
    tiles = []
    for j in word:
        cur = Permutation(tuple(im))
        u = upper_boundary(cur)
        delta = im[j - 1] - im[j]
        tiles.append(Tile(j, u[j], u[j] - 2 * delta, u[j - 1], u[j + 1]))
        im[j - 1], im[j] = im[j], im[j - 1]
    return ElnitskyTiling(sigma, tuple(tiles))


def elnitsky_tiling(sigma: Permutation, word: Sequence[int] | None = None) -> ElnitskyTiling:
    return tiling_from_word(canonical_word(sigma) if word is None else word, sigma.n)


def tiling_to_word(tiling: ElnitskyTiling) -> Word:
    """Withdraw exposed tiles from the top, leftmost first."""
    bound = upper_boundary(tiling.sigma)
    remaining = list(tiling.tiles)
    out = []
    while remaining:
        exposed = [
            t
            for t in remaining
            if bound[t.column] == t.top
            and bound[t.column - 1] == t.left
            and bound[t.column + 1] == t.right
        ]
        if not exposed:
            raise NotReducedError("tiling has no exposed tile; not a valid tiling")
        t = min(exposed, key=lambda x: x.column)
        remaining.remove(t)
        bound[t.column] = t.bottom
        out.append(t.column)
    if bound != lower_boundary(tiling.n):
        raise NotReducedError("tiles do not fill the polygon")
    return tuple(out)


_SCALE = 24
_FILLS = ("#cfe0f0", "#f3dcc4")


def tiling_to_svg(tiling: ElnitskyTiling) -> str:
    """Deterministic SVG: x = column, fill alternates by column parity."""
    n = tiling.n
    low = lower_boundary(n)
    half = max(-v for v in low) if n > 0 else 0
    width = (n + 1) * _SCALE
    height = 2 * half * _SCALE
    pad = _SCALE // 2

    def pt(x: int, y: int) -> str:
        return f"{x * _SCALE},{(half - y) * _SCALE}"

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{-pad} {-pad} {width + 2 * pad} {height + 2 * pad}" '
        f'width="{width + 2 * pad}" height="{height + 2 * pad}">'
    ]
    for t in tiling.tiles:
        pts = " ".join(pt(x, y) for x, y in t.vertices())
        fill = _FILLS[t.column % 2]
        lines.append(f'<polygon points="{pts}" fill="{fill}" stroke="#333" stroke-width="1"/>')
    up = upper_boundary(tiling.sigma)
    outline = [pt(k, up[k]) for k in range(n + 2)] + [pt(k, low[k]) for k in range(n, 0, -1)]
    lines.append(
        f'<polygon points="{" ".join(outline)}" fill="none" stroke="#000" stroke-width="2"/>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def tiling_to_ascii(tiling: ElnitskyTiling, cols_per_unit: int = 4) -> str:
    """Character raster; each tile is drawn with its withdrawal index (base 36)."""
    n = tiling.n
    low = lower_boundary(n)
    half = max(-v for v in low) if n > 0 else 0
    digits = "0123456789abcdefghijklmnopqrstuvwxyz"
    rows = []
    for yy in range(2 * half):
        y = half - yy - 0.5
        row = []
        for xx in range((n + 1) * cols_per_unit):
            x = (xx + 0.5) / cols_per_unit
            ch = "."
            for idx, t in enumerate(tiling.tiles):
                if _inside(t, x, y):
                    ch = digits[idx % 36]
                    break
            row.append(ch)
        rows.append("".join(row).rstrip(".") or "")
    return "\n".join(r if r else "" for r in rows) + "\n"


def _inside(t: Tile, x: float, y: float) -> bool:
    dx = abs(x - t.column)
    if dx >= 1:
        return False
    # Upper edges are straight lines from the side vertices to the top.
    if x <= t.column:
        up = t.top + (t.left - t.top) * dx
        lo = t.bottom + (t.left - t.bottom) * dx
    else:
        up = t.top + (t.right - t.top) * dx
        lo = t.bottom + (t.right - t.bottom) * dx
    return lo < y < up
