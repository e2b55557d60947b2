import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bruhatspin.coxeter import (
    Permutation,
    all_permutations,
    canonical_word,
    random_permutation,
    random_reduced_word,
    reduced_words,
    vee,
)
from bruhatspin.errors import DomainError, NotPositiveError, NotReducedError
from bruhatspin.linalg import (
    Poly,
    det,
    identity,
    index_sets,
    inv_lower_unitriangular,
    mat_mul,
    minor,
    nilpotent_exp,
    nilpotent_n,
    to_exact,
)
from bruhatspin.totpos import (
    PosParams,
    ababab_transition,
    cell_of_closure,
    in_neg,
    in_pos,
    lam,
    leq,
    ll,
    neg_mirror,
    path_exists,
    pos_factorize,
    pos_from_params,
    pos_violation,
    positive_pairs,
    positive_speed_data,
    product_cell,
    random_pos,
    random_pos_params,
)

F = Fraction
A, B = 1, 2


def L(x, y, z):
    return to_exact([[1, 0, 0], [x, 1, 0], [z, y, 1]])


positive = st.fractions(min_value=F(1, 10), max_value=10, max_denominator=10)


# ---------------------------------------------------------------- parameterisation


@given(positive, positive)
def test_two_letter_cells(x, y):
    assert (pos_from_params((A, B), (x, y), 2) == L(x, y, 0)).all()
    # lam_2(x) lam_1(y) puts x below the diagonal in row 3
    assert (pos_from_params((B, A), (x, y), 2) == L(y, x, x * y)).all()
    assert in_pos(L(x, y, 0), Permutation.parse("312"))
    assert in_pos(L(x, y, x * y), Permutation.parse("231"))


@given(positive, positive, st.fractions(min_value=F(1, 100), max_value=F(99, 100)))
def test_open_cell_n2(x, y, r):
    eta = Permutation.top(2)
    assert in_pos(L(x, y, r * x * y), eta)
    assert not in_pos(L(x, y, x * y), eta)
    assert cell_of_closure(L(x, y, x * y * (1 + r))) is None


def test_empty_word():
    assert (pos_from_params((), (), 3) == identity(4)).all()
    assert in_pos(identity(4), Permutation.identity(3))
    assert pos_factorize(identity(3), Permutation.identity(2)).times == ()


def test_ababab_cases():
    t, s = F(2), F(5, 3)
    assert ababab_transition(t, 0, s) == (0, t + s, 0)
    with pytest.raises(DomainError):
        ababab_transition(F(1), F(2), F(-1))


# ---------------------------------------------------------------- sign patterns


def test_single_arrow():
    assert path_exists((1,), (2,), (1,))
    assert path_exists((), (3, 4), (3, 4))
    assert not path_exists((2,), (2,), (1,))


@pytest.mark.parametrize("sigma", list(all_permutations(3)), ids=str)
def test_positive_pairs_match_sampled_minors(sigma):
    rng = random.Random(str(sigma))
    l = random_pos(sigma, rng)
    size = sigma.size
    for k in range(1, size + 1):
        for i0 in index_sets(size, k):
            for i1 in index_sets(size, k):
                if not all(a >= b for a, b in zip(i0, i1)):
                    continue
                sub = l[np.ix_([r - 1 for r in i0], [c - 1 for c in i1])]
                value = det(sub)
                assert value >= 0
                assert (value > 0) == ((i0, i1) in positive_pairs(sigma))


def test_patterns_distinguish_cells():
    for n in (1, 2, 3, 4):
        pats = {positive_pairs(s) for s in all_permutations(n)}
        assert len(pats) == len(list(all_permutations(n)))


def test_cell_of_closure_recovers_word():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randint(1, 4)
        s = random_permutation(n, rng)
        p = random_pos_params(s, rng, word=random_reduced_word(s, rng))
        lab = cell_of_closure(pos_from_params(p.word, p.times, n))
        assert lab.sigma == s and lab.orientation == "positive"
        if s == Permutation.identity(n):
            continue  # I lies in both closures
        lab = cell_of_closure(neg_mirror(pos_from_params(p.word, p.times, n)))
        assert lab.sigma == s and lab.orientation == "negative"


def test_float_membership():
    rng = random.Random(2)
    for s in all_permutations(3):
        assert in_pos(random_pos(s, rng, exact=False), s)


def test_violation_reports_minor():
    l = L(1, 1, 2)
    bad = pos_violation(l, Permutation.top(2))
    assert bad is not None
    assert minor(l, *bad) <= 0


# ---------------------------------------------------------------- factorisation


def test_factorize_examples():
    got = pos_factorize(L(2, 3, 0), Permutation.parse("312"), (A, B))
    assert got == PosParams((1, 2), (2, 3))
    l = pos_from_params((1, 2, 1), (F(1), F(2), F(3)), 2)
    for w in reduced_words(Permutation.top(2)):
        again = pos_factorize(l, Permutation.top(2), w)
        assert (pos_from_params(again.word, again.times, 2) == l).all()
    alt = pos_factorize(l, word=(2, 1, 2))
    assert alt.times == ababab_transition(F(1), F(2), F(3))


def test_factorize_float():
    rng = random.Random(3)
    for s in all_permutations(3):
        p = random_pos_params(s, rng, exact=False)
        got = pos_factorize(pos_from_params(p.word, p.times, 3), s, p.word)
        assert np.allclose(got.times, p.times)


def test_factorize_rejects():
    with pytest.raises(NotPositiveError):
        pos_factorize(neg_mirror(L(1, 1, F(1, 2))), Permutation.top(2))
    with pytest.raises(NotReducedError):
        pos_factorize(L(1, 1, 0), Permutation.parse("312"), (1, 1))
    with pytest.raises(DomainError):
        pos_factorize(to_exact([[1, 1], [0, 1]]), Permutation.top(1))


# ---------------------------------------------------------------- orders and mirrors


def test_mirror_is_involution():
    rng = random.Random(4)
    for s in all_permutations(3):
        l = random_pos(s, rng)
        assert (neg_mirror(neg_mirror(l)) == l).all()
        assert in_neg(neg_mirror(l), s)


def test_orders_at_identity():
    i = identity(3)
    assert leq(i, i) and not ll(i, i)
    assert in_pos(i, Permutation.identity(2)) and in_neg(i, Permutation.identity(2))
    assert ll(i, random_pos(Permutation.top(2), random.Random(5)))


def test_order_transitivity():
    rng = random.Random(6)
    for _ in range(100):
        n = rng.randint(1, 3)
        l0 = random_pos(random_permutation(n, rng), rng)
        l1 = mat_mul(l0, random_pos(random_permutation(n, rng), rng))
        l2 = mat_mul(l1, random_pos(Permutation.top(n), rng))
        assert leq(l0, l1) and ll(l1, l2) and ll(l0, l2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_first_factor_line(n):
    rng = random.Random(n)
    eta = Permutation.top(n)
    p = random_pos_params(eta, rng)
    l = pos_from_params(p.word, p.times, n)
    i1, t1 = p.word[0], p.times[0]
    for t in (t1 / 2, t1 - F(1, 1000), t1, t1 + F(1, 1000), 2 * t1):
        probe = lam(n, i1, t)
        assert ll(probe, l) == (t < t1)
        assert leq(probe, l) == (t <= t1)


def test_semigroup_small():
    rng = random.Random(7)
    for s0, s1 in itertools.product(all_permutations(2), repeat=2):
        prod = mat_mul(random_pos(s0, rng), random_pos(s1, rng))
        assert in_pos(prod, vee(s0, s1))
        assert product_cell(s0, s1) == vee(s0, s1)


# ---------------------------------------------------------------- positive speed


@pytest.mark.parametrize("sigma", [s for s in all_permutations(3) if s != Permutation.top(3)], ids=str)
def test_positive_speed(sigma):
    n = sigma.n
    d = positive_speed_data(sigma)
    assert sigma(n - d.k + 2) != d.k
    assert all(sigma(n - k + 2) == k for k in range(1, d.k))
    rng = random.Random(str(sigma))
    l = random_pos(sigma, rng)
    curve = mat_mul(l, nilpotent_exp(nilpotent_n(n), Poly.t()))
    g = minor(curve, d.i0, d.i2)
    assert g(F(0)) == 0 and g.derivative()(F(0)) > 0
    assert minor(curve, d.i0, d.i1)(F(0)) > 0


def test_positive_speed_rejects_eta():
    with pytest.raises(DomainError):
        positive_speed_data(Permutation.top(3))


def test_params_json():
    p = PosParams((1, 2), (F(1, 2), 3))
    assert p.to_json() == {"word": [1, 2], "times": ["1/2", "3"]}
    assert canonical_word(Permutation.top(2)) == random_pos_params(Permutation.top(2)).word
    assert (inv_lower_unitriangular(L(1, 2, 3)) == L(-1, -2, -1)).all()
