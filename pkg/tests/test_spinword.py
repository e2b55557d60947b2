import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bruhatspin.coxeter import (
    Permutation,
    all_permutations,
    covers_below,
    evaluate_word,
    inv_at,
    mult_vector,
    reduced_words,
)
from bruhatspin.errors import DomainError, RankMismatchError
from bruhatspin.linalg import SignedPermMatrix
from bruhatspin.spinword import (
    CliffordElem,
    QuatElem,
    SpinWord,
    acute,
    adv_label,
    all_quat,
    chop_label,
    clifford_acute_gen,
    clifford_hat_gen,
    clifford_mul,
    clifford_of,
    clifford_to_so,
    conj_acute,
    format_quat,
    grave,
    hat,
    hat_by_product,
    hat_exponents,
    lift_signed_perm,
    pi_so,
    pretty,
    quat_inverse,
    quat_mul,
    spin_inverse,
    spin_mul,
    spin_pow_gen,
    word_product,
)

P = Permutation.parse


@st.composite
def spins(draw, n=None, max_n=4):
    n = n or draw(st.integers(1, max_n))
    imgs = draw(st.permutations(list(range(1, n + 2))))
    exps = tuple(draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))
    return SpinWord(QuatElem(draw(st.sampled_from((1, -1))), exps), Permutation(tuple(imgs)))


@st.composite
def spin_triples(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return tuple(draw(spins(n=n)) for _ in range(3))


def gen(n, j):
    return SpinWord.acute_gen(n, j)


def grave_gen(n, j):
    return spin_pow_gen(SpinWord.identity(n), j, -1)


def hat_gen(n, j):
    return SpinWord.from_quat(QuatElem.gen(n, j))


def product(*zs):
    out = zs[0]
    for z in zs[1:]:
        out = spin_mul(out, z)
    return out


def cl_product(*xs):
    out = xs[0]
    for x in xs[1:]:
        out = clifford_mul(out, x)
    return out


# ---------------------------------------------------------------- Quat


def test_quat_group_order_and_relations():
    n = 4
    assert len(set(all_quat(n))) == 2 ** (n + 1)
    minus_one = QuatElem(-1, (0,) * n)
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        hi, hj = QuatElem.gen(n, i), QuatElem.gen(n, j)
        if i == j:
            assert hi * hi == minus_one
        elif abs(i - j) == 1:
            assert hi * hj == -(hj * hi)
        else:
            assert hi * hj == hj * hi


def test_quat_product_matches_clifford():
    n = 3
    embed = {}
    for q in all_quat(n):
        x = CliffordElem.scalar(n, q.sign)
        for j, e in enumerate(q.exps, start=1):
            if e:
                x = clifford_mul(x, clifford_hat_gen(n, j))
        embed[q] = x
    for a, b in itertools.product(all_quat(n), repeat=2):
        assert embed[quat_mul(a, b)] == clifford_mul(embed[a], embed[b])
        assert quat_mul(a, quat_inverse(a)) == QuatElem.one(n)


def test_quat_format():
    assert format_quat(QuatElem(-1, (1, 0, 1))) == "-a1a3"
    assert format_quat(QuatElem(1, (0, 0))) == "+1"
    assert str(QuatElem(1, (0, 1))) == "+â2"
    with pytest.raises(DomainError):
        QuatElem(2, (0,))
    with pytest.raises(RankMismatchError):
        quat_mul(QuatElem.one(2), QuatElem.one(3))


# ---------------------------------------------------------------- generator relations


@pytest.mark.parametrize("i,j", [(i, j) for i in range(1, 5) for j in range(1, 5) if i != j])
def test_step_relations(i, j):
    n = 4
    ai, aj = gen(n, i), gen(n, j)
    hi, hj = hat_gen(n, i), hat_gen(n, j)
    if abs(i - j) != 1:
        assert product(aj, ai) == product(ai, aj)
        assert product(hj, ai) == product(ai, hj)
    else:
        assert product(hj, ai) == product(grave_gen(n, i), hj)
        assert product(hj, hi) == -product(hi, hj)
        # the same relation in the Clifford model
        cj, ci = clifford_hat_gen(n, j), clifford_acute_gen(n, i)
        ci_inv = cl_product(CliffordElem.scalar(n, -1), clifford_hat_gen(n, i), ci)
        assert cl_product(cj, ci) == cl_product(ci_inv, cj)
    if j == i + 1:
        assert product(ai, aj, ai) == product(aj, ai, aj)
        gi = grave_gen(n, i)
        assert product(gi, aj, gi) == product(aj, gi, aj)


def test_hat_gen_is_square():
    for j in range(1, 5):
        assert product(gen(4, j), gen(4, j)) == hat_gen(4, j)
        assert product(gen(4, j), grave_gen(4, j)) == SpinWord.identity(4)


@pytest.mark.parametrize("sigma", list(all_permutations(3)), ids=str)
def test_acute_independent_of_reduced_word(sigma):
    n = 3
    for w in reduced_words(sigma):
        assert product(SpinWord.identity(n), *[gen(n, j) for j in w]) == acute(sigma)
        cl = cl_product(CliffordElem.scalar(n), *[clifford_acute_gen(n, j) for j in w])
        assert cl == clifford_of(acute(sigma))


def test_nonreduced_words_differ():
    assert product(gen(2, 1), gen(2, 1)) != acute(Permutation.identity(2))


def test_conj_acute():
    n = 3
    for s in all_permutations(n):
        z = acute(s)
        for q in all_quat(n):
            lhs = product(z, SpinWord.from_quat(q), spin_inverse(z))
            assert lhs == SpinWord.from_quat(conj_acute(s, q))


# ---------------------------------------------------------------- group laws


@given(spin_triples())
def test_spin_mul_associative(t):
    a, b, c = t
    assert spin_mul(spin_mul(a, b), c) == spin_mul(a, spin_mul(b, c))


@given(spins())
def test_spin_inverse(z):
    e = SpinWord.identity(z.n)
    assert spin_mul(z, spin_inverse(z)) == e == spin_mul(spin_inverse(z), z)
    assert spin_mul(z, e) == z == spin_mul(e, z)


@given(spin_triples())
def test_pi_so_homomorphism(t):
    a, b, _ = t
    assert pi_so(spin_mul(a, b)) == pi_so(a) * pi_so(b)
    assert np.allclose(clifford_to_so(clifford_of(a)), pi_so(a).to_array())


@given(spins(max_n=6))
def test_lift_signed_perm(z):
    p = pi_so(z)
    assert p.det() == 1
    assert lift_signed_perm(p) in (z, -z)


def test_lift_rejects_odd():
    with pytest.raises(DomainError):
        lift_signed_perm(SignedPermMatrix(Permutation.identity(2), (-1, 1, 1)))


def test_kernel_of_projection():
    n = 3
    ones = [q for q in all_quat(n) if pi_so(SpinWord.from_quat(q)) == pi_so(SpinWord.identity(n))]
    assert ones == [QuatElem(1, (0,) * n), QuatElem(-1, (0,) * n)]


# ---------------------------------------------------------------- acute, grave, hat


@pytest.mark.parametrize("sigma", list(all_permutations(3)), ids=str)
def test_acute_matrix_entries(sigma):
    m = pi_so(acute(sigma)).to_array()
    for i in range(1, sigma.size + 1):
        for j in range(1, sigma.size + 1):
            expect = (-1) ** inv_at(sigma, i) if j == sigma(i) else 0
            assert m[i - 1, j - 1] == expect
    d = pi_so(SpinWord.from_quat(hat(sigma))).to_array()
    mult = (0, *mult_vector(sigma), 0)
    for i in range(1, sigma.size + 1):
        assert d[i - 1, i - 1] == (-1) ** (i + sigma(i)) == (-1) ** (mult[i - 1] + mult[i])


def test_hat_three_routes_s5():
    for s in all_permutations(4):
        h = hat(s)
        assert h == hat_by_product(s)
        assert h.exps == hat_exponents(s)


def test_grave_is_inverse_of_reversed_acute():
    for s in all_permutations(3):
        assert grave(s) == spin_inverse(acute(s.inverse()))
        assert spin_mul(acute(s), spin_inverse(grave(s))) == SpinWord.from_quat(hat(s))


def test_parity_rule():
    n = 4
    for q in all_quat(n):
        e = (0, *q.exps, 0)
        zq = SpinWord.from_quat(q)
        for i in range(1, n + 1):
            if (e[i - 1] + e[i + 1]) % 2:
                assert spin_mul(zq, gen(n, i)) == spin_mul(grave_gen(n, i), zq)
                assert quat_mul(q, QuatElem.gen(n, i)) == -quat_mul(QuatElem.gen(n, i), q)
            else:
                assert spin_mul(zq, gen(n, i)) == spin_mul(gen(n, i), zq)


def test_hat_step():
    n = 4
    for s0 in all_permutations(n):
        for s1 in covers_below(s0):
            # s0 = a_i s1 for a left generator, when it exists
            left = [i for i in range(1, n + 1) if Permutation.generator(n, i) * s1 == s0]
            if not left:
                continue
            i = left[0]
            diff = [p for p in range(s0.size) if s0.images[p] != s1.images[p]]
            delta = abs(s0.images[diff[0]] - s0.images[diff[1]])
            hi = QuatElem.gen(n, i)
            if delta % 2:
                assert hat(s0) == quat_mul(hi, hat(s1)) == quat_mul(hat(s1), hi)
            else:
                assert hat(s0) == hat(s1)
                assert quat_mul(hat(s1), hi) == -quat_mul(hi, hat(s1))


def test_worked_hat_example():
    assert format_quat(hat(P("7245136"))) == "+a3a6"


# ---------------------------------------------------------------- labels, words, serialisation


@given(spins())
def test_adv_chop_land_in_open_cell(z):
    eta = Permutation.top(z.n)
    assert adv_label(z).sigma == eta and chop_label(z).sigma == eta


def test_word_product():
    w = (1, 2, 1)
    assert word_product(w, (1, 1, 1), 2) == acute(evaluate_word(w, 2))
    assert word_product(w, (-1, -1, -1), 2) == grave(evaluate_word(w, 2))
    with pytest.raises(DomainError):
        word_product((1,), (0,), 2)


@given(spins())
def test_json_roundtrip(z):
    assert SpinWord.from_json(z.to_json()) == z


def test_pretty():
    z = SpinWord(QuatElem(-1, (1, 0, 1)), P("3214"))
    assert pretty(z) == "-â1â3 · acute[3214]"


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        spin_mul(SpinWord.identity(2), SpinWord.identity(3))
    with pytest.raises(RankMismatchError):
        SpinWord(QuatElem.one(2), Permutation.identity(3))
