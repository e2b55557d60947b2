import itertools
import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from bruhatspin.coxeter import Permutation, all_permutations
from bruhatspin.errors import ChartDomainError, DomainError, RankMismatchError
from bruhatspin.linalg import (
    Poly,
    Root2,
    SignedPermMatrix,
    all_minors,
    det,
    exterior_power,
    format_root2,
    identity,
    index_sets,
    inv_lower_unitriangular,
    lu_chart,
    lu_factor,
    mat_mul,
    matrix_from_json,
    matrix_to_json,
    minor,
    mp_matrix,
    nilpotent_exp,
    nilpotent_n,
    orthogonality_defect,
    parse_root2,
    qr_chart,
    qr_factor,
    root_multiplicity_at_zero,
    round_sig,
    to_exact,
    to_float,
)

ints = st.integers(-6, 6)


@st.composite
def int_matrices(draw, max_size=4, size=None):
    size = size or draw(st.integers(1, max_size))
    rows = draw(st.lists(st.lists(ints, min_size=size, max_size=size), min_size=size, max_size=size))
    return to_exact(np.array(rows, dtype=object))


def leibniz(a):
    size = a.shape[0]
    total = 0
    for p in itertools.permutations(range(size)):
        sign = 1
        for i, j in itertools.combinations(range(size), 2):
            if p[i] > p[j]:
                sign = -sign
        term = sign
        for i in range(size):
            term *= a[i, p[i]]
        total += term
    return total


# ---------------------------------------------------------------- Root2


@given(ints, ints, st.integers(0, 5), ints, ints, st.integers(0, 5))
def test_root2_matches_floats(a, b, m, c, d, k):
    x, y = Root2(a, b, m), Root2(c, d, k)
    fx, fy = float(x), float(y)
    assert math.isclose(float(x + y), fx + fy, abs_tol=1e-12)
    assert math.isclose(float(x * y), fx * fy, abs_tol=1e-12)
    assert math.isclose(float(x - y), fx - fy, abs_tol=1e-12)
    assert parse_root2(format_root2(x)) == x


def test_root2_normalisation():
    h = Root2.inv_sqrt2()
    assert h * h == Root2(1, 0, 1)
    assert Root2(2, 4, 1) == Root2(1, 2, 0)
    assert str(Root2(3)) == "3"
    assert format_root2(h) == "(0+1r2)/2^1"


# ---------------------------------------------------------------- Poly


polys = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=5), max_size=5).map(Poly)


@given(polys, polys)
def test_poly_division(p, q):
    if not q:
        return
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert not rem or rem.degree < q.degree


@given(polys, st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_poly_calculus(p, a):
    assert p.integral().derivative() == p
    assert p.shift(a)(Fraction(1)) == p(a + 1)
    assert math.isclose(float(p(a)), p(float(a)), rel_tol=1e-9, abs_tol=1e-9)


def test_poly_multiplicity():
    t = Poly.t()
    assert root_multiplicity_at_zero(t * t * (t + 1)) == 2
    assert root_multiplicity_at_zero(Poly.const(3)) == 0
    with pytest.raises(DomainError):
        root_multiplicity_at_zero(Poly())


# ---------------------------------------------------------------- determinants and minors


@given(int_matrices())
def test_det_matches_leibniz(a):
    assert det(a) == leibniz(a)


@given(int_matrices(max_size=4))
def test_all_minors(a):
    size = a.shape[0]
    mins = all_minors(a)
    for k in range(1, size + 1):
        for rows in itertools.combinations(range(1, size + 1), k):
            for cols in itertools.combinations(range(1, size + 1), k):
                assert mins[(rows, cols)] == leibniz(a[np.ix_([r - 1 for r in rows], [c - 1 for c in cols])])
                assert minor(a, rows, cols) == mins[(rows, cols)]


@given(st.data())
def test_exterior_power_is_multiplicative(data):
    size = data.draw(st.integers(2, 4))
    a = data.draw(int_matrices(size=size))
    b = data.draw(int_matrices(size=size))
    for k in range(1, size + 1):
        ea, basis = exterior_power(a, k)
        eb, _ = exterior_power(b, k)
        eab, _ = exterior_power(mat_mul(a, b), k)
        assert (mat_mul(ea, eb) == eab).all()
        assert len(basis) == math.comb(size, k)


def test_index_sets_order():
    assert index_sets(4, 2) == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert index_sets(5, 2)[:4] == ((1, 2), (1, 3), (1, 4), (2, 3))


# ---------------------------------------------------------------- triangular charts


def _random_lu_input(rng, size):
    l = np.tril(rng.uniform(-2, 2, (size, size)), -1) + np.eye(size)
    u = np.triu(rng.uniform(-2, 2, (size, size)), 1) + np.diag(rng.uniform(0.5, 2, size))
    return l, u


def test_lu_chart_float():
    rng = np.random.default_rng(1)
    for size in range(1, 7):
        l, u = _random_lu_input(rng, size)
        got_l, got_u = lu_factor(l @ u)
        assert np.allclose(got_l, l) and np.allclose(got_u, u)


def test_lu_chart_exact():
    l = to_exact([[1, 0, 0], [2, 1, 0], [-1, Fraction(1, 3), 1]])
    u = to_exact([[2, 1, 0], [0, 1, 5], [0, 0, Fraction(1, 2)]])
    got = lu_chart(mat_mul(l, u))
    assert (got == l).all()
    assert (mat_mul(inv_lower_unitriangular(l), l) == identity(3)).all()


def test_lu_chart_domain():
    q = np.array([[1.0, 0, 0], [0, 0, 1], [0, 1, 0]])
    with pytest.raises(ChartDomainError) as err:
        lu_chart(q)
    assert err.value.index == 2
    with pytest.raises(ChartDomainError):
        lu_chart(-np.eye(2))


def _mgs(a):
    q = np.zeros_like(a)
    for j in range(a.shape[1]):
        v = a[:, j].copy()
        for i in range(j):
            v -= (q[:, i] @ a[:, j]) * q[:, i]
        q[:, j] = v / np.linalg.norm(v)
    return q


def test_qr_chart_matches_gram_schmidt():
    rng = np.random.default_rng(2)
    for size in range(1, 7):
        a = rng.uniform(-1, 1, (size, size)) + 2 * np.eye(size)
        q = qr_chart(a)
        assert np.allclose(q, _mgs(a))
        q, r = qr_factor(a)
        assert orthogonality_defect(q) < 1e-12
        assert np.allclose(np.tril(r, -1), 0) and (np.diag(r) > 0).all()
        assert np.allclose(q @ r, a)


def test_qr_chart_high_precision():
    rng = np.random.default_rng(3)
    a = rng.uniform(-1, 1, (4, 4)) + 2 * np.eye(4)
    with mpmath.workdps(40):
        q = qr_chart(mp_matrix(a))
        err = max(abs(x) for x in (mat_mul(q.T.copy(), q) - np.eye(4)).flat)
        assert err < mpmath.mpf("1e-35")
    assert np.allclose(to_float(q), qr_chart(a))


# ---------------------------------------------------------------- exponentials


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_nilpotent_exp(n):
    nil = nilpotent_n(n)
    s, t = Fraction(2, 3), Fraction(-5, 7)
    assert (mat_mul(nilpotent_exp(nil, s), nilpotent_exp(nil, t)) == nilpotent_exp(nil, s + t)).all()
    assert np.allclose(to_float(nilpotent_exp(nil, t)), scipy.linalg.expm(float(t) * to_float(nil)))
    sym = nilpotent_exp(nil, Poly.t())
    for idx, p in np.ndenumerate(sym):
        assert p(s) == nilpotent_exp(nil, s)[idx]


def test_nilpotent_exp_rejects():
    with pytest.raises(DomainError):
        nilpotent_exp(identity(2), 1)


# ---------------------------------------------------------------- signed permutations


def _random_signed(rng, n):
    sigma = Permutation(tuple(rng.sample(range(1, n + 2), n + 1)))
    return SignedPermMatrix(sigma, tuple(rng.choice((1, -1)) for _ in range(n + 1)))


def test_signed_perm_algebra():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(1, 5)
        a, b = _random_signed(rng, n), _random_signed(rng, n)
        assert np.array_equal((a * b).to_array(), a.to_array() @ b.to_array())
        assert np.array_equal(a.transpose().to_array(), a.to_array().T)
        assert a.det() == round(np.linalg.det(a.to_array()))
        assert SignedPermMatrix.from_array(a.to_array()) == a
        assert SignedPermMatrix.from_json(a.to_json()) == a


def test_signed_perm_rows():
    for s in all_permutations(2):
        m = SignedPermMatrix(s, (1, -1, 1)).to_array()
        assert m[1, s(2) - 1] == -1


def test_signed_perm_rejects():
    with pytest.raises(DomainError):
        SignedPermMatrix(Permutation.identity(1), (1, 0))
    with pytest.raises(DomainError):
        SignedPermMatrix.from_array(np.full((2, 2), 0.5))


# ---------------------------------------------------------------- serialisation


def test_matrix_json_roundtrip():
    exact = to_exact([[1, Fraction(-2, 3)], [0, 5]])
    back = matrix_from_json(matrix_to_json(exact))
    assert (back == exact).all() and back.dtype == object
    fl = np.array([[0.1, 1 / 3], [2.0, -1e-20]])
    out = matrix_to_json(fl)
    assert out["rows"][0][1] == 0.333333333333
    assert np.allclose(matrix_from_json(out), fl)
    with pytest.raises(RankMismatchError):
        matrix_from_json({"rows": [[1, 2]]})


def test_round_sig():
    assert round_sig(math.pi) == 3.14159265359
    assert round_sig(0.0) == 0.0
    assert round_sig(-123456789.123456) == -123456789.123
