import itertools
from fractions import Fraction

import flint
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cyclicfoam import linalg as la
from cyclicfoam.frobenius import Tensor3

small = st.builds(Fraction, st.integers(-5, 5), st.sampled_from([1, 1, 2, 3, 4]))


def matrices(n, m=None):
    return st.lists(st.lists(small, min_size=m or n, max_size=m or n), min_size=n, max_size=n)


@st.composite
def square(draw, lo=1, hi=5):
    n = draw(st.integers(lo, hi))
    return draw(matrices(n))


@given(square())
@settings(max_examples=150, deadline=None)
def test_inverse_is_two_sided(a):
    assume(la.is_invertible(a))
    inv = la.inverse(a)
    n = len(a)
    assert la.matmul(a, inv) == la.identity(n)
    assert la.matmul(inv, a) == la.identity(n)


def test_singular_matrix_raises():
    with pytest.raises(la.SingularMatrix):
        la.inverse([[1, 2], [2, 4]])
    with pytest.raises(la.SingularMatrix):
        la.inverse([[1, 2, 3], [4, 5, 6]])


@given(square(), st.data())
@settings(max_examples=150, deadline=None)
def test_solve_affine_finds_a_solution_when_one_exists(a, data):
    x0 = data.draw(st.lists(small, min_size=len(a), max_size=len(a)))
    b = la.matvec(a, x0)
    x = la.solve_affine(a, b)
    assert x is not None
    assert la.matvec(a, x) == b


def test_solve_affine_reports_inconsistency():
    assert la.solve_affine([[1, 1], [2, 2]], [1, 3]) is None


@given(square(1, 4), st.data())
@settings(max_examples=100, deadline=None)
def test_matmul_matches_flint(a, data):
    b = data.draw(matrices(len(a)))
    assert la.matmul(a, b) == la.from_flint(la.to_flint(a) * la.to_flint(b))


@given(square(1, 5), st.data())
@settings(max_examples=100, deadline=None)
def test_vecmat_is_transposed_matvec(a, data):
    v = data.draw(st.lists(small, min_size=len(a), max_size=len(a)))
    assert la.vecmat(v, a) == la.matvec(la.transpose(a), v)


@pytest.mark.parametrize("text,value", [("3/6", Fraction(1, 2)), (" -2 ", Fraction(-2)), ("0", Fraction(0))])
def test_rational_parses_strings(text, value):
    assert la.rational(text) == value


def test_rational_accepts_flint():
    assert la.rational(flint.fmpq(3, 9)) == Fraction(1, 3)
    assert la.rational(flint.fmpz(7)) == 7
    assert la.format_rational(2) == "2/1"


@st.composite
def tensors(draw):
    dims = tuple(draw(st.integers(1, 3)) for _ in range(3))
    data = draw(st.lists(small, min_size=dims[0] * dims[1] * dims[2], max_size=dims[0] * dims[1] * dims[2]))
    return Tensor3(dims, data)


def naive_apply(t: Tensor3, slot: int, m):
    out = Tensor3.zeros(t.dims)
    for idx in itertools.product(*(range(n) for n in t.dims)):
        total = Fraction(0)
        for i in range(t.dims[slot]):
            src = list(idx)
            src[slot] = i
            total += m[i][idx[slot]] * t[tuple(src)]
        out[idx] = total
    return out


@given(tensors(), st.integers(0, 2), st.data())
@settings(max_examples=150, deadline=None)
def test_apply_slot_matches_naive(t, slot, data):
    m = data.draw(matrices(t.dims[slot]))
    assert t.apply_slot(slot, m).data == naive_apply(t, slot, m).data


@given(tensors(), st.data())
@settings(max_examples=100, deadline=None)
def test_evaluate_is_trilinear_sum(t, data):
    xs = [data.draw(st.lists(small, min_size=n, max_size=n)) for n in t.dims]
    direct = sum((xs[0][i] * xs[1][j] * xs[2][k] * t[i, j, k]
                  for i, j, k in itertools.product(*(range(n) for n in t.dims))), Fraction(0))
    assert t.evaluate(*xs) == direct


@given(tensors())
@settings(max_examples=100, deadline=None)
def test_three_rotations_are_the_identity(t):
    assert t.rotated().rotated().rotated().data == t.data
