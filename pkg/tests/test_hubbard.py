"""Operator-sum algebra: delta-rule products, adjoints, traces, vector
action, dense round trips, and the exact determinant."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from kronx.exactnum import SqrtRational
from kronx.hubbard import (
    DimensionError,
    ResourceError,
    XSum,
    allclose,
    apply,
    bracket,
    dagger,
    det_dense,
    from_dense,
    identity,
    to_dense,
    trace,
    x_op,
    xsum_linear,
    xsum_mul,
)


def _random_xsum(rng, n, density=0.4):
    terms = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if rng.random() < density:
                terms[(i, j)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return XSum(n, terms)


def _dense_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def test_x_op_is_a_single_entry():
    m = to_dense(x_op(4, 3, 1))
    flat = [c for row in m for c in row]
    assert flat.count(0) == 15
    assert m[2][0] == 1


def test_x_op_range_check():
    with pytest.raises(IndexError):
        x_op(2, 0, 1)
    with pytest.raises(IndexError):
        x_op(2, 1, 3)


def test_delta_rule_products():
    assert xsum_mul(x_op(3, 1, 2), x_op(3, 2, 3)) == x_op(3, 1, 3)
    assert xsum_mul(x_op(3, 1, 2), x_op(3, 3, 1)) == XSum(3)


def test_product_order_mismatch():
    with pytest.raises(DimensionError):
        xsum_mul(x_op(2, 1, 1), x_op(3, 1, 1))


def test_hadamard_squares_to_identity_exactly():
    c = SqrtRational.sqrt(Fraction(1, 2))
    h = XSum(2, {(1, 1): c, (1, 2): c, (2, 1): c, (2, 2): -c})
    assert xsum_mul(h, h) == identity(2)


def test_linear_ops():
    a = x_op(2, 1, 1)
    assert xsum_linear("add", a, a.scale(-1)) == XSum(2)
    assert xsum_linear("scale", a, 2).coeff(1, 1) == 2
    assert (a + a).coeff(1, 1) == 2
    assert (a - a) == XSum(2)
    with pytest.raises(DimensionError):
        xsum_linear("add", a, x_op(3, 1, 1))


def test_add_commutes_on_random_sums():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 6)
        a, b = _random_xsum(rng, n), _random_xsum(rng, n)
        assert a + b == b + a


def test_bracket_single_term_delta_formula():
    # minus: [X^12, X^21] = X^11 - X^22; plus gives the identity
    m = bracket(x_op(2, 1, 2), x_op(2, 2, 1), "commutator")
    assert m == x_op(2, 1, 1) - x_op(2, 2, 2)
    p = bracket(x_op(2, 1, 2), x_op(2, 2, 1), "anticommutator")
    assert p == identity(2)
    a = _random_xsum(random.Random(1), 4)
    assert bracket(a, a) == XSum(4)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bracket_delta_formula_all_subscripts(n):
    # [X^(i,j), X^(k,m)]_pm = delta_jk X^(i,m) pm delta_mi X^(k,j)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for m in range(1, n + 1):
                    a, b = x_op(n, i, j), x_op(n, k, m)
                    want_minus = XSum(n)
                    if j == k:
                        want_minus = want_minus + x_op(n, i, m)
                    if m == i:
                        want_minus = want_minus - x_op(n, k, j)
                    assert bracket(a, b, "commutator") == want_minus
                    want_plus = XSum(n)
                    if j == k:
                        want_plus = want_plus + x_op(n, i, m)
                    if m == i:
                        want_plus = want_plus + x_op(n, k, j)
                    assert bracket(a, b, "anticommutator") == want_plus


def test_dagger_modes():
    assert dagger(x_op(3, 1, 2), "transpose") == x_op(3, 2, 1)
    z = XSum(2, {(1, 2): 1 + 2j})
    assert dagger(z, "adjoint").coeff(2, 1) == 1 - 2j
    assert dagger(z, "conjugate").coeff(1, 2) == 1 - 2j
    a = _random_xsum(random.Random(2), 5)
    assert dagger(a, "adjoint") == dagger(a, "transpose")  # real coefficients


def test_adjoint_is_an_involution_on_complex_sums():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 6)
        terms = {
            (rng.randint(1, n), rng.randint(1, n)): complex(
                rng.uniform(-1, 1), rng.uniform(-1, 1)
            )
            for _ in range(n * 2)
        }
        a = XSum(n, terms)
        assert dagger(dagger(a)) == a


@pytest.mark.parametrize("n", [1, 2, 7, 64])
def test_completeness(n):
    total = XSum(n)
    for i in range(1, n + 1):
        total = total + x_op(n, i, i)
    assert total == identity(n)
    assert trace(identity(n)) == n


def test_trace_off_diagonal_is_zero():
    assert trace(x_op(3, 1, 2)) == 0


def test_trace_cyclic():
    rng = random.Random(4)
    for _ in range(60):
        n = rng.randint(1, 6)
        a, b = _random_xsum(rng, n), _random_xsum(rng, n)
        assert trace(xsum_mul(a, b)) == trace(xsum_mul(b, a))


def test_apply_single_term_selects_component():
    assert apply(x_op(2, 1, 2), (Fraction(5), Fraction(7))) == (Fraction(7), 0)
    x = (Fraction(1), Fraction(2), Fraction(3))
    assert apply(identity(3), x) == x
    with pytest.raises(DimensionError):
        apply(identity(3), (1, 2))


def test_apply_hadamard_adds_and_subtracts():
    c = SqrtRational.sqrt(Fraction(1, 2))
    h = XSum(2, {(1, 1): c, (1, 2): c, (2, 1): c, (2, 2): -c})
    y = apply(h, (1, 1))
    assert y[0] == SqrtRational.sqrt(2)
    assert y[1].sign == 0


def test_product_matches_dense_on_random_pairs():
    rng = random.Random(6)
    for _ in range(500):
        n = rng.randint(1, 16)
        a, b = _random_xsum(rng, n, 0.3), _random_xsum(rng, n, 0.3)
        got = to_dense(xsum_mul(a, b))
        want = _dense_mul(to_dense(a), to_dense(b))
        assert got == want


def test_dense_round_trip():
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(1, 8)
        a = _random_xsum(rng, n)
        assert from_dense(to_dense(a)) == a
    assert from_dense([[0, 0], [0, 0]]) == XSum(2)


def test_coefficient_readback_matches_sandwich():
    rng = random.Random(9)
    a = _random_xsum(rng, 5)
    for i in range(1, 6):
        for j in range(1, 6):
            ej = tuple(1 if k == j else 0 for k in range(1, 6))
            assert apply(a, ej)[i - 1] == a.coeff(i, j)


def test_from_dense_accepts_numpy():
    m = np.array([[0.0, 1.5], [0.0, 0.0]])
    a = from_dense(m)
    assert a.coeff(1, 2) == 1.5
    assert isinstance(a.coeff(1, 2), float)


def test_zero_pruning_and_nnz():
    a = XSum(3, {(1, 1): Fraction(0), (2, 2): 4})
    assert a.nnz() == 1
    merged = XSum(2, [((1, 1), 1), ((1, 1), -1)])
    assert merged == XSum(2)


def test_cleanup_drops_only_tiny_floats():
    a = XSum(2, {(1, 1): 1e-16, (1, 2): Fraction(1, 10**20), (2, 2): 0.5})
    b = a.cleanup()
    assert b.coeff(1, 1) == 0
    assert b.coeff(1, 2) == Fraction(1, 10**20)  # exact terms never pruned
    assert b.coeff(2, 2) == 0.5


def test_allclose_for_float_sums():
    a = XSum(2, {(1, 1): 1.0})
    b = XSum(2, {(1, 1): 1.0 + 5e-11})
    assert allclose(a, b)
    assert not allclose(a, XSum(2, {(1, 1): 1.0 + 1e-8}))


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("KRONX_MAX_DIM", "16")
    with pytest.raises(ResourceError):
        identity(17)
    assert identity(16).order == 16


def test_det_identity_and_singular():
    assert det_dense(to_dense(identity(4))) == 1
    assert det_dense(to_dense(x_op(3, 2, 1))) == 0
    assert det_dense([[1, 2], [3, 4]]) == -2


def test_det_two_by_two_closed_form():
    rng = random.Random(10)
    for _ in range(50):
        a, b, c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4))
        assert det_dense([[a, b], [c, d]]) == a * d - b * c


def test_det_product_rule():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 5)
        a, b = _random_xsum(rng, n, 0.6), _random_xsum(rng, n, 0.6)
        da, db = to_dense(a), to_dense(b)
        assert det_dense(_dense_mul(da, db)) == det_dense(da) * det_dense(db)
