import itertools

import pytest

from qheis.heisenberg import Element, Monomial, multiply
from qheis.qscalar import ContextMismatchError, ScalarContext
from qheis.torsion import (
    is_central,
    mixed_product_simplified,
    multiply_fastpath,
    pow_product_identity,
    power_product_exact,
    reduce_exponent,
)

from conftest import mono


def test_reduce_exponent():
    assert reduce_exponent(ScalarContext.torsion(3), 7) == 1
    assert reduce_exponent(ScalarContext.torsion(2), -1) == 1
    assert reduce_exponent(ScalarContext.torsion(5), 10) == 0


def test_reduce_exponent_rejects_generic(generic):
    with pytest.raises(ContextMismatchError):
        reduce_exponent(generic, 4)


def test_pow_product_identity_literal_form(p2, p3):
    # the formula object itself, independent of whether it matches the algebra
    got = pow_product_identity(p2, 2)
    quarter = (p2.one() - p2.q()).inverse() ** 2
    assert got == (mono(p2, 0, 0) - mono(p2, 2, 0)).scale(quarter)
    got3 = pow_product_identity(p3, 3)
    scale3 = (p3.one() - p3.q()).inverse() ** 3
    assert got3 == (mono(p3, 0, 0) + mono(p3, 3, 0)).scale(scale3)
    with pytest.raises(ValueError):
        pow_product_identity(p3, 2)


def test_pow_product_identity_matches_general_at_order_two(p2):
    ab = multiply(mono(p2, 0, -2), mono(p2, 0, 2))
    assert pow_product_identity(p2, 2) == ab


@pytest.mark.parametrize("p", range(2, 8))
def test_power_product_exact(p):
    ctx = ScalarContext.torsion(p)
    ab = multiply(mono(ctx, 0, -p), mono(ctx, 0, p))
    ba = multiply(mono(ctx, 0, p), mono(ctx, 0, -p))
    exact = power_product_exact(ctx)
    assert exact == ab == ba


def test_mixed_simplified_conditions(p3):
    # conditions not met -> no claim
    assert mixed_product_simplified(p3, Monomial(0, -1), Monomial(0, 1)) is None
    assert mixed_product_simplified(p3, Monomial(1, 0), Monomial(0, 1)) is None
    assert mixed_product_simplified(p3, Monomial(0, -4), Monomial(0, 2)) is None


def test_mixed_simplified_true_instance(p2):
    # A^2 . B^2 with p = 2 is a case where the documented formula is right
    claimed = mixed_product_simplified(p2, Monomial(0, -2), Monomial(0, 2))
    general = multiply(mono(p2, 0, -2), mono(p2, 0, 2))
    assert claimed == general


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fastpath_equals_general_sampled(p):
    ctx = ScalarContext.torsion(p)
    exps = [0, 1, p - 1, p, p + 1, 2 * p]
    for k1, k2 in itertools.product([0, 1, p], repeat=2):
        for n, l in itertools.product(exps, repeat=2):
            x = mono(ctx, k1, -n)
            y = mono(ctx, k2, l)
            assert multiply_fastpath(x, y) == multiply(x, y)
            assert multiply_fastpath(y, x) == multiply(y, x)


def test_fastpath_needs_torsion(generic):
    with pytest.raises(ContextMismatchError):
        multiply_fastpath(mono(generic, 0, 1), mono(generic, 0, -1))


@pytest.mark.parametrize("p", range(2, 8))
def test_central_powers(p):
    ctx = ScalarContext.torsion(p)
    for n in (1, 2):
        assert is_central(mono(ctx, 0, -n * p))      # A^(np)
        assert is_central(mono(ctx, 0, n * p))       # B^(np)
        assert is_central(mono(ctx, n * p, 0))       # C^(np)
    assert is_central(Element.identity(ctx))
    assert not is_central(mono(ctx, 0, 1))
    assert not is_central(mono(ctx, 1, 0))
    assert not is_central(mono(ctx, 0, -(p + 1)))
