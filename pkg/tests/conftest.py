import pytest

from qheis import Element, Monomial, ScalarContext


@pytest.fixture
def generic():
    return ScalarContext.generic()


@pytest.fixture
def p2():
    return ScalarContext.torsion(2)


@pytest.fixture
def p3():
    return ScalarContext.torsion(3)


@pytest.fixture
def p5():
    return ScalarContext.torsion(5)


def mono(ctx, k, d, coeff=None):
    return Element.monomial(ctx, Monomial(k, d), coeff)


def letters(ctx):
    """(A, B, C, I) as elements."""
    return mono(ctx, 0, -1), mono(ctx, 0, 1), mono(ctx, 1, 0), mono(ctx, 0, 0)
