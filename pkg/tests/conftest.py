"""Shared helpers for the test suite."""

import random

import pytest

from redform.field import GaussRational, UniPoly, RatFunc, QI_RING, RF_RING, Q
from redform.linalg import Mat, rref
from redform.diffsys import LinearDiffSystem
from redform.parsing import parse_ratfunc


def rf(text, var="x"):
    return parse_ratfunc(text, var)


def mat(rows, var="x"):
    return Mat(RF_RING, [[parse_ratfunc(s, var) for s in row] for row in rows])


def const_mat(rows):
    return Mat(QI_RING, [[GaussRational(c) if not isinstance(c, GaussRational)
                          else c for c in row] for row in rows])


def random_gauss(rng, lo=-3, hi=3):
    return GaussRational(rng.randint(lo, hi))


def random_const_mat(rng, n, lo=-3, hi=3):
    return Mat(QI_RING, [[random_gauss(rng, lo, hi) for _ in range(n)]
                         for _ in range(n)])


def random_invertible_const_mat(rng, n, lo=-3, hi=3):
    while True:
        m = random_const_mat(rng, n, lo, hi)
        if m.det() != GaussRational(0):
            return m


def random_poly(rng, max_deg=2, lo=-3, hi=3):
    return UniPoly([GaussRational(rng.randint(lo, hi))
                    for _ in range(max_deg + 1)])


def random_poly_mat(rng, n, max_deg=2):
    return Mat(RF_RING, [[RatFunc(random_poly(rng, max_deg))
                          for _ in range(n)] for _ in range(n)])


def random_invertible_poly_mat(rng, n, max_deg=2):
    while True:
        m = random_poly_mat(rng, n, max_deg)
        if not m.det().is_zero():
            return m


def span_matrix(vectors):
    """Stack rational-function vectors as Q(i) coefficient rows (for span tests)."""
    common = UniPoly([1])
    for vec in vectors:
        for e in vec:
            common = common.lcm(e.den)
    width = 0
    rows = []
    for vec in vectors:
        row = []
        for e in vec:
            num = (e * RatFunc(common)).num
            row.append(list(num.coeffs))
        rows.append(row)
        width = max(width, max((len(c) for c in row), default=0))
    flat = []
    for row in rows:
        out = []
        for coeffs in row:
            out.extend(coeffs + [GaussRational(0)] * (width - len(coeffs)))
        flat.append(out)
    return Mat(QI_RING, flat)


def same_span(vecs_a, vecs_b):
    """Whether two sets of rational-function vectors span the same Q(i)-space."""
    if not vecs_a and not vecs_b:
        return True
    if bool(vecs_a) != bool(vecs_b):
        return False
    both = span_matrix(list(vecs_a) + list(vecs_b))
    only_a = span_matrix(list(vecs_a))
    only_b = span_matrix(list(vecs_b))
    ra = len(rref(only_a)[1])
    rb = len(rref(only_b)[1])
    rab = len(rref(both)[1])
    return ra == rb == rab


@pytest.fixture
def dihedral():
    return LinearDiffSystem.from_strings([["0", "1"], ["x", "1/(2*x)"]], "x")


@pytest.fixture
def so3():
    from redform.gallery import builtin_system
    return builtin_system("so3")


@pytest.fixture
def rng():
    return random.Random(20240817)
