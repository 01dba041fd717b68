"""Shared strategies and independent oracles for the test suite."""

from fractions import Fraction
import random

import sympy
from hypothesis import strategies as st

from l2betti.group_ring import GroupRingElement, GroupRingMatrix
from l2betti.groups import FreeAbelianGroup
from l2betti.homology import FreeChainComplex
from l2betti.scalars import GaussianRational, LaurentPoly, RationalFunction

SYMS = sympy.symbols("z w u v")
_Z2 = FreeAbelianGroup(2)

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)
gaussians = st.builds(GaussianRational, small_q, small_q)
nonzero_gaussians = gaussians.filter(bool)


@st.composite
def laurent(draw, nvars=1, max_terms=4, deg=2, real=True):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(-deg, deg)) for _ in range(nvars))
        re = draw(st.integers(-3, 3))
        im = 0 if real else draw(st.integers(-2, 2))
        terms[e] = GaussianRational(re, im)
    return LaurentPoly(nvars, terms)


@st.composite
def rational_functions(draw, nvars=1, deg=2):
    num = draw(laurent(nvars, deg=deg))
    den = draw(laurent(nvars, deg=deg).filter(bool))
    return RationalFunction(num, den)


@st.composite
def group_ring_elements(draw, group, elements, max_terms=4, real=False):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        g = draw(st.sampled_from(elements))
        terms[g] = GaussianRational(draw(st.integers(-3, 3)), 0 if real else draw(st.integers(-2, 2)))
    return GroupRingElement(group, terms)


def random_laurent(rng, nvars, max_terms=3, deg=2):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(-deg, deg) for _ in range(nvars))
        terms[e] = rng.randint(-3, 3)
    return LaurentPoly(nvars, terms)


def random_nonzero_laurent(rng, nvars, max_terms=3, deg=2):
    while True:
        p = random_laurent(rng, nvars, max_terms, deg)
        if p:
            return p


def to_sympy(x, nvars):
    """Independent conversion of a LaurentPoly or RationalFunction to sympy."""
    syms = SYMS[:nvars]
    if isinstance(x, RationalFunction):
        return to_sympy(x.num, nvars) / to_sympy(x.den, nvars)
    expr = sympy.Integer(0)
    for e, c in x.terms.items():
        mono = sympy.Integer(1)
        for s, k in zip(syms, e):
            mono *= s ** k
        expr += (sympy.Rational(c.re.numerator, c.re.denominator)
                 + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)) * mono
    return expr


def sympy_rank_at(matrix, nvars, point):
    """Numeric rank of a Laurent/rational matrix at a rational point (sympy oracle)."""
    subs = dict(zip(SYMS[:nvars], point))
    m = sympy.Matrix([[sympy.nsimplify(to_sympy(x, nvars).subs(subs)) for x in row] for row in matrix])
    return m.rank()


def random_point(rng, nvars):
    return tuple(Fraction(rng.randint(2, 40), rng.randint(1, 7)) for _ in range(nvars))


def fresh_rng(seed):
    return random.Random(seed)


def _elementary(ring, n, rng):
    """A product of elementary matrices with its exact inverse."""
    E = GroupRingMatrix.identity(ring, n)
    Einv = GroupRingMatrix.identity(ring, n)
    if n < 2:
        return E, Einv
    for _ in range(2):
        i, j = rng.sample(range(n), 2)
        c = GroupRingElement.from_laurent(ring, random_laurent(rng, 2, 2, 1))
        step = [[1 if (a == b) else (c if (a, b) == (i, j) else 0) for b in range(n)] for a in range(n)]
        inv = [[1 if (a == b) else (-c if (a, b) == (i, j) else 0) for b in range(n)] for a in range(n)]
        E = GroupRingMatrix(ring, step) @ E
        Einv = Einv @ GroupRingMatrix(ring, inv)
    return E, Einv


def random_complex(seed, length=3):
    """A valid complex over Z^2: direct sum of small exact-shaped pieces, then a random change of basis."""
    rng = fresh_rng(seed)
    pieces = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(["free", "one", "koszul"])
        p = rng.randint(0, length - 1)
        if kind == "free":
            ranks = [0] * (length + 1)
            ranks[rng.randint(0, length)] = 1
            pieces.append((ranks, {}))
        elif kind == "one":
            ranks = [0] * (length + 1)
            ranks[p] = ranks[p + 1] = 1
            f = GroupRingElement.from_laurent(_Z2, random_laurent(rng, 2))
            pieces.append((ranks, {p + 1: [[f]]}))
        elif p + 2 <= length:
            f = GroupRingElement.from_laurent(_Z2, random_laurent(rng, 2))
            g = GroupRingElement.from_laurent(_Z2, random_laurent(rng, 2))
            ranks = [0] * (length + 1)
            ranks[p], ranks[p + 1], ranks[p + 2] = 1, 2, 1
            pieces.append((ranks, {p + 1: [[f, g]], p + 2: [[-g], [f]]}))
    ranks = [sum(r[k] for r, _ in pieces) for k in range(length + 1)]
    d = {}
    for q in range(1, length + 1):
        blocks = GroupRingMatrix.zeros(_Z2, 0, 0)
        for r, maps in pieces:
            blk = GroupRingMatrix(_Z2, maps[q]) if q in maps else GroupRingMatrix.zeros(_Z2, r[q - 1], r[q])
            blocks = blocks.direct_sum(blk)
        d[q] = blocks
    bases = [_elementary(_Z2, n, rng) for n in ranks]
    for q in range(1, length + 1):
        d[q] = bases[q - 1][0] @ d[q] @ bases[q][1]
    return FreeChainComplex(_Z2, ranks, d)
