"""Gamma-dimensions of finitely presented modules via per-family rank backends.

Backends:

* free abelian groups: rank over the rational function field.  A nonzero
  Laurent polynomial vanishes only on a null subset of the torus, so a Laurent
  matrix is invertible over measurable functions iff it is invertible over
  rational functions; the rank over C(z_1..z_n) is the affiliated rank.
* finite groups: rank of the left regular representation divided by |G|.
* crossed products with finite acting group: restrict to the base and divide
  by the index.
* free groups: evaluation at random unimodular matrices, see FreeGroupOracle.
"""

from dataclasses import dataclass
from fractions import Fraction
import random

from l2betti.errors import GroupMismatch, UnsupportedGroup
from l2betti.group_ring import (
    CrossedProductElement,
    GroupRingElement,
    GroupRingMatrix,
    regular_representation,
)
from l2betti.groups import CrossedProductData, FiniteGroup, FreeAbelianGroup, FreeGroup
from l2betti.scalars import G0, GaussianRational, LaurentPoly, rank_exact, rank_field
from l2betti.values import EXACT, MONTE_CARLO, DimensionValue

DEFAULT_LADDER = (2, 4, 6, 8)


def engine_name(ring):
    if isinstance(ring, FreeAbelianGroup):
        return "abelian"
    if isinstance(ring, FiniteGroup):
        return "finite"
    if isinstance(ring, CrossedProductData):
        return "crossed"
    if isinstance(ring, FreeGroup):
        return "abelian" if ring.rank == 1 else "free-oracle"
    raise UnsupportedGroup(f"no rank backend for {ring!r}")


class FreeGroupOracle:
    """Rank over the division closure of a free group ring, by matrix evaluation.

    Generators are sent to random unimodular integer d x d matrices.  Any
    factorization A = BC over the group ring with inner size r survives
    evaluation, so rank(A(X))/d never exceeds the inner rank, which is the rank
    over the division closure (a skew field).  The sampled value is therefore a
    lower bound; it is certified exact when it reaches min(rows, cols).  A
    nonzero matrix has rank at least 1.
    """

    def __init__(self, ladder=DEFAULT_LADDER, samples=3, seed=0):
        ladder = tuple(int(d) for d in ladder)
        if not ladder or any(d < 1 for d in ladder):
            raise ValueError("ladder must be a nonempty list of positive sizes")
        self.ladder = ladder
        self.samples = samples
        self.seed = seed

    def rank(self, A):
        if not isinstance(A.ring, FreeGroup):
            raise UnsupportedGroup("the free-group oracle needs a free group ring")
        if A.rows == 0 or A.cols == 0 or A.is_zero():
            return DimensionValue(0, "free-oracle")
        upper = min(A.rows, A.cols)
        if upper == 1:
            # a nonzero element is invertible in the skew field
            return DimensionValue(1, "free-oracle")
        rng = random.Random(self.seed)
        prev = None
        best = Fraction(1)
        for d in self.ladder:
            level = Fraction(0)
            for _ in range(self.samples):
                X = [_random_unimodular(rng, d) for _ in range(A.ring.rank)]
                level = max(level, Fraction(rank_field(evaluate_matrix(A, X)), d))
                if level == upper:
                    return DimensionValue(upper, "free-oracle")
            best = max(best, level)
            if prev is not None and level == prev:
                break
            prev = level
        return DimensionValue(best, "free-oracle", MONTE_CARLO)


def _random_unimodular(rng, d):
    """Random matrix in GL_d(Z) together with its inverse."""
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    inv = [[int(i == j) for j in range(d)] for i in range(d)]
    if d == 1:
        return m, inv
    for _ in range(3 * d):
        i, j = rng.sample(range(d), 2)
        c = rng.choice((-2, -1, 1, 2))
        # m <- E m with E = 1 + c e_ij ; inv <- inv E^-1
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        for row in inv:
            row[j] -= c * row[i]
    perm = list(range(d))
    rng.shuffle(perm)
    m = [m[p] for p in perm]
    inv = [[row[p] for p in perm] for row in inv]
    return m, inv


def _matmul_int(a, b):
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)] for i in range(n)]


def evaluate_element(a, X):
    """Image of a free group ring element under generator k -> X[k] (pairs (M, M^-1))."""
    d = len(X[0][0])
    cache = {(): [[int(i == j) for j in range(d)] for i in range(d)]}

    def word_matrix(w):
        if w in cache:
            return cache[w]
        prev = word_matrix(w[:-1])
        k = w[-1]
        m = X[abs(k) - 1][0 if k > 0 else 1]
        cache[w] = r = _matmul_int(prev, m)
        return r

    out = [[G0] * d for _ in range(d)]
    for g, c in a.terms.items():
        m = word_matrix(g)
        for i in range(d):
            row = out[i]
            mi = m[i]
            for j in range(d):
                if mi[j]:
                    row[j] = row[j] + c * mi[j]
    return out


def evaluate_matrix(A, X):
    d = len(X[0][0])
    out = [[G0] * (A.cols * d) for _ in range(A.rows * d)]
    for i, row in enumerate(A.entries):
        for j, a in enumerate(row):
            if not a.terms:
                continue
            blk = evaluate_element(a, X)
            for u in range(d):
                for v in range(d):
                    out[i * d + u][j * d + v] = blk[u][v]
    return out


def _free_rank_one_to_laurent(a):
    out = {}
    for w, c in a.terms.items():
        e = (sum(1 if x > 0 else -1 for x in w),)
        out[e] = out.get(e, G0) + c
    return LaurentPoly(1, out)


def rank_gamma(A, oracle=None):
    """Gamma-dimension of the image of the map given by A (columns -> rows)."""
    ring = A.ring
    engine = engine_name(ring)
    if A.rows == 0 or A.cols == 0:
        return DimensionValue(0, engine)
    if isinstance(ring, FreeAbelianGroup):
        return DimensionValue(rank_exact([[a.to_laurent() for a in row] for row in A.entries]), engine)
    if isinstance(ring, FiniteGroup):
        return DimensionValue(Fraction(rank_field(regular_representation(A)), ring.order), engine)
    if isinstance(ring, CrossedProductData):
        if not ring.finite:
            raise UnsupportedGroup("crossed products by an infinite cyclic group have no exact backend")
        inner = rank_gamma(regular_representation(A), oracle)
        return DimensionValue(inner.value / ring.acting.order, engine, inner.certainty)
    if isinstance(ring, FreeGroup):
        if ring.rank == 1:
            return DimensionValue(rank_exact([[_free_rank_one_to_laurent(a) for a in row] for row in A.entries]), engine)
        return (oracle or FreeGroupOracle()).rank(A)
    raise UnsupportedGroup(f"no rank backend for {ring!r}")


@dataclass(frozen=True)
class PresentedModule:
    """Cokernel of ``matrix``: R^m -> R^n (n rows, m columns)."""

    matrix: GroupRingMatrix

    @property
    def group(self):
        return self.matrix.ring

    @property
    def n(self):
        return self.matrix.rows

    @property
    def m(self):
        return self.matrix.cols

    @classmethod
    def free(cls, ring, n):
        return cls(GroupRingMatrix.zeros(ring, n, 0))

    def direct_sum(self, other):
        return PresentedModule(self.matrix.direct_sum(other.matrix))


def dim_fp(M, oracle=None):
    """dim of M tensored up to the affiliated operators: n - rank_gamma(A)."""
    if isinstance(M, GroupRingMatrix):
        M = PresentedModule(M)
    r = rank_gamma(M.matrix, oracle)
    return DimensionValue(M.n - r.value, r.engine, r.certainty)


def extension_matrix(A_sub, A_quot, coupling=None):
    """Block presentation [[A_sub, coupling], [0, A_quot]] of an extension."""
    ring = A_sub.ring
    if A_quot.ring != ring:
        raise GroupMismatch("presentations over different rings")
    if coupling is None:
        coupling = GroupRingMatrix.zeros(ring, A_sub.rows, A_quot.cols)
    if coupling.shape != (A_sub.rows, A_quot.cols):
        raise ValueError("coupling block has the wrong shape")
    lower = GroupRingMatrix.zeros(ring, A_quot.rows, A_sub.cols)
    return GroupRingMatrix.block(A_sub, coupling, lower, A_quot)


def additivity_check(A_sub, A_quot, coupling=None, oracle=None):
    """dim M == dim L + dim N for the extension presented in block-triangular form.

    The caller is responsible for the block matrix presenting an extension
    0 -> L -> M -> N -> 0, i.e. L -> M injective after tensoring.
    """
    whole = dim_fp(PresentedModule(extension_matrix(A_sub, A_quot, coupling)), oracle)
    left = dim_fp(PresentedModule(A_sub), oracle)
    right = dim_fp(PresentedModule(A_quot), oracle)
    return whole.value == left.value + right.value


def induce_from_base(A, data):
    """Induce a presentation over the base group ring up to the crossed product."""
    if A.ring != data.base:
        raise GroupMismatch("matrix is not over the crossed product's base")
    return A.map(lambda r: CrossedProductElement.from_base(data, r), data)


def induce_from_acting(A, data):
    """Induce a presentation over C[H] up to C[base] * H via h -> mu(h).

    Needs a trivial cocycle so that mu restricted to H is a homomorphism.
    """
    if not data.finite or A.ring != data.acting:
        raise GroupMismatch("matrix is not over the finite acting group")
    if data.cocycle:
        raise UnsupportedGroup("mu is not multiplicative for a nontrivial cocycle")

    def lift(a):
        return CrossedProductElement(data, {h: GroupRingElement.scalar(data.base, c) for h, c in a.terms.items()})

    return A.map(lift, data)
