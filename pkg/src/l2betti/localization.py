"""Ore fractions, the Ore-failure certificate for the free group of rank 2,
Sigma-membership, Cramer's-rule witnesses and rational-closure linearization
for Laurent polynomial rings."""

from dataclasses import dataclass, field

from l2betti.dimension import rank_gamma
from l2betti.errors import NonSquare, UnsupportedGroup, UnsupportedOracle
from l2betti.group_ring import GroupRingElement, GroupRingMatrix, _mul_fn
from l2betti.groups import FreeAbelianGroup, FreeGroup, ball
from l2betti.scalars import (
    G1,
    LaurentPoly,
    RationalFunction,
    determinant,
    kernel_basis_sparse,
    matmul,
)


class OreSet:
    """A multiplicative subset T of a domain with a right Ore pair oracle.

    ``ore_pair(a, s)`` must return ``(b, t)`` with ``t`` in T and a*t == s*b.
    Commutative bases need no oracle: (a, s) itself is a witness.
    """

    def __init__(self, contains, commutative=True, ore_pair=None, one=None, name="T"):
        self.contains = contains
        self.commutative = commutative
        self._ore_pair = ore_pair
        self.one = one
        self.name = name

    def __contains__(self, x):
        return bool(x) and self.contains(x)

    def ore_pair(self, a, s):
        if self._ore_pair is not None:
            b, t = self._ore_pair(a, s)
            if t not in self or a * t != s * b:
                raise UnsupportedOracle("Ore pair oracle returned an invalid witness")
            return b, t
        if self.commutative:
            return a, s
        raise UnsupportedOracle(f"no Ore pair oracle for the noncommutative set {self.name}")

    @classmethod
    def powers_of(cls, x):
        """Nonnegative powers of a Laurent polynomial x (not a constant)."""
        if not isinstance(x, LaurentPoly) or x.is_constant():
            raise ValueError("powers_of needs a nonconstant Laurent polynomial")
        one = LaurentPoly.constant(x.nvars)
        return cls(lambda t: _is_power(t, x, one), commutative=True, one=one, name=f"powers of {x}")

    @classmethod
    def nonzero(cls, one):
        """All nonzero elements of a commutative domain."""
        return cls(lambda t: bool(t), commutative=True, one=one, name="nonzero elements")


def _is_power(t, x, one):
    if x.is_monomial():
        (e, c), = x.terms.items()
        if not t.is_monomial():
            return False
        (f, d), = t.terms.items()
        ks = {fi // ei for fi, ei in zip(f, e) if ei}
        if len(ks) != 1:
            return False
        k = ks.pop()
        return k >= 0 and x ** k == t
    span = [hi - lo for lo, hi in x.degree_box()]
    while t.terms:
        if t == one:
            return True
        tspan = [hi - lo for lo, hi in t.degree_box()]
        if all(a < b for a, b in zip(tspan, span) if b):
            return False
        try:
            t = t.exact_div(x)
        except ArithmeticError:
            return False
    return False


@dataclass(frozen=True)
class OreFraction:
    """The right fraction num * den^-1 with den in ``oreset``."""

    num: object
    den: object
    oreset: OreSet = field(compare=False)

    def __post_init__(self):
        if self.den not in self.oreset:
            raise ValueError(f"denominator {self.den} is not in {self.oreset.name}")

    def __add__(self, other):
        return ore_add(self, other)

    def __mul__(self, other):
        return ore_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, OreFraction):
            return NotImplemented
        return ore_eq(self, other)

    __hash__ = None

    def __str__(self):
        return f"({self.num}, {self.den})"


def _same_set(f, g):
    if f.oreset is not g.oreset:
        raise ValueError("fractions over different Ore sets")
    return f.oreset


def ore_eq(f, g):
    """(a, t) ~ (b, s) iff a*u == b*v for some u, v with t*u == s*v in T."""
    T = _same_set(f, g)
    a, t = f.num, f.den
    b, s = g.num, g.den
    if T.commutative and T._ore_pair is None:
        return a * s == b * t
    # Ore pair for (t, s): t*u == s*v with u in T, so t*u lies in T as well
    v, u = T.ore_pair(t, s)
    return a * u == b * v


def ore_add(f, g):
    T = _same_set(f, g)
    a, t = f.num, f.den
    b, s = g.num, g.den
    # s*tau == t*y with tau in T gives the common denominator t*y = s*tau
    y, tau = T.ore_pair(s, t)
    return OreFraction(a * y + b * tau, s * tau, T)


def ore_mul(f, g):
    T = _same_set(f, g)
    a, t = f.num, f.den
    b, s = g.num, g.den
    # t^-1 b = y tau^-1 from b*tau == t*y
    y, tau = T.ore_pair(b, t)
    return OreFraction(a * y, s * tau, T)


# ------------------------------------------------------- free group Ore failure


@dataclass
class OreFailureCertificate:
    radius: int
    kernel: list
    columns: tuple

    @property
    def certified(self):
        return not self.kernel

    @property
    def kernel_dimension(self):
        return len(self.kernel)


def ore_failure_certificate(radius=4, columns=None):
    """Exact kernel of (u, v) -> a*u + b*v on u, v supported in ball(radius).

    Defaults to (a, b) = (x-1, y-1) over the free group of rank 2.  The image
    of such pairs is supported in ball(radius + |a|, |b|), so this is a finite
    linear system over Q(i).  Kernel vectors are returned as pairs of group
    ring elements.
    """
    F = FreeGroup(2)
    if columns is None:
        x, y = (GroupRingElement.of(F, g) for g in ((1,), (2,)))
        columns = (x - 1, y - 1)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    F = columns[0].group
    dom = ball(F, radius)
    mul = _mul_fn(F)
    index = {}
    rows = {}
    ncols = len(columns) * len(dom)
    # build column-major then transpose into sparse rows keyed by target element
    for k, a in enumerate(columns):
        for j, g in enumerate(dom):
            col = k * len(dom) + j
            for h, c in a.terms.items():
                tgt = mul(h, g)
                i = index.setdefault(tgt, len(index))
                row = rows.setdefault(i, {})
                s = row.get(col, 0) + (c.re if not c.im else c)
                if s:
                    row[col] = s
                else:
                    row.pop(col)
    basis = kernel_basis_sparse([rows[i] for i in sorted(rows)], ncols)
    kernel = []
    for vec in basis:
        parts = []
        for k in range(len(columns)):
            terms = {g: vec[k * len(dom) + j] for j, g in enumerate(dom) if vec[k * len(dom) + j]}
            parts.append(GroupRingElement(F, terms))
        kernel.append(tuple(parts))
    return OreFailureCertificate(radius, kernel, tuple(columns))


# ----------------------------------------------------- Sigma and Cramer's rule


def _laurent_matrix(A):
    if isinstance(A, GroupRingMatrix):
        if not isinstance(A.ring, FreeAbelianGroup):
            raise UnsupportedGroup("Sigma-membership is decidable here only for free abelian groups")
        return [[a.to_laurent() for a in row] for row in A.entries]
    return [list(r) for r in A]


def sigma_member(A):
    """True iff the square Laurent matrix A becomes invertible over the affiliated operators,
    i.e. det(A) is a nonzero Laurent polynomial."""
    rows = _laurent_matrix(A)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare("Sigma-membership needs a square matrix")
    if n == 0:
        return True
    return not determinant(rows).is_zero()


@dataclass(frozen=True)
class SigmaVerdict:
    member: bool
    certainty: str


def sigma_verdict(A, oracle=None):
    """Sigma-membership for any supported group via rank_gamma; may be uncertified."""
    if A.rows != A.cols:
        raise NonSquare("Sigma-membership needs a square matrix")
    r = rank_gamma(A, oracle)
    return SigmaVerdict(r.value == A.rows, r.certainty)


@dataclass
class CramerWitness:
    """s * (1 ⊕ a) * [[1, x], [0, 1]] == b with s in Sigma and b over the base ring."""

    s: list
    a: list
    x: list
    b: list

    def one_plus_a(self):
        return _direct_one(self.a)

    def unipotent(self):
        c = len(self.a[0]) if self.a else 0
        nv = _nv(self.a)
        zero, one = RationalFunction.zero(nv), RationalFunction.one(nv)
        top = [one] + [RationalFunction(_rf(v, nv).num, _rf(v, nv).den) for v in self.x[0]]
        rest = [[zero] + [one if i == j else zero for j in range(c)] for i in range(c)]
        return [top] + rest

    def verify(self):
        nv = _nv(self.a)
        zero = RationalFunction.zero(nv)
        s = [[_rf(v, nv) for v in row] for row in self.s]
        lhs = matmul(matmul(s, self.one_plus_a(), zero), self.unipotent(), zero)
        b = [[_rf(v, nv) for v in row] for row in self.b]
        if len(lhs) != len(b) or any(len(r) != len(q) for r, q in zip(lhs, b)):
            return False
        return all(u == v for r, q in zip(lhs, b) for u, v in zip(r, q)) and sigma_member(self.s)


def _nv(a):
    for row in a:
        for v in row:
            if isinstance(v, (LaurentPoly, RationalFunction)):
                return v.nvars
    return 1


def _rf(v, nv):
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, LaurentPoly):
        return RationalFunction(v)
    return RationalFunction(LaurentPoly.constant(nv, v))


def _direct_one(a):
    nv = _nv(a)
    zero, one = RationalFunction.zero(nv), RationalFunction.one(nv)
    c = len(a[0]) if a else 0
    top = [one] + [zero] * c
    return [top] + [[zero] + [_rf(v, nv) for v in row] for row in a]


def cramer_factorize(a, nvars=None):
    """Canonical witness with x = 0 and s = diag(1, row denominator products)."""
    nv = nvars or _nv(a)
    a = [[_rf(v, nv) for v in row] for row in a]
    if a and len({len(r) for r in a}) != 1:
        raise ValueError("matrix is not rectangular")
    c = len(a[0]) if a else 0
    one = LaurentPoly.constant(nv)
    zero = LaurentPoly.zero(nv)
    diag = [one]
    b = [[one] + [zero] * c]
    for row in a:
        dens = []
        for v in row:
            if v.num.terms and not v.den.is_constant() and all(v.den != d for d in dens):
                dens.append(v.den)
        sd = one
        for d in dens:
            sd = sd * d
        diag.append(sd)
        brow = [zero]
        for v in row:
            if not v.num.terms:
                brow.append(zero)
                continue
            p = v.num
            if v.den.is_constant():
                p = p * v.den.terms[(0,) * nv].inverse()
                for d in dens:
                    p = p * d
            else:
                skipped = False
                for d in dens:
                    if not skipped and d == v.den:
                        skipped = True
                        continue
                    p = p * d
            brow.append(p)
        b.append(brow)
    size = len(diag)
    s = [[diag[i] if i == j else zero for j in range(size)] for i in range(size)]
    x = [[zero] * c]
    w = CramerWitness(s, a, x, b)
    if not w.verify():
        raise ArithmeticError("Cramer witness failed verification")
    return w


def rational_closure_linearize(f):
    """For f = p/q return M = [[q, -p], [0, 1]]; M^-1 = [[1/q, p/q], [0, 1]] holds f."""
    if isinstance(f, LaurentPoly):
        f = RationalFunction(f)
    if not isinstance(f, RationalFunction):
        raise TypeError("expected a rational function")
    nv = f.nvars
    M = [[f.den, -f.num], [LaurentPoly.zero(nv), LaurentPoly.constant(nv)]]
    return M


def linearization_inverse(f):
    """The closed-form inverse of :func:`rational_closure_linearize` (f at position (0, 1))."""
    nv = f.nvars
    q = RationalFunction(f.den)
    return [[q.inverse(), f], [RationalFunction.zero(nv), RationalFunction.one(nv)]]
