"""L2-Betti numbers, Euler characteristics and Tor dimensions of finite free
chain complexes over group rings."""

from dataclasses import dataclass, field
from fractions import Fraction

from l2betti.dimension import PresentedModule, engine_name, rank_gamma
from l2betti.errors import InvalidComplex, InvalidResolution
from l2betti.group_ring import GroupRingMatrix
from l2betti.groups import CrossedProductData, FiniteGroup, FreeAbelianGroup, FreeGroup
from l2betti.values import EXACT, DimensionValue

GENERIC_CAVEAT = "resolution validated generically"


class FreeChainComplex:
    """Free complex 0 <- R^{n_0} <- R^{n_1} <- ... <- R^{n_N}.

    ``differentials[p]`` (p = 1..N) is the n_{p-1} x n_p matrix of d_p.
    Missing differentials between nonzero ranks are an error; between zero
    ranks they are filled with empty matrices.
    """

    def __init__(self, ring, ranks, differentials=None, check=True):
        ranks = [int(n) for n in ranks]
        if not ranks or any(n < 0 for n in ranks):
            raise InvalidComplex("ranks must be a nonempty list of nonnegative integers")
        differentials = dict(differentials or {})
        self.ring = ring
        self.ranks = ranks
        self.d = {}
        for p in range(1, len(ranks)):
            shape = (ranks[p - 1], ranks[p])
            m = differentials.pop(p, None)
            if m is None:
                if shape[0] and shape[1]:
                    raise InvalidComplex(f"missing differential d{p}")
                m = GroupRingMatrix.zeros(ring, *shape)
            if m.ring != ring:
                raise InvalidComplex(f"d{p} is over a different ring")
            if m.shape != shape:
                raise InvalidComplex(f"d{p} has shape {m.shape}, expected {shape}")
            self.d[p] = m
        if differentials:
            raise InvalidComplex(f"differentials in degrees {sorted(differentials)} exceed the complex length")
        if check:
            self.check()

    @property
    def length(self):
        return len(self.ranks) - 1

    def check(self):
        for p in range(1, self.length):
            if not (self.d[p] @ self.d[p + 1]).is_zero():
                raise InvalidComplex(f"d{p} d{p + 1} != 0")

    def differential(self, p):
        return self.d.get(p)

    def shifted(self, k=1):
        """Complex moved up k degrees (zero modules below); differentials are negated per shift."""
        ranks = [0] * k + self.ranks
        sign = -1 if k % 2 else 1
        d = {p + k: (self.d[p].scale(sign) if sign < 0 else self.d[p]) for p in self.d}
        return FreeChainComplex(self.ring, ranks, d, check=False)

    def euler_of_ranks(self):
        return sum((-1) ** p * n for p, n in enumerate(self.ranks))


@dataclass
class BettiReport:
    betti: list
    euler: Fraction
    ranks: list
    engines: set = field(default_factory=set)

    @property
    def exact(self):
        return all(b.exact for b in self.betti)

    def __getitem__(self, p):
        return self.betti[p]


def _ranks(C, oracle):
    """r_p = rank_gamma(d_p) for p = 0..N+1 with r_0 = r_{N+1} = 0."""
    engine = engine_name(C.ring)
    r = [DimensionValue(0, engine)]
    for p in range(1, C.length + 1):
        r.append(rank_gamma(C.d[p], oracle))
    r.append(DimensionValue(0, engine))
    return r


def l2_betti(C, oracle=None):
    """b_p = n_p - r_p - r_{p+1}.

    Over the regular surrogate the homology splits off, so this equals the
    dimension of the p-th homology after tensoring up.
    """
    r = _ranks(C, oracle)
    betti = []
    for p, n in enumerate(C.ranks):
        v = n - r[p].value - r[p + 1].value
        exact = r[p].exact and r[p + 1].exact
        if v < 0:
            raise InvalidComplex(f"negative Betti number in degree {p}; is d∘d = 0?")
        betti.append(DimensionValue(v, engine_name(C.ring), EXACT if exact else "monte-carlo"))
    chi = sum(((-1) ** p * b.value for p, b in enumerate(betti)), Fraction(0))
    report = BettiReport(betti, chi, list(C.ranks), {x.engine for x in r})
    if report.exact and chi != C.euler_of_ranks():
        raise InvalidComplex("Euler characteristic of Betti numbers differs from that of ranks")
    return report


def euler(C, oracle=None):
    return l2_betti(C, oracle).euler


def _flat_surrogate(ring):
    # groups whose surrogate is an Ore localization: exactness survives tensoring
    if isinstance(ring, (FreeAbelianGroup, FiniteGroup)):
        return True
    if isinstance(ring, CrossedProductData):
        return ring.finite and _flat_surrogate(ring.base)
    if isinstance(ring, FreeGroup):
        return ring.rank == 1
    return False


@dataclass
class TorReport:
    """Tor_p(M; surrogate) dimensions; degrees past the resolution are zero."""

    dims: list
    notes: list = field(default_factory=list)

    def __getitem__(self, p):
        if p < len(self.dims):
            return self.dims[p]
        return DimensionValue(0, self.dims[0].engine if self.dims else "trivial")

    def __len__(self):
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)


def validate_resolution(M, R, oracle=None):
    """Check d∘d = 0, the augmentation, and generic exactness where it is testable."""
    if R.ring != M.group:
        raise InvalidResolution("resolution and module are over different rings")
    try:
        R.check()
    except InvalidComplex as exc:
        raise InvalidResolution(str(exc)) from None
    if R.ranks[0] != M.n:
        raise InvalidResolution("resolution does not augment onto the module's generators")
    d1 = R.d.get(1) if R.length >= 1 else GroupRingMatrix.zeros(R.ring, R.ranks[0], 0)
    if d1.cols == M.m:
        if d1 != M.matrix:
            raise InvalidResolution("d1 differs from the module's presentation matrix")
    elif not (M.matrix.is_zero() and d1.is_zero()):
        raise InvalidResolution("d1 differs from the module's presentation matrix")
    notes = [GENERIC_CAVEAT]
    r = _ranks(R, oracle)
    if _flat_surrogate(R.ring):
        for p in range(1, R.length + 1):
            if r[p].value + r[p + 1].value != R.ranks[p]:
                raise InvalidResolution(f"resolution is not exact in degree {p} over the surrogate field")
    else:
        notes.append("exactness not testable over a non-flat surrogate")
    return r, notes


def tor_dims(M, R, oracle=None):
    """dim Tor_p(M; surrogate) from a supplied free resolution R of M."""
    if isinstance(M, GroupRingMatrix):
        M = PresentedModule(M)
    r, notes = validate_resolution(M, R, oracle)
    engine = engine_name(R.ring)
    dims = []
    for p, n in enumerate(R.ranks):
        v = n - r[p].value - r[p + 1].value
        exact = r[p].exact and r[p + 1].exact
        dims.append(DimensionValue(v, engine, EXACT if exact else "monte-carlo"))
    if isinstance(R.ring, FreeGroup) and R.length <= 1:
        notes.append("length-1 resolution: Tor_p = 0 for p >= 2")
    return TorReport(dims, notes)


def uct_check(C, homology, oracle=None):
    """Check b_n = dim(H_n ⊗) + dim Tor_1(H_{n-1}) in every degree.

    ``homology`` maps a degree n to ``(module, resolution)`` for H_n(C); a
    missing degree means H_n(C) = 0.
    """
    betti = l2_betti(C, oracle).betti
    tor = {}
    for n, (module, resolution) in homology.items():
        tor[n] = tor_dims(module, resolution, oracle)
    ok = True
    for n, b in enumerate(betti):
        h0 = tor[n][0].value if n in tor else 0
        t1 = tor[n - 1][1].value if (n - 1) in tor else 0
        if b.value != h0 + t1:
            ok = False
    return ok
