"""Group rings over Q(i), crossed products, matrices, the trace and the
regular representation."""

from fractions import Fraction

from l2betti.errors import GroupMismatch, NonRealTrace, NotIdempotent, UnsupportedGroup
from l2betti.groups import CrossedProductData, FiniteGroup, FreeAbelianGroup, FreeGroup
from l2betti.scalars import G0, G1, GaussianRational, LaurentPoly, format_gaussian, gaussian
from l2betti.values import DimensionValue

_SCALARS = (int, Fraction, GaussianRational)


def _mul_fn(group):
    if isinstance(group, FreeAbelianGroup):
        return lambda a, b: tuple(x + y for x, y in zip(a, b))
    if isinstance(group, FreeGroup):
        def mul(a, b):
            if not a or not b or a[-1] != -b[0]:
                return a + b
            i = 0
            n = min(len(a), len(b))
            while i < n and a[-1 - i] == -b[i]:
                i += 1
            return a[:len(a) - i] + b[i:]
        return mul
    if isinstance(group, FiniteGroup):
        table = group.table
        return lambda a, b: table[a][b]
    raise UnsupportedGroup(f"no group ring for {group!r}")


class GroupRingElement:
    """Finite formal sum of group elements with Gaussian-rational coefficients."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        clean = {}
        for g, c in (terms or {}).items():
            if not group.contains(g):
                raise GroupMismatch(f"{g!r} is not an element of {group}")
            c = gaussian(c)
            if c:
                clean[g] = c
        self.terms = clean

    @classmethod
    def _raw(cls, group, terms):
        a = cls.__new__(cls)
        a.group = group
        a.terms = terms
        return a

    @classmethod
    def zero(cls, group):
        return cls._raw(group, {})

    @classmethod
    def scalar(cls, group, c=1):
        c = gaussian(c)
        return cls._raw(group, {group.identity: c} if c else {})

    @classmethod
    def one(cls, group):
        return cls.scalar(group, 1)

    @classmethod
    def of(cls, group, g, c=1):
        return cls(group, {g: c})

    @classmethod
    def from_laurent(cls, group, p):
        if not isinstance(group, FreeAbelianGroup) or p.nvars != group.rank:
            raise GroupMismatch("Laurent polynomial does not match the group")
        return cls._raw(group, dict(p.terms))

    def to_laurent(self):
        if not isinstance(self.group, FreeAbelianGroup):
            raise UnsupportedGroup("only elements of free abelian group rings are Laurent polynomials")
        return LaurentPoly._raw(self.group.rank, dict(self.terms))

    def _lift(self, other):
        if isinstance(other, GroupRingElement):
            if other.group != self.group:
                raise GroupMismatch(f"group mismatch: {self.group} vs {other.group}")
            return other
        if isinstance(other, _SCALARS):
            return GroupRingElement.scalar(self.group, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = out.get(g, G0) + c
            if s:
                out[g] = s
            else:
                out.pop(g, None)
        return GroupRingElement._raw(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement._raw(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c = gaussian(other)
            if not c:
                return GroupRingElement.zero(self.group)
            return GroupRingElement._raw(self.group, {g: v * c for g, v in self.terms.items()})
        other = self._lift(other)
        if other is None:
            return NotImplemented
        mul = _mul_fn(self.group)
        out = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                k = mul(g, h)
                out[k] = out.get(k, G0) + a * b
        return GroupRingElement._raw(self.group, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self * other
        return NotImplemented

    def __truediv__(self, c):
        if not isinstance(c, _SCALARS):
            return NotImplemented
        return self * gaussian(c).inverse()

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are inverted by negative powers here")
            (g, c), = self.terms.items()
            inv = GroupRingElement._raw(self.group, {self.group.inverse(g): c.inverse()})
            return inv ** (-k)
        r = GroupRingElement.one(self.group)
        for _ in range(k):
            r = r * self
        return r

    def star(self):
        """The involution sum a_g g  ->  sum conj(a_g) g^-1."""
        inv = self.group.inverse
        return GroupRingElement._raw(self.group, {inv(g): c.conjugate() for g, c in self.terms.items()})

    def trace(self):
        return self.terms.get(self.group.identity, G0)

    def support(self):
        return sorted(self.terms, key=self.group.sort_key)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, GroupRingElement):
            return self.group == other.group and self.terms == other.terms
        if isinstance(other, _SCALARS):
            return self.terms == GroupRingElement.scalar(self.group, other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return element_str(self)

    def __repr__(self):
        return f"GroupRingElement({self})"


def element_str(a):
    if not a.terms:
        return "0"
    parts = []
    for g in a.support():
        c = a.terms[g]
        name = a.group.element_str(g)
        if name == "e":
            parts.append(format_gaussian(c))
        elif c == 1:
            parts.append(name)
        elif c == -1:
            parts.append("-" + name)
        elif c.re and c.im:
            parts.append(f"({format_gaussian(c)})*{name}")
        else:
            parts.append(f"{format_gaussian(c)}*{name}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _apply_action(data, h, r):
    act = data.act
    return GroupRingElement._raw(data.base, {act(h, g): c for g, c in r.terms.items()})


def _apply_inverse_action(data, h, r):
    act = data.act_inverse
    return GroupRingElement._raw(data.base, {act(h, g): c for g, c in r.terms.items()})


def _tau_element(data, h1, h2):
    c, g = data.tau(h1, h2)
    return GroupRingElement._raw(data.base, {g: c})


class CrossedProductElement:
    """Element sum_h r_h mu(h) of a crossed product, stored H-graded."""

    __slots__ = ("data", "terms")

    def __init__(self, data, terms=None):
        self.data = data
        clean = {}
        for h, r in (terms or {}).items():
            if not data.acting.contains(h):
                raise GroupMismatch(f"{h!r} is not an element of {data.acting}")
            if isinstance(r, _SCALARS):
                r = GroupRingElement.scalar(data.base, r)
            if r.group != data.base:
                raise GroupMismatch("coefficient is not in the base group ring")
            if r.terms:
                clean[h] = r
        self.terms = clean

    @classmethod
    def _raw(cls, data, terms):
        a = cls.__new__(cls)
        a.data = data
        a.terms = terms
        return a

    @property
    def group(self):
        return self.data

    @classmethod
    def zero(cls, data):
        return cls._raw(data, {})

    @classmethod
    def scalar(cls, data, c=1):
        r = GroupRingElement.scalar(data.base, c)
        return cls._raw(data, {data.acting.identity: r} if r.terms else {})

    @classmethod
    def one(cls, data):
        return cls.scalar(data, 1)

    @classmethod
    def from_base(cls, data, r):
        return cls(data, {data.acting.identity: r})

    @classmethod
    def mu(cls, data, h):
        return cls(data, {h: GroupRingElement.one(data.base)})

    @classmethod
    def of(cls, data, g, c=1):
        """The group element g = (base element, h) as base_element * mu(h)."""
        b, h = g
        return cls(data, {h: GroupRingElement.of(data.base, b, c)})

    def _lift(self, other):
        if isinstance(other, CrossedProductElement):
            if other.data is not self.data:
                raise GroupMismatch("crossed products differ")
            return other
        if isinstance(other, _SCALARS):
            return CrossedProductElement.scalar(self.data, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for h, r in other.terms.items():
            s = out[h] + r if h in out else r
            if s.terms:
                out[h] = s
            else:
                out.pop(h, None)
        return CrossedProductElement._raw(self.data, out)

    __radd__ = __add__

    def __neg__(self):
        return CrossedProductElement._raw(self.data, {h: -r for h, r in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return CrossedProductElement._raw(
                self.data, {h: r * other for h, r in self.terms.items() if (r * other).terms})
        other = self._lift(other)
        if other is None:
            return NotImplemented
        data = self.data
        out = {}
        for h1, r1 in self.terms.items():
            for h2, r2 in other.terms.items():
                # (r1 mu(h1)) (r2 mu(h2)) = r1 c_{h1}(r2) tau(h1,h2) mu(h1 h2)
                prod = r1 * _apply_action(data, h1, r2) * _tau_element(data, h1, h2)
                h = data.acting.multiply(h1, h2)
                out[h] = out[h] + prod if h in out else prod
        return CrossedProductElement._raw(data, {h: r for h, r in out.items() if r.terms})

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self * other
        return NotImplemented

    def __truediv__(self, c):
        if not isinstance(c, _SCALARS):
            return NotImplemented
        return self * gaussian(c).inverse()

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are inverted by negative powers here")
            (h, r), = self.terms.items()
            if len(r.terms) != 1:
                raise ValueError("only monomials are inverted by negative powers here")
            (g, c), = r.terms.items()
            inv = CrossedProductElement.of(self.data, self.data.inverse((g, h)), c.inverse())
            return inv ** (-k)
        out = CrossedProductElement.one(self.data)
        for _ in range(k):
            out = out * self
        return out

    def trace(self):
        r = self.terms.get(self.data.acting.identity)
        return r.trace() if r is not None else G0

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, CrossedProductElement):
            return self.data is other.data and self.terms == other.terms
        if isinstance(other, _SCALARS):
            return self.terms == CrossedProductElement.scalar(self.data, other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((h, hash(r)) for h, r in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        data = self.data
        for h in sorted(self.terms, key=data.acting.sort_key):
            r = self.terms[h]
            hs = data.acting_str(h)
            rs = element_str(r)
            if not hs:
                parts.append(rs if len(r.terms) == 1 else f"({rs})")
            elif len(r.terms) == 1 and rs in ("1", "-1"):
                parts.append(hs if rs == "1" else "-" + hs)
            elif len(r.terms) == 1:
                parts.append(f"{rs}*{hs}")
            else:
                parts.append(f"({rs})*{hs}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"CrossedProductElement({self})"


def ring_zero(ring):
    if isinstance(ring, CrossedProductData):
        return CrossedProductElement.zero(ring)
    return GroupRingElement.zero(ring)


def ring_one(ring):
    if isinstance(ring, CrossedProductData):
        return CrossedProductElement.one(ring)
    return GroupRingElement.one(ring)


def ring_scalar(ring, c):
    if isinstance(ring, CrossedProductData):
        return CrossedProductElement.scalar(ring, c)
    return GroupRingElement.scalar(ring, c)


class GroupRingMatrix:
    """Rectangular matrix over a group ring (or crossed product).

    Matrices act on column vectors from the left; with the right-module
    convention an n x m matrix is the map R^m -> R^n.
    """

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, entries, rows=None, cols=None):
        entries = [list(r) for r in entries]
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        zero = ring_zero(ring)
        fixed = []
        for r in entries:
            row = []
            for x in r:
                if isinstance(x, _SCALARS):
                    x = ring_scalar(ring, x)
                elif isinstance(x, LaurentPoly):
                    x = GroupRingElement.from_laurent(ring, x)
                if type(x) is not type(zero) or x.group != ring:
                    raise GroupMismatch(f"entry {x!r} is not over {ring}")
                row.append(x)
            fixed.append(tuple(row))
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = tuple(fixed)

    @classmethod
    def zeros(cls, ring, rows, cols):
        z = ring_zero(ring)
        return cls(ring, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring_zero(ring), ring_one(ring)
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _check(self, other):
        if not isinstance(other, GroupRingMatrix):
            raise TypeError("expected a GroupRingMatrix")
        if other.ring != self.ring:
            raise GroupMismatch("matrices over different rings")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return GroupRingMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                               self.rows, self.cols)

    def __neg__(self):
        return GroupRingMatrix(self.ring, [[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = ring_zero(self.ring)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                s = zero
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.terms and b.terms:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return GroupRingMatrix(self.ring, out, self.rows, other.cols)

    def scale(self, c):
        return GroupRingMatrix(self.ring, [[a * c for a in r] for r in self.entries], self.rows, self.cols)

    def star(self):
        """Conjugate transpose (entrywise involution)."""
        return GroupRingMatrix(self.ring, [[self.entries[i][j].star() for i in range(self.rows)]
                                           for j in range(self.cols)], self.cols, self.rows)

    def transpose(self):
        return GroupRingMatrix(self.ring, [[self.entries[i][j] for i in range(self.rows)]
                                           for j in range(self.cols)], self.cols, self.rows)

    def is_zero(self):
        return all(not a.terms for r in self.entries for a in r)

    def hstack(self, other):
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return GroupRingMatrix(self.ring, [list(a) + list(b) for a, b in zip(self.entries, other.entries)],
                               self.rows, self.cols + other.cols)

    def vstack(self, other):
        self._check(other)
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return GroupRingMatrix(self.ring, list(self.entries) + list(other.entries),
                               self.rows + other.rows, self.cols)

    @classmethod
    def block(cls, top_left, top_right, bottom_left, bottom_right):
        top = top_left.hstack(top_right)
        bottom = bottom_left.hstack(bottom_right)
        return top.vstack(bottom)

    def direct_sum(self, other):
        z1 = GroupRingMatrix.zeros(self.ring, self.rows, other.cols)
        z2 = GroupRingMatrix.zeros(self.ring, other.rows, self.cols)
        return GroupRingMatrix.block(self, z1, z2, other)

    def map(self, f, ring=None):
        return GroupRingMatrix(ring or self.ring, [[f(a) for a in r] for r in self.entries], self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, GroupRingMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def to_rows_str(self):
        return ["[" + ", ".join(str(a) for a in r) + "]" for r in self.entries]

    def __str__(self):
        return "[" + ", ".join(self.to_rows_str()) + "]"

    def __repr__(self):
        return f"GroupRingMatrix({self.rows}x{self.cols} over {self.ring}: {self})"


# ---------------------------------------------------------------- operations


def trace(a):
    """Coefficient of the group identity."""
    return a.trace()


def trace_property_check(a, b):
    if a.group != b.group:
        raise GroupMismatch("elements over different groups")
    return (a * b).trace() == (b * a).trace()


def dim_from_idempotent(p):
    """Sum of the traces of the diagonal of an exact idempotent matrix."""
    if isinstance(p, (GroupRingElement, CrossedProductElement)):
        p = GroupRingMatrix(p.group, [[p]])
    if p.rows != p.cols:
        raise NotIdempotent("idempotent must be a square matrix")
    if p @ p != p:
        raise NotIdempotent("p @ p != p")
    total = G0
    for i in range(p.rows):
        total = total + p.entries[i][i].trace()
    if total.im:
        raise NonRealTrace(f"trace sum {total} has nonzero imaginary part")
    if not 0 <= total.re <= p.rows:
        raise NonRealTrace(f"trace sum {total} lies outside [0, {p.rows}]")
    return DimensionValue(total.re, "idempotent")


def regular_representation(a, over=None):
    """Restriction to the base ring along R*H > R (or C[G] > C for finite G).

    Left multiplication by ``a`` on the free right base-module with basis
    mu(H) is the |H| x |H| matrix with entry at (h*k, k) equal to
    act_{hk}^{-1}(r_h tau(h, k)).  Matrices are blown up blockwise.  For a
    finite group the result is a list of rows of GaussianRational; for a
    crossed product it is a GroupRingMatrix over the base group.
    """
    if isinstance(a, GroupRingMatrix):
        ring = a.ring
        blocks = [[regular_representation(x, over) for x in row] for row in a.entries]
        if isinstance(ring, FiniteGroup):
            n = ring.order
            out = [[G0] * (a.cols * n) for _ in range(a.rows * n)]
            for i, row in enumerate(blocks):
                for j, blk in enumerate(row):
                    for u in range(n):
                        for v in range(n):
                            out[i * n + u][j * n + v] = blk[u][v]
            return out
        if isinstance(ring, CrossedProductData):
            n = ring.acting.order
            z = GroupRingElement.zero(ring.base)
            out = [[z] * (a.cols * n) for _ in range(a.rows * n)]
            for i, row in enumerate(blocks):
                for j, blk in enumerate(row):
                    for u in range(n):
                        for v in range(n):
                            out[i * n + u][j * n + v] = blk.entries[u][v]
            return GroupRingMatrix(ring.base, out, a.rows * n, a.cols * n)
        raise UnsupportedGroup(f"no finite-index base declared for {ring}")

    if isinstance(a, GroupRingElement):
        G = a.group
        if not isinstance(G, FiniteGroup):
            raise UnsupportedGroup(f"no finite-index base declared for {G}")
        if over is not None and not (isinstance(over, FiniteGroup) and over.order == 1):
            raise UnsupportedGroup("finite groups restrict only to the trivial subgroup")
        n = G.order
        out = [[G0] * n for _ in range(n)]
        for h, c in a.terms.items():
            for k in range(n):
                out[G.table[h][k]][k] = out[G.table[h][k]][k] + c
        return out

    if isinstance(a, CrossedProductElement):
        data = a.data
        if not data.finite:
            raise UnsupportedGroup("acting group is infinite; the base has infinite index")
        if over is not None and over != data.base:
            raise UnsupportedGroup("crossed products restrict only to their declared base")
        H = data.acting
        n = H.order
        base = data.base
        z = GroupRingElement.zero(base)
        out = [[z] * n for _ in range(n)]
        for h, r in a.terms.items():
            for k in range(n):
                hk = H.multiply(h, k)
                entry = _apply_inverse_action(data, hk, r * _tau_element(data, h, k))
                out[hk][k] = out[hk][k] + entry
        return GroupRingMatrix(base, out, n, n)

    raise TypeError(f"cannot restrict {a!r}")
