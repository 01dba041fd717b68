"""Concrete group models: finite groups given by tables, free abelian groups,
free groups and crossed-product data."""

from fractions import Fraction
from itertools import product
from math import lcm
import re

from l2betti.errors import GroupMismatch, InvalidCrossedProduct, ParseError
from l2betti.scalars import G1, GaussianRational, gaussian, variable_names


class FiniteGroup:
    """A finite group given by its multiplication table on indices 0..order-1."""

    def __init__(self, table, names=None, generators=None, label=None):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise ValueError("multiplication table must be a nonempty square array")
        if any(not 0 <= x < n for row in table for x in row):
            raise ValueError("table entries out of range")
        self.table = table
        self.order = n
        ident = [e for e in range(n) if all(table[e][a] == a == table[a][e] for a in range(n))]
        if not ident:
            raise ValueError("table has no identity element")
        self.identity = ident[0]
        inv = []
        for a in range(n):
            b = [b for b in range(n) if table[a][b] == self.identity]
            if len(b) != 1 or table[b[0]][a] != self.identity:
                raise ValueError(f"element {a} has no two-sided inverse")
            inv.append(b[0])
        self.inverses = tuple(inv)
        if n <= 64:
            for a, b, c in product(range(n), repeat=3):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise ValueError(f"table is not associative at ({a}, {b}, {c})")
        self.names = tuple(names) if names else None
        # generator name -> element index, used by the element parser
        self.generators = dict(generators or {})
        self.label = label or f"finite table {n}"

    @classmethod
    def cyclic(cls, n):
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        gens = {"g": 1 % n} if n > 1 else {}
        return cls(table, generators=gens, label=f"finite cyclic {n}")

    @classmethod
    def dihedral(cls, n):
        """Dihedral group of order 2n; element r^k s^f has index k + n*f."""
        def mul(a, b):
            k1, f1 = a % n, a // n
            k2, f2 = b % n, b // n
            k = (k1 + (-k2 if f1 else k2)) % n
            return k + n * ((f1 + f2) % 2)
        table = [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]
        return cls(table, generators={"r": 1 % n, "s": n}, label=f"finite dihedral {n}")

    def elements(self):
        return list(range(self.order))

    def contains(self, g):
        return isinstance(g, int) and 0 <= g < self.order

    def multiply(self, a, b):
        if not (self.contains(a) and self.contains(b)):
            raise GroupMismatch(f"{a!r} or {b!r} is not an element of {self}")
        return self.table[a][b]

    def inverse(self, a):
        return self.inverses[a]

    def power(self, a, k):
        if k < 0:
            a, k = self.inverses[a], -k
        r = self.identity
        for _ in range(k):
            r = self.table[r][a]
        return r

    def sort_key(self, g):
        return g

    def is_torsionfree(self):
        return self.order == 1

    def subgroups(self):
        """All subgroups as frozensets of indices (exhaustive closure search)."""
        def closure(gens):
            sub = {self.identity}
            frontier = list(gens)
            while frontier:
                g = frontier.pop()
                if g in sub:
                    continue
                sub.add(g)
                for h in list(sub):
                    for p in (self.table[g][h], self.table[h][g]):
                        if p not in sub:
                            frontier.append(p)
            return frozenset(sub)

        found = {frozenset([self.identity])}
        todo = list(found)
        while todo:
            s = todo.pop()
            for g in range(self.order):
                if g not in s:
                    t = closure(set(s) | {g})
                    if t not in found:
                        found.add(t)
                        todo.append(t)
        return found

    def element_str(self, g):
        if self.names:
            return self.names[g]
        if g == self.identity:
            return "e"
        for name, idx in self.generators.items():
            if idx == g:
                return name
        # express as a word in the generators when it is short
        word = self._word(g)
        return word if word is not None else f"#{g}"

    def _word(self, g):
        gens = sorted(self.generators.items())
        if not gens:
            return None
        seen = {self.identity: ""}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for name, idx in gens:
                    b = self.table[a][idx]
                    if b not in seen:
                        seen[b] = (seen[a] + "*" if seen[a] else "") + name
                        nxt.append(b)
            frontier = nxt
        return seen.get(g)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.label})"

    def __str__(self):
        return self.label


class FreeAbelianGroup:
    """Z^n with elements as integer exponent tuples."""

    def __init__(self, rank):
        if rank < 1:
            raise ValueError("free abelian rank must be at least 1")
        self.rank = rank
        self.identity = (0,) * rank
        self.names = variable_names(rank)
        self.generators = {n: tuple(int(i == k) for i in range(rank)) for k, n in enumerate(self.names)}
        self.label = f"abelian {rank}"

    def contains(self, g):
        return isinstance(g, tuple) and len(g) == self.rank and all(isinstance(x, int) for x in g)

    def multiply(self, a, b):
        if not (self.contains(a) and self.contains(b)):
            raise GroupMismatch(f"{a!r} or {b!r} is not an element of {self}")
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a):
        return tuple(-x for x in a)

    def power(self, a, k):
        return tuple(k * x for x in a)

    def sort_key(self, g):
        return g

    def is_torsionfree(self):
        return True

    def element_str(self, g):
        if not any(g):
            return "e"
        return "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, g) if k)

    def __eq__(self, other):
        return isinstance(other, FreeAbelianGroup) and self.rank == other.rank

    def __hash__(self):
        return hash(("abelian", self.rank))

    def __repr__(self):
        return f"FreeAbelianGroup({self.rank})"

    def __str__(self):
        return self.label


FREE_NAMES = ("x", "y", "z", "w")


class FreeGroup:
    """Free group of rank k.

    Elements are reduced words: tuples of nonzero ints, where ``j`` stands for
    generator j (1-based) and ``-j`` for its inverse.
    """

    def __init__(self, rank):
        if rank < 1:
            raise ValueError("free group rank must be at least 1")
        self.rank = rank
        self.identity = ()
        self.names = FREE_NAMES[:rank] if rank <= len(FREE_NAMES) else tuple(f"x{k + 1}" for k in range(rank))
        self.generators = {n: (k + 1,) for k, n in enumerate(self.names)}
        self.label = f"free {rank}"

    def contains(self, g):
        if not isinstance(g, tuple):
            return False
        for a, b in zip(g, g[1:]):
            if a == -b:
                return False
        return all(isinstance(x, int) and x and abs(x) <= self.rank for x in g)

    def multiply(self, a, b):
        if not (self.contains(a) and self.contains(b)):
            raise GroupMismatch(f"{a!r} or {b!r} is not a reduced word in {self}")
        return reduce_word(a + b) if a and b and a[-1] == -b[0] else a + b

    def inverse(self, a):
        return tuple(-x for x in reversed(a))

    def power(self, a, k):
        if k < 0:
            a, k = self.inverse(a), -k
        r = ()
        for _ in range(k):
            r = reduce_word(r + a)
        return r

    def sort_key(self, g):
        return (len(g), tuple((abs(x), x < 0) for x in g))

    def is_torsionfree(self):
        return True

    def letters(self):
        """Generators and inverses in the order x, x^-1, y, y^-1, ..."""
        out = []
        for k in range(1, self.rank + 1):
            out += [k, -k]
        return out

    def element_str(self, g):
        if not g:
            return "e"
        parts = []
        i = 0
        while i < len(g):
            j = i
            while j < len(g) and g[j] == g[i]:
                j += 1
            n = self.names[abs(g[i]) - 1]
            k = (j - i) * (1 if g[i] > 0 else -1)
            parts.append(n if k == 1 else f"{n}^{k}")
            i = j
        return "*".join(parts)

    def __eq__(self, other):
        return isinstance(other, FreeGroup) and self.rank == other.rank

    def __hash__(self):
        return hash(("free", self.rank))

    def __repr__(self):
        return f"FreeGroup({self.rank})"

    def __str__(self):
        return self.label


def reduce_word(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def ball(group, radius):
    """All reduced words of length <= radius, in shortlex order."""
    if not isinstance(group, FreeGroup):
        raise TypeError("ball is defined for free groups")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    letters = group.letters()
    out = [()]
    layer = [()]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        out += nxt
        layer = nxt
    return out


# ------------------------------------------------------------- crossed products


class CrossedProductData:
    """Data for a crossed product R*H with R the group ring of ``base``.

    ``action[h]`` is an automorphism of the base group: an integer matrix
    (tuple of rows, acting on exponent column vectors) for a free abelian base,
    or a permutation tuple for a finite base.  ``cocycle[(h, h2)]`` is a unit
    ``(coefficient, base element)`` of the base group ring; missing pairs mean
    the unit 1.  For an infinite cyclic acting group only the generator's
    automorphism is given (key 1) and the cocycle must be trivial.

    ``orders`` is the declared set of finite-subgroup orders of the resulting group.
    """

    def __init__(self, base, acting, action, cocycle=None, orders=None, names=None, label=None):
        if not isinstance(base, (FreeAbelianGroup, FiniteGroup)):
            raise InvalidCrossedProduct("base must be a free abelian or finite group")
        if not (isinstance(acting, FiniteGroup) or (isinstance(acting, FreeAbelianGroup) and acting.rank == 1)):
            raise InvalidCrossedProduct("acting group must be finite or infinite cyclic")
        self.base = base
        self.acting = acting
        self.finite = isinstance(acting, FiniteGroup)
        self.cocycle = {}
        for key, val in (cocycle or {}).items():
            c, g = val
            c = gaussian(c)
            if not c or not base.contains(g):
                raise InvalidCrossedProduct(f"cocycle value at {key} is not a unit")
            if not (c == 1 and g == base.identity):
                self.cocycle[key] = (c, g)
        self.action = {}
        if self.finite:
            for h in acting.elements():
                self.action[h] = _normalize_aut(base, action.get(h) if h != acting.identity else action.get(h, None))
        else:
            if self.cocycle:
                raise InvalidCrossedProduct("only trivial cocycles are supported for infinite cyclic H")
            gen = action.get(1) if 1 in action else action.get((1,))
            self.action[1] = _normalize_aut(base, gen)
        self.orders = frozenset(orders) if orders is not None else None
        self.names = dict(names or {})
        self.label = label or f"crossed product of {base} by {acting}"
        self._inverse_action = {h: _invert_aut(base, a) for h, a in self.action.items()}
        self.validate()

    @property
    def order_of_acting(self):
        return self.acting.order if self.finite else None

    @property
    def identity(self):
        return (self.base.identity, self.acting.identity)

    def acting_elements(self):
        if not self.finite:
            raise InvalidCrossedProduct("infinite cyclic acting group has no finite element list")
        return self.acting.elements()

    def _aut(self, h):
        if self.finite:
            return self.action[h]
        (k,) = h
        return _aut_power(self.base, self.action[1], k)

    def act(self, h, g):
        """Image of the base element g under conjugation by mu(h)."""
        return _apply_aut(self.base, self._aut(h), g)

    def act_inverse(self, h, g):
        a = _invert_aut(self.base, self._aut(h)) if not self.finite else self._inverse_action[h]
        return _apply_aut(self.base, a, g)

    def tau(self, h1, h2):
        return self.cocycle.get((h1, h2), (G1, self.base.identity))

    def acting_multiply(self, h1, h2):
        return self.acting.multiply(h1, h2)

    def validate(self):
        base = self.base
        if not self.finite:
            return
        H = self.acting
        e = H.identity
        if self.action[e] != _identity_aut(base):
            raise InvalidCrossedProduct("the identity of H must act trivially")
        for h in H.elements():
            if self.tau(e, h) != (G1, base.identity) or self.tau(h, e) != (G1, base.identity):
                raise InvalidCrossedProduct("cocycle must be normalized: tau(e, h) = tau(h, e) = 1")
        gens = list(base.generators.values()) or [base.identity]
        for a, b in product(H.elements(), repeat=2):
            ab = H.multiply(a, b)
            ca, ga = self.tau(a, b)
            # mu(a) mu(b) r = tau(a,b) mu(ab) r  forces  act_a act_b = conj(tau(a,b)) act_ab
            for g in gens:
                lhs = self.act(a, self.act(b, g))
                rhs = base.multiply(base.multiply(ga, self.act(ab, g)), base.inverse(ga))
                if lhs != rhs:
                    raise InvalidCrossedProduct(f"action is not compatible with the cocycle at ({a}, {b})")
        for a, b, c in product(H.elements(), repeat=3):
            ab, bc = H.multiply(a, b), H.multiply(b, c)
            c1, g1 = self.tau(a, b)
            c2, g2 = self.tau(ab, c)
            c3, g3 = self.tau(b, c)
            c4, g4 = self.tau(a, bc)
            left = (c1 * c2, base.multiply(g1, g2))
            right = (c3 * c4, base.multiply(self.act(a, g3), g4))
            if left != right:
                raise InvalidCrossedProduct(f"cocycle identity fails at ({a}, {b}, {c})")

    def contains(self, g):
        return (isinstance(g, tuple) and len(g) == 2 and self.base.contains(g[0])
                and (self.acting.contains(g[1])))

    def multiply(self, a, b):
        """Product of group elements g*mu(h); needs the cocycle to be group valued."""
        if not (self.contains(a) and self.contains(b)):
            raise GroupMismatch(f"{a!r} or {b!r} is not an element of {self}")
        g1, h1 = a
        g2, h2 = b
        c, t = self.tau(h1, h2)
        if c != 1:
            raise InvalidCrossedProduct("cocycle has non-group values; no group law")
        base = self.base
        g = base.multiply(base.multiply(g1, self.act(h1, g2)), t)
        return (g, self.acting.multiply(h1, h2))

    def inverse(self, a):
        g, h = a
        hi = self.acting.inverse(h)
        # (g mu(h))^-1 = mu(h)^-1 g^-1 ; mu(h)^-1 = tau(hi, h)^-1 mu(hi)
        c, t = self.tau(hi, h)
        if c != 1:
            raise InvalidCrossedProduct("cocycle has non-group values; no group law")
        base = self.base
        # solve (x, hi) * (g, h) = identity for x
        inner = base.multiply(self.act(hi, g), t)
        return (base.inverse(inner), hi)

    def sort_key(self, g):
        return (self.base.sort_key(g[0]), self.acting.sort_key(g[1]))

    def acting_str(self, h):
        if h == self.acting.identity:
            return ""
        for name, idx in self.names.items():
            if idx == h:
                return name
        return self.acting.element_str(h)

    def __repr__(self):
        return f"CrossedProductData({self.label})"

    def __str__(self):
        return self.label


def _identity_aut(base):
    if isinstance(base, FreeAbelianGroup):
        return tuple(tuple(int(i == j) for j in range(base.rank)) for i in range(base.rank))
    return tuple(range(base.order))


def _normalize_aut(base, aut):
    if aut is None:
        return _identity_aut(base)
    if isinstance(base, FreeAbelianGroup):
        m = tuple(tuple(int(x) for x in row) for row in aut)
        if len(m) != base.rank or any(len(r) != base.rank for r in m):
            raise InvalidCrossedProduct("automorphism matrix has the wrong size")
        if abs(_int_det(m)) != 1:
            raise InvalidCrossedProduct("automorphism matrix is not invertible over Z")
        return m
    p = tuple(int(x) for x in aut)
    if sorted(p) != list(range(base.order)):
        raise InvalidCrossedProduct("automorphism is not a permutation of the base")
    for a, b in product(range(base.order), repeat=2):
        if p[base.table[a][b]] != base.table[p[a]][p[b]]:
            raise InvalidCrossedProduct("permutation is not a homomorphism of the base")
    return p


def _int_det(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            for j in range(c, n):
                a[i][j] -= f * a[c][j]
    return int(det)


def _invert_aut(base, aut):
    if isinstance(base, FreeAbelianGroup):
        n = base.rank
        a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(aut)]
        for c in range(n):
            piv = next(i for i in range(c, n) if a[i][c])
            a[c], a[piv] = a[piv], a[c]
            p = a[c][c]
            a[c] = [x / p for x in a[c]]
            for i in range(n):
                if i != c and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return tuple(tuple(int(x) for x in row[n:]) for row in a)
    inv = [0] * len(aut)
    for i, j in enumerate(aut):
        inv[j] = i
    return tuple(inv)


def _apply_aut(base, aut, g):
    if isinstance(base, FreeAbelianGroup):
        return tuple(sum(r * x for r, x in zip(row, g)) for row in aut)
    return aut[g]


def _aut_power(base, aut, k):
    if k < 0:
        aut, k = _invert_aut(base, aut), -k
    result = _identity_aut(base)
    for _ in range(k):
        if isinstance(base, FreeAbelianGroup):
            result = tuple(
                tuple(sum(result[i][t] * aut[t][j] for t in range(base.rank)) for j in range(base.rank))
                for i in range(base.rank)
            )
        else:
            result = tuple(aut[result[i]] for i in range(base.order))
    return result


def infinite_dihedral():
    """Z x| Z/2 with s z s^-1 = z^-1, as a crossed product C[Z] * Z/2."""
    H = FiniteGroup.cyclic(2)
    return CrossedProductData(
        FreeAbelianGroup(1), H, {1: ((-1,),)}, orders={1, 2},
        names={"s": 1}, label="dihedral_inf",
    )


def finite_subgroup_orders(group):
    """Orders of the finite subgroups of ``group``.

    Exhaustive for finite groups; {1} for torsion-free models; the declared
    order set for crossed products.
    """
    if isinstance(group, FiniteGroup):
        return {len(s) for s in group.subgroups()}
    if isinstance(group, (FreeAbelianGroup, FreeGroup)):
        return {1}
    if isinstance(group, CrossedProductData):
        if group.orders is None:
            raise InvalidCrossedProduct("crossed product has no declared finite-subgroup orders")
        return set(group.orders)
    raise TypeError(f"not a group model: {group!r}")


def subgroup_lcm(group):
    return lcm(*finite_subgroup_orders(group))


_GROUP_RE = re.compile(r"^\s*(finite\s+(cyclic|dihedral)\s+(\d+)|abelian\s+(\d+)|free\s+(\d+)|dihedral_inf|trivial)\s*$")


def parse_group(text, line=None):
    """Parse a group declaration such as ``finite cyclic 2``, ``abelian 2``,
    ``free 2`` or ``dihedral_inf``."""
    m = _GROUP_RE.match(text)
    if not m:
        raise ParseError(f"unknown group specification {text.strip()!r}", line, 1)
    if m.group(2) == "cyclic":
        n = int(m.group(3))
        if n < 1:
            raise ParseError("cyclic group order must be positive", line, 1)
        return FiniteGroup.cyclic(n)
    if m.group(2) == "dihedral":
        n = int(m.group(3))
        if n < 1:
            raise ParseError("dihedral parameter must be positive", line, 1)
        return FiniteGroup.dihedral(n)
    if m.group(4):
        n = int(m.group(4))
        if n < 1:
            raise ParseError("abelian rank must be positive", line, 1)
        return FreeAbelianGroup(n)
    if m.group(5):
        n = int(m.group(5))
        if n < 1:
            raise ParseError("free rank must be positive", line, 1)
        return FreeGroup(n)
    if text.strip() == "trivial":
        return FiniteGroup.cyclic(1)
    return infinite_dihedral()


def group_spec(group):
    """Inverse of :func:`parse_group` for the built-in models."""
    if isinstance(group, FiniteGroup):
        if group.label.startswith("finite"):
            return group.label
        raise ValueError("group has no text declaration")
    if isinstance(group, (FreeAbelianGroup, FreeGroup)):
        return group.label
    if isinstance(group, CrossedProductData) and group.label == "dihedral_inf":
        return "dihedral_inf"
    raise ValueError("group has no text declaration")
