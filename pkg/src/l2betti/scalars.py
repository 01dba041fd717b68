"""Exact scalars: rationals, Gaussian rationals, Laurent polynomials and
rational functions, with exact rank and kernel computations."""

from fractions import Fraction
import operator

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussianRational:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x):
        if type(x) is cls:
            return x
        if isinstance(x, GaussianRational):
            return cls(x.re, x.im)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(x, 0)

    def __add__(self, other):
        if type(other) is not GaussianRational:
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re + other, self.im)
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re - other, self.im)
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c, _ZERO)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            if isinstance(other, (int, Fraction)):
                if not other:
                    raise ZeroDivisionError("GaussianRational division by zero")
                return GaussianRational(self.re / other, self.im / other)
            return NotImplemented
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """|x|^2 as a rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_gaussian(self)


def _fmt_q(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(x):
    re, im = x.re, x.im
    if not im:
        return _fmt_q(re)
    if abs(im) == 1:
        imag = "i"
    else:
        imag = _fmt_q(abs(im)) + "i"
    if not re:
        return imag if im > 0 else "-" + imag
    return _fmt_q(re) + ("+" if im > 0 else "-") + imag


G0 = GaussianRational(0)
G1 = GaussianRational(1)
I = GaussianRational(0, 1)


def gaussian(x):
    return GaussianRational.coerce(x)


DEFAULT_NAMES = ("z", "w", "u", "v")


def variable_names(n):
    if n <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:n]
    return tuple(f"z{k + 1}" for k in range(n))


def _add_exp(a, b):
    return tuple(map(operator.add, a, b))


def _sub_exp(a, b):
    return tuple(map(operator.sub, a, b))


class LaurentPoly:
    """Laurent polynomial in ``nvars`` variables with Gaussian-rational coefficients.

    ``terms`` maps integer exponent tuples to nonzero coefficients.  Instances are
    treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        if nvars < 1:
            raise ValueError("a Laurent polynomial needs at least one variable")
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not have length {nvars}")
                c = gaussian(c)
                if c:
                    clean[exp] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, c=1):
        c = gaussian(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exponents, c=1):
        exponents = tuple(exponents)
        c = gaussian(c)
        return cls._raw(len(exponents), {exponents: c} if c else {})

    @classmethod
    def variable(cls, nvars, index, power=1):
        exp = [0] * nvars
        exp[index] = power
        return cls._raw(nvars, {tuple(exp): G1})

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return LaurentPoly.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = gaussian(other)
            if not c:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(operator.add, e1, e2))
                prev = get(e)
                out[e] = c1 * c2 if prev is None else prev + c1 * c2
        return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return LaurentPoly.monomial(tuple(x * k for x in e), _gpow(c.inverse(), -k))
        result = LaurentPoly.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.terms == LaurentPoly.constant(self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def leading(self):
        """Lex-largest exponent and its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    def degree_box(self):
        """Per-variable (min, max) exponent ranges."""
        exps = list(self.terms)
        return [(min(col), max(col)) for col in zip(*exps)]

    def substitute_monomials(self, images):
        """Apply the ring map sending variable k to the monomial ``images[k]`` (exponent tuple)."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(images[0]) if images else []
            for k, ek in enumerate(e):
                if ek:
                    img = images[k]
                    for j in range(len(new)):
                        new[j] += ek * img[j]
            new = tuple(new)
            out[new] = out.get(new, G0) + c
        return LaurentPoly(len(images[0]), out)

    def evaluate(self, point):
        """Evaluate at a point of nonzero scalars (ints, Fractions or GaussianRationals)."""
        total = G0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * (x ** k if k > 0 else _gpow(gaussian(x).inverse(), -k))
            total = total + v
        return total

    def content_normalized(self):
        """Divide by the leading coefficient and the monomial content.

        Returns ``(unit, primitive)`` with ``self == unit * primitive`` where ``unit``
        is a coefficient times a monomial.
        """
        if not self.terms:
            return LaurentPoly.constant(self.nvars), self
        lo = tuple(min(col) for col in zip(*self.terms))
        _, lc = self.leading()
        inv = lc.inverse()
        prim = LaurentPoly._raw(self.nvars, {_sub_exp(e, lo): c * inv for e, c in self.terms.items()})
        return LaurentPoly.monomial(lo, lc), prim

    def exact_div(self, other):
        """Quotient ``self / other`` when ``other`` divides ``self`` exactly.

        Raises ``ArithmeticError`` if the division is not exact.
        """
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPoly.zero(self.nvars)
        if len(other.terms) == 1:
            (eb, cb), = other.terms.items()
            inv = cb.inverse()
            return LaurentPoly._raw(self.nvars, {_sub_exp(e, eb): c * inv for e, c in self.terms.items()})
        # Degrees are additive in each variable, so the quotient lives in a known box.
        box = [(alo - blo, ahi - bhi) for (alo, ahi), (blo, bhi) in zip(self.degree_box(), other.degree_box())]
        if any(lo > hi for lo, hi in box):
            raise ArithmeticError("inexact Laurent division")
        lb, lcb = other.leading()
        inv = lcb.inverse()
        rem = dict(self.terms)
        quot = {}
        bterms = list(other.terms.items())
        while rem:
            lr = max(rem)
            e = _sub_exp(lr, lb)
            if any(x < lo or x > hi for x, (lo, hi) in zip(e, box)):
                raise ArithmeticError("inexact Laurent division")
            c = rem[lr] * inv
            quot[e] = c
            for k, v in bterms:
                t = _add_exp(e, k)
                s = rem.get(t, G0) - c * v
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return LaurentPoly._raw(self.nvars, quot)

    def to_str(self, names=None):
        names = names or variable_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
            )
            parts.append(_term_str(c, mono))
        return _join_terms(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()})"


def _gpow(c, k):
    r = G1
    for _ in range(k):
        r = r * c
    return r


def _term_str(c, mono):
    if not mono:
        return format_gaussian(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    if c.im and c.re:
        return f"({format_gaussian(c)})*{mono}"
    return f"{format_gaussian(c)}*{mono}"


def _join_terms(parts):
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def poly_is_zero(p):
    return not p.terms


class RationalFunction:
    """A quotient num/den of Laurent polynomials, kept unreduced.

    Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentPoly):
            raise TypeError("numerator must be a LaurentPoly")
        if den is None:
            den = LaurentPoly.constant(num.nvars)
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(num.nvars, den)
        num._check(den)
        if not den.terms:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def zero(cls, nvars):
        return cls(LaurentPoly.zero(nvars))

    @classmethod
    def one(cls, nvars):
        return cls(LaurentPoly.constant(nvars))

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RationalFunction(LaurentPoly.constant(self.nvars, other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self.num.terms or not other.num.terms:
            return RationalFunction.zero(self.nvars)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def reduced(self):
        """Divide numerator and denominator by the denominator's unit content.

        The result has a denominator with leading coefficient 1 and
        nonnegative exponents touching zero in every variable.
        """
        if not self.num.terms:
            return RationalFunction.zero(self.nvars)
        unit, den = self.den.content_normalized()
        return RationalFunction(self.num.exact_div(unit), den)

    def is_laurent(self):
        """True if this function is a Laurent polynomial (denominator divides numerator)."""
        return self.as_laurent() is not None

    def as_laurent(self):
        try:
            return self.num.exact_div(self.den)
        except ArithmeticError:
            return None

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(point) / d

    def to_str(self, names=None):
        num = self.num.to_str(names)
        if self.den == 1:
            return num
        den = self.den.to_str(names)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1 or any(c != 1 and self.den.terms for c in self.den.terms.values()):
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction({self.to_str()})"


# ---------------------------------------------------------------- linear algebra


def _shape(matrix):
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    for r in matrix:
        if len(r) != cols:
            raise ValueError("matrix is not rectangular")
    return rows, cols


def _nvars_of(matrix):
    for row in matrix:
        for x in row:
            if isinstance(x, (LaurentPoly, RationalFunction)):
                return x.nvars
    return None


def laurent_rows(matrix):
    """Clear denominators row by row (a rank-preserving operation).

    Returns a matrix of LaurentPoly.  Each row is multiplied by the product of
    the distinct denominators occurring in it.
    """
    nvars = _nvars_of(matrix) or 1
    out = []
    for row in matrix:
        row = [_as_rf(x, nvars) for x in row]
        dens = []
        for x in row:
            if x.num.terms and not x.den.is_constant() and all(x.den != d for d in dens):
                dens.append(x.den)
        new = []
        for x in row:
            if not x.num.terms:
                new.append(LaurentPoly.zero(nvars))
                continue
            p = x.num
            used = False
            for d in dens:
                if not used and d == x.den:
                    used = True
                    continue
                p = p * d
            if not used:
                # constant denominator
                p = p * x.den.terms[(0,) * nvars].inverse()
            new.append(p)
        out.append(new)
    return out


def _as_rf(x, nvars):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction(x)
    return RationalFunction(LaurentPoly.constant(nvars, x))


def _bareiss(rows, ncols):
    """Fraction-free echelon reduction in place; returns (rank, pivot product sign, last pivot)."""
    nrows = len(rows)
    prev = None
    r = 0
    swaps = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c].terms:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            swaps += 1
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[c]
            for j in range(c + 1, ncols):
                v = p * row[j]
                if a.terms and prow[j].terms:
                    v = v - a * prow[j]
                row[j] = v if prev is None else v.exact_div(prev)
            row[c] = LaurentPoly.zero(p.nvars)
        prev = p
        r += 1
    return r, swaps, prev


def rank_exact(matrix):
    """Rank over the field of rational functions, by fraction-free elimination.

    Entries may be RationalFunction, LaurentPoly or scalars.  Pivots are taken
    column by column, using the first nonzero entry from the top.
    """
    nrows, ncols = _shape(matrix)
    if not nrows or not ncols:
        return 0
    rows = laurent_rows(matrix)
    rank, _, _ = _bareiss(rows, ncols)
    return rank


def determinant(matrix):
    """Determinant of a square matrix of Laurent polynomials or rational functions.

    Returns a RationalFunction.
    """
    n, m = _shape(matrix)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    nvars = _nvars_of(matrix) or 1
    if n == 0:
        return RationalFunction.one(nvars)
    rfs = [[_as_rf(x, nvars) for x in row] for row in matrix]
    if all(rfs[i][j].is_zero() for i in range(n) for j in range(i)):
        # upper triangular (diagonal included): no elimination needed
        det = RationalFunction.one(nvars)
        for i in range(n):
            det = det * rfs[i][i]
        return det
    cleared = laurent_rows(rfs)
    rank, swaps, last = _bareiss(cleared, n)
    if rank < n:
        return RationalFunction.zero(nvars)
    det = last if swaps % 2 == 0 else -last
    factor = LaurentPoly.constant(nvars)
    for f in cleared_factors(rfs):
        factor = factor * f
    return RationalFunction(det, factor)


def cleared_factors(rfs):
    """Per-row multipliers used by :func:`laurent_rows`."""
    nvars = _nvars_of(rfs) or 1
    out = []
    for row in rfs:
        dens = []
        for x in row:
            if x.num.terms and not x.den.is_constant() and all(x.den != d for d in dens):
                dens.append(x.den)
        f = LaurentPoly.constant(nvars)
        for d in dens:
            f = f * d
        out.append(f)
    return out


def _to_field_rows(matrix):
    """Convert a scalar matrix to rows over Fraction when possible, else GaussianRational."""
    real = all(
        (not isinstance(x, GaussianRational)) or not x.im
        for row in matrix for x in row
    )
    if real:
        return [[x.re if isinstance(x, GaussianRational) else Fraction(x) for x in row] for row in matrix], True
    return [[gaussian(x) for x in row] for row in matrix], False


def _rref_sparse(rows, ncols):
    """Reduced row echelon form of sparse rows (dicts col -> value), in place.

    Returns the list of pivot columns; ``rows`` is replaced by the nonzero
    reduced rows in pivot order.
    """
    # column -> set of row indices holding a nonzero in that column
    pending = [r for r in rows if r]
    colmap = {}
    for idx, r in enumerate(pending):
        for c in r:
            colmap.setdefault(c, set()).add(idx)
    alive = set(range(len(pending)))
    pivots = []
    reduced = []
    for c in range(ncols):
        cand = [i for i in colmap.pop(c, ()) if i in alive and c in pending[i]]
        if not cand:
            continue
        # sparsest candidate row, ties by index, keeps fill-in low
        piv = min(cand, key=lambda i: (len(pending[i]), i))
        alive.discard(piv)
        prow = pending[piv]
        inv = 1 / prow[c]
        prow = {k: v * inv for k, v in prow.items()}
        for i in cand:
            if i == piv:
                continue
            row = pending[i]
            f = row[c]
            for k, v in prow.items():
                s = row.get(k, 0) - f * v
                if s:
                    if k not in row:
                        colmap.setdefault(k, set()).add(i)
                    row[k] = s
                else:
                    row.pop(k, None)
        # back-substitute into already reduced rows
        for r in reduced:
            f = r.get(c)
            if f:
                for k, v in prow.items():
                    s = r.get(k, 0) - f * v
                    if s:
                        r[k] = s
                    else:
                        r.pop(k, None)
        pivots.append(c)
        reduced.append(prow)
    rows[:] = reduced
    return pivots


def rank_field(matrix):
    """Rank of a matrix with entries in Q or Q(i)."""
    nrows, ncols = _shape(matrix)
    if not nrows or not ncols:
        return 0
    data, _ = _to_field_rows(matrix)
    rows = [{j: x for j, x in enumerate(r) if x} for r in data]
    return len(_rref_sparse(rows, ncols))


def kernel_basis(matrix, ncols=None):
    """Exact basis of the right kernel {v : matrix * v = 0} over Q(i).

    ``matrix`` is a list of rows; ``ncols`` is needed only when there are no rows.
    Returns a list of vectors (lists of GaussianRational); empty iff injective.
    """
    if matrix:
        nrows, ncols = _shape(matrix)
    elif ncols is None:
        ncols = 0
    if not ncols:
        return []
    if matrix:
        data, _ = _to_field_rows(matrix)
        rows = [{j: x for j, x in enumerate(r) if x} for r in data]
    else:
        rows = []
    return _kernel_from_sparse(rows, ncols)


def kernel_basis_sparse(rows, ncols):
    """Like :func:`kernel_basis` for rows given as dicts ``col -> value``."""
    rows = [dict(r) for r in rows]
    return _kernel_from_sparse(rows, ncols)


def _kernel_from_sparse(rows, ncols):
    pivots = _rref_sparse(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [G0] * ncols
        v[f] = G1
        for pc, r in zip(pivots, rows):
            x = r.get(f)
            if x:
                v[pc] = -gaussian(x)
        # scale so the first nonzero coordinate is 1
        lead = next(x for x in v if x).inverse()
        basis.append([x * lead for x in v])
    return basis


def inverse_matrix(matrix):
    """Inverse of a square matrix over rational functions (Gauss-Jordan).

    Raises ZeroDivisionError if the matrix is singular.
    """
    n, m = _shape(matrix)
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    nvars = _nvars_of(matrix) or 1
    a = [[_as_rf(x, nvars) for x in row] for row in matrix]
    inv = [[RationalFunction.one(nvars) if i == j else RationalFunction.zero(nvars) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        p = a[c][c].inverse()
        a[c] = [(x * p).reduced() for x in a[c]]
        inv[c] = [(x * p).reduced() for x in inv[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y).reduced() for x, y in zip(a[i], a[c])]
                inv[i] = [(x - f * y).reduced() for x, y in zip(inv[i], inv[c])]
    return inv


def matmul(a, b, zero):
    """Plain matrix product for lists of rows over any ring."""
    n = len(a)
    k = len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = zero
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if x and y:
                    s = s + x * y
            row.append(s)
        out.append(row)
    return out
