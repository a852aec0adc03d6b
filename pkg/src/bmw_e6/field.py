"""Exact arithmetic in Q(l, r).

Polynomials are python-flint ``fmpz_mpoly`` objects in the variables
(l, r) with lexicographic order, l before r.  A Laurent polynomial is a
polynomial coprime to the monomials together with an exponent shift.  A
rational function keeps every monomial unit in its numerator, so the
denominator is a genuine polynomial that is coprime to l, r and to the
numerator, with a positive leading coefficient.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import flint

CTX = flint.fmpz_mpoly_ctx.get(("l", "r"), "lex")
_L, _R = CTX.gens()
_ONE = CTX.from_dict({(0, 0): 1})
_ZERO = CTX.from_dict({})


class ParseError(ValueError):
    """Raised for malformed expression text; ``pos`` is the offending offset."""

    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class PoleError(ZeroDivisionError):
    """A denominator vanishes under a substitution or evaluation."""


def _monomial(el, er):
    return CTX.from_dict({(el, er): 1})


def _strip_monomial(poly):
    """Split poly into (poly / l^a r^b, a, b) with the monomial content removed."""
    if poly.is_zero():
        return poly, 0, 0
    a, b = (int(x) for x in poly.term_content().degrees())
    if a or b:
        poly = poly / _monomial(a, b)
    return poly, a, b


def _lift(poly, el, er, tl, tr):
    """Multiply poly * l^el r^er by l^-tl r^-tr where tl <= el, tr <= er."""
    if el == tl and er == tr:
        return poly
    return poly * _monomial(el - tl, er - tr)


def _poly_key(poly):
    return tuple(zip(poly.monoms(), (int(c) for c in poly.coeffs())))


class LaurentPolynomial:
    """Integer Laurent polynomial in l and r.

    Stored as ``poly * l^el * r^er`` where ``poly`` has no monomial factor.
    """

    __slots__ = ("poly", "el", "er", "_hash")

    def __init__(self, poly=None, el=0, er=0, _normal=False):
        if poly is None:
            poly = _ZERO
        if not _normal:
            poly, a, b = _strip_monomial(poly)
            el += a
            er += b
        if poly.is_zero():
            el = er = 0
        self.poly = poly
        self.el = el
        self.er = er
        self._hash = None

    @classmethod
    def from_terms(cls, terms):
        """Build from a mapping {(exp_l, exp_r): coefficient}."""
        terms = {k: int(c) for k, c in terms.items() if c}
        if not terms:
            return cls()
        tl = min(a for a, _ in terms)
        tr = min(b for _, b in terms)
        poly = CTX.from_dict({(a - tl, b - tr): c for (a, b), c in terms.items()})
        return cls(poly, tl, tr)

    @classmethod
    def monomial(cls, el, er, coeff=1):
        return cls.from_terms({(el, er): coeff})

    def terms(self):
        """Mapping {(exp_l, exp_r): coefficient} with nonzero integer coefficients."""
        return {(int(a) + self.el, int(b) + self.er): int(c)
                for (a, b), c in zip(self.poly.monoms(), self.poly.coeffs())}

    def is_zero(self):
        return self.poly.is_zero()

    def is_monomial(self):
        return len(self.poly) == 1 and self.poly.is_constant()

    def exponent_box(self):
        """(min_l, max_l, min_r, max_r) over the support; None for zero."""
        if self.is_zero():
            return None
        dl, dr = (int(x) for x in self.poly.degrees())
        return self.el, self.el + dl, self.er, self.er + dr

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial(_ONE * other, 0, 0, _normal=True)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        tl = min(self.el, other.el)
        tr = min(self.er, other.er)
        s = _lift(self.poly, self.el, self.er, tl, tr) + _lift(other.poly, other.el, other.er, tl, tr)
        return LaurentPolynomial(s, tl, tr)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(-self.poly, self.el, self.er, _normal=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPolynomial(self.poly * other.poly, self.el + other.el,
                                 self.er + other.er, _normal=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial() or abs(int(self.poly.leading_coefficient())) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            c = int(self.poly.leading_coefficient())
            return LaurentPolynomial(_ONE * c ** (-n), self.el * n, self.er * n, _normal=True)
        return LaurentPolynomial(self.poly ** n, self.el * n, self.er * n, _normal=True)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.el == other.el and self.er == other.er and self.poly == other.poly

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.el, self.er, _poly_key(self.poly)))
        return self._hash

    def __bool__(self):
        return not self.poly.is_zero()

    def __str__(self):
        return _format_terms(self.terms())

    def __repr__(self):
        return f"LaurentPolynomial({self})"


def _normalize_sign(poly):
    if not poly.is_zero() and poly.leading_coefficient() < 0:
        return -poly
    return poly


def gcd(p, q):
    """Greatest common divisor of two Laurent polynomials.

    Monomials are units, so the result is a polynomial with no monomial factor
    and a positive leading coefficient.  gcd(0, 0) is 0.
    """
    if p.is_zero() and q.is_zero():
        return LaurentPolynomial()
    if p.is_zero():
        return LaurentPolynomial(_normalize_sign(q.poly), _normal=True)
    if q.is_zero():
        return LaurentPolynomial(_normalize_sign(p.poly), _normal=True)
    return LaurentPolynomial(_normalize_sign(p.poly.gcd(q.poly)), _normal=True)


class RationalFunction:
    """Element of Q(l, r) in canonical form num / den.

    ``num`` is a Laurent polynomial; ``den`` a polynomial coprime to l, r and
    to ``num`` with positive leading coefficient.  Equal values have identical
    canonical forms.
    """

    __slots__ = ("_n", "_el", "_er", "_d", "_hash")

    def __init__(self, num=0, den=1):
        num = as_laurent(num)
        den = as_laurent(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._set(num.poly, num.el - den.el, num.er - den.er, den.poly)

    def _set(self, n, el, er, d):
        # n * l^el r^er / d with d free of monomial factors
        if n.is_zero():
            self._n, self._el, self._er, self._d = _ZERO, 0, 0, _ONE
        else:
            if not d.is_one():
                g = n.gcd(d)
                if not g.is_one():
                    n = n / g
                    d = d / g
                if d.leading_coefficient() < 0:
                    n = -n
                    d = -d
            n, a, b = _strip_monomial(n)
            self._n, self._el, self._er, self._d = n, el + a, er + b, d
        self._hash = None

    @classmethod
    def _raw(cls, n, el, er, d):
        obj = cls.__new__(cls)
        obj._set(n, el, er, d)
        return obj

    @classmethod
    def _exact(cls, n, el, er, d):
        obj = cls.__new__(cls)
        obj._n, obj._el, obj._er, obj._d, obj._hash = n, el, er, d, None
        return obj

    @property
    def num(self):
        return LaurentPolynomial(self._n, self._el, self._er, _normal=True)

    @property
    def den(self):
        return LaurentPolynomial(self._d, 0, 0, _normal=True)

    def is_zero(self):
        return self._n.is_zero()

    def is_laurent(self):
        return self._d.is_one()

    def is_univariate_r(self):
        """True if l does not occur."""
        return self._el == 0 and int(self._n.degrees()[0]) == 0 and int(self._d.degrees()[0]) == 0

    def __bool__(self):
        return not self._n.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            return as_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o._n.is_zero():
            return self
        if self._n.is_zero():
            return o
        tl = min(self._el, o._el)
        tr = min(self._er, o._er)
        a = _lift(self._n, self._el, self._er, tl, tr)
        b = _lift(o._n, o._el, o._er, tl, tr)
        if self._d == o._d:
            return RationalFunction._raw(a + b, tl, tr, self._d)
        g = self._d.gcd(o._d)
        if g.is_one():
            return RationalFunction._raw(a * o._d + b * self._d, tl, tr, self._d * o._d)
        d1 = self._d / g
        d2 = o._d / g
        return RationalFunction._raw(a * d2 + b * d1, tl, tr, d1 * o._d)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._exact(-self._n, self._el, self._er, self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._n.is_zero() or o._n.is_zero():
            return ZERO
        el = self._el + o._el
        er = self._er + o._er
        if self._d.is_one() and o._d.is_one():
            return RationalFunction._exact(self._n * o._n, el, er, _ONE)
        n1, d2 = _cancel(self._n, o._d)
        n2, d1 = _cancel(o._n, self._d)
        return RationalFunction._exact(n1 * n2, el, er, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction._raw(self._d, -self._el, -self._er, self._n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return as_rational(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._exact(self._n ** n, self._el * n, self._er * n, self._d ** n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self._el == o._el and self._er == o._er
                and self._n == o._n and self._d == o._d)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._el, self._er, _poly_key(self._n), _poly_key(self._d)))
        return self._hash

    def __str__(self):
        return format_rf(self)

    def __repr__(self):
        return f"RationalFunction({format_rf(self)!r})"

    def size(self):
        """Number of stored terms; used as a cheap pivot weight."""
        return len(self._n) + len(self._d)

    def normalize(self):
        return RationalFunction._raw(self._n, self._el, self._er, self._d)


def _cancel(n, d):
    if d.is_one():
        return n, d
    g = n.gcd(d)
    if g.is_one():
        return n, d
    n = n / g
    d = d / g
    if d.leading_coefficient() < 0:
        n, d = -n, -d
    return n, d


def as_laurent(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial(_ONE * x, _normal=True)
    raise TypeError(f"cannot convert {type(x).__name__} to a Laurent polynomial")


def as_rational(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Fraction):
        return RationalFunction(x.numerator, x.denominator)
    if isinstance(x, (int, LaurentPolynomial)):
        return RationalFunction(as_laurent(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational function")


ZERO = RationalFunction(0)
ONE = RationalFunction(1)
L = RationalFunction(LaurentPolynomial(_L))
R = RationalFunction(LaurentPolynomial(_R))
M = 1 / R - R
DELTA = 1 - (L - 1 / L) / M


def arith(a, b, op):
    """Field operation by name: add, sub, mul or div."""
    a = as_rational(a)
    b = as_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------- formatting

def _format_monomial(c, a, b):
    parts = []
    for var, e in (("l", a), ("r", b)):
        if e == 1:
            parts.append(var)
        elif e:
            parts.append(f"{var}^{e}")
    if not parts:
        return str(c)
    body = "*".join(parts)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def _format_terms(terms):
    if not terms:
        return "0"
    out = ""
    for (a, b), c in sorted(terms.items(), reverse=True):
        s = _format_monomial(c, a, b)
        if not out:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


def format_rf(f):
    """Render in the expression grammar; the text parses back to f."""
    num = _format_terms(f.num.terms())
    if f._d.is_one():
        return num
    den = _format_terms(f.den.terms())
    return f"({num})/({den})"


# ------------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def integer(self):
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected integer", start)
        return int(self.text[start:self.pos])

    def signed_int(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            n = self.signed_int()
            self.take(")")
            return n
        sign = 1
        while ch in "+-" and ch:
            if ch == "-":
                sign = -sign
            self.pos += 1
            ch = self.peek()
        return sign * self.integer()

    def expr(self):
        value = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.term()
            elif ch == "-":
                self.pos += 1
                value = value - self.term()
            else:
                return value

    def term(self):
        sign = 1
        while self.peek() in ("-", "+") and self.peek():
            if self.peek() == "-":
                sign = -sign
            self.pos += 1
        value = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                value = value * self.factor()
            elif ch == "/":
                self.pos += 1
                at = self.pos
                d = self.factor()
                if d.is_zero():
                    raise ParseError("division by the zero polynomial", at)
                value = value / d
            else:
                return -value if sign < 0 else value

    def factor(self):
        at = self.pos
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            at = self.pos
            n = self.signed_int()
            if n < 0 and base.is_zero():
                raise ParseError("negative power of zero", at)
            base = base ** n
        return base

    def base(self):
        ch = self.peek()
        if ch == "l":
            self.pos += 1
            return L
        if ch == "r":
            self.pos += 1
            return R
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.take(")")
            return value
        if ch.isdigit():
            return RationalFunction(self.integer())
        if not ch:
            raise ParseError("unexpected end of input", self.pos)
        raise ParseError(f"unexpected character {ch!r}", self.pos)


def parse(text):
    """Parse an expression in l, r, integers, + - * / ^ and parentheses."""
    p = _Parser(text)
    value = p.expr()
    if p.peek():
        raise ParseError(f"unexpected character {p.peek()!r}", p.pos)
    return value


# -------------------------------------------------------------- substitution

@dataclass(frozen=True)
class Assignment:
    """A specialization of the parameters.

    Symbolic: ``l`` is a rational function of r alone.  Numeric: ``l_value``
    and ``r_value`` are rationals.  Modular: ``prime`` with residues
    ``l_res`` and ``r_res``.
    """
    l: Optional[RationalFunction] = None
    l_value: Optional[Fraction] = None
    r_value: Optional[Fraction] = None
    prime: Optional[int] = None
    l_res: Optional[int] = None
    r_res: Optional[int] = None

    def __post_init__(self):
        if self.l is not None and not self.l.is_univariate_r():
            raise ValueError("a symbolic value for l must not involve l")

    @classmethod
    def symbolic(cls, l):
        if isinstance(l, str):
            l = parse(l)
        return cls(l=as_rational(l))

    @classmethod
    def numeric(cls, l, r):
        return cls(l_value=Fraction(l), r_value=Fraction(r))

    @classmethod
    def modular(cls, prime, l, r):
        return cls(prime=prime, l_res=l % prime, r_res=r % prime)

    @property
    def kind(self):
        if self.prime is not None:
            return "modular"
        if self.l_value is not None:
            return "numeric"
        return "symbolic"


class LSubstitution:
    """Reusable substitution l := u / v with u, v polynomials in r.

    Powers are cached, so applying it to many entries of a matrix is cheap.
    """

    def __init__(self, value):
        value = as_rational(value)
        if value.is_zero():
            raise PoleError("l := 0 is not admissible")
        self.value = value
        self.u = value._n * _monomial(0, max(value._er, 0))
        self.v = value._d * _monomial(0, max(-value._er, 0))
        self._upow = [_ONE]
        self._vpow = [_ONE]

    def _pow(self, table, base, k):
        while len(table) <= k:
            table.append(table[-1] * base)
        return table[k]

    def _poly(self, poly):
        """poly(u/v, r) as (numerator, v-power) with numerator a polynomial in r."""
        if poly.is_zero():
            return _ZERO, 0
        groups = {}
        for (a, b), c in zip(poly.monoms(), poly.coeffs()):
            groups.setdefault(int(a), {})[(0, int(b))] = c
        top = max(groups)
        total = _ZERO
        for a, t in groups.items():
            total += CTX.from_dict(t) * self._pow(self._upow, self.u, a) * self._pow(self._vpow, self.v, top - a)
        return total, top

    def __call__(self, f):
        f = as_rational(f)
        if f.is_zero():
            return ZERO
        n, kn = self._poly(f._n)
        d, kd = self._poly(f._d)
        if d.is_zero():
            raise PoleError(f"denominator of {f} vanishes at l = {self.value}")
        # value = n / v^kn * (u/v)^el * r^er / (d / v^kd)
        el = f._el
        shift = kd - kn - el
        num = n * (self._pow(self._upow, self.u, el) if el > 0 else _ONE)
        den = d * (self._pow(self._upow, self.u, -el) if el < 0 else _ONE)
        if shift > 0:
            num = num * self._pow(self._vpow, self.v, shift)
        elif shift < 0:
            den = den * self._pow(self._vpow, self.v, -shift)
        den, a, b = _strip_monomial(den)
        return RationalFunction._raw(num, 0, f._er - b, den)


def _eval_poly_fraction(poly, lv, rv):
    total = Fraction(0)
    for (a, b), c in zip(poly.monoms(), poly.coeffs()):
        total += int(c) * lv ** int(a) * rv ** int(b)
    return total


def _eval_poly_mod(poly, lv, rv, p):
    total = 0
    for (a, b), c in zip(poly.monoms(), poly.coeffs()):
        total += int(c) * pow(lv, int(a), p) * pow(rv, int(b), p)
    return total % p


def substitute(f, a):
    """Apply an Assignment to f.

    Returns a RationalFunction (symbolic), a Fraction (numeric) or an int
    residue (modular).  Raises PoleError when the denominator vanishes.
    """
    f = as_rational(f)
    kind = a.kind
    if kind == "symbolic":
        if a.l is None:
            return f
        return LSubstitution(a.l)(f)
    if kind == "numeric":
        lv, rv = a.l_value, a.r_value
        if (f._el < 0 and lv == 0) or (f._er < 0 and rv == 0):
            raise PoleError("monomial pole at the point")
        d = _eval_poly_fraction(f._d, lv, rv)
        if d == 0:
            raise PoleError(f"denominator of {f} vanishes at l={lv}, r={rv}")
        return _eval_poly_fraction(f._n, lv, rv) * lv ** f._el * rv ** f._er / d
    p, lv, rv = a.prime, a.l_res, a.r_res
    if (f._el < 0 and lv % p == 0) or (f._er < 0 and rv % p == 0):
        raise PoleError("monomial pole modulo p")
    d = _eval_poly_mod(f._d, lv, rv, p)
    if d == 0:
        raise PoleError(f"denominator of {f} vanishes modulo {p}")
    n = _eval_poly_mod(f._n, lv, rv, p)
    return n * pow(lv, f._el, p) * pow(rv, f._er, p) * pow(d, -1, p) % p


def r_to_minus_inverse(f):
    """The field automorphism r -> -1/r (l fixed)."""
    f = as_rational(f)

    def image(poly):
        # poly(l, -1/r) * r^deg_r
        dr = int(poly.degrees()[1]) if not poly.is_zero() else 0
        terms = {}
        for (a, b), c in zip(poly.monoms(), poly.coeffs()):
            terms[(int(a), dr - int(b))] = int(c) * (-1) ** int(b)
        return CTX.from_dict(terms), dr

    n, kn = image(f._n)
    d, kd = image(f._d)
    sign = -1 if f._er % 2 else 1
    return RationalFunction._raw(n * sign, f._el, -f._er - kn + kd, d)
