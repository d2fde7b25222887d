"""Univariate polynomials and rational functions over an exact field.

UniPoly is domain-parametric: coefficients are FieldElem in the usual case,
but any exact field-like domain with zero/one/coerce works, which is how
bivariate resultants run (polynomials in x over the field k(t)).

Conventions: coefficient vectors are constant-first with trailing zeros
stripped; gcds and squarefree factors are monic; degree of the zero
polynomial is the -infinity sentinel NEG_INF.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import DivisionByZero, FieldMismatch, InputValidationError, ZeroPolynomial
from .numberfield import FieldElem, FieldSpec

NEG_INF = float("-inf")


class UniPoly:
    __slots__ = ("domain", "var", "coeffs")

    def __init__(self, domain, var: str, coeffs: Sequence):
        cs = [domain.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.domain = domain
        self.var = var
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, domain, var: str) -> "UniPoly":
        return cls(domain, var, [])

    @classmethod
    def one(cls, domain, var: str) -> "UniPoly":
        return cls(domain, var, [domain.one()])

    @classmethod
    def gen(cls, domain, var: str) -> "UniPoly":
        return cls(domain, var, [domain.zero(), domain.one()])

    @classmethod
    def const(cls, domain, var: str, c) -> "UniPoly":
        return cls(domain, var, [domain.coerce(c)])

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.domain.zero()

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self):
        if not self.is_constant():
            raise InputValidationError(f"{self} is not constant")
        return self.coeffs[0] if self.coeffs else self.domain.zero()

    def _check(self, other: "UniPoly"):
        if self.var != other.var or self.domain != other.domain:
            raise FieldMismatch(
                f"polynomials over different rings: {self.var}/{self.domain}"
                f" vs {other.var}/{other.domain}")

    def _wrap(self, other):
        if isinstance(other, UniPoly):
            self._check(other)
            return other
        if isinstance(other, RationalFunction):
            return NotImplemented
        return UniPoly(self.domain, self.var, [self.domain.coerce(other)])

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.domain.zero()
        cs = [(self.coeffs[i] if i < len(self.coeffs) else z)
              + (o.coeffs[i] if i < len(o.coeffs) else z) for i in range(n)]
        return UniPoly(self.domain, self.var, cs)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return UniPoly(self.domain, self.var, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            self._check(other)
            if not self.coeffs or not other.coeffs:
                return UniPoly.zero(self.domain, self.var)
            z = self.domain.zero()
            out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a.is_zero():
                    for j, b in enumerate(other.coeffs):
                        out[i + j] = out[i + j] + a * b
            return UniPoly(self.domain, self.var, out)
        if isinstance(other, RationalFunction):
            return NotImplemented
        c = self.domain.coerce(other)
        return UniPoly(self.domain, self.var, [a * c for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputValidationError("negative polynomial power")
        out = UniPoly.one(self.domain, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        o = self._wrap(other)
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q = UniPoly.zero(self.domain, self.var)
        r = self
        inv_lc = self.domain.one() / o.lc()
        dn = o.degree
        while not r.is_zero() and r.degree >= dn:
            k = r.degree - dn
            f = r.lc() * inv_lc
            mono = UniPoly(self.domain, self.var,
                           [self.domain.zero()] * k + [f])
            q = q + mono
            r = r - mono * o
        return q, r

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, UniPoly):
            q, r = divmod(self, other)
            if not r.is_zero():
                raise InputValidationError("inexact polynomial division")
            return q
        c = self.domain.coerce(other)
        return self * (self.domain.one() / c)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return (self.var == other.var and self.domain == other.domain
                    and self.coeffs == other.coeffs)
        if self.is_zero():
            return self.domain.coerce(other).is_zero()
        return self.is_constant() and self.coeffs[0] == self.domain.coerce(other)

    def __hash__(self):
        return hash((self.var, self.coeffs))

    # -- calculus and evaluation ----------------------------------------------

    def derivative(self) -> "UniPoly":
        cs = [c * i for i, c in enumerate(self.coeffs)][1:]
        return UniPoly(self.domain, self.var, cs)

    def eval(self, x):
        """Horner evaluation; x may be a domain element or a UniPoly (composition)."""
        if isinstance(x, UniPoly):
            acc = UniPoly.zero(x.domain, x.var)
            for c in reversed(self.coeffs):
                acc = acc * x + UniPoly.const(x.domain, x.var, c)
            return acc
        x = self.domain.coerce(x)
        acc = self.domain.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (self.domain.one() / self.lc())

    def shift_var(self, c) -> "UniPoly":
        """Substitute var -> var + c."""
        t = UniPoly.gen(self.domain, self.var)
        return self.eval(t + UniPoly.const(self.domain, self.var, c))

    def reverse_weighted(self, weight: int) -> "UniPoly":
        """u^weight * p(1/u): the degree-weight homogenization at infinity."""
        if weight < (self.degree if self.coeffs else 0):
            raise InputValidationError("weight smaller than degree")
        z = self.domain.zero()
        out = [z] * (weight + 1)
        for i, c in enumerate(self.coeffs):
            out[weight - i] = c
        return UniPoly(self.domain, self.var, out)

    def map_coeffs(self, fn, new_domain=None, var: str | None = None) -> "UniPoly":
        return UniPoly(new_domain or self.domain, var or self.var,
                       [fn(c) for c in self.coeffs])

    def sort_key(self):
        return (len(self.coeffs),
                tuple(c.sort_key() if hasattr(c, "sort_key") else c
                      for c in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            if i == 0:
                parts.append(f"{c}")
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    cs = f"{c}"
                    if " " in cs or "+" in cs[1:] or "-" in cs[1:]:
                        cs = f"({cs})"
                    parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# gcd machinery


def _rational_content(p: UniPoly) -> Fraction:
    """gcd of all Q-coordinates of all coefficients (positive), 0 for p = 0."""
    from math import gcd as igcd, lcm

    num = 0
    den = 1
    for c in p.coeffs:
        if not isinstance(c, FieldElem):
            return Fraction(1)  # k(t)-style coefficient domain: skip stripping
        for q in c.coeffs:
            if q:
                num = igcd(num, abs(q.numerator))
                den = lcm(den, q.denominator)
    return Fraction(num, den)


def _strip_content(p: UniPoly) -> UniPoly:
    c = _rational_content(p)
    if c in (0, 1):
        return p
    return p * (p.domain.one() / p.domain.coerce(c))


def _pseudo_rem(a: UniPoly, b: UniPoly) -> UniPoly:
    """lc(b)^(deg a - deg b + 1) * a mod b, computed without divisions."""
    d = int(a.degree) - int(b.degree)
    lb = b.lc()
    r = a
    for _ in range(d + 1):
        if r.is_zero() or r.degree < b.degree:
            r = r * lb
            continue
        k = int(r.degree) - int(b.degree)
        shifted = UniPoly(b.domain, b.var,
                          [b.domain.zero()] * k + list(b.coeffs))
        r = r * lb - shifted * r.lc()
    return r


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd via the primitive pseudo-remainder sequence;
    gcd(0, 0) = 0 by convention."""
    a, b = f, g
    if a.is_zero():
        return b.monic() if not b.is_zero() else b
    if b.is_zero():
        return a.monic()
    if a.degree < b.degree:
        a, b = b, a
    a, b = _strip_content(a), _strip_content(b)
    while not b.is_zero() and b.degree > 0:
        r = _pseudo_rem(a, b)
        a, b = b, (_strip_content(r) if not r.is_zero() else r)
    if not b.is_zero():
        return UniPoly.one(f.domain, f.var)
    return a.monic()


def poly_xgcd(f: UniPoly, g: UniPoly):
    """(g, s, t) with s*f + t*g = g monic."""
    dom, var = f.domain, f.var
    r0, r1 = f, g
    s0, s1 = UniPoly.one(dom, var), UniPoly.zero(dom, var)
    t0, t1 = UniPoly.zero(dom, var), UniPoly.one(dom, var)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = dom.one() / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_decompose(f: UniPoly):
    """Yun decomposition: returns (unit, [(g_i monic squarefree, e_i)]),
    multiplicities strictly increasing, f = unit * prod g_i^{e_i}."""
    if f.is_zero():
        raise ZeroPolynomial("cannot squarefree-decompose 0")
    unit = f.lc()
    f = f.monic()
    if f.degree == 0:
        return unit, []
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f / a
    c = df / a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b / g
        c = d / g
        d = c - b.derivative()
        i += 1
    return unit, out


def poly_square_root(f: UniPoly):
    """If f = u * h^2 with u a constant of the field, return (h monic, u); else None."""
    if f.is_zero():
        raise ZeroPolynomial("square root of the zero polynomial")
    unit, parts = squarefree_decompose(f)
    if any(e % 2 for _, e in parts):
        return None
    h = UniPoly.one(f.domain, f.var)
    for g, e in parts:
        h = h * g ** (e // 2)
    return h, unit


def resultant(f: UniPoly, g: UniPoly):
    """Resultant over the coefficient field, via the Euclidean recursion."""
    dom = f.domain
    if f.is_zero() or g.is_zero():
        return dom.zero()
    res = dom.one()
    a, b = f, g
    while True:
        if b.degree == 0:
            res = res * b.lc() ** a.degree
            return res
        r = a % b
        if r.is_zero():
            return dom.zero()
        m, n, d = a.degree, b.degree, r.degree
        sign = dom.coerce(-1) ** (m * n)
        res = res * sign * b.lc() ** (m - d)
        a, b = b, r


def poly_ord_at(f: UniPoly, pi: UniPoly) -> int:
    """Multiplicity of the monic factor pi in f (f nonzero)."""
    if f.is_zero():
        raise ZeroPolynomial("valuation of the zero polynomial")
    n = 0
    while True:
        q, r = divmod(f, pi)
        if not r.is_zero():
            return n
        f = q
        n += 1


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly, reduce: bool = True):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if reduce:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num / g
                den = den / g
            lc = den.lc()
            if lc != 1:
                inv = den.domain.one() / lc
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RationalFunction":
        return cls(p, UniPoly.one(p.domain, p.var), reduce=False)

    @property
    def domain(self):
        return self.num.domain

    @property
    def var(self):
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> UniPoly:
        if not self.is_poly():
            raise InputValidationError(f"{self} is not polynomial")
        return self.num / self.den.constant_value()

    def _wrap(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, UniPoly):
            return RationalFunction.from_poly(other)
        p = UniPoly.const(self.num.domain, self.num.var,
                          self.num.domain.coerce(other))
        return RationalFunction.from_poly(p)

    def __add__(self, other):
        o = self._wrap(other)
        return RationalFunction(self.num * o.den + o.num * self.den,
                                self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        return RationalFunction(self.num * o.den - o.num * self.den,
                                self.den * o.den)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        o = self._wrap(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        if o.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (self._wrap(1) / self) ** (-k)
        return RationalFunction(self.num**k, self.den**k, reduce=False)

    def __eq__(self, other):
        o = self._wrap(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def ord_at(self, pi: UniPoly) -> int:
        """Valuation at the monic factor pi (+k for zeros, -k for poles)."""
        if self.is_zero():
            raise ZeroPolynomial("valuation of zero")
        return poly_ord_at(self.num, pi) - poly_ord_at(self.den, pi)

    def eval(self, x):
        den = self.den.eval(x)
        if den.is_zero() if hasattr(den, "is_zero") else den == 0:
            raise DivisionByZero("pole at evaluation point")
        return self.num.eval(x) / den

    def at_infinity(self, weight: int) -> "RationalFunction":
        """The function u^weight * f(1/u) in the u-chart."""
        dn, dd = len(self.num.coeffs) - 1, len(self.den.coeffs) - 1
        if self.is_zero():
            return self
        # u^weight * num(1/u)/den(1/u) = u^(weight - dn + dd) * rev(num)/rev(den)
        rn = self.num.reverse_weighted(dn)
        rd = self.den.reverse_weighted(dd)
        shift = weight - dn + dd
        u = UniPoly.gen(self.num.domain, self.num.var)
        if shift >= 0:
            return RationalFunction(rn * u**shift, rd)
        return RationalFunction(rn, rd * u**(-shift))

    def map_coeffs(self, fn, new_domain=None) -> "RationalFunction":
        return RationalFunction(self.num.map_coeffs(fn, new_domain),
                                self.den.map_coeffs(fn, new_domain))

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())

    def __repr__(self):
        if self.is_poly():
            return repr(self.num) if self.den == 1 else repr(self.num / self.den.constant_value())
        return f"({self.num})/({self.den})"


class RationalFunctionField:
    """The field k(var), as a coefficient domain for UniPoly."""

    def __init__(self, field: FieldSpec, var: str):
        self.field = field
        self.var = var

    def zero(self) -> RationalFunction:
        return RationalFunction.from_poly(UniPoly.zero(self.field, self.var))

    def one(self) -> RationalFunction:
        return RationalFunction.from_poly(UniPoly.one(self.field, self.var))

    def coerce(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            if x.num.domain == self.field and x.num.var == self.var:
                return x
            raise FieldMismatch("rational function over wrong ring")
        if isinstance(x, UniPoly):
            return RationalFunction.from_poly(x)
        return RationalFunction.from_poly(
            UniPoly.const(self.field, self.var, self.field.coerce(x)))

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField)
                and self.field == other.field and self.var == other.var)

    def __hash__(self):
        return hash(("rff", self.field, self.var))

    def __repr__(self):
        return f"{self.field}({self.var})"


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Spec-surface dispatch for the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InputValidationError(f"unknown field operation {op!r}")
