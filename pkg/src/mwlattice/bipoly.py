"""Bivariate polynomials in (t, x) over a number field.

Used for plane curves and the pencil substitution x -> c(t).  Monomials are
a dict {(deg_t, deg_x): FieldElem}; resultants run over the fraction field
k(t) through the univariate machinery.
"""

from __future__ import annotations

from typing import Iterable

from .errors import FieldMismatch, InputValidationError
from .numberfield import FieldElem, FieldSpec
from .polynomials import (
    RationalFunction,
    RationalFunctionField,
    UniPoly,
    poly_gcd,
    resultant,
)

TVAR = "t"
XVAR = "x"


class BiPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: dict):
        self.field = field
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @classmethod
    def zero(cls, field: FieldSpec) -> "BiPoly":
        return cls(field, {})

    @classmethod
    def const(cls, field: FieldSpec, c) -> "BiPoly":
        return cls(field, {(0, 0): field.coerce(c)})

    @classmethod
    def var_t(cls, field: FieldSpec) -> "BiPoly":
        return cls(field, {(1, 0): field.one()})

    @classmethod
    def var_x(cls, field: FieldSpec) -> "BiPoly":
        return cls(field, {(0, 1): field.one()})

    @classmethod
    def from_unipoly_t(cls, p: UniPoly) -> "BiPoly":
        return cls(p.domain, {(i, 0): c for i, c in enumerate(p.coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def _wrap(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            if other.field != self.field:
                raise FieldMismatch("bivariate polynomials over different fields")
            return other
        if isinstance(other, UniPoly):
            return BiPoly.from_unipoly_t(other)
        return BiPoly.const(self.field, self.field.coerce(other))

    def __add__(self, other):
        o = self._wrap(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, self.field.zero()) + v
        return BiPoly(self.field, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return BiPoly(self.field, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        o = self._wrap(other)
        out: dict = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in o.terms.items():
                key = (i1 + i2, j1 + j2)
                cur = out.get(key)
                out[key] = v1 * v2 if cur is None else cur + v1 * v2
        return BiPoly(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self.field.coerce(other)
        inv = self.field.one() / c
        return BiPoly(self.field, {k: v * inv for k, v in self.terms.items()})

    def __pow__(self, k: int):
        out = BiPoly.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, tuple(sorted((k, v.coeffs) for k, v in self.terms.items()))))

    # -- structure ------------------------------------------------------------

    def degree_in_x(self) -> int:
        return max((j for (_, j) in self.terms), default=-1)

    def degree_in_t(self) -> int:
        return max((i for (i, _) in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((i + j for (i, j) in self.terms), default=-1)

    def coeff_of_x(self, j: int) -> UniPoly:
        """Coefficient of x^j, a polynomial in t."""
        deg = max((i for (i, jj) in self.terms if jj == j), default=-1)
        cs = [self.field.zero()] * (deg + 1)
        for (i, jj), v in self.terms.items():
            if jj == j:
                cs[i] = v
        return UniPoly(self.field, TVAR, cs)

    def eval_x(self, c: UniPoly) -> UniPoly:
        """Substitute x = c(t); returns a polynomial in t."""
        out = UniPoly.zero(self.field, TVAR)
        for j in range(self.degree_in_x() + 1):
            cj = self.coeff_of_x(j)
            if not cj.is_zero():
                out = out + cj * c**j
        return out

    def eval_point(self, t0, x0) -> FieldElem:
        t0 = self.field.coerce(t0)
        x0 = self.field.coerce(x0)
        acc = self.field.zero()
        for (i, j), v in self.terms.items():
            acc = acc + v * t0**i * x0**j
        return acc

    def as_x_poly_over_kt(self) -> UniPoly:
        """View as a univariate polynomial in x over the field k(t)."""
        dom = RationalFunctionField(self.field, TVAR)
        cs = [dom.coerce(self.coeff_of_x(j)) for j in range(self.degree_in_x() + 1)]
        return UniPoly(dom, XVAR, cs)

    def leading_form_in_s(self) -> UniPoly:
        """Dehomogenized top form: f_d(s, 1) where s = T/X on the line at infinity."""
        d = self.total_degree()
        cs = [self.field.zero()] * (d + 1)
        for (i, j), v in self.terms.items():
            if i + j == d:
                cs[i] = v
        return UniPoly(self.field, "s", cs)

    def resultant_x(self, other: "BiPoly") -> UniPoly:
        """Res_x of two bivariate polynomials, as a polynomial in t."""
        f = self.as_x_poly_over_kt()
        g = self._wrap(other).as_x_poly_over_kt()
        r = resultant(f, g)
        return r.as_poly() if isinstance(r, RationalFunction) else r

    def derivative_x(self) -> "BiPoly":
        out = {}
        for (i, j), v in self.terms.items():
            if j >= 1:
                out[(i, j - 1)] = v * j
        return BiPoly(self.field, out)

    def derivative_t(self) -> "BiPoly":
        out = {}
        for (i, j), v in self.terms.items():
            if i >= 1:
                out[(i - 1, j)] = v * i
        return BiPoly(self.field, out)

    def is_squarefree(self) -> bool:
        """No repeated factor: checked against both partial derivatives."""
        fx = self.as_x_poly_over_kt()
        if fx.degree >= 1:
            g = _kt_gcd(fx, self.derivative_x().as_x_poly_over_kt())
            if g.degree >= 1:
                return False
            # content in t must be squarefree as well
        ft_content = None
        for j in range(self.degree_in_x() + 1):
            cj = self.coeff_of_x(j)
            if not cj.is_zero():
                ft_content = cj if ft_content is None else poly_gcd(ft_content, cj)
        if ft_content is not None and ft_content.degree >= 1:
            from .polynomials import squarefree_decompose
            _, parts = squarefree_decompose(ft_content)
            if any(e > 1 for _, e in parts):
                return False
        if self.degree_in_x() == 0:
            from .polynomials import squarefree_decompose
            _, parts = squarefree_decompose(self.coeff_of_x(0))
            return all(e == 1 for _, e in parts)
        return True

    def map_coeffs(self, fn, new_field: FieldSpec) -> "BiPoly":
        return BiPoly(new_field, {k: fn(v) for k, v in self.terms.items()})

    def sort_key(self):
        return tuple(sorted((k, v.sort_key()) for k, v in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[1])):
            v = self.terms[(i, j)]
            mono = ""
            if i:
                mono += TVAR if i == 1 else f"{TVAR}^{i}"
            if j:
                if mono:
                    mono += "*"
                mono += XVAR if j == 1 else f"{XVAR}^{j}"
            vs = f"{v}"
            if mono:
                if vs == "1":
                    parts.append(mono)
                elif vs == "-1":
                    parts.append(f"-{mono}")
                else:
                    if " " in vs:
                        vs = f"({vs})"
                    parts.append(f"{vs}*{mono}")
            else:
                parts.append(vs)
        return " + ".join(parts).replace("+ -", "- ")


def _kt_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    a, b = f, g
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    return a.monic() if not a.is_zero() else a
