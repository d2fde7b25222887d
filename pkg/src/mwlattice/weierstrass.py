"""Weierstrass models y^2 = x^3 + a2 x^2 + a4 x + a6 over k(t).

Standard invariants (a1 = a3 = 0 throughout, char 0), minimality at places
via the x -> pi^2 x, y -> pi^3 y reduction with the triple-root translation,
and the t = 1/u chart whose place u = 0 is "t = infinity".
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import Optional

from .errors import (
    InputValidationError,
    InternalInconsistency,
    SingularModel,
)
from .numberfield import FieldElem, FieldSpec
from .polynomials import UniPoly, poly_gcd, poly_ord_at

TVAR = "t"


@dataclass(frozen=True)
class Place:
    """A closed point of P^1: a monic factor pi(t), or the point at infinity.

    certified=False marks a pseudo-place (squarefree, pairwise coprime with
    the other places, but not proven irreducible; see factoring module).
    """

    kind: str  # "finite" | "infinity"
    pi: Optional[UniPoly] = None
    certified: bool = True

    @classmethod
    def finite(cls, pi: UniPoly, certified: bool = True) -> "Place":
        if pi.is_zero() or pi.degree < 1:
            raise InputValidationError("finite place needs a nonconstant poly")
        return cls("finite", pi.monic(), certified)

    @classmethod
    def infinity(cls) -> "Place":
        return cls("infinity", None)

    @property
    def degree(self) -> int:
        return 1 if self.kind == "infinity" else int(self.pi.degree)

    @property
    def is_infinity(self) -> bool:
        return self.kind == "infinity"

    def sort_key(self):
        if self.is_infinity:
            return (1, ())
        return (0, self.pi.sort_key())

    def __repr__(self):
        return "t = oo" if self.is_infinity else f"({self.pi})"


@dataclass(frozen=True)
class ModelInvariants:
    c4: UniPoly
    c6: UniPoly
    delta: UniPoly
    j_num: UniPoly
    j_den: UniPoly


class WeierstrassModel:
    """y^2 = x^3 + a2 x^2 + a4 x + a6 with polynomial coefficients in t."""

    def __init__(self, field: FieldSpec, a2: UniPoly, a4: UniPoly, a6: UniPoly,
                 chi: int = 1, var: str = TVAR, check_degrees: bool = True):
        self.field = field
        self.var = var
        self.a2, self.a4, self.a6 = a2, a4, a6
        self.chi = chi
        if chi < 1:
            raise InputValidationError("chi must be a positive integer")
        if check_degrees:
            for p, bound, name in ((a2, 2 * chi, "a2"), (a4, 4 * chi, "a4"),
                                   (a6, 6 * chi, "a6")):
                if not p.is_zero() and p.degree > bound:
                    raise InputValidationError(
                        f"deg {name} = {p.degree} exceeds {bound} for chi={chi}")
        self._invariants: Optional[ModelInvariants] = None
        if self.discriminant().is_zero():
            raise SingularModel("discriminant vanishes identically")

    # -- invariants ------------------------------------------------------------

    def invariants(self) -> ModelInvariants:
        if self._invariants is None:
            a2, a4, a6 = self.a2, self.a4, self.a6
            c4 = 16 * a2 * a2 - 48 * a4
            c6 = -64 * a2**3 + 288 * a2 * a4 - 864 * a6
            b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
            b8 = 4 * a2 * a6 - a4 * a4
            delta = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
            if c4**3 - c6**2 != 1728 * delta:
                raise InternalInconsistency("c4^3 - c6^2 != 1728*delta")
            num, den = c4**3, delta
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num / g, den / g
            if not den.is_zero() and den.lc() != 1:
                lc = den.lc()
                num, den = num / lc, den / lc
            self._invariants = ModelInvariants(c4, c6, delta, num, den)
        return self._invariants

    def discriminant(self) -> UniPoly:
        a2, a4, a6 = self.a2, self.a4, self.a6
        b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
        b8 = 4 * a2 * a6 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def cubic_coeffs(self):
        return self.a2, self.a4, self.a6

    def rhs_at(self, x):
        """x^3 + a2 x^2 + a4 x + a6 for x a rational function or polynomial."""
        return x**3 + self.a2 * x**2 + self.a4 * x + self.a6

    def translate_x(self, r: UniPoly) -> "WeierstrassModel":
        """The model in coordinates x = x' + r (same surface)."""
        a2 = self.a2 + 3 * r
        a4 = self.a4 + 2 * self.a2 * r + 3 * r * r
        a6 = self.a6 + self.a4 * r + self.a2 * r * r + r**3
        return WeierstrassModel(self.field, a2, a4, a6, self.chi, self.var,
                                check_degrees=False)

    def scale_down(self, pi: UniPoly, e: int = 1) -> "WeierstrassModel":
        """The model after x -> pi^(2e) x, y -> pi^(3e) y (exact division)."""
        return WeierstrassModel(
            self.field,
            self.a2 / pi**(2 * e),
            self.a4 / pi**(4 * e),
            self.a6 / pi**(6 * e),
            self.chi, self.var, check_degrees=False)

    def map_field(self, embed, new_field: FieldSpec) -> "WeierstrassModel":
        conv = lambda p: p.map_coeffs(embed.apply, new_field)
        return WeierstrassModel(new_field, conv(self.a2), conv(self.a4),
                                conv(self.a6), self.chi, self.var,
                                check_degrees=False)

    def __eq__(self, other):
        if not isinstance(other, WeierstrassModel):
            return NotImplemented
        return (self.field == other.field and self.var == other.var
                and self.a2 == other.a2 and self.a4 == other.a4
                and self.a6 == other.a6 and self.chi == other.chi)

    def __hash__(self):
        return hash((self.field, self.var, self.a2, self.a4, self.a6, self.chi))

    def __repr__(self):
        def term(p, mono):
            if p.is_zero():
                return ""
            return f" + ({p}){mono}" if not p.is_constant() else f" + {p}{mono}"
        return (f"y^2 = x^3{term(self.a2, '*x^2')}{term(self.a4, '*x')}"
                f"{term(self.a6, '')}").replace("+ -", "- ")


@dataclass
class LocalFrame:
    """How to move from the global model to the minimal model at one place.

    x_local = (x - shift) / pi^(2*scale), y_local = y / pi^(3*scale); when
    at_infinity, apply the u-chart weights first (t = 1/u,
    x -> u^(2*einf) x(1/u), y -> u^(3*einf) y(1/u)).
    """

    model: WeierstrassModel
    pi: UniPoly
    shift: UniPoly
    scale: int
    at_infinity: bool = False
    einf: int = 0


def minimalize_at(model: WeierstrassModel, place: Place):
    """Minimal model at a finite place; returns (model', scaling_exponent)."""
    frame = minimal_frame(model, place)
    return frame.model, frame.scale


def minimal_frame(model: WeierstrassModel, place: Place) -> LocalFrame:
    if place.is_infinity:
        raise InputValidationError("minimalize at a finite place only")
    pi = place.pi
    cur = model
    shift = UniPoly.zero(model.field, model.var)
    e = 0
    while True:
        inv = cur.invariants()
        n4 = poly_ord_at(inv.c4, pi) if not inv.c4.is_zero() else None
        nD = poly_ord_at(inv.delta, pi)
        if (n4 is not None and n4 < 4) or nD < 12:
            break
        # translate by the triple root lifted mod pi^2, then scale down
        pi2 = pi * pi
        r = (-cur.a2 / 3) % pi2
        cur = cur.translate_x(r)
        shift = shift + r * (pi**(2 * e))
        cur = cur.scale_down(pi)
        e += 1
    return LocalFrame(cur, pi, shift, e)


@dataclass
class InfinityChart:
    model: WeierstrassModel  # in the variable u, place u = 0 is t = infinity
    einf: int


def chart_at_infinity(model: WeierstrassModel) -> InfinityChart:
    """Substitute t = 1/u with the least twist e making coefficients polynomial."""
    e = 0
    for p, w in ((model.a2, 2), (model.a4, 4), (model.a6, 6)):
        if not p.is_zero():
            e = max(e, -(-int(p.degree) // w))  # ceil(deg / w)
    def conv(p: UniPoly, w: int) -> UniPoly:
        if p.is_zero():
            return UniPoly.zero(model.field, model.var)
        return p.reverse_weighted(w * e)
    m = WeierstrassModel(model.field, conv(model.a2, 2), conv(model.a4, 4),
                         conv(model.a6, 6), model.chi, model.var,
                         check_degrees=False)
    return InfinityChart(m, e)
