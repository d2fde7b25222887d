"""Sections of an elliptic surface: points of E(k(t)) under chord-tangent
addition, 2-torsion enumeration, and lifts of plane graphs x = c(t) through
the double cover.

Every constructed section is validated on-curve symbolically; the group law
runs on the generic fiber only (component behavior at singular fibers is
recovered afterwards by the heights module).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bipoly import BiPoly
from .errors import (
    InputValidationError,
    InternalInconsistency,
    ModelMismatch,
)
from .factoring import kt_roots_of_monic_cubic
from .numberfield import FieldElem, FieldSpec, FieldEmbedding, extend_by_sqrt
from .polynomials import RationalFunction, UniPoly, poly_square_root
from .weierstrass import WeierstrassModel


class Section:
    """The zero section or an affine point (x(t), y(t)) on the generic fiber."""

    __slots__ = ("model", "x", "y", "_zero")

    def __init__(self, model: WeierstrassModel, x: Optional[RationalFunction],
                 y: Optional[RationalFunction], _zero: bool = False,
                 check: bool = True):
        self.model = model
        self._zero = _zero
        self.x = x
        self.y = y
        if not _zero and check:
            if y * y != model.rhs_at(x):
                raise InputValidationError("point is not on the curve")

    @classmethod
    def zero(cls, model: WeierstrassModel) -> "Section":
        return cls(model, None, None, _zero=True)

    @classmethod
    def affine(cls, model: WeierstrassModel, x, y, check: bool = True) -> "Section":
        if isinstance(x, UniPoly):
            x = RationalFunction.from_poly(x)
        if isinstance(y, UniPoly):
            y = RationalFunction.from_poly(y)
        return cls(model, x, y, check=check)

    @property
    def is_zero(self) -> bool:
        return self._zero

    def _require_same_model(self, other: "Section"):
        if self.model != other.model:
            raise ModelMismatch("sections live on different models")

    def __eq__(self, other):
        if not isinstance(other, Section):
            return NotImplemented
        if self.model != other.model:
            return False
        if self._zero or other._zero:
            return self._zero and other._zero
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self._zero:
            return hash((self.model, "O"))
        return hash((self.model, self.x, self.y))

    def neg(self) -> "Section":
        if self._zero:
            return self
        return Section(self.model, self.x, -self.y, check=False)

    def add(self, other: "Section") -> "Section":
        self._require_same_model(other)
        if self._zero:
            return other
        if other._zero:
            return self
        m = self.model
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if y1 == -y2:
                return Section.zero(m)
            if y1 != y2:
                raise InternalInconsistency("same x with unrelated y on curve")
            num = 3 * x1 * x1 + 2 * x1 * m.a2 + RationalFunction.from_poly(m.a4)
            lam = num / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - m.a2 - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return Section(m, x3, y3)

    def smul(self, k: int) -> "Section":
        if k < 0:
            return self.neg().smul(-k)
        out = Section.zero(self.model)
        base = self
        while k:
            if k & 1:
                out = out.add(base)
            base = base.add(base)
            k >>= 1
        return out

    def sub(self, other: "Section") -> "Section":
        return self.add(other.neg())

    def map_field(self, embed: FieldEmbedding, new_model: WeierstrassModel) -> "Section":
        if self._zero:
            return Section.zero(new_model)
        conv = lambda rf: rf.map_coeffs(embed.apply, new_model.field)
        return Section(new_model, conv(self.x), conv(self.y), check=False)

    def sort_key(self):
        if self._zero:
            return (0,)
        return (1, self.x.sort_key(), self.y.sort_key())

    def __repr__(self):
        if self._zero:
            return "O"
        return f"({self.x}, {self.y})"


def add(p: Section, q: Section) -> Section:
    return p.add(q)


def neg(p: Section) -> Section:
    return p.neg()


def smul(k: int, p: Section) -> Section:
    return p.smul(k)


def two_torsion(model: WeierstrassModel) -> list[Section]:
    """All sections (r(t), 0): k[t]-roots of the Weierstrass cubic."""
    roots = kt_roots_of_monic_cubic(model.a2, model.a4, model.a6)
    zero = RationalFunction.from_poly(UniPoly.zero(model.field, model.var))
    return [Section.affine(model, RationalFunction.from_poly(r), zero, check=False)
            for r in roots]


def torsion_order(surface, p: Section, bound: int = 12) -> Optional[int]:
    """Least n <= bound with [n]p = O when p has height 0; None otherwise."""
    from .heights import height

    if p.is_zero:
        return 1
    if height(surface, p).height != 0:
        return None
    acc = p
    for n in range(1, bound + 1):
        if acc.is_zero:
            return n
        acc = acc.add(p)
    raise InternalInconsistency(
        f"height-0 section without order <= {bound}")


@dataclass
class PencilSetup:
    """Branch quartic f_Q(t, x), cubic and monic in x, with z_o = [0,1,0];
    the double cover is the Weierstrass model y^2 = f_Q(t, x)."""

    quartic: BiPoly
    model: WeierstrassModel


@dataclass
class GraphLift:
    """Result of lifting a plane graph x = c(t) to a pair of sections."""

    plus: Section
    minus: Section
    model: WeierstrassModel          # over the (possibly extended) field
    field: FieldSpec
    embed: Optional[FieldEmbedding]  # base -> extended, None if no extension
    extended: bool
    unit: FieldElem                  # g = unit * h(t)^2 over the base field
    torsion: bool = False


def section_from_graph(model: WeierstrassModel, c: UniPoly,
                       name: str | None = None) -> Optional[GraphLift]:
    """Lift x = c(t) through y^2 = f(t, x); None when the preimage stays
    irreducible (restriction is not a square up to a constant)."""
    if not c.is_zero() and c.degree > 2:
        raise InputValidationError("graph must be a line or conic: deg <= 2")
    g = model.rhs_at(RationalFunction.from_poly(c))
    gp = g.as_poly()
    if gp.is_zero():
        # the graph is a branch component: (c, 0) is 2-torsion
        zero_rf = RationalFunction.from_poly(UniPoly.zero(model.field, model.var))
        tor = Section.affine(model, c, zero_rf, check=False)
        return GraphLift(tor, tor, model, model.field, None, False,
                         model.field.one(), torsion=True)
    sq = poly_square_root(gp)
    if sq is None:
        return None
    h, unit = sq
    k = model.field
    w = k.sqrt(unit)
    if w is not None:
        if not w.lex_positive():
            w = -w
        y = RationalFunction.from_poly(h * w)
        plus = Section.affine(model, c, y)
        return GraphLift(plus, plus.neg(), model, k, None, False, unit)
    big, emb, w = extend_by_sqrt(k, unit, name)
    if not w.lex_positive():
        w = -w
    model2 = model.map_field(emb, big)
    c2 = c.map_coeffs(emb.apply, big)
    h2 = h.map_coeffs(emb.apply, big)
    y = RationalFunction.from_poly(h2 * w)
    plus = Section.affine(model2, c2, y)
    return GraphLift(plus, plus.neg(), model2, big, emb, True, unit)
