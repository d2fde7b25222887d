"""Kodaira fiber classification at places of P^1, char 0.

The type is read off the valuations (ord c4, ord c6, ord Delta) of the
minimal local model; residue computations only enter to build the chart
data that later locates which component a section meets.  Places that are
only pseudo-irreducible get their valuations cross-checked: a proper gcd
between a division remainder and the place polynomial is the D5 signal to
split the place and redo.

Component conventions: index 0 is the identity component.  For I_n the
non-identity components 1..n-1 form the A_{n-1} chain; for I_0* indices
1..3 are the three simple leaves away from the identity (ordered by the
sort key of the corresponding root of the auxiliary cubic) and 4 is the
central double component, which no section can meet.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import Optional

from .errors import (
    InternalInconsistency,
    IrreducibleFiber,
    UnsupportedResidue,
)
from .numberfield import FieldElem, _invert_matrix
from .polynomials import UniPoly, poly_gcd, poly_ord_at
from .weierstrass import LocalFrame, Place, WeierstrassModel


class PlaceSplit(Exception):
    """Internal: a pseudo-place turned out to be reducible; carries a factor."""

    def __init__(self, factor: UniPoly):
        super().__init__("pseudo-place split")
        self.factor = factor


@dataclass(frozen=True)
class KodairaType:
    series: str  # "I", "I*", "II", "III", "IV", "II*", "III*", "IV*"
    n: int = 0   # only for the I / I* series

    @property
    def label(self) -> str:
        if self.series == "I":
            return f"I{self.n}"
        if self.series == "I*":
            return f"I{self.n}*"
        return self.series

    @property
    def component_count(self) -> int:
        return {
            "I": max(1, self.n),
            "I*": self.n + 5,
            "II": 1, "III": 2, "IV": 3,
            "IV*": 7, "III*": 8, "II*": 9,
        }[self.series]

    @property
    def euler(self) -> int:
        return {
            "I": self.n,
            "I*": self.n + 6,
            "II": 2, "III": 3, "IV": 4,
            "IV*": 8, "III*": 9, "II*": 10,
        }[self.series]

    @property
    def is_multiplicative(self) -> bool:
        return self.series == "I" and self.n >= 1

    @property
    def is_smooth(self) -> bool:
        return self.series == "I" and self.n == 0

    @property
    def component_group_order(self) -> int:
        return {
            "I": max(1, self.n),
            "I*": 4,
            "II": 1, "III": 2, "IV": 3,
            "IV*": 3, "III*": 2, "II*": 1,
        }[self.series]

    def __repr__(self):
        return self.label


def intersection_matrix(ktype: KodairaType) -> list[list[int]]:
    """A_v on the non-identity components (diag -2, negative definite)."""
    m = ktype.component_count
    if m <= 1:
        raise IrreducibleFiber(f"{ktype} has no non-identity components")
    size = m - 1
    if ktype.series == "I":
        return _chain(size)
    if ktype.series == "III":
        return [[-2]]
    if ktype.series == "IV":
        return _chain(2)
    if ktype.series == "I*":
        if ktype.n == 0:
            # leaves 1..3 then the central component
            return [[-2, 0, 0, 1], [0, -2, 0, 1], [0, 0, -2, 1], [1, 1, 1, -2]]
        return _dynkin_d(size)
    if ktype.series == "IV*":
        return _dynkin_e(6)
    if ktype.series == "III*":
        return _dynkin_e(7)
    if ktype.series == "II*":
        return _dynkin_e(8)
    raise IrreducibleFiber(f"{ktype} has no intersection matrix")


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = -2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = 1
    return a


def _dynkin_d(n: int) -> list[list[int]]:
    a = _chain(n)
    # detach the last chain link, reattach both end leaves to node n-3
    a[n - 2][n - 1] = a[n - 1][n - 2] = 0
    a[n - 3][n - 1] = a[n - 1][n - 3] = 1
    return a


def _dynkin_e(n: int) -> list[list[int]]:
    a = _chain(n)
    a[n - 2][n - 1] = a[n - 1][n - 2] = 0
    a[2][n - 1] = a[n - 1][2] = 1
    return a


@dataclass
class ChartData:
    """Replayable record of the residue computations behind a classification."""

    steps: list = dfield(default_factory=list)
    payload: dict = dfield(default_factory=dict)


@dataclass
class FiberData:
    place: Place
    type: KodairaType
    m_v: int
    euler: int
    frame: LocalFrame
    matrix: Optional[list[list[int]]] = None
    chart: Optional[ChartData] = None
    component_group_order: int = 1

    _contr_inv: Optional[list[list[Fraction]]] = None

    @property
    def reducible(self) -> bool:
        return self.m_v > 1

    @property
    def degree(self) -> int:
        return self.place.degree

    def contr_entry(self, i: int, j: int) -> Fraction:
        """Entry (i, j) of (-A_v)^{-1}; zero when either index is 0."""
        if not (0 <= i < self.m_v and 0 <= j < self.m_v):
            raise InternalInconsistency("component index out of range")
        if i == 0 or j == 0:
            return Fraction(0)
        if self._contr_inv is None:
            neg = [[Fraction(-x) for x in row] for row in self.matrix]
            self._contr_inv = _invert_matrix(neg)
        return self._contr_inv[i - 1][j - 1]

    def __repr__(self):
        return f"{self.type.label} at {self.place} (m={self.m_v}, e={self.euler})"


def _ord_checked(f: UniPoly, place: Place) -> Optional[int]:
    """ord_place(f); None for the zero polynomial.

    For pseudo-places the division remainder is gcd-checked against pi: a
    proper common factor means the place is reducible with non-uniform
    valuations, and we raise PlaceSplit to let the caller refine.
    """
    if f.is_zero():
        return None
    pi = place.pi
    n = 0
    cur = f
    while True:
        q, r = divmod(cur, pi)
        if r.is_zero():
            cur = q
            n += 1
            continue
        if not place.certified:
            g = poly_gcd(r, pi)
            if 0 < g.degree < pi.degree:
                raise PlaceSplit(g)
        return n


def classify_place(model: WeierstrassModel, place: Place,
                   frame: Optional[LocalFrame] = None) -> FiberData:
    """Kodaira type at a finite place (pass a frame for chart-of-infinity places)."""
    from .weierstrass import minimal_frame

    if frame is None:
        frame = minimal_frame(model, place)
    local = frame.model
    inv = local.invariants()
    n4 = _ord_checked(inv.c4, place)
    n6 = _ord_checked(inv.c6, place)
    nD = _ord_checked(inv.delta, place)
    ktype = _type_from_orders(n4, n6, nD)
    chart = None
    if ktype.component_count > 1:
        chart = _build_chart(local, place, ktype)
    mat = intersection_matrix(ktype) if ktype.component_count > 1 else None
    return FiberData(
        place=place,
        type=ktype,
        m_v=ktype.component_count,
        euler=ktype.euler,
        frame=frame,
        matrix=mat,
        chart=chart,
        component_group_order=ktype.component_group_order,
    )


def _type_from_orders(n4: Optional[int], n6: Optional[int], nD: int) -> KodairaType:
    if nD == 0:
        return KodairaType("I", 0)
    if n4 is not None and n4 == 0:
        return KodairaType("I", nD)
    # additive reduction
    if (n4 is None or n4 >= 2) and (n6 is None or n6 >= 3) and nD >= 7:
        if n4 == 2 and n6 == 3:
            return KodairaType("I*", nD - 6)
    table = {2: KodairaType("II"), 3: KodairaType("III"), 4: KodairaType("IV"),
             6: KodairaType("I*", 0), 8: KodairaType("IV*"),
             9: KodairaType("III*"), 10: KodairaType("II*")}
    if nD in table:
        return table[nD]
    raise InternalInconsistency(
        f"no Kodaira type for (ord c4, ord c6, ord Delta) = ({n4}, {n6}, {nD}); "
        "model not minimal?")


# ---------------------------------------------------------------------------
# chart data: the residue information component location replays


def _residue_eval(f: UniPoly, t0: FieldElem) -> FieldElem:
    return f.eval(t0)


def _place_root(place: Place) -> Optional[FieldElem]:
    """The residue point for a degree-1 place pi = t - c."""
    if place.degree != 1:
        return None
    return -place.pi.coeff(0)


def _build_chart(local: WeierstrassModel, place: Place,
                 ktype: KodairaType) -> Optional[ChartData]:
    t0 = _place_root(place)
    if t0 is None:
        return None  # location on degree >= 2 places is unsupported
    k = local.field
    a2v = local.a2.eval(t0)
    a4v = local.a4.eval(t0)
    a6v = local.a6.eval(t0)
    chart = ChartData()
    if ktype.is_multiplicative and ktype.n >= 1:
        # nodal cubic: double root of x^3 + a2 x^2 + a4 x + a6 at t0
        cubic = UniPoly(k, "x", [a6v, a4v, a2v, k.one()])
        dc = cubic.derivative()
        g = poly_gcd(cubic, dc)
        if g.degree != 1:
            raise InternalInconsistency("multiplicative fiber without a node")
        node_x = -g.coeff(0)
        chart.payload["node_x"] = node_x
        chart.steps.append({"op": "node", "x0": node_x})
        if ktype.n >= 3:
            _chain_payload(chart, local, place, ktype.n, node_x)
        return chart
    # additive: triple root at -a2/3 mod pi
    x0 = -a2v / 3
    chart.payload["sing_x"] = x0
    chart.steps.append({"op": "translate", "x0": x0})
    if ktype.series == "IV":
        shifted = local.translate_x(UniPoly.const(k, local.var, x0))
        a6_2 = (shifted.a6 / place.pi**2).eval(t0)
        chart.payload["a6_over_pi2"] = a6_2
        root = k.sqrt(a6_2)
        if root is not None and not root.lex_positive():
            root = -root
        chart.payload["branch_sqrt"] = root
        chart.steps.append({"op": "blowup", "branches": "y^2 = a6,2"})
    elif ktype.series == "I*" and ktype.n == 0:
        shifted = local.translate_x(UniPoly.const(k, local.var, x0))
        p2 = place.pi
        b1 = (shifted.a2 / p2).eval(t0)
        b2 = (shifted.a4 / p2**2).eval(t0)
        b3 = (shifted.a6 / p2**3).eval(t0)
        pcubic = UniPoly(k, "T", [b3, b2, b1, k.one()])
        chart.payload["leaf_cubic"] = pcubic
        from .factoring import cubic_roots_in_field
        try:
            roots = cubic_roots_in_field(pcubic)
        except UnsupportedResidue:
            roots = None
        chart.payload["leaf_roots"] = roots
        chart.steps.append({"op": "blowup", "branches": f"T^3 cubic {pcubic}"})
    return chart


def _chain_payload(chart: ChartData, local: WeierstrassModel, place: Place,
                   n: int, node_x: FieldElem):
    """pi-adic split of the cubic for the I_n (n >= 3) component walk:
    cubic = (x - A) * (x^2 + B x + C) mod pi^(n+1), node at the quadratic."""
    k = local.field
    var = local.var
    pi = place.pi
    prec = pi ** (n + 1)
    t0 = _place_root(place)
    cubic = UniPoly(k, "x", [local.a6.eval(t0), local.a4.eval(t0),
                             local.a2.eval(t0), k.one()])
    # simple root mod pi: the one away from the node
    simple = None
    for r in _cubic_simple_roots(cubic, node_x):
        simple = r
        break
    if simple is None:
        raise InternalInconsistency("I_n fiber without a residue simple root")
    # Hensel lift x = A(t) with f(A) = 0 mod pi^(n+1)
    A = UniPoly.const(k, var, simple)
    f = lambda x: (x**3 + local.a2 * x**2 + local.a4 * x + local.a6) % prec
    fp = lambda x: (3 * x**2 + 2 * local.a2 * x + local.a4) % prec
    for _ in range(n + 2):
        val = f(A)
        if val.is_zero():
            break
        der = fp(A)
        inv = _invert_mod(der, prec)
        A = (A - val * inv) % prec
    if not f(A).is_zero():
        raise InternalInconsistency("Hensel lift for I_n chart failed")
    B = (local.a2 + A) % prec
    C = (local.a4 + A * (local.a2 + A)) % prec
    disc = (B * B - 4 * C)
    ordD = poly_ord_at(disc, pi) if not disc.is_zero() else None
    if ordD != n:
        raise InternalInconsistency(
            f"node quadratic discriminant has order {ordD}, expected {n}")
    chart.payload.update({"A": A, "B": B, "C": C, "prec": prec})
    slope_sq = (node_x - A.eval(_place_root(place)))
    chart.payload["slope_sq"] = slope_sq
    root = local.field.sqrt(slope_sq)
    if root is not None and not root.lex_positive():
        root = -root
    chart.payload["branch_sqrt"] = root
    chart.steps.append({"op": "chain", "n": n})


def _cubic_simple_roots(cubic: UniPoly, node_x: FieldElem):
    # deflate the double root, the remaining linear factor is the simple root
    k = cubic.domain
    lin = UniPoly(k, cubic.var, [-node_x, k.one()])
    rest = cubic
    for _ in range(2):
        q, r = divmod(rest, lin)
        if not r.is_zero():
            raise InternalInconsistency("node is not a double root")
        rest = q
    if rest.degree != 1:
        raise InternalInconsistency("unexpected cubic shape at a node")
    yield -rest.coeff(0) / rest.coeff(1)


def _invert_mod(f: UniPoly, modulus: UniPoly) -> UniPoly:
    from .polynomials import poly_xgcd

    g, s, _ = poly_xgcd(f % modulus, modulus)
    if g.degree != 0:
        raise InternalInconsistency("non-unit where a unit was expected")
    return (s / g.constant_value()) % modulus
