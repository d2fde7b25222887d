"""Shioda height pairing on sections of an elliptic surface.

height(P) = 2*chi + 2*(P.O) - sum over reducible fibers of the contribution
(-A_v)^{-1} entry at the components P meets, weighted by the place degree.
Cross pairings go through polarization, (h(P+Q) - h(P) - h(Q))/2, never
through direct section-section intersection numbers.

Component location replays the chart data recorded at classification time:
a section meets a non-identity component exactly when it passes through the
singular point of the local Weierstrass fiber, and the branch it takes is
read off residue data (node branch sign for I_n, auxiliary cubic root for
I_0*, square-root branch for IV).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .errors import (
    InputValidationError,
    InternalInconsistency,
    UnsupportedFiberType,
    UnsupportedResidue,
)
from .kodaira import FiberData
from .polynomials import RationalFunction, UniPoly, squarefree_decompose
from .sections import Section
from .surface import EllipticSurface
from .weierstrass import Place

SUPPORTED_LOCATION = ("I", "II", "III", "IV", "I*")


@dataclass(frozen=True)
class ComponentHit:
    place: Place
    component_index: int  # 0 = identity component


@dataclass
class HeightReport:
    sO: int
    hits: List[ComponentHit]
    contr_total: Fraction
    height: Fraction


def _localize(fiber: FiberData, p: Section):
    """Section coordinates in the minimal local frame of the fiber."""
    fr = fiber.frame
    x, y = p.x, p.y
    if fr.at_infinity:
        x = x.at_infinity(2 * fr.einf)
        y = y.at_infinity(3 * fr.einf)
    if not fr.shift.is_zero():
        x = x - fr.shift
    if fr.scale:
        pival = RationalFunction.from_poly(fr.pi)
        x = x / pival ** (2 * fr.scale)
        y = y / pival ** (3 * fr.scale)
    return x, y


def intersection_with_zero(surface: EllipticSurface, p: Section) -> int:
    """P.O as a sum of local pole multiplicities of x_P in minimal frames."""
    if p.is_zero:
        raise InputValidationError("intersection_with_zero needs an affine section")
    total = 0
    fiber_pis = []
    for fiber in surface.fibers:
        if not fiber.place.is_infinity:
            fiber_pis.append(fiber.frame.pi)
        total += _pole_mult_at(fiber, p) * fiber.degree
    # poles of x away from singular fibers (model smooth and minimal there)
    _, parts = squarefree_decompose(p.x.den)
    for q, e in parts:
        for pi in fiber_pis:  # already counted through their local frames
            qq, rem = divmod(q, pi)
            if rem.is_zero():
                q = qq
        if q.degree < 1:
            continue
        if e % 2:
            raise InternalInconsistency(
                f"odd pole order {e} of x at ({q}) in a minimal model")
        total += (e // 2) * int(q.degree)
    if not any(f.place.is_infinity for f in surface.fibers):
        einf = surface.infinity_chart.einf
        xinf = p.x.at_infinity(2 * einf)
        u = UniPoly.gen(surface.field, surface.model.var)
        ordu = xinf.ord_at(u)
        if ordu < 0:
            if ordu % 2:
                raise InternalInconsistency("odd pole order of x at infinity")
            total += -ordu // 2
    return total


def _pole_mult_at(fiber: FiberData, p: Section) -> int:
    x, _ = _localize(fiber, p)
    pi = fiber.frame.pi
    ordv = x.ord_at(pi)
    if ordv >= 0:
        return 0
    if ordv % 2:
        raise InternalInconsistency(
            f"odd pole order {-ordv} of x at {fiber.place} in the minimal model")
    return -ordv // 2


def component_at(fiber: FiberData, p: Section) -> ComponentHit:
    """Which component of the fiber the section passes through."""
    if p.is_zero:
        return ComponentHit(fiber.place, 0)
    series = fiber.type.series
    if series not in SUPPORTED_LOCATION:
        raise UnsupportedFiberType(f"component location at {fiber.type}")
    if series == "I" and fiber.type.n > 6:
        raise UnsupportedFiberType("component location at I_n for n > 6")
    if series == "I*" and fiber.type.n > 0:
        raise UnsupportedFiberType("component location at I_n* for n >= 1")
    if fiber.m_v == 1:
        return ComponentHit(fiber.place, 0)
    if fiber.chart is None or fiber.place.degree != 1:
        raise UnsupportedResidue(
            f"component location needs a degree-1 place at {fiber.place}")
    x, y = _localize(fiber, p)
    pi = fiber.frame.pi
    if x.ord_at(pi) < 0:
        return ComponentHit(fiber.place, 0)  # meets the fiber near the zero point
    t0 = -pi.coeff(0)
    xv = _eval_rf(x, t0)
    yv = _eval_rf(y, t0)
    payload = fiber.chart.payload
    if series == "I":
        node = payload["node_x"]
        if xv != node or not yv.is_zero():
            return ComponentHit(fiber.place, 0)
        n = fiber.type.n
        if n == 2:
            return ComponentHit(fiber.place, 1)
        return ComponentHit(fiber.place, _chain_index(fiber, p, x, y))
    sing_x = payload["sing_x"]
    if xv != sing_x or not yv.is_zero():
        return ComponentHit(fiber.place, 0)
    if series == "III":
        return ComponentHit(fiber.place, 1)
    if series == "IV":
        yres = _eval_rf(y / RationalFunction.from_poly(pi), t0)
        canon = payload["branch_sqrt"]
        if canon is None or yres * yres != payload["a6_over_pi2"]:
            raise InternalInconsistency("IV branch data inconsistent with hit")
        return ComponentHit(fiber.place, 1 if yres == canon else 2)
    if series == "I*":
        xres = _eval_rf((x - sing_x) / RationalFunction.from_poly(pi), t0)
        roots = payload["leaf_roots"]
        if roots is None:
            raise UnsupportedResidue("I_0* leaf roots not available in this field")
        if payload["leaf_cubic"].eval(xres) != 0 or xres not in roots:
            raise InternalInconsistency("I_0* hit does not match a leaf root")
        return ComponentHit(fiber.place, 1 + roots.index(xres))
    raise UnsupportedFiberType(f"component location at {fiber.type}")


def _chain_index(fiber: FiberData, p: Section, x, y) -> int:
    """Component index on an I_n fiber (n >= 3) via the quadratic-branch walk."""
    payload = fiber.chart.payload
    n = fiber.type.n
    pi = fiber.frame.pi
    t0 = -pi.coeff(0)
    B = payload["B"]
    half_b = RationalFunction.from_poly(B) / 2
    shifted = x + half_b
    j = n // 2 if shifted.is_zero() else min(shifted.ord_at(pi), n // 2)
    if 2 * j >= n:
        if n % 2:
            raise InternalInconsistency("odd I_n with central-depth hit")
        return n // 2
    canon = payload["branch_sqrt"]
    if canon is None:
        raise InternalInconsistency(
            "section on a branch whose slope is not in the field")
    ratio = y / (shifted * canon)
    sigma = _eval_rf(ratio, t0)
    if sigma == fiber.frame.model.field.one():
        return j
    if sigma == -fiber.frame.model.field.one():
        return n - j
    raise InternalInconsistency("I_n branch sign is not +-1")


def _eval_rf(rf: RationalFunction, t0):
    den = rf.den.eval(t0)
    if den.is_zero():
        raise InternalInconsistency("unexpected pole in residue evaluation")
    return rf.num.eval(t0) / den


def contribution(fiber: FiberData, i: int, j: int) -> Fraction:
    """Contr_v for sections through components i and j (0 = identity)."""
    return fiber.contr_entry(i, j)


def height(surface: EllipticSurface, p: Section) -> HeightReport:
    """Self-height via the explicit formula (s.s = -chi for sections)."""
    if p.is_zero:
        return HeightReport(0, [], Fraction(0), Fraction(0))
    s_o = intersection_with_zero(surface, p)
    hits = []
    contr = Fraction(0)
    for fiber in surface.reducible_fibers:
        hit = component_at(fiber, p)
        hits.append(hit)
        contr += fiber.degree * contribution(fiber, hit.component_index,
                                             hit.component_index)
    h = Fraction(2 * surface.chi + 2 * s_o) - contr
    if h < 0:
        raise InternalInconsistency(f"negative height {h}")
    return HeightReport(s_o, hits, contr, h)


def pairing(surface: EllipticSurface, p: Section, q: Section) -> Fraction:
    """Bilinear height pairing by polarization."""
    if p.is_zero or q.is_zero:
        return Fraction(0)
    if p == q:
        return height(surface, p).height
    hpq = height(surface, p.add(q)).height
    return (hpq - height(surface, p).height - height(surface, q).height) / 2


@dataclass
class GramMatrix:
    sections: list
    entries: list  # list of list of Fraction

    def det(self) -> Fraction:
        return _det([row[:] for row in self.entries])

    def is_positive_definite(self) -> bool:
        n = len(self.entries)
        for k in range(1, n + 1):
            minor = [row[:k] for row in self.entries[:k]]
            if _det(minor) <= 0:
                return False
        return True


def _det(m) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def gram_matrix(surface: EllipticSurface, sections: list) -> GramMatrix:
    n = len(sections)
    heights = [height(surface, s).height for s in sections]
    entries = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = heights[i]
    for i in range(n):
        for j in range(i + 1, n):
            hij = height(surface, sections[i].add(sections[j])).height
            val = (hij - heights[i] - heights[j]) / 2
            entries[i][j] = entries[j][i] = val
    return GramMatrix(sections, entries)


@dataclass
class PhiClass:
    """Coefficients of phi(P) = P - O - (sO+chi) F + sum c_{v,i} Theta_{v,i}."""

    coeff_o: Fraction
    coeff_f: Fraction
    theta: dict  # (place, index) -> Fraction
    report: HeightReport


def shioda_phi(surface: EllipticSurface, p: Section) -> PhiClass:
    rep = height(surface, p)
    theta = {}
    for fiber, hit in zip(surface.reducible_fibers, rep.hits):
        size = fiber.m_v - 1
        if hit.component_index == 0:
            continue
        for i in range(1, fiber.m_v):
            c = fiber.contr_entry(i, hit.component_index)
            if c:
                theta[(fiber.place, i)] = c
    return PhiClass(Fraction(-1), Fraction(-(rep.sO + surface.chi)), theta, rep)


def phi_self_intersection(surface: EllipticSurface, p: Section,
                          phi: PhiClass) -> Fraction:
    """-phi(P).phi(P) evaluated formally in NS(S) x Q; equals the height."""
    chi = Fraction(surface.chi)
    rep = phi.report
    so = Fraction(rep.sO)
    a, b = phi.coeff_o, phi.coeff_f
    # basis P, O, F with P.P = O.O = -chi, P.O = sO, P.F = O.F = 1, F.F = 0
    total = (-chi) + 2 * a * so + 2 * b * 1 + a * a * (-chi) + 2 * a * b * 1
    hitmap = {h.place: h.component_index for h in rep.hits}
    for fiber in surface.reducible_fibers:
        hi = hitmap.get(fiber.place, 0)
        block = Fraction(0)
        size = fiber.m_v - 1
        coeffs = [phi.theta.get((fiber.place, i + 1), Fraction(0))
                  for i in range(size)]
        # 2 * P . (sum c_i Theta_i) : P meets only component hi
        if hi != 0:
            block += 2 * coeffs[hi - 1]
        # (sum c_i Theta_i)^2 via A_v
        for i in range(size):
            if coeffs[i] == 0:
                continue
            for j in range(size):
                if coeffs[j]:
                    block += coeffs[i] * coeffs[j] * fiber.matrix[i][j]
        total += fiber.degree * block
    return -total


def phi_orthogonality_defects(surface: EllipticSurface, p: Section,
                              phi: PhiClass) -> dict:
    """phi(P).O, phi(P).F, and each phi(P).Theta_{v,i}; all must vanish."""
    chi = Fraction(surface.chi)
    rep = phi.report
    so = Fraction(rep.sO)
    a, b = phi.coeff_o, phi.coeff_f
    out = {"O": so + a * (-chi) + b * 1, "F": 1 + a * 1}
    hitmap = {h.place: h.component_index for h in rep.hits}
    for fiber in surface.reducible_fibers:
        hi = hitmap.get(fiber.place, 0)
        size = fiber.m_v - 1
        coeffs = [phi.theta.get((fiber.place, i + 1), Fraction(0))
                  for i in range(size)]
        for j in range(1, fiber.m_v):
            val = Fraction(1 if hi == j else 0)
            for i in range(size):
                if coeffs[i]:
                    val += coeffs[i] * fiber.matrix[i][j - 1]
            out[f"Theta({fiber.place},{j})"] = val
    return out
