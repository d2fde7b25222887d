"""Elliptic surface bundle: model + minimal frames + fiber configuration.

Builds the full fiber list (finite places of the discriminant plus the
u-chart place at t = infinity), runs the Euler-number consistency check
sum deg(v) * e(F_v) = 12*chi, and re-runs lazily split pseudo-places until
the configuration is stable.
"""

from __future__ import annotations

from typing import Optional

from .errors import InternalInconsistency, NotEllipticSurface
from .factoring import factor_over_field
from .kodaira import FiberData, PlaceSplit, classify_place
from .numberfield import FieldSpec
from .polynomials import UniPoly, poly_ord_at
from .weierstrass import (
    InfinityChart,
    LocalFrame,
    Place,
    WeierstrassModel,
    chart_at_infinity,
    minimal_frame,
)


class EllipticSurface:
    """A relatively minimal elliptic surface over P^1 with zero section."""

    def __init__(self, model: WeierstrassModel):
        self.model = model
        self.field = model.field
        self.chi = model.chi
        self.infinity_chart: InfinityChart = chart_at_infinity(model)
        self.fibers: list[FiberData] = self._configure()
        self._by_place = {f.place: f for f in self.fibers}
        total = sum(f.degree * f.euler for f in self.fibers)
        if total == 0:
            raise NotEllipticSurface(
                "no singular fibers: not an elliptic surface (Sing(phi) empty)")
        if total != 12 * self.chi:
            raise InternalInconsistency(
                f"Euler total {total} != 12*chi = {12 * self.chi}")

    # -- configuration ----------------------------------------------------------

    def _configure(self) -> list[FiberData]:
        delta = self.model.invariants().delta
        places = [Place.finite(f.poly, f.certified)
                  for f in factor_over_field(delta)]
        fibers: list[FiberData] = []
        queue = list(places)
        while queue:
            place = queue.pop(0)
            try:
                fibers.append(classify_place(self.model, place))
            except PlaceSplit as split:
                g = split.factor.monic()
                h = (place.pi / g).monic()
                queue.append(Place.finite(g, certified=g.degree <= 1))
                queue.append(Place.finite(h, certified=h.degree <= 1))
        fibers = [f for f in fibers if not f.type.is_smooth]
        # the place u = 0 of the infinity chart
        chart = self.infinity_chart
        u_place = Place.finite(UniPoly.gen(self.field, self.model.var))
        frame = minimal_frame(chart.model, u_place)
        frame.at_infinity = True
        frame.einf = chart.einf
        inf_fiber = classify_place(chart.model, u_place, frame=frame)
        if not inf_fiber.type.is_smooth:
            inf_fiber.place = Place.infinity()
            fibers.append(inf_fiber)
        fibers.sort(key=lambda f: f.place.sort_key())
        return fibers

    # -- views --------------------------------------------------------------------

    @property
    def reducible_fibers(self) -> list[FiberData]:
        return [f for f in self.fibers if f.reducible]

    def fiber_at(self, place: Place) -> Optional[FiberData]:
        return self._by_place.get(place)

    def euler_total(self) -> int:
        return sum(f.degree * f.euler for f in self.fibers)

    def change_field(self, embed, new_field: FieldSpec) -> "EllipticSurface":
        return EllipticSurface(self.model.map_field(embed, new_field))

    def __repr__(self):
        parts = ", ".join(f"{f.type.label}@{f.place}" for f in self.fibers)
        return f"EllipticSurface(chi={self.chi}; {parts})"


def fiber_configuration(model: WeierstrassModel) -> list[FiberData]:
    """All singular fibers of the model, infinity included."""
    return EllipticSurface(model).fibers
