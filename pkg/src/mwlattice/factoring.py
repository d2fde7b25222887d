"""Factorization over Q and over quadratic-tower number fields.

The strategy is deliberately bounded, following the needs of the height
pipeline: squarefree decomposition everywhere; over Q full splitting for
degree <= 4 plus rational-root extraction above that; over proper fields
linear factors (via the rational-coordinate gcd trick), quadratics (tower
disc test), and prime-odd-degree Q-irreducible factors (degree argument).
Anything deeper stays a *pseudo-irreducible* factor that downstream places
split lazily when a zero divisor shows up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    FactorizationFailure,
    InputValidationError,
    UnsupportedResidue,
    ZeroPolynomial,
)
from .numberfield import FieldElem, FieldSpec
from .polynomials import UniPoly, poly_gcd, squarefree_decompose
from .rationals import divisors, fraction_sqrt


@dataclass(frozen=True)
class IrreducibleFactor:
    poly: UniPoly
    multiplicity: int
    certified: bool  # irreducibility proven (vs pseudo-irreducible)

    def __iter__(self):  # tuple-style unpacking (poly, multiplicity)
        return iter((self.poly, self.multiplicity))


def _coeff_coordinates(f: UniPoly) -> list[list[Fraction]]:
    """The Q-coordinate polynomials of f along the power basis of its field."""
    n = f.domain.degree
    return [[c.coeffs[i] for c in f.coeffs] for i in range(n)]


def rational_roots(f: UniPoly) -> list[Fraction]:
    """Rational roots of f (over any FieldSpec), without multiplicity."""
    if f.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    coords = _coeff_coordinates(f)
    # a rational r is a root iff it is a root of every coordinate polynomial
    g = None
    for c in coords:
        if any(c):
            poly = _qpoly(c)
            g = poly if g is None else _qgcd(g, poly)
    if g is None:
        raise ZeroPolynomial("roots of the zero polynomial")
    return _qrational_roots(g)


def _qpoly(c: list[Fraction]) -> list[Fraction]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _qgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        r = _qmod(a, b)
        a, b = b, r
    if a:
        lc = a[-1]
        a = [x / lc for x in a]
    return a


def _qmod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] * inv
        k = len(a) - len(b)
        for i in range(len(b)):
            a[i + k] -= f * b[i]
        a.pop()
    return _qpoly(a)


def _qrational_roots(c: list[Fraction]) -> list[Fraction]:
    roots = []
    c = _qpoly(c)
    if not c:
        return roots
    while len(c) > 1 and c[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        c = c[1:]
    if len(c) <= 1:
        return sorted(roots)
    den = lcm(*[x.denominator for x in c])
    ints = [int(x * den) for x in c]
    seen = set()
    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = Fraction(0)
                for cf in reversed(c):
                    acc = acc * cand + cf
                if acc == 0:
                    roots.append(cand)
    return sorted(set(roots))


def quadratic_roots_in_field(f: UniPoly) -> list[FieldElem] | None:
    """Roots in the coefficient field of a degree-2 polynomial.

    Returns [] when provably rootless, None never; raises UnsupportedField
    if the field carries no tower structure.
    """
    k = f.domain
    a, b, c = f.coeff(2), f.coeff(1), f.coeff(0)
    disc = b * b - 4 * a * c
    s = k.sqrt(disc)
    if s is None:
        return []
    inv2a = 1 / (2 * a)
    r1 = (-b + s) * inv2a
    r2 = (-b - s) * inv2a
    return [r1] if r1 == r2 else sorted([r1, r2], key=lambda e: e.sort_key())


def cubic_roots_in_field(f: UniPoly) -> list[FieldElem]:
    """Roots in the coefficient field of a degree-3 polynomial.

    Complete for: cubics with a rational root (deflate, then quadratic);
    cubics with all-rational coefficients over 2-power tower fields (a
    Q-irreducible cubic stays irreducible there).  Raises UnsupportedResidue
    on the remaining case (rootless-over-Q cubic with irrational coefficients).
    """
    k = f.domain
    roots: list[FieldElem] = []
    work = f
    for r in rational_roots(f):
        e = k.coerce(r)
        lin = UniPoly(k, f.var, [-e, k.one()])
        while True:
            q, rem = divmod(work, lin)
            if rem.is_zero():
                if e not in roots:
                    roots.append(e)
                work = q
            else:
                break
    if work.degree >= 3:
        rational_coeffs = all(c.is_rational() for c in work.coeffs)
        if rational_coeffs and _tower_degree_is_power_of_two(k):
            pass  # Q-irreducible cubic has no roots in a 2-power field
        else:
            raise UnsupportedResidue(
                "cubic root finding beyond the supported strategy")
    elif work.degree == 2:
        roots.extend(r for r in quadratic_roots_in_field(work) if r not in roots)
    elif work.degree == 1:
        r = -work.coeff(0) / work.coeff(1)
        if r not in roots:
            roots.append(r)
    return sorted(roots, key=lambda e: e.sort_key())


def _tower_degree_is_power_of_two(k: FieldSpec) -> bool:
    d = k.degree
    return d & (d - 1) == 0


# ---------------------------------------------------------------------------
# full factorization


def factor_over_field(f: UniPoly) -> list[IrreducibleFactor]:
    """Monic factors with multiplicities; unit recoverable as f.lc().

    Factors of degree <= 2 are always certified irreducible.  Over Q the
    splitting is complete up to degree 4 inside each squarefree part (and
    rational roots are always split off).  Residual chunks the strategy
    cannot certify are returned with certified=False (pseudo-irreducible);
    a fully uncertifiable input raises FactorizationFailure only when the
    caller demands certification via factor_over_field_certified.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    _, parts = squarefree_decompose(f)
    out: list[IrreducibleFactor] = []
    for g, e in parts:
        for piece, certified in _split_squarefree(g):
            out.append(IrreducibleFactor(piece, e, certified))
    out.sort(key=lambda fac: fac.poly.sort_key())
    return out


def factor_over_field_certified(f: UniPoly) -> list[IrreducibleFactor]:
    factors = factor_over_field(f)
    bad = [fc for fc in factors if not fc.certified]
    if bad:
        raise FactorizationFailure(
            f"factorization strategy exceeded on {len(bad)} piece(s)",
            partial=factors)
    return factors


def _split_squarefree(g: UniPoly) -> list[tuple[UniPoly, bool]]:
    """Split a monic squarefree polynomial; bool flags certified irreducible."""
    k = g.domain
    var = g.var
    pieces: list[tuple[UniPoly, bool]] = []
    work = g
    # split off linear factors from rational roots
    for r in rational_roots(g):
        lin = UniPoly(k, var, [k.coerce(-r), k.one()])
        q, rem = divmod(work, lin)
        if rem.is_zero():
            pieces.append((lin, True))
            work = q
    if work.degree <= 0:
        return pieces
    if work.degree == 1:
        pieces.append((work, True))
        return pieces
    if work.degree == 2:
        pieces.extend(_split_quadratic(work))
        return pieces
    rational_coeffs = all(c.is_rational() for c in work.coeffs)
    if rational_coeffs:
        pieces.extend(_split_rational_chunk(work))
        return pieces
    pieces.append((work, False))
    return pieces


def _split_quadratic(q: UniPoly) -> list[tuple[UniPoly, bool]]:
    k = q.domain
    try:
        roots = quadratic_roots_in_field(q)
    except Exception:
        return [(q, False)]
    if not roots:
        return [(q, True)]
    out = []
    for r in roots:
        out.append((UniPoly(k, q.var, [-r, k.one()]), True))
    if len(roots) == 1:  # double root cannot happen in a squarefree part
        out.append((UniPoly(k, q.var, [-roots[0], k.one()]), True))
    return out


def _split_rational_chunk(work: UniPoly) -> list[tuple[UniPoly, bool]]:
    """work squarefree, rational coefficients, degree >= 3, no rational roots."""
    k = work.domain
    var = work.var
    qcoeffs = [c.as_fraction() for c in work.coeffs]
    qfactors = _qfactor_squarefree(qcoeffs)
    pieces: list[tuple[UniPoly, bool]] = []
    for qf in qfactors:
        lift = UniPoly(k, var, [k.coerce(c) for c in qf])
        deg = len(qf) - 1
        if deg == 1:
            pieces.append((lift, True))
        elif deg == 2:
            pieces.extend(_split_quadratic(lift))
        elif deg % 2 == 1 and _tower_degree_is_power_of_two(k) and _is_prime_small(deg):
            # odd-prime-degree Q-irreducible factors stay irreducible over
            # 2-power tower fields
            pieces.append((lift, True))
        elif k.degree == 1:
            pieces.append((lift, deg <= 4))
        else:
            pieces.append((lift, False))
    return pieces


def _is_prime_small(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, n))


def _qfactor_squarefree(c: list[Fraction]) -> list[list[Fraction]]:
    """Factor a squarefree monic-izable Q[x] polynomial into monic pieces.

    Complete for degree <= 4; beyond that, rational roots are split off and
    the cofactor is returned whole (callers treat it per its degree).
    """
    c = [x / c[-1] for x in c]
    out: list[list[Fraction]] = []
    for r in _qrational_roots(c):
        lin = [-r, Fraction(1)]
        q, rem = _qdivmod_loc(c, lin)
        assert not rem
        out.append(lin)
        c = q
    deg = len(c) - 1
    if deg <= 0:
        return out
    if deg <= 2:
        if deg == 2:
            disc = c[1] * c[1] - 4 * c[0]
            s = fraction_sqrt(disc)
            if s is not None:
                out.append([(-c[1] + s) / 2 * -1, Fraction(1)])
                out.append([(-c[1] - s) / 2 * -1, Fraction(1)])
                return out
        out.append(c)
        return out
    if deg == 3:
        out.append(c)  # no rational root -> irreducible over Q
        return out
    if deg == 4:
        split = _qquartic_split(c)
        if split is None:
            out.append(c)
        else:
            out.extend(split)
        return out
    out.append(c)
    return out


def _qdivmod_loc(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] * inv
        q[len(a) - len(b)] = f
        for i in range(len(b)):
            a[i + len(a) - len(b)] -= f * b[i]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    while q and q[-1] == 0:
        q.pop()
    return q, a


def _qquartic_split(c: list[Fraction]) -> list[list[Fraction]] | None:
    """Split a monic rational quartic without rational roots into two monic
    quadratics over Q, or None if irreducible."""
    sh = -c[3] / 4
    binom = [[1], [1, 1], [1, 2, 1], [1, 3, 3, 1], [1, 4, 6, 4, 1]]
    dep = [Fraction(0)] * 5
    for i, mi in enumerate(c):
        for j in range(i + 1):
            dep[j] += mi * binom[i][j] * sh ** (i - j)
    r, q, p = dep[0], dep[1], dep[2]

    def undepress(quad: list[Fraction]) -> list[Fraction]:
        # substitute y -> x - sh into y^2 + quad[1] y + quad[0]
        b, a = quad[0], quad[1]
        return [b - a * sh + sh * sh, a - 2 * sh, Fraction(1)]

    if q == 0:
        disc = p * p - 4 * r
        s = fraction_sqrt(disc)
        if s is not None:
            return [undepress([(p + s) / 2, Fraction(0)]),
                    undepress([(p - s) / 2, Fraction(0)])]
        rr = fraction_sqrt(r)
        if rr is not None:
            for b0 in (rr, -rr):
                a2 = 2 * b0 - p
                if a2 > 0:
                    a = fraction_sqrt(a2)
                    if a is not None:
                        return [undepress([b0, a]), undepress([b0, -a])]
        return None
    res = [-q * q, p * p - 4 * r, 2 * p, Fraction(1)]
    for u in _qrational_roots(res):
        if u <= 0:
            continue
        a = fraction_sqrt(u)
        if a is None:
            continue
        b = (p + u - q / a) / 2
        d = (p + u + q / a) / 2
        if b * d == r:
            return [undepress([b, a]), undepress([d, -a])]
    return None


# ---------------------------------------------------------------------------
# polynomial roots in k[t] of a monic cubic in x (for 2-torsion)


def kt_roots_of_monic_cubic(a2: UniPoly, a4: UniPoly, a6: UniPoly) -> list[UniPoly]:
    """All r in k[t] with r^3 + a2 r^2 + a4 r + a6 = 0.

    Specializes at enough rational points, finds k-roots of the specialized
    cubics, and interpolates candidates; every candidate is verified exactly.
    """
    k = a2.domain
    var = a2.var
    dbound = 0
    for poly, w in ((a2, 1), (a4, 2), (a6, 3)):
        if not poly.is_zero():
            dbound = max(dbound, -(-int(poly.degree) // w))  # ceil
    points = [Fraction(i) for i in range(dbound + 1)]
    root_sets = []
    for t0 in points:
        cubic = UniPoly(k, "x", [a6.eval(k.coerce(t0)), a4.eval(k.coerce(t0)),
                                 a2.eval(k.coerce(t0)), k.one()])
        root_sets.append(cubic_roots_in_field(cubic))
    found: list[UniPoly] = []
    for combo in _product(root_sets):
        cand = _lagrange(k, var, points, combo)
        if cand in found:
            continue
        val = (cand**3 + a2 * cand**2 + a4 * cand + a6)
        if val.is_zero():
            found.append(cand)
    found.sort(key=lambda p: p.sort_key())
    return found


def _product(sets):
    if not sets:
        yield []
        return
    for head in sets[0]:
        for tail in _product(sets[1:]):
            yield [head] + tail


def _lagrange(k: FieldSpec, var: str, xs, ys) -> UniPoly:
    total = UniPoly.zero(k, var)
    t = UniPoly.gen(k, var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = UniPoly.const(k, var, yi)
        for j, xj in enumerate(xs):
            if i == j:
                continue
            term = term * (t - UniPoly.const(k, var, k.coerce(xj)))
            term = term * (k.one() / (k.coerce(xi) - k.coerce(xj)))
        total = total + term
    return total
