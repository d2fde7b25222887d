"""Exact arithmetic in Q and in number fields k = Q[alpha]/(m(alpha)).

Elements are coefficient vectors of Fractions in the power basis of alpha,
always reduced mod the minimal polynomial.  Every field constructed at
runtime is a *quadratic tower* over Q (each layer adjoins a square root),
which is what makes exact square-root tests possible: is_square recurses
through the tower down to a rational square test.  User-declared fields of
degree 1 and 2 are canonicalized into tower form; higher-degree primitive
fields are accepted for plain arithmetic but refuse square-class queries.

Extensions k(sqrt(u)) are built with a primitive element gamma = alpha + c*w
(w = sqrt(u)); the minimal polynomial of gamma and the re-embedding of k come
out of one exact linear-algebra pass over the power images of gamma.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DivisionByZero,
    FieldDegreeCap,
    FieldMismatch,
    InputValidationError,
    UnsupportedField,
)
from .rationals import divisors, fraction_sqrt, squarefree_part

DEFAULT_DEGREE_CAP = 8


def degree_cap() -> int:
    return int(os.environ.get("MWL_FIELD_DEGREE_CAP", DEFAULT_DEGREE_CAP))


# ---------------------------------------------------------------------------
# small exact helpers on Q[x] represented as lists of Fractions (low->high)


def _qtrim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _qdivmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, bc in enumerate(b):
            a[i + k] -= f * bc
        a.pop()
    return _qtrim(q), _qtrim(a)


def _qmul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _qtrim(out)


def _qxgcd(a: Sequence[Fraction], b: Sequence[Fraction]):
    """Extended gcd in Q[x]: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _qtrim(list(a)), _qtrim(list(b))
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qtrim([x - y for x, y in _zipsum(s0, _qmul(q, s1))])
        t0, t1 = t1, _qtrim([x - y for x, y in _zipsum(t0, _qmul(q, t1))])
    if r0:
        lc = r0[-1]
        r0 = [c / lc for c in r0]
        s0 = [c / lc for c in s0]
        t0 = [c / lc for c in t0]
    return r0, s0, t0


def _zipsum(a: Sequence[Fraction], b: Sequence[Fraction]):
    n = max(len(a), len(b))
    aa = list(a) + [Fraction(0)] * (n - len(a))
    bb = list(b) + [Fraction(0)] * (n - len(b))
    return list(zip(aa, bb))


def _rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots of a nonzero Q[x] polynomial, with the p/q candidate sieve."""
    c = _qtrim(list(coeffs))
    if not c:
        raise InputValidationError("zero polynomial has every root")
    roots = []
    while len(c) > 1 and c[0] == 0:
        roots.append(Fraction(0))
        c = c[1:]
    if len(c) <= 1:
        return roots
    from math import lcm

    den = lcm(*[x.denominator for x in c])
    ints = [int(x * den) for x in c]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return roots
    seen = set()
    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = Fraction(0)
                for cf in reversed(c):
                    acc = acc * cand + cf
                if acc == 0:
                    roots.append(cand)
    # report with multiplicity 1 each; callers deflate if they care
    return roots


def _is_irreducible_q(coeffs: Sequence[Fraction]) -> bool:
    """Irreducibility over Q for degree <= 4 (rational roots + quartic resolvent)."""
    c = _qtrim(list(coeffs))
    n = len(c) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if _rational_roots(c):
        return False
    if n in (2, 3):
        return True
    if n == 4:
        return not _quartic_splits_into_quadratics(c)
    raise UnsupportedField(f"irreducibility test not implemented for degree {n}")


def _quartic_splits_into_quadratics(c: Sequence[Fraction]) -> bool:
    # normalize monic, depress x -> y - c3/4, then test (y^2+ay+b)(y^2-ay+d)
    lc = c[-1]
    m = [x / lc for x in c]
    sh = -m[3] / 4
    # coefficients of m(y + sh)
    coeffs = [Fraction(0)] * 5
    binom = [[1], [1, 1], [1, 2, 1], [1, 3, 3, 1], [1, 4, 6, 4, 1]]
    for i, mi in enumerate(m):
        for j in range(i + 1):
            coeffs[j] += mi * binom[i][j] * sh ** (i - j)
    r, q, p, z, one = coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]
    assert z == 0 and one == 1
    if q == 0:
        disc = p * p - 4 * r
        if fraction_sqrt(disc) is not None:
            return True
        rr = fraction_sqrt(r)
        if rr is not None:
            for b in (rr, -rr):
                a2 = 2 * b - p
                if a2 >= 0 and fraction_sqrt(a2) is not None:
                    return True
        return False
    # resolvent cubic in u = a^2: u^3 + 2p u^2 + (p^2-4r) u - q^2 = 0
    res = [-q * q, p * p - 4 * r, 2 * p, Fraction(1)]
    for u in _rational_roots(res):
        if u <= 0:
            continue
        a = fraction_sqrt(u)
        if a is None:
            continue
        b = (p + u - q / a) / 2
        d = (p + u + q / a) / 2
        if b * d == r:
            return True
    return False


# ---------------------------------------------------------------------------


class FieldSpec:
    """A number field Q[alpha]/(m(alpha)); degree 1 encodes Q itself.

    min_poly is the monic minimal polynomial as a tuple of Fractions
    (constant term first).  tower, when present, describes the field as a
    quadratic extension base(sqrt(radicand)) and carries the data needed
    for exact square-root recursion and re-embedding.
    """

    def __init__(self, min_poly: Sequence[Fraction], generator_name: str,
                 check_irreducible: bool = True):
        mp = tuple(Fraction(x) for x in min_poly)
        if not mp or mp[-1] != 1:
            raise InputValidationError("minimal polynomial must be monic")
        self.min_poly = mp
        self.degree = len(mp) - 1
        if self.degree < 1:
            raise InputValidationError("minimal polynomial must have degree >= 1")
        self.generator_name = generator_name
        if check_irreducible and self.degree <= 4 and not _is_irreducible_q(mp):
            raise InputValidationError(
                f"minimal polynomial of {generator_name} is reducible over Q")
        self.tower: Optional[TowerStep] = None
        self._powers = self._reduction_table()

    def _reduction_table(self):
        # alpha^k for k in [deg, 2*deg-2], reduced, as coefficient tuples
        n = self.degree
        table = []
        cur = [Fraction(0)] * n
        if n == 1:
            return table
        cur[-1] = Fraction(1)  # alpha^(n-1)
        for _ in range(n - 1):
            shifted = [Fraction(0)] + cur  # multiply by alpha
            top = shifted[n]
            red = [shifted[i] - top * self.min_poly[i] for i in range(n)]
            table.append(tuple(red))
            cur = red
        return table

    # -- constructors ------------------------------------------------------

    _Q: Optional["FieldSpec"] = None

    @classmethod
    def rationals(cls) -> "FieldSpec":
        if cls._Q is None:
            q = cls((Fraction(0), Fraction(1)), "q")
            cls._Q = q
        return cls._Q

    @classmethod
    def from_min_poly(cls, coeffs: Sequence, generator_name: str) -> "FieldSpec":
        mp = [Fraction(x) for x in coeffs]
        if len(mp) - 1 == 1:
            return cls.rationals()
        spec = cls(mp, generator_name)
        if spec.degree == 2:
            # x^2 + p x + q: w = 2 alpha + p satisfies w^2 = p^2 - 4q
            p, q = mp[1], mp[0]
            d = p * p - 4 * q
            base = cls.rationals()
            w = spec.element([p, 2])
            spec.tower = TowerStep(
                base=base,
                radicand=base.element([d]),
                w=w,
                embed=FieldEmbedding.inclusion_of_rationals(spec),
                alpha_parts=(base.element([-p / 2]), base.element([Fraction(1, 2)])),
                decomp=_QuadraticDecomp.for_quadratic(spec, p),
            )
        return spec

    # -- element helpers ----------------------------------------------------

    def element(self, coeffs: Iterable) -> "FieldElem":
        c = [Fraction(x) for x in coeffs]
        if len(c) > self.degree:
            raise InputValidationError("coefficient vector longer than field degree")
        c += [Fraction(0)] * (self.degree - len(c))
        return FieldElem(self, tuple(c))

    def zero(self) -> "FieldElem":
        return self.element([])

    def one(self) -> "FieldElem":
        return self.element([1])

    def gen(self) -> "FieldElem":
        if self.degree == 1:
            raise InputValidationError("Q has no generator")
        return self.element([0, 1])

    def coerce(self, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.field == self:
                return x
            if x.field.degree == 1:
                return self.element([x.coeffs[0]])
            raise FieldMismatch(f"cannot coerce element of {x.field} into {self}")
        return self.element([Fraction(x)])

    @property
    def is_rationals(self) -> bool:
        return self.degree == 1

    # -- square roots through the tower -------------------------------------

    def sqrt(self, u: "FieldElem") -> Optional["FieldElem"]:
        """An exact square root of u in this field, or None."""
        u = self.coerce(u)
        if u.is_zero():
            return self.zero()
        if self.degree == 1:
            r = fraction_sqrt(u.coeffs[0])
            return None if r is None else self.element([r])
        if self.tower is None:
            raise UnsupportedField(
                f"square-root test needs tower structure; field {self} has none")
        step = self.tower
        a, b = step.decomp.split(u)
        base = step.base
        if b.is_zero():
            s = base.sqrt(a)
            if s is not None:
                return step.embed.apply(s)
            s = base.sqrt(a / step.radicand)
            if s is not None:
                return step.embed.apply(s) * step.w
            return None
        delta2 = a * a - b * b * step.radicand
        delta = base.sqrt(delta2)
        if delta is None:
            return None
        for d in (delta, -delta):
            s2 = (a + d) / base.coerce(2)
            s = base.sqrt(s2)
            if s is not None and not s.is_zero():
                r = b / (base.coerce(2) * s)
                cand = step.embed.apply(s) + step.embed.apply(r) * step.w
                if cand * cand == u:
                    return cand
        return None

    def is_square(self, u: "FieldElem") -> bool:
        return self.sqrt(u) is not None

    # -- dunder boilerplate --------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        if self.degree == 1:
            return "Q"
        return f"Q({self.generator_name})[deg {self.degree}]"


class _QuadraticDecomp:
    """Splits elements of a quadratic-tower field into a + b*w over the base."""

    def __init__(self, matrix_inv_rows):
        # rows of the inverse change-of-basis: maps self-coeff vector to
        # the concatenated (a-coeffs, b-coeffs) over the base field
        self.rows = matrix_inv_rows

    @classmethod
    def for_quadratic(cls, spec: "FieldSpec", p: Fraction):
        # element c0 + c1*alpha = (c0 - p*c1/2) + (c1/2)*w  with w = 2 alpha + p
        def split(elem):
            c0, c1 = elem.coeffs
            base = spec.tower.base
            return base.element([c0 - p * c1 / 2]), base.element([c1 / 2])

        inst = cls(None)
        inst.split_fn = split
        return inst

    @classmethod
    def from_matrix(cls, spec: "FieldSpec", base: "FieldSpec", matrix):
        # matrix rows express gamma^j in the tower basis (a-part | b-part);
        # invert it once so split() is a single matvec
        n = spec.degree
        inv = _invert_matrix(matrix)

        def split(elem):
            vec = elem.coeffs
            out = [sum(inv[i][j] * vec[j] for j in range(n)) for i in range(n)]
            half = n // 2
            return base.element(out[:half]), base.element(out[half:])

        inst = cls(None)
        inst.split_fn = split
        return inst

    def split(self, elem):
        return self.split_fn(elem)


class TowerStep:
    def __init__(self, base, radicand, w, embed, alpha_parts, decomp):
        self.base = base          # FieldSpec one level down
        self.radicand = radicand  # element of base, not a square there
        self.w = w                # sqrt(radicand) inside the extension
        self.embed = embed        # FieldEmbedding base -> extension
        self.alpha_parts = alpha_parts  # (e0, e1) in base: alpha = e0 + e1*w
        self.decomp = decomp


class FieldElem:
    """Element of a FieldSpec: reduced coefficient vector over Q."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InputValidationError(f"{self} is not rational")
        return self.coeffs[0]

    def _coerce_other(self, other):
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return other
            if other.field.degree == 1:
                return self.field.element([other.coeffs[0]])
            if self.field.degree == 1:
                return NotImplemented
            raise FieldMismatch(
                f"operands in different fields: {self.field} vs {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field.element([Fraction(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce_other(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce_other(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce_other(other)
        if o is NotImplemented:
            return NotImplemented
        n = self.field.degree
        if n == 1:
            return FieldElem(self.field, (self.coeffs[0] * o.coeffs[0],))
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = list(prod[:n])
        table = self.field._powers
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                red = table[k - n]
                for i in range(n):
                    out[i] += c * red[i]
        return FieldElem(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise DivisionByZero("division by zero field element")
        n = self.field.degree
        if n == 1:
            return FieldElem(self.field, (1 / self.coeffs[0],))
        g, s, _ = _qxgcd(list(self.coeffs), list(self.field.min_poly))
        if len(g) != 1:
            raise InputValidationError(
                "minimal polynomial not irreducible: zero divisor found")
        inv = [c / g[0] for c in s]
        inv += [Fraction(0)] * (n - len(inv))
        return FieldElem(self.field, tuple(inv[:n]))

    def __truediv__(self, other):
        o = self._coerce_other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.field != self.field:
            if other.field.degree == 1 or self.field.degree == 1:
                a, b = self, other
                if a.field.degree == 1:
                    a, b = b, a
                return a.is_rational() and a.coeffs[0] == b.coeffs[0]
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.min_poly, self.coeffs))

    def lex_positive(self) -> bool:
        """True when the first nonzero coefficient is positive (canonical sign)."""
        for c in self.coeffs:
            if c:
                return c > 0
        return False

    def sort_key(self):
        return tuple(self.coeffs)

    def __repr__(self):
        if self.field.degree == 1:
            return str(self.coeffs[0])
        name = self.field.generator_name
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mon = name if i == 1 else f"{name}^{i}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


class FieldEmbedding:
    """Ring embedding src -> dst, stored as images of src generator powers."""

    def __init__(self, src: FieldSpec, dst: FieldSpec, gen_image: FieldElem):
        self.src = src
        self.dst = dst
        self.images = [dst.one()]
        for _ in range(src.degree - 1):
            self.images.append(self.images[-1] * gen_image)

    @classmethod
    def identity(cls, field: FieldSpec) -> "FieldEmbedding":
        if field.degree == 1:
            return cls.inclusion_of_rationals(field)
        return cls(field, field, field.gen())

    @classmethod
    def inclusion_of_rationals(cls, dst: FieldSpec) -> "FieldEmbedding":
        return cls(FieldSpec.rationals(), dst, dst.one())

    def apply(self, elem: FieldElem) -> FieldElem:
        if elem.field != self.src:
            if elem.field.degree == 1:
                return self.dst.element([elem.coeffs[0]])
            raise FieldMismatch("element not in embedding source field")
        out = self.dst.zero()
        for c, img in zip(elem.coeffs, self.images):
            if c:
                out = out + img * c
        return out

    def then(self, other: "FieldEmbedding") -> "FieldEmbedding":
        if self.dst != other.src:
            raise FieldMismatch("embeddings do not compose")
        comp = FieldEmbedding.__new__(FieldEmbedding)
        comp.src = self.src
        comp.dst = other.dst
        comp.images = [other.apply(img) for img in self.images]
        return comp


def _invert_matrix(rows):
    """Exact inverse of a square Fraction matrix (Gauss-Jordan)."""
    n = len(rows)
    aug = [list(rows[i]) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise InputValidationError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [tuple(row[n:]) for row in aug]


# ---------------------------------------------------------------------------
# extensions and composita


def extend_by_sqrt(field: FieldSpec, u: FieldElem, name: str | None = None):
    """Return (K, embed, w) with K = field(sqrt(u)), w^2 = embed(u).

    u must not be a square in field (callers test with field.sqrt first).
    """
    u = field.coerce(u)
    if u.is_zero():
        raise InputValidationError("cannot adjoin sqrt(0)")
    n = field.degree
    if 2 * n > degree_cap():
        raise FieldDegreeCap(
            f"extension degree {2 * n} exceeds cap {degree_cap()}")
    if n == 1:
        if fraction_sqrt(u.coeffs[0]) is not None:
            raise InputValidationError(f"{u} is already a square in Q")
        d, scale = squarefree_part(u.coeffs[0])
        gname = name or (f"sqrt{d}" if d > 0 else f"sqrtm{-d}")
        spec = FieldSpec((-d, Fraction(0), Fraction(1)), gname, check_irreducible=False)
        base = FieldSpec.rationals()
        spec.tower = TowerStep(
            base=base,
            radicand=base.element([d]),
            w=spec.gen(),
            embed=FieldEmbedding.inclusion_of_rationals(spec),
            alpha_parts=(base.zero(), base.one()),
            decomp=_QuadraticDecomp.for_quadratic(spec, Fraction(0)),
        )
        w = spec.gen() * scale  # sqrt(u) = scale * sqrt(d)
        return spec, FieldEmbedding.inclusion_of_rationals(spec), w

    # tower arithmetic on pairs (a, b) representing a + b*w, w^2 = u
    one = (field.one(), field.zero())

    def tmul(x, y):
        a1, b1 = x
        a2, b2 = y
        return (a1 * a2 + b1 * b2 * u, a1 * b2 + a2 * b1)

    def tvec(x):
        return list(x[0].coeffs) + list(x[1].coeffs)

    alpha = (field.gen(), field.zero())
    wpair = (field.zero(), field.one())
    dim = 2 * n
    for c in range(1, 20):
        gamma = (alpha[0], field.coerce(c))  # gamma = alpha + c*w
        powers = [one]
        for _ in range(dim):
            powers.append(tmul(powers[-1], gamma))
        cols = [tvec(p) for p in powers]
        # find the first linear dependency among gamma^0..gamma^dim
        dep = _first_dependency(cols)
        if dep is None or len(dep) - 1 < dim:
            continue
        # dep has length dim+1, monic relation: gamma^dim = -sum dep[j] gamma^j
        minpoly = tuple(dep)
        gname = name or f"g{dim}"
        spec = FieldSpec(minpoly, gname, check_irreducible=False)
        # express alpha and w in the gamma power basis: solve M x = v
        m_rows = [[cols[j][i] for j in range(dim)] for i in range(dim)]
        minv = _invert_matrix(m_rows)
        va = tvec(alpha)
        vw = tvec(wpair)
        ax = [sum(minv[j][i] * va[i] for i in range(dim)) for j in range(dim)]
        wx = [sum(minv[j][i] * vw[i] for i in range(dim)) for j in range(dim)]
        alpha_img = spec.element(ax)
        w_img = spec.element(wx)
        emb = FieldEmbedding(field, spec, alpha_img)
        # sanity: embedding respects the old minimal polynomial
        acc = spec.zero()
        for i, cf in enumerate(field.min_poly):
            acc = acc + spec.element([cf]) * alpha_img**i
        if not acc.is_zero() or w_img * w_img != emb.apply(u):
            continue
        # decomposition solves against the tower basis {alpha^i} U {alpha^i w}
        apows = []
        apow = spec.one()
        for _ in range(n):
            apows.append(apow)
            apow = apow * alpha_img
        basis_cols = [e.coeffs for e in apows] + [(e * w_img).coeffs for e in apows]
        rows = [[basis_cols[j][i] for j in range(dim)] for i in range(dim)]
        spec.tower = TowerStep(
            base=field,
            radicand=u,
            w=w_img,
            embed=emb,
            alpha_parts=(field.gen(), field.coerce(c)),
            decomp=_QuadraticDecomp.from_matrix(spec, field, rows),
        )
        return spec, emb, w_img
    raise InputValidationError(
        "no primitive element found: radicand is likely a square in the field")


def _first_dependency(cols):
    """Given vectors cols[0..m], return monic relation coeffs if the last one
    depends on the previous independent ones and all previous are independent;
    None if an earlier dependency exists."""
    m = len(cols) - 1
    dim = len(cols[0])
    # Gaussian elimination keeping track of combinations
    basis = []  # list of (vector, expansion over original indices)
    for idx, v in enumerate(cols):
        vec = [Fraction(x) for x in v]
        comb = [Fraction(0)] * (m + 1)
        comb[idx] = Fraction(1)
        for bvec, bcomb, piv in basis:
            f = vec[piv]
            if f:
                scale = f / bvec[piv]
                vec = [a - scale * b for a, b in zip(vec, bvec)]
                comb = [a - scale * b for a, b in zip(comb, bcomb)]
        piv = next((i for i, x in enumerate(vec) if x != 0), None)
        if piv is None:
            if idx < m:
                return None  # early dependency: gamma not primitive
            lead = comb[m]
            rel = [c / lead for c in comb[:m]]
            return rel + [Fraction(1)]
        basis.append((vec, comb, piv))
    return None


def compositum(k1: FieldSpec, k2: FieldSpec):
    """Smallest tower containing both fields.

    Returns (K, emb1: k1->K, emb2: k2->K).  k2 must be Q or tower-structured.
    """
    if k1 == k2:
        ident = FieldEmbedding.identity(k1)
        return k1, ident, ident
    if k2.degree == 1:
        return k1, FieldEmbedding.identity(k1), FieldEmbedding.inclusion_of_rationals(k1)
    if k1.degree == 1:
        K, e2, e1 = compositum(k2, k1)
        return K, e1, e2
    steps = []
    f = k2
    while f.degree > 1:
        if f.tower is None:
            raise UnsupportedField(
                f"compositum needs tower structure on {f}")
        steps.append(f)
        f = f.tower.base
    steps.reverse()
    K = k1
    emb1 = FieldEmbedding.identity(k1)
    # phi maps the current level of k2's tower into K
    phi = {id(FieldSpec.rationals()): None}  # rationals embed canonically
    level_images: dict[int, FieldEmbedding] = {}

    def embed_level(field: FieldSpec, elem: FieldElem) -> FieldElem:
        if field.degree == 1:
            return K.element([elem.coeffs[0]])
        return level_images[id(field)].apply(elem)

    for f in steps:
        step = f.tower
        d_img = embed_level(step.base, step.radicand)
        s = K.sqrt(d_img)
        if s is None:
            K2, e, w_img = extend_by_sqrt(K, d_img)
            emb1 = emb1.then(e)
            for key in list(level_images):
                level_images[key] = level_images[key].then(e)
            K = K2
            s = w_img
        e0, e1 = step.alpha_parts
        alpha_img = embed_level(step.base, e0) + embed_level(step.base, e1) * s
        level_images[id(f)] = FieldEmbedding(f, K, alpha_img)
    emb2 = level_images[id(k2)]
    return K, emb1, emb2
