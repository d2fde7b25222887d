"""Exact helpers on integers and Fractions: square roots, factoring, divisors.

Everything here is deterministic and float-free.  Integer factoring is
trial division + Miller-Rabin + Pollard rho with a fixed parameter
schedule, which is plenty for the coefficient sizes this library sees.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit-ish inputs and beyond."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # this witness set is deterministic for n < 3.3 * 10^24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"pollard rho failed on {n}")


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; ignores sign, n != 0."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 41
    while p * p <= n and p < 100000:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of |n|, sorted."""
    fac = factor_int(n)
    divs = [1]
    for p, e in fac.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def int_sqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def fraction_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a Fraction, or None if q is not a square in Q."""
    if q < 0:
        return None
    rn = int_sqrt_exact(q.numerator)
    if rn is None:
        return None
    rd = int_sqrt_exact(q.denominator)
    if rd is None:
        return None
    return Fraction(rn, rd)


def squarefree_part(q: Fraction) -> tuple[Fraction, Fraction]:
    """Write q = s * r^2 with s a squarefree integer (up to sign); returns (s, r)."""
    if q == 0:
        return Fraction(0), Fraction(1)
    sign = 1 if q > 0 else -1
    n = abs(q.numerator) * q.denominator  # q = n / d^2 ... keep it simple:
    fac = factor_int(n)
    s = 1
    r = Fraction(1, q.denominator)
    for p, e in fac.items():
        if e % 2:
            s *= p
        r *= Fraction(p) ** (e // 2)
    return Fraction(sign * s), r
