"""Exact integer/rational arithmetic helpers used throughout the package.

Integers are gmpy2.mpz, rationals gmpy2.mpq (always in lowest terms with a
positive denominator). Everything here is immutable and safe to share.
"""

import math

from gmpy2 import mpq, mpz
import gmpy2

Int = mpz
Rat = mpq

TRIAL_DIVISION_BOUND = 10**6


def rat(a, b=None):
    """Coerce to mpq; accepts ints, strings like "3/4", mpz/mpq."""
    if b is None:
        return mpq(a)
    return mpq(a, b)


def gcd(a, b):
    """Non-negative gcd with gcd(0, 0) = 0."""
    return gmpy2.gcd(mpz(a), mpz(b))


def lcm(a, b):
    return gmpy2.lcm(mpz(a), mpz(b))


def isqrt(n):
    n = mpz(n)
    if n < 0:
        raise ValueError("isqrt of negative integer")
    return gmpy2.isqrt(n)


def is_square_int(n):
    n = mpz(n)
    return n >= 0 and gmpy2.is_square(n)


def squarefree_part(n, trial_bound=TRIAL_DIVISION_BOUND):
    """Split n = d * s^2 with s > 0 and d squarefree up to the trial bound.

    Trial-divides to `trial_bound`, then treats a remaining cofactor as
    squarefree unless it is a perfect square (spec'd fallback: the inputs'
    square factors come from known symbolic pieces, so only perfect-square
    detection on the cofactor must be exact).

    Returns (s, d) as mpz with n == d * s * s.
    """
    n = mpz(n)
    if n == 0:
        raise ValueError("squarefree_part of zero")
    sign = -1 if n < 0 else 1
    n = abs(n)
    s = mpz(1)
    d = mpz(1)

    def eat(p):
        nonlocal n, s, d
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            s *= mpz(p) ** (e // 2)
            if e % 2:
                d *= p

    eat(2)
    eat(3)
    p = 5
    while p <= trial_bound and p * p <= n:
        eat(p)
        eat(p + 2)
        p += 6
    if n > 1:
        if gmpy2.is_square(n):
            s *= gmpy2.isqrt(n)
        else:
            d *= n
    return s, sign * d


def square_part(q, trial_bound=TRIAL_DIVISION_BOUND):
    """Write a nonzero rational q as d * s^2 with d a squarefree integer, s > 0.

    Returns (s, d) with s an mpq and d an mpz carrying the sign of q.
    """
    q = mpq(q)
    if q == 0:
        raise ValueError("square_part of zero")
    num, den = q.numerator, q.denominator
    s0, d = squarefree_part(num * den, trial_bound)
    return mpq(s0, den), d


def is_square(q):
    """True iff q is the square of a rational (0 counts)."""
    q = mpq(q)
    if q < 0:
        return False
    return gmpy2.is_square(q.numerator) and gmpy2.is_square(q.denominator)


def sqrt_rat(q):
    """Exact square root of a rational perfect square."""
    q = mpq(q)
    if not is_square(q):
        raise ValueError(f"{q} is not a rational square")
    return mpq(gmpy2.isqrt(q.numerator), gmpy2.isqrt(q.denominator))


_LN2 = math.log(2)


def ln_abs_int(n):
    """Natural log of |n| for an arbitrary-size integer, as a float. ln|0| = 0."""
    n = abs(mpz(n))
    if n <= 1:
        return 0.0
    bl = n.bit_length()
    if bl <= 512:
        return math.log(int(n))
    top = int(n >> (bl - 64))
    return math.log(top) + (bl - 64) * _LN2
