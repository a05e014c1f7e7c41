"""Rational points and secant-line parametrization for a*r^2 + b*r + c = t^2.

Conditions are held in a canonical integral form unique within their class
under multiplication by nonzero rational squares, so equivalent quadratics
coming out of different searches compare equal.
"""

from gmpy2 import mpq, mpz

from .numbers import gcd as zgcd, is_square, lcm, sqrt_rat, square_part
from .polyring import Poly, RatFunc


class QuadCondition:
    """Canonical residual quadratic a*r^2 + b*r + c (integer a, b, c).

    The stored triple is d*(a0, b0, c0) where (a0, b0, c0) is primitive with
    positive first nonzero entry and d is the signed squarefree part of the
    original scale, so two conditions differing by a rational square
    normalize to identical triples.
    """

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        object.__setattr__(self, "a", mpz(a))
        object.__setattr__(self, "b", mpz(b))
        object.__setattr__(self, "c", mpz(c))

    def __setattr__(self, *a):
        raise AttributeError("QuadCondition is immutable")

    def __eq__(self, other):
        if not isinstance(other, QuadCondition):
            return NotImplemented
        return (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __hash__(self):
        return hash((int(self.a), int(self.b), int(self.c)))

    def triple(self):
        return (self.a, self.b, self.c)

    def poly(self):
        return Poly([self.c, self.b, self.a])

    def __call__(self, r):
        r = mpq(r)
        return self.a * r * r + self.b * r + self.c

    def mirrored(self):
        """The condition with r replaced by -r."""
        return QuadCondition(self.a, -self.b, self.c)

    @property
    def already_square(self):
        """True when a*r^2 + b*r + c is a perfect square polynomial."""
        if self.a == 0 and self.b == 0:
            return is_square(mpq(self.c))
        if self.a == 0:
            return False
        return self.b * self.b - 4 * self.a * self.c == 0 and is_square(mpq(self.a))

    def text(self, var="r"):
        return self.poly().text(var) if (self.a or self.b) else str(self.c)

    def __repr__(self):
        return f"QuadCondition({self.a}, {self.b}, {self.c})"


def normalize_condition(a, b, c):
    """Canonical QuadCondition plus the rational s with (a,b,c) = s^2 * canonical."""
    a, b, c = mpq(a), mpq(b), mpq(c)
    if a == 0 and b == 0 and c == 0:
        raise ValueError("all-zero quadratic condition")
    den = mpz(1)
    for v in (a, b, c):
        den = lcm(den, v.denominator)
    ia, ib, ic = (v * den for v in (a, b, c))
    content = mpz(0)
    for v in (ia, ib, ic):
        if v != 0:
            content = zgcd(content, abs(v.numerator))
    first = next(v for v in (ia, ib, ic) if v != 0)
    if first < 0:
        content = -content
    a0, b0, c0 = (mpz(v / content) for v in (ia, ib, ic))
    mu = mpq(content, den)  # (a,b,c) = mu * (a0,b0,c0) with mu carrying the sign
    s, d = square_part(mu)
    cond = QuadCondition(d * a0, d * b0, d * c0)
    return cond, s


def condition_key(cond, allow_mirror):
    """Dedup/matching key; folds r -> -r when the family is even in r."""
    t1 = tuple(map(int, cond.triple()))
    if not allow_mirror:
        return t1
    t2 = tuple(map(int, cond.mirrored().triple()))
    return min(t1, t2)


class ConicParam:
    """Secant-line parametrization of t^2 = a r^2 + b r + c through (p, q).

    map(k) hits the conic for every rational k: a*map^2 + b*map + c = t(k)^2
    holds identically; the identity is checked at construction.
    """

    __slots__ = ("condition", "base", "map", "t")

    def __init__(self, condition, base, map_, t):
        object.__setattr__(self, "condition", condition)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "map", map_)
        object.__setattr__(self, "t", t)
        lhs = (
            RatFunc.const(condition.a) * map_ * map_
            + RatFunc.const(condition.b) * map_
            + RatFunc.const(condition.c)
        )
        if lhs != t * t:
            raise ArithmeticError("conic parametrization identity failed")

    def __setattr__(self, *a):
        raise AttributeError("ConicParam is immutable")

    def __repr__(self):
        return f"ConicParam(r(k)={self.map.text('k')})"


def find_point(cond, height_bound=60):
    """Smallest-height rational solution (p, q) of q^2 = a p^2 + b p + c.

    Candidates are ordered by height max(|num|, den), then by |num| with the
    positive numerator first, then by denominator; the search is exhaustive
    up to the bound. Returns None when nothing is found (not a proof of
    insolubility).
    """
    from .numbers import gcd as zg

    for h in range(1, height_bound + 1):
        cands = []
        for den in range(1, h + 1):
            for num in range(-h, h + 1):
                if max(abs(num), den) != h:
                    continue
                if zg(num, den) != 1:
                    continue
                cands.append(mpq(num, den))
        cands.sort(key=lambda q: (abs(q.numerator), 0 if q > 0 else 1, q.denominator))
        for p in cands:
            v = cond(p)
            if is_square(v):
                return p, sqrt_rat(v)
    return None


def parametrize(cond, p, q):
    """Parametrize the conic through the known point (p, q).

    For a != 0 the secant line t = q + k(r - p) gives
        r(k) = (p k^2 - 2 q k + a p + b) / (k^2 - a);
    the degenerate a = 0 (genuinely linear) case solves directly as
    r(k) = (k^2 - c)/b with t(k) = k.
    """
    p, q = mpq(p), mpq(q)
    if q * q != cond(p):
        raise ValueError(f"({p}, {q}) does not satisfy {cond!r}")
    a, b, c = cond.triple()
    if a == 0:
        if b == 0:
            raise ValueError("constant condition cannot be parametrized")
        k = Poly.gen()
        map_ = RatFunc(k * k - Poly.const(c), Poly.const(b))
        t = RatFunc(k)
        return ConicParam(cond, (p, q), map_, t)
    k = Poly.gen()
    num = Poly([a * p + b, -2 * q, p])
    den = Poly([-a, 0, 1])
    map_ = RatFunc(num, den)
    tnum = Poly([-a * q, 2 * a * p + b, -q])
    t = RatFunc(tnum, den)
    return ConicParam(cond, (p, q), map_, t)
