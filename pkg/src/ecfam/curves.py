"""Elliptic curves y^2 = x^3 + A*x^2 + B*x + C and their group law.

Coefficients live in any field whose elements support +,-,*,/ — in practice
mpq for curves over Q and RatFunc for one-parameter families. All operations
are pure; curves and points are immutable.
"""

from fractions import Fraction

from gmpy2 import mpq, mpz

from .numbers import is_square, sqrt_rat
from .polyring import Poly, RatFunc, rational_roots


class SingularCurveError(ValueError):
    pass


class OffCurveError(ValueError):
    pass


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "O"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("ecfam-infinity")


INFINITY = _Infinity()


class Point:
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        object.__setattr__(self, "x", _coerce_field(x))
        object.__setattr__(self, "y", _coerce_field(y))

    def __setattr__(self, *a):
        raise AttributeError("Point is immutable")

    def __eq__(self, other):
        if isinstance(other, _Infinity):
            return False
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((str(self.x), str(self.y)))

    def __repr__(self):
        return f"({self.x!r}, {self.y!r})"


def _coerce_field(v):
    if isinstance(v, (int, mpz, Fraction)):
        return mpq(v)
    return v


class Curve:
    """y^2 = x^3 + A*x^2 + B*x + C over a coefficient field."""

    __slots__ = ("A", "B", "C")

    def __init__(self, A, B=0, C=0):
        object.__setattr__(self, "A", _coerce_field(A))
        object.__setattr__(self, "B", _coerce_field(B))
        object.__setattr__(self, "C", _coerce_field(C))

    def __setattr__(self, *a):
        raise AttributeError("Curve is immutable")

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.A == other.A and self.B == other.B and self.C == other.C

    def __hash__(self):
        return hash((str(self.A), str(self.B), str(self.C)))

    @property
    def is_symbolic(self):
        return isinstance(self.A, RatFunc) or isinstance(self.B, RatFunc) or isinstance(self.C, RatFunc)

    def rhs(self, x):
        return x * x * x + self.A * x * x + self.B * x + self.C

    def discriminant(self):
        """Discriminant of the cubic x^3 + A x^2 + B x + C."""
        A, B, C = self.A, self.B, self.C
        return 18 * A * B * C - 4 * A * A * A * C + A * A * B * B - 4 * B * B * B - 27 * C * C

    def is_singular(self):
        d = self.discriminant()
        if isinstance(d, RatFunc):
            return d.is_zero
        return d == 0

    def assert_nonsingular(self):
        if self.is_singular():
            raise SingularCurveError(f"singular curve {self!r}")

    def j_invariant(self):
        """Standard j; infinite (division by zero) on singular curves."""
        self.assert_nonsingular()
        A, B, C = self.A, self.B, self.C
        c4 = 16 * A * A - 48 * B
        delta = 16 * self.discriminant()
        return c4 * c4 * c4 / delta

    def contains(self, P):
        if P == INFINITY:
            return True
        lhs = P.y * P.y
        return lhs == self.rhs(P.x)

    def require_on_curve(self, P):
        if not self.contains(P):
            raise OffCurveError(f"point {P!r} is not on {self!r}")

    def add(self, P, Q):
        """Group-law sum; INFINITY is the identity."""
        if P == INFINITY:
            return Q
        if Q == INFINITY:
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y1 == -y2:
                return INFINITY
            lam = (3 * x1 * x1 + 2 * self.A * x1 + self.B) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - self.A - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return Point(x3, y3)

    def neg(self, P):
        if P == INFINITY:
            return INFINITY
        return Point(P.x, -P.y)

    def mul(self, n, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        R = INFINITY
        Q = P
        while n:
            if n & 1:
                R = self.add(R, Q)
            Q = self.add(Q, Q)
            n >>= 1
        return R

    def point_from_x(self, x):
        """Point with the given x if the RHS is a perfect square, else None.

        Over Q picks the nonnegative root; symbolically picks the canonical
        square root of the RHS rational function.
        """
        v = self.rhs(x)
        if isinstance(v, RatFunc):
            s = v.sqrt()
            return None if s is None else Point(x, s)
        v = mpq(v)
        if not is_square(v):
            return None
        return Point(mpq(x), sqrt_rat(v))

    def specialize(self, value):
        """Specialize RatFunc coefficients at a rational parameter value."""
        value = mpq(value)

        def ev(c):
            return c(value) if isinstance(c, RatFunc) else mpq(c)

        return Curve(ev(self.A), ev(self.B), ev(self.C))

    def scale(self, u):
        """Model (x, y) -> (u^2 x, u^3 y): coefficients (u^2 A, u^4 B, u^6 C)."""
        u = _coerce_field(u)
        return Curve(self.A * u * u, self.B * u**4, self.C * u**6)

    def scale_point(self, P, u):
        if P == INFINITY:
            return INFINITY
        u = _coerce_field(u)
        return Point(P.x * u * u, P.y * u**3)

    def coeff_polys(self):
        """Coefficients as Polys (requires polynomial coefficients)."""
        out = []
        for c in (self.A, self.B, self.C):
            out.append(c.as_poly() if isinstance(c, RatFunc) else Poly.const(c))
        return out

    def text(self, var="r"):
        def t(c):
            return c.text(var) if isinstance(c, RatFunc) else str(c)

        s = f"y^2 = x^3 + ({t(self.A)})*x^2 + ({t(self.B)})*x"
        C = self.C
        czero = C.is_zero if isinstance(C, RatFunc) else C == 0
        if not czero:
            s += f" + ({t(C)})"
        return s

    def __repr__(self):
        return f"Curve(A={self.A!r}, B={self.B!r}, C={self.C!r})"


def double_x(E, P):
    """x-coordinate of 2P on a curve with C = 0, via (Z^2 - B)^2 / (4 W^2)."""
    czero = E.C.is_zero if isinstance(E.C, RatFunc) else E.C == 0
    if not czero:
        raise ValueError("double_x requires a curve with zero constant term")
    Z, W = P.x, P.y
    wzero = W.is_zero if isinstance(W, RatFunc) else W == 0
    if wzero:
        raise ValueError("2-torsion input: 2P is the point at infinity")
    t = Z * Z - E.B
    return (t * t) / (4 * W * W)


def double_x_value(E, x):
    """x(2P) from x(P) alone, for any curve in this Weierstrass shape."""
    A, B, C = E.A, E.B, E.C
    num = x**4 - 2 * B * x * x - 8 * C * x + B * B - 4 * A * C
    den = 4 * (x**3 + A * x * x + B * x + C)
    return num / den


def tate_to_symmetric(b, c):
    """Transform the Tate form Y^2 + (1-c)XY - bY = X^3 - bX^2.

    Returns the symmetric-form curve
    V^2 = U^3 + ((c-1)^2 - 4b) U^2 + 8b(c-1) U + 16 b^2
    together with the image (0, -4b) of the distinguished point (0, 0).
    """
    b = b if isinstance(b, RatFunc) else RatFunc.const(b)
    c = c if isinstance(c, RatFunc) else RatFunc.const(c)
    one = RatFunc.const(1)
    A = (c - one) ** 2 - 4 * b
    B = 8 * b * (c - one)
    C = 16 * b * b
    E = Curve(A, B, C)
    E.assert_nonsingular()
    return E, Point(RatFunc.const(0), -4 * b)


MAZUR_ORDERS = frozenset([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12])


def torsion_order(E, P, bound=12):
    """Exact order of P if at most `bound`, else None (infinite order).

    E must be a nonsingular curve over Q. When the model is integral, the
    Nagell-Lutz integrality of torsion points is used as a fast pre-filter.
    """
    if E.is_symbolic:
        raise ValueError("torsion_order works on specialized curves over Q")
    E.assert_nonsingular()
    if P == INFINITY:
        return 1
    E.require_on_curve(P)
    integral_model = all(mpq(c).denominator == 1 for c in (E.A, E.B, E.C))
    if integral_model and (mpq(P.x).denominator != 1 or mpq(P.y).denominator != 1):
        return None
    Q = INFINITY
    for n in range(1, bound + 1):
        Q = E.add(Q, P)
        if Q == INFINITY:
            if n not in MAZUR_ORDERS:
                raise RuntimeError(f"torsion order {n} violates the rational torsion bound")
            return n
    return None
