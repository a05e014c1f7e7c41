"""The six parametric torsion families and bounded torsion-point search.

Each constructor returns the family's curve over Q(r), the x-coordinates of
its rational torsion with their exact orders, the parameter values excluded
by the discriminant, and the divisor pool feeding the point search. The
torsion coordinates the source tables leave implicit were derived once by
solving the relevant division conditions and are verified symbolically by
the test suite (each listed x gives a point whose stated multiple is the
identity as a rational-function computation).
"""

import functools
import math

from gmpy2 import mpq, mpz

from .polyring import Poly, RatFunc, rational_roots
from .curves import Curve, INFINITY, Point, torsion_order


class TorsionFamily:
    __slots__ = ("label", "curve", "torsion_points", "excluded_params", "divisor_pool", "even_in_r")

    def __init__(self, label, curve, torsion_points, excluded_params, divisor_pool):
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "torsion_points", tuple(torsion_points))
        object.__setattr__(self, "excluded_params", tuple(sorted(map(mpq, excluded_params))))
        object.__setattr__(self, "divisor_pool", tuple(divisor_pool))
        A, B, C = curve.A, curve.B, curve.C
        flip = RatFunc(Poly([0, -1]))
        even = all(c.compose(flip) == c for c in (A, B, C))
        object.__setattr__(self, "even_in_r", even)

    def __setattr__(self, *a):
        raise AttributeError("TorsionFamily is immutable")

    def torsion_xs(self):
        return tuple(x for x, _ in self.torsion_points)

    def specialize(self, value):
        value = mpq(value)
        if value in self.excluded_params:
            raise ValueError(f"{value} is an excluded parameter for {self.label}")
        E = self.curve.specialize(value)
        E.assert_nonsingular()
        return E

    def __repr__(self):
        return f"TorsionFamily({self.label})"


FAMILY_LABELS = ("z5", "z6", "z7", "z8", "z2xz4", "z2xz6")

_DISPLAY = {
    "z5": "Z/5Z",
    "z6": "Z/6Z",
    "z7": "Z/7Z",
    "z8": "Z/8Z",
    "z2xz4": "Z/2Z x Z/4Z",
    "z2xz6": "Z/2Z x Z/6Z",
}


def display_name(label):
    return _DISPLAY[label]


def _rf(p):
    return RatFunc(p)


@functools.cache
def family(label):
    """Construct a torsion family by label (z5, z6, z7, z8, z2xz4, z2xz6)."""
    label = label.lower()
    r = Poly.gen()
    one = Poly.const(1)
    if label == "z8":
        A = _rf(2 * (r**4 + 2 * r**2 - one))
        B = _rf((r**2 - one) ** 4)
        E = Curve(A, B, RatFunc.const(0))
        torsion = [
            (RatFunc.const(0), 2),
            (_rf((r**2 - one) ** 2), 4),
            (_rf(-(r - one) * (r + one) ** 3), 8),
            (_rf(-(r + one) * (r - one) ** 3), 8),
        ]
        pool = [Poly.const(2), r - one, r + one]
        excluded = [-1, 0, 1]
    elif label == "z2xz6":
        A = _rf(-2 * (r**4 - 6 * r**2 - Poly.const(3)))
        B = _rf((r**2 - one) ** 3 * (r**2 - Poly.const(9)))
        E = Curve(A, B, RatFunc.const(0))
        torsion = [
            (RatFunc.const(0), 2),
            (_rf((r - one) ** 3 * (r + 3)), 2),
            (_rf((r + one) ** 3 * (r - 3)), 2),
            (_rf((r**2 - one) ** 2), 3),
            (_rf((r - one) * (r + one) ** 2 * (r + 3)), 6),
            (_rf((r**2 - one) * (r**2 - Poly.const(9))), 6),
            (_rf((r - one) ** 2 * (r + one) * (r - 3)), 6),
        ]
        pool = [Poly.const(2), r - one, r + one, r - 3, r + 3]
        excluded = [-3, -1, 0, 1, 3]
    elif label == "z7":
        # Symmetric form of the Tate curve with b = r^3 - r^2, c = r^2 - r.
        A = _rf(r**4 - 6 * r**3 + 3 * r**2 + 2 * r + one)
        B = _rf(8 * r**2 * (r - one) * (r**2 - r - one))
        C = _rf(16 * r**4 * (r - one) ** 2)
        E = Curve(A, B, C)
        torsion = [
            (RatFunc.const(0), 7),
            (_rf(4 * r**2 * (r - one)), 7),
            (_rf(4 * r * (r - one)), 7),
        ]
        pool = [Poly.const(2), Poly(r.coeffs), r - one, r**2 - r - one]
        excluded = [0, 1]
    elif label == "z5":
        A = _rf(r**2 - 6 * r + one)
        B = _rf(8 * r * (r - one))
        C = _rf(16 * r**2)
        E = Curve(A, B, C)
        torsion = [(RatFunc.const(0), 5), (_rf(4 * r), 5)]
        pool = [Poly.const(2), Poly(r.coeffs), r - one]
        excluded = [0]
    elif label == "z6":
        A = _rf(r**2 - Poly.const(3))
        B = _rf(3 - 2 * r)
        E = Curve(A, B, RatFunc.const(0))
        torsion = [
            (RatFunc.const(0), 2),
            (RatFunc.const(1), 3),
            (_rf(3 - 2 * r), 6),
        ]
        pool = [Poly.const(2), 2 * r - 3]
        excluded = [-3, 1, mpq(3, 2)]
    elif label == "z2xz4":
        A = _rf(r**2 + one)
        B = _rf(Poly(r.coeffs) ** 2)
        E = Curve(A, B, RatFunc.const(0))
        torsion = [
            (RatFunc.const(0), 2),
            (RatFunc.const(-1), 2),
            (_rf(-(r**2)), 2),
            (_rf(Poly(r.coeffs)), 4),
            (_rf(-r), 4),
        ]
        pool = [Poly.const(2), Poly(r.coeffs)]
        excluded = [-1, 0, 1]
    else:
        raise ValueError(f"unknown family label {label!r}; expected one of {FAMILY_LABELS}")
    return TorsionFamily(label, E, torsion, excluded, pool)


def discriminant_exclusions(fam):
    """Rational roots of the family discriminant numerator."""
    disc = fam.curve.discriminant()
    return sorted(set(rational_roots(disc.num)))


def _small_divisors(n, cap=256):
    """Positive divisors of the 200-smooth part of |n| (bounded count)."""
    n = abs(mpz(n))
    if n == 0:
        return [mpz(1)]
    divs = {mpz(1)}
    for p in range(2, 200):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            divs = {d0 * mpz(p) ** k for d0 in divs for k in range(e + 1)}
            if len(divs) > cap:
                return sorted(divs)[:cap]
    return sorted(divs)


def torsion_profile(E, seeds=(), search_bound=6):
    """Multiset of orders of the rational torsion subgroup found on E over Q.

    Candidate x-values come from the rational roots of the RHS (2-torsion),
    the caller's seeds (e.g. specialized family torsion coordinates), and a
    bounded d*u^2/v^2 sweep with d running over small divisors of B when the
    constant term vanishes. The subgroup generated by everything found must
    embed into one of the allowed rational torsion groups.
    """
    E.assert_nonsingular()
    pts = set()

    def try_x(x):
        P = E.point_from_x(mpq(x))
        if P is not None and torsion_order(E, P) is not None:
            pts.add((P.x, P.y))
            pts.add((P.x, -P.y))

    rhs_poly = Poly([E.C, E.B, E.A, 1])
    if not rhs_poly.is_zero:
        for root in rational_roots(rhs_poly):
            try_x(root)
    for s in seeds:
        try_x(s)
    if E.C == 0 and E.B != 0:
        for d in _small_divisors(mpq(E.B).numerator * mpq(E.B).denominator, cap=64):
            for sign in (1, -1):
                for u in range(1, search_bound + 1):
                    for v in range(1, search_bound + 1):
                        try_x(mpq(sign * d * u * u, v * v))

    group = {INFINITY}
    frontier = [Point(x, y) for x, y in pts]
    for P in frontier:
        group.add(P)
    changed = True
    while changed:
        changed = False
        cur = list(group)
        for P in cur:
            for Q in frontier:
                S = E.add(P, Q) if P != INFINITY else Q
                if S not in group:
                    if len(group) >= 16:
                        raise RuntimeError("torsion closure exceeds the rational bound")
                    group.add(S)
                    changed = True
    orders = []
    for P in group:
        n = 1 if P == INFINITY else torsion_order(E, P)
        if n is None:  # pragma: no cover - seeds are torsion by construction
            raise RuntimeError("non-torsion point slipped into the closure")
        orders.append(n)
    orders.sort()
    if not embeds_in_torsion_bound(orders):
        raise RuntimeError(f"order profile {orders} embeds in no allowed torsion group")
    return orders


def embeds_in_torsion_bound(orders):
    """Check an order multiset fits inside Z/nZ (n<=10, 12) or Z/2Z x Z/2nZ (n<=4)."""
    allowed = []
    for n in list(range(1, 11)) + [12]:
        allowed.append(sorted(_cyclic_orders(n)))
    for n in (1, 2, 3, 4):
        allowed.append(sorted(_product_orders(2, 2 * n)))
    counts = _order_counts(orders)
    for grp in allowed:
        gc = _order_counts(grp)
        if all(gc.get(o, 0) >= c for o, c in counts.items()):
            return True
    return False


def _cyclic_orders(n):
    return [n // math.gcd(n, k) for k in range(n)]


def _product_orders(a, b):
    out = []
    for i in range(a):
        for j in range(b):
            oi = a // math.gcd(a, i)
            oj = b // math.gcd(b, j)
            out.append(oi * oj // math.gcd(oi, oj))
    return out


def _order_counts(orders):
    out = {}
    for o in orders:
        out[o] = out.get(o, 0) + 1
    return out
