"""Univariate polynomials and rational functions over Q.

Poly stores a dense tuple of mpq coefficients, lowest degree first, with no
trailing zero (the zero polynomial is the empty tuple). RatFunc is a reduced
quotient num/den whose denominator is an integer-primitive polynomial with
positive leading coefficient, which makes the representation unique.

Both types are immutable; arithmetic is exact.
"""

import itertools
import math
from fractions import Fraction

from gmpy2 import mpq, mpz
import gmpy2

from .numbers import gcd as zgcd, is_square, lcm, sqrt_rat


class ZeroDenominatorError(ZeroDivisionError):
    """Construction of a rational function with zero denominator."""


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a pole."""


def _canon(coeffs):
    coeffs = [mpq(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _canon(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def const(c):
        return Poly([mpq(c)])

    @staticmethod
    def gen():
        """The polynomial x."""
        return Poly([0, 1])

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else mpq(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, mpz, mpq, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, mpz, mpq, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly()
        out = [mpq(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Poly; use RatFunc")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divrem(self, other):
        """Exact quotient and remainder over Q; other must be nonzero."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        dlc = other.lc
        quot = [mpq(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / dlc
            quot[i - dq] = q
            for j, oc in enumerate(other.coeffs):
                rem[i - dq + j] -= q * oc
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other):
        return self.divrem(Poly._coerce(other))[0]

    def __mod__(self, other):
        return self.divrem(Poly._coerce(other))[1]

    def exact_div(self, other):
        q, r = self.divrem(other)
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return q

    # -- calculus / evaluation ----------------------------------------------

    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation at a rational (or Poly/RatFunc) point."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return mpq(0) if isinstance(x, (int, mpz, mpq, Fraction)) else x * 0
        return acc

    def compose(self, other):
        """self(other) for Poly other."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.const(c)
        return acc

    def compose_frac(self, num, den, pad_to=None):
        """Numerator of self(num/den) homogenized to degree `pad_to`.

        Returns sum_i a_i * num^i * den^(pad_to - i); pad_to defaults to
        deg(self). The denominator of the substitution is then den^pad_to,
        which callers clear with their own weights.
        """
        m = self.degree if pad_to is None else pad_to
        if m < self.degree:
            raise ValueError("pad_to below degree")
        acc = Poly()
        npow = Poly.const(1)
        dpows = [Poly.const(1)]
        for _ in range(m):
            dpows.append(dpows[-1] * den)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                acc = acc + Poly.const(c) * npow * dpows[m - i]
            if i < self.degree:
                npow = npow * num
        return acc

    # -- content / gcd ------------------------------------------------------

    def content(self):
        """Positive rational c with self = c * (integer-primitive poly)."""
        if self.is_zero:
            return mpq(0)
        den = mpz(1)
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        num = mpz(0)
        for c in self.coeffs:
            num = zgcd(num, c.numerator * (den // c.denominator))
        return mpq(num, den)

    def primitive(self):
        """(content-with-sign, integer-primitive part with positive lc)."""
        if self.is_zero:
            return mpq(0), Poly()
        c = self.content()
        if self.lc < 0:
            c = -c
        return c, Poly([q / c for q in self.coeffs])

    def int_coeffs(self):
        """Coefficient list as ints; raises if any coefficient is fractional."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError("polynomial has non-integer coefficients")
            out.append(int(c))
        return out

    def monic(self):
        if self.is_zero:
            return self
        l = self.lc
        return Poly([c / l for c in self.coeffs])

    def gcd(self, other):
        """Monic gcd over Q via a primitive-PRS Euclid."""
        a, b = self, other
        if a.is_zero:
            return b.monic()
        if b.is_zero:
            return a.monic()
        _, a = a.primitive()
        _, b = b.primitive()
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero:
            r = _pseudo_rem(a, b)
            a, b = b, (r.primitive()[1] if not r.is_zero else Poly())
        return a.monic()

    # -- display -------------------------------------------------------------

    def text(self, var="r"):
        """Render in descending powers, e.g. '2*r^4 + 4*r^2 - 2'."""
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                x = var if i == 1 else f"{var}^{i}"
                body = x if mag == 1 else f"{mag}*{x}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self.text()})"


def _pseudo_rem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    d = a.degree - b.degree
    factor = Poly.const(b.lc ** (d + 1))
    return (factor * a) % b


def poly_from_ints(ints):
    """Poly from an ascending list of integer (or rational) coefficients."""
    return Poly(ints)


class SquarefreeDecomp:
    """Yun decomposition: constant * prod(part_i ^ mult_i) == input, exactly.

    Parts are integer-primitive with positive leading coefficient, pairwise
    coprime, each squarefree, each of degree >= 1.
    """

    __slots__ = ("parts", "constant")

    def __init__(self, parts, constant):
        self.parts = tuple(parts)
        self.constant = mpq(constant)

    def reconstruct(self):
        acc = Poly.const(self.constant)
        for p, m in self.parts:
            acc = acc * p ** m
        return acc

    def odd_part(self):
        """Product of the parts with odd multiplicity (once each)."""
        acc = Poly.const(1)
        for p, m in self.parts:
            if m % 2:
                acc = acc * p
        return acc

    def even_sqrt(self):
        """Product of part_i ^ floor(mult_i / 2)."""
        acc = Poly.const(1)
        for p, m in self.parts:
            if m >= 2:
                acc = acc * p ** (m // 2)
        return acc

    def __repr__(self):
        inner = ", ".join(f"({p.text()})^{m}" for p, m in self.parts)
        return f"SquarefreeDecomp({self.constant}; {inner})"


def yun_squarefree(p):
    """Yun's squarefree decomposition of a nonzero polynomial over Q."""
    if p.is_zero:
        raise ValueError("squarefree decomposition of the zero polynomial")
    const, p0 = p.primitive()
    if p0.degree == 0:
        return SquarefreeDecomp([], const)
    parts = []
    g = p0.gcd(p0.derivative())
    c = p0.exact_div(g)
    d = p0.derivative().exact_div(g) - c.derivative()
    i = 1
    while c.degree > 0:
        pi = c.gcd(d)
        if pi.degree > 0:
            parts.append((pi.primitive()[1], i))
        c = c.exact_div(pi)
        d = d.exact_div(pi) - c.derivative()
        i += 1
    prod = Poly.const(1)
    for prim, m in parts:
        prod = prod * prim ** m
    q, r = p0.divrem(prod)
    if not r.is_zero or q.degree != 0:
        raise ValueError("Yun reconstruction failed")  # pragma: no cover
    return SquarefreeDecomp(parts, const * q.coeff(0))


def poly_sqrt(p):
    """Exact square root of a polynomial perfect square, or None."""
    if p.is_zero:
        return Poly()
    dec = yun_squarefree(p)
    if any(m % 2 for _, m in dec.parts):
        return None
    if not is_square(dec.constant):
        return None
    acc = Poly.const(sqrt_rat(dec.constant))
    for part, m in dec.parts:
        acc = acc * part ** (m // 2)
    return acc


class RatFunc:
    """Reduced rational function num/den over Q.

    Canonical form: gcd(num, den) = 1, den integer-primitive with positive
    leading coefficient. Two equal functions compare equal componentwise.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num) if not isinstance(num, (list, tuple)) else Poly(num)
        if den is None:
            den = Poly.const(1)
        elif not isinstance(den, Poly):
            den = Poly.const(den) if not isinstance(den, (list, tuple)) else Poly(den)
        if den.is_zero:
            raise ZeroDenominatorError("rational function with zero denominator")
        if num.is_zero:
            object.__setattr__(self, "num", Poly())
            object.__setattr__(self, "den", Poly.const(1))
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        c, den = den.primitive()
        num = Poly([q / c for q in num.coeffs])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def gen():
        return RatFunc(Poly.gen())

    @staticmethod
    def const(c):
        return RatFunc(Poly.const(c))

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, mpz, mpq, Fraction)):
            return RatFunc(Poly.const(other))
        return None

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def as_constant(self):
        if not self.is_constant:
            raise ValueError("not a constant rational function")
        if self.num.is_zero:
            return mpq(0)
        return self.num.coeff(0) / self.den.coeff(0)

    def as_poly(self):
        if self.den.degree != 0:
            raise ValueError("rational function is not a polynomial")
        d = self.den.coeff(0)
        return Poly([c / d for c in self.num.coeffs])

    def __eq__(self, other):
        o = RatFunc._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __bool__(self):
        return not self.is_zero

    def __add__(self, other):
        o = RatFunc._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = RatFunc._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = RatFunc._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def __call__(self, x):
        """Evaluate at a rational point; raises PoleError at a pole."""
        x = mpq(x)
        dv = self.den(x)
        if dv == 0:
            raise PoleError(f"pole at {x}")
        return self.num(x) / dv

    def compose(self, other):
        """self(other) for a RatFunc other."""
        o = RatFunc._coerce(other)
        p, q = self.num.degree, self.den.degree
        m = max(p, q, 0)
        if self.is_zero:
            return RatFunc(Poly())
        n = self.num.compose_frac(o.num, o.den, pad_to=m)
        d = self.den.compose_frac(o.num, o.den, pad_to=m)
        return RatFunc(n, d)

    def mobius_inverse(self):
        """Compositional inverse of a degree-one map (ar+b)/(cr+d)."""
        if self.num.degree > 1 or self.den.degree > 1:
            raise ValueError("compositional inverse only for Moebius maps")
        a, b = self.num.coeff(1), self.num.coeff(0)
        c, d = self.den.coeff(1), self.den.coeff(0)
        if a * d - b * c == 0:
            raise ValueError("degenerate Moebius map")
        return RatFunc(Poly([-b, d]), Poly([a, -c]))

    def derivative(self):
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def sqrt(self):
        """Exact square root as a RatFunc, or None if not a perfect square."""
        n = poly_sqrt(self.num * self.den)
        if n is None:
            return None
        return RatFunc(n, self.den)

    def is_square(self):
        return self.sqrt() is not None

    def text(self, var="r"):
        if self.den == Poly.const(1):
            return self.num.text(var)
        n = self.num.text(var)
        d = self.den.text(var)
        return f"({n})/({d})"

    def __repr__(self):
        return f"RatFunc({self.text()})"


# -- rational roots ----------------------------------------------------------


def _divisors_upto(n, cap=4096):
    """All positive divisors of |n|, or None if there would be too many or a
    factor survives trial division."""
    n = abs(mpz(n))
    if n == 0:
        return None
    fact = {}

    def eat(p):
        nonlocal n
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            fact[p] = e

    eat(2)
    eat(3)
    p = 5
    while p <= 10**6 and p * p <= n:
        eat(p)
        eat(p + 2)
        p += 6
    if n > 1:
        if n < 10**12:
            fact[int(n)] = fact.get(int(n), 0) + 1  # remaining cofactor is prime
            n = mpz(1)
        else:
            return None
    count = 1
    for e in fact.values():
        count *= e + 1
        if count > cap:
            return None
    divs = [mpz(1)]
    for p, e in fact.items():
        divs = [d * mpz(p) ** k for d in divs for k in range(e + 1)]
    return divs


def _squarefree_rational_roots(p):
    """Rational roots of a squarefree integer-primitive polynomial."""
    if p.degree == 1:
        return [-p.coeff(0) / p.coeff(1)]
    a0 = p.coeff(0)
    an = p.lc
    nd = _divisors_upto(a0.numerator)
    dd = _divisors_upto(an.numerator)
    if nd is not None and dd is not None and len(nd) * len(dd) <= 200000:
        roots = []
        for num in nd:
            for den in dd:
                if zgcd(num, den) != 1:
                    continue
                for cand in (mpq(num, den), mpq(-num, den)):
                    if p(cand) == 0:
                        roots.append(cand)
        return roots
    return _numeric_rational_roots(p)


def _numeric_rational_roots(p):
    """Numeric root isolation + exact verification for huge coefficients."""
    import mpmath

    digits = max(len(str(abs(c.numerator))) for c in p.coeffs if c != 0)
    dps = max(60, 2 * digits + 30)
    roots = []
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(int(c)) for c in reversed(p.int_coeffs())]
        try:
            approx = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        except mpmath.libmp.NoConvergence:  # pragma: no cover
            approx = mpmath.polyroots(coeffs, maxsteps=2000, extraprec=2000)
        for z in approx:
            if abs(mpmath.im(z)) > mpmath.mpf(10) ** (-dps // 3):
                continue
            x = mpmath.re(z)
            # Walk continued-fraction convergents of the approximation and
            # keep the first that is an exact root.
            frac = Fraction(str(x)).limit_denominator(10 ** (dps // 3))
            for cand in _convergents(frac, 10 ** (dps // 3)):
                if p(cand) == 0 and cand not in roots:
                    roots.append(cand)
                    break
    return roots


def _convergents(frac, max_den):
    """Continued-fraction convergents of a Fraction, small denominators first."""
    a = frac
    terms = []
    while True:
        q = math.floor(a)
        terms.append(int(q))
        a = a - q
        if a == 0:
            break
        a = 1 / a
        if len(terms) > 128:
            break
    h0, h1 = mpz(1), mpz(terms[0])
    k0, k1 = mpz(0), mpz(1)
    out = [mpq(h1, k1)]
    for t in terms[1:]:
        h0, h1 = h1, t * h1 + h0
        k0, k1 = k1, t * k1 + k0
        if k1 > max_den:
            break
        out.append(mpq(h1, k1))
    return out


def rational_roots(p):
    """All rational roots of p with multiplicity, sorted ascending."""
    if p.is_zero:
        raise ValueError("rational roots of the zero polynomial")
    if p.degree == 0:
        return []
    roots = []
    k = 0
    while p.coeff(k) == 0:
        k += 1
    if k:
        roots.extend([mpq(0)] * k)
        p = Poly(p.coeffs[k:])
    if p.degree >= 1:
        dec = yun_squarefree(p)
        for part, mult in dec.parts:
            for r in _squarefree_rational_roots(part):
                roots.extend([r] * mult)
    return sorted(roots)


# -- expression parsing --------------------------------------------------------


def parse_ratfunc(text, var="r"):
    """Parse an arithmetic expression like '-(r^2-1)*(r+2)^2/(r-2)^2'.

    Supports + - * / ^ (or **), integer literals and one variable; exact
    rational semantics throughout.
    """
    import ast

    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return RatFunc.const(node.value)
            raise ValueError(f"non-integer literal {node.value!r}; write fractions as a/b")
        if isinstance(node, ast.Name):
            if node.id == var:
                return RatFunc.gen()
            raise ValueError(f"unknown variable {node.id!r} (expected {var!r})")
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
            raise ValueError("unsupported unary operator")
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                neg = False
                if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                    neg, e = True, e.operand
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise ValueError("exponent must be an integer literal")
                return ev(node.left) ** (-e.value if neg else e.value)
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
            raise ValueError("unsupported operator")
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    return ev(tree)


def parse_poly(text, var="r"):
    f = parse_ratfunc(text, var)
    return f.as_poly()


def parse_fraction_pair(text, var="r"):
    """Parse 'P/Q' keeping the printed numerator and denominator as Polys.

    Substitution formulas are sensitive to the scale of the denominator that
    clears them, so '.../(15*k^2-225)' must not be reduced to .../(k^2-15).
    A top-level division splits the pair; anything else is a polynomial
    over denominator 1.
    """
    import ast

    tree = ast.parse(text.replace("^", "**"), mode="eval").body
    if isinstance(tree, ast.BinOp) and isinstance(tree.op, ast.Div):
        num = parse_ratfunc(ast.unparse(tree.left).replace("**", "^"), var).as_poly()
        den = parse_ratfunc(ast.unparse(tree.right).replace("**", "^"), var).as_poly()
        if den.is_zero:
            raise ZeroDenominatorError("zero denominator in substitution")
        return num, den
    return parse_ratfunc(text, var).as_poly(), Poly.const(1)


# -- rational-function interpolation -------------------------------------------


def interpolate_ratfunc(samples, num_deg, den_deg):
    """Rational function with num/den degree bounds through exact samples.

    samples: iterable of (x, value) pairs of rationals. Returns a RatFunc or
    None if no function of the requested shape fits. Used to reconstruct
    torsion-coordinate formulas from per-parameter solves.
    """
    samples = [(mpq(x), mpq(v)) for x, v in samples]
    n_unknowns = num_deg + den_deg + 2
    if len(samples) < n_unknowns:
        raise ValueError("not enough samples")
    rows = []
    for x, v in samples:
        row = [x**i for i in range(num_deg + 1)]
        row += [-v * x**j for j in range(den_deg + 1)]
        rows.append(row)
    sol = _nullspace_vector(rows)
    if sol is None:
        return None
    num = Poly(sol[: num_deg + 1])
    den = Poly(sol[num_deg + 1 :])
    if den.is_zero:
        return None
    f = RatFunc(num, den)
    for x, v in samples:
        try:
            if f(x) != v:
                return None
        except PoleError:
            return None
    return f


def _nullspace_vector(rows):
    """A nonzero rational kernel vector of the matrix, or None."""
    if not rows:
        return None
    m = [list(map(mpq, r)) for r in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[-1]
    vec = [mpq(0)] * ncols
    vec[fc] = mpq(1)
    for i, c in enumerate(pivots):
        vec[c] = -m[i][fc]
    return vec
