"""Candidate-point search, square-times-quadratic profiles, and family chains.

The pipeline: substitute a candidate x(r) into the curve's right-hand side;
if the result is F(r)^2 * (a r^2 + b r + c), a rational point on the conic
t^2 = a r^2 + b r + c parametrizes r and pulls the whole curve back to a new
parameter, clearing denominators with even weights so every carried point
stays polynomial-friendly. Iterating stacks up independent points.
"""

import itertools
import json
from dataclasses import dataclass, field

from gmpy2 import mpq, mpz

from .conics import ConicParam, QuadCondition, condition_key, find_point, normalize_condition, parametrize
from .curves import Curve, SingularCurveError
from .families import TorsionFamily, family
from .numbers import is_square, sqrt_rat
from .polyring import (
    Poly,
    RatFunc,
    parse_fraction_pair,
    parse_ratfunc,
    rational_roots,
    yun_squarefree,
)


class Substitution:
    """A parameter map n(k)/d(k) kept as the printed pair.

    The denominator's exact scale matters: clearing with d^w versus (c*d)^w
    yields models differing by the square c^w, and the next stage's printed
    candidate lives on one specific model.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den.is_zero:
            raise ZeroDivisionError("substitution with zero denominator")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("Substitution is immutable")

    @staticmethod
    def parse(text, var):
        return Substitution(*parse_fraction_pair(text, var))

    @staticmethod
    def from_ratfunc(f):
        return Substitution(f.num, f.den)

    def as_ratfunc(self):
        return RatFunc(self.num, self.den)

    def text(self, var="k"):
        if self.den == Poly.const(1):
            return self.num.text(var)
        return f"({self.num.text(var)})/({self.den.text(var)})"


class VerificationError(ArithmeticError):
    """A symbolic identity that must hold failed; the message names it."""


# -- profiles -----------------------------------------------------------------


@dataclass(frozen=True)
class Square:
    F: RatFunc


@dataclass(frozen=True)
class SquareTimesQuad:
    F: RatFunc
    condition: QuadCondition


@dataclass(frozen=True)
class Reject:
    reason: str


def rhs_profile(E, x):
    """Classify RHS(x(r)) as F^2, F^2*(quadratic), or neither.

    The numerator and denominator of RHS(x) are multiplied so the
    denominator contributes its own square-class parity; Yun's decomposition
    then splits even from odd multiplicities without any factoring.
    """
    if not isinstance(x, RatFunc):
        x = RatFunc._coerce(x)
    v = E.rhs(x)
    if not isinstance(v, RatFunc):
        v = RatFunc._coerce(v)
    if v.is_zero:
        raise ValueError("x is identically a root of the curve RHS")
    work = v.num * v.den
    dec = yun_squarefree(work)
    odd = dec.odd_part()
    even = dec.even_sqrt()
    if odd.degree > 2:
        return Reject(f"odd-multiplicity part has degree {odd.degree}")
    cstar = dec.constant
    if odd.degree <= 0:
        c = cstar * (odd.coeff(0) if odd.degree == 0 else 1)
        if not is_square(c):
            return Reject(f"constant square class {c} is not a square")
        F = RatFunc(Poly.const(sqrt_rat(c)) * even, v.den)
        if F * F != v:
            raise VerificationError("square profile identity failed")  # pragma: no cover
        return Square(F)
    raw = cstar * odd
    cond, s = normalize_condition(raw.coeff(2), raw.coeff(1), raw.coeff(0))
    F = RatFunc(Poly.const(s) * even, v.den)
    if F * F * RatFunc(cond.poly()) != v:
        raise VerificationError("square-times-quadratic identity failed")  # pragma: no cover
    return SquareTimesQuad(F, cond)


# -- search configuration and hits ---------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    exponent_min: int = -2
    exponent_max: int = 2
    degree_cap: int = 2
    coeff_bound: int = 5
    candidate_cap: int = 20000
    workers: int = 1
    structured: bool = True
    extra_candidates: tuple = ()
    extra_factors: tuple = ()

    def __post_init__(self):
        if self.exponent_min > self.exponent_max:
            raise ValueError("empty exponent range")
        if self.degree_cap < 0 or self.coeff_bound < 1 or self.candidate_cap < 1:
            raise ValueError("bounds must be positive")

    @staticmethod
    def from_file(path):
        """Parse a key = value config; 'candidate'/'factor' lines may repeat."""
        kw = {}
        cands = []
        factors = []
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"bad config line: {line!r}")
                key, val = (s.strip() for s in line.split("=", 1))
                if key == "candidate":
                    cands.append(val)
                elif key == "factor":
                    factors.append(val)
                elif key in ("exponent_min", "exponent_max", "degree_cap", "coeff_bound",
                             "candidate_cap", "workers"):
                    kw[key] = int(val)
                elif key == "structured":
                    kw[key] = val.lower() in ("1", "true", "yes")
                else:
                    raise ValueError(f"unknown config key {key!r}")
        return SearchConfig(extra_candidates=tuple(cands), extra_factors=tuple(factors), **kw)

    def to_dict(self):
        return {
            "exponent_min": self.exponent_min,
            "exponent_max": self.exponent_max,
            "degree_cap": self.degree_cap,
            "coeff_bound": self.coeff_bound,
            "candidate_cap": self.candidate_cap,
            "workers": self.workers,
            "structured": self.structured,
            "extra_candidates": list(self.extra_candidates),
            "extra_factors": list(self.extra_factors),
        }


@dataclass(frozen=True)
class SearchHit:
    x: RatFunc
    F: RatFunc
    condition: QuadCondition

    def to_dict(self):
        return {
            "x": ratfunc_to_dict(self.x),
            "F": ratfunc_to_dict(self.F),
            "condition": [int(self.condition.a), int(self.condition.b), int(self.condition.c)],
        }


@dataclass(frozen=True)
class HitList:
    hits: tuple
    partial: bool
    candidates_tried: int


def _weight_poly(p):
    return 3 * max(p.degree, 0) + sum(min(abs(c.numerator) + abs(c.denominator) - 2, 60) for c in p.coeffs)


def _free_poly_pool(degree_cap, coeff_bound):
    """Primitive polynomials with positive leading coefficient, by weight."""
    from .numbers import gcd as zg

    pool = []
    seen = set()
    for deg in range(degree_cap + 1):
        for coeffs in itertools.product(range(-coeff_bound, coeff_bound + 1), repeat=deg + 1):
            if coeffs[-1] <= 0:
                continue
            g = 0
            for c in coeffs:
                g = int(zg(g, c))
            if g != 1:
                continue
            p = Poly(coeffs)
            if p.coeffs in seen:
                continue
            seen.add(p.coeffs)
            pool.append(p)
    pool.sort(key=lambda p: (_weight_poly(p), p.degree, tuple(str(c) for c in p.coeffs)))
    return pool


def _divisor_pool(fam, config):
    """(weight, RatFunc d) for every exponent vector over the factor base."""
    base = list(fam.divisor_pool) + [parse_ratfunc(t).as_poly() for t in config.extra_factors]
    ranges = [range(config.exponent_min, config.exponent_max + 1)] * len(base)
    out = []
    for signs in (1, -1):
        for exps in itertools.product(*ranges):
            d = RatFunc.const(signs)
            w = 0 if signs == 1 else 1
            for p, e in zip(base, exps):
                if e:
                    d = d * RatFunc(p) ** e
                    w += abs(e) * max(1, _weight_poly(p) // 2)
            out.append((w, d))
    out.sort(key=lambda t: (t[0], str(t[1].num.coeffs), str(t[1].den.coeffs)))
    return out


_STRUCT_SCALARS = ("1", "-1", "2", "-2", "1/2", "-1/2", "3", "-3", "4", "-4",
                   "1/4", "-1/4", "9/2", "-9/2", "27/2", "-27/2")
_STRUCT_SHIFTS = ("0", "1", "-1", "2", "-2", "1/2", "-1/2", "1/4", "-1/4", "3/4", "-3/4")


def structured_candidates(fam):
    """Candidates derived from the torsion skeleton of the family.

    Scalar multiples and shifts of torsion x-coordinates, pairwise sums and
    differences of them, shifted squares of the square roots of even-power
    torsion coordinates, and 2-torsion translates x -> B/x of all of those
    (many equivalent points in the literature differ from a torsion-derived
    candidate by exactly such a translate).
    """
    scalars = [mpq(s) for s in _STRUCT_SCALARS]
    shifts = [mpq(s) for s in _STRUCT_SHIFTS]
    atoms = [x for x in fam.torsion_xs() if not x.is_zero]
    base = []
    for x in atoms:
        for c in scalars:
            base.append(x * RatFunc.const(c))
            for s in shifts[1:5]:
                base.append(x * RatFunc.const(c) + RatFunc.const(s))
    for i in range(len(atoms)):
        for j in range(i + 1, len(atoms)):
            for c in scalars:
                base.append((atoms[i] + atoms[j]) * RatFunc.const(c))
                base.append((atoms[i] - atoms[j]) * RatFunc.const(c))
    for x in atoms:
        g = x.sqrt()
        if g is None:
            continue
        for c in scalars:
            for s in shifts:
                shifted = g + RatFunc.const(s)
                base.append(RatFunc.const(c) * shifted)
                base.append(RatFunc.const(c) * shifted * shifted)
    out = list(base)
    czero = fam.curve.C.is_zero if isinstance(fam.curve.C, RatFunc) else fam.curve.C == 0
    if czero and not fam.curve.B.is_zero:
        for x in base:
            if not x.is_zero:
                out.append(fam.curve.B / x)
    return out


def candidate_stream(fam, config):
    """Deterministic candidate x(r) stream: injected, structured, then the grid."""
    seen = set()
    torsion = set(fam.torsion_xs())

    def emit(x):
        if x.is_zero or x in torsion:
            return None
        key = (x.num.coeffs, x.den.coeffs)
        if key in seen:
            return None
        seen.add(key)
        return x

    for text in config.extra_candidates:
        x = emit(parse_ratfunc(text))
        if x is not None:
            yield x
    if config.structured:
        for x in structured_candidates(fam):
            x = emit(x)
            if x is not None:
                yield x
    dpool = _divisor_pool(fam, config)
    upool = _free_poly_pool(config.degree_cap, config.coeff_bound)
    uweights = [_weight_poly(p) for p in upool]
    max_w = (dpool[-1][0] if dpool else 0) + 2 * (uweights[-1] if uweights else 0)
    from .numbers import gcd as zg

    for level in range(max_w + 1):
        for wd, d in dpool:
            if wd > level:
                break
            rem = level - wd
            for iu, u in enumerate(upool):
                wu = uweights[iu]
                if wu > rem:
                    break
                wv = rem - wu
                for iv, v in enumerate(upool):
                    if uweights[iv] > wv:
                        break
                    if uweights[iv] < wv:
                        continue
                    if u.degree == 0 and v.degree == 0 and (u.coeff(0) != 1 or v.coeff(0) != 1):
                        continue
                    if u.gcd(v).degree > 0:
                        continue
                    x = emit(d * RatFunc(u * u, v * v))
                    if x is not None:
                        yield x


def _profile_chunk(args):
    coeff_data, xs_data = args
    E = _curve_from_dicts(coeff_data)
    out = []
    for i, xd in xs_data:
        x = _ratfunc_from_dict(xd)
        try:
            prof = rhs_profile(E, x)
        except ValueError:
            continue
        if isinstance(prof, (Square, SquareTimesQuad)):
            cond = prof.condition if isinstance(prof, SquareTimesQuad) else QuadCondition(0, 0, 1)
            out.append((i, xd, ratfunc_to_dict(prof.F),
                        (int(cond.a), int(cond.b), int(cond.c))))
    return out


def enumerate_hits(fam, config=None):
    """Deterministic deduplicated hits for a family under the given bounds.

    One representative per residual-quadratic class (folding r -> -r when the
    family is even in r), candidates ordered by grid weight. Exceeding the
    candidate cap flags the result as partial.
    """
    if isinstance(fam, str):
        fam = family(fam)
    config = config or SearchConfig()
    stream = candidate_stream(fam, config)
    candidates = list(itertools.islice(stream, config.candidate_cap))
    partial = next(stream, None) is not None

    results = []
    if config.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        coeffs = _curve_to_dicts(fam.curve)
        indexed = [(i, ratfunc_to_dict(x)) for i, x in enumerate(candidates)]
        payloads = [(coeffs, indexed[w :: config.workers]) for w in range(config.workers)]
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            for part in ex.map(_profile_chunk, payloads):
                for i, xd, fd, cd in part:
                    results.append((i, _ratfunc_from_dict(xd), _ratfunc_from_dict(fd), QuadCondition(*cd)))
        results.sort(key=lambda t: t[0])
    else:
        for i, x in enumerate(candidates):
            try:
                prof = rhs_profile(fam.curve, x)
            except ValueError:
                continue
            if isinstance(prof, SquareTimesQuad):
                results.append((i, x, prof.F, prof.condition))
            elif isinstance(prof, Square):
                results.append((i, x, prof.F, QuadCondition(0, 0, 1)))

    hits = []
    seen_classes = set()
    seen_x = set()
    for _i, x, F, cond in results:
        if cond.a < 0 and cond.b * cond.b - 4 * cond.a * cond.c < 0:
            continue  # negative definite: provably insoluble over R
        key = condition_key(cond, fam.even_in_r)
        xkeys = {(x.num.coeffs, x.den.coeffs)}
        if fam.even_in_r:
            flip = RatFunc(Poly([0, -1]))
            xm = x.compose(flip)
            xkeys.add((xm.num.coeffs, xm.den.coeffs))
        if key in seen_classes or xkeys & seen_x:
            continue
        seen_classes.add(key)
        seen_x |= xkeys
        hits.append(SearchHit(x, F, cond))
    return HitList(tuple(hits), partial, len(candidates))


# -- lifting and chains ----------------------------------------------------------


def _even_weight(dA, dB, dC):
    w = max(dA, (dB + 1) // 2, (dC + 2) // 3, 1)
    return w + (w % 2)


@dataclass(frozen=True)
class LiftStage:
    hit_x: RatFunc            # in the stage's own parameter
    condition: QuadCondition  # trivial (0,0,1) for reparametrization stages
    base: tuple               # (p, q) or None when the map was supplied
    map: object               # Substitution next_param -> this parameter, or None
    weight: int
    curve: Curve              # curve after this stage, over the next parameter
    var: str


@dataclass
class FamilyChain:
    family_label: str
    stages: list
    final_curve: Curve
    points: list              # carried x-values on the final curve
    torsion_xs: list          # family torsion x-values pushed to the final curve
    claimed_rank: int
    provenance: list = field(default_factory=list)
    name: str = ""

    def final_var(self):
        return self.stages[-1].var if self.stages else "r"

    def exclusions(self):
        return chain_exclusions(self)

    def specialize(self, value):
        """Specialized curve plus carried points over Q; value must be clean."""
        value = mpq(value)
        excl = set(self.exclusions())
        if value in excl:
            raise ValueError(f"{value} is an excluded parameter")
        E = self.final_curve.specialize(value)
        E.assert_nonsingular()
        pts = []
        for x in self.points:
            P = E.point_from_x(x(value))
            if P is None:
                raise VerificationError(f"carried point x={x.text()} fails to specialize at {value}")
            pts.append(P)
        return E, pts


_VAR_NAMES = ("r", "k", "s", "t", "w", "z")


def substitute_curve(E, sub):
    """Pull a polynomial-coefficient curve back along r = sub, clearing
    denominators with the even weight so the result is again polynomial."""
    A, B, C = E.coeff_polys()
    n, d = sub.num, sub.den
    w = _even_weight(max(A.degree, 0), max(B.degree, 0), max(C.degree, 0))
    A2 = A.compose_frac(n, d, pad_to=w) if not A.is_zero else Poly()
    B2 = B.compose_frac(n, d, pad_to=2 * w) if not B.is_zero else Poly()
    C2 = C.compose_frac(n, d, pad_to=3 * w) if not C.is_zero else Poly()
    return Curve(RatFunc(A2), RatFunc(B2), RatFunc(C2)), w


def push_x(x, sub, weight):
    """Carry an x-coordinate through a substitution: x(sub) * den(sub)^weight."""
    return x.compose(sub.as_ratfunc()) * RatFunc(sub.den) ** weight


def lift(E, hit, base=None, sub=None, carried=()):
    """One stage: parametrize the hit's conic (or verify a supplied map),
    substitute, and push every carried x through.

    Returns (new curve, new carried list whose last entry is the hit's point,
    the ConicParam or None, the Substitution, the weight). Raises
    VerificationError if any pushed point loses its square right-hand side.
    """
    cond = hit.condition
    if cond.already_square or (cond.a, cond.b, cond.c) == (0, 0, 1):
        new_carried = list(carried) + [hit.x]
        _assert_square_rhs(E, new_carried, "square hit carried directly")
        return E, new_carried, None, None, 0
    param = None
    if sub is None:
        if base is None:
            raise ValueError("lift needs a base point or an explicit map")
        param = parametrize(cond, *base)
        sub = Substitution.from_ratfunc(param.map)
    else:
        target = RatFunc(cond.poly()).compose(sub.as_ratfunc())
        if target.sqrt() is None:
            raise VerificationError(
                f"map {sub.text('k')} does not square the condition {cond.text()}"
            )
    E2, w = substitute_curve(E, sub)
    if E2.is_singular():
        raise SingularCurveError("lifted curve is identically singular")
    new_carried = [push_x(x, sub, w) for x in carried] + [push_x(hit.x, sub, w)]
    _assert_square_rhs(E2, new_carried, f"lift through {sub.text('k')}")
    return E2, new_carried, param, sub, w


def _assert_square_rhs(E, xs, context):
    for x in xs:
        v = E.rhs(x)
        if v.is_zero or v.sqrt() is None:
            raise VerificationError(f"{context}: RHS of x = {x.text()} is not a square")


def build_chain(fam, script, name=""):
    """Run a scripted chain: each stage supplies a candidate x (or variants)
    plus either a conic base point or an explicit parameter map.

    Stage dicts: {"x": expr | "x_variants": [expr, ...], "base": [p, q]}
                 {"x": expr, "map": expr}
                 {"map": expr, "points": [expr, ...]}   (pure reparametrization;
                  the points are given in the new parameter, pre-clearing)
    """
    if isinstance(fam, str):
        fam = family(fam)
    E = fam.curve
    carried = []
    torsion = list(fam.torsion_xs())
    stages = []
    provenance = []
    vi = 0
    for idx, spec in enumerate(script):
        var_in = _VAR_NAMES[min(vi, len(_VAR_NAMES) - 1)]
        var_out = _VAR_NAMES[min(vi + 1, len(_VAR_NAMES) - 1)]
        map_txt = spec.get("map")
        sub = Substitution.parse(map_txt, var_out) if map_txt else None
        if "points" in spec:
            if sub is None:
                raise ValueError("reparametrization stage needs a map")
            E2, w = substitute_curve(E, sub)
            if E2.is_singular():
                raise SingularCurveError("reparametrized curve is identically singular")
            dw = RatFunc(sub.den) ** w
            carried = [push_x(x, sub, w) for x in carried]
            new_pts = [parse_ratfunc(t, var_out) * dw for t in spec["points"]]
            _assert_square_rhs(E2, carried + new_pts, f"stage {idx + 1} reparametrization")
            carried += new_pts
            torsion = [push_x(x, sub, w) for x in torsion]
            stages.append(LiftStage(RatFunc.const(0), QuadCondition(0, 0, 1), None, sub, w, E2, var_out))
            E = E2
            vi += 1
            continue
        variants = spec.get("x_variants") or [spec["x"]]
        chosen = None
        prof = None
        errors = []
        for text in variants:
            try:
                x = parse_ratfunc(text, var_in)
                p = rhs_profile(E, x)
            except ValueError as e:
                errors.append(f"{text}: {e}")
                continue
            if isinstance(p, Reject):
                errors.append(f"{text}: {p.reason}")
                continue
            chosen, prof = (x, p)
            if text != variants[0]:
                provenance.append(
                    f"stage {idx + 1}: printed candidate rejected, variant {text!r} accepted by the profile oracle"
                )
            break
        if chosen is None:
            raise VerificationError(f"stage {idx + 1}: no candidate variant profiles; tried {errors}")
        cond = prof.condition if isinstance(prof, SquareTimesQuad) else QuadCondition(0, 0, 1)
        hit = SearchHit(chosen, prof.F, cond)
        base = spec.get("base")
        base = (mpq(base[0]), mpq(base[1])) if base else None
        E2, carried, param, sub_used, w = lift(E, hit, base=base, sub=sub, carried=carried)
        if sub_used is not None:
            torsion = [push_x(x, sub_used, w) for x in torsion]
            vi += 1
        stages.append(LiftStage(chosen, cond, base, sub_used, w, E2, var_out if sub_used is not None else var_in))
        E = E2
    chain = FamilyChain(
        family_label=fam.label,
        stages=stages,
        final_curve=E,
        points=carried,
        torsion_xs=torsion,
        claimed_rank=len(carried),
        provenance=provenance,
        name=name,
    )
    _check_chain_distinctness(chain)
    return chain


def _check_chain_distinctness(chain):
    pts = chain.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise VerificationError(f"carried points {i} and {j} coincide identically")
        for t in chain.torsion_xs:
            if pts[i] == t:
                raise VerificationError(f"carried point {i} identically equals a torsion point")


def chain_exclusions(chain):
    """Parameter values where the final curve degenerates or points collide.

    Union of: rational roots of the discriminant numerator, poles of carried
    points, and collisions of carried points with each other or with the
    pushed torsion coordinates.
    """
    out = set()
    disc = chain.final_curve.discriminant()
    if not isinstance(disc, RatFunc):
        disc = RatFunc._coerce(disc)
    if disc.is_zero:
        raise SingularCurveError("chain ends in an identically singular curve")
    out.update(rational_roots(disc.num))
    for x in chain.points:
        if x.den.degree > 0:
            out.update(rational_roots(x.den))
        for other in chain.torsion_xs:
            diff = x - other
            if not diff.is_zero and diff.num.degree > 0:
                out.update(rational_roots(diff.num))
    for i in range(len(chain.points)):
        for j in range(i + 1, len(chain.points)):
            diff = chain.points[i] - chain.points[j]
            if not diff.is_zero and diff.num.degree > 0:
                out.update(rational_roots(diff.num))
    return sorted(out)


# -- serialization -----------------------------------------------------------------


def _poly_to_ints(p):
    return p.int_coeffs()


def ratfunc_to_dict(f):
    def qlist(p):
        out = []
        for c in p.coeffs:
            out.append(int(c) if c.denominator == 1 else str(c))
        return out

    return {"num_coeffs": qlist(f.num), "den_coeffs": qlist(f.den)}


def _ratfunc_from_dict(d):
    def back(vals):
        return Poly([mpq(v) for v in vals])

    return RatFunc(back(d["num_coeffs"]), back(d["den_coeffs"]))


def _curve_to_dicts(E):
    A, B, C = (c if isinstance(c, RatFunc) else RatFunc._coerce(c) for c in (E.A, E.B, E.C))
    return {"A": ratfunc_to_dict(A), "B": ratfunc_to_dict(B), "C": ratfunc_to_dict(C)}


def _curve_from_dicts(d):
    return Curve(
        _ratfunc_from_dict(d["A"]), _ratfunc_from_dict(d["B"]), _ratfunc_from_dict(d["C"])
    )


def curve_to_json_dict(E):
    """Curve coefficients as integer polynomial arrays (ascending)."""
    A, B, C = E.coeff_polys()
    return {"A": _poly_to_ints(A), "B": _poly_to_ints(B), "C": _poly_to_ints(C)}


def chain_to_json_dict(chain):
    return {
        "name": chain.name,
        "family": chain.family_label,
        "claimed_rank": chain.claimed_rank,
        "stages": [
            {
                "x": ratfunc_to_dict(st.hit_x),
                "condition": [int(st.condition.a), int(st.condition.b), int(st.condition.c)],
                "base": [str(st.base[0]), str(st.base[1])] if st.base else None,
                "map": ratfunc_to_dict(RatFunc(st.map.num, st.map.den)) if st.map is not None else None,
                "map_text": st.map.text(st.var) if st.map is not None else None,
                "weight": st.weight,
                "curve": curve_to_json_dict(st.curve),
                "var": st.var,
            }
            for st in chain.stages
        ],
        "final_curve": curve_to_json_dict(chain.final_curve),
        "points": [ratfunc_to_dict(x) for x in chain.points],
        "exclusions": [str(e) for e in chain.exclusions()],
        "provenance": list(chain.provenance),
    }
