"""Laurent polynomials over Q(zeta) and the bivariate rational forms used by
the blow-up engine.

A LaurentPoly is a finite-support map from integer exponents of the local
variable to nonzero cyclotomic coefficients.  Polar parts of branch
parametrizations, their truncated holomorphic parts, and exponential factors
all live here.  BiRational carries quotients of bivariate polynomials through
monomial coordinate changes and classifies their local shape at axis points.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, gcd

from .cyclotomic import CycloNum

__all__ = [
    "LaurentPoly",
    "BiPoly",
    "BiRational",
    "NormalFormKind",
    "NormalFormTag",
    "ClassificationError",
    "subst_root_power",
    "support_gcd",
    "CHART_FIRST",
    "CHART_SECOND",
]


class ClassificationError(ValueError):
    """Local form at a point is not monomial-times-unit; carries the point."""

    def __init__(self, point, message: str):
        self.point = point
        super().__init__(f"{message} at point {point}")


def _coerce_num(c) -> CycloNum:
    return c if isinstance(c, CycloNum) else CycloNum.from_rational(c)


class LaurentPoly:
    """Finite-support Laurent polynomial in one variable over Q(zeta).

    >>> f = LaurentPoly({-1: 1})
    >>> (f * f).support()
    [-2]
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[int, CycloNum] = {}
        if terms:
            for e, c in terms.items():
                c = _coerce_num(c)
                if not c.is_zero():
                    clean[int(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls({exponent: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[int]:
        return sorted(self.terms)

    def min_exponent(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no support")
        return min(self.terms)

    def pole_order(self) -> int:
        """Order of the pole at the origin (0 when holomorphic)."""
        if self.is_zero():
            return 0
        low = min(self.terms)
        return -low if low < 0 else 0

    def coeff(self, exponent: int) -> CycloNum:
        return self.terms.get(exponent, CycloNum.zero())

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            c = _coerce_num(other)
            return LaurentPoly({e: a * c for e, a in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, CycloNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                p = c1 * c2
                s = out.get(e)
                out[e] = p if s is None else s + p
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by the n-th power of the variable."""
        return LaurentPoly({e + n: c for e, c in self.terms.items()})

    def polar_part(self) -> "LaurentPoly":
        return LaurentPoly({e: c for e, c in self.terms.items() if e < 0})

    def positive_part(self) -> "LaurentPoly":
        return LaurentPoly({e: c for e, c in self.terms.items() if e > 0})

    def const_term(self) -> CycloNum:
        return self.terms.get(0, CycloNum.zero())

    def evaluate(self, x: CycloNum) -> CycloNum:
        acc = CycloNum.zero(x.order)
        for e, c in self.terms.items():
            acc = acc + c * x**e
        return acc

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[e] for e, c in self.terms.items())

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "LaurentPoly(0)"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
            bits.append(f"({c!r})*{mono}" if e else f"({c!r})")
        return f"LaurentPoly({' + '.join(bits)})"


def subst_root_power(f: LaurentPoly, xi: CycloNum, k: int) -> LaurentPoly:
    """Substitute the variable by xi times its k-th power: f(t) -> f(xi*t^k).

    xi must be a root of unity at its declared order; each term a*t^j becomes
    a*xi^j*t^(j*k).
    """
    if k <= 0:
        raise ValueError(f"substitution exponent must be positive, got {k}")
    # Roots of unity inside Q(zeta_N) are exactly the lcm(2, N)-th roots.
    torsion = xi.order if xi.order % 2 == 0 else 2 * xi.order
    if xi**torsion != 1:
        raise ValueError("substitution twist must be a root of unity")
    out: dict[int, CycloNum] = {}
    for e, c in f.terms.items():
        out[e * k] = c * xi**e
    return LaurentPoly(out)


def support_gcd(f: LaurentPoly, extra: int) -> int:
    """gcd of |extra| and the absolute values of the support exponents."""
    g = abs(extra)
    for e in f.terms:
        g = gcd(g, abs(e))
    return g


class BiPoly:
    """Bivariate polynomial over Q(zeta), sparse in both variables."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[tuple[int, int], CycloNum] = {}
        if terms:
            for (i, j), c in terms.items():
                c = _coerce_num(c)
                if not c.is_zero():
                    if i < 0 or j < 0:
                        raise ValueError("BiPoly exponents must be nonnegative")
                    clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def from_univariate(cls, f: LaurentPoly, var: int) -> "BiPoly":
        """Embed a holomorphic LaurentPoly as a polynomial in variable 0 or 1."""
        if f.pole_order():
            raise ValueError("cannot embed a polar Laurent polynomial")
        if var == 0:
            return cls({(e, 0): c for e, c in f.terms.items()})
        return cls({(0, e): c for e, c in f.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return BiPoly(out)

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            c = _coerce_num(other)
            return BiPoly({k: a * c for k, a in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict[tuple[int, int], CycloNum] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                p = c1 * c2
                s = out.get(k)
                out[k] = p if s is None else s + p
        return BiPoly(out)

    __rmul__ = __mul__

    def content(self) -> tuple[int, int]:
        """Largest monomial u^a v^b dividing every term."""
        if self.is_zero():
            return (0, 0)
        return (min(i for i, _ in self.terms), min(j for _, j in self.terms))

    def divide_monomial(self, a: int, b: int) -> "BiPoly":
        return BiPoly({(i - a, j - b): c for (i, j), c in self.terms.items()})

    def subst_second_by_product(self) -> "BiPoly":
        """v -> u*v (the chart keeping the first variable)."""
        return BiPoly({(i + j, j): c for (i, j), c in self.terms.items()})

    def subst_first_by_product(self) -> "BiPoly":
        """u -> u*v (the chart keeping the second variable)."""
        return BiPoly({(i, i + j): c for (i, j), c in self.terms.items()})

    def translate(self, a: CycloNum | int, b: CycloNum | int) -> "BiPoly":
        """Recenter: substitute u -> u + a, v -> v + b."""
        a = _coerce_num(a)
        b = _coerce_num(b)
        out: dict[tuple[int, int], CycloNum] = {}
        for (i, j), c in self.terms.items():
            ui = [(i - s, c * comb(i, s) * a**s) for s in range(i + 1)] \
                if not a.is_zero() else [(i, c)]
            for (inew, ci) in ui:
                if b.is_zero():
                    k = (inew, j)
                    s0 = out.get(k)
                    out[k] = ci if s0 is None else s0 + ci
                else:
                    for t in range(j + 1):
                        k = (inew, j - t)
                        cj = ci * comb(j, t) * b**t
                        s0 = out.get(k)
                        out[k] = cj if s0 is None else s0 + cj
        return BiPoly(out)

    def eval(self, u: CycloNum | int, v: CycloNum | int) -> CycloNum:
        u = _coerce_num(u)
        v = _coerce_num(v)
        acc = CycloNum.zero()
        for (i, j), c in self.terms.items():
            acc = acc + c * u**i * v**j
        return acc

    def eval_first(self, u: CycloNum | int) -> LaurentPoly:
        """Partial evaluation at the first variable; result in the second."""
        u = _coerce_num(u)
        out: dict[int, CycloNum] = {}
        for (i, j), c in self.terms.items():
            p = c * u**i
            s = out.get(j)
            out[j] = p if s is None else s + p
        return LaurentPoly(out)

    def d_dv(self) -> "BiPoly":
        return BiPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def d_du(self) -> "BiPoly":
        return BiPoly({(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[k] for k, c in self.terms.items())

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "BiPoly(0)"
        bits = []
        for (i, j) in sorted(self.terms):
            c = self.terms[(i, j)]
            mono = f"u^{i}*v^{j}"
            bits.append(f"({c!r})*{mono}")
        return f"BiPoly({' + '.join(bits)})"


# Chart names for point blow-ups centered at the origin.
CHART_FIRST = "x=u, y=u*v"
CHART_SECOND = "x=u*v, y=v"


class NormalFormKind(Enum):
    HOLOMORPHIC_COORD = "holomorphic-unit-plus-coordinate"
    POLE_ONE_VAR = "monomial-pole-one-var"
    POLE_TWO_VAR = "monomial-pole-two-var"
    NOT_NORMAL = "not-normal-form"


@dataclass(frozen=True)
class NormalFormTag:
    """Local shape of a bivariate rational function at an axis point.

    pole_u/pole_v are the orders of the monomial pole in each local variable
    after recentering the point at the origin; for the holomorphic case,
    ``value`` is the function value and ``transverse`` records that the
    derivative along the second local variable is nonzero (so value plus a
    coordinate is an honest local normal form).
    """

    kind: NormalFormKind
    pole_u: int = 0
    pole_v: int = 0
    value: CycloNum | None = None
    transverse: bool = False
    detail: str = ""


class BiRational:
    """Quotient of bivariate polynomials, common monomial factors cancelled."""

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        na, nb = num.content()
        da, db = den.content()
        ca, cb = min(na, da), min(nb, db)
        if not num.is_zero() and (ca or cb):
            num = num.divide_monomial(ca, cb)
            den = den.divide_monomial(ca, cb)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("BiRational is immutable")

    def compose_monomial_map(self, chart: str, shift=(0, 0)) -> "BiRational":
        """Pull back through a recentering translation followed by one of the
        two standard point blow-up charts."""
        a, b = shift
        num = self.num.translate(a, b)
        den = self.den.translate(a, b)
        if chart == CHART_FIRST:
            num = num.subst_second_by_product()
            den = den.subst_second_by_product()
        elif chart == CHART_SECOND:
            num = num.subst_first_by_product()
            den = den.subst_first_by_product()
        else:
            raise ValueError(f"unknown chart {chart!r}")
        return BiRational(num, den)

    def eval(self, u, v) -> CycloNum:
        return self.num.eval(u, v) / self.den.eval(u, v)

    def classify_at_point(self, point) -> NormalFormTag:
        """Normal form of the function at a point on a coordinate axis.

        The point is recentered at the origin; the residual numerator and
        denominator must be monomial-times-unit there.  A denominator that
        fails this raises ClassificationError carrying the point.
        """
        u0, v0 = (_coerce_num(point[0]), _coerce_num(point[1]))
        if not (u0.is_zero() or v0.is_zero()):
            raise ValueError(f"point {point} is not on a coordinate axis")
        num = self.num.translate(u0, v0)
        den = self.den.translate(u0, v0)
        na, nb = num.content()
        da, db = den.content()
        nres = num.divide_monomial(na, nb)
        dres = den.divide_monomial(da, db)
        if dres.eval(0, 0).is_zero():
            raise ClassificationError(
                point, "denominator is not monomial-times-unit"
            )
        pu, pv = da - na, db - nb
        num_unit = not nres.eval(0, 0).is_zero()
        if pu <= 0 and pv <= 0:
            # Holomorphic: g = u^(-pu) v^(-pv) * nres/dres.
            value = CycloNum.zero() if (pu < 0 or pv < 0) \
                else nres.eval(0, 0) / dres.eval(0, 0)
            dv = self._transverse_dv(nres, dres, -pu, -pv)
            kind = (NormalFormKind.HOLOMORPHIC_COORD if dv
                    else NormalFormKind.NOT_NORMAL)
            return NormalFormTag(kind, 0, 0, value, dv,
                                 "" if dv else "vanishing transverse derivative")
        if not num_unit or pu < 0 or pv < 0:
            return NormalFormTag(
                NormalFormKind.NOT_NORMAL, max(pu, 0), max(pv, 0), None, False,
                "numerator vanishes against a pole",
            )
        if pu >= 1 and pv >= 1:
            return NormalFormTag(NormalFormKind.POLE_TWO_VAR, pu, pv)
        return NormalFormTag(NormalFormKind.POLE_ONE_VAR, max(pu, 0), max(pv, 0))

    @staticmethod
    def _transverse_dv(nres: BiPoly, dres: BiPoly, zu: int, zv: int) -> bool:
        # Derivative at the origin of v -> g(0, v) = v^zv * nres(0,v)/dres(0,v)
        # (zero identically when zu > 0); dres(0,0) is nonzero by construction.
        if zu > 0 or zv > 1:
            return False
        n0 = nres.eval_first(CycloNum.zero())
        d0 = dres.eval_first(CycloNum.zero())
        if zv == 1:
            return not n0.const_term().is_zero()
        n_c, n_l = n0.const_term(), n0.coeff(1)
        d_c, d_l = d0.const_term(), d0.coeff(1)
        return not (n_l * d_c - n_c * d_l).is_zero()

    def __repr__(self):
        return f"BiRational({self.num!r}, {self.den!r})"
