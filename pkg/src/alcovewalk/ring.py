"""Exact coefficients in q and the t-parameters.

Exponents live on a fixed lattice: q-exponents are multiples of 1/(2e) and
t-exponents are multiples of 1/2.  Internally every element is a pair of
multivariate polynomials over Q in the variables Q = q^(1/(2e)) and
T_c = t_c^(1/2), together with a monomial shift, so Laurent monomials never
need negative exponents inside the polynomial backend.

The polynomial backend is FLINT (via python-flint); it provides the
multivariate gcd and factorization.  Everything else here is bookkeeping.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import flint

__all__ = [
    "CoeffField",
    "LaurentQT",
    "RationalQT",
    "laurent_mul",
    "frac_normalize",
    "specialize",
    "SpecializationError",
]


class SpecializationError(ArithmeticError):
    """Raised when a substitution makes a denominator vanish."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    return Fraction(c)


def _fmpq(c: Fraction) -> flint.fmpq:
    return flint.fmpq(c.numerator, c.denominator)


class CoeffField:
    """The coefficient field Q(q^(1/(2e)), t_c^(1/2) for each class c).

    Instances are interned: two fields with the same denominator and class
    names are the same object.
    """

    def __new__(cls, q_den: int, classes: Iterable[str] = ("t",)):
        return _field(int(q_den), tuple(classes))

    def _init(self, q_den: int, classes: tuple[str, ...]):
        if q_den <= 0 or q_den % 2:
            raise ValueError("q denominator must be a positive even integer")
        if not classes or len(set(classes)) != len(classes):
            raise ValueError("need distinct t-class names")
        self.q_den = q_den
        self.classes = classes
        self.nvars = 1 + len(classes)
        names = ("Q",) + tuple(f"T{i}" for i in range(len(classes)))
        self.ctx = flint.fmpq_mpoly_ctx.get(names, "deglex")
        self._zero_shift = (0,) * self.nvars
        self.zero = RationalQT._raw(self, self._zero_shift, self.ctx.from_dict({}), self.ctx.from_dict({self._zero_shift: 1}))
        self.one = self.const(1)

    def __repr__(self):
        return f"CoeffField(q_den={self.q_den}, classes={self.classes!r})"

    def __reduce__(self):
        return (CoeffField, (self.q_den, self.classes))

    # -- constructors -----------------------------------------------------

    def class_index(self, cls: str) -> int:
        try:
            return 1 + self.classes.index(cls)
        except ValueError:
            raise KeyError(f"unknown t-class {cls!r}") from None

    def exponent(self, q: Fraction | int = 0, t: Mapping[str, Fraction | int] | None = None) -> tuple[int, ...]:
        """Scaled exponent tuple for q^q * prod t_c^(t[c]) in real units."""
        vec = [0] * self.nvars
        qs = Fraction(q) * self.q_den
        if qs.denominator != 1:
            raise ValueError(f"q exponent {q} is not a multiple of 1/{self.q_den}")
        vec[0] = int(qs)
        for cls, val in (t or {}).items():
            ts = Fraction(val) * 2
            if ts.denominator != 1:
                raise ValueError(f"t exponent {val} is not a multiple of 1/2")
            vec[self.class_index(cls)] += int(ts)
        return tuple(vec)

    def monomial(self, exp: tuple[int, ...], coeff=1) -> "RationalQT":
        """coeff * (scaled monomial exp)."""
        c = _as_fraction(coeff)
        if c == 0:
            return self.zero
        return RationalQT._raw(self, tuple(exp), self.ctx.from_dict({self._zero_shift: _fmpq(c)}), self.ctx.from_dict({self._zero_shift: 1}))

    def const(self, c) -> "RationalQT":
        return self.monomial(self._zero_shift, c)

    def q(self, k: Fraction | int = 1) -> "RationalQT":
        return self.monomial(self.exponent(q=k))

    def t(self, k: Fraction | int = 1, cls: str | None = None) -> "RationalQT":
        return self.monomial(self.exponent(t={cls or self.classes[0]: k}))

    def laurent(self, terms: Mapping[tuple[int, ...], object]) -> "LaurentQT":
        return LaurentQT.from_terms(self, terms)

    def from_laurent(self, a: "LaurentQT") -> "RationalQT":
        return RationalQT._raw(self, a.shift, a.poly, self.ctx.from_dict({self._zero_shift: 1}))

    def coerce(self, x) -> "RationalQT":
        if isinstance(x, RationalQT):
            if x.field is not self:
                raise ValueError("coefficients from different fields")
            return x
        if isinstance(x, LaurentQT):
            return self.from_laurent(x)
        if isinstance(x, (int, Fraction)):
            return self.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    # -- exponent display -------------------------------------------------

    def var_names(self) -> tuple[str, ...]:
        return ("q",) + self.classes

    def real_exponents(self, exp: tuple[int, ...]) -> tuple[Fraction, ...]:
        return (Fraction(exp[0], self.q_den),) + tuple(Fraction(b, 2) for b in exp[1:])


@lru_cache(maxsize=None)
def _field(q_den: int, classes: tuple[str, ...]) -> CoeffField:
    obj = object.__new__(CoeffField)
    obj._init(q_den, classes)
    return obj


def _split_monomial(poly) -> tuple[tuple[int, ...], object]:
    """Return (exponents, poly / x^exponents) with the quotient not divisible by any variable."""
    if poly.is_zero():
        return None, poly
    tc = poly.term_content()
    exp = tuple(int(e) for e in list(tc.monoms())[0])
    if not any(exp):
        return exp, poly
    return exp, poly / tc.context().from_dict({exp: 1})


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


class LaurentQT:
    """Laurent polynomial x^shift * poly with poly not divisible by any variable."""

    __slots__ = ("field", "shift", "poly")

    def __init__(self, field: CoeffField, shift, poly):
        self.field = field
        self.shift = tuple(shift)
        self.poly = poly

    @classmethod
    def from_terms(cls, field: CoeffField, terms: Mapping[tuple[int, ...], object]) -> "LaurentQT":
        terms = {tuple(k): _as_fraction(v) for k, v in terms.items() if v != 0}
        if not terms:
            return cls(field, field._zero_shift, field.ctx.from_dict({}))
        lo = tuple(min(e[i] for e in terms) for i in range(field.nvars))
        poly = field.ctx.from_dict({_sub_exp(e, lo): _fmpq(c) for e, c in terms.items()})
        return cls(field, lo, poly)

    @classmethod
    def _normal(cls, field, shift, poly) -> "LaurentQT":
        if poly.is_zero():
            return cls(field, field._zero_shift, poly)
        exp, rest = _split_monomial(poly)
        return cls(field, _add_exp(shift, exp), rest)

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Scaled exponent tuple -> coefficient, in canonical (graded lex) order."""
        out = {}
        for e, c in zip(self.poly.monoms(), self.poly.coeffs()):
            out[_add_exp(self.shift, tuple(int(x) for x in e))] = _as_fraction(c)
        return dict(sorted(out.items(), key=lambda kv: _grlex_key(kv[0])))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __mul__(self, other: "LaurentQT") -> "LaurentQT":
        if self.is_zero() or other.is_zero():
            return LaurentQT(self.field, self.field._zero_shift, self.field.ctx.from_dict({}))
        # a product of polynomials coprime to every variable stays coprime to them
        return LaurentQT(self.field, _add_exp(self.shift, other.shift), self.poly * other.poly)

    def __add__(self, other: "LaurentQT") -> "LaurentQT":
        lo = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        ctx = self.field.ctx
        p = self.poly * ctx.from_dict({_sub_exp(self.shift, lo): 1}) + other.poly * ctx.from_dict({_sub_exp(other.shift, lo): 1})
        return LaurentQT._normal(self.field, lo, p)

    def __neg__(self):
        return LaurentQT(self.field, self.shift, -self.poly)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, LaurentQT):
            return NotImplemented
        return self.field is other.field and self.shift == other.shift and self.poly == other.poly

    def __hash__(self):
        return hash((self.shift, str(self.poly)))

    def __repr__(self):
        return f"LaurentQT({_laurent_text(self.field, self.terms())})"

    def __str__(self):
        return _laurent_text(self.field, self.terms())


def laurent_mul(a: LaurentQT, b: LaurentQT) -> LaurentQT:
    return a * b


def _grlex_key(exp):
    return (sum(exp), exp)


class RationalQT:
    """Canonical fraction x^shift * num / den.

    Invariants: num and den are coprime polynomials, neither divisible by a
    variable, and the first term of den in graded lex order (the lowest
    one, a constant for the usual 1 - q^a t^b factors) has coefficient 1.
    With these the representation is unique, so equality is structural.
    """

    __slots__ = ("field", "shift", "n", "d", "_hash")

    def __init__(self, *a, **k):
        raise TypeError("use frac_normalize or CoeffField constructors")

    @classmethod
    def _raw(cls, field, shift, n, d) -> "RationalQT":
        obj = object.__new__(cls)
        obj.field = field
        obj.shift = shift
        obj.n = n
        obj.d = d
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, field, shift, n, d) -> "RationalQT":
        """Normalize a fraction whose num/den may share factors or monomials."""
        if d.is_zero():
            raise ZeroDivisionError("division by zero")
        if n.is_zero():
            return field.zero
        en, n = _split_monomial(n)
        ed, d = _split_monomial(d)
        shift = _sub_exp(_add_exp(shift, en), ed)
        g = n.gcd(d)
        if not g.is_one():
            n = n / g
            d = d / g
        n, d = _monic(n, d)
        return cls._raw(field, shift, n, d)

    # -- accessors --------------------------------------------------------

    @property
    def num(self) -> LaurentQT:
        return LaurentQT(self.field, self.shift, self.n)

    @property
    def den(self) -> LaurentQT:
        return LaurentQT(self.field, self.field._zero_shift, self.d)

    def is_zero(self) -> bool:
        return self.n.is_zero()

    def is_one(self) -> bool:
        return not any(self.shift) and self.n.is_one() and self.d.is_one()

    def is_laurent(self) -> bool:
        return self.d.is_one()

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalQT):
            if other.field is not self.field:
                raise ValueError("coefficients from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.const(other)
        if isinstance(other, LaurentQT):
            return self.field.from_laurent(other)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self.field.zero
        shift = _add_exp(self.shift, other.shift)
        g1 = self.n.gcd(other.d)
        g2 = other.n.gcd(self.d)
        n1, d2 = (self.n, other.d) if g1.is_one() else (self.n / g1, other.d / g1)
        n2, d1 = (other.n, self.d) if g2.is_one() else (other.n / g2, self.d / g2)
        n, d = _monic(n1 * n2, d1 * d2)
        return RationalQT._raw(self.field, shift, n, d)

    __rmul__ = __mul__

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        ctx = self.field.ctx
        lo = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        na = self.n * ctx.from_dict({_sub_exp(self.shift, lo): 1}) if self.shift != lo else self.n
        nb = other.n * ctx.from_dict({_sub_exp(other.shift, lo): 1}) if other.shift != lo else other.n
        if self.d == other.d:
            n = na + nb
            d = self.d
        else:
            g = self.d.gcd(other.d)
            if g.is_one():
                n = na * other.d + nb * self.d
                d = self.d * other.d
            else:
                ca, cb = self.d / g, other.d / g
                n = na * cb + nb * ca
                d = self.d * cb
        if n.is_zero():
            return self.field.zero
        en, n = _split_monomial(n)
        g = n.gcd(d)
        if not g.is_one():
            n = n / g
            d = d / g
        n, d = _monic(n, d)
        return RationalQT._raw(self.field, _add_exp(lo, en), n, d)

    __radd__ = __add__

    def __neg__(self):
        return RationalQT._raw(self.field, self.shift, -self.n, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def inverse(self) -> "RationalQT":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        neg = tuple(-s for s in self.shift)
        n, d = _monic(self.d, self.n)
        return RationalQT._raw(self.field, neg, n, d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.field.one
        shift = tuple(s * k for s in self.shift)
        return RationalQT._raw(self.field, shift, self.n ** k, self.d ** k)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentQT)):
            other = self._coerce(other)
        if not isinstance(other, RationalQT):
            return NotImplemented
        return self.field is other.field and self.shift == other.shift and self.n == other.n and self.d == other.d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, str(self.n), str(self.d)))
        return self._hash

    def __repr__(self):
        return f"RationalQT({self.to_text()})"

    def __str__(self):
        return self.to_text()

    # -- output -----------------------------------------------------------

    def to_text(self, latex: bool = False) -> str:
        num = self.num.terms()
        den = self.den.terms()
        if not self.d.is_one():
            head = _laurent_text(self.field, num, latex)
            tail = _laurent_text(self.field, den, latex)
            if latex:
                return rf"\frac{{{head}}}{{{tail}}}"
            return f"({head})/({tail})"
        return _laurent_text(self.field, num, latex)

    def factored_text(self, latex: bool = False) -> str:
        """Display as constant * monomial * product of irreducible factors.

        Factors are taken over the integral powers of q and t where the
        exponents allow it, so 1 - q t stays whole instead of splitting into
        half-integer pieces.
        """
        if self.is_zero():
            return "0"
        step = _common_step(self.field, self.n, self.d)
        c_n, fac_n = _binomial_factors(self.field, self.n, step)
        c_d, fac_d = _binomial_factors(self.field, self.d, step)
        const = c_n / c_d
        mono = _monomial_text(self.field, self.shift, latex)
        top = [_factor_text(self.field, f, e, latex) for f, e in fac_n]
        bot = [_factor_text(self.field, f, e, latex) for f, e in fac_d]
        sign = "-" if const < 0 else ""
        const = abs(const)
        pieces = []
        if const.numerator != 1 or (not top and not mono):
            pieces.append(str(const.numerator))
        if mono:
            pieces.append(mono)
        pieces.extend(top)
        numer = " ".join(pieces) if latex else "*".join(pieces)
        if const.denominator != 1:
            bot.insert(0, str(const.denominator))
        if not bot:
            return sign + numer
        denom = " ".join(bot) if latex else "*".join(bot)
        if latex:
            return rf"{sign}\frac{{{numer}}}{{{denom}}}"
        if len(bot) > 1:
            denom = f"({denom})"
        return f"{sign}{numer}/{denom}"

    def to_json(self) -> dict:
        return {
            "num": _terms_json(self.field, self.num.terms()),
            "den": _terms_json(self.field, self.den.terms()),
            "scale": {"q": self.field.q_den, "t": 2},
        }

    @classmethod
    def from_json(cls, field: CoeffField, obj: Mapping) -> "RationalQT":
        scale = obj.get("scale", {"q": field.q_den, "t": 2})
        if scale["q"] != field.q_den or scale["t"] != 2:
            raise ValueError("exponent scale does not match the field")
        num = _terms_from_json(field, obj["num"])
        den = _terms_from_json(field, obj["den"])
        return frac_normalize(num, den)


def _monic(n, d):
    # flint's gcd is monic in the leading term, so quotients need rescaling
    c = list(d.coeffs())[-1]
    if c != 1:
        return n / c, d / c
    return n, d


def frac_normalize(num: LaurentQT, den: LaurentQT) -> RationalQT:
    """Canonical fraction num/den."""
    field = num.field
    if den.is_zero():
        raise ZeroDivisionError("division by zero")
    return RationalQT._make(field, _sub_exp(num.shift, den.shift), num.poly, den.poly)


def _factor_deflated(field, poly, step=None):
    """Factor poly over the coarsest exponent lattice it lives on.

    Returns (constant, [(terms dict in scaled exponents, multiplicity)], step),
    each factor oriented so its lowest term is positive.
    """
    if step is None:
        natural = [field.q_den] + [2] * len(field.classes)
        defl = [int(x) for x in poly.deflation_index()[0]]
        step = [math.gcd(a, b) if a else b for a, b in zip(defl, natural)]
    c, factors = poly.deflate(step).factor()
    const = _as_fraction(c)
    out = []
    for f, e in factors:
        e = int(e)
        terms = {tuple(int(x) * k for x, k in zip(m, step)): _as_fraction(v) for m, v in zip(f.monoms(), f.coeffs())}
        low = min(terms, key=_grlex_key)
        if terms[low] < 0:
            terms = {m: -v for m, v in terms.items()}
            if e % 2:
                const = -const
        out.append((terms, e))
    return const, out, step


def _binomial_factors(field, poly, step):
    """Irreducible factors, regrouped into binomials 1 - c*m^k where possible."""
    const, factors, step = _factor_deflated(field, poly, step)
    pool: dict = {}
    shape = {}
    for terms, e in factors:
        key = frozenset(terms.items())
        pool[key] = pool.get(key, 0) + e
        shape[key] = terms
    zero = field._zero_shift
    merged = []
    for key in sorted(pool, key=lambda k: sorted(_grlex_key(m) for m, _ in k)):
        terms = shape[key]
        if len(terms) != 2 or terms.get(zero) != 1:
            continue
        (m, c), = [(m, c) for m, c in terms.items() if m != zero]
        if abs(c) != 1:
            continue
        for k in range(24, 1, -1):
            top = {zero: Fraction(1), tuple(x * k for x in m): -((-c) ** k)}
            bpoly = field.ctx.from_dict({e: _fmpq(v) for e, v in top.items()})
            bconst, bfac, _ = _factor_deflated(field, bpoly, step)
            need: dict = {}
            for bt, be in bfac:
                bk = frozenset(bt.items())
                need[bk] = need.get(bk, 0) + be
            while pool.get(key, 0) and all(pool.get(bk, 0) >= n for bk, n in need.items()):
                for bk, n in need.items():
                    pool[bk] -= n
                const /= bconst
                merged.append(top)
    out = {}
    for t in merged:
        fk = frozenset(t.items())
        out[fk] = (t, out.get(fk, (t, 0))[1] + 1)
    for key, n in pool.items():
        if n:
            out[key] = (shape[key], out.get(key, (shape[key], 0))[1] + n)
    factors = sorted(out.values(), key=lambda fe: (len(fe[0]), sorted(map(_grlex_key, fe[0]))))
    return const, factors


def _common_step(field, *polys):
    step = [field.q_den] + [2] * len(field.classes)
    for p in polys:
        defl = [int(x) for x in p.deflation_index()[0]]
        step = [math.gcd(a, b) if a else b for a, b in zip(defl, step)]
    return step


def _factor_text(field, terms, e, latex):
    inner = _laurent_text(field, terms, latex)
    body = f"({inner})" if len(terms) > 1 else inner
    if e == 1:
        return body
    return f"{body}^{{{e}}}" if latex else f"{body}^{e}"


def _exp_text(x: Fraction, latex: bool) -> str:
    if x.denominator == 1:
        s = str(x.numerator)
        return f"^{{{s}}}" if latex else (f"^{s}" if x >= 0 else f"^({s})")
    if latex:
        sign = "-" if x < 0 else ""
        return rf"^{{{sign}\frac{{{abs(x.numerator)}}}{{{x.denominator}}}}}"
    return f"^({x.numerator}/{x.denominator})"


def _monomial_text(field, exp, latex=False) -> str:
    parts = []
    for name, x in zip(field.var_names(), field.real_exponents(exp)):
        if x == 0:
            continue
        if latex and name != "q" and name != "t":
            name = f"t_{{{name[2:] if name.startswith('t_') else name}}}"
        parts.append(name if x == 1 else name + _exp_text(x, latex))
    return (" " if latex else "*").join(parts)


def _laurent_text(field, terms: Mapping, latex: bool = False) -> str:
    if not terms:
        return "0"
    items = sorted(terms.items(), key=lambda kv: _grlex_key(kv[0]))
    out = []
    for i, (exp, c) in enumerate(items):
        mono = _monomial_text(field, exp, latex)
        neg = c < 0
        a = abs(c)
        if mono:
            if a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{a.numerator}{' ' if latex else '*'}{mono}"
            else:
                frac = rf"\frac{{{a.numerator}}}{{{a.denominator}}}" if latex else f"{a.numerator}/{a.denominator}"
                body = f"{frac}{' ' if latex else '*'}{mono}"
        else:
            body = (rf"\frac{{{a.numerator}}}{{{a.denominator}}}" if latex else str(a)) if a.denominator != 1 else str(a.numerator)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _terms_json(field, terms):
    out = []
    for exp, c in terms.items():
        tmap = {cls: exp[i + 1] for i, cls in enumerate(field.classes) if exp[i + 1]}
        out.append([[exp[0], tmap], str(c)])
    return out


def _terms_from_json(field, rows) -> LaurentQT:
    terms = {}
    for (qexp, tmap), c in rows:
        vec = [0] * field.nvars
        vec[0] = int(qexp)
        for cls, b in tmap.items():
            vec[field.class_index(cls)] = int(b)
        terms[tuple(vec)] = Fraction(c)
    return LaurentQT.from_terms(field, terms)


# -- specialization -------------------------------------------------------


def specialize(f: RationalQT, mapping: Mapping[str, object]) -> RationalQT:
    """Substitute values or other variables for q and the t-classes.

    Keys are "q" or class names.  A value is either a rational number or the
    name of another variable, meaning the two are identified (q=t).  Entries
    are applied one after another in mapping order, with normalization after
    each, so {"q": "t", "t": 0} is the q=t=0 specialization.
    """
    for var, val in mapping.items():
        f = _specialize_one(f, var, val)
    return f


def _var_index(field, name):
    if name == "q":
        return 0
    return field.class_index(name)


def _specialize_one(f: RationalQT, var: str, val) -> RationalQT:
    field = f.field
    i = _var_index(field, var)
    if f.is_zero():
        return f
    if isinstance(val, str):
        j = _var_index(field, val)
        if j == i:
            return f
        mapper = _identify(field, i, j)
    else:
        val = Fraction(val)
        if val == 0:
            s = f.shift[i]
            if s > 0:
                return field.zero
            if s < 0:
                raise SpecializationError("specialization pole")
            mapper = None
        else:
            mapper = _evaluate(field, i, val)
    num = _subst(field, f.num, i, mapper)
    den = _subst(field, f.den, i, mapper)
    if den.is_zero():
        raise SpecializationError("specialization pole")
    return frac_normalize(num, den)


def _identify(field, i, j):
    # exponents are scaled: Q = q^(1/q_den), T = t^(1/2)
    si = field.q_den if i == 0 else 2
    sj = field.q_den if j == 0 else 2

    def m(exp, c):
        a = exp[i] * sj
        if a % si:
            raise ValueError("exponent does not survive the identification")
        e = list(exp)
        e[i] = 0
        e[j] += a // si
        return tuple(e), c

    return m


def _evaluate(field, i, val):
    scale = field.q_den if i == 0 else 2

    def m(exp, c):
        if exp[i] % scale:
            raise ValueError("fractional exponent evaluated at a number")
        e = list(exp)
        k = e[i] // scale
        e[i] = 0
        return tuple(e), c * val ** k

    return m


def _subst(field, a: LaurentQT, i, mapper) -> LaurentQT:
    out: dict = {}
    for exp, c in a.terms().items():
        if mapper is None:
            if exp[i] != 0:
                continue
            e2, c2 = exp, c
        else:
            e2, c2 = mapper(exp, c)
        out[e2] = out.get(e2, 0) + c2
    return LaurentQT.from_terms(field, out)
