"""Expansion and product formulas for Macdonald polynomials, computed from alcove walks.

Normalizations: E_mu has X^mu-coefficient t_{v_mu^{-1}}^{1/2} and P_lambda is
monic in X^lambda.  Throughout, Q(a) denotes q^{shf(-a)} t^{hgt(-a)}, the
scalar by which Y^{-a} acts on 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .affine import AffineGroup, ExtAffineElement, WalkType, affine_group
from .ring import CoeffField, RationalQT, specialize
from .rootdata import AffineCoroot, PreconditionError, RootDatum, cartan_matrix
from .walks import (
    NonMinimalEndpoint,
    _check_budget,
    b_coroots,
    enumerate_two_colored,
    enumerate_walks,
    inverse_type,
    qt_value,
    step_signs,
    walk_stats,
)

__all__ = [
    "BasisLabel",
    "Expansion",
    "CoefficientTrace",
    "expand_E_monomial",
    "expand_X_in_E",
    "expand_P_in_E",
    "product_X_E",
    "product_E_P",
    "product_P_P",
    "domP_scalar",
    "pieri",
    "tableau_pieri",
    "specialize_expansion",
    "hall_littlewood_product",
    "stabilizer_sum",
    "renormalize_monic",
]


@dataclass(frozen=True, order=True)
class BasisLabel:
    basis: str
    weight: tuple

    def __str__(self):
        return f"{self.basis}[{','.join(str(x) for x in self.weight)}]"


class Expansion:
    """A finite linear combination over one basis (X, E or P), keyed by weight."""

    def __init__(self, basis: str, field: CoeffField, terms: dict | None = None):
        if basis not in ("X", "E", "P"):
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.field = field
        self.terms: dict[tuple, RationalQT] = {}
        for w, c in (terms or {}).items():
            self.add(w, c)

    def add(self, weight, coeff: RationalQT):
        weight = tuple(int(x) for x in weight)
        c = self.terms.get(weight)
        c = coeff if c is None else c + coeff
        if c.is_zero():
            self.terms.pop(weight, None)
        else:
            self.terms[weight] = c

    def __getitem__(self, weight) -> RationalQT:
        return self.terms.get(tuple(weight), self.field.zero)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Expansion):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def labels(self) -> list[BasisLabel]:
        return [BasisLabel(self.basis, w) for w in sorted(self.terms)]

    def items(self):
        for w in sorted(self.terms):
            yield w, self.terms[w]

    def scale(self, c: RationalQT) -> "Expansion":
        return Expansion(self.basis, self.field, {w: v * c for w, v in self.terms.items()})

    def map_coefficients(self, fn) -> "Expansion":
        out = Expansion(self.basis, self.field)
        for w, v in self.items():
            out.add(w, fn(v))
        return out

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [{"weight": list(w), "coeff": c.to_json()} for w, c in self.items()],
        }

    @classmethod
    def from_json(cls, field: CoeffField, obj: dict) -> "Expansion":
        out = cls(obj["basis"], field)
        for row in obj["terms"]:
            out.add(tuple(row["weight"]), RationalQT.from_json(field, row["coeff"]))
        return out

    def to_text(self, latex: bool = False, expanded: bool = False) -> str:
        if not self.terms:
            return "0"
        out = []
        for w, c in self.items():
            label = ",".join(str(x) for x in w)
            sym = f"{self.basis}_{{{label}}}" if latex else f"{self.basis}[{label}]"
            negative = (-c).is_one() or _leading_minus(c, latex, expanded)
            mag = -c if negative else c
            if mag.is_one():
                body = sym
            else:
                coeff = mag.to_text(latex) if expanded else mag.factored_text(latex)
                if latex:
                    body = f"\\left({coeff}\\right) {sym}" if _needs_parens(coeff) else f"{coeff} {sym}"
                else:
                    body = f"({coeff}) {sym}" if _needs_parens(coeff) else f"{coeff} {sym}"
            if not out:
                out.append("-" + body if negative else body)
            else:
                out.append((" - " if negative else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Expansion({self.basis}: {self.to_text()})"


def _needs_parens(text: str) -> bool:
    """A coefficient needs brackets unless it is a single factor or a product without '/'.

    LaTeX fractions are already delimited by \\frac, so they are left bare.
    """
    depth = 0
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif depth == 0 and (ch in " /+" or (ch == "-" and text[0] != ch)):
            return True
    return False


def _leading_minus(c: RationalQT, latex: bool, expanded: bool) -> bool:
    text = c.to_text(latex) if expanded else c.factored_text(latex)
    return text.startswith("-")


@dataclass
class CoefficientTrace:
    """Per-walk factor records; each record's factors multiply to its contribution."""

    records: list[dict] = field(default_factory=list)

    def add(self, **rec):
        self.records.append(rec)

    def to_json(self) -> list[dict]:
        out = []
        for r in self.records:
            row = {}
            for k, v in r.items():
                if isinstance(v, RationalQT):
                    row[k] = v.to_text()
                elif isinstance(v, list) and v and isinstance(v[0], RationalQT):
                    row[k] = [x.to_text() for x in v]
                else:
                    row[k] = v
            out.append(row)
        return out


# -- scalar building blocks ---------------------------------------------------


class _Scalars:
    """Cached coefficient factors for one datum."""

    def __init__(self, D: RootDatum):
        self.D = D
        self.F = D.field
        self.G = affine_group(D)
        self._q: dict = {}

    def Q(self, a: AffineCoroot) -> RationalQT:
        """q^{shf(-a)} t^{hgt(-a)}."""
        r = self._q.get(a)
        if r is None:
            r = qt_value(self.D, -a)
            self._q[a] = r
        return r

    def t_cls(self, cls: str, half: int) -> RationalQT:
        return self.F.t(Fraction(half, 2), cls)

    def t_gen(self, i: int, half: int) -> RationalQT:
        return self.D.t_gen(i, half)

    def t_coroot(self, a: AffineCoroot, half: int) -> RationalQT:
        return self.t_cls(self.D.class_of_coroot(a.finite), half)

    def fold(self, i_or_cls, a: AffineCoroot, extra: bool) -> RationalQT:
        """(t^{-1/2} - t^{1/2}) / (1 - Q(a)), times Q(a) when extra."""
        cls = self.D.class_of_generator(i_or_cls) if isinstance(i_or_cls, int) else i_or_cls
        q = self.Q(a)
        c = (self.t_cls(cls, -1) - self.t_cls(cls, 1)) / (1 - q)
        return c * q if extra else c

    def neg_cross(self, i: int, a: AffineCoroot) -> RationalQT:
        """(1 - Q t^{-1})(1 - Q t) / (1 - Q)^2."""
        cls = self.D.class_of_generator(i)
        q = self.Q(a)
        t = self.t_cls(cls, 2)
        return (1 - q / t) * (1 - q * t) / ((1 - q) * (1 - q))

    def b_factor(self, a: AffineCoroot) -> RationalQT:
        """t_a^{1/2} (1 - Q t_a^{-1}) / (1 - Q)."""
        q = self.Q(a)
        t = self.t_coroot(a, 2)
        return self.t_coroot(a, 1) * (1 - q / t) / (1 - q)

    def e_factor(self, a: AffineCoroot) -> RationalQT:
        """t_a^{-1/2} (1 - Q t_a) / (1 - Q)."""
        q = self.Q(a)
        t = self.t_coroot(a, 2)
        return self.t_coroot(a, -1) * (1 - q * t) / (1 - q)


def _scalars(D: RootDatum) -> _Scalars:
    s = D.__dict__.get("_scalars")
    if s is None:
        s = _Scalars(D)
        D.__dict__["_scalars"] = s
    return s


def _wall_label(a: AffineCoroot, negative_walls: bool) -> AffineCoroot:
    """Hyperplane label; with negative_walls the hyperplanes through 0 carry negative coroots."""
    return -a if negative_walls and a.level == 0 else a


def _product(S: _Scalars, coroots: Iterable[AffineCoroot], kind: str, negative_walls: bool = False) -> RationalQT:
    out = S.F.one
    fn = S.b_factor if kind == "b" else S.e_factor
    for a in sorted(coroots):
        out = out * fn(_wall_label(a, negative_walls))
    return out


def _mtype(G: AffineGroup, mu, word: WalkType | None) -> WalkType:
    if word is not None:
        if G.from_type(word) != G.m(tuple(mu)) or G.length(G.m(tuple(mu))) != len(word.word):
            raise ValueError("word is not a reduced expression for m_mu")
        return word
    return G.reduced_word(G.m(tuple(mu)))


def _t_half_w(D: RootDatum, w, half: int) -> RationalQT:
    return D.t_w(w, half)


# -- monomial and E-basis expansions ------------------------------------------


def expand_E_monomial(D: RootDatum, mu, word: WalkType | None = None, budget: int | None = None, threads: int = 1) -> Expansion:
    """E_mu in the monomial basis: a sum over all walks of type m_mu from the fundamental alcove."""
    S = _scalars(D)
    G = S.G
    wtype = _mtype(G, mu, word)
    _check_budget(len(wtype.word), budget)
    bs = b_coroots(D, wtype, "reverse")
    out = Expansion("X", D.field)
    for p in enumerate_walks(D, wtype, G.identity, budget=budget, threads=threads):
        c = D.t_w(p.end.finite, 1)
        for k, s in enumerate(p.letter_steps):
            if s.kind == "fold":
                c = c * S.fold(s.gen, bs[k], s.sign < 0)
        out.add(p.end.translation, c)
    return out


def _xe_sum(D: RootDatum, htype: WalkType, start: ExtAffineElement, budget, threads, trace: CoefficientTrace | None = None) -> Expansion:
    """sum over walks of htype from start inside the closed chamber of (-1)^{phi_-} g_h n_h E_varpi."""
    S = _scalars(D)
    G = S.G
    eps = step_signs(G, htype, 0)
    out = Expansion("E", D.field)
    for h in enumerate_walks(D, htype, start, "dominant-closure", budget=budget, threads=threads):
        st = walk_stats(D, h, eps)
        c = S.F.one
        factors = []
        for k, s in enumerate(h.letter_steps, start=1):
            a = s.coroot
            if k in st.phi_o:
                f = S.t_gen(s.gen, eps[k - 1])
            elif k in st.phi_aff:
                f = S.fold(s.gen, a, k in st.psi_aff)
            elif k in st.xi_minus:
                f = S.neg_cross(s.gen, a)
            else:
                f = S.F.one
            factors.append(f)
            c = c * f
        if len(st.phi_minus) % 2:
            c = -c
        nu = st.varpi
        if trace is not None:
            trace.add(walk=h.mask, target=list(nu), factors=factors, sign=(-1) ** len(st.phi_minus), coeff=c)
        out.add(nu, c)
    return out


def expand_X_in_E(D: RootDatum, mu, word: WalkType | None = None, budget: int | None = None, threads: int = 1, trace: CoefficientTrace | None = None) -> Expansion:
    """X^mu as a combination of E_nu: walks of type m_mu^{-1} from A inside the closed dominant chamber."""
    G = affine_group(D)
    mu = tuple(mu)
    htype = inverse_type(G, _mtype(G, mu, word))
    out = _xe_sum(D, htype, G.identity, budget, threads, trace)
    v = D.dominant_data(mu)[2]
    return out.scale(D.t_w(v, -1))


def product_X_E(D: RootDatum, mu, lam, word: WalkType | None = None, budget: int | None = None, threads: int = 1, trace: CoefficientTrace | None = None) -> Expansion:
    """X^mu E_lam: walks of type x^{-mu} from m_lam^{-1} inside the closed dominant chamber."""
    G = affine_group(D)
    xinv = G.x(tuple(-x for x in mu))
    htype = word if word is not None else G.reduced_word(xinv)
    if G.from_type(htype) != xinv:
        raise ValueError("word is not a reduced expression for x^{-mu}")
    start = G.inv(G.m(tuple(lam)))
    return _xe_sum(D, htype, start, budget, threads, trace)


def expand_P_in_E(D: RootDatum, lam) -> Expansion:
    """P_lam = sum over v in W^lam of prod over m_lam^{-1} L(v^{-1}, v_lam^{-1}) of b-factors, times E_{v lam}."""
    lam = tuple(lam)
    D._require_dominant(lam)
    S = _scalars(D)
    G = S.G
    minv = G.inv(G.m(lam))
    vl = D.v_index(lam)
    out = Expansion("E", D.field)
    for v in D.coset_reps(lam):
        sep = G.separating_set(G.finite(D.w_inv(v)), G.finite(D.w_inv(vl)))
        c = _product(S, (G.act_on_affine_coroot(minv, a) for a in sep), "b")
        out.add(D.act(v, lam), c)
    return out


# -- products with symmetric polynomials --------------------------------------


def _c_factors(S: _Scalars, h, eps, bs) -> tuple[list[RationalQT], int]:
    """Step coefficients c_k(h) and the number of negative grey folds."""
    F = S.F
    out = []
    neg_grey = 0
    for k, s in enumerate(h.letter_steps):
        a = s.coroot
        if s.kind == "cross":
            out.append(F.one if s.sign > 0 else S.neg_cross(s.gen, a))
            continue
        if s.color == "black":
            out.append(S.fold(s.gen, bs[k], eps[k] < 0))
            continue
        if s.sign < 0:
            neg_grey += 1
        if a.level == 0:
            out.append(S.t_gen(s.gen, eps[k]))
        elif s.sign < 0:
            out.append(S.fold(s.gen, a, eps[k] < 0))
        else:
            out.append(S.fold(s.gen, a, eps[k] > 0))
    return out, neg_grey


def _two_colored_terms(D: RootDatum, mu, lam, word, budget, threads, negative_walls: bool):
    """Yield (v, h, stats, b_h, c-list, sign) for every two-colored walk."""
    S = _scalars(D)
    G = S.G
    lam = tuple(lam)
    mtype = _mtype(G, mu, word)
    htype = inverse_type(G, mtype)
    bs = b_coroots(D, htype, "forward")
    xw = G.x(tuple(-x for x in D.act(D.w0, lam)))
    eps_cache: dict[int, list[int]] = {}
    b_cache: dict = {}
    for v, h in enumerate_two_colored(D, mu, lam, budget=budget, threads=threads, word=mtype):
        black = h.black
        eps = eps_cache.get(black)
        if eps is None:
            eps = step_signs(G, htype, black)
            eps_cache[black] = eps
        bh = b_cache.get(h.start)
        if bh is None:
            bh = _product(S, G.separating_set(h.start, xw), "b", negative_walls)
            b_cache[h.start] = bh
        cs, neg_grey = _c_factors(S, h, eps, bs)
        yield v, h, bh, cs, (-1) ** neg_grey


def product_E_P(
    D: RootDatum,
    mu,
    lam,
    word: WalkType | None = None,
    budget: int | None = None,
    threads: int = 1,
    trace: CoefficientTrace | None = None,
) -> Expansion:
    """E_mu P_lam in the E-basis via two-colored walks."""
    lam = tuple(lam)
    D._require_dominant(lam)
    G = affine_group(D)
    out = Expansion("E", D.field)
    for v, h, bh, cs, sign in _two_colored_terms(D, mu, lam, word, budget, threads, False):
        c = bh
        for f in cs:
            c = c * f
        if sign < 0:
            c = -c
        nu = G.varpi(h.end)
        if nu is None:
            raise NonMinimalEndpoint("non-minimal endpoint")
        if trace is not None:
            trace.add(v=list(D.w_word(v)), walk=h.mask, grey=h.grey, target=list(nu), b=bh, c=cs, sign=sign, coeff=c)
        out.add(nu, c)
    return out


def _e_coeff(S: _Scalars, wt, end: ExtAffineElement) -> RationalQT:
    G = S.G
    ref = G.mul(G.x(wt), G.finite(S.D.w0))
    return _product(S, G.separating_set(ref, end), "e", negative_walls=True)


def _norm(D: RootDatum, mu) -> RationalQT:
    """t_{w_mu}^{-1/2} W_mu(t)."""
    return D.t_w(D.longest_in_stabilizer(mu), -1) * D.stabilizer_poincare(mu)


def product_P_P(
    D: RootDatum,
    mu,
    lam,
    word: WalkType | None = None,
    budget: int | None = None,
    threads: int = 1,
    trace: CoefficientTrace | None = None,
) -> Expansion:
    """P_mu P_lam in the P-basis via two-colored walks, with e_h converting each E to P."""
    mu, lam = tuple(mu), tuple(lam)
    D._require_dominant(mu)
    D._require_dominant(lam)
    S = _scalars(D)
    out = Expansion("P", D.field)
    for v, h, bh, cs, sign in _two_colored_terms(D, mu, lam, word, budget, threads, True):
        wt = h.end.translation
        eh = _e_coeff(S, wt, h.end)
        c = bh * eh
        for f in cs:
            c = c * f
        if sign < 0:
            c = -c
        target = tuple(-x for x in D.act(D.w0, wt))
        if trace is not None:
            trace.add(v=list(D.w_word(v)), walk=h.mask, grey=h.grey, target=list(target), b=bh, e=eh, c=cs, sign=sign, coeff=c)
        out.add(target, c)
    return out.scale(_norm(D, mu).inverse())


def domP_scalar(D: RootDatum, mu, v) -> RationalQT:
    """Scalar s with 1_0 tau_v tau_{m_mu} 1 = s * 1_0 tau_{m_mu} 1, for v in W^mu with v m_mu > m_mu."""
    mu = tuple(mu)
    D._require_dominant(mu)
    S = _scalars(D)
    G = S.G
    vi = D.w_index(v)
    if vi not in D.coset_reps(mu):
        raise PreconditionError("v is not a minimal coset representative for the stabilizer of mu")
    m = G.m(mu)
    vm = G.mul(G.finite(vi), m)
    if G.length(vm) != G.length(m) + D.w_length(vi):
        raise PreconditionError("requires v m_mu > m_mu")
    minv = G.inv(m)
    return _product(S, G.separating_set(minv, G.mul(minv, G.finite(D.w_inv(vi)))), "e", negative_walls=True)


# -- Pieri rules ---------------------------------------------------------------


def pieri(D: RootDatum, j: int, lam, variant: str = "PP") -> Expansion:
    """E_{omega_j} P_lam (EP) or P_{omega_j} P_lam (PP, PP-compressed) for minuscule omega_j."""
    lam = tuple(lam)
    D._require_dominant(lam)
    if j not in D.minuscule_set():
        raise PreconditionError(f"omega_{j} is not minuscule")
    S = _scalars(D)
    G = S.G
    pinv = G.inv(G.pi(j))
    xw = G.x(tuple(-x for x in D.act(D.w0, lam)))
    if variant in ("EP", "PP"):
        out = Expansion("E" if variant == "EP" else "P", D.field)
        for v in D.coset_reps(lam):
            start = G.inv(G.mul(G.finite(v), G.m(lam)))
            end = G.mul(start, pinv)
            bh = _product(S, G.separating_set(start, xw), "b", variant == "PP")
            if variant == "EP":
                nu = G.varpi(end)
                if nu is None:
                    raise NonMinimalEndpoint("non-minimal endpoint")
                out.add(nu, bh)
            else:
                wt = end.translation
                out.add(tuple(-x for x in D.act(D.w0, wt)), bh * _e_coeff(S, wt, end))
        if variant == "PP":
            out = out.scale(_norm(D, D.omega(j)).inverse())
        return out
    if variant != "PP-compressed":
        raise ValueError(f"unknown Pieri variant {variant!r}")
    out = Expansion("P", D.field)
    reps = set(D.coset_reps(D.omega(j)))
    wj = G.finite(D.longest_in_stabilizer(D.omega(j)))
    for u in range(D.order):
        # every start x^{-w_0 lam} u; those outside the chamber get a vanishing b-factor
        start = G.mul(xw, G.finite(u))
        end = G.mul(start, pinv)
        if end.finite not in reps:
            continue
        bh = _product(S, G.separating_set(start, xw), "b", negative_walls=True)
        if bh.is_zero():
            continue
        wt = end.translation
        ref = G.mul(G.x(wt), G.finite(D.w0))
        eh = _product(S, G.separating_set(ref, G.mul(end, wj)), "e", negative_walls=True)
        out.add(tuple(-x for x in D.act(D.w0, wt)), bh * eh)
    return out


def _conjugate(part: list[int]) -> list[int]:
    return [sum(1 for p in part if p > c) for c in range(part[0] if part else 0)]


def _arm_leg(part: list[int], conj: list[int], i: int, j: int) -> tuple[int, int]:
    return part[i] - j - 1, conj[j] - i - 1


def tableau_pieri(D: RootDatum, j: int, lam) -> Expansion:
    """Macdonald's Pieri rule for P_{(1^j)} P_lam in type A_n, indexed by weights."""
    if D.cartan != tuple(tuple(row) for row in cartan_matrix("A", D.rank)):
        raise PreconditionError("tableau Pieri rule needs a type A datum")
    n = D.rank
    lam = [int(x) for x in lam]
    if len(lam) > n + 1 or any(a < b for a, b in zip(lam, lam[1:])) or (lam and lam[-1] < 0):
        raise PreconditionError("too many parts or not a partition")
    if not 0 <= j <= n + 1:
        raise PreconditionError("j out of range")
    lam = lam + [0] * (n + 1 - len(lam))
    F = D.field
    q, t = F.q(1), F.t(1)
    out = Expansion("P", F)
    lconj = _conjugate(lam)
    for rows in _choose(range(n + 1), j):
        kappa = list(lam)
        for r in rows:
            kappa[r] += 1
        if any(a < b for a, b in zip(kappa, kappa[1:])):
            continue
        kconj = _conjugate(kappa)
        cols = {lam[r] for r in rows}
        rowset = set(rows)
        c = F.one
        for i in range(n + 1):
            if i in rowset:
                continue
            for col in cols:
                if col < lam[i]:
                    al, ll = _arm_leg(lam, lconj, i, col)
                    ak, lk = _arm_leg(kappa, kconj, i, col)
                    c = c * (1 - q ** (al + 1) * t**ll) * (1 - q**ak * t ** (lk + 1))
                    c = c / ((1 - q ** (ak + 1) * t**lk) * (1 - q**al * t ** (ll + 1)))
        out.add(tuple(kappa[i] - kappa[i + 1] for i in range(n)), c)
    return out


def _choose(items, k):
    from itertools import combinations

    return combinations(list(items), k)


# -- specializations ----------------------------------------------------------


_MODES = {"q=0": {"q": 0}, "q=t": {"q": "t"}, "q=t=0": {"q": "t", "t": 0}}


def specialize_expansion(exp: Expansion, mode: str) -> Expansion:
    """Specialize every coefficient; labels are unchanged."""
    try:
        mapping = dict(_MODES[mode])
    except KeyError:
        raise ValueError(f"unknown specialization {mode!r}") from None
    if "t" in mapping.values() or "t" in mapping:
        if exp.field.classes != ("t",):
            raise PreconditionError("q=t needs equal parameters")
    return exp.map_coefficients(lambda c: specialize(c, mapping))


def hall_littlewood_product(D: RootDatum, mu, lam, budget: int | None = None, threads: int = 1) -> tuple[Expansion, int]:
    """P_mu(t) P_lam(t) from positively folded walks of type m_mu; returns (expansion, walk count)."""
    mu, lam = tuple(mu), tuple(lam)
    D._require_dominant(mu)
    D._require_dominant(lam)
    if D.field.classes != ("t",):
        raise PreconditionError("Hall-Littlewood product needs equal parameters")
    G = affine_group(D)
    F = D.field
    t = F.t(1)
    mtype = G.reduced_word(G.m(mu))
    vmu = D.v_index(mu)
    wmu = D.stabilizer_poincare(mu)
    out = Expansion("P", F)
    count = 0
    for v in D.coset_reps(lam):
        start = G.mul(G.x(lam), G.finite(D.w_inv(v)))
        for h in enumerate_walks(D, mtype, start, "dominant-closure", budget=budget, threads=threads):
            folds = [s for s in h.letter_steps if s.kind == "fold"]
            if any(s.sign < 0 for s in folds):
                continue
            count += 1
            f = len(folds)
            f0 = sum(1 for s in folds if s.coroot.level == 0)
            wt = h.end.translation
            half = D.w_length(h.start.finite) + D.w_length(h.end.finite) - f - D.w_length(vmu)
            c = F.t(Fraction(half, 2)) * (1 - t) ** (f - f0) * D.stabilizer_poincare(wt) / wmu
            out.add(wt, c)
    return out, count


# -- identities and renormalization -------------------------------------------


def stabilizer_sum(D: RootDatum, mu) -> tuple[RationalQT, RationalQT]:
    """Both sides of the Poincare-polynomial identity for the stabilizer of a dominant mu."""
    mu = tuple(mu)
    D._require_dominant(mu)
    S = _scalars(D)
    G = S.G
    wmu = D.longest_in_stabilizer(mu)
    lhs = S.F.zero
    for u in D.stabilizer(mu):
        a = _product(S, G.separating_set(G.identity, G.finite(u)), "b")
        b = _product(S, G.separating_set(G.finite(u), G.finite(wmu)), "e")
        lhs = lhs + a * b
    return lhs, _norm(D, mu)


def renormalize_monic(D: RootDatum, exp: Expansion, mu=None) -> Expansion:
    """Switch to the convention where E_nu is monic in X^nu.

    For an E-basis expansion each coefficient picks up t_{v_nu^{-1}}^{1/2}.
    For the monomial expansion of E_mu (basis X) pass mu; the whole
    expansion is divided by t_{v_mu^{-1}}^{1/2}.
    """
    if exp.basis == "E":
        out = Expansion("E", exp.field)
        for w, c in exp.items():
            out.add(w, c * D.t_w(D.v_index(w), 1))
        return out
    if exp.basis == "X" and mu is not None:
        return exp.scale(D.t_w(D.v_index(tuple(mu)), -1))
    raise ValueError("renormalization applies to E-basis expansions or to E_mu given mu")
