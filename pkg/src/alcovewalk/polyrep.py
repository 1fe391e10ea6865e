"""Brute-force oracle: the polynomial representation K[X]1.

Nothing here enumerates alcove walks.  Demazure-Lusztig operators T_i act on
Laurent polynomials in X by divided differences, the Y-operators are words
in the T_i, nonsymmetric polynomials E_mu are built by applying intertwiners
one letter at a time, and re-expansion into the E- or P-basis peels off
leading terms.  The walk formulas are tested against this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .affine import AffineGroup, ExtAffineElement, affine_group
from .ring import RationalQT
from .rootdata import AffineCoroot, PreconditionError, RootDatum, _is_pos

__all__ = ["XPolynomial", "PolyRep", "polyrep", "ReexpansionError"]


class ReexpansionError(RuntimeError):
    """Peeling leading terms did not terminate: the basis generation is wrong."""


class XPolynomial:
    """Finite sum of X^mu 1 with coefficients in the datum's field."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms: Mapping | None = None):
        self.field = field
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def monomial(cls, field, mu, coeff=None) -> "XPolynomial":
        return cls(field, {tuple(mu): coeff if coeff is not None else field.one})

    def copy(self):
        return XPolynomial(self.field, dict(self.terms))

    def __add__(self, other: "XPolynomial") -> "XPolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            out[k] = v if w is None else w + v
        return XPolynomial(self.field, out)

    def __sub__(self, other):
        return self + other.scale(self.field.const(-1))

    def scale(self, c: RationalQT) -> "XPolynomial":
        if c.is_zero():
            return XPolynomial(self.field)
        return XPolynomial(self.field, {k: v * c for k, v in self.terms.items()})

    def shift(self, mu) -> "XPolynomial":
        """Multiply by X^mu."""
        return XPolynomial(self.field, {tuple(a + b for a, b in zip(k, mu)): v for k, v in self.terms.items()})

    def __mul__(self, other: "XPolynomial") -> "XPolynomial":
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                p = v1 * v2
                w = out.get(k)
                out[k] = p if w is None else w + p
        return XPolynomial(self.field, out)

    def coeff(self, mu) -> RationalQT:
        return self.terms.get(tuple(mu), self.field.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, XPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        items = sorted(self.terms.items())
        return " + ".join(f"({v})X^{k}" for k, v in items) or "0"


class PolyRep:
    """Operators of the double affine Hecke algebra on K[X]1 for one datum."""

    def __init__(self, datum: RootDatum):
        self.D = datum
        self.G: AffineGroup = affine_group(datum)
        self.F = datum.field
        F = self.F
        self.n = datum.rank
        self._half = [datum.t_gen(i, 1) for i in range(self.n + 1)]
        self._halfinv = [datum.t_gen(i, -1) for i in range(self.n + 1)]
        self._diff = [a - b for a, b in zip(self._half, self._halfinv)]
        self._phi_word = datum.w_word(self.G.s(0).finite)
        self._E: dict = {}
        self._P: dict = {}
        self._one = XPolynomial.monomial(F, datum.zero)

    def one(self) -> XPolynomial:
        return self._one

    def X(self, mu, coeff=None) -> XPolynomial:
        return XPolynomial.monomial(self.F, mu, coeff)

    # -- Demazure-Lusztig operators --------------------------------------

    def _pair0(self, mu) -> int:
        """<mu, alpha_0^vee> = -<mu, phi^vee>."""
        return -self.D.pairing(mu, self.D.phi_coroot)

    def _root_step(self, i: int, mu, k: int):
        """X^{mu + k alpha_i} as (weight, q-power)."""
        if i == 0:
            phi = self.D.phi
            return tuple(a - k * b for a, b in zip(mu, phi)), k
        a = self.D.simple_roots[i - 1]
        return tuple(x + k * y for x, y in zip(mu, a)), 0

    def apply_Ti(self, i: int, f: XPolynomial) -> XPolynomial:
        """T_i f for i in 0..n."""
        F = self.F
        half, diff = self._half[i], self._diff[i]
        out: dict = {}

        def put(mu, qk, c):
            if qk:
                c = c * F.q(qk)
            w = out.get(mu)
            out[mu] = c if w is None else w + c

        for mu, c in f.terms.items():
            m = self._pair0(mu) if i == 0 else mu[i - 1]
            # s_i mu = mu - m alpha_i
            smu, sq = self._root_step(i, mu, -m)
            put(smu, sq, c * half)
            if m > 0:
                cd = c * diff
                for k in range(1, m + 1):
                    nu, qk = self._root_step(i, mu, -k)
                    put(nu, qk, -cd)
            elif m < 0:
                cd = c * diff
                for k in range(0, -m):
                    nu, qk = self._root_step(i, mu, k)
                    put(nu, qk, cd)
        return XPolynomial(F, out)

    def apply_Ti_inv(self, i: int, f: XPolynomial) -> XPolynomial:
        """T_i^{-1} = T_i - (t_i^{1/2} - t_i^{-1/2})."""
        return self.apply_Ti(i, f) - f.scale(self._diff[i])

    def apply_word(self, word: Iterable[int], f: XPolynomial, inverse: bool = False) -> XPolynomial:
        """T_{i_1} ... T_{i_r} f (rightmost first), or its inverse T_{i_r}^{-1} ... T_{i_1}^{-1} f."""
        word = tuple(word)
        if inverse:
            for i in word:
                f = self.apply_Ti_inv(i, f)
        else:
            for i in reversed(word):
                f = self.apply_Ti(i, f)
        return f

    def apply_Tw(self, w, f: XPolynomial) -> XPolynomial:
        """T_w for w in W_0."""
        return self.apply_word(self.D.w_word(self.D.w_index(w)), f)

    def apply_pi(self, j: int, f: XPolynomial) -> XPolynomial:
        """pi_j^vee = X^{omega_j} T_{v_{omega_j}^{-1}}."""
        if j == 0:
            return f
        if j not in self.D.minuscule_set():
            raise PreconditionError(f"omega_{j} is not minuscule")
        om = self.D.omega(j)
        vinv = self.D.w_inv(self.D.v_index(om))
        return self.apply_Tw(vinv, f).shift(om)

    def apply_pi_inv(self, j: int, f: XPolynomial) -> XPolynomial:
        if j == 0:
            return f
        om = self.D.omega(j)
        vinv = self.D.w_inv(self.D.v_index(om))
        neg = tuple(-x for x in om)
        return self.apply_word(self.D.w_word(vinv), f.shift(neg), inverse=True)

    def apply_T0_vee(self, f: XPolynomial, inverse: bool = False) -> XPolynomial:
        """T_0^vee = (X^phi T_{s_phi})^{-1}."""
        phi = self.D.phi
        if inverse:
            return self.apply_word(self._phi_word, f).shift(phi)
        neg = tuple(-x for x in phi)
        return self.apply_word(self._phi_word, f.shift(neg), inverse=True)

    def apply_Ti_vee(self, i: int, f: XPolynomial) -> XPolynomial:
        return self.apply_T0_vee(f) if i == 0 else self.apply_Ti(i, f)

    # -- Y operators ------------------------------------------------------

    def _w_act_root(self, lam, u, root, k):
        """(u y^lam)(root + k delta) for W = W_0 x| Y, in 'u y^lam' form."""
        D = self.D
        k2 = k - D.pairing(root, lam)
        return D.act(u, root), k2

    def _y_word(self, lam) -> tuple[int, ...]:
        """Reduced word s_{i_1}...s_{i_r} of y^lam in W (lam in the coroot lattice)."""
        D = self.D
        n = self.n
        phi = D.phi
        neg_phi_cv = tuple(-c for c in D.phi_coroot)
        s_phi = self.G.s(0).finite
        simple = [(tuple(-x for x in phi), 1)] + [(D.simple_roots[i], 0) for i in range(n)]
        u, cur = 0, tuple(lam)
        letters = []
        while True:
            for i in range(n + 1):
                root, k = simple[i]
                r, k2 = self._w_act_root(cur, u, root, k)
                if k2 < 0 or (k2 == 0 and not _is_pos(D.to_root_coords(r))):
                    letters.append(i)
                    # (u y^lam) s_i
                    if i == 0:
                        # s_0 = s_phi y^{-phi^vee}
                        cur = tuple(a + b for a, b in zip(D.act_coroot(s_phi, cur), neg_phi_cv))
                        u = D.w_mul(u, s_phi)
                    else:
                        si = D.s(i)
                        cur = D.act_coroot(si, cur)
                        u = D.w_mul(u, si)
                    break
            else:
                break
        if u != 0 or any(cur):
            raise PreconditionError("Y is only available on the coroot lattice")
        return tuple(reversed(letters))

    def apply_Y(self, lam, f: XPolynomial, level: int = 0) -> XPolynomial:
        """Y^{lam + level d} f for lam in the coroot lattice (simple-coroot coordinates)."""
        D = self.D
        lam = tuple(int(x) for x in lam)
        two_rho = D.rho_coroot2
        N = 0
        while not all(D.pairing(D.simple_roots[i], tuple(a + N * b for a, b in zip(lam, two_rho))) >= 0 for i in range(self.n)):
            N += 1
        dom = tuple(a + N * b for a, b in zip(lam, two_rho))
        base = tuple(N * b for b in two_rho)
        if N:
            f = self.apply_word(self._y_word(base), f, inverse=True)
        f = self.apply_word(self._y_word(dom), f)
        if level:
            f = f.scale(self.F.q(-level))
        return f

    def y_eigenvalue(self, a: AffineCoroot) -> RationalQT:
        """Scalar by which Y^a acts on 1: q^{-j} prod t_alpha^{<alpha, beta^vee>/2}."""
        F = self.F
        exp = dict(self.D.height_exponent(a.finite))
        t = {c: Fraction(v, 2) for c, v in exp.items()}
        return F.monomial(F.exponent(q=-a.level, t=t))

    # -- intertwiners and E ----------------------------------------------

    def _tau(self, i: int, f: XPolynomial, w: ExtAffineElement) -> XPolynomial:
        """tau_i^vee on f = tau_w^vee 1, using the Y-eigenvalue of f."""
        G = self.G
        lam = self.y_eigenvalue(G.act_on_affine_coroot(G.inv(w), -G.simple_coroot(i)))
        c = (self._halfinv[i] - self._half[i]) / (1 - lam)
        return self.apply_Ti_vee(i, f) + f.scale(c)

    def oracle_E(self, mu) -> XPolynomial:
        """E_mu 1 = tau_{m_mu}^vee 1, applied letter by letter from the right."""
        mu = tuple(mu)
        r = self._E.get(mu)
        if r is not None:
            return r
        G = self.G
        wt = G.reduced_word(G.m(mu))
        f = self._one
        w = G.identity
        for i in reversed(wt.word):
            f = self._tau(i, f, w)
            w = G.mul(G.s(i), w)
        f = self.apply_pi(wt.pi, f)
        self._E[mu] = f
        return f

    def E_eigenvalue(self, mu, lam, level: int = 0) -> RationalQT:
        """Y^{lam+level d} E_mu = (this) E_mu, from Y^lam tau_w 1 = tau_w Y^{w^{-1} lam} 1."""
        G = self.G
        a = G.act_on_affine_coroot(G.inv(G.m(tuple(mu))), AffineCoroot(tuple(lam), level))
        return self.y_eigenvalue(a)

    # -- symmetric side ---------------------------------------------------

    def apply_symmetrizer(self, f: XPolynomial) -> XPolynomial:
        """1_0 f = sum_w t_{w_0 w}^{-1/2} T_w f."""
        D = self.D
        out = XPolynomial(self.F)
        for k in range(D.order):
            c = D.t_w(D.w_mul(D.w0, k), -1)
            out = out + self.apply_Tw(k, f).scale(c)
        return out

    def oracle_P(self, lam) -> XPolynomial:
        """P_lam: the symmetrization of E_lam, scaled so X^lam has coefficient 1."""
        lam = tuple(lam)
        if not self.D.is_dominant(lam):
            raise PreconditionError("requires dominant weight")
        r = self._P.get(lam)
        if r is not None:
            return r
        f = self.apply_symmetrizer(self.oracle_E(lam))
        c = f.coeff(lam)
        f = f.scale(c.inverse())
        self._P[lam] = f
        return f

    def is_symmetric(self, f: XPolynomial) -> bool:
        D = self.D
        for i in range(self.n):
            for mu, c in f.terms.items():
                if f.coeff(D.reflect(i, mu)) != c:
                    return False
        return True

    # -- re-expansion -----------------------------------------------------

    def _e_key(self, nu):
        D = self.D
        plus = D._dominant_data(nu)[0]
        return (D.pairing(plus, D.rho_coroot2), plus, -D.w_length(D.v_index(nu)), nu)

    def _p_key(self, nu):
        D = self.D
        return (D.pairing(nu, D.rho_coroot2), nu)

    def reexpand(self, f: XPolynomial, basis: str = "E") -> dict:
        """Coefficients {nu: c} with f = sum c * E_nu (or P_nu)."""
        if basis not in ("E", "P"):
            raise ValueError("basis must be 'E' or 'P'")
        if basis == "P":
            if not self.is_symmetric(f):
                raise PreconditionError("P-basis expansion needs a symmetric polynomial")
            pool = {k: v for k, v in f.terms.items() if self.D.is_dominant(k)}
            rest = XPolynomial(self.F, pool)
            key, elem = self._p_key, self._p_restricted
        else:
            rest = f.copy()
            key, elem = self._e_key, self.oracle_E
        out: dict = {}
        steps = 0
        limit = 10 * (len(f.terms) + 1) ** 2 + 1000
        while not rest.is_zero():
            nu = max(rest.terms, key=key)
            b = elem(nu)
            lead = b.coeff(nu)
            c = rest.terms[nu] / lead
            out[nu] = out.get(nu, self.F.zero) + c
            rest = rest - b.scale(c)
            if nu in rest.terms:
                raise ReexpansionError(f"leading term X^{nu} did not cancel")
            steps += 1
            if steps > limit:
                raise ReexpansionError("re-expansion did not terminate")
        out = {k: v for k, v in out.items() if not v.is_zero()}
        # verify by reconstruction
        total = XPolynomial(self.F)
        for nu, c in out.items():
            total = total + (self.oracle_E(nu) if basis == "E" else self.oracle_P(nu)).scale(c)
        if total != f:
            raise ReexpansionError("reconstruction does not match")
        return out

    def _p_restricted(self, nu) -> XPolynomial:
        P = self.oracle_P(nu)
        return XPolynomial(self.F, {k: v for k, v in P.terms.items() if self.D.is_dominant(k)})


def polyrep(datum: RootDatum) -> PolyRep:
    """The (cached) oracle attached to a datum."""
    r = datum.__dict__.get("_polyrep")
    if r is None:
        r = PolyRep(datum)
        datum.__dict__["_polyrep"] = r
    return r
