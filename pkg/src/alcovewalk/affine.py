"""The extended affine Weyl group W^vee = X x| W_0 and the alcove picture.

An element x^mu u is stored as its translation mu (a weight tuple) and the
index of u in the datum's Weyl group table.  The same data names the alcove
(x^mu u)A, where A is the fundamental alcove
{x : <x, alpha_i^vee> > 0, <x, phi^vee> < 1}.

Affine coroots b = beta^vee + j d are read as affine functions on weight
space, b(x) = <x, beta^vee> + j; the positive ones are positive on A.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .rootdata import AffineCoroot, FiniteWeyl, RootDatum, _is_pos

__all__ = [
    "ExtAffineElement",
    "WalkType",
    "AffineGroup",
    "affine_group",
]


@dataclass(frozen=True)
class ExtAffineElement:
    """x^translation * w, with w given by its index in the Weyl group table."""

    translation: tuple
    finite: int

    def __iter__(self):
        yield self.translation
        yield self.finite


Alcove = ExtAffineElement


@dataclass(frozen=True)
class WalkType:
    """Type of an alcove walk: optional sheet change pi_j (j=0 means none) then letters."""

    pi: int
    word: tuple[int, ...]

    def __len__(self):
        return len(self.word)

    def __str__(self):
        letters = ",".join(str(i) for i in self.word)
        return f"(pi{self.pi}; {letters})" if self.pi else f"({letters})"


class AffineGroup:
    """Arithmetic in W^vee for a fixed root datum."""

    def __init__(self, datum: RootDatum):
        self.D = datum
        n = datum.rank
        self.n = n
        self.identity = ExtAffineElement(datum.zero, 0)
        phi_refl = self._reflection_index(datum.phi)
        self._gens = [ExtAffineElement(datum.phi, phi_refl)] + [ExtAffineElement(datum.zero, datum.s(i)) for i in range(1, n + 1)]
        self._simple = [AffineCoroot(tuple(-c for c in datum.phi_coroot), 1)] + [AffineCoroot(c, 0) for c in datum.simple_coroots]
        self._mul_cache: dict = {}
        self._pis = {0: self.identity}
        for j in sorted(datum.minuscule_set()):
            self._pis[j] = self.m(datum.omega(j))
        self._pi_of = {v: k for k, v in self._pis.items()}

    def _reflection_index(self, root) -> int:
        D = self.D
        cv = D.coroot_of[tuple(root)]
        images = [tuple(a - D.pairing(w, cv) * b for a, b in zip(w, root)) for w in (D.omega(i + 1) for i in range(D.rank))]
        for k in range(D.order):
            if all(D.act(k, D.omega(i + 1)) == images[i] for i in range(D.rank)):
                return k
        raise AssertionError("reflection not found")

    # -- group law --------------------------------------------------------

    def mul(self, a: ExtAffineElement, b: ExtAffineElement) -> ExtAffineElement:
        D = self.D
        mu, u = a
        nu, v = b
        shifted = D.act(u, nu)
        return ExtAffineElement(tuple(x + y for x, y in zip(mu, shifted)), D.w_mul(u, v))

    def inv(self, a: ExtAffineElement) -> ExtAffineElement:
        D = self.D
        mu, u = a
        ui = D.w_inv(u)
        return ExtAffineElement(tuple(-x for x in D.act(ui, mu)), ui)

    def prod(self, *elems) -> ExtAffineElement:
        out = self.identity
        for e in elems:
            out = self.mul(out, e)
        return out

    def x(self, mu) -> ExtAffineElement:
        return ExtAffineElement(tuple(mu), 0)

    def finite(self, w) -> ExtAffineElement:
        return ExtAffineElement(self.D.zero, self.D.w_index(w))

    def s(self, i: int) -> ExtAffineElement:
        """s_i^vee for i in 0..n."""
        return self._gens[i]

    def simple_coroot(self, i: int) -> AffineCoroot:
        """alpha_i^vee for i in 0..n, with alpha_0^vee = -phi^vee + d."""
        return self._simple[i]

    def pi(self, j: int) -> ExtAffineElement:
        """pi_j^vee = x^{omega_j} v_{omega_j}^{-1}; j = 0 is the identity."""
        try:
            return self._pis[j]
        except KeyError:
            raise ValueError(f"omega_{j} is not minuscule") from None

    @property
    def pi_indices(self) -> list[int]:
        return sorted(self._pis)

    def pi_index(self, e: ExtAffineElement) -> int:
        return self._pi_of[e]

    def m(self, mu) -> ExtAffineElement:
        """m_mu = x^mu v_mu^{-1}, the shortest element of x^mu W_0."""
        D = self.D
        v = D.v_index(mu)
        return ExtAffineElement(tuple(mu), D.w_inv(v))

    def from_type(self, wt: WalkType) -> ExtAffineElement:
        out = self.pi(wt.pi)
        for i in wt.word:
            out = self.mul(out, self._gens[i])
        return out

    def step(self, v: ExtAffineElement, i: int) -> ExtAffineElement:
        """v s_i^vee (cached; this is the inner loop of every walk)."""
        key = (v, i)
        r = self._mul_cache.get(key)
        if r is None:
            r = self.mul(v, self._gens[i])
            if len(self._mul_cache) < 2_000_000:
                self._mul_cache[key] = r
        return r

    # -- action on affine coroots ----------------------------------------

    def act_on_affine_coroot(self, w: ExtAffineElement, a: AffineCoroot) -> AffineCoroot:
        D = self.D
        mu, u = w
        c = D.act_coroot(u, a.finite)
        return AffineCoroot(c, a.level - D.pairing(mu, c))

    def wall(self, v: ExtAffineElement, i: int) -> AffineCoroot:
        """v alpha_i^vee: the wall of vA crossed by the step v -> v s_i (vA on its + side)."""
        return self.act_on_affine_coroot(v, self._simple[i])

    # -- length and inversion sets ---------------------------------------

    def inversion_set(self, w: ExtAffineElement) -> frozenset[AffineCoroot]:
        """L(w) = {b in S_+ : w^{-1} b in S_-}."""
        D = self.D
        mu, u = w
        ui = D.w_inv(u)
        out = []
        for c in D.positive_coroots:
            m = D.pairing(mu, c)
            back_neg = not _is_pos(D.act_coroot(ui, c))
            # b = c + j d with j >= 0
            top = -m if back_neg else -m - 1
            for j in range(0, top + 1):
                out.append(AffineCoroot(c, j))
            # b = -c + j d with j >= 1
            top = m - 1 if back_neg else m
            neg = tuple(-x for x in c)
            for j in range(1, top + 1):
                out.append(AffineCoroot(neg, j))
        return frozenset(out)

    def length(self, w: ExtAffineElement) -> int:
        """l(w) = |L(w)|, counted without building the set."""
        D = self.D
        mu, u = w
        ui = D.w_inv(u)
        total = 0
        for c in D.positive_coroots:
            m = D.pairing(mu, c)
            if _is_pos(D.act_coroot(ui, c)):
                total += max(0, -m) + max(0, m)
            else:
                total += max(0, 1 - m) + max(0, m - 1)
        return total

    def separating_set(self, v: ExtAffineElement, w: ExtAffineElement) -> frozenset[AffineCoroot]:
        """L(v, w): labels of the hyperplanes separating vA and wA."""
        return self.inversion_set(v) ^ self.inversion_set(w)

    def is_descent(self, w: ExtAffineElement, i: int) -> bool:
        """True iff l(w s_i) < l(w)."""
        return not self.wall(w, i).is_positive()

    def reduced_word(self, w: ExtAffineElement) -> WalkType:
        """w = pi_j s_{i_1} ... s_{i_r} with r = l(w); the lexicographically least such word.

        Stripping right descents finds pi_j; the word of u = pi_j^{-1} w is then
        built left to right by taking the least left descent each time (a right
        descent of u^{-1}).
        """
        cur = w
        while True:
            i = next((i for i in range(self.n + 1) if self.is_descent(cur, i)), None)
            if i is None:
                break
            cur = self.step(cur, i)
        if cur not in self._pi_of:
            raise AssertionError(f"length-zero residue {cur} is not in Pi")
        j = self._pi_of[cur]
        cur = self.inv(self.mul(self.inv(cur), w))
        letters = []
        while True:
            i = next((i for i in range(self.n + 1) if self.is_descent(cur, i)), None)
            if i is None:
                break
            letters.append(i)
            cur = self.step(cur, i)
        return WalkType(j, tuple(letters))

    # -- geometry ---------------------------------------------------------

    def crossing_sign(self, v: ExtAffineElement, i: int) -> int:
        """+1 iff v -> v s_i crosses its wall from the negative to the positive side."""
        b = self.wall(v, i)
        return 1 if not _is_pos(b.finite) else -1

    def in_dominant_chamber(self, v: ExtAffineElement) -> bool:
        """Barycenter test <mu + u p0, alpha_i^vee> > 0 for all i, done in integers."""
        D = self.D
        mu, u = v
        ui = D.w_inv(u)
        for i in range(self.n):
            if mu[i] > 0:
                continue
            if mu[i] < 0:
                return False
            # <u p0, alpha_i^vee> has the sign of u^{-1} alpha_i^vee and modulus < 1
            if not _is_pos(D.act_coroot(ui, D.simple_coroots[i])):
                return False
        return True

    @cached_property
    def base_point(self) -> tuple[Fraction, ...]:
        """p0 with <p0, alpha_i^vee> = 1/(h+1)."""
        eps = Fraction(1, self.D.coxeter_number + 1)
        return tuple(eps for _ in range(self.n))

    def barycenter(self, v: ExtAffineElement) -> tuple[Fraction, ...]:
        D = self.D
        mu, u = v
        # u acts linearly; p0 = eps * rho in fundamental weights
        up = D.act(u, (1,) * self.n)
        eps = self.base_point[0]
        return tuple(Fraction(m) + eps * x for m, x in zip(mu, up))

    def sheet(self, v: ExtAffineElement) -> int:
        """Index j of the sheet pi_j A^+ containing vA."""
        return self.reduced_word(v).pi

    # -- helpers used by the formulas ------------------------------------

    def translation_part(self, e: ExtAffineElement):
        return e.translation

    def is_min_coset_inverse(self, e: ExtAffineElement) -> bool:
        """True iff e^{-1} = m_nu for nu = -u^{-1} lambda, where e = x^lambda u."""
        D = self.D
        lam, u = e
        nu = tuple(-x for x in D.act(D.w_inv(u), lam))
        return D.v_index(nu) == u

    def varpi(self, e: ExtAffineElement):
        """The weight nu with e^{-1} = m_nu, or None when e^{-1} is not minimal in its coset."""
        D = self.D
        lam, u = e
        nu = tuple(-x for x in D.act(D.w_inv(u), lam))
        if D.v_index(nu) != u:
            return None
        return nu

    def format(self, e: ExtAffineElement) -> str:
        D = self.D
        mu, u = e
        word = D.w_word(u)
        parts = []
        if any(mu):
            parts.append("x^(" + ",".join(str(x) for x in mu) + ")")
        if word:
            parts.append("".join(f"s{i}" for i in word))
        return "".join(parts) or "1"

    def finite_elem(self, e: ExtAffineElement) -> FiniteWeyl:
        return self.D.w_elem(e.finite)


def affine_group(datum: RootDatum) -> AffineGroup:
    """The (cached) affine group attached to a datum."""
    g = datum.__dict__.get("_affine_group")
    if g is None:
        g = AffineGroup(datum)
        datum.__dict__["_affine_group"] = g
    return g
