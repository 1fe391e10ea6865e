"""Alcove walks: enumeration (plain and two-colored) and per-walk statistics.

A walk of type (pi_j; i_1, ..., i_r) starting at the alcove z first changes
sheet to z pi_j and then takes r steps.  Step k either crosses the wall
v alpha_{i_k}^vee (moving v -> v s_{i_k}) or folds against it (staying at v).
Fold patterns are bit masks: bit k-1 set means step k is a fold.

Signs use the periodic orientation: a crossing is positive when it goes from
the negative to the positive side of its hyperplane, and a fold is positive
when the alcove sits on the positive side.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .affine import AffineGroup, ExtAffineElement, WalkType, affine_group
from .ring import RationalQT
from .rootdata import AffineCoroot, RootDatum

__all__ = [
    "WalkBudgetExceeded",
    "NonMinimalEndpoint",
    "Step",
    "AlcoveWalk",
    "WalkStats",
    "walk_budget",
    "inverse_type",
    "enumerate_walks",
    "enumerate_two_colored",
    "build_walk",
    "walk_stats",
    "step_signs",
    "b_coroots",
    "shift_height",
    "qt_value",
]

DEFAULT_BUDGET = 22


class WalkBudgetExceeded(RuntimeError):
    pass


class NonMinimalEndpoint(ValueError):
    pass


def walk_budget(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("ALCOVE_WALK_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(r: int, budget: int | None):
    if r > walk_budget(budget):
        raise WalkBudgetExceeded("walk budget exceeded")


@dataclass(frozen=True)
class Step:
    """One step of a walk.  Sheet changes carry kind "sheet" and no sign."""

    gen: int
    kind: str
    before: ExtAffineElement
    after: ExtAffineElement
    color: str = "black"
    sign: int = 0
    ascent: bool | None = None
    coroot: AffineCoroot | None = None

    def to_json(self) -> dict:
        out = {"gen": self.gen, "kind": self.kind, "color": self.color, "sign": self.sign}
        if self.coroot is not None:
            out["coroot"] = str(self.coroot)
        return out


@dataclass(frozen=True)
class AlcoveWalk:
    """A walk given by its type, start and fold pattern; steps are derived."""

    type: WalkType
    start: ExtAffineElement
    mask: int
    steps: tuple[Step, ...]
    grey: int = 0

    @property
    def end(self) -> ExtAffineElement:
        return self.steps[-1].after if self.steps else self.start

    @property
    def letter_steps(self) -> tuple[Step, ...]:
        return tuple(s for s in self.steps if s.kind != "sheet")

    @property
    def black(self) -> int:
        return self.mask & ~self.grey

    @property
    def alcoves(self) -> list[ExtAffineElement]:
        return [self.start] + [s.after for s in self.steps]


@dataclass
class WalkStats:
    end: ExtAffineElement
    wt: tuple
    d: int
    i: int
    coroots: list[AffineCoroot]
    phi: set[int]
    phi_minus: set[int]
    phi_asc: set[int]
    phi_o: set[int]
    phi_aff: set[int]
    xi_des: set[int]
    xi_minus: set[int]
    psi: set[int] | None = None
    psi_aff: set[int] | None = None
    _varpi: tuple | None = field(default=None, repr=False)

    @property
    def varpi(self) -> tuple:
        """The weight nu with e(h)^{-1} = m_nu."""
        if self._varpi is None:
            raise NonMinimalEndpoint("non-minimal endpoint")
        return self._varpi

    @property
    def has_varpi(self) -> bool:
        return self._varpi is not None


# -- building single walks ---------------------------------------------------


def build_walk(G: AffineGroup, wtype: WalkType, start: ExtAffineElement, mask: int, grey: int = 0) -> AlcoveWalk:
    steps = []
    v = start
    if wtype.pi:
        nxt = G.mul(v, G.pi(wtype.pi))
        steps.append(Step(wtype.pi, "sheet", v, nxt))
        v = nxt
    for k, i in enumerate(wtype.word):
        b = G.wall(v, i)
        h = b if b.is_positive() else -b
        ascent = b.is_positive()
        cross_sign = G.crossing_sign(v, i)
        color = "grey" if grey >> k & 1 else "black"
        if mask >> k & 1:
            steps.append(Step(i, "fold", v, v, color, -cross_sign, ascent, h))
        else:
            nxt = G.step(v, i)
            steps.append(Step(i, "cross", v, nxt, color, cross_sign, ascent, h))
            v = nxt
    return AlcoveWalk(wtype, start, mask, tuple(steps), grey)


def _end_of(G: AffineGroup, wtype: WalkType, start: ExtAffineElement, mask: int) -> ExtAffineElement:
    v = G.mul(start, G.pi(wtype.pi)) if wtype.pi else start
    for k, i in enumerate(wtype.word):
        if not mask >> k & 1:
            v = G.step(v, i)
    return v


def step_signs(G: AffineGroup, wtype: WalkType, mask: int = 0) -> list[int]:
    """Signs of the letter steps of the walk with this type and fold pattern that ends at 1."""
    e = _end_of(G, wtype, G.identity, mask)
    start = G.inv(e)
    return [s.sign for s in build_walk(G, wtype, start, mask).letter_steps]


def inverse_type(G: AffineGroup, wtype: WalkType) -> WalkType:
    """Reduced word for w^{-1} read off a reduced word of w = pi s_{i_1} ... s_{i_r}.

    w^{-1} = s_{i_r} ... s_{i_1} pi^{-1} = pi^{-1} s_{sigma(i_r)} ... s_{sigma(i_1)}
    with s_{sigma(i)} = pi s_i pi^{-1}.
    """
    p = G.pi(wtype.pi)
    pinv = G.inv(p)
    sigma = {}
    for i in range(G.n + 1):
        conj = G.prod(p, G.s(i), pinv)
        sigma[i] = next(k for k in range(G.n + 1) if G.s(k) == conj)
    return WalkType(G.pi_index(pinv), tuple(sigma[i] for i in reversed(wtype.word)))


# -- enumeration -------------------------------------------------------------


def _dfs(G: AffineGroup, word, pos: int, v, mask: int, free_bits: int, forced: int, dominant: bool, out: list):
    """Depth-first enumeration from step `pos` at alcove v; collects fold masks."""
    r = len(word)
    if pos == r:
        out.append(mask)
        return
    i = word[pos]
    bit = 1 << pos
    if not forced & bit:
        nxt = G.step(v, i)
        if not dominant or G.in_dominant_chamber(nxt):
            _dfs(G, word, pos + 1, nxt, mask, free_bits, forced, dominant, out)
    if (free_bits | forced) & bit:
        _dfs(G, word, pos + 1, v, mask | bit, free_bits, forced, dominant, out)


def _enumerate_masks(G: AffineGroup, wtype: WalkType, start, dominant: bool, free_bits: int, forced: int, threads: int) -> list[int]:
    v = G.mul(start, G.pi(wtype.pi)) if wtype.pi else start
    if dominant and not (G.in_dominant_chamber(start) and G.in_dominant_chamber(v)):
        return []
    word = wtype.word
    r = len(word)
    if threads <= 1 or r < 6:
        out: list[int] = []
        _dfs(G, word, 0, v, 0, free_bits, forced, dominant, out)
        out.sort()
        return out
    # partition by the choices on the first few steps
    depth = min(r, max(1, (threads - 1).bit_length() + 1))
    prefixes: list[tuple[int, ExtAffineElement]] = []
    stack = [(0, v, 0)]
    while stack:
        pos, cur, m = stack.pop()
        if pos == depth:
            prefixes.append((m, cur))
            continue
        bit = 1 << pos
        i = word[pos]
        if not forced & bit:
            nxt = G.step(cur, i)
            if not dominant or G.in_dominant_chamber(nxt):
                stack.append((pos + 1, nxt, m))
        if (free_bits | forced) & bit:
            stack.append((pos + 1, cur, m | bit))

    def run(item):
        m, cur = item
        res: list[int] = []
        _dfs(G, word, depth, cur, m, free_bits, forced, dominant, res)
        return res

    with ThreadPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(run, prefixes))
    out = [m for part in parts for m in part]
    out.sort()
    return out


def enumerate_walks(
    datum: RootDatum,
    wtype: WalkType,
    start: ExtAffineElement | None = None,
    constraint: str = "none",
    budget: int | None = None,
    threads: int = 1,
) -> list[AlcoveWalk]:
    """All walks of the given type from `start`, ordered by fold mask.

    With constraint "dominant-closure" only walks whose every alcove lies in
    the closed dominant chamber are kept (pruned during the search).
    """
    if constraint not in ("none", "dominant-closure"):
        raise ValueError(f"unknown constraint {constraint!r}")
    r = len(wtype.word)
    _check_budget(r, budget)
    G = affine_group(datum)
    start = G.identity if start is None else start
    full = (1 << r) - 1
    masks = _enumerate_masks(G, wtype, start, constraint == "dominant-closure", full, 0, threads)
    return [build_walk(G, wtype, start, m) for m in masks]


def enumerate_two_colored(
    datum: RootDatum,
    mu,
    lam,
    budget: int | None = None,
    threads: int = 1,
    word: WalkType | None = None,
) -> list[tuple[int, AlcoveWalk]]:
    """Pairs (v, h) with v in W^lam and h a two-colored walk of type m_mu^{-1} from (v m_lam)^{-1}.

    Seminal fold patterns are taken in counter order of the walk of type m_mu;
    their folds become black folds at the mirrored positions, and the
    remaining steps may be folded grey.  Only walks inside the closed dominant
    chamber are returned.
    """
    D = datum
    lam = tuple(lam)
    D._require_dominant(lam)
    G = affine_group(D)
    mtype = word if word is not None else G.reduced_word(G.m(tuple(mu)))
    r = len(mtype.word)
    _check_budget(r, budget)
    htype = inverse_type(G, mtype)
    full = (1 << r) - 1
    starts = [(v, G.inv(G.mul(G.finite(v), G.m(lam)))) for v in D.coset_reps(lam)]
    out = []
    for pmask in range(1 << r):
        black = 0
        for k in range(r):
            if pmask >> k & 1:
                black |= 1 << (r - 1 - k)
        for v, start in starts:
            for m in _enumerate_masks(G, htype, start, True, full & ~black, black, threads):
                out.append((v, build_walk(G, htype, start, m, grey=m & ~black)))
    return out


# -- statistics --------------------------------------------------------------


def walk_stats(datum: RootDatum, h: AlcoveWalk, eps: Iterable[int] | None = None) -> WalkStats:
    """Index sets and endpoint data of h; positions k are 1-based over letter steps.

    `eps` supplies the step signs needed by psi and psi_aff.
    """
    G = affine_group(datum)
    steps = h.letter_steps
    phi, phi_minus, phi_asc, phi_o, phi_aff, xi_des, xi_minus = (set() for _ in range(7))
    coroots = []
    for k, s in enumerate(steps, start=1):
        coroots.append(s.coroot)
        if s.kind == "fold":
            phi.add(k)
            if s.sign < 0:
                phi_minus.add(k)
            if s.ascent:
                phi_asc.add(k)
            (phi_o if s.coroot.level == 0 else phi_aff).add(k)
        else:
            if not s.ascent:
                xi_des.add(k)
            if s.sign < 0:
                xi_minus.add(k)
    e = h.end
    psi = psi_aff = None
    if eps is not None:
        eps = list(eps)
        psi = set()
        psi_aff = set()
        for k in phi:
            s = steps[k - 1]
            if (s.ascent and eps[k - 1] == -1) or (not s.ascent and eps[k - 1] == 1):
                psi.add(k)
            if k in phi_aff and ((s.sign < 0 and eps[k - 1] == -1) or (s.sign > 0 and eps[k - 1] == 1)):
                psi_aff.add(k)
    return WalkStats(
        end=e,
        wt=e.translation,
        d=e.finite,
        i=h.start.finite,
        coroots=coroots,
        phi=phi,
        phi_minus=phi_minus,
        phi_asc=phi_asc,
        phi_o=phi_o,
        phi_aff=phi_aff,
        xi_des=xi_des,
        xi_minus=xi_minus,
        psi=psi,
        psi_aff=psi_aff,
        _varpi=G.varpi(e),
    )


def b_coroots(datum: RootDatum, wtype: WalkType, direction: str = "reverse") -> list[AffineCoroot]:
    """Hyperplane labels b_1, ..., b_r attached to a reduced type.

    reverse: b_k = s_{i_r} ... s_{i_{k+1}} alpha_{i_k}.
    forward: b_k = pi s_{i_1} ... s_{i_{k-1}} alpha_{i_k}, the walls crossed in
    order by the unfolded walk of this type from 1.
    """
    G = affine_group(datum)
    word = wtype.word
    if direction == "forward":
        out = []
        v = G.pi(wtype.pi)
        for i in word:
            out.append(G.wall(v, i))
            v = G.step(v, i)
        return out
    if direction != "reverse":
        raise ValueError(f"unknown direction {direction!r}")
    out = [None] * len(word)
    v = G.identity
    for k in range(len(word) - 1, -1, -1):
        out[k] = G.act_on_affine_coroot(v, G.simple_coroot(word[k]))
        v = G.mul(v, G.s(word[k]))
    return out


def shift_height(datum: RootDatum, a: AffineCoroot) -> tuple[Fraction, dict[str, Fraction]]:
    """(shf(a), hgt exponents) so that q^{shf(a)} t^{hgt(a)} = q^{-j} prod t_alpha^{<alpha, beta^vee>/2}."""
    exps = datum.height_exponent(a.finite)
    return Fraction(-a.level), {c: Fraction(v, 2) for c, v in exps.items()}


def qt_value(datum: RootDatum, a: AffineCoroot) -> RationalQT:
    """q^{shf(a)} t^{hgt(a)} as a coefficient."""
    F = datum.field
    q, t = shift_height(datum, a)
    return F.monomial(F.exponent(q=q, t=t))

