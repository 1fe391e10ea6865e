"""Reduced root data of finite type and their Weyl groups.

Weights are integer tuples in the fundamental-weight basis.  Coroots (and
coweights) are tuples in the simple-coroot basis, possibly with rational
entries for coweights.  The Cartan matrix is stored as
``cartan[i][j] = <alpha_i, alpha_j^vee>``, so row i of the matrix is the
simple root alpha_i written in fundamental weights.

Indices 1..n name the simple reflections as in the usual notation; internal
lists are 0-based.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .ring import CoeffField, RationalQT

__all__ = [
    "RootDatum",
    "FiniteWeyl",
    "AffineCoroot",
    "cartan_matrix",
    "datum_from_type",
    "datum_from_json",
    "PreconditionError",
]

Weight = tuple  # integer coordinates in the fundamental-weight basis
_MAX_WEYL = 60000


class PreconditionError(ValueError):
    """An input violates an operation's stated precondition."""


@dataclass(frozen=True)
class FiniteWeyl:
    """Element of W_0, held by its lexicographically least reduced word (1-based letters)."""

    word: tuple[int, ...] = ()

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return "1" if not self.word else "".join(f"s{i}" for i in self.word)


@dataclass(frozen=True, order=True)
class AffineCoroot:
    """beta^vee + j d, with beta^vee in simple-coroot coordinates."""

    finite: tuple[int, ...]
    level: int = 0

    def is_positive(self) -> bool:
        if _is_pos(self.finite):
            return self.level >= 0
        return self.level >= 1

    def __neg__(self):
        return AffineCoroot(tuple(-c for c in self.finite), -self.level)

    def __str__(self):
        fin = _coroot_str(self.finite)
        if self.level == 0:
            return fin
        sign = "+" if self.level > 0 else "-"
        j = abs(self.level)
        return f"{fin}{sign}{'' if j == 1 else j}d"


def _is_pos(c) -> bool:
    return any(x > 0 for x in c) and all(x >= 0 for x in c)


def _coroot_str(c) -> str:
    if not any(c):
        return "0"
    parts = []
    for i, x in enumerate(c, 1):
        if x == 0:
            continue
        mag = "" if abs(x) == 1 else str(abs(x))
        sign = "-" if x < 0 else ("+" if parts else "")
        parts.append(f"{sign}{mag}a{i}v")
    return "".join(parts)


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    """Cartan matrix with entries <alpha_i, alpha_j^vee> (Bourbaki numbering)."""
    kind = kind.upper()
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if kind in "ABCD" and n >= 1:
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
    if kind == "A" and n >= 1:
        return a
    if kind == "B" and n >= 2:
        # alpha_n short, so alpha_n^vee is long
        a[n - 2][n - 1], a[n - 1][n - 2] = -2, -1
        return a
    if kind == "C" and n >= 2:
        a[n - 2][n - 1], a[n - 1][n - 2] = -1, -2
        return a
    if kind == "D" and n >= 4:
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if kind == "G" and n == 2:
        # alpha_1 short
        return [[2, -1], [-3, 2]]
    if kind == "F" and n == 4:
        return [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    raise ValueError(f"unknown finite type {kind}{n}")


def _mat_vec(m, v):
    return tuple(sum(r[k] * v[k] for k in range(len(v))) for r in m)


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _transpose(a):
    return tuple(zip(*a))


def _inverse(a) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


class RootDatum:
    """Root datum with weight lattice P and its finite Weyl group.

    ``params`` is "equal" (one parameter t) or "per-class" (one t per
    conjugacy class of simple reflections, affine one included).
    """

    def __init__(self, cartan: Sequence[Sequence[int]], params: str = "equal", lattice: str = "weight", name: str | None = None):
        if lattice != "weight":
            raise ValueError("only the weight lattice is supported")
        if params not in ("equal", "per-class"):
            raise ValueError("params must be 'equal' or 'per-class'")
        a = tuple(tuple(int(x) for x in row) for row in cartan)
        n = len(a)
        if n == 0 or any(len(row) != n for row in a):
            raise ValueError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError("Cartan matrix must have 2 on the diagonal")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise ValueError("not a generalized Cartan matrix")
        self.cartan = a
        self.rank = n
        self.params = params
        self.lattice = lattice
        self.name = name or "cartan"
        self._build_roots()
        self._build_weyl()
        self._build_classes()
        inv = _inverse(a)
        self._inv_cartan = inv
        self.e = math.lcm(*(x.denominator for row in inv for x in row))
        self.field = CoeffField(2 * self.e, self.classes)

    # -- construction -----------------------------------------------------

    def _build_roots(self):
        n, a = self.rank, self.cartan
        simple = [(a[i], tuple(int(i == k) for k in range(n))) for i in range(n)]
        seen = {}
        queue = deque(simple)
        for r, c in simple:
            seen[r] = c
        while queue:
            r, c = queue.popleft()
            for j in range(n):
                r2 = self.reflect(j, r)
                pair = sum(a[j][k] * c[k] for k in range(n))
                c2 = tuple(c[k] - pair * (k == j) for k in range(n))
                if r2 not in seen:
                    seen[r2] = c2
                    queue.append((r2, c2))
            if len(seen) > 400:
                raise ValueError("Cartan matrix is not of finite type")
        pos = [(r, c) for r, c in seen.items() if _is_pos(c)]
        pos.sort(key=lambda rc: (sum(rc[1]), tuple(-x for x in rc[1])))
        self.positive_roots = tuple(r for r, _ in pos)
        self.positive_coroots = tuple(c for _, c in pos)
        self.coroot_of = dict(seen)
        self.root_of = {c: r for r, c in seen.items()}
        # highest coroot and its root; the root is the highest short root
        top = max(pos, key=lambda rc: sum(rc[1]))
        self.phi, self.phi_coroot = top
        self.simple_roots = tuple(a[i] for i in range(n))
        self.simple_coroots = tuple(tuple(int(i == k) for k in range(n)) for i in range(n))

    def _build_weyl(self):
        n = self.rank
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        gens = []
        for i in range(n):
            # column j is the image of omega_j
            cols = [self.reflect(i, tuple(int(k == j) for k in range(n))) for j in range(n)]
            gens.append(_transpose(cols))
        self._gen_mats = gens
        mats = [ident]
        index = {ident: 0}
        lengths = [0]
        words = [()]
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(n):
                    m = _mat_mul(mats[w], gens[i])
                    if m in index:
                        k = index[m]
                        if lengths[k] == lengths[w] + 1:
                            cand = words[w] + (i + 1,)
                            if cand < words[k]:
                                words[k] = cand
                        continue
                    index[m] = len(mats)
                    mats.append(m)
                    lengths.append(lengths[w] + 1)
                    words.append(words[w] + (i + 1,))
                    nxt.append(index[m])
                    if len(mats) > _MAX_WEYL:
                        raise ValueError("Weyl group too large")
            frontier = nxt
        self._mats = mats
        self._index = index
        self._lengths = lengths
        self._words = words
        self._word_index = {w: k for k, w in enumerate(words)}
        self._inv = [index[_int_inverse(m)] for m in mats]
        self._cmats = [_transpose(mats[self._inv[k]]) for k in range(len(mats))]
        self._mul_cache: dict = {}
        self.w0 = max(range(len(mats)), key=lambda k: lengths[k])

    def _build_classes(self):
        n = self.rank
        # simple roots in the same W_0-orbit give conjugate reflections
        label = []
        for i in range(n):
            key = None
            for j in range(i):
                if self._same_orbit(self.simple_roots[i], self.simple_roots[j]):
                    key = label[j]
                    break
            label.append(key if key is not None else i)
        reps = sorted(set(label))
        if self.params == "equal" or len(reps) == 1:
            names = {r: "t" for r in reps}
        else:
            names = {r: f"t{r + 1}" for r in reps}
        self.classes = tuple(dict.fromkeys(names[r] for r in reps))
        self.simple_class = tuple(names[label[i]] for i in range(n))
        phi_cls = None
        for i in range(n):
            if self._same_orbit(self.phi, self.simple_roots[i]):
                phi_cls = self.simple_class[i]
                break
        self.affine_class = phi_cls
        self._root_class = {}
        for r in self.coroot_of:
            for i in range(n):
                if self._same_orbit(r, self.simple_roots[i]):
                    self._root_class[r] = self.simple_class[i]
                    break

    def _same_orbit(self, r1, r2) -> bool:
        return any(_mat_vec(m, r2) == r1 for m in self._mats)

    # -- basic maps -------------------------------------------------------

    def __repr__(self):
        return f"RootDatum({self.name}, params={self.params!r})"

    def reflect(self, i: int, mu: Weight) -> Weight:
        """s_{i+1} applied to a weight (0-based i)."""
        m = mu[i]
        if m == 0:
            return tuple(mu)
        a = self.cartan[i]
        return tuple(x - m * y for x, y in zip(mu, a))

    def reflect_coroot(self, i: int, c) -> tuple:
        """s_{i+1} applied to a coroot vector (0-based i)."""
        pair = sum(self.cartan[i][k] * c[k] for k in range(self.rank))
        if pair == 0:
            return tuple(c)
        return tuple(x - pair * (k == i) for k, x in enumerate(c))

    def pairing(self, mu: Sequence, cv: Sequence):
        """<mu, cv> for mu in fundamental weights and cv in simple coroots."""
        return sum(x * y for x, y in zip(mu, cv))

    def root_pairing(self, root: Weight, cv) -> int:
        return self.pairing(root, cv)

    def to_root_coords(self, mu: Weight) -> tuple[Fraction, ...]:
        """Coordinates of a weight in the simple-root basis."""
        inv = self._inv_cartan
        n = self.rank
        return tuple(sum(Fraction(mu[j]) * inv[j][k] for j in range(n)) for k in range(n))

    def from_root_coords(self, c: Sequence[int]) -> Weight:
        n = self.rank
        return tuple(sum(c[i] * self.cartan[i][j] for i in range(n)) for j in range(n))

    def fundamental_coweight(self, j: int) -> tuple[Fraction, ...]:
        """omega_{j+1}^vee in simple-coroot coordinates."""
        inv = self._inv_cartan
        return tuple(inv[k][j] for k in range(self.rank))

    def weight(self, *coords) -> Weight:
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        if len(coords) != self.rank:
            raise ValueError(f"weight needs {self.rank} coordinates")
        return tuple(int(x) for x in coords)

    def omega(self, j: int) -> Weight:
        """Fundamental weight omega_j (1-based)."""
        return tuple(int(k == j - 1) for k in range(self.rank))

    def alpha(self, i: int) -> Weight:
        """Simple root alpha_i (1-based) in fundamental weights."""
        return self.simple_roots[i - 1]

    @cached_property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @cached_property
    def rho_coroot2(self) -> tuple[int, ...]:
        """2 rho^vee, the sum of positive coroots."""
        return tuple(sum(c[k] for c in self.positive_coroots) for k in range(self.rank))

    @cached_property
    def coxeter_number(self) -> int:
        return 1 + sum(self.phi_coroot)

    def is_dominant(self, mu: Weight) -> bool:
        return all(x >= 0 for x in mu)

    # -- Weyl group -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._mats)

    def weyl_elements(self) -> list[FiniteWeyl]:
        """All of W_0 sorted by (length, word)."""
        ks = sorted(range(self.order), key=lambda k: (self._lengths[k], self._words[k]))
        return [FiniteWeyl(self._words[k]) for k in ks]

    def w_index(self, w) -> int:
        if isinstance(w, int):
            return w
        if isinstance(w, FiniteWeyl):
            word = w.word
        else:
            word = tuple(w)
        k = self._word_index.get(word)
        if k is not None:
            return k
        k = 0
        for i in word:
            k = self.w_mul(k, self._index[self._gen_mats[i - 1]])
        return k

    def w_elem(self, k: int) -> FiniteWeyl:
        return FiniteWeyl(self._words[k])

    def w_word(self, k: int) -> tuple[int, ...]:
        return self._words[k]

    def w_length(self, w) -> int:
        return self._lengths[self.w_index(w)]

    def w_inv(self, w) -> int:
        return self._inv[self.w_index(w)]

    def w_mul(self, a: int, b: int) -> int:
        key = (a, b)
        r = self._mul_cache.get(key)
        if r is None:
            r = self._index[_mat_mul(self._mats[a], self._mats[b])]
            self._mul_cache[key] = r
        return r

    def s(self, i: int) -> int:
        """Index of the simple reflection s_i (1-based)."""
        return self._word_index[(i,)]

    @property
    def identity(self) -> int:
        return 0

    def act(self, w, mu: Weight) -> Weight:
        return _mat_vec(self._mats[self.w_index(w)], mu)

    def act_coroot(self, w, c) -> tuple:
        return _mat_vec(self._cmats[self.w_index(w)], c)

    def weyl_act(self, w: FiniteWeyl, mu: Weight) -> Weight:
        return self.act(w, mu)

    def dominant_data(self, mu: Weight) -> tuple[Weight, Weight, FiniteWeyl]:
        """(mu_+, mu_-, v_mu) with v_mu the shortest element taking mu to mu_-."""
        plus, minus, v = self._dominant_data(tuple(mu))
        return plus, minus, FiniteWeyl(self._words[v])

    def _dominant_data(self, mu):
        cache = self.__dict__.setdefault("_dd_cache", {})
        r = cache.get(mu)
        if r is not None:
            return r
        plus = tuple(mu)
        changed = True
        while changed:
            changed = False
            for i in range(self.rank):
                if plus[i] < 0:
                    plus = self.reflect(i, plus)
                    changed = True
        minus = self.act(self.w0, plus)
        best = None
        for k in range(self.order):
            if self.act(k, mu) == minus and (best is None or self._lengths[k] < self._lengths[best]):
                best = k
        r = (plus, minus, best)
        cache[mu] = r
        return r

    def v_index(self, mu: Weight) -> int:
        return self._dominant_data(tuple(mu))[2]

    def stabilizer(self, mu: Weight) -> list[int]:
        """Indices of W_mu = {u : u mu = mu}."""
        return [k for k in range(self.order) if self.act(k, mu) == tuple(mu)]

    def coset_reps(self, mu: Weight) -> list[int]:
        """Minimal length representatives of W_0 / W_mu, for dominant mu."""
        self._require_dominant(mu)
        zero = [i for i in range(self.rank) if mu[i] == 0]
        out = []
        for k in range(self.order):
            if all(self._lengths[self.w_mul(k, self.s(i + 1))] > self._lengths[k] for i in zero):
                out.append(k)
        out.sort(key=lambda k: (self._lengths[k], self._words[k]))
        return out

    def longest_in_stabilizer(self, mu: Weight) -> int:
        self._require_dominant(mu)
        return max(self.stabilizer(mu), key=lambda k: self._lengths[k])

    def _require_dominant(self, mu):
        if not self.is_dominant(mu):
            raise PreconditionError("requires dominant weight")

    def stabilizer_poincare(self, mu: Weight) -> RationalQT:
        """W_mu(t) = sum over the stabilizer of t_u."""
        self._require_dominant(mu)
        total = self.field.zero
        for k in self.stabilizer(mu):
            total = total + self.t_w(k)
        return total

    def stabilizer_data(self, mu: Weight) -> dict:
        self._require_dominant(mu)
        return {
            "stabilizer": [self.w_elem(k) for k in sorted(self.stabilizer(mu), key=lambda k: (self._lengths[k], self._words[k]))],
            "coset_reps": [self.w_elem(k) for k in self.coset_reps(mu)],
            "longest": self.w_elem(self.longest_in_stabilizer(mu)),
            "poincare": self.stabilizer_poincare(mu),
        }

    def minuscule_set(self) -> set[int]:
        """Indices j with <omega_j, alpha^vee> <= 1 for every positive coroot."""
        return {j + 1 for j in range(self.rank) if self.phi_coroot[j] <= 1}

    # -- parameters -------------------------------------------------------

    def class_of_root(self, root: Weight) -> str:
        return self._root_class[tuple(root)]

    def class_of_coroot(self, c) -> str:
        c = tuple(c)
        if not _is_pos(c):
            c = tuple(-x for x in c)
        return self._root_class[self.root_of[c]]

    def class_of_generator(self, i: int) -> str:
        """t-class of s_i for i in 0..n."""
        return self.affine_class if i == 0 else self.simple_class[i - 1]

    def t_gen(self, i: int, half: int = 2) -> RationalQT:
        """t_i^(half/2) for generator i in 0..n."""
        f = self.field
        return f.monomial(f.exponent(t={self.class_of_generator(i): Fraction(half, 2)}))

    def t_w(self, w, half: int = 2) -> RationalQT:
        """t_w^(half/2) = product of t_{i_k}^(half/2) along a reduced word."""
        f = self.field
        counts: dict = {}
        for i in self._words[self.w_index(w)]:
            c = self.simple_class[i - 1]
            counts[c] = counts.get(c, 0) + Fraction(half, 2)
        return f.monomial(f.exponent(t=counts))

    def height_exponent(self, c) -> dict[str, int]:
        """Scaled t-exponents (units of 1/2) of t^{hgt(c)} = prod t_alpha^(<alpha,c>/2)."""
        out: dict = {}
        for r in self.positive_roots:
            v = self.pairing(r, c)
            if v:
                cls = self._root_class[r]
                out[cls] = out.get(cls, 0) + v
        return out

    def to_json(self) -> dict:
        return {"type": "cartan", "n": self.rank, "cartan": [list(r) for r in self.cartan], "lattice": self.lattice, "params": self.params}


def _int_inverse(m):
    inv = _inverse(m)
    return tuple(tuple(int(x) for x in row) for row in inv)


def datum_from_type(name: str, params: str = "equal") -> RootDatum:
    """Built-in datum from a type string such as "A2" or "G2"."""
    name = name.strip()
    kind, n = name[0].upper(), int(name[1:])
    return RootDatum(cartan_matrix(kind, n), params=params, name=f"{kind}{n}")


def datum_from_json(obj) -> RootDatum:
    """Datum from the JSON input format (a dict or a path)."""
    if isinstance(obj, str):
        with open(obj, encoding="utf-8") as fh:
            obj = json.load(fh)
    params = obj.get("params", "equal")
    lattice = obj.get("lattice", "weight")
    kind = obj.get("type", "A")
    if kind == "cartan":
        return RootDatum(obj["cartan"], params=params, lattice=lattice)
    return RootDatum(cartan_matrix(kind, int(obj["n"])), params=params, lattice=lattice, name=f"{kind}{obj['n']}")
