"""Type-A root data for GL(n), Weyl combinatorics, beta sets and root counting.

Simple roots are ``alpha_i = e_i - e_{i+1}`` (1-based, ``i = 1..n-1``). Positive
roots correspond to strictly upper-triangular matrix units, so
``x_alpha(i, a)`` is ``I + a E_{i,i+1}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Any, Sequence

from .algebra import Mat, identity, mat_mul

Root = tuple  # integer vector in Z^n


@dataclass(frozen=True)
class RootDataA:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def rank(self) -> int:
        return self.n - 1

    def simple_root(self, i: int) -> Root:
        self._check_index(i)
        return tuple(1 if k == i - 1 else -1 if k == i else 0 for k in range(self.n))

    def coroot_pairing(self, root: Root, j: int) -> int:
        """``<root, alpha_j^vee>``; in type A the coroot is the same vector."""
        return sum(a * b for a, b in zip(root, self.simple_root(j)))

    def cartan_matrix(self) -> list:
        r = self.rank
        return [[self.coroot_pairing(self.simple_root(i), j) for j in range(1, r + 1)] for i in range(1, r + 1)]

    def is_root(self, v: Root) -> bool:
        return sorted(v) == [-1] + [0] * (self.n - 2) + [1] if self.n >= 2 else False

    def positive_roots(self) -> list:
        return [self.root(p, q) for p in range(1, self.n + 1) for q in range(p + 1, self.n + 1)]

    def root(self, p: int, q: int) -> Root:
        """``e_p - e_q`` (1-based)."""
        return tuple(1 if k == p - 1 else -1 if k == q - 1 else 0 for k in range(self.n))

    def reflect(self, i: int, v: Root) -> Root:
        """Simple reflection ``s_i`` acting on a weight by swapping coordinates i, i+1."""
        self._check_index(i)
        w = list(v)
        w[i - 1], w[i] = w[i], w[i - 1]
        return tuple(w)

    def reflect_cartan(self, i: int, v: Root) -> Root:
        """Same reflection via ``v - <v, alpha_i^vee> alpha_i`` (cross-check)."""
        c = self.coroot_pairing(v, i)
        return tuple(a - c * b for a, b in zip(v, self.simple_root(i)))

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n - 1:
            raise ValueError(f"simple root index {i} out of range 1..{self.n - 1}")


def root_indices(v: Root) -> tuple:
    """``(p, q)`` for the root ``e_p - e_q``."""
    p = v.index(1) + 1
    q = v.index(-1) + 1
    return p, q


def format_root(v: Root) -> str:
    p, q = root_indices(v)
    return f"e_{p} - e_{q}"


def in_span(v: Root, subset: Sequence[int], n: int) -> bool:
    """Whether the root ``v`` lies in the root subsystem spanned by ``subset``."""
    p, q = root_indices(v)
    lo, hi = min(p, q), max(p, q)
    return all(k in subset for k in range(lo, hi))


# --- one-parameter subgroups ------------------------------------------------


def x_alpha(i: int, a: Any, n: int) -> Mat:
    RootDataA(n)._check_index(i)
    return Mat([[1 if r == c else a if (r, c) == (i - 1, i) else 0 for c in range(n)] for r in range(n)])


def y_alpha(i: int, a: Any, n: int) -> Mat:
    RootDataA(n)._check_index(i)
    return Mat([[1 if r == c else a if (r, c) == (i, i - 1) else 0 for c in range(n)] for r in range(n)])


def s_alpha(i: int, n: int) -> Mat:
    """Lift of the simple reflection: block ``[[0, 1], [-1, 0]]`` on rows/cols i, i+1."""
    RootDataA(n)._check_index(i)

    def entry(r, c):
        if r in (i - 1, i) or c in (i - 1, i):
            if (r, c) == (i - 1, i):
                return 1
            if (r, c) == (i, i - 1):
                return -1
            return 0
        return 1 if r == c else 0

    return Mat([[entry(r, c) for c in range(n)] for r in range(n)])


def s_alpha_triple(i: int, n: int) -> Mat:
    """``X(1) Y(-1) X(1)``, the defining product of the lift."""
    return x_alpha(i, 1, n) @ y_alpha(i, -1, n) @ x_alpha(i, 1, n)


# --- orderings and beta sets ------------------------------------------------


@dataclass(frozen=True)
class Ordering:
    """Order ``alpha_{seq[0]}, alpha_{seq[1]}, ...`` of the simple roots."""

    seq: tuple

    def __init__(self, seq: Sequence[int]):
        seq = tuple(int(s) for s in seq)
        if sorted(seq) != list(range(1, len(seq) + 1)):
            raise ValueError(f"ordering {seq} is not a permutation of 1..{len(seq)}")
        object.__setattr__(self, "seq", seq)

    @classmethod
    def standard(cls, n: int) -> "Ordering":
        return cls(range(1, n))

    def __len__(self) -> int:
        return len(self.seq)


def all_orderings(n: int):
    for p in itertools.permutations(range(1, n)):
        yield Ordering(p)


@dataclass(frozen=True)
class BetaSet:
    betas: tuple  # beta_i as integer vectors, in ordering position
    w: tuple  # Weyl element as a permutation of 1..n (image of each index)
    ordering: Ordering


def _apply_word(rd: RootDataA, word: Sequence[int], v: Root) -> Root:
    # word is written left to right; the rightmost letter acts first
    for i in reversed(word):
        v = rd.reflect(i, v)
    return v


def beta_set(ord: Ordering, rd: RootDataA) -> BetaSet:
    """``beta_i = s_{(r)} ... s_{(i+1)} (alpha_{(i)})`` and ``w = s_{(r)} ... s_{(1)}``."""
    seq = ord.seq
    if len(seq) != rd.rank:
        raise ValueError("ordering length does not match the rank")
    betas = []
    for pos, i in enumerate(seq):
        word = list(reversed(seq[pos + 1 :]))
        betas.append(_apply_word(rd, word, rd.simple_root(i)))
    w = tuple(_permutation_of_word(rd.n, list(reversed(seq))))
    bs = BetaSet(tuple(betas), w, ord)
    for b in bs.betas:
        if not rd.is_root(b):
            raise AssertionError(f"beta {b} is not a root")
    for b1, b2 in itertools.combinations_with_replacement(bs.betas, 2):
        if rd.is_root(tuple(x + y for x, y in zip(b1, b2))):
            raise AssertionError(f"beta sum {b1} + {b2} is a root")
    return bs


def _permutation_of_word(n: int, word: Sequence[int]) -> list:
    # image of k under the product (rightmost letter first)
    perm = list(range(1, n + 1))
    for i in reversed(word):
        perm = [i + 1 if k == i else i if k == i + 1 else k for k in perm]
    return perm


def weyl_lift(ord: Ordering, n: int) -> Mat:
    """Signed permutation matrix ``s_{(r)} ... s_{(1)}`` representing ``w``."""
    m = identity(n)
    for i in ord.seq:
        m = mat_mul(s_alpha(i, n), m)
    return m


def beta_unipotent(ord: Ordering, pos: int, a: Any, n: int) -> Mat:
    """``X_{beta}(a)`` for the beta at ordering position ``pos`` (0-based).

    Defined by conjugating ``X_{alpha}(a)`` with the lift of ``s_{(r)} ... s_{(pos+2)}``,
    which fixes the sign of the root vector.
    """
    seq = ord.seq
    conj = identity(n)
    for i in seq[pos + 1 :]:
        conj = mat_mul(s_alpha(i, n), conj)
    inv = conj.T  # signed permutation matrices are orthogonal
    return conj @ x_alpha(seq[pos], a, n) @ inv


# --- Levi subsets and compatible orderings -----------------------------------


@dataclass(frozen=True)
class LeviA:
    subset: frozenset

    def __init__(self, subset: Sequence[int], n: int | None = None):
        s = frozenset(int(i) for i in subset)
        if n is not None and not s <= set(range(1, n)):
            raise ValueError(f"Levi subset {sorted(s)} not within 1..{n - 1}")
        object.__setattr__(self, "subset", s)


def _components(nodes: set) -> list:
    """Connected components of a subset of the A-type path diagram, sorted."""
    comps = []
    for i in sorted(nodes):
        if comps and comps[-1][-1] == i - 1:
            comps[-1].append(i)
        else:
            comps.append([i])
    return comps


def _compatible(sub: set, ambient: set) -> list:
    """Order ``ambient`` with ``sub`` first, beta roots of ``sub`` leaving ``Phi_sub``."""
    if not sub:
        return sorted(ambient)
    head: list = []
    for comp in _components(sub):
        cset = set(comp)
        sigma = {a for a in comp if any(abs(a - b) == 1 for b in ambient - sub)}
        if not sigma:
            raise ValueError(f"component {comp} is a whole simple factor; no compatible order")
        head.extend(_compatible(cset - sigma, cset))
    return head + sorted(ambient - sub)


def compatible_order(L: LeviA, rd: RootDataA) -> Ordering:
    full = set(range(1, rd.n))
    sub = set(L.subset)
    if not sub <= full:
        raise ValueError("Levi subset outside the simple roots")
    if sub and sub == full:
        raise ValueError("the Levi subgroup is the whole group; no compatible order exists")
    order = Ordering(_compatible(sub, full))
    if not is_compatible(order, L, rd):
        raise AssertionError(f"internal error: {order.seq} is not compatible with {sorted(sub)}")
    return order


def is_compatible(order: Ordering, L: LeviA, rd: RootDataA) -> bool:
    m = len(L.subset)
    if set(order.seq[:m]) != set(L.subset):
        return False
    bs = beta_set(order, rd)
    return not any(in_span(b, L.subset, rd.n) for b in bs.betas)


# --- root counting for quantum-group degrees ------------------------------------


def positive_root_count(n: int) -> int:
    return comb(n, 2)


def branching_exponent(n: int, m: int) -> int:
    """``|Phi+(GL n)| - |Phi+(GL m)| - dim T(GL m)`` for ``GL(m) < GL(n)``."""
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got n={n}, m={m}")
    return comb(n, 2) - comb(m, 2) - m


def torus_branching_exponent(n: int) -> int:
    """``|Phi+| - dim T`` for the maximal torus of the semisimple group SL(n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    return comb(n, 2) - (n - 1)


def branching_multiplicity(n: int, m: int, ell: int) -> int:
    return ell ** branching_exponent(n, m)


def degree_arithmetic(n: int, ell: int) -> dict:
    """Degree of U_q(GL n) over its center and of the center covering."""
    if ell < 3 or ell % 2 == 0:
        raise ValueError("ell must be an odd integer >= 3")
    return {"algebra_degree": ell ** comb(n, 2), "center_cover_degree": ell**n}
