"""Steinberg cross-section for SL(n) / GL(n) and related factorization checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .algebra import Dual, Mat, diag, eps_part, identity, leading_block, det, new_tag, principal_minor_sums, rank
from .roots import Ordering, RootDataA, beta_set, beta_unipotent, s_alpha, weyl_lift, x_alpha


class InconsistencyError(RuntimeError):
    """An internal algebraic identity failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class SteinbergInput:
    """Parameters ``params[j-1] = a(alpha_j)`` indexed by simple root, in order ``ord``."""

    ord: Ordering
    params: tuple
    torus: tuple | None = None

    def __post_init__(self):
        if len(self.params) != len(self.ord):
            raise ValueError(f"expected {len(self.ord)} parameters, got {len(self.params)}")
        if self.torus is not None:
            if len(self.torus) != self.n:
                raise ValueError(f"torus needs {self.n} entries")
            if any(t == 0 for t in self.torus):
                raise ValueError("torus entries must be nonzero")

    @property
    def n(self) -> int:
        return len(self.ord) + 1


def steinberg_section(inp: SteinbergInput) -> Mat:
    """``X_{(r)}(a) s_{(r)} ... X_{(1)}(a) s_{(1)}``, optionally left-multiplied by ``diag(torus)``."""
    n = inp.n
    m = identity(n)
    for i in reversed(inp.ord.seq):
        m = m @ x_alpha(i, inp.params[i - 1], n) @ s_alpha(i, n)
    if inp.torus is not None:
        m = diag(inp.torus) @ m
    return m


def steinberg_beta_form(inp: SteinbergInput) -> Mat:
    """The same element rewritten as ``(prod_i X_{beta_i}(a_i)) * w``."""
    if inp.torus is not None:
        raise ValueError("beta form is defined without a torus factor")
    n = inp.n
    beta_set(inp.ord, RootDataA(n))  # validates the beta-set invariants
    m = identity(n)
    for pos, i in enumerate(inp.ord.seq):
        m = m @ beta_unipotent(inp.ord, pos, inp.params[i - 1], n)
    return m @ weyl_lift(inp.ord, n)


def _coefficients(params: Sequence[Any], n: int) -> tuple:
    St = steinberg_section(SteinbergInput(Ordering.standard(n), tuple(params)))
    return principal_minor_sums(St)[: n - 1]


def steinberg_invert(target: Sequence[Any], n: int) -> tuple:
    """Parameters ``a`` (standard order) with ``P_r(St(a)) = target[r-1]`` for ``r < n``.

    Each ``P_r`` depends affinely on ``a_r`` once ``a_1..a_{r-1}`` are fixed and not at
    all on later parameters, so the parameters are solved one at a time.
    """
    if len(target) != n - 1:
        raise ValueError(f"need {n - 1} target coefficients")
    a: list = [Fraction(0)] * (n - 1)
    for r in range(1, n):
        tag = new_tag()
        trial = list(a)
        trial[r - 1] = Dual(Fraction(0), Fraction(1), tag)
        p = _coefficients(trial, n)[r - 1]
        slope = eps_part(p, tag)
        offset = p.value if isinstance(p, Dual) and p.tag == tag else p
        if slope == 0:
            raise InconsistencyError(f"P_{r} does not depend on a_{r}")
        a[r - 1] = (Fraction(target[r - 1]) - offset) / slope
    if list(_coefficients(a, n)) != [Fraction(t) for t in target]:
        raise InconsistencyError("sequential elimination did not reproduce the target")
    return tuple(a)


def check_piumenopiu(ord: Ordering, n: int, param: Any = -1) -> bool:
    """Whether ``prod X_{beta_i}(param) * w`` lies in ``U^- U^+`` (all leading minors 1)."""
    inp = SteinbergInput(ord, tuple([param] * (n - 1)))
    phi = steinberg_beta_form(inp)
    return all(det(leading_block(phi, i)) == 1 for i in range(1, n + 1))


def krylov_rank(m: Mat, v: Sequence[Any]) -> int:
    """Rank of ``[v, Mv, ..., M^{n-1} v]``; equals n iff v is cyclic (so M is regular)."""
    n = m.n
    cols = []
    cur = [Fraction(x) for x in v]
    for _ in range(n):
        cols.append(cur)
        cur = [sum((m[i, j] * cur[j] for j in range(n)), Fraction(0)) for i in range(n)]
    return rank(cols)


def cyclic_rank(m: Mat, tries: int = 8) -> int:
    """Largest Krylov rank over a fixed list of probe vectors.

    Equals n exactly when ``m`` is regular, except for the (measure-zero)
    chance that every probe lies in a proper invariant subspace.
    """
    n = m.n
    probes = [[1] + [0] * (n - 1), [0] * (n - 1) + [1], list(range(1, n + 1))]
    probes += [[(k * 7 + i * i * 3) % 11 - 5 for i in range(n)] for k in range(tries)]
    best = 0
    for v in probes:
        best = max(best, krylov_rank(m, v))
        if best == n:
            break
    return best


def reductive_jacobian(params: Sequence[Any], torus: Sequence[Any]) -> list:
    """Jacobian of ``a -> (P_1..P_{n-1})(t * St(a))`` (standard order), exact via duals."""
    n = len(params) + 1
    rows = []
    for j in range(n - 1):
        tag = new_tag()
        trial = list(params)
        trial[j] = Dual(Fraction(params[j]), Fraction(1), tag)
        inp = SteinbergInput(Ordering.standard(n), tuple(trial), tuple(torus))
        coeffs = principal_minor_sums(steinberg_section(inp))[: n - 1]
        rows.append([eps_part(c, tag) for c in coeffs])
    # rows[j][r] = dP_r / da_j; transpose to the usual layout
    return [list(col) for col in zip(*rows)]
