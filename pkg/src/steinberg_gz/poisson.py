"""Poisson structure on the dual group H of GL(n) and its Gelfand-Zetlin family.

H is the group of pairs ``(x, y)`` with ``x`` upper triangular, ``y`` lower
triangular and ``diag(x) * diag(y) = 1``. It sits in the double ``GL(n) x GL(n)``
whose Lie algebra carries ``kappa((a, b), (u, v)) = tr(au) - tr(bv)`` and splits
as the diagonal ``k`` plus ``h = {(u + t, l - t)}``.

Differentials are taken along left-invariant directions of ``h`` using dual
numbers, so every bracket over ``Fraction`` is exact.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .algebra import (
    Dual,
    Mat,
    base_value,
    eps_part,
    new_tag,
    principal_minor_sums,
    rank,
    triangular_inverse,
)

FLOAT_MIN_PIVOT = 1e-12
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class HPoint:
    x: Mat
    y: Mat

    @property
    def n(self) -> int:
        return self.x.n


def h_point(x: Mat, y: Mat) -> HPoint:
    """Validated point of H."""
    if x.n != y.n:
        raise ValueError("x and y must have the same size")
    if not x.is_upper():
        raise ValueError("x must be upper triangular")
    if not y.is_lower():
        raise ValueError("y must be lower triangular")
    for k, (a, b) in enumerate(zip(x.diagonal(), y.diagonal())):
        if a == 0 or b == 0:
            raise ValueError(f"diagonal entry {k} is zero; factor not invertible")
        prod = a * b
        ok = abs(prod - 1) <= 1e-12 if isinstance(prod, float) else prod == 1
        if not ok:
            raise ValueError(f"diag(x)[{k}] * diag(y)[{k}] = {prod}, expected 1")
    return HPoint(x, y)


def random_h_point(n: int, rng: random.Random, float_mode: bool = False) -> HPoint:
    """Entries uniform on -5..5, diagonal of x drawn from the nonzero values."""
    xs = [[Fraction(0)] * n for _ in range(n)]
    ys = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d = rng.choice([v for v in range(-5, 6) if v])
        xs[i][i] = Fraction(d)
        ys[i][i] = Fraction(1, d)
        for j in range(i + 1, n):
            xs[i][j] = Fraction(rng.randint(-5, 5))
        for j in range(i):
            ys[i][j] = Fraction(rng.randint(-5, 5))
    p = h_point(Mat(xs), Mat(ys))
    return to_float(p) if float_mode else p


def to_float(p: HPoint) -> HPoint:
    return HPoint(p.x.map(float), p.y.map(float))


def _inverse(m: Mat) -> Mat:
    pivot = FLOAT_MIN_PIVOT if isinstance(base_value(m[0, 0]), float) else None
    return triangular_inverse(m, min_pivot=pivot)


# --- functions on H -------------------------------------------------------------


@dataclass(frozen=True)
class SmoothFn:
    """A named function of ``(x, y)`` that also accepts dual-number matrices."""

    name: str
    fn: Callable[[Mat, Mat], Any] = field(compare=False)

    def __call__(self, p: HPoint) -> Any:
        return self.fn(p.x, p.y)

    def __mul__(self, other: "SmoothFn") -> "SmoothFn":
        f, g = self.fn, other.fn
        return SmoothFn(f"({self.name})*({other.name})", lambda x, y: f(x, y) * g(x, y))

    def __add__(self, other: "SmoothFn") -> "SmoothFn":
        f, g = self.fn, other.fn
        return SmoothFn(f"({self.name})+({other.name})", lambda x, y: f(x, y) + g(x, y))


def constant(c: Any) -> SmoothFn:
    return SmoothFn(f"const({c})", lambda x, y: c)


def coordinate(factor: str, p: int, q: int) -> SmoothFn:
    """Entry ``(p, q)`` (1-based) of ``x`` or ``y``."""
    if factor not in ("x", "y"):
        raise ValueError("factor must be 'x' or 'y'")
    if factor == "x":
        return SmoothFn(f"x{p}{q}", lambda x, y: x[p - 1, q - 1])
    return SmoothFn(f"y{p}{q}", lambda x, y: y[p - 1, q - 1])


def gz_function(i: int, k: int) -> SmoothFn:
    """``P_k`` of ``x_i y_i^{-1}`` for the leading ``i x i`` blocks."""

    def fn(x: Mat, y: Mat) -> Any:
        xi = Mat([r[:i] for r in x.rows[:i]])
        yi = Mat([r[:i] for r in y.rows[:i]])
        return principal_minor_sums(xi @ _inverse(yi))[k - 1]

    return SmoothFn(f"f{i},{k}", fn)


def diag_function(j: int) -> SmoothFn:
    return SmoothFn(f"d{j}", lambda x, y: x[j - 1, j - 1])


@dataclass(frozen=True)
class GZFamily:
    n: int
    gz: dict  # (i, k) -> SmoothFn
    diag: tuple  # d_1..d_n

    @property
    def functions(self) -> list:
        return list(self.gz.values()) + list(self.diag)

    def __len__(self) -> int:
        return len(self.gz) + len(self.diag)

    def __iter__(self):
        return iter(self.functions)


def gz_family(n: int) -> GZFamily:
    if n < 1:
        raise ValueError("n must be >= 1")
    gz = {(i, k): gz_function(i, k) for i in range(1, n + 1) for k in range(1, i + 1)}
    return GZFamily(n, gz, tuple(diag_function(j) for j in range(1, n + 1)))


# --- chart ------------------------------------------------------------------------


def chart_labels(n: int) -> list:
    """Independent coordinates: strict-upper x, strict-lower y, then diag(x)."""
    labels = [("x", p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]
    labels += [("y", p, q) for p in range(1, n + 1) for q in range(1, p)]
    labels += [("x", k, k) for k in range(1, n + 1)]
    return labels


def chart_coordinates(n: int) -> list:
    return [coordinate(*lab) for lab in chart_labels(n)]


def chart_of(p: HPoint) -> tuple:
    return tuple((p.x if f == "x" else p.y)[a - 1, b - 1] for f, a, b in chart_labels(p.n))


def point_from_chart(n: int, c: Sequence[Any]) -> HPoint:
    """Inverse of ``chart_of``; diag(y) is the reciprocal of diag(x)."""
    zero = 0.0 if any(isinstance(base_value(v), float) for v in c) else Fraction(0)
    xs = [[zero] * n for _ in range(n)]
    ys = [[zero] * n for _ in range(n)]
    for (f, a, b), v in zip(chart_labels(n), c):
        (xs if f == "x" else ys)[a - 1][b - 1] = v
    for k in range(n):
        ys[k][k] = 1 / xs[k][k]
    return HPoint(Mat(xs), Mat(ys))


# --- differentials and the bracket -------------------------------------------------


def directions(n: int) -> list:
    """Basis of h: ``(kind, p, q)`` with 0-based indices.

    ``u``: ``(E_pq, 0)`` for p < q; ``l``: ``(0, E_pq)`` for p > q;
    ``t``: ``(E_kk, -E_kk)``.
    """
    out = [("u", p, q) for p in range(n) for q in range(p + 1, n)]
    out += [("l", p, q) for p in range(n) for q in range(p)]
    out += [("t", k, k) for k in range(n)]
    return out


def _perturb(m: Mat, p: int, q: int, e: Dual) -> Mat:
    # m (I + e E_pq): column q gains e times column p
    rows = [list(r) for r in m.rows]
    for r in rows:
        if r[p] != 0:
            r[q] = r[q] + e * r[p]
    return Mat(rows)


def perturbed(pt: HPoint, kind: str, p: int, q: int, tag: int) -> HPoint:
    """``(x exp(eps h1), y exp(eps h2))`` for the basis direction; exact to first order."""
    e = Dual(Fraction(0), Fraction(1), tag)
    if kind == "u":
        return HPoint(_perturb(pt.x, p, q, e), pt.y)
    if kind == "l":
        return HPoint(pt.x, _perturb(pt.y, p, q, e))
    return HPoint(_perturb(pt.x, p, p, e), _perturb(pt.y, p, p, -e))


def directional_derivatives(f: SmoothFn, pt: HPoint) -> dict:
    out = {}
    for kind, p, q in directions(pt.n):
        tag = new_tag()
        out[(kind, p, q)] = eps_part(f(perturbed(pt, kind, p, q, tag)), tag)
    return out


def differential(f: SmoothFn, pt: HPoint) -> Mat:
    """``z`` with ``kappa((z, z), h) = D_h f`` for every ``h`` in h."""
    n = pt.n
    half = 0.5 if isinstance(base_value(pt.x[0, 0]), float) else HALF
    z: list = [[half * 0] * n for _ in range(n)]
    for (kind, p, q), d in directional_derivatives(f, pt).items():
        if kind == "u":
            z[q][p] = d
        elif kind == "l":
            z[q][p] = -d
        else:
            z[p][p] = d * half
    return Mat(z)


def _split_parts(d: Mat) -> Mat:
    # strictly-lower part minus strictly-upper part
    n = d.n
    return Mat([[d[i, j] if i > j else -d[i, j] if i < j else 0 for j in range(n)] for i in range(n)])


def bracket_from_differentials(zf: Mat, zg: Mat, pt: HPoint, inverses=None, mutate: bool = False) -> Any:
    """``kappa(P_k Ad_p (zf, zf), P_h Ad_p (zg, zg))``.

    With ``a = x zf x^-1``, ``b = y zf y^-1`` the k-component of ``(a, b)`` is
    ``w = (a + b)/2 + (L(a - b) - U(a - b))/2`` and the pairing reduces to
    ``tr(w (x zg x^-1 - y zg y^-1))``. ``mutate`` flips the sign of ``b`` in
    the symmetric part; it exists only to show the checks can fail.
    """
    inverses = inverses if inverses is not None else (_inverse(pt.x), _inverse(pt.y))
    return pair_with(k_component(zf, pt, inverses, mutate), zg, pt, inverses)


def k_component(zf: Mat, pt: HPoint, inverses, mutate: bool = False) -> Mat:
    """``w`` above; depends only on the first argument of the bracket."""
    x, y = pt.x, pt.y
    xi, yi = inverses
    a = x @ zf @ xi
    b = y @ zf @ yi
    r = _split_parts(a - b)
    half = 0.5 if isinstance(base_value(x[0, 0]), float) else HALF
    return ((a - b if mutate else a + b) + r).scale(half)


def pair_with(w: Mat, zg: Mat, pt: HPoint, inverses) -> Any:
    xi, yi = inverses
    c = pt.x @ zg @ xi - pt.y @ zg @ yi
    return (w @ c).trace()


def bracket(f: SmoothFn, g: SmoothFn, pt: HPoint, mutate: bool = False) -> Any:
    return bracket_from_differentials(differential(f, pt), differential(g, pt), pt, mutate=mutate)


def bracket_fn(f: SmoothFn, g: SmoothFn) -> SmoothFn:
    """``{f, g}`` as a function on H (differentiable again through nested duals)."""
    return SmoothFn(f"{{{f.name},{g.name}}}", lambda x, y: bracket(f, g, HPoint(x, y)))


def _is_violation(v: Any, tol: float | None) -> bool:
    v = base_value(v)
    if tol is None:
        return v != 0
    return abs(v) > tol


def _fmt(v: Any) -> Any:
    v = base_value(v)
    return str(v) if isinstance(v, Fraction) else float(v)


def _abs_max(values: list) -> Any:
    vals = [abs(base_value(v)) for v in values]
    return max(vals) if vals else Fraction(0)


# --- verification reports -----------------------------------------------------------


def verify_commutative(
    n: int,
    points: int,
    seed: int,
    float_mode: bool = False,
    tol: float = 1e-9,
    mutate: bool = False,
    functions: Sequence[SmoothFn] | None = None,
) -> dict:
    """Bracket every unordered pair of the family at seeded random points."""
    rng = random.Random(seed)
    fns = list(functions) if functions is not None else gz_family(n).functions
    tolerance = tol if float_mode else None
    violations = []
    values = []
    pairs = 0
    for k in range(points):
        pt = random_h_point(n, rng, float_mode)
        inv = (_inverse(pt.x), _inverse(pt.y))
        zs = [differential(f, pt) for f in fns]
        ws = [k_component(z, pt, inv, mutate) for z in zs]
        for (i, f), (j, g) in itertools.combinations(enumerate(fns), 2):
            v = pair_with(ws[i], zs[j], pt, inv)
            pairs += 1
            values.append(v)
            if _is_violation(v, tolerance):
                violations.append({"pair": [f.name, g.name], "point": k, "value": _fmt(v)})
    return {
        "n": n,
        "seed": seed,
        "points": points,
        "mode": "float" if float_mode else "exact",
        "tolerance": tolerance,
        "pairs_checked": pairs,
        "violations": violations,
        "max_abs": _fmt(_abs_max(values)),
    }


def full_coordinates(n: int) -> list:
    """Every non-constant entry of x (upper) and y (lower)."""
    xs = [coordinate("x", p, q) for p in range(1, n + 1) for q in range(p, n + 1)]
    ys = [coordinate("y", p, q) for p in range(1, n + 1) for q in range(1, p + 1)]
    return xs + ys


def casimir_check(
    n: int,
    seed: int,
    points: int = 3,
    functions: Sequence[SmoothFn] | None = None,
    mutate: bool = False,
) -> dict:
    """Bracket each ``f_{n,k}`` with every coordinate of x and y."""
    rng = random.Random(seed)
    fns = list(functions) if functions is not None else [gz_function(n, k) for k in range(1, n + 1)]
    coords = full_coordinates(n)
    violations = []
    values = []
    checked = 0
    for k in range(points):
        pt = random_h_point(n, rng)
        inv = (_inverse(pt.x), _inverse(pt.y))
        zc = [differential(c, pt) for c in coords]
        for f in fns:
            w = k_component(differential(f, pt), pt, inv, mutate)
            for c, z in zip(coords, zc):
                v = pair_with(w, z, pt, inv)
                checked += 1
                values.append(v)
                if v != 0:
                    violations.append({"pair": [f.name, c.name], "point": k, "value": _fmt(v)})
    return {
        "n": n,
        "seed": seed,
        "points": points,
        "pairs_checked": checked,
        "violations": violations,
        "max_abs": _fmt(_abs_max(values)),
    }


def family_jacobian(n: int, pt: HPoint) -> list:
    """Rows: family functions; columns: chart coordinates."""
    fns = gz_family(n).functions
    base = chart_of(pt)
    cols = []
    for a in range(len(base)):
        tag = new_tag()
        c = list(base)
        c[a] = Dual(base[a], Fraction(1), tag)
        q = point_from_chart(n, c)
        cols.append([eps_part(f(q), tag) for f in fns])
    return [list(r) for r in zip(*cols)]


def bivector_matrix(n: int, pt: HPoint, mutate: bool = False) -> list:
    coords = chart_coordinates(n)
    inv = (_inverse(pt.x), _inverse(pt.y))
    zs = [differential(c, pt) for c in coords]
    ws = [k_component(z, pt, inv, mutate) for z in zs]
    return [[pair_with(w, zb, pt, inv) for zb in zs] for w in ws]


def rank_report(n: int, seed: int) -> dict:
    pt = random_h_point(n, random.Random(seed))
    jac = family_jacobian(n, pt)
    biv = bivector_matrix(n, pt)
    return {
        "n": n,
        "seed": seed,
        "chart_dim": n * n,
        "family_size": len(jac),
        "family_rank": rank(jac),
        "expected_family_rank": math.comb(n + 1, 2),
        "bivector_rank": rank(biv),
        "expected_bivector_rank": n * n - n,
    }


# --- Hamiltonian flows ------------------------------------------------------------


@dataclass
class FlowResult:
    times: list
    trajectory: list  # chart tuples
    drift: dict  # function name -> max relative drift
    max_drift: float


def hamiltonian_field(f: SmoothFn, n: int) -> Callable[[tuple], tuple]:
    """``c -> ({f, c_a})_a`` on the chart, memoised per chart point."""
    coords = chart_coordinates(n)
    cache: dict = {}

    def field_at(c: tuple) -> tuple:
        if c in cache:
            return cache[c]
        pt = point_from_chart(n, c)
        inv = (_inverse(pt.x), _inverse(pt.y))
        w = k_component(differential(f, pt), pt, inv)
        v = tuple(pair_with(w, differential(ca, pt), pt, inv) for ca in coords)
        cache[c] = v
        return v

    return field_at


def _rel(a: Any, b: Any) -> float:
    return float(abs(a - b)) / max(1.0, float(abs(b)))


def hamiltonian_flow(f: SmoothFn, p0: HPoint, dt: Any, steps: int, monitor: Sequence[SmoothFn] | None = None) -> FlowResult:
    """Classical RK4 on the chart.

    Exact when ``p0`` and ``dt`` are rational; drift is measured relative to
    ``max(1, |g(p0)|)`` for every monitored function ``g`` (default: the GZ family).
    """
    if dt < 0:
        raise ValueError("step size must be nonnegative")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    n = p0.n
    field_at = hamiltonian_field(f, n)
    watch = list(monitor) if monitor is not None else gz_family(n).functions
    c = chart_of(p0)
    start = {g.name: g(p0) for g in watch}
    drift = {name: 0.0 for name in start}
    traj = [c]
    times = [dt * 0]
    for s in range(1, steps + 1):
        k1 = field_at(c)
        k2 = field_at(tuple(ci + dt / 2 * ki for ci, ki in zip(c, k1)))
        k3 = field_at(tuple(ci + dt / 2 * ki for ci, ki in zip(c, k2)))
        k4 = field_at(tuple(ci + dt * ki for ci, ki in zip(c, k3)))
        c = tuple(ci + dt / 6 * (a + 2 * b + 2 * e + d) for ci, a, b, e, d in zip(c, k1, k2, k3, k4))
        traj.append(c)
        times.append(dt * s)
        pt = point_from_chart(n, c)
        for g in watch:
            drift[g.name] = max(drift[g.name], _rel(g(pt), start[g.name]))
    return FlowResult(times, traj, drift, max(drift.values(), default=0.0))
