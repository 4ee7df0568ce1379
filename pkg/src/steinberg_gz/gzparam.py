"""Parametrization of the lower-triangular Borel of GL(n) by nested characteristic data.

For a lower-triangular ``A`` and ``C_i`` the upper all-ones matrix, the map
``pi_map`` records the principal-minor sums of every ``D_i = A_i C_i``
(``A_i`` the leading ``i x i`` block). ``pi_inverse`` rebuilds ``A`` column
depth by column depth; each new entry enters its equation affinely with a
coefficient that is a product of already-known diagonal entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .algebra import Dual, Mat, det, eps_part, leading_block, new_tag, parse_rational, principal_minor_sums, submatrix


@dataclass(frozen=True)
class CharTriangle:
    """Values ``P_h^{(i)}`` keyed by ``(i, h)``, 1-based, for the block sizes in ``levels``."""

    n: int
    values: dict = field(hash=False)

    def __post_init__(self):
        for i in self.levels:
            if any((i, h) not in self.values for h in range(1, i + 1)):
                raise ValueError(f"incomplete data for block size {i}")
            if self.values[(i, i)] == 0:
                raise ValueError(f"determinant datum P_{i}^({i}) is zero")

    @property
    def levels(self) -> tuple:
        return tuple(sorted({i for i, _ in self.values}))

    def __getitem__(self, ih):
        return self.values[ih]

    def to_json(self) -> dict:
        vals = {f"{i},{h}": str(v) for (i, h), v in sorted(self.values.items())}
        return {"n": self.n, "values": vals}

    @classmethod
    def from_json(cls, obj: Any) -> "CharTriangle":
        if not isinstance(obj, dict) or "values" not in obj or "n" not in obj:
            raise ValueError("CharTriangle JSON needs 'n' and 'values'")
        values = {}
        for key, v in obj["values"].items():
            try:
                i, h = (int(t) for t in key.split(","))
            except ValueError:
                raise ValueError(f"bad CharTriangle key {key!r}") from None
            if not 1 <= h <= i <= obj["n"]:
                raise ValueError(f"key {key!r} out of range")
            values[(i, h)] = parse_rational(v)
        return cls(int(obj["n"]), values)


def check_lower_borel(a: Mat) -> Mat:
    if not a.is_lower():
        raise ValueError("matrix is not lower triangular")
    if any(d == 0 for d in a.diagonal()):
        raise ValueError("lower Borel element needs a nonzero diagonal")
    return a


def ones_upper(n: int) -> Mat:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Mat([[1 if i <= j else 0 for j in range(n)] for i in range(n)])


def indu_minor(a: Mat, idx: Sequence[int]) -> Fraction:
    """Closed form of the principal minor of ``A C_n`` on 1-based rows ``idx``."""
    if any(j <= i for i, j in zip(idx, idx[1:])) or not idx:
        raise ValueError(f"index list {list(idx)} must be strictly increasing and nonempty")
    if idx[0] < 1 or idx[-1] > a.n:
        raise ValueError("index out of range")
    out = Fraction(1)
    prev = 0
    for i in idx:
        out *= sum((a[i - 1, j - 1] for j in range(prev + 1, i + 1)), Fraction(0))
        prev = i
    return out


def brute_minor(a: Mat, idx: Sequence[int]) -> Fraction:
    d = a @ ones_upper(a.n)
    return det(submatrix(d, [i - 1 for i in idx]))


def block_coefficients(a: Mat, i: int) -> tuple:
    """Principal-minor sums of ``A_i C_i``."""
    return principal_minor_sums(leading_block(a, i) @ ones_upper(i))


def _with_entry(a: Mat, h: int, k: int, v: Any) -> Mat:
    rows = [list(r) for r in a.rows]
    rows[h - 1][k - 1] = v
    return Mat(rows)


def entry_dependence(a: Mat, h: int, k: int, r: int) -> dict:
    """How ``P_r(A C_n)`` depends on the entry ``a_{h,k}`` at the point ``A``.

    ``slope`` is the exact derivative (dual numbers); ``curvature`` is the second
    difference ``P(a+1) - 2 P(a) + P(a-1)`` in that entry, zero iff affine there.
    """
    n = a.n
    if not (1 <= k <= h <= n and 1 <= r <= n):
        raise ValueError(f"need 1 <= k <= h <= n and 1 <= r <= n, got h={h}, k={k}, r={r}")
    c = ones_upper(n)
    v = a[h - 1, k - 1]
    tag = new_tag()
    p = principal_minor_sums(_with_entry(a, h, k, Dual(v, Fraction(1), tag)) @ c)[r - 1]
    vals = [principal_minor_sums(_with_entry(a, h, k, v + d) @ c)[r - 1] for d in (-1, 0, 1)]
    return {"slope": eps_part(p, tag), "curvature": vals[0] - 2 * vals[1] + vals[2]}


def predicted_slope(a: Mat, h: int, k: int) -> Fraction:
    """``prod_{t<k} a_{t,t} * prod_{t>h} a_{t,t}``."""
    out = Fraction(1)
    for t in list(range(1, k)) + list(range(h + 1, a.n + 1)):
        out *= a[t - 1, t - 1]
    return out


def check_entry_dependence(a: Mat) -> list:
    """Every ``(h, k, r)`` at which the depth rule fails; empty when it holds.

    The rule: no dependence when ``n - h + k < r``; affine with slope
    ``predicted_slope`` when ``n - h + k == r``.
    """
    check_lower_borel(a)
    n = a.n
    failures = []
    for h in range(1, n + 1):
        for k in range(1, h + 1):
            for r in range(1, n + 1):
                depth = n - h + k
                if depth > r:
                    continue
                dep = entry_dependence(a, h, k, r)
                if depth < r:
                    ok = dep["slope"] == 0 and dep["curvature"] == 0
                else:
                    ok = dep["curvature"] == 0 and dep["slope"] == predicted_slope(a, h, k)
                if not ok:
                    failures.append({"h": h, "k": k, "r": r, "slope": str(dep["slope"])})
    return failures


def pi_map(a: Mat) -> CharTriangle:
    check_lower_borel(a)
    values = {}
    for i in range(1, a.n + 1):
        for h, p in enumerate(block_coefficients(a, i), start=1):
            values[(i, h)] = p
    return CharTriangle(a.n, values)


def _set(rows: list, i: int, j: int, v: Any) -> None:
    rows[i - 1][j - 1] = v


def pi_inverse(c: CharTriangle) -> Mat:
    n = c.n
    if c.levels != tuple(range(1, n + 1)):
        raise ValueError("pi_inverse needs data for every block size 1..n")
    rows = [[Fraction(0)] * n for _ in range(n)]
    prev = Fraction(1)
    for h in range(1, n + 1):
        _set(rows, h, h, c[h, h] / prev)
        prev = c[h, h]
    for r in range(1, n):
        for m in range(r + 1, n + 1):
            k = m - r
            # unknown a_{m,k} still 0 here: evaluate the rest of P_k^{(m)}
            q = block_coefficients(Mat(rows), m)[k - 1]
            lead = Fraction(1)
            for t in range(1, k):
                lead *= rows[t - 1][t - 1]
            _set(rows, m, k, (c[m, k] - q) / lead)
    return Mat(rows)


def simultaneous_quotient(u: Mat, v: Mat) -> CharTriangle:
    """Coefficients of every ``U_i V_i`` for ``U`` lower Borel, ``V`` upper unitriangular."""
    check_lower_borel(u)
    if u.n != v.n:
        raise ValueError("dimension mismatch")
    if not v.is_upper() or any(d != 1 for d in v.diagonal()):
        raise ValueError("V must be upper unitriangular")
    values = {}
    for i in range(1, u.n + 1):
        coeffs = principal_minor_sums(leading_block(u, i) @ leading_block(v, i))
        for h, p in enumerate(coeffs, start=1):
            values[(i, h)] = p
    return CharTriangle(u.n, values)


# --- subsequence variant --------------------------------------------------------


def check_chain(chain: Sequence[int], n: int) -> tuple:
    chain = tuple(int(i) for i in chain)
    if not chain or chain[-1] != n or chain[0] < 1:
        raise ValueError(f"chain {chain} must end at n={n} and start >= 1")
    if any(b <= a for a, b in zip(chain, chain[1:])):
        raise ValueError(f"chain {chain} is not strictly increasing")
    return chain


@dataclass(frozen=True)
class StructuredA:
    """Lower-triangular matrix free only in the rows listed in ``chain``.

    Other rows are those of the identity.
    """

    chain: tuple
    matrix: Mat

    def __post_init__(self):
        a = self.matrix
        check_chain(self.chain, a.n)
        check_lower_borel(a)
        for i in range(1, a.n + 1):
            if i in self.chain:
                continue
            for j in range(1, a.n + 1):
                if a[i - 1, j - 1] != (1 if i == j else 0):
                    raise ValueError(f"row {i} is not free but differs from the identity row")

    @property
    def n(self) -> int:
        return self.matrix.n

    @classmethod
    def from_rows(cls, chain: Sequence[int], free_rows: dict) -> "StructuredA":
        """``free_rows[i]`` lists ``a_{i,1..i}`` for each ``i`` in the chain."""
        chain = tuple(chain)
        n = chain[-1]
        rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for i in chain:
            vals = free_rows[i]
            if len(vals) != i:
                raise ValueError(f"row {i} needs {i} entries")
            rows[i - 1][:i] = [Fraction(v) for v in vals]
        return cls(chain, Mat(rows))


def structured_pi(s: StructuredA) -> CharTriangle:
    values = {}
    for i in s.chain:
        for h, p in enumerate(block_coefficients(s.matrix, i), start=1):
            values[(i, h)] = p
    return CharTriangle(s.n, values)


def structured_pi_inverse(c: CharTriangle, chain: Sequence[int]) -> StructuredA:
    """Unique structured preimage, solved row by row along the chain.

    Within row ``m`` the entry at depth ``d`` (column ``m-d``) is fixed by
    ``P_{m-d}^{(m)}``; shallower entries of the row and all earlier rows are known.
    """
    n = c.n
    chain = check_chain(chain, n)
    if c.levels != chain:
        raise ValueError(f"data levels {c.levels} do not match chain {chain}")
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    prev_det = Fraction(1)
    for m in chain:
        rows[m - 1][m - 1] = c[m, m] / prev_det
        prev_det = c[m, m]
        for d in range(1, m):
            k = m - d
            rows[m - 1][k - 1] = Fraction(0)
            q = block_coefficients(Mat(rows), m)[k - 1]
            lead = Fraction(1)
            for t in range(1, k):
                lead *= rows[t - 1][t - 1]
            rows[m - 1][k - 1] = (c[m, k] - q) / lead
    return StructuredA(chain, Mat(rows))


def all_chains(n: int):
    """Every strictly increasing chain ending at n."""
    for k in range(n):
        for head in itertools.combinations(range(1, n), k):
            yield head + (n,)


def random_lower_borel(n: int, rng, bound: int = 5) -> Mat:
    """Entries uniform on ``-bound..bound``; diagonal drawn from the nonzero values."""
    nonzero = [v for v in range(-bound, bound + 1) if v]
    return Mat(
        [
            [rng.choice(nonzero) if i == j else rng.randint(-bound, bound) if j < i else 0 for j in range(n)]
            for i in range(n)
        ]
    )


def random_structured(chain: Sequence[int], rng, bound: int = 5) -> StructuredA:
    nonzero = [v for v in range(-bound, bound + 1) if v]
    rows = {i: [rng.randint(-bound, bound) for _ in range(i - 1)] + [rng.choice(nonzero)] for i in chain}
    return StructuredA.from_rows(chain, rows)
