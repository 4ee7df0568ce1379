"""Exact scalar and matrix arithmetic.

Scalars are ``fractions.Fraction`` (the exact ground field), ``Dual`` numbers
for exact directional derivatives, or plain floats for numerical flows.
Matrices are immutable and hold one of these kinds per entry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Any, Callable, Iterable, Sequence

Rational = Fraction

_tag_counter = itertools.count(1)


def new_tag() -> int:
    """A fresh perturbation tag; later tags nest outside earlier ones."""
    return next(_tag_counter)


class Dual:
    """Number ``value + deriv * eps`` with ``eps**2 == 0``.

    ``tag`` identifies the infinitesimal. Duals with different tags never mix
    their eps-parts: the lower-tagged operand is treated as a constant of the
    higher-tagged one, which makes nested differentiation safe.
    """

    __slots__ = ("value", "deriv", "tag")

    def __init__(self, value: Any, deriv: Any = 0, tag: int = 0):
        self.value = value
        self.deriv = deriv
        self.tag = tag

    def _split(self, other):
        # returns other's (value, deriv) seen from self's tag, or None to defer
        if isinstance(other, Dual):
            if other.tag == self.tag:
                return other.value, other.deriv
            if other.tag > self.tag:
                return None
        return other, 0

    # same-type operands never reach the reflected method, so an operand with
    # a higher tag is handed the operation explicitly

    def __add__(self, other):
        s = self._split(other)
        if s is None:
            return other.__add__(self)
        return Dual(self.value + s[0], self.deriv + s[1], self.tag)

    __radd__ = __add__

    def __sub__(self, other):
        s = self._split(other)
        if s is None:
            return other.__rsub__(self)
        return Dual(self.value - s[0], self.deriv - s[1], self.tag)

    def __rsub__(self, other):
        return Dual(other - self.value, -self.deriv, self.tag)

    def __mul__(self, other):
        s = self._split(other)
        if s is None:
            return other.__mul__(self)
        c, d = s
        return Dual(self.value * c, self.value * d + self.deriv * c, self.tag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        s = self._split(other)
        if s is None:
            return other.__rtruediv__(self)
        c, d = s
        if c == 0:
            raise ZeroDivisionError("dual division by a pure infinitesimal")
        return Dual(self.value / c, (self.deriv * c - self.value * d) / (c * c), self.tag)

    def __rtruediv__(self, other):
        if self.value == 0:
            raise ZeroDivisionError("dual division by a pure infinitesimal")
        return Dual(other / self.value, -other * self.deriv / (self.value * self.value), self.tag)

    def __neg__(self):
        return Dual(-self.value, -self.deriv, self.tag)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out: Any = Fraction(1)
        for _ in range(k):
            out = self * out
        return out

    def __eq__(self, other):
        s = self._split(other)
        if s is None:
            return other.__eq__(self)
        return self.value == s[0] and self.deriv == s[1]

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Dual({self.value!r}, {self.deriv!r}, tag={self.tag})"


def eps_part(v: Any, tag: int) -> Any:
    """Coefficient of the ``tag`` infinitesimal in ``v`` (0 if absent)."""
    if isinstance(v, Dual) and v.tag == tag:
        return v.deriv
    return Fraction(0)


def real_part(v: Any, tag: int) -> Any:
    if isinstance(v, Dual) and v.tag == tag:
        return v.value
    return v


def base_value(v: Any) -> Any:
    """Strip every infinitesimal layer."""
    while isinstance(v, Dual):
        v = v.value
    return v


def _coerce(v: Any) -> Any:
    if isinstance(v, bool):
        raise TypeError("bool is not a matrix scalar")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return parse_rational(v)
    return v


@dataclass(frozen=True)
class Mat:
    """Immutable dense square matrix, 0-based ``m[i, j]`` indexing."""

    rows: tuple

    def __init__(self, rows: Iterable[Iterable[Any]]):
        data = tuple(tuple(_coerce(v) for v in row) for row in rows)
        n = len(data)
        if any(len(r) != n for r in data):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", data)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        _same_size(self, other)
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        _same_size(self, other)
        return Mat([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return self.map(lambda v: -v)

    def scale(self, c: Any) -> "Mat":
        return self.map(lambda v: c * v)

    def map(self, fn: Callable[[Any], Any]) -> "Mat":
        return Mat([[fn(v) for v in r] for r in self.rows])

    @property
    def T(self) -> "Mat":
        return Mat(zip(*self.rows)) if self.n else Mat([])

    def trace(self) -> Any:
        return sum((self.rows[i][i] for i in range(self.n)), _zero_like(self))

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.n))

    def is_upper(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(i))

    def is_lower(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(i + 1, self.n))

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        return "Mat(" + repr([[str(v) for v in r] for r in self.rows]) + ")"


def _same_size(a: Mat, b: Mat) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def identity(n: int) -> Mat:
    return Mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def zeros(n: int) -> Mat:
    return Mat([[0] * n for _ in range(n)])


def unit(n: int, p: int, q: int, c: Any = 1) -> Mat:
    """``c * E_{pq}`` with 0-based indices."""
    return Mat([[c if (i, j) == (p, q) else 0 for j in range(n)] for i in range(n)])


def diag(values: Sequence[Any]) -> Mat:
    n = len(values)
    return Mat([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])


def mat_mul(a: Mat, b: Mat) -> Mat:
    _same_size(a, b)
    cols = list(zip(*b.rows))
    zero = _zero_like(a, b)
    out = []
    for r in a.rows:
        row = []
        for c in cols:
            acc: Any = None
            for x, y in zip(r, c):
                if x != 0 and y != 0:
                    acc = x * y if acc is None else x * y + acc
            row.append(zero if acc is None else acc)
        out.append(row)
    return Mat(out)


def _zero_like(*ms: Mat) -> Any:
    # float zero for float matrices, so sums never mix Fraction and float
    for m in ms:
        for r in m.rows:
            for v in r:
                if isinstance(base_value(v), float):
                    return 0.0
    return Fraction(0)


def leading_block(m: Mat, i: int) -> Mat:
    """The ``i x i`` leading principal submatrix."""
    if not 1 <= i <= m.n:
        raise ValueError(f"block size {i} out of range 1..{m.n}")
    return Mat([r[:i] for r in m.rows[:i]])


def submatrix(m: Mat, idx: Sequence[int]) -> Mat:
    """Principal submatrix on the 0-based index list ``idx``."""
    return Mat([[m.rows[i][j] for j in idx] for i in idx])


def _all_fraction(m: Mat) -> bool:
    return all(isinstance(v, Fraction) for r in m.rows for v in r)


def bareiss_det(m: Mat) -> Fraction:
    """Fraction-free elimination; every division is exact."""
    n = m.n
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in m.rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _berkowitz(a: list, zero: Any) -> list:
    n = len(a)
    if n == 0:
        return [zero + 1]
    poly: list = [zero + 1, -a[0][0]]
    for k in range(1, n):
        # leading (k+1)-block = [[A, col], [row, a_kk]]
        row = a[k][:k]
        vec = [a[i][k] for i in range(k)]
        toeplitz: list = [zero + 1, -a[k][k]]
        for _ in range(k):
            acc = zero
            for r, v in zip(row, vec):
                acc = acc + r * v
            toeplitz.append(-acc)
            nxt = []
            for i in range(k):
                acc = zero
                ai = a[i]
                for j in range(k):
                    acc = acc + ai[j] * vec[j]
                nxt.append(acc)
            vec = nxt
        new = []
        for i in range(k + 2):
            acc = zero
            for j in range(max(0, i - k - 1), min(i, k) + 1):
                acc = acc + toeplitz[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly


def charpoly(m: Mat) -> list:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(t I - m)``, division-free (Berkowitz)."""
    if _all_fraction(m):
        # clear denominators: c_r(N / L) = c_r(N) / L**r with N integral
        den = 1
        for r in m.rows:
            for v in r:
                den = lcm(den, v.denominator)
        ints = [[v.numerator * (den // v.denominator) for v in r] for r in m.rows]
        return [Fraction(c, den**k) for k, c in enumerate(_berkowitz(ints, 0))]
    return _berkowitz([list(r) for r in m.rows], Fraction(0))


def det(m: Mat) -> Any:
    if _all_fraction(m):
        return bareiss_det(m)
    if m.n == 0:
        return Fraction(1)
    return (-1) ** m.n * charpoly(m)[-1]


def principal_minor_sums(m: Mat) -> tuple:
    """``(P_1, ..., P_n)`` with ``P_r`` the sum of all ``r x r`` principal minors."""
    c = charpoly(m)
    return tuple(c[r] if r % 2 == 0 else -c[r] for r in range(1, m.n + 1))


def brute_force_minor_sums(m: Mat) -> tuple:
    """Oracle: enumerate every principal minor explicitly."""
    n = m.n
    return tuple(
        sum((det(submatrix(m, s)) for s in itertools.combinations(range(n), r)), Fraction(0))
        for r in range(1, n + 1)
    )


def triangular_inverse(m: Mat, min_pivot: float | None = None) -> Mat:
    """Inverse of a triangular matrix by substitution.

    ``min_pivot`` rejects diagonal entries of smaller magnitude (float mode).
    """
    n = m.n
    upper, lower = m.is_upper(), m.is_lower()
    if not (upper or lower):
        raise ValueError("matrix is not triangular")
    for k in range(n):
        d = base_value(m[k, k])
        if d == 0 or (min_pivot is not None and abs(d) < min_pivot):
            raise ZeroDivisionError(f"singular triangular matrix: diagonal entry {k} is {d}")
    if upper and not lower:
        return triangular_inverse(m.T).T
    # forward substitution on a lower-triangular matrix, one column at a time
    zero = _zero_like(m)
    inv = [[zero] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = 1 / m[j, j]
        for i in range(j + 1, n):
            acc: Any = zero
            for k in range(j, i):
                if m[i, k] != 0:
                    acc = m[i, k] * inv[k][j] + acc
            inv[i][j] = -acc / m[i, i]
    return Mat(inv)


def rank(vectors: Sequence[Sequence[Any]]) -> int:
    """Exact rank of a list of rows (Gaussian elimination over Fraction)."""
    rows = [[Fraction(v) for v in r] for r in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


# --- JSON helpers -----------------------------------------------------------


def parse_rational(s: Any) -> Fraction:
    """Parse ``"p/q"`` or a decimal integer; reject zero denominators."""
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"rational must be a string or integer, got {s!r}")
    text = s.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {s!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(p, q)


def format_scalar(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return v
    raise TypeError(f"cannot serialize scalar {v!r}")


def mat_to_json(m: Mat) -> dict:
    return {"n": m.n, "entries": [[format_scalar(v) for v in r] for r in m.rows]}


def mat_from_json(obj: Any) -> Mat:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ValueError("matrix JSON needs an 'entries' field")
    entries = obj["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ValueError("'entries' must be a list of rows")
    m = Mat([[parse_rational(v) for v in r] for r in entries])
    if "n" in obj and obj["n"] != m.n:
        raise ValueError(f"declared n={obj['n']} but entries are {m.n}x{m.n}")
    return m
