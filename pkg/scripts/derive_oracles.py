"""Derive reference values with sympy and freeze them in tests/data/oracles.json.

Everything here is computed without the package: matrices, products, minors
and derivatives all come from sympy, so the frozen numbers are an independent
check on the exact code paths. Rerun only when adding cases.
"""

from __future__ import annotations

import argparse
import itertools
import json
from pathlib import Path

import sympy as sp

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "oracles.json"


def s(v) -> str:
    return str(sp.nsimplify(v))


def minor_sums(m: sp.Matrix) -> list:
    n = m.shape[0]
    return [s(sum(m.extract(list(idx), list(idx)).det() for idx in itertools.combinations(range(n), r))) for r in range(1, n + 1)]


CHARPOLY_CASES = [
    [[2, -1, 0], [3, 5, sp.Rational(1, 2)], [-4, 0, 7]],
    [[1, 2, 3, 4], [0, -1, sp.Rational(2, 3), 5], [7, 0, 0, 1], [-2, 3, 1, sp.Rational(-5, 4)]],
    [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [3, -2, 0, 1, 4]],
]


def charpoly_cases() -> list:
    out = []
    for rows in CHARPOLY_CASES:
        m = sp.Matrix(rows)
        t = sp.Symbol("t")
        poly = sp.Poly((t * sp.eye(m.shape[0]) - m).det(), t)
        n = m.shape[0]
        coeffs = poly.all_coeffs()  # t^n, t^(n-1), ...
        p = [s((-1) ** r * coeffs[r]) for r in range(1, n + 1)]
        out.append({"matrix": [[s(v) for v in r] for r in rows], "minor_sums": p, "det": s(m.det())})
    return out


def x_alpha(i, a, n):
    m = sp.eye(n)
    m[i - 1, i] = a
    return m


def s_alpha(i, n):
    m = sp.eye(n)
    m[i - 1, i - 1] = 0
    m[i, i] = 0
    m[i - 1, i] = 1
    m[i, i - 1] = -1
    return m


def steinberg_cases() -> list:
    out = []
    for n, order, params in [
        (2, [1], [3]),
        (3, [1, 2], [2, -3]),
        (3, [2, 1], [sp.Rational(1, 2), 4]),
        (4, [1, 2, 3], [1, -1, 2]),
        (4, [2, 3, 1], [-2, 5, sp.Rational(3, 7)]),
    ]:
        m = sp.eye(n)
        for i in reversed(order):
            m = m * x_alpha(i, params[i - 1], n) * s_alpha(i, n)
        out.append(
            {
                "n": n,
                "order": order,
                "params": [s(p) for p in params],
                "matrix": [[s(v) for v in m.row(r)] for r in range(n)],
                "minor_sums": minor_sums(m),
            }
        )
    # symbolic: coefficients of the standard-order section as polynomials in a
    sym = []
    for n in range(2, 6):
        a = sp.symbols(f"a1:{n}")
        m = sp.eye(n)
        for i in reversed(range(1, n)):
            m = m * x_alpha(i, a[i - 1], n) * s_alpha(i, n)
        sym.append({"n": n, "minor_sums": [str(sp.expand(v)) for v in _sym_minor_sums(m)]})
    return out, sym


def _sym_minor_sums(m):
    n = m.shape[0]
    return [sum(m.extract(list(idx), list(idx)).det() for idx in itertools.combinations(range(n), r)) for r in range(1, n + 1)]


def pi_cases() -> list:
    out = []
    for rows in [
        [[2, 0], [3, 5]],
        [[1, 0, 0], [-2, 3, 0], [4, sp.Rational(1, 2), -1]],
        [[-3, 0, 0, 0], [1, 2, 0, 0], [0, -5, 1, 0], [2, 2, 4, sp.Rational(-2, 3)]],
    ]:
        a = sp.Matrix(rows)
        n = a.shape[0]
        values = {}
        for i in range(1, n + 1):
            c = sp.Matrix(i, i, lambda r, q: 1 if r <= q else 0)
            d = a[:i, :i] * c
            for h, v in enumerate(minor_sums(d), start=1):
                values[f"{i},{h}"] = v
        out.append({"matrix": [[s(v) for v in r] for r in rows], "values": values})
    return out


def bracket_cases() -> list:
    """Bivector of the chart coordinates of H at fixed points, n = 2 and 3."""
    out = []
    for n, xrows, ydiag_low in [
        (2, [[2, 3], [0, -1]], {(2, 1): 4}),
        (3, [[1, 2, -1], [0, 3, 1], [0, 0, -2]], {(2, 1): 1, (3, 1): -2, (3, 2): 5}),
    ]:
        x = sp.Matrix(xrows)
        y = sp.zeros(n)
        for k in range(n):
            y[k, k] = 1 / x[k, k]
        for (p, q), v in ydiag_low.items():
            y[p - 1, q - 1] = v
        X = sp.Matrix(n, n, lambda i, j: sp.Symbol(f"X{i}{j}") if i <= j else 0)
        Y = sp.Matrix(n, n, lambda i, j: sp.Symbol(f"Y{i}{j}") if i >= j else 0)
        labels = [("x", p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]
        labels += [("y", p, q) for p in range(1, n + 1) for q in range(1, p)]
        labels += [("x", k, k) for k in range(1, n + 1)]
        eps = sp.Symbol("eps")
        subs = {X[i, j]: x[i, j] for i in range(n) for j in range(i, n)}
        subs.update({Y[i, j]: y[i, j] for i in range(n) for j in range(i + 1)})

        def moves(m, new):
            return {m[i, j]: new[i, j] for i in range(n) for j in range(n) if m[i, j] != 0}

        def unit(p, q):
            e = sp.zeros(n)
            e[p, q] = 1
            return e

        def diff_matrix(expr):
            z = sp.zeros(n)
            for p in range(n):
                for q in range(n):
                    if p < q:
                        moved = expr.subs(moves(X, X * (sp.eye(n) + eps * unit(p, q))), simultaneous=True)
                        z[q, p] = sp.diff(moved, eps).subs(eps, 0).subs(subs)
                    elif p > q:
                        moved = expr.subs(moves(Y, Y * (sp.eye(n) + eps * unit(p, q))), simultaneous=True)
                        z[q, p] = -sp.diff(moved, eps).subs(eps, 0).subs(subs)
                    else:
                        mx = moves(X, X * (sp.eye(n) + eps * unit(p, p)))
                        my = moves(Y, Y * (sp.eye(n) - eps * unit(p, p)))
                        moved = expr.subs({**mx, **my}, simultaneous=True)
                        z[p, p] = sp.diff(moved, eps).subs(eps, 0).subs(subs) / 2
            return z

        def coord(f, p, q):
            return (X if f == "x" else Y)[p - 1, q - 1]

        zs = [diff_matrix(coord(*lab)) for lab in labels]
        xi, yi = x.inv(), y.inv()

        def br(zf, zg):
            a = x * zf * xi
            b = y * zf * yi
            d = a - b
            r = sp.Matrix(n, n, lambda i, j: d[i, j] if i > j else (-d[i, j] if i < j else 0))
            w = (a + b + r) / 2
            c = x * zg * xi - y * zg * yi
            return sp.nsimplify((w * c).trace())

        biv = [[s(br(za, zb)) for zb in zs] for za in zs]
        out.append(
            {
                "n": n,
                "x": [[s(v) for v in x.row(r)] for r in range(n)],
                "y": [[s(v) for v in y.row(r)] for r in range(n)],
                "labels": ["".join(map(str, lab)) for lab in labels],
                "bivector": biv,
            }
        )
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    st, st_sym = steinberg_cases()
    data = {
        "charpoly": charpoly_cases(),
        "steinberg": st,
        "steinberg_symbolic": st_sym,
        "pi": pi_cases(),
        "bivector": bracket_cases(),
    }
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
