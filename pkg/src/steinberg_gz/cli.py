"""Command-line entry point: JSON in, deterministic JSON report out.

Exit codes: 0 success with no violations, 1 verification violations,
2 bad input (malformed JSON, invalid matrices, bad flags) or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import gzparam, poisson, roots, steinberg, suite
from .algebra import format_scalar, mat_from_json, mat_to_json, parse_rational

COMMANDS = (
    "steinberg",
    "pi",
    "pi-inv",
    "r-quotient",
    "gz-check",
    "casimir",
    "rank",
    "flow",
    "branch",
    "lemma-suite",
)

# claim tags reported in every header
REFS = {
    "steinberg": ["beta-form", "section-regular", "section-invertible"],
    "pi": ["pi-isomorphism"],
    "pi-inv": ["pi-isomorphism"],
    "r-quotient": ["quotient-section-isomorphism"],
    "gz-check": ["gz-commutative"],
    "casimir": ["casimir-centrality"],
    "rank": ["integrable-dimensions"],
    "flow": ["gz-commutative", "casimir-centrality"],
    "branch": ["branching-multiplicity", "degree-arithmetic"],
    "lemma-suite": sorted(
        [
            "beta-sum-not-root",
            "lower-upper-factorization",
            "beta-form",
            "minor-product-formula",
            "entry-depth-dependence",
            "pi-isomorphism",
            "quotient-section-isomorphism",
            "gz-commutative",
            "casimir-centrality",
            "integrable-dimensions",
        ]
    ),
}

MAX_N_ENV = "STEINBERG_GZ_MAX_N"


class InputError(ValueError):
    """Bad flags or payload; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int = 3
    seed: int = 0
    samples: int = 5
    in_path: str | None = None
    out_path: str | None = None
    float_mode: bool = False
    mutate: bool = False
    m: int | None = None
    ell: int = 3
    dt: str = "0.001"
    steps: int = 1000
    hamiltonian: str = "d1"
    traj_path: str | None = None
    exact: bool = False
    tol: float | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.n < 1:
            raise InputError("--n must be >= 1")
        if self.samples < 1:
            raise InputError("--samples must be >= 1")
        if self.steps < 0:
            raise InputError("--steps must be >= 0")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="steinberg-gz", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=5, help="random points or matrices per size")
    p.add_argument("--float", dest="float_mode", action="store_true", help="gz-check in IEEE double")
    p.add_argument("--in", dest="in_path", help="JSON payload file, '-' for stdin")
    p.add_argument("--out", dest="out_path", help="report file (default stdout)")
    p.add_argument("--mutate", action="store_true", help="sign-flipped bracket, to show checks can fail")
    p.add_argument("--m", type=int, help="branch: size of the smaller GL (default n-1)")
    p.add_argument("--ell", type=int, default=3, help="branch: odd order of the root of unity")
    p.add_argument("--dt", default="0.001", help="flow: step size (rational string with --exact)")
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--hamiltonian", default="d1", help="flow: 'dJ' or 'fI,K'")
    p.add_argument("--traj", dest="traj_path", help="flow: write chart coordinates as JSON lines")
    p.add_argument("--exact", action="store_true", help="flow: integrate over Fraction")
    p.add_argument("--tol", type=float, help="flow drift / float bracket tolerance")
    return p


def parse_config(argv: list | None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(**vars(ns))


def max_n() -> int:
    raw = os.environ.get(MAX_N_ENV)
    if raw is None:
        return suite.DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{MAX_N_ENV} must be an integer, got {raw!r}") from None


# --- payloads -----------------------------------------------------------------------


def load_payload(cfg: RunConfig) -> Any:
    if cfg.in_path is None:
        return None
    try:
        if cfg.in_path == "-":
            text = sys.stdin.read()
        else:
            with open(cfg.in_path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {cfg.in_path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def _rationals(values: Any, what: str) -> tuple:
    if not isinstance(values, list):
        raise InputError(f"{what} must be a JSON array")
    return tuple(parse_rational(v) for v in values)


def _fmt_list(values) -> list:
    return [format_scalar(v) for v in values]


# --- commands ---------------------------------------------------------------------


def cmd_steinberg(cfg: RunConfig, payload: Any) -> dict:
    order = torus = None
    if payload is None:
        rng = random.Random(cfg.seed)
        n = cfg.n
        params = tuple(Fraction(rng.randint(-5, 5)) for _ in range(n - 1))
    else:
        if isinstance(payload, list):
            payload = {"params": payload}
        if not isinstance(payload, dict) or "params" not in payload:
            raise InputError("steinberg payload needs 'params'")
        params = _rationals(payload["params"], "params")
        n = len(params) + 1
        if payload.get("order") is not None:
            order = roots.Ordering(payload["order"])
        if payload.get("torus") is not None:
            torus = _rationals(payload["torus"], "torus")
    order = order or roots.Ordering.standard(n)
    if len(order) != n - 1:
        raise InputError(f"order has length {len(order)}, expected {n - 1}")
    inp = steinberg.SteinbergInput(order, params, torus)
    st = steinberg.steinberg_section(inp)
    coeffs = steinberg.principal_minor_sums(st)
    violations = []
    out: dict = {"n": n, "params": _fmt_list(params), "order": list(order.seq), "matrix": mat_to_json(st)}
    out["coefficients"] = _fmt_list(coeffs)
    if torus is None:
        out["torus"] = None
        agrees = steinberg.steinberg_beta_form(inp) == st
        out["beta_form_agrees"] = agrees
        if not agrees:
            violations.append("beta form differs from the section")
    else:
        out["torus"] = _fmt_list(torus)
    kr = steinberg.cyclic_rank(st)
    out["krylov_rank"] = kr
    if kr != n:
        violations.append(f"Krylov rank {kr} < {n}: section element not regular")
    if torus is None and order == roots.Ordering.standard(n):
        back = steinberg.steinberg_invert(coeffs[: n - 1], n)
        out["inverted_params"] = _fmt_list(back)
        if back != tuple(params):
            violations.append("inversion did not recover the parameters")
    out["violations"] = violations
    return out


def cmd_pi(cfg: RunConfig, payload: Any) -> dict:
    if payload is None:
        a = gzparam.random_lower_borel(cfg.n, random.Random(cfg.seed))
    else:
        a = mat_from_json(payload)
    gzparam.check_lower_borel(a)
    c = gzparam.pi_map(a)
    ok = gzparam.pi_inverse(c) == a
    return {
        "n": a.n,
        "input": mat_to_json(a),
        "result": c.to_json(),
        "round_trip": ok,
        "violations": [] if ok else ["pi_inverse(pi_map(A)) != A"],
    }


def cmd_pi_inv(cfg: RunConfig, payload: Any) -> dict:
    if payload is None:
        c = gzparam.pi_map(gzparam.random_lower_borel(cfg.n, random.Random(cfg.seed)))
    else:
        c = gzparam.CharTriangle.from_json(payload)
    a = gzparam.pi_inverse(c)
    ok = gzparam.pi_map(a).values == c.values
    return {
        "n": c.n,
        "input": c.to_json(),
        "result": mat_to_json(a),
        "round_trip": ok,
        "violations": [] if ok else ["pi_map(pi_inverse(c)) != c"],
    }


def cmd_r_quotient(cfg: RunConfig, payload: Any) -> dict:
    if payload is not None:
        if not isinstance(payload, dict) or "u" not in payload or "v" not in payload:
            raise InputError("r-quotient payload needs 'u' and 'v' matrices")
        u, v = mat_from_json(payload["u"]), mat_from_json(payload["v"])
        c = gzparam.simultaneous_quotient(u, v)
        out = {"n": u.n, "result": c.to_json(), "violations": []}
        if v == gzparam.ones_upper(v.n):
            agrees = c.values == gzparam.pi_map(u).values
            out["agrees_with_pi"] = agrees
            if not agrees:
                out["violations"].append("r(U, C_n) != pi_map(U)")
        return out
    cap = max_n()
    if cfg.n > cap:
        raise InputError(f"--n {cfg.n} exceeds {MAX_N_ENV}={cap}")
    sec = suite.quotient_identity(suite.SuiteConfig(n=cfg.n, seed=cfg.seed, samples=cfg.samples))
    return {"n": cfg.n, "checked": sec.checked, "violations": sec.details["failures"]}


def cmd_gz_check(cfg: RunConfig, payload: Any) -> dict:
    tol = cfg.tol if cfg.tol is not None else 1e-9
    rep = poisson.verify_commutative(cfg.n, cfg.samples, cfg.seed, float_mode=cfg.float_mode, tol=tol, mutate=cfg.mutate)
    rep["family_size"] = len(poisson.gz_family(cfg.n))
    return rep


def cmd_casimir(cfg: RunConfig, payload: Any) -> dict:
    return poisson.casimir_check(cfg.n, cfg.seed, points=cfg.samples, mutate=cfg.mutate)


def cmd_rank(cfg: RunConfig, payload: Any) -> dict:
    rep = poisson.rank_report(cfg.n, cfg.seed)
    violations = []
    if rep["family_rank"] != rep["expected_family_rank"]:
        violations.append("family rank differs from n(n+1)/2")
    if rep["bivector_rank"] != rep["expected_bivector_rank"]:
        violations.append("bivector rank differs from n^2 - n")
    rep["violations"] = violations
    return rep


def parse_hamiltonian(name: str, n: int) -> poisson.SmoothFn:
    try:
        if name.startswith("d"):
            j = int(name[1:])
            if 1 <= j <= n:
                return poisson.diag_function(j)
        elif name.startswith("f"):
            i, k = (int(t) for t in name[1:].split(","))
            if 1 <= k <= i <= n:
                return poisson.gz_function(i, k)
    except ValueError:
        pass
    raise InputError(f"unknown Hamiltonian {name!r} for n={n}; use dJ or fI,K")


def cmd_flow(cfg: RunConfig, payload: Any) -> dict:
    if payload is None:
        p0 = poisson.random_h_point(cfg.n, random.Random(cfg.seed))
    else:
        if not isinstance(payload, dict) or "x" not in payload or "y" not in payload:
            raise InputError("flow payload needs 'x' and 'y' matrices")
        p0 = poisson.h_point(mat_from_json(payload["x"]), mat_from_json(payload["y"]))
    n = p0.n
    f = parse_hamiltonian(cfg.hamiltonian, n)
    try:
        dt: Any = parse_rational(cfg.dt) if cfg.exact else float(cfg.dt)
    except ValueError:
        raise InputError(f"bad --dt {cfg.dt!r}") from None
    if not cfg.exact:
        p0 = poisson.to_float(p0)
    if dt < 0:
        raise InputError("--dt must be nonnegative")
    res = poisson.hamiltonian_flow(f, p0, dt, cfg.steps)
    tol = cfg.tol if cfg.tol is not None else 1e-6
    if cfg.traj_path:
        try:
            with open(cfg.traj_path, "w", encoding="utf-8") as fh:
                for s, (t, c) in enumerate(zip(res.times, res.trajectory)):
                    row = {"chart": _fmt_list(c), "step": s, "t": format_scalar(t)}
                    fh.write(json.dumps(row, sort_keys=True) + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {cfg.traj_path}: {exc}") from None
    drift = {k: float(v) for k, v in sorted(res.drift.items())}
    bad = sorted(k for k, v in drift.items() if v > tol)
    return {
        "n": n,
        "hamiltonian": f.name,
        "dt": format_scalar(dt),
        "steps": cfg.steps,
        "mode": "exact" if cfg.exact else "float",
        "labels": ["".join(map(str, lab)) for lab in poisson.chart_labels(n)],
        "start": _fmt_list(res.trajectory[0]),
        "final": _fmt_list(res.trajectory[-1]),
        "stationary": res.trajectory[-1] == res.trajectory[0],
        "drift": drift,
        "max_drift": float(res.max_drift),
        "tolerance": tol,
        "violations": [{"function": k, "drift": drift[k]} for k in bad],
    }


def cmd_branch(cfg: RunConfig, payload: Any) -> dict:
    m = cfg.m if cfg.m is not None else cfg.n - 1
    exp = roots.branching_exponent(cfg.n, m)
    deg = roots.degree_arithmetic(cfg.n, cfg.ell)
    return {
        "n": cfg.n,
        "m": m,
        "ell": cfg.ell,
        "exponent": exp,
        "multiplicity": str(roots.branching_multiplicity(cfg.n, m, cfg.ell)),
        "torus_exponent": roots.torus_branching_exponent(cfg.n) if cfg.n >= 2 else None,
        "algebra_degree": str(deg["algebra_degree"]),
        "center_cover_degree": str(deg["center_cover_degree"]),
        "violations": [],
    }


def cmd_lemma_suite(cfg: RunConfig, payload: Any) -> dict:
    cap = max_n()
    if cfg.n > cap:
        raise InputError(f"--n {cfg.n} exceeds {MAX_N_ENV}={cap}")
    rep = suite.lemma_suite(suite.SuiteConfig(n=cfg.n, seed=cfg.seed, samples=cfg.samples, mutate=cfg.mutate))
    rep["violations"] = [s["tag"] for s in rep["sections"] if not s["passed"]]
    return rep


HANDLERS = {
    "steinberg": cmd_steinberg,
    "pi": cmd_pi,
    "pi-inv": cmd_pi_inv,
    "r-quotient": cmd_r_quotient,
    "gz-check": cmd_gz_check,
    "casimir": cmd_casimir,
    "rank": cmd_rank,
    "flow": cmd_flow,
    "branch": cmd_branch,
    "lemma-suite": cmd_lemma_suite,
}


# --- reporting --------------------------------------------------------------------


def header(command: str, n: Any, seed: Any) -> dict:
    return {"command": command, "n": n, "seed": seed, "paper_refs": REFS.get(command, [])}


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def emit_report(report: dict, out_path: str | None = None) -> None:
    text = render(report)
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(text)


def run(cfg: RunConfig) -> tuple:
    """Dispatch one command; returns ``(exit_code, report)``."""
    try:
        payload = load_payload(cfg)
        body = HANDLERS[cfg.command](cfg, payload)
        code = 1 if body.get("violations") else 0
    except steinberg.InconsistencyError as exc:
        body, code = {"error": f"internal inconsistency: {exc}", "violations": [str(exc)]}, 1
    except (ValueError, ZeroDivisionError, TypeError, KeyError) as exc:
        body, code = {"error": str(exc), "violations": []}, 2
    # a failed payload has no trustworthy size; --n is only meaningful without one
    report = header(cfg.command, body.get("n", None if cfg.in_path else cfg.n), cfg.seed)
    report.update({k: v for k, v in body.items() if k not in report})
    return code, report


def main(argv: list | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except InputError as exc:
        args = list(argv if argv is not None else sys.argv[1:])
        command = next((a for a in args if a in COMMANDS), None)
        report = header(command, None, None)
        report.update({"error": str(exc), "violations": []})
        out = _flag_value(args, "--out")
        try:
            emit_report(report, out)
        except OSError:
            sys.stderr.write(render(report))
        return 2
    code, report = run(cfg)
    try:
        emit_report(report, cfg.out_path)
    except OSError as exc:
        sys.stderr.write(f"cannot write report: {exc}\n")
        sys.stderr.write(render(report))
        return 2
    return code


def _flag_value(args: list, flag: str) -> str | None:
    for i, a in enumerate(args):
        if a == flag and i + 1 < len(args):
            return args[i + 1]
        if a.startswith(flag + "="):
            return a.split("=", 1)[1]
    return None


if __name__ == "__main__":
    sys.exit(main())
