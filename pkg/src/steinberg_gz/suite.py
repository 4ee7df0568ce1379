"""Aggregated property checks across all modules, one section per claim."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import gzparam, poisson, roots, steinberg
from .algebra import rank

DEFAULT_MAX_N = 5


@dataclass
class Section:
    name: str
    tag: str
    passed: bool
    checked: int
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "tag": self.tag,
            "passed": self.passed,
            "checked": self.checked,
            "details": self.details,
        }


@dataclass(frozen=True)
class SuiteConfig:
    n: int = 3
    seed: int = 0
    samples: int = 5
    mutate: bool = False
    # Poisson sections are exact and grow fast with n; they run at min(n, poisson_n)
    poisson_n: int = 3

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


def _sizes(n: int, start: int = 1):
    return range(start, n + 1)


def beta_sets(cfg: SuiteConfig) -> Section:
    checked, bad = 0, []
    for m in _sizes(cfg.n):
        rd = roots.RootDataA(m)
        for order in roots.all_orderings(m):
            checked += 1
            try:
                roots.beta_set(order, rd)
            except AssertionError as exc:
                bad.append({"n": m, "order": list(order.seq), "error": str(exc)})
    return Section("beta sums are never roots", "beta-sum-not-root", not bad, checked, {"failures": bad})


def big_cell(cfg: SuiteConfig) -> Section:
    checked, bad = 0, []
    for m in _sizes(cfg.n):
        for order in roots.all_orderings(m):
            checked += 1
            if not steinberg.check_piumenopiu(order, m):
                bad.append({"n": m, "order": list(order.seq)})
    control = None
    if cfg.n >= 2:
        control = steinberg.check_piumenopiu(roots.Ordering.standard(2), 2, param=1)
    ok = not bad and control is not True
    return Section(
        "beta product at -1 lies in U^- U^+",
        "lower-upper-factorization",
        ok,
        checked,
        {"failures": bad, "plus_one_control_in_big_cell": control},
    )


def beta_form(cfg: SuiteConfig) -> Section:
    rng = random.Random(cfg.seed)
    checked, bad = 0, []
    for m in _sizes(min(cfg.n, 4), 2):
        for order in roots.all_orderings(m):
            params = tuple(Fraction(rng.randint(-5, 5)) for _ in range(m - 1))
            inp = steinberg.SteinbergInput(order, params)
            checked += 1
            if steinberg.steinberg_section(inp) != steinberg.steinberg_beta_form(inp):
                bad.append({"n": m, "order": list(order.seq), "params": [str(p) for p in params]})
    return Section("section equals beta form", "beta-form", not bad, checked, {"failures": bad})


def minor_formula(cfg: SuiteConfig) -> Section:
    rng = random.Random(cfg.seed)
    checked, bad = 0, []
    for m in _sizes(cfg.n):
        for _ in range(cfg.samples):
            a = gzparam.random_lower_borel(m, rng)
            for r in range(1, m + 1):
                for idx in itertools.combinations(range(1, m + 1), r):
                    checked += 1
                    if gzparam.indu_minor(a, idx) != gzparam.brute_minor(a, idx):
                        bad.append({"n": m, "idx": list(idx)})
    return Section("closed-form minors of A C_n", "minor-product-formula", not bad, checked, {"failures": bad})


def entry_depth(cfg: SuiteConfig) -> Section:
    rng = random.Random(cfg.seed)
    checked, bad = 0, []
    for m in _sizes(cfg.n):
        for _ in range(cfg.samples):
            a = gzparam.random_lower_borel(m, rng)
            checked += 1
            bad.extend({"n": m, **f} for f in gzparam.check_entry_dependence(a))
    return Section("depth rule for entry dependence", "entry-depth-dependence", not bad, checked, {"failures": bad})


def pi_round_trip(cfg: SuiteConfig) -> Section:
    rng = random.Random(cfg.seed)
    checked, bad = 0, []
    for m in _sizes(cfg.n):
        for _ in range(cfg.samples):
            a = gzparam.random_lower_borel(m, rng)
            checked += 1
            if gzparam.pi_inverse(gzparam.pi_map(a)) != a:
                bad.append({"n": m})
    return Section("pi_inverse after pi_map is the identity", "pi-isomorphism", not bad, checked, {"failures": bad})


def quotient_identity(cfg: SuiteConfig) -> Section:
    rng = random.Random(cfg.seed)
    checked, bad = 0, []
    for m in _sizes(cfg.n):
        c = gzparam.ones_upper(m)
        for _ in range(cfg.samples):
            a = gzparam.random_lower_borel(m, rng)
            checked += 1
            if gzparam.simultaneous_quotient(a, c) != gzparam.pi_map(a):
                bad.append({"n": m, "kind": "quotient"})
        for chain in gzparam.all_chains(m):
            s = gzparam.random_structured(chain, rng)
            checked += 1
            if gzparam.structured_pi_inverse(gzparam.structured_pi(s), chain) != s:
                bad.append({"n": m, "kind": "chain", "chain": list(chain)})
    return Section(
        "simultaneous quotient on (A, C_n) and chain round trips",
        "quotient-section-isomorphism",
        not bad,
        checked,
        {"failures": bad},
    )


def gz_commutation(cfg: SuiteConfig) -> Section:
    m = min(cfg.n, cfg.poisson_n)
    rep = poisson.verify_commutative(m, cfg.samples, cfg.seed, mutate=cfg.mutate)
    return Section(
        "GZ family Poisson-commutes",
        "gz-commutative",
        not rep["violations"],
        rep["pairs_checked"],
        {"n": m, "violations": rep["violations"][:10], "violation_count": len(rep["violations"])},
    )


def casimirs(cfg: SuiteConfig) -> Section:
    m = min(cfg.n, cfg.poisson_n)
    rep = poisson.casimir_check(m, cfg.seed, points=min(cfg.samples, 3), mutate=cfg.mutate)
    return Section(
        "full-size coefficients are Casimirs",
        "casimir-centrality",
        not rep["violations"],
        rep["pairs_checked"],
        {"n": m, "violations": rep["violations"][:10], "violation_count": len(rep["violations"])},
    )


def ranks(cfg: SuiteConfig) -> Section:
    m = min(cfg.n, cfg.poisson_n)
    reps = [poisson.rank_report(k, cfg.seed) for k in _sizes(m)]
    if cfg.mutate:
        # the mutated bracket feeds the bivector rank too
        for rep in reps:
            pt = poisson.random_h_point(rep["n"], random.Random(cfg.seed))
            rep["bivector_rank"] = rank(poisson.bivector_matrix(rep["n"], pt, mutate=True))
    ok = all(
        r["family_rank"] == r["expected_family_rank"] and r["bivector_rank"] == r["expected_bivector_rank"]
        for r in reps
    )
    return Section("family and bivector ranks", "integrable-dimensions", ok, len(reps), {"reports": reps})


SECTIONS = (
    beta_sets,
    big_cell,
    beta_form,
    minor_formula,
    entry_depth,
    pi_round_trip,
    quotient_identity,
    gz_commutation,
    casimirs,
    ranks,
)


def lemma_suite(cfg: SuiteConfig) -> dict:
    sections = [s(cfg) for s in SECTIONS]
    return {
        "sections": [s.to_json() for s in sections],
        "passed": sum(s.passed for s in sections),
        "failed": sum(not s.passed for s in sections),
        "mutate": cfg.mutate,
    }
