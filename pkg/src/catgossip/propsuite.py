"""Seeded inequality sweeps behind the ``check`` CLI command.

Each check draws a fixed number of random configurations from a seeded
generator, evaluates a comparison inequality, and reports the worst signed
slack together with its tolerance.  Reports are plain text and byte-stable
for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core, engine, modelspace, network, stats

DEFAULT_SEED = 20250810

_SELECTORS = ("cat0", "catk", "all")


@dataclass
class CheckResult:
    name: str
    worst: float
    tolerance: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  [{self.note}]" if self.note else ""
        return f"{self.name}: worst slack {self.worst:+.6e} (tolerance {-self.tolerance:+.1e}) {status}{extra}"


def _sample_config(space: str, n: int, rng: np.random.Generator) -> engine.Configuration:
    if space == core.EUCLIDEAN:
        return engine.init_euclidean_gaussian(n, 3, rng)
    if space == core.SPD:
        return engine.init_wishart(n, 3, rng)
    if space == core.SPHERE:
        return engine.init_sphere_quarter(n, rng)
    if space == core.SO3:
        return engine.init_so3_ball(n, rng)
    return engine.init_tree_words(n, 12, rng)


def _triples(space: str, count: int, rng: np.random.Generator):
    for _ in range(count):
        c = _sample_config(space, 3, rng)
        yield c.points


def _check_bruhat_tits(space: str, count: int, tol: float, rng: np.random.Generator, equality: bool = False) -> CheckResult:
    worst = math.inf
    worst_abs = 0.0
    index = -1
    for i, (p, q, r) in enumerate(_triples(space, count, rng)):
        slack = modelspace.check_bruhat_tits(space, p, q, r)
        if slack < worst:
            worst, index = slack, i
        worst_abs = max(worst_abs, abs(slack))
    if equality:
        return CheckResult(
            name=f"bruhat-tits equality ({space})",
            worst=-worst_abs,
            tolerance=tol,
            passed=worst_abs <= tol,
            note=f"{count} triples",
        )
    return CheckResult(
        name=f"bruhat-tits ({space})",
        worst=worst,
        tolerance=tol,
        passed=worst >= -tol,
        note=f"{count} triples, min at #{index}",
    )


def _check_midpoint_cosine(space: str, kappa: float, count: int, tol: float, rng: np.random.Generator) -> CheckResult:
    worst = math.inf
    index = -1
    for i, (p, q, r) in enumerate(_triples(space, count, rng)):
        slack = modelspace.check_midpoint_cosine(space, kappa, p, q, r)
        if slack < worst:
            worst, index = slack, i
    return CheckResult(
        name=f"midpoint-cosine ({space}, kappa={kappa:g})",
        worst=worst,
        tolerance=tol,
        passed=worst >= -tol,
        note=f"{count} triples, min at #{index}",
    )


def _check_cat_comparison(space: str, kappa: float, count: int, samples: int, tol: float, rng: np.random.Generator) -> CheckResult:
    worst = math.inf
    index = -1
    for i, (p, q, r) in enumerate(_triples(space, count, rng)):
        slack = modelspace.check_cat_inequality(space, kappa, p, q, r, samples)
        if slack < worst:
            worst, index = slack, i
    return CheckResult(
        name=f"cat-thinness ({space}, kappa={kappa:g})",
        worst=worst,
        tolerance=tol,
        passed=worst >= -tol,
        note=f"{count} triples x {samples} parameter pairs, min at #{index}",
    )


def _check_chi_envelope() -> CheckResult:
    worst = math.inf
    for kappa in (0.25, 1.0, 4.0):
        limit = math.pi / (2.0 * math.sqrt(kappa))
        x = np.linspace(0.0, limit, 10_000, endpoint=False)
        chi = modelspace.chi_kappa(kappa, x)
        lower = chi - (2.0 * kappa / math.pi**2) * x * x
        upper = (kappa / 2.0) * x * x - chi
        worst = min(worst, float(lower.min()), float(upper.min()))
    return CheckResult(
        name="chi quadratic envelope",
        worst=worst,
        tolerance=0.0,
        passed=worst >= 0.0,
        note="kappa in {0.25, 1, 4}, 10^4 grid points each",
    )


def _five_graphs(n: int) -> list[network.Graph]:
    ring = [(i, (i + 1) % n) for i in range(n)]
    star = [(0, i) for i in range(1, n)]
    ladder = [(i, i + 1) for i in range(n - 1)] + [(0, 2)]
    return [
        network.build_complete(n),
        network.build_path(n),
        network.build_from_edge_list(n, ring),
        network.build_from_edge_list(n, star),
        network.build_from_edge_list(n, ladder),
    ]


def _check_sandwich_flat(rng: np.random.Generator) -> CheckResult:
    worst = math.inf
    n = 8
    graphs = _five_graphs(n)
    spaces = (core.EUCLIDEAN, core.SPD, core.TREE)
    for g in graphs:
        c_g = network.c_g_constant(g)
        for i in range(60):
            c = _sample_config(spaces[i % 3], n, rng)
            s2 = stats.variance(c)
            delta = stats.disagreement(c, g)
            worst = min(worst, s2 - delta / (2.0 * n), c_g * delta - s2)
    return CheckResult(
        name="variance/disagreement sandwich (flat)",
        worst=worst,
        tolerance=1e-10,
        passed=worst >= -1e-10,
        note="3 spaces x 5 graphs x 60 configurations",
    )


def _check_sandwich_curved(rng: np.random.Generator) -> CheckResult:
    worst = math.inf
    n = 8
    graphs = _five_graphs(n)
    for g in graphs:
        upper = stats.kappa_equivalence_constant(g)
        for space, kappa in ((core.SPHERE, 1.0), (core.SO3, 0.25)):
            for _ in range(30):
                c = _sample_config(space, n, rng)
                s2k = stats.variance_kappa(c, kappa)
                dk = stats.disagreement_kappa(c, g, kappa)
                worst = min(worst, s2k - kappa * dk / (n * math.pi**2), upper * dk - s2k)
    return CheckResult(
        name="variance/disagreement sandwich (curved)",
        worst=worst,
        tolerance=1e-10,
        passed=worst >= -1e-10,
        note="2 spaces x 5 graphs x 30 configurations",
    )


def _check_one_step_flat(rng: np.random.Generator) -> CheckResult:
    worst = math.inf
    worst_eq = 0.0
    n = 8
    graphs = (network.build_complete(n), network.build_path(n))
    for g in graphs:
        for space in (core.EUCLIDEAN, core.SPD, core.TREE):
            for _ in range(10):
                c = _sample_config(space, n, rng)
                change = stats.expected_one_step_change(c, g)
                bound = -stats.disagreement(c, g) / (2.0 * n)
                worst = min(worst, bound - change)
                if space == core.EUCLIDEAN:
                    worst_eq = max(worst_eq, abs(change - bound))
    passed = worst >= -1e-9 and worst_eq <= 1e-9
    return CheckResult(
        name="one-step contraction oracle (flat)",
        worst=worst,
        tolerance=1e-9,
        passed=passed,
        note=f"flat-space equality defect {worst_eq:.3e}",
    )


def _check_one_step_curved(rng: np.random.Generator) -> CheckResult:
    worst = math.inf
    ratio = 0.0
    n = 6
    graphs = (network.build_complete(n), network.build_path(n))
    for g in graphs:
        for space, kappa in ((core.SPHERE, 1.0), (core.SO3, 0.25)):
            for _ in range(10):
                c = _sample_config(space, n, rng)
                change = stats.expected_one_step_change_kappa(c, g, kappa)
                dk = stats.disagreement_kappa(c, g, kappa)
                bound = -(4.0 / n**2) * dk
                worst = min(worst, bound - change, -change)
                if dk > 0.0:
                    ratio = max(ratio, change / (-dk / n))
    return CheckResult(
        name="one-step contraction oracle (curved)",
        worst=worst,
        tolerance=1e-9,
        passed=worst >= -1e-9,
        note=f"measured change vs -disagreement/N ratio <= {ratio:.4f}",
    )


def _check_law_of_cosines(rng: np.random.Generator) -> CheckResult:
    worst_abs = 0.0
    kappa = 1.0
    for _ in range(100):
        pts = []
        while len(pts) < 3:
            v = np.abs(rng.standard_normal(3))
            nv = float(np.sqrt(np.dot(v, v)))
            if nv > 1e-12:
                pts.append(modelspace.ModelPoint2(kappa, v / nv))
        p, q, r = pts
        alpha = modelspace.vertex_angle(r, p, q)
        worst_abs = max(worst_abs, abs(modelspace.law_of_cosines_residual(kappa, p, q, r, alpha)))
    return CheckResult(
        name="law of cosines residual (spherical)",
        worst=-worst_abs,
        tolerance=1e-9,
        passed=worst_abs <= 1e-9,
        note="100 embedded triangles",
    )


def run_property_suite(selector: str, seed: int = DEFAULT_SEED) -> tuple[int, str]:
    """Run the selected inequality sweeps; returns (exit code, report text)."""
    if selector not in _SELECTORS:
        raise ValueError(f"selector must be one of {_SELECTORS}, got {selector!r}")
    results: list[CheckResult] = []
    if selector in ("cat0", "all"):
        results.append(_check_bruhat_tits(core.EUCLIDEAN, 300, 1e-10, np.random.default_rng(seed + 1), equality=True))
        results.append(_check_bruhat_tits(core.SPD, 1000, 1e-9, np.random.default_rng(seed + 2)))
        results.append(_check_bruhat_tits(core.TREE, 1000, 1e-12, np.random.default_rng(seed + 3)))
        results.append(_check_cat_comparison(core.EUCLIDEAN, 0.0, 50, 25, 1e-10, np.random.default_rng(seed + 4)))
        results.append(_check_cat_comparison(core.SPD, 0.0, 50, 25, 1e-8, np.random.default_rng(seed + 5)))
        results.append(_check_sandwich_flat(np.random.default_rng(seed + 6)))
        results.append(_check_one_step_flat(np.random.default_rng(seed + 7)))
    if selector in ("catk", "all"):
        results.append(_check_chi_envelope())
        results.append(_check_midpoint_cosine(core.SPHERE, 1.0, 1000, 1e-9, np.random.default_rng(seed + 8)))
        results.append(_check_midpoint_cosine(core.SO3, 0.25, 1000, 1e-9, np.random.default_rng(seed + 9)))
        results.append(_check_cat_comparison(core.SPHERE, 1.0, 50, 25, 1e-8, np.random.default_rng(seed + 10)))
        results.append(_check_law_of_cosines(np.random.default_rng(seed + 11)))
        results.append(_check_sandwich_curved(np.random.default_rng(seed + 12)))
        results.append(_check_one_step_curved(np.random.default_rng(seed + 13)))
    lines = [f"comparison-inequality suite: selector={selector} seed={seed}"]
    lines += [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"RESULT: {'PASS' if ok else 'FAIL'} ({sum(r.passed for r in results)}/{len(results)} checks)")
    return (0 if ok else 1), "\n".join(lines) + "\n"
