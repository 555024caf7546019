"""Gossip state machine: initial samplers, update steps, and trial runs.

Time is a discrete global clock: at every tick one agent wakes uniformly at
random and solicits a uniform random neighbor, which reproduces the usual
independent-Poisson-clocks model in distribution.  A trial is a pure
function of (config, seed): the per-trial generator seeds every draw, so
repeated runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core, network
from .errors import (
    DomainError,
    GossipError,
    InitializationError,
    SizeMismatch,
    UnsupportedSpace,
)
from .spaces import rotations, spd, tree
from .sym3 import eigvals_batch, sym_part

DEFAULT_ITERS = {core.SPD: 3000, core.TREE: 3000, core.SPHERE: 500, core.SO3: 500, core.EUCLIDEAN: 500}

_ALGORITHMS = ("midpoint", "arithmetic", "rsgd")
_GRAPHS = ("complete", "path", "file")


class ConfigError(GossipError):
    """Invalid experiment configuration; ``field`` names the offender."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class Configuration:
    """Global network state: one point per agent in a single tagged space."""

    space: str
    points: tuple

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class GossipEvent:
    iteration: int
    v: int
    w: int
    pre_distance: float


@dataclass
class TrialSeries:
    """Per-iteration metrics of one seeded run (iteration 0 included)."""

    iters: np.ndarray
    sigma2: np.ndarray
    delta: np.ndarray
    diameter: np.ndarray
    sigma2_kappa: np.ndarray | None
    delta_kappa: np.ndarray | None
    sigma2_euclid: np.ndarray | None
    seed: int
    algorithm: str
    kappa: float


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce an experiment batch."""

    space: str
    graph: str = "complete"
    graph_file: str | None = None
    agents: int = 30
    iters: int | None = None
    trials: int = 50
    seed: int = 0
    algo: str = "midpoint"
    kappa: float | None = None
    dim: int = 3
    max_word_len: int = 30
    record_every: int = 1
    window: float = 0.5
    coverage: float = 0.95
    rsgd_symmetric: bool = False

    @property
    def resolved_iters(self) -> int:
        return DEFAULT_ITERS[self.space] if self.iters is None else self.iters

    @property
    def resolved_kappa(self) -> float:
        return core.DEFAULT_KAPPA[self.space] if self.kappa is None else self.kappa


def validate_config(cfg: ExperimentConfig) -> None:
    """Raise :class:`ConfigError` naming the first offending field."""
    if cfg.space not in core.SPACE_TAGS:
        raise ConfigError("space", f"expected one of {core.SPACE_TAGS}, got {cfg.space!r}")
    if cfg.graph not in _GRAPHS:
        raise ConfigError("graph", f"expected one of {_GRAPHS}, got {cfg.graph!r}")
    if cfg.graph == "file" and not cfg.graph_file:
        raise ConfigError("graph_file", "required when graph='file'")
    if cfg.agents < 2:
        raise ConfigError("agents", f"need at least 2 agents, got {cfg.agents}")
    if cfg.resolved_iters < 0:
        raise ConfigError("iters", f"must be nonnegative, got {cfg.resolved_iters}")
    if cfg.trials < 1:
        raise ConfigError("trials", f"must be positive, got {cfg.trials}")
    if cfg.algo not in _ALGORITHMS:
        raise ConfigError("algo", f"expected one of {_ALGORITHMS}, got {cfg.algo!r}")
    if cfg.algo == "arithmetic" and cfg.space not in core.LINEAR_SPACES:
        raise ConfigError("algo", f"arithmetic averaging needs a linear ambient, not {cfg.space}")
    if cfg.algo == "rsgd" and cfg.space != core.SPD:
        raise ConfigError("algo", "the geodesic-SGD baseline is defined on the SPD space only")
    kappa = cfg.resolved_kappa
    if kappa < 0.0:
        raise ConfigError("kappa", f"negative curvature bound {kappa} is not supported")
    if cfg.space in (core.SPHERE, core.SO3) and kappa <= 0.0:
        raise ConfigError("kappa", f"{cfg.space} requires a positive curvature bound")
    if cfg.dim < 1:
        raise ConfigError("dim", f"must be positive, got {cfg.dim}")
    if cfg.max_word_len < 1:
        raise ConfigError("max_word_len", f"must be positive, got {cfg.max_word_len}")
    if cfg.record_every < 1:
        raise ConfigError("record_every", f"must be positive, got {cfg.record_every}")
    if not 0.0 <= cfg.window < 1.0:
        raise ConfigError("window", f"must lie in [0, 1), got {cfg.window}")
    if not 0.0 < cfg.coverage < 1.0:
        raise ConfigError("coverage", f"must lie in (0, 1), got {cfg.coverage}")


def build_graph(cfg: ExperimentConfig) -> network.Graph:
    if cfg.graph == "complete":
        return network.build_complete(cfg.agents)
    if cfg.graph == "path":
        return network.build_path(cfg.agents)
    return network.load_edge_file(cfg.graph_file, cfg.agents)


# ---------------------------------------------------------------------------
# initial configurations
# ---------------------------------------------------------------------------

def init_euclidean_gaussian(n_agents: int, dim: int, rng: np.random.Generator) -> Configuration:
    """Independent standard-normal vectors."""
    pts = tuple(rng.standard_normal(dim) for _ in range(n_agents))
    return Configuration(core.EUCLIDEAN, pts)


def init_wishart(n_agents: int, q: int, rng: np.random.Generator) -> Configuration:
    """Sum of q outer products of standard normal q-vectors, per agent.

    Draws with smallest eigenvalue below 1e-10 are resampled (at most 100
    times) so every matrix satisfies the SPD invariants outright.
    """
    if q != 3:
        raise UnsupportedSpace(f"SPD kernels are fixed at 3x3, got q={q}")
    pts = []
    for _ in range(n_agents):
        for _attempt in range(100):
            a = rng.standard_normal((q, q))
            m = sym_part(a @ a.T)
            if float(eigvals_batch(m)[0]) >= 1e-10:
                pts.append(m)
                break
        else:
            raise InitializationError("could not sample a well-conditioned Wishart matrix")
    return Configuration(core.SPD, tuple(pts))


def init_sphere_quarter(n_agents: int, rng: np.random.Generator) -> Configuration:
    """Uniform points on the open positive octant of the unit sphere."""
    pts = []
    while len(pts) < n_agents:
        v = np.abs(rng.standard_normal(3))
        n = float(np.sqrt(np.dot(v, v)))
        if n < 1e-12 or np.any(v == 0.0):
            continue
        pts.append(v / n)
    return Configuration(core.SPHERE, tuple(pts))


def init_so3_ball(n_agents: int, rng: np.random.Generator) -> Configuration:
    """Rotations with uniform axis and angle uniform on [0, pi/4)."""
    pts = []
    while len(pts) < n_agents:
        axis = rng.standard_normal(3)
        n = float(np.sqrt(np.dot(axis, axis)))
        if n < 1e-12:
            continue
        angle = float(rng.uniform(0.0, math.pi / 4.0))
        pts.append(rotations.exp((angle / n) * axis))
    return Configuration(core.SO3, tuple(pts))


def init_tree_words(n_agents: int, max_len: int, rng: np.random.Generator) -> Configuration:
    """Reduced words of uniform length 1..max_len with uniform edge offsets.

    The first letter is uniform over the alphabet; each later letter is
    uniform over the three letters that do not cancel the previous one, so
    words are reduced by construction.
    """
    if max_len < 1:
        raise DomainError(f"max_len must be positive, got {max_len}")
    pts = []
    for _ in range(n_agents):
        length = int(rng.integers(1, max_len + 1))
        letters = [int(rng.integers(4))]
        for _k in range(length - 1):
            banned = tree.inverse_letter(letters[-1])
            allowed = [s for s in tree.ALPHABET if s != banned]
            letters.append(allowed[int(rng.integers(3))])
        offset = 1.0 - float(rng.random())  # uniform on (0, 1]
        pts.append(tree.TreePoint(tuple(letters), offset))
    return Configuration(core.TREE, tuple(pts))


def initial_configuration(cfg: ExperimentConfig, rng: np.random.Generator) -> Configuration:
    """Sample the starting state; for positive curvature, retry until the
    initial diameter sits below the convexity radius (at most 100 times)."""
    kappa = cfg.resolved_kappa
    r_kappa = core.curvature_bound(kappa).r_kappa if kappa > 0.0 else math.inf
    for _attempt in range(100):
        c = _sample_initial(cfg, rng)
        if not math.isfinite(r_kappa) or _configuration_diameter(c) < r_kappa:
            return c
    raise InitializationError(
        f"initial diameter kept exceeding the convexity radius {r_kappa:.6g}"
    )


def _sample_initial(cfg: ExperimentConfig, rng: np.random.Generator) -> Configuration:
    if cfg.space == core.EUCLIDEAN:
        return init_euclidean_gaussian(cfg.agents, cfg.dim, rng)
    if cfg.space == core.SPD:
        return init_wishart(cfg.agents, 3, rng)
    if cfg.space == core.SPHERE:
        return init_sphere_quarter(cfg.agents, rng)
    if cfg.space == core.SO3:
        return init_so3_ball(cfg.agents, rng)
    return init_tree_words(cfg.agents, cfg.max_word_len, rng)


def _configuration_diameter(c: Configuration) -> float:
    pts = _make_buffer(c)
    worst = 0.0
    for i in range(len(c.points) - 1):
        worst = max(worst, float(core.distances_from(c.space, c.points[i], pts).max()))
    return worst


# ---------------------------------------------------------------------------
# single gossip steps (pure: configurations in, configurations out)
# ---------------------------------------------------------------------------

def _check_sizes(c: Configuration, g: network.Graph) -> None:
    if len(c.points) != g.n:
        raise SizeMismatch(f"{len(c.points)} agents vs graph of order {g.n}")


def gossip_step_midpoint(
    c: Configuration, g: network.Graph, rng: np.random.Generator, iteration: int = 0
) -> tuple[Configuration, GossipEvent]:
    """One tick: the woken pair moves to the geodesic midpoint of its values."""
    _check_sizes(c, g)
    v, w = network.sample_pair(g, rng)
    pre = core.distance(c.space, c.points[v], c.points[w])
    m = core.midpoint(c.space, c.points[v], c.points[w])
    pts = list(c.points)
    pts[v] = m
    pts[w] = m
    return Configuration(c.space, tuple(pts)), GossipEvent(iteration, v, w, pre)


def gossip_step_arithmetic(
    c: Configuration, g: network.Graph, rng: np.random.Generator, iteration: int = 0
) -> tuple[Configuration, GossipEvent]:
    """Classical pairwise averaging; needs a linear ambient space."""
    if c.space not in core.LINEAR_SPACES:
        raise UnsupportedSpace(f"{c.space} has no vector-space structure to average in")
    _check_sizes(c, g)
    v, w = network.sample_pair(g, rng)
    pre = core.distance(c.space, c.points[v], c.points[w])
    m = 0.5 * (c.points[v] + c.points[w])
    pts = list(c.points)
    pts[v] = m
    pts[w] = m
    return Configuration(c.space, tuple(pts)), GossipEvent(iteration, v, w, pre)


def gossip_step_rsgd(
    c: Configuration,
    g: network.Graph,
    rng: np.random.Generator,
    k: int,
    symmetric: bool = False,
) -> tuple[Configuration, GossipEvent]:
    """Geodesic stochastic-gradient baseline with step size 1/k.

    Only the woken agent moves toward its neighbor (the neighbor also moves
    when ``symmetric`` is set); k counts iterations from 1.
    """
    if c.space != core.SPD:
        raise UnsupportedSpace("the geodesic-SGD baseline is defined on the SPD space only")
    if k < 1:
        raise DomainError(f"iteration index must be >= 1, got {k}")
    _check_sizes(c, g)
    v, w = network.sample_pair(g, rng)
    pre = core.distance(c.space, c.points[v], c.points[w])
    gamma = 1.0 / k
    pts = list(c.points)
    pts[v] = core.geodesic_point(c.space, c.points[v], c.points[w], gamma)
    if symmetric:
        pts[w] = core.geodesic_point(c.space, c.points[w], c.points[v], gamma)
    return Configuration(c.space, tuple(pts)), GossipEvent(k, v, w, pre)


# ---------------------------------------------------------------------------
# trial runner (incremental distance matrix, metrics every record tick)
# ---------------------------------------------------------------------------

def _make_buffer(c: Configuration):
    if c.space == core.TREE:
        return list(c.points)
    return np.stack(c.points)


def _set_rows(matrix: np.ndarray, row: np.ndarray, *indices: int) -> None:
    for idx in indices:
        matrix[idx, :] = row
        matrix[:, idx] = row


def run_trial(cfg: ExperimentConfig, trial_index: int = 0) -> TrialSeries:
    """Run one seeded trial; deterministic in (cfg, trial_index)."""
    validate_config(cfg)
    try:
        return _run_trial_inner(cfg, trial_index)
    except GossipError as exc:
        iteration = getattr(exc, "iteration", None)
        where = f"trial {trial_index}" + ("" if iteration is None else f", iteration {iteration}")
        raise type(exc)(f"{where}: {exc}") from exc


def _run_trial_inner(cfg: ExperimentConfig, trial_index: int) -> TrialSeries:
    rng = np.random.default_rng(cfg.seed + trial_index)
    graph = build_graph(cfg)
    if graph.n != cfg.agents:
        raise SizeMismatch(f"graph order {graph.n} vs agents {cfg.agents}")
    start = initial_configuration(cfg, rng)
    space = cfg.space
    ops = core.space_ops(space)
    kappa = cfg.resolved_kappa
    n = cfg.agents
    iters = cfg.resolved_iters
    r_kappa = core.curvature_bound(kappa).r_kappa if kappa > 0.0 else math.inf
    sqrt_kappa = math.sqrt(kappa) if kappa > 0.0 else 0.0
    eu, ew, wts = graph.edge_arrays()
    track_frobenius = space == core.SPD

    buf = _make_buffer(start)
    dist = np.zeros((n, n))
    for i in range(n - 1):
        row = ops.distances_from(start.points[i], buf[i + 1 :])
        dist[i, i + 1 :] = row
        dist[i + 1 :, i] = row
    frob = None
    if track_frobenius:
        frob = np.zeros((n, n))
        for i in range(n - 1):
            row = spd.frobenius_distances_from(start.points[i], buf[i + 1 :])
            frob[i, i + 1 :] = row
            frob[i + 1 :, i] = row

    n_records = iters // cfg.record_every + 1
    rec_iters = np.zeros(n_records, dtype=np.int64)
    rec_sigma2 = np.zeros(n_records)
    rec_delta = np.zeros(n_records)
    rec_diam = np.zeros(n_records)
    rec_s2k = np.zeros(n_records) if kappa > 0.0 else None
    rec_dk = np.zeros(n_records) if kappa > 0.0 else None
    rec_s2e = np.zeros(n_records) if track_frobenius else None

    def record(slot: int, k: int) -> None:
        rec_iters[slot] = k
        rec_sigma2[slot] = (dist * dist).sum() / (2.0 * n)
        rec_delta[slot] = float((wts * dist[eu, ew] ** 2).sum())
        rec_diam[slot] = dist.max()
        if rec_s2k is not None:
            half_sin = np.sin(0.5 * sqrt_kappa * dist)
            chi = 2.0 * half_sin * half_sin
            rec_s2k[slot] = chi.sum() / n
            rec_dk[slot] = 0.5 * float((wts * chi[eu, ew]).sum())
        if rec_s2e is not None:
            rec_s2e[slot] = (frob * frob).sum() / (2.0 * n)

    record(0, 0)
    slot = 1
    symmetric_sgd = cfg.rsgd_symmetric
    algo = cfg.algo
    for k in range(1, iters + 1):
        v, w = network.sample_pair(graph, rng)
        pv, pw = buf[v], buf[w]
        try:
            if algo == "midpoint":
                m = ops.geodesic(pv, pw, 0.5)
                buf[v] = m
                buf[w] = m
                row = ops.distances_from(m, buf)
                row[v] = 0.0
                row[w] = 0.0
                _set_rows(dist, row, v, w)
                if track_frobenius:
                    frow = spd.frobenius_distances_from(m, buf)
                    frow[v] = 0.0
                    frow[w] = 0.0
                    _set_rows(frob, frow, v, w)
            elif algo == "arithmetic":
                m = 0.5 * (pv + pw)
                buf[v] = m
                buf[w] = m
                row = ops.distances_from(m, buf)
                row[v] = 0.0
                row[w] = 0.0
                _set_rows(dist, row, v, w)
                if track_frobenius:
                    frow = spd.frobenius_distances_from(m, buf)
                    frow[v] = 0.0
                    frow[w] = 0.0
                    _set_rows(frob, frow, v, w)
            else:
                gamma = 1.0 / k
                movers = [(v, ops.geodesic(pv, pw, gamma))]
                if symmetric_sgd:
                    movers.append((w, ops.geodesic(pw, pv, gamma)))
                for idx, val in movers:
                    buf[idx] = val
                for idx, val in movers:
                    row = ops.distances_from(val, buf)
                    row[idx] = 0.0
                    _set_rows(dist, row, idx)
                    if track_frobenius:
                        frow = spd.frobenius_distances_from(val, buf)
                        frow[idx] = 0.0
                        _set_rows(frob, frow, idx)
            if kappa > 0.0 and dist.max() >= r_kappa:
                raise DomainError(
                    f"locality violated: diameter {dist.max():.6g} reached the convexity radius"
                )
        except GossipError as exc:
            exc.iteration = k
            raise
        if k % cfg.record_every == 0:
            record(slot, k)
            slot += 1

    return TrialSeries(
        iters=rec_iters,
        sigma2=rec_sigma2,
        delta=rec_delta,
        diameter=rec_diam,
        sigma2_kappa=rec_s2k,
        delta_kappa=rec_dk,
        sigma2_euclid=rec_s2e,
        seed=cfg.seed + trial_index,
        algorithm=cfg.algo,
        kappa=kappa,
    )


def run_trials(cfg: ExperimentConfig, jobs: int = 1) -> list[TrialSeries]:
    """Run all trials, optionally on a process pool; output order is by
    trial index regardless of scheduling."""
    validate_config(cfg)
    if jobs <= 1 or cfg.trials == 1:
        return [run_trial(cfg, i) for i in range(cfg.trials)]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=min(jobs, cfg.trials)) as pool:
        return list(pool.map(_run_trial_star, [(cfg, i) for i in range(cfg.trials)]))


def _run_trial_star(args: tuple[ExperimentConfig, int]) -> TrialSeries:
    return run_trial(*args)
