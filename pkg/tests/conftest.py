import numpy as np
import pytest

from catgossip import core, engine
from catgossip.sym3 import eigvals_batch, sym_part

# Identity tolerances (1e-7) are meaningful only at bounded conditioning:
# raw Wishart draws can have eigenvalues ~1e-9, where even LAPACK-grade
# kernels lose ~1e-6 through the eps * cond(congruence) wall.  Keeping the
# smallest eigenvalue above 1e-3 (95% of draws) leaves a 100x margin.
SPD_TEST_EIG_FLOOR = 1e-3


def sample_spd(count: int, rng: np.random.Generator) -> list:
    pts = []
    while len(pts) < count:
        a = rng.standard_normal((3, 3))
        m = sym_part(a @ a.T)
        if float(eigvals_batch(m)[0]) >= SPD_TEST_EIG_FLOOR:
            pts.append(m)
    return pts


def sample_points(space: str, count: int, rng: np.random.Generator) -> list:
    """Draw `count` independent points using the experiment initializers."""
    if space == core.EUCLIDEAN:
        return list(engine.init_euclidean_gaussian(count, 3, rng).points)
    if space == core.SPD:
        return sample_spd(count, rng)
    if space == core.SPHERE:
        return list(engine.init_sphere_quarter(count, rng).points)
    if space == core.SO3:
        return list(engine.init_so3_ball(count, rng).points)
    return list(engine.init_tree_words(count, 12, rng).points)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20250810)
