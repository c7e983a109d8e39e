"""
Seeded random inputs for the verification suites.

Everything draws from a caller-supplied random.Random so a case is fully
reproducible from its seed. Coefficients come from a small declared pool of
integers and fractions; coefficients may also carry one central generator of
the target table, so bodies are genuine rational functions.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from algebra import GeneratorTable, GradedSeries, add, body, to_fraction
from errors import ConfigurationError, SingularBody
from grading import DegreeVector
from supermatrix import BlockDims, SuperMatrix, body_determinant

logger = logging.getLogger(__name__)

DEFAULT_POOL = (-3, -2, -1, 1, 2, 3, "1/2", "-1/2", "2/3", "-3/4")


@dataclass(frozen=True)
class SamplingConfig:
    coefficient_pool: tuple[Fraction, ...] = field(
        default_factory=lambda: tuple(Fraction(v) for v in DEFAULT_POOL))
    max_retries: int = 20
    density: int = 3
    tpoint_central: int = 1
    tpoint_graded: int = 1
    samples: int = 10

    def __post_init__(self):
        pool = tuple(to_fraction(v) for v in self.coefficient_pool)
        if not any(pool):
            raise ConfigurationError("sampling.coefficient_pool needs a nonzero value")
        if self.max_retries < 1 or self.density < 1:
            raise ConfigurationError("sampling.max_retries and sampling.density must be >= 1")
        object.__setattr__(self, "coefficient_pool", pool)

    @classmethod
    def from_dict(cls, cfg: Mapping | None) -> SamplingConfig:
        cfg = dict(cfg or {})
        known = {"coefficient_pool", "max_retries", "density", "tpoint_central",
                 "tpoint_graded", "samples"}
        unknown = sorted(set(cfg) - known)
        if unknown:
            raise ConfigurationError(f"unknown sampling keys: {unknown}")
        if "coefficient_pool" in cfg:
            cfg["coefficient_pool"] = tuple(str(v) for v in cfg["coefficient_pool"])
        for key in known - {"coefficient_pool"}:
            if key in cfg:
                cfg[key] = int(cfg[key])
        return cls(**cfg)


def random_coefficient(rng: random.Random, cfg: SamplingConfig, nonzero: bool = False) -> Fraction:
    pool = [v for v in cfg.coefficient_pool if v] if nonzero else list(cfg.coefficient_pool)
    return rng.choice(pool)


def _random_scalar(rng: random.Random, table: GeneratorTable, cfg: SamplingConfig):
    """A pool constant, sometimes times (1 + c·y) for a central generator y."""
    value = table.coerce(random_coefficient(rng, cfg, nonzero=True))
    if table.central and rng.random() < 0.5:
        y = table.central_symbol(rng.choice(table.central).name)
        value = value * (1 + table.coerce(random_coefficient(rng, cfg, nonzero=True)) * y)
    return value


def random_series(rng: random.Random, table: GeneratorTable, trunc: int,
                  degree: DegreeVector, cfg: SamplingConfig,
                  with_body: bool = True) -> GradedSeries:
    """Homogeneous series of the given degree with up to `density` graded terms."""
    terms: dict = {}
    zero = table.zero_monomial
    if degree.is_zero and with_body:
        terms[zero] = _random_scalar(rng, table, cfg)
    graded = len(table.graded)
    want = degree.mask
    wanted = rng.randint(1, cfg.density)
    if graded:
        for _ in range(cfg.density * 8):
            if len(terms) >= wanted + (zero in terms):
                break
            exps = [0] * graded
            for _ in range(rng.randint(1, trunc)):
                exps[rng.randrange(graded)] += 1
            mono = tuple(exps)
            if any(mono[i] > 1 for i in table.odd_positions):
                continue
            if table.monomial_degree_mask(mono) != want or mono in terms:
                continue
            terms[mono] = _random_scalar(rng, table, cfg)
    return GradedSeries(table, trunc, terms)


def random_images(rng: random.Random, source: GeneratorTable, target: GeneratorTable,
                  trunc: int, cfg: SamplingConfig) -> dict[str, GradedSeries]:
    """Degree-preserving images of `source` generators; central images have nonzero body."""
    images = {}
    for g in source.generators:
        image = random_series(rng, target, trunc, g.degree, cfg)
        if g.central and not body(image):
            image = add(image, GradedSeries.constant(target, trunc, random_coefficient(rng, cfg, nonzero=True)))
        images[g.name] = image
    return images


def random_zero_weight_matrix(rng: random.Random, row_dims: BlockDims, col_dims: BlockDims,
                              table: GeneratorTable, trunc: int,
                              cfg: SamplingConfig) -> SuperMatrix:
    """Block (k, u) entries homogeneous of degree γ_k + γ_u."""
    chain = row_dims.chain
    rows = []
    for r in range(row_dims.total):
        kb = row_dims.block_of(r)
        row = []
        for c in range(col_dims.total):
            degree = chain[chain.add_index(kb, col_dims.block_of(c))]
            row.append(random_series(rng, table, trunc, degree, cfg))
        rows.append(row)
    return SuperMatrix(row_dims, col_dims, rows, table, trunc)


def random_invertible_matrix(rng: random.Random, dims: BlockDims, table: GeneratorTable,
                             trunc: int, cfg: SamplingConfig) -> SuperMatrix:
    """Square zero-weight matrix with invertible body, re-drawn up to max_retries times."""
    for attempt in range(cfg.max_retries):
        candidate = random_zero_weight_matrix(rng, dims, dims, table, trunc, cfg)
        if body_determinant(candidate):
            return candidate
        logger.debug("re-drawing singular %s matrix (attempt %d)", dims, attempt + 1)
    raise SingularBody(f"no body-invertible {dims} matrix within {cfg.max_retries} draws")
