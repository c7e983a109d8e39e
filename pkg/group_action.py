"""
GL(m⃗) acting on G_k⃗(m⃗), seen through T-points
==============================================

For a parameter algebra O(T):

  * a T-point of GL(m⃗) is a zero-weight m⃗ × m⃗ supermatrix over O(T) with
    invertible body (GLPoint);
  * a T-point of the chart U_I is a k⃗ × m⃗ matrix [ψ]_I over O(T) with the
    identity on the I⃗ columns (GrassmannTPoint).

Chart J receives ψ·P when M_J([ψ]_I [P]) is invertible; the representative
in chart J is (M_J B)⁻¹ B with B = [ψ]_I [P]. Changing charts is the same
formula with P = 1.
"""

from __future__ import annotations

import logging
import random
import time
from collections.abc import Sequence
from dataclasses import dataclass

from algebra import GeneratorTable, GradedSeries, body, degree_of, series_str, substitute
from errors import DegreeMismatch, InvalidShape, ShapeMismatch, SingularBody, TableMismatch
from grading import DegreeChain
from grassmannian import (Chart, KIndex, build_chart, check_shape, enumerate_charts,
                          shape_str, transition)
from sampling import SamplingConfig, random_invertible_matrix, random_series
from supermatrix import (BlockDims, SuperMatrix, body_determinant, extract_minor,
                         identity, invert, is_zero_weight, lift, matmul, minor_columns)
from sweep import CaseResult, Report, case_rng, run_cases

logger = logging.getLogger(__name__)


# ── Parameter algebras ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TPointAlgebra:
    """O(T): the generator table and truncation order of the parameter space."""

    table: GeneratorTable
    trunc: int

    @classmethod
    def superdomain(cls, dims: BlockDims, trunc: int, label: str = "T") -> TPointAlgebra:
        """O(R^{r⃗}): central y1…y_{r₀}, graded z{t}_{c} of degree γ_t."""
        chain = dims.chain
        gens = [(f"y{c}", chain.zero) for c in range(1, dims[0] + 1)]
        for t in range(1, len(chain)):
            gens += [(f"z{t}_{c}", chain[t]) for c in range(1, dims[t] + 1)]
        return cls(GeneratorTable(chain.n, gens, label=label), trunc)

    @classmethod
    def for_sampling(cls, n: int, cfg: SamplingConfig, trunc: int) -> TPointAlgebra:
        chain = DegreeChain.for_n(n)
        dims = BlockDims((cfg.tpoint_central,) + (cfg.tpoint_graded,) * chain.q)
        return cls.superdomain(dims, trunc)

    def zero(self) -> GradedSeries:
        return GradedSeries.zero(self.table, self.trunc)


def gl_dims(m: BlockDims) -> BlockDims:
    """Dimension of GL(m⃗): r_t = Σ_{γ_i+γ_j=γ_t} m_i m_j."""
    chain = m.chain
    r = [0] * len(chain)
    for i in range(len(chain)):
        for j in range(len(chain)):
            r[chain.add_index(i, j)] += m[i] * m[j]
    return BlockDims(tuple(r))


def odd_dims(r: BlockDims) -> BlockDims:
    """r⃗′ = (0, r₁, …, r_q): the same superdomain with no central coordinates."""
    return BlockDims((0,) + tuple(r)[1:])


# ── GL(m⃗) points ─────────────────────────────────────────────────────────────

class GLPoint:
    """Invertible zero-weight m⃗ × m⃗ supermatrix over O(T)."""

    def __init__(self, matrix: SuperMatrix, inverse: SuperMatrix | None = None):
        if matrix.row_dims != matrix.col_dims:
            raise ShapeMismatch(f"GL point must be square, got {matrix.row_dims} x {matrix.col_dims}")
        if not is_zero_weight(matrix):
            raise DegreeMismatch("GL point is not of weight zero")
        if not body_determinant(matrix):
            raise SingularBody("GL point has a singular body")
        self.matrix = matrix
        self._inverse = inverse

    @classmethod
    def identity(cls, dims: BlockDims, algebra: TPointAlgebra) -> GLPoint:
        one = identity(dims, algebra.table, algebra.trunc)
        return cls(one, inverse=one)

    @property
    def dims(self) -> BlockDims:
        return self.matrix.row_dims

    @property
    def inverse(self) -> SuperMatrix:
        if self._inverse is None:
            self._inverse = invert(self.matrix)
        return self._inverse

    def __eq__(self, other) -> bool:
        return isinstance(other, GLPoint) and self.matrix == other.matrix

    __hash__ = None

    def to_json(self) -> dict:
        return self.matrix.to_json()


def gl_mul(p: GLPoint, q: GLPoint) -> GLPoint:
    return GLPoint(matmul(p.matrix, q.matrix))


def gl_inverse(p: GLPoint) -> GLPoint:
    return GLPoint(p.inverse, inverse=p.matrix)


def translate(p: GLPoint, x: Sequence[Sequence[object]], side: str = "right") -> GLPoint:
    """r_x(P) = P·x̂ or l_x(P) = x̂·P for a rational point x of GL(m⃗)."""
    x_hat = lift(x, p.dims, p.dims, p.matrix.table, p.matrix.trunc)
    if not is_zero_weight(x_hat):
        raise DegreeMismatch("translation matrix has nonzero entries outside degree-γ₀ blocks")
    if not body_determinant(x_hat):
        raise SingularBody("translation matrix is singular")
    if side == "right":
        return GLPoint(matmul(p.matrix, x_hat))
    if side == "left":
        return GLPoint(matmul(x_hat, p.matrix))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


# ── Grassmannian T-points ─────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class GrassmannTPoint:
    """[ψ]_I: k⃗ × m⃗ over O(T) with the identity on the I⃗ columns."""

    chart: KIndex
    k: BlockDims
    m: BlockDims
    matrix: SuperMatrix

    def __post_init__(self):
        if self.matrix.row_dims != self.k or self.matrix.col_dims != self.m:
            raise ShapeMismatch(f"T-point matrix is {self.matrix.row_dims} x {self.matrix.col_dims}, "
                                f"expected {self.k} x {self.m}")
        minor = extract_minor(self.matrix, self.chart)
        if minor != identity(self.k, self.matrix.table, self.matrix.trunc):
            raise ShapeMismatch(f"T-point minor on chart {self.chart} is not the identity")

    @property
    def table(self) -> GeneratorTable:
        return self.matrix.table

    @property
    def trunc(self) -> int:
        return self.matrix.trunc

    def chart_of(self) -> Chart:
        return build_chart(self.k, self.m, self.chart, self.trunc)

    def images(self) -> list[GradedSeries]:
        """ψ*(generator) for each generator of the chart, in table order."""
        return [self.matrix[cell] for cell in self.chart_of().cells]

    def __eq__(self, other) -> bool:
        return (isinstance(other, GrassmannTPoint) and self.chart == other.chart
                and self.matrix == other.matrix)

    __hash__ = None

    def to_json(self) -> dict:
        return {"chart": self.chart.to_json(), **self.matrix.to_json()}


def tpoint_from_images(chart: Chart, images: Sequence[GradedSeries],
                       algebra: TPointAlgebra | None = None) -> GrassmannTPoint:
    """Assemble [ψ]_I by the chart's fill order, identity on the minor."""
    if len(images) != len(chart.table):
        raise ShapeMismatch(f"chart {chart.index} has {len(chart.table)} generators, got {len(images)} images")
    if algebra is None:
        if not images:
            raise ShapeMismatch("an empty chart needs an explicit parameter algebra")
        algebra = TPointAlgebra(images[0].table, images[0].trunc)
    for g, img in zip(chart.table.generators, images):
        if img.table != algebra.table or img.trunc != algebra.trunc:
            raise TableMismatch(f"image of {g.name} lives over a different parameter algebra")
        if not img.is_zero and degree_of(img) != g.degree:
            raise DegreeMismatch(f"image of {g.name} has degree {degree_of(img)}, expected {g.degree}")
    zero = algebra.zero()
    one = GradedSeries.one(algebra.table, algebra.trunc)
    rows = [[zero] * chart.m.total for _ in range(chart.k.total)]
    for r, col in enumerate(minor_columns(chart.m, chart.index)):
        rows[r][col] = one
    for img, (r, c) in zip(images, chart.cells):
        rows[r][c] = img
    matrix = SuperMatrix(chart.k, chart.m, rows, algebra.table, algebra.trunc)
    return GrassmannTPoint(chart.index, chart.k, chart.m, matrix)


def standard_point(k: BlockDims, m: BlockDims, index: KIndex, algebra: TPointAlgebra) -> GrassmannTPoint:
    """Origin of chart I: every generator ↦ 0."""
    chart = build_chart(k, m, index, algebra.trunc)
    return tpoint_from_images(chart, [algebra.zero()] * len(chart.table), algebra)


def reduced_point(psi: GrassmannTPoint) -> list[list[list]]:
    """Bodies of the diagonal blocks p̄₀, …, p̄_q; off-diagonal bodies vanish."""
    blocks = []
    for t in range(len(psi.k)):
        blocks.append([[body(psi.matrix[r, c]) for c in psi.m.positions(t)]
                       for r in psi.k.positions(t)])
    return blocks


def _into_chart(product: SuperMatrix, target: KIndex, k: BlockDims, m: BlockDims) -> GrassmannTPoint:
    target.validate(k, m)
    minor = extract_minor(product, target)
    if not body_determinant(minor):
        raise SingularBody(f"T-point is outside chart {target}")
    return GrassmannTPoint(target, k, m, matmul(invert(minor), product))


def change_chart(psi: GrassmannTPoint, target: KIndex) -> GrassmannTPoint:
    """(g_{target,I})_T(ψ) in matrix form: (M_target[ψ])⁻¹[ψ]."""
    return _into_chart(psi.matrix, target, psi.k, psi.m)


def change_chart_via_transition(psi: GrassmannTPoint, target: KIndex) -> GrassmannTPoint:
    """The same chart change through the symbolic transition map g_{target,I}."""
    source = psi.chart_of()
    dest = build_chart(psi.k, psi.m, target.validate(psi.k, psi.m), psi.trunc)
    g = transition(dest, source)
    values = dict(zip(source.table.names, psi.images()))
    images = [substitute(g.images[name], values, target=psi.table) for name in dest.table.names]
    return tpoint_from_images(dest, images, TPointAlgebra(psi.table, psi.trunc))


def act(psi: GrassmannTPoint, p: GLPoint, target: KIndex) -> GrassmannTPoint:
    """A_I^J: ψ·P represented in chart J."""
    if p.dims != psi.m:
        raise ShapeMismatch(f"GL({p.dims}) cannot act on {shape_str(psi.k, psi.m)}")
    return _into_chart(matmul(psi.matrix, p.matrix), target, psi.k, psi.m)


def act_global(psi: GrassmannTPoint, p: GLPoint) -> GrassmannTPoint:
    """ψ·P in the first chart (enumeration order) that contains it."""
    product = matmul(psi.matrix, p.matrix)
    for index in enumerate_charts(psi.k, psi.m):
        if body_determinant(extract_minor(product, index)):
            return _into_chart(product, index, psi.k, psi.m)
    raise SingularBody("ψ·P lies in no chart")


def solve_transitivity(base_chart: KIndex, w: GrassmannTPoint) -> GLPoint:
    """
    V with p̂·V = [W] for p̂ the origin of base_chart.

    p̂ picks the base-minor rows of V, so those rows are W's rows in order.
    The remaining rows of block u are identity rows e_c for the block-u
    columns c outside W's own minor, ascending; since W's minor is the
    identity, body(V) is a permuted block-triangular matrix with unit pivots.
    """
    k, m = w.k, w.m
    try:
        base_chart.validate(k, m)
    except InvalidShape as exc:
        raise ShapeMismatch(str(exc)) from None
    table, trunc = w.table, w.trunc
    zero = GradedSeries.zero(table, trunc)
    one = GradedSeries.one(table, trunc)
    rows: list[list[GradedSeries] | None] = [None] * m.total
    base_cols = minor_columns(m, base_chart)
    for r, pos in enumerate(base_cols):
        rows[pos] = list(w.matrix.entries[r])
    w_cols = set(minor_columns(m, w.chart))
    for u in range(len(m)):
        free_rows = [p for p in m.positions(u) if p not in base_cols]
        free_cols = [c for c in m.positions(u) if c not in w_cols]
        for pos, col in zip(free_rows, free_cols):
            rows[pos] = [one if c == col else zero for c in range(m.total)]
    return GLPoint(SuperMatrix(m, m, rows, table, trunc))


# ── Random T-points ───────────────────────────────────────────────────────────

def random_gl_point(rng: random.Random, dims: BlockDims, algebra: TPointAlgebra,
                    cfg: SamplingConfig) -> GLPoint:
    return GLPoint(random_invertible_matrix(rng, dims, algebra.table, algebra.trunc, cfg))


def random_tpoint(rng: random.Random, k: BlockDims, m: BlockDims, index: KIndex,
                  algebra: TPointAlgebra, cfg: SamplingConfig) -> GrassmannTPoint:
    chart = build_chart(k, m, index, algebra.trunc)
    images = [random_series(rng, algebra.table, algebra.trunc, g.degree, cfg)
              for g in chart.table.generators]
    return tpoint_from_images(chart, images, algebra)


def _invertible_on(matrix: SuperMatrix, *indices: KIndex) -> bool:
    return all(body_determinant(extract_minor(matrix, i)) for i in indices)


def _compare(key, left: SuperMatrix, right: SuperMatrix) -> CaseResult:
    for r, (ra, rb) in enumerate(zip(left.entries, right.entries)):
        for c, (a, b) in enumerate(zip(ra, rb)):
            diff = a - b
            if not diff.is_zero:
                return CaseResult(key=key, passed=False, generator=f"({r + 1},{c + 1})",
                                  residual=diff.to_json(), detail={"residual": series_str(diff)})
    return CaseResult(key=key, passed=True)


def _skipped(key, reason: str) -> CaseResult:
    return CaseResult(key=key, passed=True, skipped=True, detail={"reason": reason})


# ── Action gluing ─────────────────────────────────────────────────────────────

def gluing_tuples(k: BlockDims, m: BlockDims, samples: int | None = None,
                  seed: int = 0) -> list[tuple[KIndex, KIndex, KIndex, KIndex]]:
    charts = enumerate_charts(k, m)
    total = len(charts) ** 4
    if samples is None or samples >= total:
        return [(i, j, q, l) for i in charts for j in charts for q in charts for l in charts]
    rng = case_rng(seed, "action", "sample")
    picked = set()
    while len(picked) < samples:
        picked.add(tuple(rng.choice(charts) for _ in range(4)))
    return sorted(picked)


def check_gluing_case(case: tuple[KIndex, KIndex, KIndex, KIndex], *, k: BlockDims, m: BlockDims,
                      trunc: int, seed: int, cfg: SamplingConfig, p_seed: int = 0,
                      p: GLPoint | None = None) -> CaseResult:
    """(g_{L,J})_T ∘ A_I^J = A_Q^L ∘ (g_{Q,I})_T on a random ψ in chart I."""
    i, j, q, l = case
    key = [c.to_json() for c in case]
    algebra = (TPointAlgebra(p.matrix.table, p.matrix.trunc) if p is not None
               else TPointAlgebra.for_sampling(k.chain.n, cfg, trunc))
    if p is None:
        p = random_gl_point(case_rng(seed, "gl", p_seed), m, algebra, cfg)
    rng = case_rng(seed, "action", key)
    for _ in range(cfg.max_retries):
        psi = random_tpoint(rng, k, m, i, algebra, cfg)
        moved = matmul(psi.matrix, p.matrix)
        if _invertible_on(moved, j, l) and _invertible_on(psi.matrix, q):
            break
    else:
        return _skipped(key, f"no ψ in the overlap within {cfg.max_retries} draws")
    left = change_chart(act(psi, p, j), l)
    right = act(change_chart(psi, q), p, l)
    return _compare(key, left.matrix, right.matrix)


def verify_action_gluing(k: BlockDims, m: BlockDims, trunc: int, p: GLPoint | None = None,
                         tuples: Sequence[tuple[KIndex, ...]] | None = None, seed: int = 0,
                         cfg: SamplingConfig | None = None, p_seed: int = 0,
                         workers: int = 1) -> Report:
    """
    Gluing compatibility of the chartwise action for every tuple (I, J, Q, L).

    Without an explicit P, one is drawn from (seed, p_seed) inside every case,
    which keeps cases picklable for a process pool.
    """
    cfg = cfg or SamplingConfig()
    check_shape(k, m)
    started = time.monotonic()
    cases = sorted(tuples) if tuples is not None else gluing_tuples(k, m, cfg.samples, seed)
    if p is not None and workers > 1:
        logger.info("explicit GL point given; running the gluing sweep serially")
        workers = 1
    logger.info("action gluing on %s, N=%d: %d tuples", shape_str(k, m), trunc, len(cases))
    results = run_cases("action", check_gluing_case, cases, workers=workers, k=k, m=m,
                        trunc=trunc, seed=seed, cfg=cfg, p_seed=p_seed, p=p)
    report = Report(suite="action",
                    params={"shape": shape_str(k, m), "trunc": trunc, "seed": seed, "p_seed": p_seed},
                    cases=results)
    logger.info("action gluing done in %.1fs: %s", time.monotonic() - started, report.summary())
    return report


# ── Chart-change lemma ────────────────────────────────────────────────────────

def check_lemma_case(case: tuple[KIndex, KIndex, int], *, k: BlockDims, m: BlockDims,
                     trunc: int, seed: int, cfg: SamplingConfig) -> CaseResult:
    """Direct chart change agrees with substitution into the symbolic transition."""
    source, target, sample = case
    key = [source.to_json(), target.to_json(), sample]
    algebra = TPointAlgebra.for_sampling(k.chain.n, cfg, trunc)
    rng = case_rng(seed, "lemma", key)
    for _ in range(cfg.max_retries):
        psi = random_tpoint(rng, k, m, source, algebra, cfg)
        if _invertible_on(psi.matrix, target):
            break
    else:
        return _skipped(key, f"no ψ in chart {target} within {cfg.max_retries} draws")
    direct = change_chart(psi, target)
    symbolic = change_chart_via_transition(psi, target)
    return _compare(key, direct.matrix, symbolic.matrix)


def verify_chart_lemma(k: BlockDims, m: BlockDims, trunc: int, samples: int = 20, seed: int = 0,
                       cfg: SamplingConfig | None = None, workers: int = 1) -> Report:
    cfg = cfg or SamplingConfig()
    charts = enumerate_charts(k, m)
    rng = case_rng(seed, "lemma", "sample")
    cases = [(rng.choice(charts), rng.choice(charts), s) for s in range(samples)]
    results = run_cases("lemma", check_lemma_case, cases, workers=workers,
                        k=k, m=m, trunc=trunc, seed=seed, cfg=cfg)
    return Report(suite="lemma",
                  params={"shape": shape_str(k, m), "trunc": trunc, "seed": seed, "samples": samples},
                  cases=results)


# ── Action laws ───────────────────────────────────────────────────────────────

def check_laws_case(sample: int, *, k: BlockDims, m: BlockDims, trunc: int, seed: int,
                    cfg: SamplingConfig) -> CaseResult:
    """Unit law, then (ψ·P)·Q = ψ·(PQ) when both sides are defined."""
    key = [sample]
    algebra = TPointAlgebra.for_sampling(k.chain.n, cfg, trunc)
    charts = enumerate_charts(k, m)
    rng = case_rng(seed, "laws", sample)
    start = rng.choice(charts)
    psi = random_tpoint(rng, k, m, start, algebra, cfg)
    unit = act(psi, GLPoint.identity(m, algebra), start)
    if unit != psi:
        return _compare(key, unit.matrix, psi.matrix)
    for _ in range(cfg.max_retries):
        p = random_gl_point(rng, m, algebra, cfg)
        q = random_gl_point(rng, m, algebra, cfg)
        j, l = rng.choice(charts), rng.choice(charts)
        moved = matmul(psi.matrix, p.matrix)
        if _invertible_on(moved, j) and _invertible_on(matmul(moved, q.matrix), l):
            break
    else:
        return _skipped(key, "associativity undefined for every draw")
    left = act(act(psi, p, j), q, l)
    right = act(psi, gl_mul(p, q), l)
    return _compare(key, left.matrix, right.matrix)


def verify_action_laws(k: BlockDims, m: BlockDims, trunc: int, samples: int = 50, seed: int = 0,
                       cfg: SamplingConfig | None = None, workers: int = 1) -> Report:
    cfg = cfg or SamplingConfig()
    check_shape(k, m)
    results = run_cases("laws", check_laws_case, list(range(samples)), workers=workers,
                        k=k, m=m, trunc=trunc, seed=seed, cfg=cfg)
    return Report(suite="laws",
                  params={"shape": shape_str(k, m), "trunc": trunc, "seed": seed, "samples": samples},
                  cases=results)


# ── Transitivity ──────────────────────────────────────────────────────────────

def transitivity_algebra(m: BlockDims, trunc: int) -> TPointAlgebra:
    """O(R^{r⃗′}) for r⃗ = dim GL(m⃗): no central coordinates."""
    return TPointAlgebra.superdomain(odd_dims(gl_dims(m)), trunc, label="R^r'")


def check_transitivity_case(case: tuple[KIndex, int], *, k: BlockDims, m: BlockDims, trunc: int,
                            base: KIndex, seed: int, cfg: SamplingConfig) -> CaseResult:
    chart, sample = case
    key = [chart.to_json(), sample]
    algebra = transitivity_algebra(m, trunc)
    rng = case_rng(seed, "transitivity", key)
    w = random_tpoint(rng, k, m, chart, algebra, cfg)
    v = solve_transitivity(base, w)
    p_hat = standard_point(k, m, base, algebra)
    return _compare(key, matmul(p_hat.matrix, v.matrix), w.matrix)


def verify_transitivity(k: BlockDims, m: BlockDims, trunc: int, base: KIndex | None = None,
                        samples: int = 3, seed: int = 0, cfg: SamplingConfig | None = None,
                        workers: int = 1) -> Report:
    """Seeded targets W in every chart; each must be reached from the base origin."""
    cfg = cfg or SamplingConfig()
    charts = enumerate_charts(k, m)
    base = base if base is not None else charts[0]
    cases = [(c, s) for c in charts for s in range(samples)]
    results = run_cases("transitivity", check_transitivity_case, cases, workers=workers,
                        k=k, m=m, trunc=trunc, base=base, seed=seed, cfg=cfg)
    return Report(suite="transitivity",
                  params={"shape": shape_str(k, m), "trunc": trunc, "seed": seed,
                          "base": base.to_json(), "samples": samples},
                  cases=results)
