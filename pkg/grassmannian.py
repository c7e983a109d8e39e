"""
Atlas of the supergrassmannian G_k⃗(m⃗)
=====================================

A chart is fixed by a k⃗-index I⃗ = (I₀, …, I_q): I_u picks k_u of the m_u
columns of degree block u. Its label matrix A_I is k⃗ × m⃗ with the identity
on the I⃗ columns and free generators elsewhere. Generators are placed
column by column (left to right, top to bottom); a cell in row block i and
column block j receives the next generator of degree γ_i + γ_j, named

    x{c}        central (degree γ₀), c-th of its kind
    xi{t}_{c}   c-th generator of degree γ_t

Transition maps come from the pasting equation

    D_I((M_I A_J)⁻¹ A_J) = D_I(A_I)

computed symbolically over the source chart J; the body determinant of
M_I A_J is kept as the certificate of where the map is defined.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

from algebra import (GeneratorTable, GradedSeries, _poly_to_json, body, degree_of, scale,
                     series_str, substitute)
from errors import ConfigurationError, DegreeMismatch, InvalidShape, SingularBody
from grading import DegreeChain
from supermatrix import (BlockDims, SuperMatrix, body_determinant, extract_minor,
                         invert, matmul, minor_columns)
from sweep import CaseResult, Report, case_rng, run_cases

logger = logging.getLogger(__name__)


# ── Indices and shapes ────────────────────────────────────────────────────────

@dataclass(frozen=True, order=True)
class KIndex:
    """I⃗ = (I₀, …, I_q): ascending 1-based column subsets, one per degree block."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(int(c) for c in p) for p in self.parts))

    @classmethod
    def parse(cls, text: str) -> KIndex:
        """'1/1,2/1/2' → ((1,), (1, 2), (1,), (2,)); an empty part is written '-'."""
        parts = []
        for chunk in text.split("/"):
            chunk = chunk.strip()
            if chunk in ("", "-"):
                parts.append(())
                continue
            try:
                parts.append(tuple(int(c) for c in chunk.split(",")))
            except ValueError:
                raise ConfigurationError(f"bad index {text!r}") from None
        return cls(tuple(parts))

    def validate(self, k: BlockDims, m: BlockDims) -> KIndex:
        if len(self.parts) != len(k):
            raise InvalidShape(f"index {self} has {len(self.parts)} parts, expected {len(k)}")
        for u, part in enumerate(self.parts):
            if len(part) != k[u]:
                raise InvalidShape(f"index {self}: block {u} has {len(part)} entries, expected {k[u]}")
            if list(part) != sorted(set(part)):
                raise InvalidShape(f"index {self}: block {u} is not strictly ascending")
            if part and not (1 <= part[0] and part[-1] <= m[u]):
                raise InvalidShape(f"index {self}: block {u} out of range 1..{m[u]}")
        return self

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.parts]

    def __str__(self) -> str:
        return "/".join(",".join(str(c) for c in p) or "-" for p in self.parts)


def check_shape(k: BlockDims, m: BlockDims) -> DegreeChain:
    if len(k) != len(m):
        raise InvalidShape(f"k⃗ = {k} and m⃗ = {m} have different lengths")
    bad = [i for i in range(len(k)) if k[i] > m[i]]
    if bad:
        raise InvalidShape(f"k_i > m_i at blocks {bad} for k⃗ = {k}, m⃗ = {m}")
    return k.chain


def shape_str(k: BlockDims, m: BlockDims) -> str:
    return f"G_{{{k}}}({m})"


def beta_dims(k: BlockDims, m: BlockDims) -> BlockDims:
    """β_t = Σ_{γ_i+γ_j=γ_t} k_i (m_j − k_j)."""
    chain = check_shape(k, m)
    beta = [0] * len(chain)
    for i in range(len(chain)):
        for j in range(len(chain)):
            beta[chain.add_index(i, j)] += k[i] * (m[j] - k[j])
    return BlockDims(tuple(beta))


def enumerate_charts(k: BlockDims, m: BlockDims) -> list[KIndex]:
    check_shape(k, m)
    per_block = [list(itertools.combinations(range(1, m[u] + 1), k[u])) for u in range(len(k))]
    return [KIndex(tuple(combo)) for combo in itertools.product(*per_block)]


# ── Charts ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Chart:
    k: BlockDims
    m: BlockDims
    index: KIndex
    trunc: int
    table: GeneratorTable
    label: SuperMatrix
    cells: tuple[tuple[int, int], ...]  # label position of each generator, table order

    def to_json(self) -> dict:
        return {"index": self.index.to_json(), "generators": list(self.table.names)}


def generator_name(t: int, c: int) -> str:
    return f"x{c}" if t == 0 else f"xi{t}_{c}"


@lru_cache(maxsize=256)
def build_chart(k: BlockDims, m: BlockDims, index: KIndex, trunc: int) -> Chart:
    chain = check_shape(k, m)
    index.validate(k, m)
    minor = minor_columns(m, index)
    identity_row = {col: r for r, col in enumerate(minor)}

    counters = [0] * len(chain)
    gens, cells = [], []
    for col in range(m.total):
        if col in identity_row:
            continue
        cb = m.block_of(col)
        for row in range(k.total):
            t = chain.add_index(k.block_of(row), cb)
            counters[t] += 1
            gens.append((generator_name(t, counters[t]), chain[t]))
            cells.append((row, col))
    table = GeneratorTable(chain.n, gens, label=f"U[{index}]")

    zero = GradedSeries.zero(table, trunc)
    one = GradedSeries.one(table, trunc)
    grid = [[zero] * m.total for _ in range(k.total)]
    for col, row in identity_row.items():
        grid[row][col] = one
    for (name, _), (row, col) in zip(gens, cells):
        grid[row][col] = GradedSeries.generator(table, trunc, name)
    label = SuperMatrix(k, m, grid, table, trunc)
    logger.debug("built chart %s of %s: %d generators", index, shape_str(k, m), len(gens))
    return Chart(k, m, index, trunc, table, label, tuple(cells))


# ── Transition maps ───────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class TransitionMap:
    """g_{target,source}: target-chart generators as series over the source chart."""

    target: KIndex
    source: KIndex
    target_table: GeneratorTable
    source_table: GeneratorTable
    images: dict[str, GradedSeries]
    certificate: object  # body determinant, element of the source field
    trunc: int

    def residual(self) -> tuple[str, GradedSeries] | None:
        """First generator whose image differs from itself, for endomaps of one chart."""
        if self.target_table != self.source_table:
            raise ConfigurationError(f"g[{self.target},{self.source}] is not an endomap")
        for name in self.target_table.names:
            gen = GradedSeries.generator(self.source_table, self.trunc, name)
            diff = self.images[name] - gen
            if not diff.is_zero:
                return name, diff
        return None

    def is_identity(self) -> bool:
        return self.residual() is None

    def perturbed(self) -> TransitionMap:
        """Negative control: shift the first central image by 1, else double the first image."""
        images = dict(self.images)
        central = [g.name for g in self.target_table.central]
        if central:
            images[central[0]] = images[central[0]] + 1
        elif images:
            first = self.target_table.names[0]
            images[first] = scale(images[first], 2)
        return TransitionMap(self.target, self.source, self.target_table, self.source_table,
                             images, self.certificate, self.trunc)

    def to_json(self) -> dict:
        cert = self.certificate
        return {
            "from": self.source.to_json(),
            "to": self.target.to_json(),
            "images": {name: self.images[name].to_json() for name in self.target_table.names},
            "certificate": {"num": _poly_to_json(cert.numer, self.source_table),
                            "den": _poly_to_json(cert.denom, self.source_table)},
        }


def transition(target: Chart, source: Chart) -> TransitionMap:
    """Images of target generators: D_target((M_target A_source)⁻¹ A_source), by fill position."""
    if (target.k, target.m, target.trunc) != (source.k, source.m, source.trunc):
        raise ConfigurationError("charts belong to different grassmannians or truncations")
    minor = extract_minor(source.label, target.index)
    certificate = body_determinant(minor)
    if not certificate:
        raise SingularBody(f"M[{target.index}] A[{source.index}] has identically zero body determinant")
    moved = matmul(invert(minor), source.label)
    images = {name: moved[cell] for name, cell in zip(target.table.names, target.cells)}
    for g in target.table.generators:
        if degree_of(images[g.name]) != g.degree and not images[g.name].is_zero:
            raise DegreeMismatch(f"image of {g.name} under g[{target.index},{source.index}] is inhomogeneous")
    return TransitionMap(target.index, source.index, target.table, source.table,
                         images, certificate, source.trunc)


def compose(outer: TransitionMap, inner: TransitionMap) -> TransitionMap:
    """outer ∘ inner as pullbacks: outer's images with inner's images substituted in."""
    if outer.source != inner.target or outer.source_table != inner.target_table:
        raise ConfigurationError(
            f"cannot compose g[{outer.target},{outer.source}] after g[{inner.target},{inner.source}]")
    images = {name: substitute(img, inner.images, target=inner.source_table)
              for name, img in outer.images.items()}
    # outer's certificate pulled back along inner, times inner's own
    pulled = substitute(GradedSeries._raw(outer.source_table, outer.trunc,
                                          {outer.source_table.zero_monomial: outer.certificate}),
                        inner.images, target=inner.source_table)
    return TransitionMap(outer.target, inner.source, outer.target_table, inner.source_table,
                         images, body(pulled) * inner.certificate, inner.trunc)


# ── Cocycle sweep ─────────────────────────────────────────────────────────────

COCYCLE_MODES = ("pairs", "triples", "all")


def cocycle_cases(k: BlockDims, m: BlockDims, mode: str = "all", samples: int | None = None,
                  seed: int = 0, include: Iterable[tuple[KIndex, ...]] = ()) -> list[tuple[KIndex, ...]]:
    """Ordered pairs (I, J) including I = J, and pairwise distinct triples."""
    if mode not in COCYCLE_MODES:
        raise ConfigurationError(f"unknown cocycle mode {mode!r}; expected one of {COCYCLE_MODES}")
    charts = enumerate_charts(k, m)
    pairs = list(itertools.product(charts, repeat=2)) if mode in ("pairs", "all") else []
    triples = list(itertools.permutations(charts, 3)) if mode in ("triples", "all") else []
    rng = case_rng(seed, "cocycle", "sample")
    if samples is not None:
        if len(pairs) > samples:
            pairs = rng.sample(pairs, samples)
        if len(triples) > samples:
            triples = rng.sample(triples, samples)
    cases = [tuple(c) for c in include] + pairs + triples
    return sorted(set(cases), key=lambda c: (len(c), c))


def _identity_result(key, composite: TransitionMap) -> CaseResult:
    found = composite.residual()
    if found is None:
        return CaseResult(key=key, passed=True)
    name, diff = found
    return CaseResult(key=key, passed=False, generator=name, residual=diff.to_json(),
                      detail={"residual": series_str(diff)})


def check_cocycle_case(case: tuple[KIndex, ...], *, k: BlockDims, m: BlockDims, trunc: int,
                       corrupt: bool = False) -> CaseResult:
    key = [i.to_json() for i in case]
    charts = [build_chart(k, m, i, trunc) for i in case]

    def g(target: Chart, source: Chart) -> TransitionMap:
        t = transition(target, source)
        return t.perturbed() if corrupt and target.index != source.index else t

    if len(charts) == 1 or (len(charts) == 2 and charts[0].index == charts[1].index):
        return _identity_result(key, g(charts[0], charts[0]))
    if len(charts) == 2:
        c_i, c_j = charts
        return _identity_result(key, compose(g(c_j, c_i), g(c_i, c_j)))
    c_i, c_j, c_s = charts
    composite = compose(g(c_j, c_s), compose(g(c_s, c_i), g(c_i, c_j)))
    return _identity_result(key, composite)


def verify_cocycle(k: BlockDims, m: BlockDims, trunc: int, mode: str = "all",
                   samples: int | None = None, seed: int = 0,
                   include: Iterable[tuple[KIndex, ...]] = (), workers: int = 1,
                   corrupt: bool = False) -> Report:
    """g_{I,I} = id, g_{J,I}∘g_{I,J} = id and the triple identity over chart tuples."""
    started = time.monotonic()
    cases = cocycle_cases(k, m, mode, samples, seed, include)
    logger.info("cocycle sweep on %s, N=%d: %d tuples (mode=%s, workers=%d)",
                shape_str(k, m), trunc, len(cases), mode, workers)
    results = run_cases("cocycle", check_cocycle_case, cases, workers=workers,
                        k=k, m=m, trunc=trunc, corrupt=corrupt)
    report = Report(suite="cocycle",
                    params={"shape": shape_str(k, m), "trunc": trunc, "seed": seed,
                            "mode": mode, "samples": samples, "corrupt": corrupt},
                    cases=results)
    logger.info("cocycle sweep done in %.1fs: %s", time.monotonic() - started, report.summary())
    return report


def apply_transition(trans: TransitionMap, point: Sequence[GradedSeries]) -> list[GradedSeries]:
    """Substitute a tuple of source-generator values into every image."""
    images = dict(zip(trans.source_table.names, point))
    target = point[0].table if point else None
    return [substitute(trans.images[name], images, target=target)
            for name in trans.target_table.names]


def worked_example() -> tuple[BlockDims, BlockDims, KIndex, KIndex]:
    """G_{1|2|1|1}(2|2|2|2) and the chart pair I⃗ = (1|1,2|1|2), J⃗ = (2|1,2|2|1)."""
    k = BlockDims((1, 2, 1, 1))
    m = BlockDims((2, 2, 2, 2))
    return k, m, KIndex(((1,), (1, 2), (1,), (2,))), KIndex(((2,), (1, 2), (2,), (1,)))
