import random

import pytest

from algebra import GradedSeries
from errors import DegreeMismatch, ShapeMismatch, SingularBody
from grassmannian import KIndex, build_chart, enumerate_charts
from group_action import (GLPoint, GrassmannTPoint, TPointAlgebra, act, act_global,
                          change_chart, change_chart_via_transition, gl_dims, gl_inverse,
                          gl_mul, odd_dims, random_gl_point, reduced_point, solve_transitivity,
                          standard_point, tpoint_from_images, translate, transitivity_algebra,
                          verify_action_gluing, verify_action_laws, verify_chart_lemma,
                          verify_transitivity)
from sampling import SamplingConfig
from supermatrix import BlockDims, SuperMatrix, body_matrix, identity, lift, matmul

K, M = BlockDims((1, 1)), BlockDims((2, 2))
I, J = KIndex(((1,), (1,))), KIndex(((2,), (2,)))
ALG = TPointAlgebra.superdomain(BlockDims((1, 1)), 2)
# swaps columns 1 and 2 inside each block
SWAP = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
CFG = SamplingConfig(samples=6, max_retries=30)


def swap_point():
    return GLPoint(lift(SWAP, M, M, ALG.table, ALG.trunc))


def test_gl_dims():
    assert gl_dims(M) == BlockDims((8, 8))
    assert odd_dims(gl_dims(M)) == BlockDims((0, 8))
    assert gl_dims(BlockDims((1, 1, 1, 1))) == BlockDims((4, 4, 4, 4))
    assert transitivity_algebra(M, 2).table.central == ()


def test_superdomain_names():
    alg = TPointAlgebra.superdomain(BlockDims((1, 2, 0, 1)), 3)
    assert list(alg.table.names) == ["y1", "z1_1", "z1_2", "z3_1"]


def test_standard_point():
    psi = standard_point(K, M, I, ALG)
    one, zero = GradedSeries.one(ALG.table, 2), ALG.zero()
    assert psi.matrix.entries == ((one, zero, zero, zero), (zero, zero, one, zero))
    assert reduced_point(psi) == [[[1, 0]], [[1, 0]]]


def test_tpoint_from_chart_generators_is_the_label():
    chart = build_chart(K, M, I, 2)
    gens = [GradedSeries.generator(chart.table, 2, name) for name in chart.table.names]
    psi = tpoint_from_images(chart, gens)
    assert psi.matrix == chart.label
    assert psi.images() == gens


def test_tpoint_rejects_bad_input():
    chart = build_chart(K, M, I, 2)
    with pytest.raises(ShapeMismatch):
        tpoint_from_images(chart, [ALG.zero()], ALG)
    z = GradedSeries.generator(ALG.table, 2, "z1_1")
    with pytest.raises(DegreeMismatch):
        tpoint_from_images(chart, [z, ALG.zero(), ALG.zero(), ALG.zero()], ALG)
    with pytest.raises(ShapeMismatch):
        GrassmannTPoint(J, K, M, standard_point(K, M, I, ALG).matrix)


def test_gl_point_validation():
    with pytest.raises(SingularBody):
        GLPoint(lift([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                     M, M, ALG.table, ALG.trunc))
    z = GradedSeries.generator(ALG.table, 2, "z1_1")
    rows = [list(r) for r in identity(M, ALG.table, 2).entries]
    rows[0][0] = z
    with pytest.raises(DegreeMismatch):
        GLPoint(SuperMatrix(M, M, rows, ALG.table, 2))


def test_gl_group_operations():
    p = swap_point()
    one = GLPoint.identity(M, ALG)
    assert gl_mul(p, gl_inverse(p)) == one
    assert gl_mul(p, p) == one
    assert gl_inverse(one) == one


def test_translate():
    one = GLPoint.identity(M, ALG)
    assert translate(one, SWAP) == swap_point()
    assert translate(translate(one, SWAP, side="left"), SWAP, side="left") == one
    off_block = [[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(DegreeMismatch):
        translate(one, off_block)
    with pytest.raises(ValueError):
        translate(one, SWAP, side="up")


def test_translate_multiplies_body():
    p = random_gl_point(random.Random(3), M, ALG, CFG)
    x = [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 5, 3]]
    bp = body_matrix(p.matrix)
    zero = ALG.table.field.zero

    def product(a, b):
        return [[sum((a[i][t] * b[t][j] for t in range(4)), zero) for j in range(4)]
                for i in range(4)]

    assert body_matrix(translate(p, x).matrix) == product(bp, x)
    assert body_matrix(translate(p, x, side="left").matrix) == product(x, bp)


def test_action_by_permutation_moves_chart_origin():
    psi = standard_point(K, M, I, ALG)
    p = swap_point()
    assert act(psi, p, J) == standard_point(K, M, J, ALG)
    assert act_global(psi, p) == standard_point(K, M, J, ALG)


def test_action_unit_law():
    psi = standard_point(K, M, I, ALG)
    assert act(psi, GLPoint.identity(M, ALG), I) == psi


def test_change_chart_outside_overlap():
    psi = standard_point(K, M, I, ALG)
    with pytest.raises(SingularBody):
        change_chart(psi, J)
    assert change_chart(psi, I) == psi


def test_change_chart_matches_transition_substitution():
    chart = build_chart(K, M, I, 2)
    y = ALG.table.central_symbol("y1")
    z = GradedSeries.generator(ALG.table, 2, "z1_1")
    images = [GradedSeries.constant(ALG.table, 2, y + 1), z,
              z, GradedSeries.constant(ALG.table, 2, 2)]
    psi = tpoint_from_images(chart, images, ALG)
    assert change_chart(psi, J) == change_chart_via_transition(psi, J)


def test_transitivity_from_origin():
    alg = transitivity_algebra(M, 2)
    origin = standard_point(K, M, I, alg)
    assert solve_transitivity(I, origin) == GLPoint.identity(M, alg)
    for index in enumerate_charts(K, M):
        w = standard_point(K, M, index, alg)
        v = solve_transitivity(I, w)
        assert matmul(origin.matrix, v.matrix) == w.matrix


def test_transitivity_rejects_bad_base():
    w = standard_point(K, M, I, ALG)
    with pytest.raises(ShapeMismatch):
        solve_transitivity(KIndex(((3,), (1,))), w)


# ── sweeps ────────────────────────────────────────────────────────────────────

def test_gluing_sweep_passes():
    report = verify_action_gluing(K, M, 2, seed=4, cfg=CFG)
    assert report.passed, report.summary()
    assert report.counts()["total"] == 6


def test_gluing_with_explicit_point():
    report = verify_action_gluing(K, M, 2, p=swap_point(), tuples=[(I, J, I, J), (I, I, I, I)],
                                  cfg=CFG, workers=4)
    assert report.passed, report.summary()


def test_chart_lemma_sweep():
    report = verify_chart_lemma(K, M, 2, samples=4, seed=2, cfg=CFG)
    assert report.passed, report.summary()


def test_action_laws_sweep():
    report = verify_action_laws(K, M, 2, samples=4, seed=9, cfg=CFG)
    assert report.passed, report.summary()


def test_transitivity_sweep():
    report = verify_transitivity(K, M, 2, samples=1, seed=5, cfg=CFG)
    assert report.passed, report.summary()
    assert report.counts()["total"] == 4
