import random

import pytest

from algebra import GeneratorTable, GradedSeries, mul
from errors import ConfigurationError, InvalidShape, ShapeMismatch, SingularBody, TableMismatch
from grading import DegreeVector
from sampling import SamplingConfig, random_invertible_matrix, random_zero_weight_matrix
from supermatrix import (BlockDims, SuperMatrix, body_determinant, body_matrix, delete_minor,
                         extract_minor, identity, invert, is_zero_weight, lift, matmul,
                         minor_columns, zeros)

# x central; a, b odd of degree (1)
T = GeneratorTable(1, [("x", DegreeVector((0,))), ("a", DegreeVector((1,))),
                       ("b", DegreeVector((1,)))], label="T")
N = 3


def g(name):
    return GradedSeries.generator(T, N, name)


def c(value):
    return GradedSeries.constant(T, N, value)


def matrix(rows, row_dims, col_dims=None):
    return SuperMatrix(row_dims, col_dims or row_dims, rows, T, N)


def test_block_dims():
    d = BlockDims.parse("1|2")
    assert d == BlockDims((1, 2))
    assert d.total == 3
    assert d.offsets == (0, 1)
    assert [d.block_of(p) for p in range(3)] == [0, 1, 1]
    assert list(d.positions(1)) == [1, 2]
    assert str(d) == "1|2"
    assert BlockDims.parse("1,2,1,1").chain.n == 2
    with pytest.raises(ConfigurationError):
        BlockDims((1, 2, 3))
    with pytest.raises(ConfigurationError):
        BlockDims.parse("1|x")
    with pytest.raises(ConfigurationError):
        BlockDims((0, 0)).require_nonempty()


def test_shape_checks():
    with pytest.raises(ShapeMismatch):
        matrix([[c(1)]], BlockDims((1, 1)))
    a = zeros(BlockDims((1, 1)), BlockDims((1, 1)), T, N)
    b = zeros(BlockDims((2, 0)), BlockDims((2, 0)), T, N)
    with pytest.raises(ShapeMismatch):
        matmul(a, b)


def test_matmul_identity():
    dims = BlockDims((1, 1))
    a = matrix([[g("x"), g("a")], [g("b"), c(2)]], dims)
    one = identity(dims, T, N)
    assert a @ one == a
    assert one @ a == a


def test_invert_scalar():
    dims = BlockDims((1, 0))
    x = T.central_symbol("x")
    assert invert(matrix([[g("x")]], dims)) == matrix([[c(1 / x)]], dims)


def test_invert_diagonal():
    dims = BlockDims((2, 0))
    x = T.central_symbol("x")
    z = c(0)
    a = matrix([[g("x"), z], [z, g("x")]], dims)
    assert invert(a) == matrix([[c(1 / x), z], [z, c(1 / x)]], dims)


def test_invert_with_odd_off_diagonal():
    dims = BlockDims((1, 1))
    a = matrix([[c(1), g("a")], [g("b"), c(1)]], dims)
    assert is_zero_weight(a)
    inv = invert(a)
    one = identity(dims, T, N)
    assert a @ inv == one
    assert inv @ a == one
    # (1 − ab)⁻¹ = 1 + ab in the top-left entry
    assert inv[0, 0] == c(1) + mul(g("a"), g("b"))


def test_invert_singular_body():
    dims = BlockDims((1, 0))
    with pytest.raises(SingularBody):
        invert(matrix([[mul(g("a"), g("b"))]], dims))


def test_zero_weight_detection():
    dims = BlockDims((1, 1))
    assert is_zero_weight(zeros(dims, dims, T, N))
    assert not is_zero_weight(matrix([[g("a"), c(0)], [c(0), c(1)]], dims))


def test_body_determinant():
    dims = BlockDims((2, 0))
    x = T.central_symbol("x")
    a = matrix([[g("x"), c(1)], [c(2), c(3)]], dims)
    assert body_determinant(a) == 3 * x - 2
    assert body_determinant(lift([[0, 1], [1, 0]], dims, dims, T, N)) == -1
    assert not body_determinant(lift([[1, 2], [2, 4]], dims, dims, T, N))


def test_minor_partition():
    rows, cols = BlockDims((1, 1)), BlockDims((2, 2))
    a = matrix([[c(1), c(2), g("a"), g("b")],
                [g("b"), g("a"), c(3), c(4)]], rows, cols)
    index = ((2,), (1,))
    assert minor_columns(cols, index) == [1, 2]
    m = extract_minor(a, index)
    d = delete_minor(a, index)
    assert m.col_dims == BlockDims((1, 1))
    assert [[e for e in row] for row in m.entries] == [[c(2), g("a")], [g("a"), c(3)]]
    assert [[e for e in row] for row in d.entries] == [[c(1), g("b")], [g("b"), c(4)]]
    with pytest.raises(InvalidShape):
        minor_columns(cols, ((3,), (1,)))


def test_random_invertible_matrices():
    rng = random.Random(11)
    cfg = SamplingConfig()
    dims = BlockDims((2, 1))
    for _ in range(3):
        a = random_invertible_matrix(rng, dims, T, N, cfg)
        assert is_zero_weight(a)
        one = identity(dims, T, N)
        inv = invert(a)
        assert is_zero_weight(inv)
        assert a @ inv == one
        assert inv @ a == one


def test_matmul_associative_on_random_matrices():
    rng = random.Random(5)
    cfg = SamplingConfig()
    dims = BlockDims((1, 2))
    a, b, d = (random_zero_weight_matrix(rng, dims, dims, T, N, cfg) for _ in range(3))
    assert (a @ b) @ d == a @ (b @ d)
    assert is_zero_weight(a @ b)


def test_body_of_product_is_product_of_bodies():
    rng = random.Random(9)
    rows, inner, cols = BlockDims((1, 1)), BlockDims((2, 1)), BlockDims((1, 2))
    a = random_zero_weight_matrix(rng, rows, inner, T, N, SamplingConfig())
    b = random_zero_weight_matrix(rng, inner, cols, T, N, SamplingConfig())
    ba, bb = body_matrix(a), body_matrix(b)
    expected = [[sum((ba[i][t] * bb[t][j] for t in range(inner.total)), T.field.zero)
                 for j in range(cols.total)] for i in range(rows.total)]
    assert body_matrix(a @ b) == expected


def test_json_shape():
    dims = BlockDims((1, 1))
    data = identity(dims, T, N).to_json()
    assert data["rowDims"] == [1, 1]
    assert data["colDims"] == [1, 1]
    assert SuperMatrix.from_json(data, T, N) == identity(dims, T, N)


def test_json_needs_truncation_order():
    empty = BlockDims((0, 0))
    data = identity(empty, T, 2).to_json()
    assert data == {"rowDims": [0, 0], "colDims": [0, 0], "entries": []}
    assert SuperMatrix.from_json(data, T, 2).trunc == 2
    dims = BlockDims((1, 1))
    with pytest.raises(TableMismatch):
        SuperMatrix.from_json(identity(dims, T, N).to_json(), T, N + 1)
