import itertools

import numpy as np
import pytest

from app.exceptions import LatticeMismatchError, LatticeValueError, ShapeError
from app.utils.fuzrel import (
    FuzzyMatrix,
    arrow_bi,
    arrow_left,
    arrow_right,
    compose,
    converse,
    crisp_part,
    equal_rel,
    is_crisp,
    join_all,
    left_residual,
    leq_rel,
    meet_all,
    pointwise_join,
    pointwise_meet,
    right_residual,
)
from app.utils.lattice import ResiduatedLattice

from conftest import LATTICES, random_values


def rel(lattice, rows):
    return FuzzyMatrix.from_rows(lattice, rows)


SAMPLES = 1000


def random_matrix(lattice, rng, rows, cols):
    return FuzzyMatrix(lattice, random_values(lattice, rng, (rows, cols)))


# ----------------------------------------------------------------------
# construction

def test_matrices_are_immutable(godel):
    m = rel(godel, [[0.2, 1]])
    with pytest.raises(ValueError):
        m.entries[0, 0] = 0.5


def test_construction_validates(godel):
    with pytest.raises(ShapeError):
        FuzzyMatrix(godel, np.zeros((0, 2)))
    with pytest.raises(ShapeError):
        FuzzyMatrix(godel, np.zeros(3))
    with pytest.raises(LatticeValueError):
        rel(godel, [[0.2, 1.2]])


def test_vectors_and_identity(godel):
    assert FuzzyMatrix.row_vector(godel, [1, 0.5]).shape == (1, 2)
    assert FuzzyMatrix.column_vector(godel, [1, 0.5]).shape == (2, 1)
    assert FuzzyMatrix.identity(ResiduatedLattice.chain(3), 2).tolist() == [[3, 0], [0, 3]]


# ----------------------------------------------------------------------
# composition and converse

def test_compose_example(godel):
    result = compose(rel(godel, [[1, 0.3], [0.5, 1]]), rel(godel, [[0.2, 1], [0.6, 0.4]]))
    assert result.tolist() == [[0.3, 1], [0.6, 0.5]]


def test_compose_identity(godel, rng):
    m = random_matrix(godel, rng, 3, 2)
    assert equal_rel(compose(FuzzyMatrix.identity(godel, 3), m), m)
    assert equal_rel(compose(m, FuzzyMatrix.identity(godel, 2)), m)


def test_compose_vectors_gives_scalar(godel):
    f = FuzzyMatrix.row_vector(godel, [1, 1])
    g = FuzzyMatrix.column_vector(godel, [0.4, 0.9])
    assert compose(f, g).scalar() == 0.9


def test_compose_errors(godel):
    with pytest.raises(ShapeError):
        compose(rel(godel, [[1, 0.3]]), rel(godel, [[1, 0.3]]))
    with pytest.raises(LatticeMismatchError):
        compose(rel(godel, [[1]]), rel(ResiduatedLattice.product(), [[1]]))


def test_converse(godel):
    m = rel(godel, [[0.2, 1], [0.6, 0.4]])
    assert converse(m).tolist() == [[0.2, 0.6], [1, 0.4]]
    assert equal_rel(converse(converse(m)), m)
    symmetric = rel(godel, [[1, 0.5], [0.5, 0.2]])
    assert equal_rel(converse(symmetric), symmetric)


@pytest.mark.parametrize("lattice", LATTICES, ids=lambda l: l.name)
def test_composition_laws(lattice, rng):
    for _ in range(SAMPLES):
        p, q, r = (random_matrix(lattice, rng, 3, 3) for _ in range(3))
        assert equal_rel(compose(compose(p, q), r), compose(p, compose(q, r)))
        assert equal_rel(converse(compose(p, q)), compose(converse(q), converse(p)))
        assert equal_rel(compose(p, pointwise_join(q, r)), pointwise_join(compose(p, q), compose(p, r)))
        assert equal_rel(compose(pointwise_join(q, r), p), pointwise_join(compose(q, p), compose(r, p)))
        assert equal_rel(converse(pointwise_join(q, r)), pointwise_join(converse(q), converse(r)))

        low, high = pointwise_meet(q, r), q
        assert leq_rel(compose(p, low), compose(p, high))
        assert leq_rel(compose(low, p), compose(high, p))


def test_mixed_associativity(godel, rng):
    f = FuzzyMatrix(godel, random_values(godel, rng, (1, 3)))
    phi = random_matrix(godel, rng, 3, 2)
    g = FuzzyMatrix(godel, random_values(godel, rng, (2, 1)))
    assert equal_rel(compose(compose(f, phi), g), compose(f, compose(phi, g)))


# ----------------------------------------------------------------------
# pointwise operations

def test_pointwise_meet_examples(godel, rng):
    assert pointwise_meet(rel(godel, [[1, 0.6]]), rel(godel, [[0.7, 1]])).tolist() == [[0.7, 0.6]]
    m = random_matrix(godel, rng, 2, 3)
    assert equal_rel(pointwise_meet(m, FuzzyMatrix.ones(godel, 2, 3)), m)
    assert leq_rel(pointwise_meet(m, random_matrix(godel, rng, 2, 3)), m)


def test_pointwise_shape_mismatch(godel):
    with pytest.raises(ShapeError):
        pointwise_meet(rel(godel, [[1, 0.6]]), rel(godel, [[1], [0.6]]))


def test_empty_meet_and_join(godel):
    assert meet_all([], godel, 2, 2).tolist() == [[1, 1], [1, 1]]
    assert join_all([], godel, 1, 2).tolist() == [[0, 0]]


def test_leq_uses_tolerance():
    product = ResiduatedLattice.product()
    a, b = rel(product, [[0.3 + 1e-13]]), rel(product, [[0.3]])
    assert leq_rel(a, b)
    assert equal_rel(a, b)
    assert not leq_rel(rel(product, [[0.31]]), b)


# ----------------------------------------------------------------------
# arrows

def test_arrow_right_examples(godel):
    eta = FuzzyMatrix.row_vector(godel, [1, 0.5, 0.3])
    xi = FuzzyMatrix.row_vector(godel, [0.4, 1])
    assert arrow_right(eta, xi).tolist() == [[0.4, 1], [0.4, 1], [1, 1]]

    ones = FuzzyMatrix.row_vector(godel, [1, 1])
    assert arrow_right(ones, xi).tolist() == [[0.4, 1], [0.4, 1]]
    assert arrow_right(eta, ones).tolist() == [[1, 1]] * 3


def test_arrow_left_examples(godel, rng):
    eta = FuzzyMatrix.row_vector(godel, [0.4])
    xi = FuzzyMatrix.row_vector(godel, [1, 0.5])
    assert arrow_left(eta, xi).tolist() == [[0.4, 0.4]]

    eta = FuzzyMatrix.row_vector(godel, random_values(godel, rng, 3))
    xi = FuzzyMatrix.row_vector(godel, random_values(godel, rng, 2))
    assert equal_rel(arrow_left(eta, xi), converse(arrow_right(xi, eta)))
    assert arrow_left(FuzzyMatrix.row_vector(godel, [1, 1]), xi).tolist() == [[1, 1], [1, 1]]


@pytest.mark.parametrize("lattice", LATTICES, ids=lambda l: l.name)
def test_arrow_bi_is_meet_of_arrows(lattice, rng):
    for _ in range(20):
        eta = FuzzyMatrix.row_vector(lattice, random_values(lattice, rng, 3))
        xi = FuzzyMatrix.column_vector(lattice, random_values(lattice, rng, 4))
        expected = pointwise_meet(arrow_right(eta, xi), arrow_left(eta, xi))
        assert equal_rel(arrow_bi(eta, xi), expected)
        assert np.all(arrow_bi(eta, eta).entries.diagonal() == lattice.top)


def test_arrow_bi_example(godel):
    assert arrow_bi(FuzzyMatrix.row_vector(godel, [1]), FuzzyMatrix.row_vector(godel, [0.3])).tolist() == [[0.3]]


def test_arrow_needs_vectors(godel):
    with pytest.raises(ShapeError):
        arrow_right(rel(godel, [[1, 0.5], [0.5, 1]]), FuzzyMatrix.row_vector(godel, [1]))


# ----------------------------------------------------------------------
# residuals

def test_right_residual_examples(godel, rng):
    alpha = rel(godel, [[1, 0.5], [0.3, 1]])
    phi = rel(godel, [[0.4], [0.8]])
    assert right_residual(phi, alpha).tolist() == [[0.4], [0.4]]

    phi = random_matrix(godel, rng, 2, 3)
    assert equal_rel(right_residual(phi, FuzzyMatrix.identity(godel, 2)), phi)


def test_left_residual_examples(godel, rng):
    beta = rel(godel, [[1, 0.6], [0.2, 1]])
    phi = rel(godel, [[0.5, 0.9]])
    assert left_residual(phi, beta).tolist() == [[0.5, 0.9]]

    phi = random_matrix(godel, rng, 3, 2)
    assert equal_rel(left_residual(phi, FuzzyMatrix.identity(godel, 2)), phi)


@pytest.mark.parametrize("lattice", LATTICES, ids=lambda l: l.name)
def test_residuals_solve_their_inequalities(lattice, rng):
    for _ in range(50):
        alpha = random_matrix(lattice, rng, 3, 3)
        beta = random_matrix(lattice, rng, 2, 2)
        phi = random_matrix(lattice, rng, 3, 2)
        assert leq_rel(compose(alpha, right_residual(phi, alpha)), phi)
        assert leq_rel(compose(left_residual(phi, beta), beta), phi)


def test_residual_shape_errors(godel):
    with pytest.raises(ShapeError):
        right_residual(rel(godel, [[1, 0.5]]), rel(godel, [[1, 0], [0, 1]]))
    with pytest.raises(ShapeError):
        left_residual(rel(godel, [[1, 0.5]]), rel(godel, [[1]]))


def all_matrices(lattice, rows, cols):
    for entries in itertools.product(range(lattice.n + 1), repeat=rows * cols):
        yield FuzzyMatrix(lattice, np.asarray(entries).reshape(rows, cols))


def assert_greatest(candidate, inequality, candidates):
    """`candidate` solves `inequality` and is above every solution among `candidates`."""
    assert inequality(candidate)
    for chi in candidates:
        if inequality(chi):
            assert leq_rel(chi, candidate)


def test_residuals_and_arrows_are_greatest_solutions(rng):
    chain = ResiduatedLattice.chain(4)
    candidates = list(all_matrices(chain, 2, 2))
    for _ in range(50):
        alpha = random_matrix(chain, rng, 2, 2)
        phi = random_matrix(chain, rng, 2, 2)
        eta = FuzzyMatrix.row_vector(chain, random_values(chain, rng, 2))
        xi = FuzzyMatrix.row_vector(chain, random_values(chain, rng, 2))

        assert_greatest(right_residual(phi, alpha), lambda chi: leq_rel(compose(alpha, chi), phi), candidates)
        assert_greatest(left_residual(phi, alpha), lambda chi: leq_rel(compose(chi, alpha), phi), candidates)
        # η ∘ φ ≤ ξ  and  φ ∘ ξᵀ ≤ ηᵀ
        assert_greatest(arrow_right(eta, xi), lambda chi: leq_rel(compose(eta, chi), xi), candidates)
        assert_greatest(arrow_left(eta, xi), lambda chi: leq_rel(compose(chi, converse(xi)), converse(eta)),
                        candidates)


# ----------------------------------------------------------------------
# crisp parts

def test_crisp_part(godel, rng):
    assert crisp_part(rel(godel, [[1, 0.7], [0.6, 1]])).tolist() == [[1, 0], [0, 1]]
    assert crisp_part(FuzzyMatrix.ones(godel, 2, 2)).tolist() == [[1, 1], [1, 1]]
    crisp = rel(godel, [[1, 0], [1, 1]])
    assert equal_rel(crisp_part(crisp), crisp)
    assert is_crisp(crisp)
    assert not is_crisp(rel(godel, [[1, 0.7]]))


def test_crisp_part_on_chain():
    chain = ResiduatedLattice.chain(4)
    assert crisp_part(rel(chain, [[4, 3], [0, 1]])).tolist() == [[4, 0], [0, 0]]
