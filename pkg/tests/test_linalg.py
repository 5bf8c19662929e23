import numpy as np
import pytest
import scipy.linalg
import scipy.sparse as sp

from hmflow import InfSupError, InvalidArgumentError
from hmflow.exceptions import FactorizationError
from hmflow.fem import FeSpace, interpolate
from hmflow.linalg import (
    Factorization,
    KktSystem,
    as_csr,
    estimate_inf_sup,
    solve_direct,
    solve_kkt,
)
from hmflow.mesh import build_disk_mesh
from hmflow.reference import InitialCondition
from hmflow.solvers import inf_sup_constant


def test_identity_solve():
    rhs = np.arange(5.0)
    assert np.array_equal(solve_direct(sp.identity(5, format="csr"), rhs), rhs)


def test_small_system():
    x = solve_direct(sp.csr_matrix([[2.0, 1.0], [1.0, 2.0]]), np.ones(2))
    assert np.allclose(x, [1.0 / 3.0, 1.0 / 3.0], atol=1e-15)


def test_empty_system():
    assert solve_direct(sp.csr_matrix((0, 0)), np.zeros(0)).shape == (0,)


def test_singular_matrix():
    with pytest.raises(FactorizationError):
        solve_direct(sp.csr_matrix([[1.0, 1.0], [1.0, 1.0]]), np.ones(2))


def test_non_square_matrix():
    with pytest.raises(InvalidArgumentError):
        Factorization(sp.csr_matrix(np.ones((2, 3))))


def test_non_finite_entries():
    with pytest.raises(InvalidArgumentError):
        as_csr(np.array([[1.0, np.nan], [0.0, 1.0]]))


def test_random_spd_system():
    rng = np.random.default_rng(3)
    factor = rng.standard_normal((50, 50))
    matrix = factor @ factor.T + 50 * np.eye(50)
    expected = rng.standard_normal(50)
    x = solve_direct(sp.csr_matrix(matrix), matrix @ expected)
    assert np.max(np.abs(x - expected)) <= 1e-10


def test_factorization_reuse():
    matrix = sp.diags([1.0, 2.0, 4.0], format="csr")
    factorization = Factorization(matrix)
    rhs = np.array([[1.0, 2.0], [2.0, 4.0], [4.0, 8.0]])
    assert np.allclose(factorization.solve(rhs), [[1.0, 2.0], [1.0, 2.0], [1.0, 2.0]])


def test_kkt_hand_example():
    system = KktSystem(
        A=np.eye(2), B=np.array([[1.0, 0.0]]), rhs_primal=[1.0, 1.0], rhs_dual=[0.0]
    )
    primal, dual = solve_kkt(system)
    assert np.allclose(primal, [0.0, 1.0], atol=1e-15)
    assert np.allclose(dual, [1.0], atol=1e-15)


def test_kkt_without_constraints():
    system = KktSystem(
        A=2.0 * np.eye(3), B=np.zeros((0, 3)), rhs_primal=np.ones(3), rhs_dual=[]
    )
    primal, dual = solve_kkt(system)
    assert np.allclose(primal, 0.5)
    assert dual.shape == (0,)


def test_kkt_manufactured_solution():
    rng = np.random.default_rng(11)
    n, m = 12, 4
    factor = rng.standard_normal((n, n))
    A = factor @ factor.T + n * np.eye(n)
    B = rng.standard_normal((m, n))
    primal = rng.standard_normal(n)
    dual = rng.standard_normal(m)
    system = KktSystem(A=A, B=B, rhs_primal=A @ primal + B.T @ dual, rhs_dual=B @ primal)
    solved_primal, solved_dual = solve_kkt(system)
    assert np.allclose(solved_primal, primal, atol=1e-10)
    assert np.allclose(solved_dual, dual, atol=1e-10)
    assert np.max(np.abs(B @ solved_primal - B @ primal)) <= 1e-10


def test_kkt_zero_constraint_row():
    system = KktSystem(
        A=np.eye(3),
        B=np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
        rhs_primal=np.ones(3),
        rhs_dual=np.zeros(2),
    )
    with pytest.raises(InfSupError):
        solve_kkt(system)


def test_kkt_dependent_constraints():
    system = KktSystem(
        A=np.eye(3),
        B=np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 0.0]]),
        rhs_primal=np.ones(3),
        rhs_dual=np.zeros(2),
    )
    with pytest.raises(InfSupError):
        solve_kkt(system)


@pytest.mark.parametrize(
    "A,B,rhs_primal,rhs_dual",
    [
        (np.eye(3), np.ones((1, 3)), np.ones(2), np.zeros(1)),
        (np.eye(2), np.ones((1, 3)), np.ones(2), np.zeros(1)),
        (np.eye(2), np.eye(2), np.ones(2), np.zeros(2)),
    ],
)
def test_kkt_invalid_shapes(A, B, rhs_primal, rhs_dual):
    with pytest.raises(InvalidArgumentError):
        KktSystem(A=A, B=B, rhs_primal=rhs_primal, rhs_dual=rhs_dual)


@pytest.mark.parametrize("degree", [1, 2])
def test_inf_sup_of_constant_field(degree):
    space = FeSpace(build_disk_mesh(2, isoparametric=degree == 2), degree, value_dim=3)
    uhat = interpolate(space, lambda x: np.array([0.0, 0.0, 1.0]))
    assert abs(inf_sup_constant(space, uhat) - 1.0) <= 1e-6


def test_inf_sup_of_zero_field():
    space = FeSpace(build_disk_mesh(1), 1, value_dim=3)
    uhat = interpolate(space, lambda x: np.zeros(3))
    assert inf_sup_constant(space, uhat) == 0.0


@pytest.mark.parametrize("degree", [1, 2])
def test_inf_sup_of_initial_field_stays_bounded_under_refinement(degree):
    values = []
    for level in (2, 3, 4):
        space = FeSpace(build_disk_mesh(level, isoparametric=degree == 2), degree, value_dim=3)
        uhat = interpolate(space, InitialCondition.HALFPI_R2.field)
        values.append(inf_sup_constant(space, uhat))
    assert min(values) >= 0.3
    assert max(values) <= 1.1
    assert max(values) / min(values) <= 2.0


def orthogonal_to_linspace_pencil():
    # lowest eigenvector (1, -2, 1) is orthogonal to any affine start vector
    basis = np.column_stack(
        [
            np.array([1.0, -2.0, 1.0]) / np.sqrt(6.0),
            np.array([1.0, 0.0, -1.0]) / np.sqrt(2.0),
            np.array([1.0, 1.0, 1.0]) / np.sqrt(3.0),
        ]
    )
    B = basis @ np.diag([0.5, 1.0, 2.0]) @ basis.T
    identity = sp.identity(3, format="csr")
    return sp.csr_matrix(B), identity, identity


def test_inf_sup_finds_lowest_mode_for_any_start():
    B, Mv, Mw = orthogonal_to_linspace_pencil()
    assert abs(estimate_inf_sup(B, Mv, Mw) - 0.5) <= 1e-6
    assert all(abs(estimate_inf_sup(B, Mv, Mw, seed=seed) - 0.5) <= 1e-6 for seed in range(5))


def test_inf_sup_matches_dense_eigensolver():
    rng = np.random.default_rng(7)
    B = sp.csr_matrix(rng.standard_normal((6, 10)))
    mv = rng.standard_normal((10, 10))
    mv = sp.csr_matrix(mv @ mv.T + 10.0 * np.eye(10))
    mw = rng.standard_normal((6, 6))
    mw = mw @ mw.T + 6.0 * np.eye(6)
    schur = B.toarray() @ np.linalg.solve(mv.toarray(), B.toarray().T)
    lowest = scipy.linalg.eigh(schur, mw, eigvals_only=True, subset_by_index=[0, 0])[0]
    beta = estimate_inf_sup(B, mv, sp.csr_matrix(mw))
    assert beta == estimate_inf_sup(B, mv, sp.csr_matrix(mw))
    assert np.isclose(beta, np.sqrt(lowest), rtol=1e-5)
