import numpy as np
import pytest

from hmflow import (
    DegenerateExtrapolationError,
    FixedPointDivergenceError,
    InvalidArgumentError,
    NormalizationError,
    UnsupportedDegreeError,
    UnsupportedSchemeError,
)
from hmflow.fem import FeFunction, FeSpace, interpolate
from hmflow.mesh import build_disk_mesh
from hmflow.reference import InitialCondition
from hmflow.solvers import (
    BfemStepper,
    FixedPointConfig,
    Hmhf2dProblem,
    Method,
    bfem_step,
    constraint_matrix,
    default_bfem_tau,
    extrapolate_2d_normalized,
    normalize_nodal,
    ppfem_step,
    solve_hmhf,
    tfem_step,
)

# barycentric points and weights (relative to the area) of the 3-point rule
RULE_POINTS = np.array([[2, 1, 1], [1, 2, 1], [1, 1, 2]]) / 6.0
RULE_WEIGHTS = np.full(3, 1.0 / 3.0)


def north(points):
    return np.array([0.0, 0.0, 1.0])


def disk_problem(level=2, degree=1, method=Method.PPFEM, k=1, T=0.02, tau=0.01, **kwargs):
    space = FeSpace(
        build_disk_mesh(level, isoparametric=degree == 2), degree, value_dim=3
    )
    u0 = kwargs.pop("u0", InitialCondition.HALFPI_R2.field)
    return Hmhf2dProblem(
        u0=u0, T=T, tau=tau, space=space, method=method, k=k, **kwargs
    )


def dense_p1_matrices(mesh):
    """
    Scalar P1 mass and stiffness from the closed form element matrices,
    together with per-triangle areas and barycentric gradients.
    """
    n = mesh.n_vertices
    mass, stiffness = np.zeros((n, n)), np.zeros((n, n))
    areas, gradients = [], []
    local_mass = (np.ones((3, 3)) + np.eye(3)) / 12.0
    for triangle in mesh.triangles:
        p = mesh.vertices[triangle]
        jacobian = np.column_stack([p[1] - p[0], p[2] - p[0]])
        area = 0.5 * np.linalg.det(jacobian)
        grads = np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]]) @ np.linalg.inv(jacobian)
        block = np.ix_(triangle, triangle)
        mass[block] += area * local_mass
        stiffness[block] += area * grads @ grads.T
        areas.append(area)
        gradients.append(grads)
    return mass, stiffness, np.array(areas), np.array(gradients)


def dirichlet_solve(matrix, rhs, boundary, values):
    n = matrix.shape[0]
    interior = np.setdiff1d(np.arange(n), boundary)
    solution = np.zeros(n)
    solution[boundary] = values
    reduced_rhs = rhs[interior] - matrix[np.ix_(interior, boundary)] @ values
    solution[interior] = np.linalg.solve(matrix[np.ix_(interior, interior)], reduced_rhs)
    return solution


@pytest.mark.parametrize(
    "method,degree,k",
    [
        (Method.PPFEM, 1, 1),
        (Method.PPFEM, 2, 2),
        (Method.TFEM, 1, 2),
        (Method.TFEM, 2, 1),
        (Method.BFEM, 1, 1),
    ],
)
def test_constant_field_is_stationary(method, degree, k):
    problem = disk_problem(degree=degree, method=method, k=k, u0=north)
    trajectory = solve_hmhf(problem)
    final = trajectory.final.nodal()
    assert np.max(np.abs(final - np.array([0.0, 0.0, 1.0]))) <= 1e-12
    assert max(trajectory.energies) <= 1e-12


@pytest.mark.parametrize("degree,k", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_ppfem_keeps_unit_length(degree, k):
    trajectory = solve_hmhf(disk_problem(degree=degree, k=k))
    assert trajectory.steps == 2
    assert trajectory.max_length_defect <= 1e-14
    assert trajectory.iterations == []
    assert trajectory.mean_iterations is None


def test_ppfem_step_matches_dense_assembly():
    problem = disk_problem(level=2, tau=0.01)
    space, mesh = problem.space, problem.space.mesh
    u = interpolate(space, problem.u0)
    mass, stiffness, areas, gradients = dense_p1_matrices(mesh)

    nodal = u.nodal()
    weighted = np.zeros_like(mass)
    local_mass = (np.ones((3, 3)) + np.eye(3)) / 12.0
    for triangle, area, grads in zip(mesh.triangles, areas, gradients):
        squared = np.sum((grads.T @ nodal[triangle]) ** 2)
        weighted[np.ix_(triangle, triangle)] += squared * area * local_mass
    matrix = mass / problem.tau + stiffness - weighted
    boundary = space.boundary_dofs
    expected = np.column_stack(
        [
            dirichlet_solve(matrix, mass @ nodal[:, c] / problem.tau, boundary, nodal[boundary, c])
            for c in range(3)
        ]
    )
    expected /= np.linalg.norm(expected, axis=1)[:, None]

    state = ppfem_step(problem, [u], 1)
    assert np.max(np.abs(state.nodal() - expected)) <= 1e-10


def test_tfem_step_matches_dense_assembly():
    problem = disk_problem(level=2, method=Method.TFEM, tau=0.01)
    space, mesh = problem.space, problem.space.mesh
    u = interpolate(space, problem.u0)
    mass, stiffness, _, _ = dense_p1_matrices(mesh)
    nodal = u.nodal()
    uhat = nodal / np.linalg.norm(nodal, axis=1)[:, None]

    n = mesh.n_vertices
    blocks = [np.zeros((n, n)) for _ in range(3)]
    for triangle in mesh.triangles:
        p = mesh.vertices[triangle]
        area = 0.5 * np.linalg.det(np.column_stack([p[1] - p[0], p[2] - p[0]]))
        for lam, weight in zip(RULE_POINTS, RULE_WEIGHTS):
            for c in range(3):
                value = lam @ uhat[triangle, c]
                blocks[c][np.ix_(triangle, triangle)] += area * weight * value * np.outer(lam, lam)

    interior = space.scalar_space().interior_dofs
    block = np.ix_(interior, interior)
    primal = np.kron(np.eye(3), (mass + problem.tau * stiffness)[block])
    constraint = np.hstack([b[block] for b in blocks])
    m = constraint.shape[0]
    saddle = np.block([[primal, constraint.T], [constraint, np.zeros((m, m))]])
    known = -nodal
    rhs_primal = np.concatenate([(stiffness @ known[:, c])[interior] for c in range(3)])
    solution = np.linalg.solve(saddle, np.concatenate([rhs_primal, np.zeros(m)]))
    udot = np.zeros((n, 3))
    udot[interior] = solution[: 3 * interior.size].reshape(3, -1).T
    expected = problem.tau * udot - known

    result = tfem_step(problem, [u], 1)
    assert np.max(np.abs(result.u_next.nodal() - expected)) <= 1e-10
    assert np.max(np.abs(result.udot.nodal() - udot)) <= 1e-8
    assert result.multiplier.space.value_dim == 1


@pytest.mark.parametrize("degree,k", [(1, 1), (2, 2)])
def test_tfem_velocity_is_tangential(degree, k):
    problem = disk_problem(degree=degree, method=Method.TFEM, k=k)
    u = interpolate(problem.space, problem.u0)
    history = [u]
    if k == 2:
        history.append(tfem_step(problem, history, 1).u_next)
    result = tfem_step(problem, history, k)
    space = problem.space
    uhat = extrapolate_2d_normalized(history, k)
    constraint = constraint_matrix(space, uhat)
    interior_udot = result.udot.coefficients[space.interior_component_dofs]
    scale = abs(constraint).sum(axis=1).max() * np.max(np.abs(interior_udot))
    assert np.max(np.abs(constraint @ interior_udot)) <= 1e-9 * scale
    assert np.all(result.udot.coefficients[space.boundary_component_dofs] == 0.0)
    assert result.multiplier.coefficients[space.scalar_space().boundary_dofs].sum() == 0.0


def test_tfem_length_defect_is_small():
    trajectory = solve_hmhf(disk_problem(method=Method.TFEM, k=2, T=0.01, tau=0.005))
    assert 0 < trajectory.max_length_defect <= 5e-2


def test_bfem_preserves_nodal_length():
    problem = disk_problem(method=Method.BFEM, T=0.004, tau=0.002)
    trajectory = solve_hmhf(problem)
    assert trajectory.max_length_defect <= 1e-10
    assert len(trajectory.iterations) == 2
    assert trajectory.mean_iterations >= 1


def test_bfem_step_matches_nodal_iteration():
    problem = disk_problem(method=Method.BFEM, T=0.002, tau=0.002)
    space, mesh = problem.space, problem.space.mesh
    u = interpolate(space, problem.u0)
    _, stiffness, areas, _ = dense_p1_matrices(mesh)
    lumped = np.zeros(mesh.n_vertices)
    for triangle, area in zip(mesh.triangles, areas):
        lumped[triangle] += area / 3.0
    interior = space.scalar_space().interior_dofs

    nodal = u.nodal()
    w = nodal.copy()
    for _ in range(200):
        laplacian = -(stiffness @ w) / lumped[:, None]
        updated = nodal.copy()
        for z in interior:
            a = np.cross(w[z], laplacian[z])
            matrix = 2.0 / problem.tau * np.eye(3) + np.cross(np.eye(3), a).T
            updated[z] = np.linalg.solve(matrix, 2.0 / problem.tau * nodal[z])
        change = np.max(np.abs(updated - w))
        w = updated
        if change < 1e-15:
            break
    expected = 2.0 * w - nodal

    state, iterations = bfem_step(problem, u)
    assert iterations >= 1
    assert np.max(np.abs(state.nodal() - expected)) <= 1e-8
    assert np.max(np.abs(state.nodal_lengths() - 1.0)) <= 1e-10


def test_bfem_fixed_point_divergence():
    problem = disk_problem(
        level=3,
        method=Method.BFEM,
        T=0.125,
        tau=0.125,
        fixed_point=FixedPointConfig(max_iterations=50),
    )
    with pytest.raises(FixedPointDivergenceError):
        solve_hmhf(problem)


def test_bfem_keeps_nodal_length_over_many_steps():
    tau = build_disk_mesh(3).h ** 2 / 4.0
    trajectory = solve_hmhf(disk_problem(level=3, method=Method.BFEM, T=50 * tau, tau=tau))
    assert trajectory.steps == 50
    assert trajectory.max_length_defect <= 1e-10
    assert len(trajectory.iterations) == 50


@pytest.mark.parametrize("level", [3, 4])
def test_bfem_fixed_point_needs_parabolic_time_step(level):
    h = build_disk_mesh(level).h
    for tau in (h ** 2 / 4.0, h ** 2 / 8.0):
        trajectory = solve_hmhf(
            disk_problem(level=level, method=Method.BFEM, T=2 * tau, tau=tau)
        )
        assert trajectory.max_length_defect <= 1e-10
    problem = disk_problem(
        level=level,
        method=Method.BFEM,
        T=h,
        tau=h,
        fixed_point=FixedPointConfig(max_iterations=50),
    )
    with pytest.raises(FixedPointDivergenceError):
        solve_hmhf(problem)


def test_ppfem_energy_does_not_increase():
    trajectory = solve_hmhf(disk_problem(level=4, T=0.05, tau=1e-3))
    energies = np.array(trajectory.energies)
    assert energies.shape == (51,)
    assert np.all(np.diff(energies) <= 1e-8)
    assert energies[-1] < energies[0]


def test_bfem_residual_norms():
    problem = disk_problem(method=Method.BFEM, T=0.002, tau=0.002)
    max_problem = problem.model_copy(
        update={"fixed_point": FixedPointConfig(residual_norm="max")}
    )
    lumped, largest = BfemStepper(problem), BfemStepper(max_problem)
    u = interpolate(problem.space, problem.u0).nodal()
    w = 1.01 * u
    e = w - u
    residual = np.cross(w, lumped.laplacian(e)) + np.cross(e, lumped.laplacian(u))
    lengths = np.linalg.norm(residual[lumped.interior], axis=1)
    weights = lumped.lumped.weights[lumped.interior]
    assert lengths.max() > 0
    assert largest.residual_norm(w, u) == pytest.approx(lengths.max(), rel=1e-12)
    assert lumped.residual_norm(w, u) == pytest.approx(
        np.sqrt(np.sum(weights * lengths ** 2)), rel=1e-12
    )

    u0 = interpolate(problem.space, problem.u0)
    by_lumped, _ = bfem_step(problem, u0)
    by_max, iterations = bfem_step(max_problem, u0)
    assert iterations >= 1
    assert np.max(np.abs(by_max.nodal() - by_lumped.nodal())) <= 1e-8
    with pytest.raises(ValueError):
        FixedPointConfig(residual_norm="l1")


def test_bfem_step_with_custom_config():
    problem = disk_problem(method=Method.BFEM, T=0.002, tau=0.002)
    u = interpolate(problem.space, problem.u0)
    with pytest.raises(FixedPointDivergenceError):
        bfem_step(problem, u, FixedPointConfig(max_iterations=1, tolerance=1e-300))


def test_snapshots_and_energies():
    trajectory = solve_hmhf(disk_problem(T=0.03, tau=0.01), snapshot_times=[0.0, 0.02])
    assert sorted(trajectory.snapshots) == [0.0, 0.02]
    assert len(trajectory.energies) == 4
    assert trajectory.energies[-1] < trajectory.energies[0]
    assert trajectory.method == "ppfem"


def test_problem_needs_vector_disk_space():
    with pytest.raises(InvalidArgumentError):
        Hmhf2dProblem(
            u0=north, T=0.1, tau=0.01, space=FeSpace(build_disk_mesh(1), 1)
        )


def test_problem_needs_unit_initial_field():
    with pytest.raises(InvalidArgumentError):
        disk_problem(u0=lambda points: np.array([0.0, 0.0, 2.0]))


def test_problem_time_step_must_divide():
    with pytest.raises(InvalidArgumentError):
        disk_problem(T=0.1, tau=0.03)


def test_bfem_needs_linear_elements():
    with pytest.raises(UnsupportedDegreeError):
        disk_problem(degree=2, method=Method.BFEM)


@pytest.mark.parametrize("method,k", [(Method.BFEM, 2), (Method.PPFEM, 3)])
def test_unsupported_orders(method, k):
    with pytest.raises(UnsupportedSchemeError):
        disk_problem(method=method, k=k)


def test_normalize_nodal():
    space = FeSpace(build_disk_mesh(1), 1, value_dim=3)
    u = interpolate(space, lambda points: np.array([3.0, 0.0, 4.0]))
    assert np.allclose(normalize_nodal(u).nodal(), [0.6, 0.0, 0.8])
    with pytest.raises(NormalizationError):
        normalize_nodal(FeFunction(space))


def test_degenerate_extrapolation():
    space = FeSpace(build_disk_mesh(1), 1, value_dim=3)
    u = interpolate(space, north)
    with pytest.raises(DegenerateExtrapolationError):
        extrapolate_2d_normalized([2.0 * u, u], 2)


def test_default_bfem_tau():
    assert default_bfem_tau(0.5, 0.1) == 0.05
    tau = default_bfem_tau(0.1, 0.1)
    assert tau <= 0.25 * 0.1 ** 2 * (1 + 1e-12)
    assert np.isclose(0.1 / tau, round(0.1 / tau))
    with pytest.raises(InvalidArgumentError):
        default_bfem_tau(0.0, 0.1)
