import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss

from hmflow import InvalidArgumentError, OutOfDomainError, UnsupportedDegreeError
from hmflow.exceptions import AssemblyError
from hmflow.fem import (
    FeFunction,
    FeSpace,
    assemble_convection_1d,
    assemble_mass,
    assemble_stiffness,
    assemble_weighted_mass,
    discrete_laplacian,
    error_norms,
    error_norms_to,
    evaluate,
    interpolate,
    interval_rule,
    lumped_mass,
    prolong,
    triangle_rule,
    weighted_mass_from_gradient,
)
from hmflow.mesh import build_disk_mesh, build_interval_mesh


def polygon_area(level):
    rings = 2 ** level
    return 3 * rings * np.sin(np.pi / (3 * rings))


@pytest.mark.parametrize("degree", [1, 2])
def test_interval_rule_integrates_polynomials(degree):
    rule = interval_rule(degree)
    for power in range(2 * degree + 3):
        assert np.isclose(rule.weights @ rule.points ** power, 1.0 / (power + 1))
    assert np.all((rule.points > 0) & (rule.points < 1))


@pytest.mark.parametrize(
    "degree,a,b,exact",
    [
        (1, 1, 1, 1.0 / 24.0),
        (1, 2, 0, 1.0 / 12.0),
        (2, 2, 2, 1.0 / 180.0),
        (2, 5, 0, 1.0 / 42.0),
        (2, 3, 2, 1.0 / 420.0),
    ],
)
def test_triangle_rule_integrates_monomials(degree, a, b, exact):
    rule = triangle_rule(degree)
    xi, eta = rule.points[:, 1], rule.points[:, 2]
    assert np.isclose(rule.weights.sum(), 0.5)
    assert np.isclose(rule.weights @ (xi ** a * eta ** b), exact, rtol=1e-13)


def test_unsupported_degree():
    mesh = build_interval_mesh(4)
    with pytest.raises(UnsupportedDegreeError):
        FeSpace(mesh, 3)
    with pytest.raises(UnsupportedDegreeError):
        triangle_rule(0)


def test_invalid_value_dimension():
    with pytest.raises(InvalidArgumentError):
        FeSpace(build_interval_mesh(4), 1, value_dim=2)


def test_interval_dof_layout():
    space = FeSpace(build_interval_mesh(4), 2)
    assert space.n_dofs == 9
    assert np.allclose(space.dof_coordinates[:5], [0, 0.25, 0.5, 0.75, 1.0])
    assert np.allclose(space.dof_coordinates[5:], [0.125, 0.375, 0.625, 0.875])
    assert np.array_equal(space.boundary_dofs, [0, 4])
    assert np.array_equal(space.cell_dofs[1], [1, 2, 6])


def test_disk_dof_layout():
    mesh = build_disk_mesh(2, isoparametric=True)
    space = FeSpace(mesh, 2, value_dim=3)
    assert space.n_scalar == mesh.n_vertices + mesh.n_edges
    assert space.n_dofs == 3 * space.n_scalar
    assert space.boundary_dofs.size == 2 * 6 * 4
    assert space.interior_component_dofs.size == 3 * space.interior_dofs.size
    radii = np.linalg.norm(space.dof_coordinates[space.boundary_dofs], axis=1)
    assert np.max(np.abs(radii - 1.0)) <= 1e-14


def test_interpolate_interval():
    space = FeSpace(build_interval_mesh(4), 2)
    u = interpolate(space, lambda r: r ** 2)
    assert np.allclose(u.coefficients, space.dof_coordinates ** 2, atol=0, rtol=0)
    assert np.allclose(evaluate(u, np.array([0.1, 0.3, 0.9])), [0.01, 0.09, 0.81])


def test_interpolate_vector_constant():
    space = FeSpace(build_disk_mesh(1), 1, value_dim=3)
    u = interpolate(space, lambda x: np.array([0.0, 0.0, 1.0]))
    assert u.nodal().shape == (space.n_scalar, 3)
    assert np.array_equal(u.nodal_lengths(), np.ones(space.n_scalar))
    assert np.array_equal(u.components()[2], np.ones(space.n_scalar))


def test_function_arithmetic_needs_same_space():
    mesh = build_interval_mesh(4)
    u = FeFunction(FeSpace(mesh, 1))
    v = FeFunction(FeSpace(mesh, 2))
    with pytest.raises(InvalidArgumentError):
        u - v
    with pytest.raises(InvalidArgumentError):
        FeFunction(FeSpace(mesh, 1), np.zeros(3))


def test_closed_form_interval_matrices():
    space = FeSpace(build_interval_mesh(2), 1)
    h = 0.5
    mass = h / 6.0 * np.array([[2, 1, 0], [1, 4, 1], [0, 1, 2]])
    stiffness = 1.0 / h * np.array([[1, -1, 0], [-1, 2, -1], [0, -1, 1]])
    assert np.allclose(assemble_mass(space).toarray(), mass, atol=1e-15)
    assert np.allclose(assemble_stiffness(space).toarray(), stiffness, atol=1e-14)


@pytest.mark.parametrize("degree", [1, 2])
def test_stiffness_of_linear_function(degree):
    space = FeSpace(build_interval_mesh(8), degree)
    f = space.dof_coordinates
    stiffness = assemble_stiffness(space)
    assert np.isclose(f @ stiffness @ f, 1.0, rtol=1e-13)
    assert np.max(np.abs(stiffness @ np.ones(space.n_dofs))) <= 1e-12


@pytest.mark.parametrize(
    "level,degree,isoparametric,expected,tolerance",
    [
        (2, 1, False, polygon_area(2), 1e-13),
        (3, 1, False, polygon_area(3), 1e-13),
        (3, 2, True, np.pi, 1e-4),
    ],
)
def test_disk_mass_total(level, degree, isoparametric, expected, tolerance):
    space = FeSpace(build_disk_mesh(level, isoparametric=isoparametric), degree)
    assert abs(assemble_mass(space).sum() - expected) <= tolerance
    assert abs(space.quadrature().weights.sum() - expected) <= tolerance


def test_straight_quadratic_mass_matches_polygon():
    space = FeSpace(build_disk_mesh(3), 2)
    assert abs(space.quadrature().weights.sum() - np.pi) <= 1e-2
    assert np.isclose(space.quadrature().weights.sum(), polygon_area(3), rtol=1e-13)


def test_disk_stiffness_kernel():
    space = FeSpace(build_disk_mesh(2, isoparametric=True), 2, value_dim=3)
    stiffness = assemble_stiffness(space)
    assert stiffness.shape == (space.n_dofs, space.n_dofs)
    assert np.max(np.abs(stiffness @ np.ones(space.n_dofs))) <= 1e-12
    assert abs(stiffness - stiffness.T).max() <= 1e-14


def test_disk_stiffness_of_coordinate():
    space = FeSpace(build_disk_mesh(2), 1)
    x = space.dof_coordinates[:, 0]
    assert np.isclose(x @ assemble_stiffness(space) @ x, polygon_area(2), rtol=1e-12)


def test_weighted_mass_constant_field_vanishes():
    space = FeSpace(build_disk_mesh(2), 1, value_dim=3)
    u = interpolate(space, lambda x: np.array([0.0, 0.0, 1.0]))
    weighted = weighted_mass_from_gradient(space.scalar_space(), u.gradients_at_quadrature())
    assert weighted.shape == (space.n_scalar, space.n_scalar)
    assert np.max(np.abs(weighted.toarray())) <= 1e-14


def test_weighted_mass_with_constant_weight():
    space = FeSpace(build_interval_mesh(4), 2)
    weighted = assemble_weighted_mass(space, 3.0)
    assert np.allclose(weighted.toarray(), 3.0 * assemble_mass(space).toarray())


def test_weighted_mass_callable_weight():
    space = FeSpace(build_interval_mesh(16), 2)
    weighted = assemble_weighted_mass(space, lambda r: r)
    # int r dr over the unit interval
    assert np.isclose(weighted.sum(), 0.5, rtol=1e-13)


def test_weight_not_finite():
    space = FeSpace(build_disk_mesh(1), 1)
    weight = np.ones(space.quadrature().weights.shape)
    weight[3, 1] = np.nan
    with pytest.raises(AssemblyError, match="element 3"):
        assemble_weighted_mass(space, weight)
    with pytest.raises(AssemblyError):
        assemble_weighted_mass(space, np.inf)


def test_convection_matches_loops():
    mesh = build_interval_mesh(4)
    space = FeSpace(mesh, 1)
    points, weights = leggauss(3)
    expected = np.zeros((5, 5))
    for e in range(4):
        left, right = mesh.nodes[e], mesh.nodes[e + 1]
        for s, w in zip(points, weights):
            r = 0.5 * (left + right) + 0.5 * (right - left) * s
            jw = 0.5 * (right - left) * w
            values = [(right - r) / mesh.h, (r - left) / mesh.h]
            slopes = [-1.0 / mesh.h, 1.0 / mesh.h]
            for i in range(2):
                for j in range(2):
                    expected[e + i, e + j] += jw * slopes[j] * values[i] / r
    convection = assemble_convection_1d(space)
    assert np.allclose(convection.toarray(), expected, atol=1e-12, rtol=0)
    assert np.max(np.abs(convection @ np.ones(5))) <= 1e-12


def test_convection_needs_interval():
    with pytest.raises(InvalidArgumentError):
        assemble_convection_1d(FeSpace(build_disk_mesh(1), 1))
    with pytest.raises(InvalidArgumentError):
        assemble_convection_1d(FeSpace(build_interval_mesh(4), 1, value_dim=3))


@pytest.mark.parametrize("level", [1, 2, 3])
def test_lumped_mass(level):
    space = FeSpace(build_disk_mesh(level), 1, value_dim=3)
    lumped = lumped_mass(space)
    assert lumped.weights.shape == (space.n_scalar,)
    assert np.all(lumped.weights > 0)
    assert np.isclose(lumped.total, polygon_area(level), rtol=1e-13)


def test_lumped_mass_interval():
    lumped = lumped_mass(FeSpace(build_interval_mesh(4), 1))
    assert np.allclose(lumped.weights, [0.125, 0.25, 0.25, 0.25, 0.125])
    assert np.isclose(lumped.norm(np.ones(5)), 1.0)


def test_lumped_mass_linear_only():
    with pytest.raises(UnsupportedDegreeError):
        lumped_mass(FeSpace(build_disk_mesh(1), 2))


def test_discrete_laplacian_identity():
    space = FeSpace(build_disk_mesh(2), 1, value_dim=3)
    lumped = lumped_mass(space)
    stiffness = assemble_stiffness(space)
    rng = np.random.default_rng(7)
    for _ in range(20):
        u = FeFunction(space, rng.standard_normal(space.n_dofs))
        v = FeFunction(space, rng.standard_normal(space.n_dofs))
        laplacian = discrete_laplacian(space, u, lumped)
        left = -lumped.inner(laplacian.nodal(), v.nodal())
        right = v.coefficients @ stiffness @ u.coefficients
        assert abs(left - right) <= 1e-12 * max(1.0, abs(right))


def test_discrete_laplacian_of_constant():
    space = FeSpace(build_disk_mesh(2), 1, value_dim=3)
    u = interpolate(space, lambda x: np.array([0.6, 0.0, 0.8]))
    laplacian = discrete_laplacian(space, u, lumped_mass(space))
    assert np.max(np.abs(laplacian.coefficients)) <= 1e-12


def test_discrete_laplacian_needs_matching_space():
    mesh = build_disk_mesh(1)
    space = FeSpace(mesh, 1)
    other = FeFunction(FeSpace(build_disk_mesh(1), 1))
    with pytest.raises(InvalidArgumentError):
        discrete_laplacian(space, other, lumped_mass(space))


def test_error_norms_closed_form():
    space = FeSpace(build_interval_mesh(8), 1)
    r = interpolate(space, lambda x: x)
    zero = FeFunction(space)
    pair = error_norms(r, zero)
    assert np.isclose(pair.l2, 1.0 / np.sqrt(3.0), rtol=1e-13)
    assert np.isclose(pair.h1, np.sqrt(4.0 / 3.0), rtol=1e-13)
    assert error_norms(r, r) == (0.0, 0.0)


def test_error_norms_vector_disk():
    space = FeSpace(build_disk_mesh(2), 1, value_dim=3)
    u = interpolate(space, lambda x: np.array([0.0, 0.0, 1.0]))
    pair = error_norms(u, FeFunction(space))
    assert np.isclose(pair.l2, np.sqrt(polygon_area(2)), rtol=1e-13)
    assert np.isclose(pair.h1, pair.l2, rtol=1e-13)


def test_error_norms_need_same_space():
    mesh = build_interval_mesh(4)
    with pytest.raises(InvalidArgumentError):
        error_norms(FeFunction(FeSpace(mesh, 1)), FeFunction(FeSpace(build_interval_mesh(4), 1)))


@pytest.mark.parametrize("degree", [1, 2])
def test_interpolation_error_orders(degree):
    errors = []
    for n in (8, 16, 32):
        space = FeSpace(build_interval_mesh(n), degree)
        u = interpolate(space, lambda r: np.sin(np.pi * r))
        errors.append(
            error_norms_to(
                u,
                lambda r: np.sin(np.pi * r),
                lambda r: np.pi * np.cos(np.pi * r),
            )
        )
    l2 = np.array([e.l2 for e in errors])
    h1 = np.array([e.h1 for e in errors])
    assert np.all(np.abs(np.log2(l2[:-1] / l2[1:]) - (degree + 1)) <= 0.2)
    assert np.all(np.abs(np.log2(h1[:-1] / h1[1:]) - degree) <= 0.2)


def test_error_norms_to_needs_scalar():
    space = FeSpace(build_interval_mesh(4), 1, value_dim=3)
    with pytest.raises(InvalidArgumentError):
        error_norms_to(FeFunction(space), lambda r: r)


def test_evaluate_out_of_domain():
    u = interpolate(FeSpace(build_interval_mesh(4), 1), lambda r: r)
    with pytest.raises(OutOfDomainError):
        evaluate(u, np.array([0.5, 1.1]))
    with pytest.raises(OutOfDomainError):
        evaluate(u, -0.1)


def test_prolong_is_exact():
    coarse = interpolate(FeSpace(build_interval_mesh(4), 2), lambda r: np.cos(3 * r))
    fine_space = FeSpace(build_interval_mesh(16), 2)
    fine = prolong(coarse, fine_space)
    samples = np.linspace(0.0, 1.0, 97)
    assert np.allclose(evaluate(fine, samples), evaluate(coarse, samples), atol=1e-14)


def test_prolong_to_higher_degree():
    coarse = interpolate(FeSpace(build_interval_mesh(4), 1), lambda r: r ** 2)
    fine = prolong(coarse, FeSpace(build_interval_mesh(8), 2))
    samples = np.linspace(0.0, 1.0, 33)
    assert np.allclose(evaluate(fine, samples), evaluate(coarse, samples), atol=1e-14)


def test_prolong_needs_nested_spaces():
    coarse = interpolate(FeSpace(build_interval_mesh(4), 2), lambda r: r)
    with pytest.raises(InvalidArgumentError):
        prolong(coarse, FeSpace(build_interval_mesh(6), 2))
    with pytest.raises(InvalidArgumentError):
        prolong(coarse, FeSpace(build_interval_mesh(8), 1))
    with pytest.raises(InvalidArgumentError):
        prolong(coarse, FeSpace(build_disk_mesh(1), 2))
