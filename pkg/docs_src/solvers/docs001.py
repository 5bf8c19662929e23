from hmflow import FeSpace, Hmhf2dProblem, InitialCondition, Method
from hmflow import build_disk_mesh, solve_hmhf
from hmflow.reference import (
    LiftedReference,
    ReferenceConfig,
    build_reference,
    evaluate_against_reference,
    reference_metadata,
)

ic = InitialCondition.HALFPI_R2
space = FeSpace(build_disk_mesh(3), degree=1, value_dim=3)
problem = Hmhf2dProblem(
    u0=ic.field, T=0.01, tau=1e-3, space=space, method=Method.TFEM, k=2
)
trajectory = solve_hmhf(problem)

config = ReferenceConfig(n=256, p=2, tau=1e-4, k=2)
reference = build_reference(ic, 0.01, config)
lifted = LiftedReference.from_profile(
    reference, reference_metadata(ic, 0.01, config), space
)
l2, h1 = evaluate_against_reference(trajectory.final, lifted)
