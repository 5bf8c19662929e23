from hmflow import FeSpace, Hmhf2dProblem, InitialCondition, Method
from hmflow import build_disk_mesh, post_step, solve_hmhf
from hmflow.solvers import BfemStepper

defects = []


@post_step(BfemStepper)
def track_length(sender, step, state, iterations, **kwargs):
    defects.append((step, iterations, abs(state.nodal_lengths() - 1.0).max()))


space = FeSpace(build_disk_mesh(2), degree=1, value_dim=3)
problem = Hmhf2dProblem(
    u0=InitialCondition.HALFPI_R2.field,
    T=0.004,
    tau=0.002,
    space=space,
    method=Method.BFEM,
)
solve_hmhf(problem)
BfemStepper.Meta.signals.post_step.disconnect(track_length)

assert [step for step, _, _ in defects] == [1, 2]
