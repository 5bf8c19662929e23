from hmflow import FeSpace, InitialCondition, Rshmhf1dProblem, build_interval_mesh
from hmflow import solve_rshmhf

space = FeSpace(build_interval_mesh(64), degree=2)
problem = Rshmhf1dProblem(
    u0=InitialCondition.HALFPI_R2.profile, T=0.1, tau=1e-3, space=space
)
trajectory = solve_rshmhf(problem, k=2, snapshot_times=[0.05])

assert trajectory.steps == 100
assert trajectory.energies[-1] < trajectory.energies[0]
halfway = trajectory.snapshots[0.05]
