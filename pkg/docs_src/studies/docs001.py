from hmflow import StudySpec, run_study
from hmflow.reference import ReferenceConfig

spec = StudySpec(
    name="radial-tau",
    method="rshmhf",
    p=2,
    k=2,
    axis="tau",
    ladder=(0.05, 0.025, 0.0125),
    fixed=2 ** -5,
    reference=ReferenceConfig(n=128, p=2, tau=1e-3, k=2),
)
report = run_study(spec, cache=".hmflow_cache")
print(report.to_markdown())
