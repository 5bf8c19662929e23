import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import pydantic

from hmflow.exceptions import StudyDefinitionError
from hmflow.fem import FeFunction
from hmflow.reference import ReferenceConfig, build_reference
from hmflow.studies.report import ErrorReport
from hmflow.studies.runner import run_study
from hmflow.studies.spec import StudySpec

logger = logging.getLogger(__name__)


class MethodSummary(pydantic.BaseModel):
    name: str
    method: str
    p: int
    k: int
    best_l2: Optional[float] = None
    wall_per_step: Optional[float] = None
    time_to_target: Optional[float] = None
    rank: Optional[int] = None


class Comparison(pydantic.BaseModel):
    """
    Studies run side by side. Methods are ranked by the wall time they
    need to reach ``target_l2``, the smallest L2 error every method reaches.
    """

    target_l2: Optional[float] = None
    reports: List[ErrorReport]
    summaries: List[MethodSummary]

    def to_markdown(self) -> str:
        target = "-" if self.target_l2 is None else f"{self.target_l2:.4e}"
        lines = [
            f"### Comparison, common L2 target {target}",
            "",
            "| rank | study | method | p | BDF | best L2 | time/step [s] | time to target [s] |",
            "|---|---|---|---|---|---|---|---|",
        ]
        for s in self.summaries:
            lines.append(
                "| {} | {} | {} | {} | {} | {} | {} | {} |".format(
                    "-" if s.rank is None else s.rank,
                    s.name,
                    s.method,
                    s.p,
                    s.k,
                    "-" if s.best_l2 is None else f"{s.best_l2:.4e}",
                    "-" if s.wall_per_step is None else f"{s.wall_per_step:.3e}",
                    "-" if s.time_to_target is None else f"{s.time_to_target:.2f}",
                )
            )
        body = "\n".join(lines) + "\n"
        return body + "".join("\n" + report.to_markdown() for report in self.reports)

    def to_csv(self) -> str:
        return "".join(report.to_csv() for report in self.reports)


def summarize(report: ErrorReport, target: Optional[float]) -> MethodSummary:
    done = [row for row in report.rows if not row.failed and row.l2 is not None]
    summary = MethodSummary(name=report.name, method=report.method, p=report.p, k=report.k)
    if not done:
        return summary
    summary.best_l2 = min(row.l2 for row in done)  # type: ignore
    per_step = [row.wall_time / row.steps for row in done if row.steps]  # type: ignore
    summary.wall_per_step = float(np.mean(per_step)) if per_step else None
    if target is not None:
        reaching = [row.wall_time for row in done if row.l2 <= target * (1 + 1e-12)]  # type: ignore
        summary.time_to_target = min(reaching) if reaching else None  # type: ignore
    return summary


def compare_methods(
    specs: Sequence[StudySpec],
    reports: Optional[Sequence[ErrorReport]] = None,
    cache: Optional[Union[str, Path]] = None,
) -> Comparison:
    """
    Runs studies of different methods on the same problem and ranks them.

    :param specs: studies sharing final time and initial condition
    :type specs: Sequence[StudySpec]
    :param reports: already computed reports of the specs, skips running them
    :type reports: Optional[Sequence[ErrorReport]]
    :param cache: reference cache directory
    :type cache: Optional[Union[str, Path]]
    :raises StudyDefinitionError: for an empty list or specs of different problems
    :return: combined report
    :rtype: Comparison
    """
    if not specs:
        raise StudyDefinitionError("Nothing to compare")
    if len({(spec.T, spec.ic) for spec in specs}) > 1:
        raise StudyDefinitionError("Compared studies need the same T and initial condition")
    if reports is None:
        references: Dict[ReferenceConfig, FeFunction] = {}
        computed = []
        for spec in specs:
            if spec.reference not in references:
                references[spec.reference] = build_reference(
                    spec.ic, spec.T, spec.reference, cache
                )
            computed.append(run_study(spec, references[spec.reference]))
        reports = computed
    best = [
        min(row.l2 for row in report.rows if row.l2 is not None)
        for report in reports
        if any(row.l2 is not None for row in report.rows)
    ]
    target = max(best) if best else None
    summaries = [summarize(report, target) for report in reports]
    ranked = sorted(
        (s for s in summaries if s.time_to_target is not None),
        key=lambda s: s.time_to_target,  # type: ignore
    )
    for rank, summary in enumerate(ranked, start=1):
        summary.rank = rank
    logger.info(
        "Comparison ranking: %s", ", ".join(s.name for s in ranked) or "no method succeeded"
    )
    return Comparison(target_l2=target, reports=list(reports), summaries=summaries)
