"""
Command line harness.

    hmflow solve1d --p 2 --bdf 2 --tau 1e-4 --level 8
    hmflow solve2d --method tfem --p 1 --bdf 2 --tau 1e-3 --level 3 --error
    hmflow study rshmhf-h-p1-bdf2 --format md
    hmflow study my-ladder.spec --out ladder.csv --workers 4
    hmflow compare ppfem-h-p1-bdf2 tfem-h-p1-bdf2 bfem-h-p1-bdf1
    hmflow infsup --level 2 3 4 --p 1 --dump-mesh disk.mesh
    hmflow lift --level 4 --p 2 --out reference.vtk
"""
import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import orjson

from hmflow.decorators import post_step
from hmflow.exceptions import HmflowException
from hmflow.fem import FeSpace, interpolate
from hmflow.mesh import build_disk_mesh, build_interval_mesh, write_mesh
from hmflow.reference import (
    InitialCondition,
    LiftedReference,
    ReferenceConfig,
    build_reference,
    evaluate_against_reference,
    reference_metadata,
    spherical_lift,
)
from hmflow.rshmhf import (
    RadialStepper,
    ReferenceMetadata,
    Rshmhf1dProblem,
    solve_rshmhf,
    write_reference,
)
from hmflow.solvers import (
    BfemStepper,
    FixedPointConfig,
    Hmhf2dProblem,
    Method,
    PpfemStepper,
    TfemStepper,
    default_bfem_tau,
    inf_sup_constant,
    normalize_nodal,
    solve_hmhf,
    write_snapshot,
    write_vtk,
)
from hmflow.studies import (
    ErrorReport,
    StudySpec,
    compare_methods,
    get_preset,
    parse_spec_file,
    run_study,
    study_mesh,
)

logger = logging.getLogger("hmflow.cli")

STEPPERS = [RadialStepper, PpfemStepper, TfemStepper, BfemStepper]
DEFAULT_TAU = 1e-3


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text)
    logger.info("Wrote %s", out)


def write_field(
    path: Path, u: Any, time: float, extra: Optional[Dict[str, Any]] = None
) -> Path:
    if path.suffix == ".vtk":
        return write_vtk(path, u)
    return write_snapshot(path, u, time, extra)


def load_spec(name: str, workers: Optional[int]) -> StudySpec:
    spec = parse_spec_file(name) if Path(name).exists() else get_preset(name)
    if workers is not None:
        spec = spec.model_copy(update={"workers": workers})
    return spec


def format_report(report: ErrorReport, fmt: str) -> str:
    return report.to_csv() if fmt == "csv" else report.to_markdown()


def dump_mesh(args: argparse.Namespace, mesh: Any, tag: Optional[str] = None) -> None:
    """
    Writes the mesh if --dump-mesh was given. Commands building several
    meshes tag the file name, disk.mesh becomes disk-level3.mesh.
    """
    if not args.dump_mesh:
        return
    path = Path(args.dump_mesh)
    if tag is not None:
        path = path.with_name(f"{path.stem}-{tag}{path.suffix}")
    write_mesh(path, mesh)
    logger.info("Wrote mesh to %s", path)


def dump_study_meshes(args: argparse.Namespace, spec: StudySpec, prefix: str = "") -> None:
    if not args.dump_mesh:
        return
    for h in spec.mesh_sizes:
        dump_mesh(args, study_mesh(spec, h), f"{prefix}h{h:g}")


def default_tau(method: Method, h: float, T: float) -> float:
    """
    About h^2/4 for bfem, otherwise the largest step up to DEFAULT_TAU dividing T.
    """
    if method is Method.BFEM:
        return default_bfem_tau(h, T)
    return T / max(1, math.ceil(T / DEFAULT_TAU - 1e-9))


class FieldDumper:
    """
    post_step receiver writing every ``every``-th state into a directory.
    """

    def __init__(self, directory: Path, every: int) -> None:
        self.directory = directory
        self.every = max(every, 1)
        self.written: List[Path] = []
        directory.mkdir(parents=True, exist_ok=True)

    def __call__(
        self, sender: Any, step: int, time: float, state: Any, **kwargs: Any
    ) -> None:
        if step % self.every:
            return
        name = f"{sender.Meta.name}-{step:06d}.txt"
        self.written.append(write_snapshot(self.directory / name, state, time))


def progress(
    sender: Any, step: int, time: float, iterations: int = 0, **kwargs: Any
) -> None:
    logger.debug(
        "%s step %s t=%.6g iterations=%s", sender.Meta.name, step, time, iterations
    )


def run_solve1d(args: argparse.Namespace) -> int:
    ic = InitialCondition(args.ic)
    mesh = build_interval_mesh(2 ** args.level)
    dump_mesh(args, mesh)
    space = FeSpace(mesh, args.p)
    problem = Rshmhf1dProblem(
        u0=ic.profile, T=args.T, tau=args.tau, space=space, name=ic.value
    )
    trajectory = solve_rshmhf(problem, args.bdf)
    summary = {
        "steps": trajectory.steps,
        "energy_initial": trajectory.energies[0],
        "energy_final": trajectory.energies[-1],
        "wall_time": trajectory.wall_time,
    }
    if args.out:
        metadata = ReferenceMetadata(
            p=args.p,
            n=mesh.n_elems,
            h=mesh.h,
            tau=args.tau,
            T=args.T,
            k=args.bdf,
            ic=ic.value,
        )
        write_reference(args.out, trajectory.final, metadata)
    sys.stdout.write(orjson.dumps(summary, option=orjson.OPT_INDENT_2).decode() + "\n")
    return 0


def run_solve2d(args: argparse.Namespace) -> int:
    ic = InitialCondition(args.ic)
    method = Method(args.method)
    mesh = build_disk_mesh(args.level, isoparametric=args.p == 2)
    dump_mesh(args, mesh)
    space = FeSpace(mesh, args.p, value_dim=3)
    tau = args.tau if args.tau is not None else default_tau(method, mesh.h, args.T)
    problem = Hmhf2dProblem(
        u0=ic.field,
        T=args.T,
        tau=tau,
        space=space,
        method=method,
        k=args.bdf,
        fixed_point=FixedPointConfig(tolerance=args.eps, residual_norm=args.residual_norm),
    )
    dumper = None
    if args.dump_fields:
        dumper = FieldDumper(Path(args.dump_fields), args.dump_every)
        post_step(STEPPERS)(dumper)
    try:
        trajectory = solve_hmhf(problem)
    finally:
        if dumper is not None:
            for stepper in STEPPERS:
                stepper.Meta.signals.post_step.disconnect(dumper)
    summary: Dict[str, Any] = {
        "method": method.value,
        "steps": trajectory.steps,
        "tau": tau,
        "h": mesh.h,
        "energy_initial": trajectory.energies[0],
        "energy_final": trajectory.energies[-1],
        "max_length_defect": trajectory.max_length_defect,
        "mean_iterations": trajectory.mean_iterations,
        "wall_time": trajectory.wall_time,
    }
    if args.error:
        reference = build_reference(ic, args.T, ReferenceConfig(), args.cache)
        lifted = LiftedReference.from_profile(
            reference, reference_metadata(ic, args.T, ReferenceConfig()), space
        )
        summary["l2"], summary["h1"] = evaluate_against_reference(trajectory.final, lifted)
    if args.out:
        write_field(Path(args.out), trajectory.final, args.T, {"method": method.value})
    sys.stdout.write(orjson.dumps(summary, option=orjson.OPT_INDENT_2).decode() + "\n")
    return 0


def run_study_command(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec, args.workers)
    dump_study_meshes(args, spec)
    report = run_study(spec, cache=args.cache)
    emit(format_report(report, args.format), args.out)
    return 0 if all(not row.failed for row in report.rows) else 1


def run_compare(args: argparse.Namespace) -> int:
    specs = [load_spec(name, args.workers) for name in args.specs]
    for spec in specs:
        dump_study_meshes(args, spec, f"{spec.name}-")
    comparison = compare_methods(specs, cache=args.cache)
    text = comparison.to_csv() if args.format == "csv" else comparison.to_markdown()
    emit(text, args.out)
    return 0


def run_infsup(args: argparse.Namespace) -> int:
    ic = InitialCondition(args.ic)
    lines = ["level,h,beta"]
    for level in args.level:
        mesh = build_disk_mesh(level, isoparametric=args.p == 2)
        dump_mesh(args, mesh, f"level{level}" if len(args.level) > 1 else None)
        space = FeSpace(mesh, args.p, value_dim=3)
        if args.constant:
            uhat = interpolate(space, lambda points: np.array([0.0, 0.0, 1.0]))
        else:
            uhat = normalize_nodal(interpolate(space, ic.field))
        beta = inf_sup_constant(space, uhat)
        logger.info("level %s: beta = %.6f", level, beta)
        lines.append(f"{level},{mesh.h!r},{beta!r}")
    emit("\n".join(lines) + "\n", args.out)
    return 0


def run_lift(args: argparse.Namespace) -> int:
    ic = InitialCondition(args.ic)
    mesh = build_disk_mesh(args.level, isoparametric=args.p == 2)
    dump_mesh(args, mesh)
    space = FeSpace(mesh, args.p, value_dim=3)
    reference = build_reference(ic, args.T, ReferenceConfig(), args.cache)
    lifted = spherical_lift(reference, space)
    out = Path(args.out or f"lifted-{ic.value}.txt")
    write_field(out, lifted, args.T, {"ic": ic.value})
    logger.info("Wrote %s", out)
    return 0


def add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, choices=(1, 2), default=1)
    parser.add_argument("--T", type=float, default=0.1)
    parser.add_argument(
        "--ic", choices=[ic.value for ic in InitialCondition], default="halfpi_r2"
    )
    parser.add_argument("--out", default=None)
    parser.add_argument("--cache", default=None, help="reference cache directory")
    parser.add_argument("--dump-mesh", default=None, help="write the mesh to this file")
    parser.add_argument("--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hmflow", description="Finite element solvers for the harmonic map heat flow."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve1d = commands.add_parser("solve1d", help="radially symmetric 1D problem")
    add_common(solve1d)
    solve1d.add_argument("--bdf", type=int, choices=(1, 2), default=1)
    solve1d.add_argument("--tau", type=float, default=1e-3)
    solve1d.add_argument("--level", type=int, default=6, help="N = 2**level elements")
    solve1d.set_defaults(handler=run_solve1d)

    solve2d = commands.add_parser("solve2d", help="flow on the unit disk")
    add_common(solve2d)
    solve2d.add_argument("--method", choices=[m.value for m in Method], default="ppfem")
    solve2d.add_argument("--bdf", type=int, choices=(1, 2), default=1)
    solve2d.add_argument(
        "--tau", type=float, default=None, help="defaults to 1e-3, about h^2/4 for bfem"
    )
    solve2d.add_argument("--level", type=int, default=3)
    solve2d.add_argument("--eps", type=float, default=1e-10, help="BFEM tolerance")
    solve2d.add_argument(
        "--residual-norm", choices=("lumped", "max"), default="lumped", help="BFEM residual"
    )
    solve2d.add_argument("--dump-fields", default=None, help="snapshot directory")
    solve2d.add_argument("--dump-every", type=int, default=10)
    solve2d.add_argument("--error", action="store_true", help="compare with lifted reference")
    solve2d.set_defaults(handler=run_solve2d)

    for name, handler in (("study", run_study_command), ("compare", run_compare)):
        command = commands.add_parser(name, help=f"{name} convergence ladders")
        if name == "study":
            command.add_argument("spec", help="preset name or spec file")
        else:
            command.add_argument("specs", nargs="+", help="preset names or spec files")
        command.add_argument("--format", choices=("csv", "md"), default="md")
        command.add_argument("--out", default=None)
        command.add_argument("--workers", type=int, default=None)
        command.add_argument("--cache", default=None)
        command.add_argument("--dump-mesh", default=None, help="write the ladder meshes")
        command.add_argument("--verbose", action="store_true")
        command.set_defaults(handler=handler)

    infsup = commands.add_parser("infsup", help="inf-sup constant of the tangent constraint")
    add_common(infsup)
    infsup.add_argument("--level", type=int, nargs="+", default=[2, 3, 4])
    infsup.add_argument("--constant", action="store_true", help="use the field (0, 0, 1)")
    infsup.set_defaults(handler=run_infsup)

    lift = commands.add_parser("lift", help="lift the 1D reference to the disk")
    add_common(lift)
    lift.add_argument("--level", type=int, default=4)
    lift.set_defaults(handler=run_lift)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    if args.verbose:
        post_step(STEPPERS)(progress)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except HmflowException as error:
        logger.error("%s: %s", type(error).__name__, error)
        return 2
    finally:
        if args.verbose:
            for stepper in STEPPERS:
                stepper.Meta.signals.post_step.disconnect(progress)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
