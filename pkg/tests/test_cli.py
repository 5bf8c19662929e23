import argparse

import numpy as np
import orjson
import pytest

from hmflow.cli.main import build_parser, default_tau, dump_study_meshes, main
from hmflow.rshmhf import RadialStepper, read_reference
from hmflow.solvers import BfemStepper, Method, PpfemStepper, TfemStepper, default_bfem_tau
from hmflow.studies import get_preset


def summary_from(capsys):
    return orjson.loads(capsys.readouterr().out)


def test_parser_defaults():
    args = build_parser().parse_args(["solve2d"])
    assert args.method == "ppfem"
    assert args.p == 1
    assert args.bdf == 1
    assert args.tau is None
    assert args.ic == "halfpi_r2"


def test_parser_rejects_cubic_elements():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["solve1d", "--p", "3"])


def test_solve1d_writes_reference(tmp_path, capsys):
    out = tmp_path / "profile.txt"
    code = main(
        ["solve1d", "--level", "3", "--p", "2", "--tau", "0.01", "--T", "0.02", "--out", str(out)]
    )
    assert code == 0
    summary = summary_from(capsys)
    assert summary["steps"] == 2
    assert summary["energy_final"] <= summary["energy_initial"]
    profile, metadata = read_reference(out)
    assert (metadata.n, metadata.p, metadata.k) == (8, 2, 1)
    assert metadata.ic == "halfpi_r2"
    assert profile.space.n_dofs == 17
    assert profile.nodal()[0] == pytest.approx(0.0, abs=1e-12)


def test_solve2d_dumps_mesh_and_fields(tmp_path, capsys):
    mesh_file = tmp_path / "disk.mesh"
    snapshot = tmp_path / "final.txt"
    fields = tmp_path / "fields"
    code = main(
        [
            "solve2d",
            "--level", "2",
            "--tau", "0.01",
            "--T", "0.03",
            "--out", str(snapshot),
            "--dump-mesh", str(mesh_file),
            "--dump-fields", str(fields),
            "--dump-every", "2",
        ]
    )
    assert code == 0
    summary = summary_from(capsys)
    assert summary["method"] == "ppfem"
    assert summary["steps"] == 3
    assert summary["energy_final"] <= summary["energy_initial"]
    assert mesh_file.read_text().startswith("# ")
    assert "TRIANGLES" in mesh_file.read_text()

    header = orjson.loads(snapshot.read_text().splitlines()[0][2:])
    assert header["method"] == "ppfem"
    assert header["time"] == pytest.approx(0.03)
    rows = np.loadtxt(snapshot, comments="#", ndmin=2)
    assert rows.shape[1] == 5
    assert np.allclose(np.linalg.norm(rows[:, 2:], axis=1), 1.0, atol=1e-12)

    assert sorted(path.name for path in fields.iterdir()) == ["ppfem-000002.txt"]
    for stepper in (PpfemStepper, TfemStepper, BfemStepper):
        assert len(stepper.Meta.signals.post_step) == 0


def test_solve2d_bfem_default_tau(capsys):
    code = main(["solve2d", "--method", "bfem", "--level", "2", "--T", "0.01"])
    assert code == 0
    summary = summary_from(capsys)
    assert summary["method"] == "bfem"
    assert summary["tau"] <= 0.01
    assert summary["max_length_defect"] <= 1e-8
    assert summary["mean_iterations"] >= 1


def test_library_errors_exit_with_two(capsys):
    assert main(["solve2d", "--method", "bfem", "--p", "2", "--level", "1"]) == 2
    assert main(["study", "no-such-preset"]) == 2


def test_infsup_of_constant_field(tmp_path):
    out = tmp_path / "beta.csv"
    assert main(["infsup", "--constant", "--level", "1", "2", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "level,h,beta"
    assert [line.split(",")[0] for line in lines[1:]] == ["1", "2"]
    betas = [float(line.split(",")[2]) for line in lines[1:]]
    assert betas == pytest.approx([1.0, 1.0], abs=1e-6)


def test_verbose_progress_is_disconnected(capsys):
    code = main(
        ["solve1d", "--level", "2", "--tau", "0.01", "--T", "0.01", "--verbose"]
    )
    assert code == 0
    assert len(RadialStepper.Meta.signals.post_step) == 0


@pytest.mark.parametrize(
    "command",
    [["solve1d"], ["solve2d"], ["study", "table1"], ["compare", "table7"], ["infsup"], ["lift"]],
)
def test_every_command_accepts_dump_mesh(command):
    args = build_parser().parse_args(command + ["--dump-mesh", "out.mesh"])
    assert args.dump_mesh == "out.mesh"


def test_infsup_dumps_one_mesh_per_level(tmp_path):
    code = main(
        [
            "infsup",
            "--constant",
            "--level", "1", "2",
            "--out", str(tmp_path / "beta.csv"),
            "--dump-mesh", str(tmp_path / "disk.mesh"),
        ]
    )
    assert code == 0
    assert sorted(path.name for path in tmp_path.glob("*.mesh")) == [
        "disk-level1.mesh",
        "disk-level2.mesh",
    ]
    assert "TRIANGLES" in (tmp_path / "disk-level2.mesh").read_text()


def test_study_meshes_follow_the_ladder(tmp_path):
    args = argparse.Namespace(dump_mesh=str(tmp_path / "disk.mesh"))
    dump_study_meshes(args, get_preset("ppfem-h-p1-bdf2"))
    assert sorted(path.name for path in tmp_path.iterdir()) == [
        "disk-h0.0625.mesh",
        "disk-h0.125.mesh",
        "disk-h0.25.mesh",
    ]


def test_solve2d_default_tau_depends_on_method(capsys):
    assert main(["solve2d", "--level", "2", "--T", "0.01"]) == 0
    summary = summary_from(capsys)
    assert summary["method"] == "ppfem"
    assert summary["tau"] == pytest.approx(1e-3)
    assert summary["steps"] == 10


def test_default_tau():
    assert default_tau(Method.TFEM, 0.5, 0.1) == pytest.approx(1e-3)
    assert default_tau(Method.PPFEM, 0.5, 0.0025) == pytest.approx(0.0025 / 3)
    assert default_tau(Method.PPFEM, 0.5, 1e-4) == pytest.approx(1e-4)
    assert default_tau(Method.BFEM, 0.1, 0.1) == default_bfem_tau(0.1, 0.1)


def test_solve2d_bfem_with_max_residual_norm(capsys):
    code = main(
        ["solve2d", "--method", "bfem", "--level", "2", "--T", "0.004", "--tau", "0.002",
         "--residual-norm", "max"]
    )
    assert code == 0
    summary = summary_from(capsys)
    assert summary["steps"] == 2
    assert summary["max_length_defect"] <= 1e-10
