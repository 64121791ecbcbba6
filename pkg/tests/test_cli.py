import json
import subprocess
import sys

import pytest

from homcyl.catalog import looped_point_spec
from homcyl.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_PROPERTY, RunConfig, main
from homcyl.formats import spec_to_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_OK, out
    return json.loads(out)


def test_run_config_rejects_bad_budget():
    with pytest.raises(ValueError):
        RunConfig(cell_cap=0)
    with pytest.raises(ValueError):
        RunConfig(fmt="yaml")


def test_cylinder_looped_point(capsys):
    d = run_json(capsys, "cylinder", "looped-point")
    assert d["vertices"] == 5 and d["height"] == 2
    assert set(d["strata"]) == {"X", "Y", "Z", "Zprime"}


def test_cylinder_complete_pair(capsys):
    d = run_json(capsys, "cylinder", "complete-pair:6,5", "--n", "2")
    assert d["vertices"] == 13


def test_cylinder_from_spec_file(capsys, tmp_path):
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(spec_to_dict(looped_point_spec())))
    d = run_json(capsys, "cylinder", str(p))
    assert d["vertices"] == 5


def test_cylinder_dot_to_file(capsys, tmp_path):
    out = tmp_path / "d.dot"
    code, stdout = run(capsys, "cylinder", "looped-point", "--emit", "dot", "--out", str(out))
    assert code == EXIT_OK
    assert out.read_text().startswith("graph D2 {") and out.read_text().count("--") == 7
    assert json.loads(stdout)["vertices"] == 5


def test_out_without_emit_writes_summary(capsys, tmp_path):
    out = tmp_path / "b.json"
    code, stdout = run(capsys, "bound", "C5", "--out", str(out))
    assert code == EXIT_OK and stdout == ""
    assert json.loads(out.read_text())["chi_exact"] == 3


def test_malformed_spec_exits_2(capsys, tmp_path):
    d = spec_to_dict(looped_point_spec())
    d["f"] = [0, 9]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    assert main(["cylinder", str(p)]) == EXIT_INPUT
    assert "spec" in capsys.readouterr().err


def test_malformed_graph_file_reports_line(capsys, tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("v a\nzz\n")
    assert main(["nbhd", str(p)]) == EXIT_INPUT
    assert "line 2" in capsys.readouterr().err


def test_nbhd_k2_two_components(capsys):
    assert run_json(capsys, "nbhd", "K2")["components"] == 2


def test_homology_hom_k2_k4_is_sphere(capsys):
    d = run_json(capsys, "homology", "K4", "--hom", "K2")
    assert d["homology"]["betti"] == [1, 0, 1]


def test_homology_of_example_cylinder(capsys):
    d = run_json(capsys, "homology", "cylinder:k4-triangle", "--hom", "K2")
    assert d["homology"]["betti"][:3] == [1, 0, 1] and not any(d["homology"]["betti"][3:])


def test_homology_budget_exits_3(capsys):
    assert main(["homology", "K5", "--hom", "K2", "--budget-cells", "10"]) == EXIT_BUDGET


@pytest.mark.parametrize("g,bound", [("C5", 3), ("K4", 4), ("K2", 2)])
def test_bound_examples(capsys, g, bound):
    d = run_json(capsys, "bound", g)
    assert d["lovasz_lower"] == bound and d["chi_exact"] == bound


def test_conn_chromatic_reduce(capsys):
    assert run_json(capsys, "conn", "C5")["certified_conn"] == 0
    assert run_json(capsys, "chromatic", "C5")["chi"] == 3
    assert len(run_json(capsys, "reduce", "C5")["stages"]) == 1


def test_pushout_and_hom(capsys):
    assert run_json(capsys, "pushout", "apex-path")["vertices"] == 6
    assert run_json(capsys, "hom", "K2", "K3")["f_vector"] == [6, 6]


def test_audit_appendix(capsys):
    d = run_json(capsys, "audit-appendix", "complete-pair:4,3", "K2", "--n", "3")
    assert d["betti_match"] and d["violations"] == []


def test_text_format(capsys):
    code, out = run(capsys, "bound", "C5", "--format", "text")
    assert code == EXIT_OK and "lovasz_lower" in out


def test_reproduction_suite_subset_passes(capsys):
    code, out = run(capsys, "paper-examples", "--only", "1", "2", "--format", "text")
    assert code == EXIT_OK and "2/2 passed" in out


def test_reproduction_suite_negative_control(capsys):
    code, out = run(capsys, "paper-examples", "--only", "3", "--expect-betti", "1,2,2", "--format", "text")
    assert code == EXIT_PROPERTY
    assert "(1, 2, 1) != expected (1, 2, 2)" in out


def test_reproduction_suite_deterministic(capsys):
    a = run_json(capsys, "paper-examples", "--only", "9", "10", "--seed", "5")
    b = run_json(capsys, "paper-examples", "--only", "9", "10", "--seed", "5")
    strip = lambda d: [{k: v for k, v in r.items() if k != "seconds"} for r in d["results"]]
    assert strip(a) == strip(b)


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "homcyl.cli", "bound", "K2"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["chi_exact"] == 2


def test_homology_with_connectivity_on_cylinder(capsys):
    d = run_json(capsys, "homology", "cylinder:k4-triangle", "--hom", "K2", "--conn")
    assert d["connectivity"]["certified_conn"] == 1
