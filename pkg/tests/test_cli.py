import argparse
import json

import pytest

import workspace
from command_base import EXIT_ERROR, EXIT_PASS, EXIT_RESIDUALS, CommandBase
from defaults import DEFAULT_MAX_ARITY, ENV_TRUNCATION
from framework import Framework
from multimap import Truncation


@pytest.fixture
def run(fixtures_dir):
    def invoke(*argv):
        resolved = [
            str(fixtures_dir / arg) if arg.endswith((".json", ".diag")) and "/" not in arg else arg
            for arg in argv
        ]
        return Framework().run(resolved)

    return invoke


def test_commands_come_from_the_manifest():
    assert Framework().commands() == [
        "boundary",
        "bracket-compare",
        "check-ainf",
        "check-cyclic",
        "check-morphism",
        "check-pcy",
        "compose-pcy",
        "eval-diagram",
        "gen-example",
    ]


def test_missing_manifest(tmp_path):
    assert Framework(apps_dir=tmp_path).commands() == []


def test_only_the_dispatched_command_is_loaded(fixtures_dir):
    framework = Framework()
    framework.build_parser()
    assert framework._instances == {}
    assert framework.run(["check-pcy", str(fixtures_dir / "point.json")]) == EXIT_PASS
    assert set(framework._instances) == {"check-pcy"}


def test_unselected_commands_still_parse_as_choices():
    assert Framework().run(["-v", "no-such-command"]) == EXIT_ERROR


def bare_command(max_arity, max_outputs):
    command = CommandBase()
    command.args = argparse.Namespace(max_arity=max_arity, max_outputs=max_outputs)
    return command


def test_zero_bounds_are_not_replaced_by_defaults(monkeypatch):
    monkeypatch.delenv(ENV_TRUNCATION, raising=False)
    command = bare_command(0, 0)
    assert command.truncation == Truncation(0, 0)
    assert command.max_arity == 0


def test_unbounded_inputs_fall_back_to_the_default_arity(monkeypatch):
    monkeypatch.setenv(ENV_TRUNCATION, "*,2")
    command = bare_command(None, None)
    assert command.truncation == Truncation(None, 2)
    assert command.max_arity == DEFAULT_MAX_ARITY


def test_check_pcy_point(run, capsys):
    assert run("check-pcy", "point.json", "--max-arity", "4") == EXIT_PASS
    assert "PASS" in capsys.readouterr().out


def test_check_pcy_with_equivalence(run):
    assert run("check-pcy", "dual_numbers.json", "--equivalence") == EXIT_PASS


def test_bracket_compare_random(run):
    assert run("bracket-compare", "random-seed=7", "--max-arity", "4") == EXIT_PASS


def test_bracket_compare_workspace(run):
    argv = ("bracket-compare", "dual_numbers.json", "--left", "M_A", "--right", "M_A")
    assert run(*argv) == EXIT_PASS
    assert run("bracket-compare", "dual_numbers.json") == EXIT_ERROR


def test_check_ainf_broken(run, capsys):
    assert run("check-ainf", "broken.json") == EXIT_RESIDUALS
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "arity 3" in out


def test_check_ainf_machine_format(run, capsys):
    assert run("check-ainf", "broken.json", "--format", "machine") == EXIT_RESIDUALS
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert records
    assert min(r["arity"] for r in records) == 3
    assert {"check", "signature", "residual"} <= set(records[0])


def test_machine_format_is_silent_on_success(run, capsys):
    assert run("check-ainf", "dual_numbers.json", "--format", "machine") == EXIT_PASS
    assert capsys.readouterr().out == ""


def test_bad_input_exits_with_two(run, tmp_path):
    assert run("check-pcy", str(tmp_path / "nowhere.json")) == EXIT_ERROR
    assert run("check-pcy", "empty.json") == EXIT_ERROR
    assert run("no-such-command") == EXIT_ERROR
    assert run("check-pcy", "point.json", "--format", "yaml") == EXIT_ERROR


def test_gen_example_output(run, tmp_path):
    target = tmp_path / "te.json"
    assert run("gen-example", "trivial_extension", "--output", str(target)) == EXIT_PASS
    ws = workspace.load(target)
    assert {"m_A", "M_A"} <= set(ws.elements)
    assert run("check-pcy", str(target), "--element", "M_A") == EXIT_PASS


def test_gen_example_broken(run):
    assert run("gen-example", "broken") == EXIT_RESIDUALS


@pytest.mark.parametrize("kind", ["identity", "augmentation"])
def test_gen_example_morphisms(run, kind):
    assert run("gen-example", kind) == EXIT_PASS


def test_check_morphism(run):
    assert run("check-morphism", "augmentation.json") == EXIT_PASS
    assert run("check-morphism", "identity.json") == EXIT_ERROR
    assert run("check-morphism", "identity.json", "--morphism", "Id") == EXIT_PASS


@pytest.mark.parametrize("mode", ["strict", "general"])
def test_boundary(run, mode):
    assert run("boundary", "augmentation.json", "--mode", mode) == EXIT_PASS


def test_compose_pcy(run, tmp_path):
    target = tmp_path / "composed.json"
    argv = ("compose-pcy", "identity.json", "--first", "Id", "--second", "Id2")
    assert run(*argv, "--against", "Id", "--output", str(target)) == EXIT_PASS
    assert "Id2_Id" in workspace.load(target).morphisms


def test_check_cyclic(run):
    assert run("check-cyclic", "dual_numbers.json", "--element", "M_A") == EXIT_PASS
    assert run("check-cyclic", "dual_numbers.json") == EXIT_ERROR


def test_eval_diagram(run, fixtures_dir, tmp_path):
    diagrams = fixtures_dir / "diagrams"
    target = tmp_path / "with_result.json"
    argv = ("eval-diagram", "dual_numbers.json", str(diagrams / "two_inputs.diag"))
    assert run(*argv, "--output", str(target)) == EXIT_PASS
    assert workspace.load(target).element("result").degree == 3
    assert run("eval-diagram", "dual_numbers.json", str(diagrams / "no_bold.diag")) == EXIT_ERROR
    assert run("eval-diagram", "dual_numbers.json", str(diagrams / "missing.diag")) == EXIT_ERROR
