"""Smoke tests for the Python bindings: drive every exposed operation once
against the bundled fixture repository and golden transcripts."""

import json
import pathlib
import subprocess

import pytest

import codescout

REPO = pathlib.Path(__file__).resolve().parents[2]
FIXTURE = REPO / "tests" / "fixtures" / "f1"
GOLDEN = REPO / "tests" / "golden"

CONFIG = {
    "paths": {"prompt_dir": str(REPO / "assets" / "prompts")},
    "index": {"ignore_dirs": [".git", "__pycache__", ".pytest_cache", "tests"]},
}


def issue_text():
    return (GOLDEN / "f1_issue.md").read_text()


def test_index_repository_shape():
    index = codescout.index_repository(FIXTURE)
    assert index["version"] == 1
    assert index["diagnostics"] == []
    units = {u["id"]: u for u in index["units"]}
    assert "config.py:resolve_path" in units
    parse = units["config.py:parse_config"]
    edges = {(c["edge"], c["id"]) for c in parse["children"]}
    assert ("invokes", "config.py:resolve_path") in edges


def test_default_config_sections():
    cfg = codescout.default_config()
    assert cfg["localize"]["max_iterations"] == 20
    assert cfg["search"]["max_hits"] == 10
    assert cfg["paths"]["registry_dir"] == ".codescout"


def test_locate_ranks_the_buggy_function_first():
    out = codescout.locate(
        FIXTURE,
        issue_text(),
        GOLDEN / "t1_transcript.json",
        instance_id="f1-dotted-keys",
        repo_name="configkit",
        config=CONFIG,
    )
    assert out["instance_id"] == "f1-dotted-keys"
    top = out["locations"][0]
    assert (top["path"], top["name"]) == ("config.py", "resolve_path")
    assert out["trajectory"]["iterations_used"] == 4


def test_resolve_produces_a_verified_patch(tmp_path):
    workspace = tmp_path / "ws"
    registry = tmp_path / "registry"
    subprocess.run(["cp", "-r", f"{FIXTURE}/.", str(workspace)], check=True)
    for cmd in (["git", "init", "-q"], ["git", "add", "-A"],
                ["git", "-c", "user.name=dev", "-c", "user.email=dev@localhost",
                 "commit", "-qm", "initial"]):
        subprocess.run(cmd, cwd=workspace, check=True)

    hints = codescout.locate(
        FIXTURE,
        issue_text(),
        GOLDEN / "t1_transcript.json",
        instance_id="f1-dotted-keys",
        repo_name="configkit",
        config=CONFIG,
    )
    out = codescout.resolve(
        workspace,
        issue_text(),
        GOLDEN / "t2_transcript.json",
        instance_id="f1-dotted-keys",
        registry_dir=registry,
        hints=hints,
        config=CONFIG,
    )
    assert out["submitted"] and not out["aborted"]
    assert out["turns_used"] == 13
    submission = out["trajectory"]["submission"]
    assert submission["verified"] and submission["files_changed"] == 1
    assert "split('.')" in out["diff"]
    memory_file = registry / "f1-dotted-keys.json"
    assert memory_file.exists()
    memory = json.loads(memory_file.read_text())
    assert len(memory["hypotheses"]) == 1


def test_evaluate_replay_and_metrics():
    specs = [GOLDEN / "f1_dotted_keys.json", GOLDEN / "f1_dotted_keys_revert.json"]
    report = codescout.evaluate(specs, config=CONFIG)
    assert [r["instance_id"] for r in report["records"]] == [
        "f1-dotted-keys",
        "f1-dotted-keys-revert",
    ]
    assert report["metrics"]["file_acc"]["1"] == 1.0
    assert report["metrics"]["resolve_rate"] == 1.0

    records = report["records"]
    assert codescout.acc_at_k(records, 3, level="file") == 1.0
    assert codescout.acc_at_k(records, 5, level="function") == 1.0
    rate, warnings = codescout.resolve_rate(records)
    assert rate == 1.0 and warnings == []

    recomputed = codescout.report(records, config=CONFIG)
    assert recomputed["metrics"] == report["metrics"]

    verdict = codescout.replay(specs, report, config=CONFIG)
    assert verdict["identical"] and verdict["divergence"] == ""


def test_errors_surface_as_exceptions():
    with pytest.raises(RuntimeError, match="error:"):
        codescout.index_repository(REPO / "no" / "such" / "dir")
    with pytest.raises(RuntimeError, match="undefined"):
        codescout.acc_at_k([], 3)
