# Copyright (c) 2026 The ProBench Authors.
# Licensed under the Apache License, Version 2.0. See
# http://www.apache.org/licenses/LICENSE-2.0

import json

import pytest

import probench


def test_parse_and_canonical():
    r = probench.parse_action("<think>tap it</think><answer>Click(100,238)</answer>")
    assert r["action"]["verb"] == "click" and (r["action"]["x"], r["action"]["y"]) == (100, 238)
    assert probench.canonical(r["action"]) == "Click(100, 238)"
    err = probench.parse_action("no idea")
    assert err["error"]["kind"] == "no_action"


def test_tagged_dict_and_rescale():
    r = probench.parse_action("[{'action': enum['click'], 'point': [500, 500], 'input_text': 'no input text'}]",
                              dialect="tagged_dict", coordinate_mode="normalized_1000")
    assert probench.canonical(r["action"]) == "Click(540, 1200)"
    assert probench.rescale_point(1000, 1000, "normalized_1000", 1080, 2400) == (1079, 2399)
    assert probench.rescale_point(7, 9, "pixel", 1080, 2400) == (7, 9)


def test_describe_click(fixtures):
    xml = (fixtures / "a11y" / "filter_icon.xml").read_text()
    assert probench.describe_click(xml, 1080, 2400, 900, 150) == "Click: filter_icon, Price at (900, 150)"


def test_outcomes_and_metrics():
    assert probench.determine_outcome("completed_signal", True)["class"] == "Success"
    es = probench.determine_outcome("early_stop", None, "failure")
    assert es == {"class": "Failure", "early_stop": True}
    with pytest.raises(probench.Error):
        probench.determine_outcome("step_budget", True)

    rows = [{"task_id": f"t{i}", "language": "english", "type": "state",
             "outcome": {"class": "Success" if i < 23 else "Failure"}} for i in range(52)]
    metrics = probench.aggregate(rows)
    assert metrics["accuracy"]["english"]["state"]["percent"] == "44.2"
    assert metrics["accuracy"]["chinese"]["state"]["percent"] == "—"

    stats = probench.failure_breakdown([{"class": "Uncompleted"}] * 9 + [{"class": "Failure"}])
    assert stats["uncompleted_ratio"]["percent"] == "90.0"

    automatic = {"a": {"class": "Success"}, "b": {"class": "Failure"}}
    verdicts = [{"task_id": "a", "label": "Success", "annotator": "x"},
                {"task_id": "b", "label": "Success", "annotator": "x"}]
    assert probench.agreement(automatic, verdicts)["overall"]["percent"] == "50.0"


def test_bad_enum_is_validation_error():
    with pytest.raises(probench.ValidationError):
        probench.parse_action("Back()", dialect="morse")


def test_end_to_end_mock_run(tmp_path, fixtures):
    counts = probench.suite_counts(fixtures / "suite.json")
    assert counts["total"] == 3
    run_dir = probench.run_suite(fixtures / "suite.json", fixtures / "agents" / "scripted_sort.json",
                                 "mock:" + str(fixtures / "mock" / "shop"), tmp_path, run_id="py")
    assert probench.validate_task_dir(f"{run_dir}/shop-state-01") == []
    assert probench.process_run(run_dir) == 7
    outcomes = probench.evaluate_run(run_dir, fixtures / "agents" / "judge_true.json")
    assert {o["class"] for o in outcomes.values()} == {"Success"}
    metrics = probench.report(run_dir, tmp_path / "report")
    assert metrics["accuracy"]["overall"]["avg"]["percent"] == "100.0"
    assert json.loads((tmp_path / "report" / "metrics.json").read_text())["tasks"] == 3


def test_stitch(tmp_path, fixtures):
    run_dir = probench.run_suite(fixtures / "suite.json", fixtures / "agents" / "scripted_sort.json",
                                 "mock:" + str(fixtures / "mock" / "shop"), tmp_path, run_id="s", max_steps=2)
    steps = tmp_path / "s" / "shop-state-01" / "steps"
    geo = probench.stitch(steps / "000.png", steps / "001.png", 270, 140, tmp_path / "stitch.png")
    assert geo == {"width": 1090, "height": 960, "divider_x": 540, "after_x": 550}
