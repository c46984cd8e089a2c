import json

import numpy as np
import pytest

from theta_norms.errors import ConfigError
from theta_norms.rng import check_key, trial_rng
from theta_norms.suite import (
    CHECKS,
    SuiteConfig,
    body_of,
    config_from_dict,
    iter_reports,
    load_config,
    parse_report,
    render,
    run_suite,
)


def _small(**kw):
    cfg = SuiteConfig(trials_per_check=3, **kw)
    cfg.validate()
    return cfg


def test_trial_streams_are_independent_of_order():
    a = trial_rng(42, "holder_seq:identity@2", 7).standard_normal(5)
    trial_rng(42, "holder_seq:identity@2", 3).standard_normal(100)
    b = trial_rng(42, "holder_seq:identity@2", 7).standard_normal(5)
    assert np.array_equal(a, b)
    c = trial_rng(42, "holder_seq:identity@3", 7).standard_normal(5)
    assert not np.array_equal(a, c)


def test_check_key_is_crc32():
    assert check_key("") == 0
    assert check_key("abc") == 0x352441C2


def test_line_count_and_order():
    cfg = _small(checks=["holder_seq", "minkowski_seq"], exponent_presets=["identity@2", "inf"])
    lines = list(iter_reports(cfg))
    # holder_seq skips the infinite exponent
    assert len(lines) == 3 + 3 * 2
    assert [(ln["check"], ln["e"], ln["trial"]) for ln in lines[:4]] == [
        ("holder_seq", 2.0, 0),
        ("holder_seq", 2.0, 1),
        ("holder_seq", 2.0, 2),
        ("minkowski_seq", 2.0, 0),
    ]
    assert lines[-1]["e"] == "inf"


def test_default_suite_all_hold():
    res = run_suite(_small())
    assert res.exit_code == 0
    assert set(res.footer["per_check"]) == set(CHECKS)
    assert res.footer["lines"] == len(res.lines)


def test_sabotage_flags_violations():
    res = run_suite(_small(checks=["holder_seq"]), rhs_scale=0.1)
    assert res.violations == res.footer["lines"] > 0
    assert res.exit_code == 1


@pytest.mark.parametrize("fmt", ["jsonl", "csv"])
def test_render_parse_round_trip(fmt):
    res = run_suite(_small(checks=["hardy", "convolution_young"]))
    text = render(res, fmt)
    back = parse_report(text)
    assert back.lines == res.lines
    assert back.footer == json.loads(json.dumps(res.footer))
    assert render(back, fmt) == text


def test_bodies_identical_across_runs():
    cfg = _small(checks=["generalized_holder", "integral_minkowski"])
    a, b = render(run_suite(cfg), "jsonl"), render(run_suite(cfg), "jsonl")
    assert body_of(a) == body_of(b)
    assert body_of(a) != a


def test_seed_changes_body():
    a = render(run_suite(_small(checks=["holder_fn"])), "csv")
    b = render(run_suite(_small(checks=["holder_fn"], master_seed=43)), "csv")
    assert body_of(a) != body_of(b)


@pytest.mark.parametrize(
    "raw,field",
    [
        ({"trials_per_check": 0}, "trials_per_check"),
        ({"master_seed": -1}, "master_seed"),
        ({"exponent_presets": ["identity@1"]}, "exponent_presets[0]"),
        ({"exponent_presets": ["cubic@2"]}, "exponent_presets[0]"),
        ({"tolerances": {"rel_tol": 0}}, "tolerances.rel_tol"),
        ({"tolerances": {"slack": 1.0}}, "tolerances.slack"),
        ({"size_caps": {"seq_len": 1}}, "size_caps.seq_len"),
        ({"size_caps": {"hilbert_mn": 10**9}}, "size_caps.hilbert_mn"),
        ({"output": {"format": "xml"}}, "output.format"),
        ({"checks": ["nope"]}, "checks"),
        ({"colour": 1}, "colour"),
    ],
)
def test_config_errors_name_the_field(raw, field):
    with pytest.raises(ConfigError) as info:
        config_from_dict(raw)
    assert str(info.value).startswith(field)


def test_load_config_reports_position(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{\n  "master_seed": 7,\n  "trials_per_check" 3\n}\n')
    with pytest.raises(ConfigError, match="line 3, column"):
        load_config(p)
    p.write_text('{"master_seed": 7, "output": {"format": "csv", "path": "r.csv"}}')
    cfg = load_config(p)
    assert (cfg.master_seed, cfg.output_format, cfg.output_path) == (7, "csv", "r.csv")
