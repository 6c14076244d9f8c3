import json
from importlib import resources

import jsonschema
import pytest

from kahlerobs.cli import main, shipped_config, shipped_config_names
from kahlerobs.pipelines import (
    PIPELINES,
    ConfigError,
    PipelineConfig,
    pipeline_deligne,
    pipeline_kummer,
    pipeline_odd,
    pipeline_theorem_even,
    report_emit,
)

SCHEMA = json.loads(resources.files("kahlerobs").joinpath("schemas", "report.schema.json").read_text())


def cfg(**kw):
    return PipelineConfig.from_dict({**shipped_config("default.json"), **kw})


def steps(rep):
    return {s.name: s for s in rep.steps}


def test_config_validation():
    with pytest.raises(ConfigError):
        PipelineConfig(polynomial=[1, 1, 0, 1])
    with pytest.raises(ConfigError):
        PipelineConfig(polynomial=[1, 1, 0, 0, 1], n=3)
    with pytest.raises(ConfigError):
        PipelineConfig(polynomial=[1, 1, 0, 0, 1], multiplicities=[0, 1, 2, 3])
    with pytest.raises(ConfigError):
        PipelineConfig.from_dict({"polynomial": [1, 1, 0, 0, 1], "colour": "blue"})
    assert PipelineConfig(polynomial="x^4+x+1").polynomial == [1, 1, 0, 0, 1]


def test_theorem_even_default():
    rep = pipeline_theorem_even(cfg())
    assert rep.verdict == "obstruction_certified" and rep.exit_code == 0
    assert rep.summary["component_ranks"] == [4, 4, 4, 4]
    assert steps(rep)["recovery"].data["equal"] is True
    assert steps(rep)["neron_severi_bound"].data["ns_rank_bound"] == 0


def test_theorem_even_negative_controls():
    rep = pipeline_theorem_even(PipelineConfig.from_dict(shipped_config("negative-x4p1.json")))
    assert rep.verdict == "failed" and rep.steps[-1].name == "galois_symmetric"
    rep = pipeline_theorem_even(PipelineConfig.from_dict(shipped_config("negative-real-roots.json")))
    assert rep.verdict == "failed" and rep.steps[-1].name == "property_P"
    assert rep.steps[-1].data["real_roots"] == 4


def test_theorem_even_with_tensor_factor():
    rep = pipeline_theorem_even(cfg(tensor_factor={"type": "projective", "dim": 1}))
    assert rep.verdict == "obstruction_certified"


def test_theorem_odd():
    rep = pipeline_odd(cfg())
    assert rep.verdict == "obstruction_certified"
    assert (rep.summary["h1_rank"], rep.summary["l_rank"]) == (10, 8)
    with pytest.raises(ConfigError):
        pipeline_odd(PipelineConfig.from_dict(shipped_config("no-elliptic-factor.json")))
    bad = pipeline_odd(PipelineConfig.from_dict(shipped_config("negative-x4p1.json")))
    assert bad.verdict == "failed"


@pytest.mark.parametrize("level", [1, 2])
def test_deligne(level):
    q = pipeline_deligne(cfg(level=level), "Q")
    assert q.verdict == "obstruction_certified" and q.summary["component_dims"] == [1, 1, 1, 1]
    c = pipeline_deligne(cfg(level=level), "C")
    assert c.verdict == "obstruction_certified" and c.summary["component_dims"] == [1, 2, 3, 4]
    assert all(steps(c)["locus_components"].data["rational_forced"])


def test_deligne_rejects_repeated_multiplicities():
    with pytest.raises(ConfigError):
        pipeline_deligne(PipelineConfig.from_dict(shipped_config("negative-repeated-multiplicities.json")), "C")
    # Q-mode ignores the multiplicities
    assert pipeline_deligne(PipelineConfig.from_dict(shipped_config("negative-repeated-multiplicities.json")), "Q").exit_code == 0


def test_kummer_rejects_small_n():
    with pytest.raises(ConfigError):
        pipeline_kummer(cfg())


def test_inconclusive_certificate_exit_code():
    # prime bound too small to find Jordan witnesses for a degree-6 polynomial
    rep = PIPELINES["certify-poly"](PipelineConfig(polynomial=[1, 1, 0, 0, 0, 0, 1], prime_bound=3))
    assert rep.verdict == "inconclusive" and rep.exit_code == 2


def test_text_and_json_agree():
    rep = pipeline_deligne(cfg(), "C")
    text = report_emit(rep, "text")
    data = json.loads(report_emit(rep, "json"))
    assert f"verdict: {data['verdict']}" in text
    for s in data["steps"]:
        assert s["name"] in text
    with pytest.raises(ValueError):
        report_emit(rep, "xml")


@pytest.mark.parametrize("name", ["certify-poly", "build-torus", "ns-check", "theorem-even", "theorem-odd", "deligne-q", "deligne-c"])
def test_reports_validate_and_are_deterministic(name):
    a = PIPELINES[name](cfg()).to_json()
    b = PIPELINES[name](cfg()).to_json()
    assert a == b
    jsonschema.validate(json.loads(a), SCHEMA)


def test_cli_exit_codes(capsys, tmp_path):
    assert main(["theorem-even", "--format", "text"]) == 0
    assert "verdict: obstruction_certified" in capsys.readouterr().out
    assert main(["theorem-even", "--shipped", "negative-x4p1.json"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == "failed"
    assert main(["certify-poly", "--poly", "x^6+x+1", "--prime-bound", "3"]) == 2
    capsys.readouterr()
    assert main(["deligne-c", "--shipped", "negative-repeated-multiplicities.json"]) == 2
    assert "configuration error" in capsys.readouterr().err
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"polynomial": [1, 1, 0, 0, 1], "level": 1}))
    assert main(["deligne-q", "--config", str(p), "--level", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["config"]["level"] == 2
    p.write_text("{not json")
    assert main(["deligne-q", "--config", str(p)]) == 2


def test_cli_list_configs(capsys):
    assert main(["list-configs"]) == 0
    names = capsys.readouterr().out.split()
    assert names == shipped_config_names()
    assert {"default.json", "kummer.json", "kummer-tampered.json"} <= set(names)
    for n in names:
        PipelineConfig.from_dict(shipped_config(n))
