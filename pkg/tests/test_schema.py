import json

import pytest

import gradecast as g
from gradecast.errors import GradecastError


def test_builtin_schema_has_70_variables(schema):
    assert len(schema.variables) == 70
    assert schema.variable_ids == [f"x{i}" for i in range(1, 71)]


def test_builtin_scale_is_1_to_5(schema):
    assert schema.scale == g.ResponseScale(min=1, max=5)
    assert schema.scale.span == 4


def test_prompts_are_nonempty_text(schema):
    for v in schema.variables:
        assert isinstance(v.prompt, str)
        assert v.prompt.strip()


def test_first_prompt_fixture(schema):
    assert schema.prompt_of("x1") == "I had enough time to study programming"


def test_factor_ranges_partition_all_70_variables(schema):
    seen = []
    for code in g.FactorCode:
        lo, hi = g.FACTOR_RANGES[code]
        assert lo <= hi
        seen.extend(range(lo, hi + 1))
    assert sorted(seen) == list(range(1, 71))


def test_factor_members_ssh(schema):
    assert g.factor_members(schema, g.FactorCode.SSH) == ["x1", "x2", "x3"]


def test_factor_members_fpg(schema):
    assert g.factor_members(schema, g.FactorCode.FPG) == ["x68", "x69", "x70"]


def test_factor_member_sizes_are_3_or_4(schema):
    sizes = [len(g.factor_members(schema, c)) for c in g.FactorCode]
    assert set(sizes) <= {3, 4}
    assert sum(sizes) == 70


def test_every_variable_carries_its_factor(schema):
    for v in schema.variables:
        lo, hi = g.FACTOR_RANGES[v.factor]
        assert lo <= g.variable_index(v.id) <= hi


def test_factor_of_matches_membership(schema):
    assert schema.factor_of("x1") == g.FactorCode.SSH
    assert schema.factor_of("x70") == g.FactorCode.FPG


def test_variable_id_round_trip():
    for i in range(1, 71):
        assert g.variable_index(g.variable_id(i)) == i


def test_variable_id_rejects_out_of_range():
    with pytest.raises(GradecastError):
        g.variable_id(0)
    with pytest.raises(GradecastError):
        g.variable_id(71)


def test_variable_index_rejects_malformed():
    for bad in ("x0", "x71", "y3", "x", "3"):
        with pytest.raises(GradecastError):
            g.variable_index(bad)


def test_response_scale_requires_min_below_max():
    with pytest.raises(GradecastError):
        g.ResponseScale(min=5, max=5)


def test_schema_json_round_trip(schema):
    back = g.QuestionnaireSchema.from_json(schema.to_json())
    assert back == schema


def test_schema_to_dict_shape(schema):
    d = schema.to_dict()
    assert d["scale"] == {"min": 1, "max": 5}
    assert len(d["variables"]) == 70
    assert d["variables"][0] == {
        "id": "x1",
        "prompt": "I had enough time to study programming",
        "factor": "SSH",
    }


def test_builtin_schema_is_cached_identity():
    assert g.builtin_schema() is g.builtin_schema()


def test_active_schema_defaults_to_builtin(monkeypatch):
    monkeypatch.delenv("GRADECAST_SCHEMA", raising=False)
    assert g.active_schema() is g.builtin_schema()


def test_active_schema_env_override(tmp_path, monkeypatch, schema):
    doc = schema.to_dict()
    doc["variables"][0]["prompt"] = "custom prompt"
    path = tmp_path / "alt.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv("GRADECAST_SCHEMA", str(path))
    alt = g.active_schema()
    assert alt.prompt_of("x1") == "custom prompt"
    assert alt.prompt_of("x2") == schema.prompt_of("x2")


def test_members_lists_match_factor_members(schema):
    for code in g.FactorCode:
        assert schema.members(code) == g.factor_members(schema, code)
