import pytest

from rectdist.scenarios import (
    PRESETS, ConfigError, ScenarioConfig, load_scenario, parse_config, preset, scenario_hash,
)


def test_presets_match_published_parameters():
    assert PRESETS["O"] == ScenarioConfig("O", 200.0, 100.0, 30.0, 25.0, 10.0, 1.5)
    assert PRESETS["A"] == ScenarioConfig("A", 200.0, 9.75, 0.0, 4.875, 0.0, None)
    assert PRESETS["B"] == ScenarioConfig("B", 3.0, 5.0, 0.5, 1.25, 3.0, 1.5)
    assert PRESETS["C"] == ScenarioConfig("C", 200.0, 100.0, 30.0, 25.0, 10.0, 120.0)


def test_preset_lookup_is_case_insensitive():
    assert preset("b") == preset("B")


def test_parse_config_with_comments():
    cfg = parse_config("""
        # office
        name = room
        lx = 3   # metres
        ly = 5
        ux = 0.5
        uy = 1.25
        uz = 3
        vz = 1.5
    """)
    assert cfg == ScenarioConfig("room", 3.0, 5.0, 0.5, 1.25, 3.0, 1.5)


def test_overrides_win():
    cfg = parse_config("lx = 3\nly = 5\nux = 0\nuy = 0\n", {"ux": 1.0, "vz": None})
    assert cfg.ux == 1.0 and cfg.vz is None


@pytest.mark.parametrize("text, field", [
    ("lx = 3\nly = 5\nux = 0\n", "uy"),
    ("lx = three\nly = 5\nux = 0\nuy = 0\n", "lx"),
    ("lx = 3\nly = 5\nux = 0\nuy = 0\ncolor = red\n", "color"),
    ("lx = 3\nly = 5\nux = 0\nuy = 0\nvz = inf\n", "vz"),
])
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(ConfigError, match=field):
        parse_config(text)


def test_malformed_line():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("lx 3\n")


def test_load_from_file_and_preset(tmp_path):
    path = tmp_path / "sq.cfg"
    path.write_text("lx = 2\nly = 2\nux = 0\nuy = 0\n")
    s = load_scenario(str(path))
    assert (s.lx, s.ly, s.u.x) == (2.0, 2.0, 0.0)
    assert load_scenario("O", {"vz": 3.0}).vz == 3.0


def test_load_rejects_outside_reference():
    with pytest.raises(ConfigError, match="reference point"):
        load_scenario("O", {"ux": 150.0})


def test_load_unknown():
    with pytest.raises(ConfigError, match="neither a preset"):
        load_scenario("/nonexistent/file.cfg")


def test_hash_ignores_name_and_tracks_geometry():
    a = preset("O")
    b = load_scenario("O")
    assert scenario_hash(a) == scenario_hash(b)
    assert len(scenario_hash(a)) == 16
    assert scenario_hash(a) != scenario_hash(preset("C"))
