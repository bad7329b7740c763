import json

import pytest

import poset_pursuit as pp


def test_catalog_verdicts():
    assert pp.classify("@S21")["outcome"] == "RobberWins"
    assert pp.classify("@S21")["rule"] == "main1"
    assert pp.classify("@S21op")["outcome"] == "CopWins"
    assert pp.classify(pp.Space.catalog("Fractal6"))["rule"] == "fractal"


def test_space_round_trip():
    x = pp.Space(["a", "b", "c"], [("a", "b"), ("a", "c")])
    assert len(x) == 3
    assert x.leq("a", "c") and not x.leq("b", "c")
    assert pp.Space.load(x.to_json()) == x
    assert x.opposite().opposite() == x
    assert pp.is_isomorphic(x, pp.Space.catalog("ConeOpW(1)"))


def test_non_t0_input():
    v = pp.classify({"points": ["p", "q"], "relations": [["p", "q"], ["q", "p"]]})
    assert v["rule"] == "non-T0"
    assert v["certificate"]["type"] == "non-T0"


def test_enumeration():
    assert [len(pp.enumerate_posets(n)) for n in range(1, 5)] == [1, 2, 5, 16]


def test_cop_walk_on_v2():
    walk = {
        "breakpoints": [{"t": "0", "w": "c0"}, {"t": "1", "w": "a"}, {"t": "2", "w": "c1"}],
        "intervals": ["c0", "c1"],
    }
    assert pp.is_strong_strategy("@ConeV(2)", walk)
    assert pp.escape("@ConeV(2)", walk) is None
    assert pp.respond("@ConeV(2)", walk, "dp") is None
    assert pp.step_path_svg("@ConeV(2)", walk).startswith("<svg")


def test_robber_reply_on_v3():
    walk = {"breakpoints": [{"t": 0, "w": "a"}, {"t": 1, "w": "a"}], "intervals": ["c0"]}
    reply = pp.respond("@ConeV(3)", walk)
    assert reply is not None
    assert reply["domain"] == ["0", "1"]
    assert pp.escape("@ConeV(3)", walk) is not None


def test_synthesis_and_bounded_search():
    path = pp.synthesize("@ConeV(3)")
    assert path["root"]["kind"] in {"concat", "omega", "selfsimilar"}
    found, summary = pp.bounded_search("@ConeV(3)", path, budget=2, unroll=3)
    assert not found
    assert "none found" in summary
    assert pp.synthesize("@S21") is None


def test_galleries_and_harness():
    assert pp.watcher("gallery-3")[0] == "thief"
    assert pp.watcher("gallery-1")[0] == "watcher"
    report = pp.cross_validate(3)
    assert report["clean"] and report["posets"] == 5


def test_cli_and_errors():
    code, out, _ = pp.run_cli(["classify", "@Yoke"])
    assert code == 0
    assert json.loads(out)["outcome"] == "RobberWins"
    with pytest.raises(pp.ParseError, match="line|1:"):
        pp.Space.load('{"points": [')
    with pytest.raises(pp.Error):
        pp.Space.catalog("NoSuchSpace")
    assert issubclass(pp.ParseError, ValueError)
