import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majority import formats
from majority.cli import main, parse_config
from majority.hypercore import Coloring, Hypergraph
from majority.models import NO_MAJORITY, Ball, BMAnswer, ModelId, answer_vector, bm_answers
from majority.strategies import build_cm_odd, build_gm, build_om
from majority.verifier import exact_n, verify_bm, verify_deterministic


@st.composite
def hypergraphs(draw):
    n = draw(st.integers(1, 9))
    k = draw(st.integers(1, n))
    pool = [m for m in range(1 << n) if m.bit_count() == k]
    edges = draw(st.lists(st.sampled_from(pool), max_size=6, unique=True))
    return Hypergraph(n, tuple(edges), k)


@settings(max_examples=100, deadline=None)
@given(hypergraphs())
def test_hypergraph_text_and_json_round_trip(h):
    assert formats.hypergraph_from_text(formats.hypergraph_to_text(h)) == h
    assert formats.hypergraph_from_json(formats.hypergraph_to_json(h)) == h


def test_non_uniform_text():
    h = Hypergraph.from_sets(4, [(0,), (1, 2, 3)])
    text = formats.hypergraph_to_text(h)
    assert text.splitlines()[0] == "4 0"
    assert formats.hypergraph_from_text(text) == h


def test_text_rejects_unsorted_edges():
    with pytest.raises(ValueError):
        formats.hypergraph_from_text("4 2\n1 0\n")
    with pytest.raises(ValueError):
        formats.hypergraph_from_text("")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 255), st.sampled_from(["OM", "CM", "GM"]))
def test_answer_vector_round_trip(blue, model):
    h = build_om(8, 3).queries
    av = answer_vector(model, h, Coloring(8, blue))
    obj = formats.answer_vector_to_json(av)
    assert formats.answer_vector_from_json(json.loads(json.dumps(obj))) == av


def test_bm_answer_and_output_round_trip():
    for a in bm_answers((0, 1, 2), Coloring(4, 0b1)) | {BMAnswer(False)}:
        assert formats.answer_from_json(ModelId.BM, formats.answer_to_json(a)) == a
    for out in (Ball(3), NO_MAJORITY):
        assert formats.output_from_json(formats.output_to_json(out)) == out


def test_strategy_round_trips(tmp_path):
    s = build_cm_odd(7, 3)
    assert formats.strategy_from_json(formats.strategy_to_json(s)) == s
    formats.write_strategy_files(s, tmp_path / "s")
    back = formats.read_strategy_files(tmp_path / "s")
    assert back == s and back.aux == s.aux


def test_certificate_json_replays():
    cert = verify_deterministic("CM", build_cm_odd(6, 3).queries)
    obj = json.loads(formats.dumps(formats.certificate_to_json(cert)))
    assert formats.certificate_from_json(obj).table == cert.table
    assert formats.replay(obj)[0]


def test_tampered_certificate_is_rejected():
    cert = verify_deterministic("OM", build_om(6, 3).queries)
    obj = formats.certificate_to_json(cert)
    row = obj["decoder_table"][0]
    row["output"] = {"ball": 5} if row["output"] != {"ball": 5} else {"ball": 0}
    ok, _ = formats.replay(obj)
    if ok:
        # the first row may allow both balls; flip every row to no-majority instead
        for r in obj["decoder_table"]:
            r["output"] = {"no_majority": True}
        ok, _ = formats.replay(obj)
    assert not ok


def test_bm_certificate_json_replays():
    cert = verify_bm(build_gm(6, 3).queries)
    obj = json.loads(formats.dumps(formats.certificate_to_json(cert)))
    back = formats.certificate_from_json(obj)
    assert back.nodes == cert.nodes and back.root == cert.root
    assert formats.replay(obj)[0]


def test_tampered_witness_is_rejected():
    w = verify_deterministic("OM", Hypergraph.from_sets(6, [(0, 1, 2), (3, 4, 5)], 3))
    obj = formats.witness_to_json(w)
    assert formats.replay(obj)[0]
    obj["colorings"] = obj["colorings"][:1]
    assert not formats.replay(obj)[0]


def test_exact_and_minimal_artifacts_replay():
    assert formats.replay(formats.exact_to_json(exact_n("GM", 2, 5)))[0]
    assert formats.replay(formats.exact_to_json(exact_n("CM", 3, 3)))[0]
    bad = formats.exact_to_json(exact_n("GM", 2, 5))
    bad["value"] -= 1
    bad["optimal_queries"] = bad["optimal_queries"][:-1]
    assert not formats.replay(bad)[0]


def test_unknown_kind():
    assert not formats.replay({"kind": "nonsense"})[0]


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_cli_construct_example(capsys):
    code, out = run_cli(capsys, "construct", "--model", "om", "--n", "8", "--k", "3")
    assert code == 0
    obj = json.loads(out.out)
    assert len(obj["queries"]) == 4 and obj["kind"] == "strategy"


def test_cli_exact_example(capsys):
    code, out = run_cli(capsys, "exact", "--model", "om", "--k", "2", "--n", "4")
    assert code == 0 and json.loads(out.out)["value"] == 3


def test_cli_min_c_example(capsys):
    code, out = run_cli(capsys, "min-c", "--k", "2", "--n", "3", "--cap", "4")
    obj = json.loads(out.out)
    assert code == 0 and obj["value"] == 3 and len(obj["witness"]) == 3


def test_cli_verify_and_replay_witness(tmp_path, capsys):
    src = tmp_path / "q.txt"
    src.write_text("6 3\n0 1 2\n3 4 5\n")
    wit = tmp_path / "w.json"
    code, _ = run_cli(capsys, "verify", "--model", "om", "-i", str(src), "--emit-witness", str(wit))
    assert code == 2
    code, out = run_cli(capsys, "replay", str(wit))
    assert code == 0 and out.out.startswith("VALID")


@pytest.mark.parametrize("argv", [
    ["construct", "--model", "gm", "--n", "7", "--k", "3"],
    ["construct", "--model", "bm", "--n", "6", "--k", "3"],
    ["exact", "--model", "cm", "--k", "2", "--n", "5"],
    ["min-b", "--k", "2", "--n", "4", "--cap", "4"],
    ["report", "--model", "gm", "--k", "2", "--n", "5"],
    ["crosscheck", "--count", "12", "--seed", "4"],
])
def test_cli_artifacts_replay_and_are_deterministic(argv, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["-o", str(a)]) == 0
    assert main(argv + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()
    code, out = run_cli(capsys, "replay", str(a))
    assert code == 0, out.out


def test_cli_verify_certificates_replay(tmp_path, capsys):
    strat = tmp_path / "s.json"
    main(["construct", "--model", "gm", "--n", "6", "--k", "3", "-o", str(strat)])
    for model in ("gm", "bm", "cm", "om"):
        cert = tmp_path / f"c-{model}.json"
        assert main(["verify", "--model", model, "-i", str(strat), "-o", str(cert)]) == 0
        capsys.readouterr()
        code, out = run_cli(capsys, "replay", str(cert))
        assert code == 0, out.out


def test_cli_analyze_replays(tmp_path, capsys):
    src = tmp_path / "q.txt"
    src.write_text(formats.hypergraph_to_text(build_om(8, 3).queries))
    rep = tmp_path / "a.json"
    assert main(["analyze", "--model", "om", "-i", str(src), "-o", str(rep)]) == 0
    code, _ = run_cli(capsys, "replay", str(rep))
    assert code == 0


def test_cli_threads_do_not_change_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["exact", "--model", "gm", "--k", "2", "--n", "6", "-o", str(a)])
    main(["exact", "--model", "gm", "--k", "2", "--n", "6", "--threads", "2", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_cli_report_text(capsys):
    code, out = run_cli(capsys, "report", "--model", "cm", "--k", "2", "--n", "6", "--format", "text")
    assert code == 0 and "exact=5" in out.out


def test_cli_budget_exit(capsys, tmp_path):
    out = tmp_path / "b.json"
    code, _ = run_cli(capsys, "exact", "--model", "gm", "--k", "3", "--n", "6",
                      "--max-candidates", "5", "-o", str(out))
    assert code == 3
    obj = json.loads(out.read_text())
    assert obj["kind"] == "resource_limit" and obj["bracket"][0] <= obj["bracket"][1]
    code, _ = run_cli(capsys, "replay", str(out))
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["exact", "--model", "xm", "--k", "2", "--n", "4"],
    ["exact", "--model", "om", "--k", "5", "--n", "3"],
    ["exact", "--model", "om", "--k", "2"],
    ["construct", "--model", "om", "--n", "5", "--k", "2", "--cap", "0"],
    ["replay", "/nonexistent/file.json"],
])
def test_cli_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


def test_cli_invalid_replay_exit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "nonsense"}))
    code, _ = run_cli(capsys, "replay", str(bad))
    assert code == 2


def test_parse_config_fields():
    cfg = parse_config(["crosscheck", "--seed", "9", "--count", "3"])
    assert cfg.command == "crosscheck" and cfg.seed == 9 and cfg.count == 3
