import json

from jamestree.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


SEVEN_NODE_UNIT = {
    "space": "JH",
    "entries": [
        {"node": [], "value": "4/5"},
        {"node": [0], "value": "1/5"},
        {"node": [1], "value": "-1/5"},
        {"node": [0, 0], "value": "-1/5"},
        {"node": [0, 1], "value": "-1/5"},
        {"node": [1, 0], "value": "-1/5"},
        {"node": [1, 1], "value": "1/5"},
    ],
}


def test_norm_subcommand(tmp_path, capsys):
    path = write(tmp_path, "x.json", SEVEN_NODE_UNIT)
    code, out = run_cli(capsys, "norm", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "1"
    assert doc["witness"] == [{"top": [], "bottom": [0]}]


def test_norm_zero_vector(tmp_path, capsys):
    path = write(tmp_path, "zero.json", {"entries": []})
    code, out = run_cli(capsys, "norm", path, "--space", "JH")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "0" and doc["witness"] == []


def test_norm_literal_reports_both(tmp_path, capsys):
    path = write(
        tmp_path,
        "jt.json",
        {"space": "JT_INF", "entries": [{"node": [], "value": "1"}, {"node": [1], "value": "-1"}, {"node": [1, 1], "value": "1"}]},
    )
    code, out = run_cli(capsys, "norm", path, "--segments", "literal")
    doc = json.loads(out)
    assert code == 0
    assert doc["interval"]["value_sq"] == "3"
    assert doc["literal"]["value_sq"] == "5"


def test_norm_literal_rejected_outside_jt(tmp_path, capsys):
    path = write(tmp_path, "x.json", SEVEN_NODE_UNIT)
    code, out = run_cli(capsys, "norm", path, "--segments", "literal")
    assert code == 2
    assert json.loads(out)["error"] == "schema"


def test_dual_norm_subcommand(tmp_path, capsys):
    path = write(
        tmp_path,
        "g.json",
        {
            "space": "JH_INF",
            "class": "general",
            "terms": [
                {"coeff": "1", "top": [1], "bottom": [1]},
                {"coeff": "-1", "top": [2], "bottom": [2, 1]},
            ],
        },
    )
    code, out = run_cli(capsys, "dual-norm", path)
    doc = json.loads(out)
    assert code == 0
    assert doc["lower"] == "1" and doc["upper"] == "1" and doc["exact"]


def test_slice_and_diameter(tmp_path, capsys):
    path = write(tmp_path, "x.json", SEVEN_NODE_UNIT)
    code, out = run_cli(capsys, "slice", path, "--alpha", "1/10")
    doc = json.loads(out)
    assert code == 0
    assert doc["member_count"] == 1
    code, out = run_cli(
        capsys, "diameter", path, "--alpha", "1/10", "--scenario", "JH_ZERO", "--epsilon", "1/5"
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["lower"] == "0" and doc["upper"] == "0"


def test_diameter_53_scenario(tmp_path, capsys):
    path = write(
        tmp_path,
        "x.json",
        {"space": "JH_INF", "entries": [{"node": [], "value": "9/10"}, {"node": [1], "value": "1/10"}]},
    )
    code, out = run_cli(capsys, "diameter", path, "--alpha", "1/20", "--scenario", "JHINF_53")
    doc = json.loads(out)
    assert code == 0
    assert doc["upper"] == "5/3"


def test_schema_error_exit_code(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"space": "JH", "entries": [{"node": [5], "value": "1"}]})
    code, out = run_cli(capsys, "norm", path)
    assert code == 2
    assert json.loads(out)["error"] == "schema"
    code, _ = run_cli(capsys, "norm", str(tmp_path / "missing.json"))
    assert code == 2


def test_certify_extend(tmp_path, capsys):
    path = write(
        tmp_path,
        "ext.json",
        {
            "space": "JH",
            "vector": {"entries": [{"node": [], "value": "1/2"}]},
            "n": 2,
            "signs": [1, 1],
        },
    )
    code, out = run_cli(capsys, "certify", "extend", path)
    doc = json.loads(out)
    assert code == 0
    assert doc["norm"]["value"] == "1"


def test_certify_octahedral(tmp_path, capsys):
    path = write(
        tmp_path,
        "oct.json",
        {
            "space": "JH",
            "basis": [{"entries": [{"node": [], "value": "1"}]}],
            "candidate": {"entries": [{"node": [0], "value": "1"}]},
            "mesh": [
                {"lambda": "1", "coeffs": ["-1"]},
                {"lambda": "1", "coeffs": ["1"]},
            ],
        },
    )
    code, out = run_cli(capsys, "certify", "octahedral", path)
    doc = json.loads(out)
    assert code == 0
    assert doc["deficit"] == "1/2"
    assert doc["cert_v"] == 1


def test_certify_sd2p_and_ccw(tmp_path, capsys):
    sd2p = write(
        tmp_path,
        "sd2p.json",
        {
            "space": "JH",
            "slices": [
                {
                    "functional": {
                        "class": "signed_family",
                        "terms": [{"coeff": "1", "top": [], "bottom": []}],
                    },
                    "alpha": "1/4",
                }
            ],
            "weights": ["1"],
        },
    )
    code, out = run_cli(capsys, "certify", "sd2p", sd2p)
    doc = json.loads(out)
    assert code == 0
    assert doc["distance"] == "2" and doc["cert_v"] == 1 and doc["m"] == 16
    ccw = write(
        tmp_path,
        "ccw.json",
        {
            "slices": [{"vector": {"entries": [{"node": [1], "value": "1"}]}, "epsilon": "1/2"}],
            "weights": ["1"],
        },
    )
    code, out = run_cli(capsys, "certify", "ccw", ccw)
    doc = json.loads(out)
    assert code == 0
    assert doc["distance"] == "2" and len(doc["pair"]) == 2


def test_byte_identical_output(tmp_path, capsys):
    path = write(tmp_path, "x.json", SEVEN_NODE_UNIT)
    _, first = run_cli(capsys, "norm", path)
    _, second = run_cli(capsys, "norm", path)
    assert first == second


def test_tsv_format(tmp_path, capsys):
    path = write(tmp_path, "x.json", SEVEN_NODE_UNIT)
    code, out = run_cli(capsys, "norm", path, "--format", "tsv")
    assert code == 0
    assert out.splitlines()[0] == 'value\t"1"'


def test_verify_duals_suite(capsys):
    code = main(["verify", "--suite", "duals"])
    captured = capsys.readouterr()
    assert code == 0
    assert "[PASS] 4" in captured.out
    report = json.loads(captured.out.strip().splitlines()[-1])
    assert report["passed"] is True


def test_verify_output_independent_of_workers(capsys):
    main(["verify", "--suite", "duals"])
    serial = capsys.readouterr().out
    main(["verify", "--suite", "duals", "--parallel", "2"])
    parallel = capsys.readouterr().out
    assert serial == parallel


def test_config_file_overrides(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", {"tol": "1/1000", "seed": 5, "workers": 1})
    path = write(tmp_path, "x.json", SEVEN_NODE_UNIT)
    code, out = run_cli(capsys, "norm", path, "--config", cfg)
    assert code == 0
    bad = write(tmp_path, "bad.json", {"tol": "-1"})
    code, out = run_cli(capsys, "norm", path, "--config", bad)
    assert code == 2
