import json

import pytest

from graphstar.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "2", "2", "full")
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_enumerate_json(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "1", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 3 and all(set(g) == {"m", "n", "legs"} for g in data)


def test_compose_golden(capsys):
    code, out, _ = run_cli(capsys, "compose",
                           "m=2;n=1;v1:B1,B2", "m=2;n=1;v1:B1,B2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert sorted(line.split()[0] for line in lines) == ["-1", "-1", "1", "1"]


def test_bracket_flag(capsys):
    code, out, _ = run_cli(capsys, "compose", "--bracket",
                           "m=2;n=0", "m=2;n=1;v1:B1,B2")
    assert code == 0
    assert out.strip() == "0"


def test_coproduct(capsys):
    code, out, _ = run_cli(capsys, "coproduct", "m=3;n=2;v1:B1,V2;v2:B2,B3")
    assert code == 0
    assert len(out.strip().splitlines()) == 2
    assert "(x)" in out


def test_coproduct_arity_error_exits_2(capsys):
    code, _, err = run_cli(capsys, "coproduct", "m=2;n=1;v1:B1,B2")
    assert code == 2
    assert "error" in err


def test_parse_error_exits_2(capsys):
    code, _, err = run_cli(capsys, "compose", "m=2;n=1;v1:B1,B1", "m=2;n=0")
    assert code == 2
    assert "parallel" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["enumerate"])
    assert e.value.code == 2


def test_antipode(capsys):
    code, out, _ = run_cli(capsys, "antipode", "m=3;n=2;v1:B1,V2;v2:B2,B3")
    assert code == 0
    assert "-1 m=3" in out and "(x)" in out
    code, out2, _ = run_cli(capsys, "antipode", "--method", "geometric",
                            "m=3;n=2;v1:B1,V2;v2:B2,B3")
    assert code == 0
    assert out == out2


def test_merge(capsys):
    code, out, _ = run_cli(capsys, "merge", "m=3;n=2;v1:B2,V2;v2:B1,B3")
    assert code == 0
    assert len(out.strip().splitlines()) == 2


def test_canonicalize(capsys):
    code, out, _ = run_cli(capsys, "canonicalize", "m=2;n=2;v1:B1,V2;v2:B1,B2")
    assert code == 0
    assert "m=2;n=2;v1:B1,B2;v2:B1,V1" in out
    assert "prime=true" in out and "heights=(2,1,-1)" in out


def test_solve_and_star_with_files(tmp_path, capsys):
    alpha = tmp_path / "alpha.json"
    alpha.write_text('{"dim": 2, "entries": {"1,2": "1"}}')
    weights = tmp_path / "weights.json"
    code, out, _ = run_cli(capsys, "solve", "--max-order", "2",
                           "--restrict", "constant", "--out", str(weights))
    assert code == 0
    stored = json.loads(weights.read_text())
    assert stored["orders"] == 2
    code, out, _ = run_cli(capsys, "star", "--alpha", str(alpha),
                           "--weights", str(weights), "--order", "2",
                           "--f", "x1^2", "--g", "x2^2")
    assert code == 0
    assert out.strip() == "x1^2*x2^2 + eps*(4*x1*x2) + eps^2*(2)"


def test_star_solves_on_the_fly(tmp_path, capsys):
    alpha = tmp_path / "alpha.json"
    alpha.write_text('{"dim": 2, "entries": {"1,2": "x2"}}')
    code, out, _ = run_cli(capsys, "star", "--alpha", str(alpha), "--order", "1",
                           "--f", "x1", "--g", "x2")
    assert code == 0
    assert out.strip() == "x1*x2 + eps*(x2)"


def test_star_insufficient_weights_exits_2(tmp_path, capsys):
    alpha = tmp_path / "alpha.json"
    alpha.write_text('{"dim": 2, "entries": {"1,2": "1"}}')
    weights = tmp_path / "weights.json"
    run_cli(capsys, "solve", "--max-order", "1", "--restrict", "constant",
            "--out", str(weights))
    code, _, err = run_cli(capsys, "star", "--alpha", str(alpha),
                           "--weights", str(weights), "--order", "3",
                           "--f", "x1", "--g", "x2")
    assert code == 2 and "order" in err


def test_solve_full_order2_values(capsys):
    code, out, _ = run_cli(capsys, "solve", "--max-order", "2",
                           "--restrict", "full")
    assert code == 0
    assert "order 1: unique" in out and "order 2: unique" in out
    assert "W(m=2;n=2;v1:B1,B2;v2:B1,V1) = 1" in out


def test_solve_normalization_pair(capsys):
    code, out, _ = run_cli(capsys, "solve", "--max-order", "2",
                           "--restrict", "full",
                           "--normalize", "m=2;n=1;v1:B1,B2=2")
    assert code == 0
    assert "W(m=2;n=1;v1:B1,B2) = 2" in out
    assert "W(m=2;n=2;v1:B1,B2;v2:B1,V1) = 4" in out


def test_config_file_defaults(tmp_path, capsys):
    cfg = tmp_path / "graphstar.conf"
    cfg.write_text("max_order=1\nrestriction=constant\n")
    code, out, _ = run_cli(capsys, "solve", "--config", str(cfg))
    assert code == 0
    assert "order 1: unique" in out and "order 2" not in out


def test_verify_pass_and_fail_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "verify", "bch")
    assert code == 0
    assert out.strip().endswith("(2/2 checks)")


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "nope"])
    assert e.value.code == 2


def test_threads_env_validation(capsys, monkeypatch):
    monkeypatch.setenv("GRAPHSTAR_THREADS", "2")
    code, out, _ = run_cli(capsys, "verify", "bch")
    assert code == 0
    monkeypatch.setenv("GRAPHSTAR_THREADS", "zebra")
    code, _, err = run_cli(capsys, "verify", "bch")
    assert code == 2 and "GRAPHSTAR_THREADS" in err


def test_output_to_file(tmp_path, capsys):
    out_file = tmp_path / "graphs.txt"
    code, _, _ = run_cli(capsys, "enumerate", "2", "2", "--out", str(out_file))
    assert code == 0
    assert len(out_file.read_text().strip().splitlines()) == 3


def test_output_determinism_across_runs_and_thread_counts(capsys, monkeypatch):
    outputs = []
    for threads in ("1", "4", "1"):
        monkeypatch.setenv("GRAPHSTAR_THREADS", threads)
        code, out, _ = run_cli(capsys, "verify", "appendix")
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]
    runs = [run_cli(capsys, "enumerate", "3", "3")[1] for _ in range(2)]
    assert runs[0] == runs[1]
