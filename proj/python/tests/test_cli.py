import json
import subprocess
import time
import urllib.request


def run(cli, *args, stdin=None):
    return subprocess.run([cli, *args], input=stdin, capture_output=True, text=True, timeout=120)


def test_analyze_stdin(cli, toy_text):
    r = run(cli, "--json", "analyze", "--lang", "EN", "-", stdin=toy_text)
    assert r.returncode == 0, r.stderr
    body = json.loads(r.stdout)
    assert body["r_vague"]["num"] == 2 and body["r_vague"]["den"] == 3


def test_help_exits_zero(cli):
    assert run(cli, "--help").returncode == 0


def test_usage_error_exits_two(cli):
    assert run(cli, "analyze", "--no-such-flag").returncode == 2
    assert run(cli, "gradcheck", "--tokens", "9").returncode == 2


def test_runtime_error_exits_one(cli, tmp_path):
    r = run(cli, "predict", "--checkpoint", str(tmp_path / "missing.bin"), "text")
    assert r.returncode == 1
    assert r.stderr.startswith("error")


def test_gradcheck_passes(cli):
    r = run(cli, "gradcheck", "--models", "5")
    assert r.returncode == 0, r.stdout + r.stderr


def test_pipeline(cli, tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    model = tmp_path / "model.bin"
    assert run(cli, "gen-corpus", "--n-docs", "60", "--out", str(corpus)).returncode == 0
    r = run(cli, "--dim", "16", "train", "--corpus", str(corpus), "--out", str(model),
            "--epochs", "2", "--layers", "1", "--kernels", "4", "--kernel-size", "3")
    assert r.returncode == 0, r.stderr
    r = run(cli, "--json", "--dim", "16", "evaluate", "--checkpoint", str(model), "--corpus", str(corpus))
    assert r.returncode == 0, r.stderr
    assert 0.0 <= json.loads(r.stdout)["f1"] <= 1.0


def test_serve_health(cli):
    proc = subprocess.Popen([cli, "serve", "--port", "0"], stdout=subprocess.PIPE, text=True)
    try:
        line = proc.stdout.readline()
        assert line.startswith("listening on http://")
        url = line.split()[-1]
        deadline = time.time() + 10
        while True:
            try:
                with urllib.request.urlopen(url + "/health", timeout=5) as resp:
                    assert resp.status == 200
                    body = json.loads(resp.read())
                    break
            except OSError:
                if time.time() > deadline:
                    raise
                time.sleep(0.1)
        assert body["status"] == "ok"
        assert body["lexicon_counts"]["EN"]["total"] > 0
    finally:
        proc.terminate()
        proc.wait(timeout=10)
