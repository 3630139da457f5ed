import json
import signal
import socket
import subprocess
import sys
import time

import httpx
import pytest

from fgx.cli import main
from fgx.graph import parse_graph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture(scope="module")
def graph_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "graph.json"
    assert main(["generate", "--nodes", "20", "--dims", "3", "--clusters", "3",
                 "--noise", "0.2", "--seed", "5", "--output", str(path)]) == 0
    return path


# --- generate ---------------------------------------------------------------


def test_generate_to_stdout_parses(capsys):
    code, out, err = run(capsys, "generate", "--nodes", "6", "--dims", "2",
                         "--clusters", "2", "--seed", "1")
    assert code == 0 and err == ""
    g = parse_graph(out)
    assert g.n == 6 and g.m == 2


def test_generate_deterministic_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["generate", "--nodes", "10", "--dims", "2", "--clusters", "2",
                     "--seed", "9", "--output", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_invalid_parameters_exit_1(capsys):
    code, out, err = run(capsys, "generate", "--nodes", "10", "--dims", "2",
                         "--clusters", "5")
    assert code == 1 and out == ""
    assert err.startswith("error:")


# --- layout -----------------------------------------------------------------


def test_layout_writes_scene(graph_file, capsys):
    code, out, err = run(capsys, "layout", "--input", str(graph_file))
    assert code == 0 and err == ""
    scene = json.loads(out)
    assert set(scene) == {"positions", "colors", "palette", "edges"}
    assert len(scene["positions"]) == 20
    assert scene["colors"] == [i % 3 for i in range(20)]


def test_layout_deterministic_bytes(graph_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["layout", "--input", str(graph_file),
                     "--output", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_layout_missing_input_exit_1_names_path(capsys):
    code, out, err = run(capsys, "layout", "--input", "/no/such/file.json")
    assert code == 1 and out == ""
    assert "/no/such/file.json" in err


# --- brush -------------------------------------------------------------------


def test_brush_single_axis_full_range(graph_file, capsys):
    code, out, err = run(capsys, "brush", "--input", str(graph_file),
                         "--axis", "0", "--range=-1e9:1e9",
                         "--threshold", "2.0")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["selection"] == list(range(20))  # wide-open filter keeps everyone
    entry = doc["axes"][0]
    assert entry["active"] is True
    assert [e["node"] for e in entry["edges"]] == list(range(20))


def test_brush_two_axes_intersect(graph_file, capsys):
    g = parse_graph(graph_file.read_text())
    v0 = g.dimension_values(0)
    v1 = g.dimension_values(1)
    mid0 = (min(v0) + max(v0)) / 2.0
    mid1 = (min(v1) + max(v1)) / 2.0
    code, out, err = run(capsys, "brush", "--input", str(graph_file),
                         "--axis", "0", "--range", f"{min(v0)}:{mid0}",
                         "--axis", "1", "--range", f"{mid1}:{max(v1)}",
                         "--threshold", "2.0")
    assert code == 0
    doc = json.loads(out)
    expect = sorted(
        i for i in range(20)
        if min(v0) <= v0[i] <= mid0 and mid1 <= v1[i] <= max(v1)
    )
    assert doc["selection"] == expect
    for entry in doc["axes"]:
        if entry["axis"] in (0, 1):
            assert entry["active"] is True
            assert [e["node"] for e in entry["edges"]] == expect


def test_brush_far_axis_yields_empty_selection(graph_file, capsys):
    code, out, err = run(capsys, "brush", "--input", str(graph_file),
                         "--axis", "0", "--range=-1e9:1e9",
                         "--base", "9.0,0.0,0.0")
    assert code == 0  # empty result is still a success
    doc = json.loads(out)
    assert doc["selection"] == []
    assert doc["axes"][0]["active"] is False


def test_brush_argument_errors_exit_1(graph_file, capsys):
    code, _, err = run(capsys, "brush", "--input", str(graph_file))
    assert code == 1 and "--axis" in err
    code, _, err = run(capsys, "brush", "--input", str(graph_file),
                       "--axis", "0", "--range", "0.1-0.9")
    assert code == 1 and "expected LO:HI" in err
    code, _, err = run(capsys, "brush", "--input", str(graph_file),
                       "--axis", "7", "--range", "0:1")
    assert code == 1 and "out of range" in err
    code, _, err = run(capsys, "brush", "--input", str(graph_file),
                       "--axis", "0", "--range", "0:1", "--base", "1,2")
    assert code == 1 and "X,Y,Z" in err


def test_brush_is_deterministic(graph_file, capsys):
    argv = ["brush", "--input", str(graph_file), "--axis", "0",
            "--range", "0:1", "--threshold", "1.5"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    code, second, _ = run(capsys, *argv)
    assert first == second


# --- serve ---------------------------------------------------------------------


def test_serve_rejects_occupied_port(capsys):
    holder = socket.socket()
    holder.bind(("127.0.0.1", 0))
    port = holder.getsockname()[1]
    try:
        code, out, err = run(capsys, "serve", "--port", str(port))
        assert code == 1 and out == ""
        assert "cannot bind" in err
    finally:
        holder.close()


def test_serve_answers_http_then_exits_cleanly(graph_file):
    port = free_port()
    proc = subprocess.Popen(
        [sys.executable, "-m", "fgx.cli", "serve", "--port", str(port)],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE,
    )
    try:
        body = {"graph": json.loads(graph_file.read_text())}
        url = f"http://127.0.0.1:{port}"
        deadline = time.monotonic() + 20
        created = None
        while time.monotonic() < deadline:
            try:
                created = httpx.post(f"{url}/sessions", json=body, timeout=5)
                break
            except httpx.TransportError:
                time.sleep(0.1)
        assert created is not None, "service never came up"
        assert created.status_code == 201
        sid = created.json()["session"]
        snap = httpx.get(f"{url}/sessions/{sid}/snapshot", timeout=5)
        assert snap.status_code == 200
        assert snap.json()["revision"] == 0
    finally:
        proc.send_signal(signal.SIGINT)
        try:
            proc.wait(timeout=15)
        except subprocess.TimeoutExpired:
            proc.kill()
            proc.wait()
    assert proc.returncode == 0


def test_console_entry_point_runs():
    out = subprocess.run(
        [sys.executable, "-m", "fgx.cli", "generate", "--nodes", "4",
         "--dims", "2", "--clusters", "2", "--seed", "0"],
        capture_output=True, text=True, timeout=60,
    )
    assert out.returncode == 0
    assert parse_graph(out.stdout).n == 4
