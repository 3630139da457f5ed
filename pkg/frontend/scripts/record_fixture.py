"""Record a scripted session's wire traffic into test/fixtures/session.json.

Drives the real service in-process and captures, for each mutation, the
stream message and the full snapshot after it. The UI tests replay this
file, so they exercise genuine server output without needing a server.

Run from anywhere with the fgx package installed:

    python3 frontend/scripts/record_fixture.py
"""

import json
import math
from pathlib import Path

from fastapi.testclient import TestClient

from fgx.graph import generate_clustered, graph_to_dict
from fgx.service import create_app

FIXTURE = Path(__file__).resolve().parent.parent / "test" / "fixtures" / "session.json"

CONFIG = {"seed": 0, "bins": 12, "threshold": 0.25}


def nearest_node(snapshot, x, y, z):
    best, best_d = None, math.inf
    for p in snapshot["scene"]["positions"]:
        d = math.dist((x, y, z), p)
        if d < best_d:
            best, best_d = p, d
    return best


def main() -> None:
    graph = graph_to_dict(generate_clustered(n=40, m=4, clusters=4, noise=0.25, seed=20))

    with TestClient(create_app()) as client:
        created = client.post("/sessions", json={"graph": graph, "config": CONFIG})
        created.raise_for_status()
        sid = created.json()["session"]
        initial = created.json()["snapshot"]

        # brush target: the node closest to the origin; parking a midpoint
        # on top of it guarantees activation at any threshold
        target = nearest_node(initial, 0.0, 0.0, 0.0)
        axis0 = initial["axes"][0]
        lo, hi = axis0["min"], axis0["max"]
        span = hi - lo

        script = [
            ("rebin", {"type": "set_bins", "value": 10}),
            ("drag-axis0-outside", {"type": "move_axis", "axis": 0,
                                    "base": [3.0, -0.5, 0.0], "direction": [0.0, 1.0, 0.0]}),
            ("drag-axis0-inside", {"type": "move_axis", "axis": 0,
                                   "base": [target[0], target[1] - 0.5, target[2]],
                                   "direction": [0.0, 1.0, 0.0]}),
            ("narrow-1", {"type": "set_filter", "axis": 0,
                          "lo": lo + 0.15 * span, "hi": hi - 0.15 * span}),
            ("narrow-2", {"type": "set_filter", "axis": 0,
                          "lo": lo + 0.30 * span, "hi": hi - 0.30 * span}),
            ("narrow-3", {"type": "set_filter", "axis": 0,
                          "lo": lo + 0.42 * span, "hi": hi - 0.42 * span}),
            ("drag-axis1-inside", {"type": "move_axis", "axis": 1,
                                   "base": [target[0], target[1] - 0.5, target[2]],
                                   "direction": [0.0, 1.0, 0.0]}),
            ("retune-threshold", {"type": "set_threshold", "value": 0.35}),
            ("drag-axis1-out", {"type": "move_axis", "axis": 1,
                                "base": [5.0, -0.5, 0.0], "direction": [0.0, 1.0, 0.0]}),
            ("reset-filter", {"type": "set_filter", "axis": 0, "lo": lo, "hi": hi}),
        ]

        steps = []
        with client.websocket_connect(f"/sessions/{sid}/stream") as ws:
            for label, mutation in script:
                posted = client.post(f"/sessions/{sid}/mutations", json=mutation)
                posted.raise_for_status()
                message = json.loads(ws.receive_text())
                snapshot = client.get(f"/sessions/{sid}/snapshot").json()
                steps.append({
                    "label": label,
                    "mutation": mutation,
                    "message": message,
                    "snapshot": snapshot,
                })

    fixture = {"config": CONFIG, "graph": graph, "initial": initial, "steps": steps}
    FIXTURE.parent.mkdir(parents=True, exist_ok=True)
    FIXTURE.write_text(json.dumps(fixture, indent=1, sort_keys=True))
    sizes = [len(s["snapshot"]["brush"]["axes"][0]["edges"]) for s in steps]
    print(f"wrote {FIXTURE} ({FIXTURE.stat().st_size} bytes, "
          f"{len(steps)} steps, axis-0 edge counts {sizes})")


if __name__ == "__main__":
    main()
