"""
Describing circuits as JSON
===========================

Circuit files drive the command-line tool. This script writes one, reads it
back, and evaluates it. The same file works with ``noisevol run --circuit``.
"""

import json
import math
import tempfile
from pathlib import Path

from noisevol import run
from noisevol.formats import load_circuit

circuit = {
    "schema": 1,
    "inputs": [
        {"kind": "squeezed_vacuum", "r": 0.3},
        {"kind": "thermal", "nbar": 0.05},
        {"kind": "vacuum"},
    ],
    "ops": [
        {"bs": [0, 1], "theta": math.pi / 4},
        {"bs": [1, 2], "theta": math.pi / 3},
    ],
    "tracked": [0, 1, 2],
}

path = Path(tempfile.mkdtemp()) / "circuit.json"
path.write_text(json.dumps(circuit, indent=2))

_, report = run(load_circuit(path))
print(json.dumps(report.to_dict(), indent=2))
print(f"\ntry: noisevol run --circuit {path}")
