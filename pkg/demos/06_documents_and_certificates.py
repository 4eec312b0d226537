#!/usr/bin/env python3
"""The document format and the certificate round trip, end to end:
write a document, run constructions through the CLI entry point, then
replay the emitted certificates with the independent checker."""

import json
import os
import tempfile

from promc.cli import run_command

DOC = {
    "schema": "promc.doc/1",
    "instance": "set-bij",
    "posets": {"I": {"elements": ["0", "1"], "covers": [["0", "1"]]}},
    "base_objects": {"pt": ["*"]},
    "objects": {
        "X": {"index": "I", "values": {"1": ["a", "b"], "0": ["x"]},
              "structure": {"1>0": {"a": "x", "b": "x"}}},
        "Y": {"index": "I", "values": {"1": ["u", "v"], "0": ["y"]},
              "structure": {"1>0": {"u": "y", "v": "y"}}},
    },
    "maps": {
        "p": {"source": "X", "target": "Y",
              "level": {"1": {"a": "u", "b": "v"}, "0": {"x": "y"}}},
    },
}

with tempfile.TemporaryDirectory() as tmp:
    doc_path = os.path.join(tmp, "doc.json")
    with open(doc_path, "w") as fh:
        json.dump(DOC, fh, indent=2)

    for argv in (
        ["detect-special", doc_path, "p", "--mode", "acyclic-fib",
         "--out", os.path.join(tmp, "special.cert.json")],
        ["factor", doc_path, "p", "--mode", "L1",
         "--out", os.path.join(tmp, "factor.cert.json")],
        ["tower-limit", doc_path, "p", "--class", "acyclic-fib",
         "--out", os.path.join(tmp, "tower.cert.json")],
        ["adjunction", doc_path, "--base", "pt", "--object", "X"],
    ):
        print("$ promc " + " ".join(argv))
        assert run_command(argv) == 0
        print()

    for cert in ("special.cert.json", "factor.cert.json", "tower.cert.json"):
        path = os.path.join(tmp, cert)
        print(f"$ promc verify {cert}")
        assert run_command(["verify", path]) == 0
        print()

    # corrupt a verdict and watch the replay reject it
    path = os.path.join(tmp, "special.cert.json")
    bad = json.load(open(path))
    bad["verdicts"]["1"]["we"] = False
    json.dump(bad, open(path, "w"))
    print("$ promc verify special.cert.json   (falsified verdict)")
    code = run_command(["verify", path])
    print("exit status:", code)
    assert code == 1
