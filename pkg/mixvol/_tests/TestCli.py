import contextlib
import io
import json
import os
import tempfile
import unittest

import pytest

import mixvol
from mixvol.cli import main
from mixvol.discriminant import (
    dump_matrix,
    SymMatrix,
)
from mixvol.geometry import (
    box,
    dump_polytope,
    segment,
    standard_simplex,
    unit_cube,
)

mixvol.set_stream_logger("test", level="INFO")


class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.dir = self.tmpdir.name

    def tearDown(self):
        self.tmpdir.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def polytope(self, name, body):
        path = self.path(name)
        dump_polytope(body, path)
        return path

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            status = main(list(argv))
        self.stderr = err.getvalue()
        return status, (json.loads(out.getvalue()) if out.getvalue() else None)

    def test_mixed_volume(self):
        e1 = self.polytope("e1.json", segment((0, 0), (1, 0)))
        e2 = self.polytope("e2.json", segment((0, 0), (0, 1)))
        status, output = self.run_cli("compute", "mixed-volume", "--body", e1, "--body", e2, "--check-oracle")
        assert status == 0
        assert output == {"mixed_volume": "1/2", "dim": 2, "interpolation": "1/2", "agrees": True}

    def test_mixed_volume_multiplicity(self):
        cube = self.polytope("cube.json", unit_cube(3))
        status, output = self.run_cli("compute", "mixed-volume", "--body", f"{cube}:3")
        assert status == 0
        assert output["mixed_volume"] == "1"
        status, _ = self.run_cli("compute", "mixed-volume", "--body", f"{cube}:2")
        assert status == 2
        assert "error" in self.stderr

    def test_mixed_discriminant(self):
        a = self.path("a.json")
        b = self.path("b.json")
        dump_matrix(SymMatrix.diagonal([2, 3]), a)
        dump_matrix(SymMatrix.diagonal([5, 7]), b)
        status, output = self.run_cli("compute", "mixed-discriminant", "--matrix", a, "--matrix", b, "--check-oracle")
        assert status == 0
        assert output["mixed_discriminant"] == "29/2"
        assert output["agrees"]

    def test_inradius(self):
        outer = self.polytope("outer.json", box([0, 0], [2, 2]))
        inner = self.polytope("inner.json", standard_simplex(2))
        status, output = self.run_cli("inradius", "--outer", outer, "--inner", inner)
        assert status == 0
        assert output["inradius"] == "2"
        assert output["certified"]
        assert output["diskant_holds"]

    def test_verify(self):
        out = self.path("results.jsonl")
        argv = ("verify", "--inequality", "corollary", "--trials", "6", "--dim", "2,3", "--seed", "5", "--out", out)
        status, output = self.run_cli(*argv)
        assert status == 0
        assert output["violations"] == []
        assert output["dims"] == [2, 3]
        with open(out, "rb") as f:
            first = f.read()
        assert first.count(b"\n") == 6
        self.run_cli("--workers", "3", *argv)
        with open(out, "rb") as f:
            assert f.read() == first

    def test_survey(self):
        status, output = self.run_cli("survey", "--inequality", "corollary", "--trials", "4", "--dim", "2")
        assert status == 0
        assert output["min_ratio"] == "1"

    def test_bkk(self):
        system = self.path("system.txt")
        with open(system, "w") as f:
            f.write("x1*x2 + 2*x1 - x2 + 5\n3*x1 + x2 - 1\n")
        status, output = self.run_cli("bkk", "--system", system)
        assert status == 0
        assert output == {"bkk": 2, "classical": 2, "paper_bound": "4", "groups": [1, 1]}
        status, _ = self.run_cli("bkk", "--system", system, "--group", "2")
        assert status == 2

    def test_bad_input(self):
        system = self.path("bad.txt")
        with open(system, "w") as f:
            f.write("x1 + * x2\n")
        status, _ = self.run_cli("bkk", "--system", system)
        assert status == 2
        assert "column 6" in self.stderr
        status, _ = self.run_cli("inradius", "--outer", self.path("missing.json"), "--inner", system)
        assert status == 2
        with contextlib.redirect_stderr(io.StringIO()):
            with pytest.raises(SystemExit):
                main(["verify", "--inequality", "no-such-inequality"])
            with pytest.raises(SystemExit):
                main(["verify", "--inequality", "corollary", "--dim", "0"])
