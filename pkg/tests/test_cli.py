"""Command-line contract tests: exit codes, JSON payloads, CSV sampling."""

import json
from fractions import Fraction

from qcalc.cli import main
from qcalc.coeffs import CE_Q, CoefExpr
from qcalc.polys import MPoly
from qcalc.qcore import q_int
from qcalc.qwave import SYMBOLIC_SPEED, q_binomial_substitute
from qcalc.serialize import mpoly_from_json, wave_from_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_single_identity_verified(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--identity", "q-hermite-binomial", "--n-max", "4"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["id"] == "q-hermite-binomial"
        assert doc["status"] == "verified"

    def test_all_is_sorted_array(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--identity", "all", "--n-max", "3", "--order", "4"
        )
        assert code == 0
        docs = json.loads(out)
        ids = [d["id"] for d in docs]
        assert ids == sorted(ids)
        assert all(d["status"] == "verified" for d in docs)

    def test_unknown_identity_exits_two(self, capsys):
        code, _, err = run(capsys, "verify", "--identity", "bogus")
        assert code == 2

    def test_seeded_spot_checks(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "--identity", "exp-product", "--order", "6", "--seed", "5",
        )
        assert code == 0

    def test_violated_identity_exits_one(self, capsys, monkeypatch):
        from qcalc import cli
        from qcalc.identities import Verdict

        def broken(n_max):
            return Verdict("q-laplacian", f"n<={n_max}", status="failed",
                           detail="forced failure for exit-code contract")

        monkeypatch.setitem(cli.IDENTITY_CHECKS, "q-laplacian", (broken, "n_max"))
        code, out, _ = run(capsys, "verify", "--identity", "q-laplacian")
        assert code == 1
        assert json.loads(out)["status"] == "failed"


class TestSolve:
    def test_example_quadratic(self, capsys):
        code, out, _ = run(capsys, "solve", "--f", "0,0,1", "--g", "0", "--c", "1")
        assert code == 0
        wave = wave_from_json(json.loads(out))
        assert wave.body == MPoly(("x", "t"), {(2, 0): 1, (0, 2): CE_Q})

    def test_example_with_named_velocity(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--f", "0,0,1", "--g-named", "neg-2q-cx", "--c", "1"
        )
        assert code == 0
        wave = wave_from_json(json.loads(out))
        expected = q_binomial_substitute(
            MPoly(("x",), {(2,): 1}), "-", Fraction(1)
        )
        assert wave.body == expected

    def test_zero_speed_exits_two(self, capsys):
        code, _, err = run(capsys, "solve", "--f", "0,0,1", "--g", "0", "--c", "0")
        assert code == 2
        assert "error" in err

    def test_malformed_rational_exits_two(self, capsys):
        code, _, _ = run(capsys, "solve", "--f", "0,zz,1", "--g", "0", "--c", "1")
        assert code == 2

    def test_both_f_forms_rejected(self, capsys):
        code, _, _ = run(
            capsys,
            "solve", "--f", "1", "--f-named", "cos_q", "--g", "0", "--c", "1",
        )
        assert code == 2

    def test_series_solve_with_check(self, capsys):
        code, out, _ = run(
            capsys,
            "solve", "--f-named", "cos_q", "--g-named", "sin_q",
            "--c", "2", "--order", "8", "--check",
        )
        assert code == 0
        wave = wave_from_json(json.loads(out))
        assert wave.order == 8

    def test_roundtrip_equality(self, capsys):
        code, out, _ = run(capsys, "solve", "--f", "0,1,2", "--g", "3,1", "--c", "1/2")
        assert code == 0
        doc = json.loads(out)
        wave = wave_from_json(doc)
        again = json.loads(json.dumps(doc))
        assert wave_from_json(again).body == wave.body


class TestSample:
    def test_pipeline(self, capsys, tmp_path):
        path = tmp_path / "wave.json"
        code = main(
            ["solve", "--f", "0,0,1", "--g", "0", "--c", "1", "--output", str(path)]
        )
        capsys.readouterr()
        assert code == 0
        code, out, _ = run(
            capsys,
            "sample", "--in", str(path), "--q", "0.5", "--c", "1",
            "--x", "0:1:0.5", "--t", "0:1:1",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "x,t,u,valid"
        # x-major ordering, t = 0 rows reproduce f(x) = x^2
        assert lines[1].startswith("0,0,0,")
        row = lines[3].split(",")
        assert row[0] == "0.5" and row[1] == "0" and abs(float(row[2]) - 0.25) < 1e-12

    def test_nonpositive_q_exits_two(self, capsys, tmp_path):
        path = tmp_path / "wave.json"
        main(["solve", "--f", "1", "--g", "0", "--c", "1", "--output", str(path)])
        capsys.readouterr()
        code, _, _ = run(
            capsys, "sample", "--in", str(path), "--q", "-1", "--x", "0:1:1", "--t", "0:1:1"
        )
        assert code == 2

    def test_missing_file_exits_two(self, capsys):
        code, _, _ = run(
            capsys,
            "sample", "--in", "/nonexistent.json", "--q", "0.5",
            "--x", "0:1:1", "--t", "0:1:1",
        )
        assert code == 2

    def test_bad_grid_exits_two(self, capsys, tmp_path):
        path = tmp_path / "wave.json"
        main(["solve", "--f", "1", "--g", "0", "--c", "1", "--output", str(path)])
        capsys.readouterr()
        code, _, _ = run(
            capsys, "sample", "--in", str(path), "--q", "0.5", "--x", "0:1", "--t", "0:1:1"
        )
        assert code == 2


class TestHermiteAndExpand:
    def test_hermite_two(self, capsys):
        code, out, _ = run(capsys, "hermite", "--n", "2")
        assert code == 0
        poly = mpoly_from_json(json.loads(out))
        two = CoefExpr.of(q_int(2))
        assert poly.coefficient((2,)) == two * two
        assert poly.coefficient((0,)) == -two

    def test_hermite_kinds(self, capsys):
        code, out, _ = run(capsys, "hermite", "--n", "3", "--kind", "classical")
        assert code == 0
        poly = mpoly_from_json(json.loads(out))
        assert poly.coefficient((3,)) == CoefExpr.of(8)
        code, out, _ = run(capsys, "hermite", "--n", "1", "--kind", "inverse-q")
        assert code == 0
        poly = mpoly_from_json(json.loads(out))
        assert poly == MPoly(("w",), {(1,): q_int(2)})

    def test_hermite_negative_exits_two(self, capsys):
        code, _, _ = run(capsys, "hermite", "--n", "-2")
        assert code == 2

    def test_expand_traveling(self, capsys):
        code, out, _ = run(capsys, "expand", "--binomial", "x-ct", "--n", "2")
        assert code == 0
        poly = mpoly_from_json(json.loads(out))
        assert poly == q_binomial_substitute(
            MPoly(("x",), {(2,): 1}), "-", SYMBOLIC_SPEED
        )

    def test_expand_complex(self, capsys):
        code, out, _ = run(capsys, "expand", "--binomial", "z+iw", "--n", "1")
        assert code == 0
        poly = mpoly_from_json(json.loads(out))
        assert poly.coefficient((1, 0)) == CoefExpr.of(1)

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "h.json"
        code = main(["hermite", "--n", "2", "--output", str(path)])
        assert code == 0
        assert json.loads(path.read_text())["vars"] == ["x"]
