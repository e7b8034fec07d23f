import random
import subprocess
import sys

import pytest

from platypus.cli import main
from platypus.corpus import random_formula
from platypus.nmatrix import format_matrix, builtin

from oracles import PL


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestDecide:
    def test_valid(self, capsys):
        assert run(capsys, "decide", "--matrix", "BM_pl", "--sequent", "pl(p,q) |- p, q") == (0, "VALID\n", "")

    def test_invalid(self, capsys):
        code, out, _ = run(capsys, "decide", "--matrix", "BM_pl", "--sequent", "pl(p,q) |- pl(q,p)")
        assert code == 1
        assert out == "INVALID\n  p = 0\n  q = 1\n  pl(p,q) = 1\n  pl(q,p) = 0\n"

    def test_and(self, capsys):
        assert run(capsys, "decide", "--matrix", "BM_and", "--sequent", "and(p,q) |- p")[0] == 0

    def test_matrix_file(self, capsys, tmp_path):
        path = tmp_path / "w.nm"
        path.write_text(format_matrix(builtin("Wronski_C")))
        code, out, _ = run(capsys, "decide", "--matrix", str(path), "--sequent", "q |- dot(p,q)")
        assert (code, out) == (0, "VALID\n")

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "decide", "--matrix", "BM_pl", "--sequent", "pl(p |- q")
        assert code == 2 and err.startswith("error:")

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "decide", "--matrix", "nope.nm", "--sequent", "p |- p")
        assert code == 2 and "cannot read" in err

    def test_usage(self, capsys):
        assert run(capsys, "decide", "--matrix", "BM_pl")[0] == 2
        assert run(capsys)[0] == 2


class TestProve:
    def test_middle_tree(self, capsys):
        code, out, _ = run(capsys, "prove", "--rules", "R_pl", "--sequent", "pl(pl(p,p),p) |- p")
        assert code == 0
        assert out == (
            "premises: pl(pl(p,p),p)  [r_mc @ p:=pl(p,p), q:=p]\n"
            "  p\n"
            "  pl(p,p)  [r_mc @ p:=p, q:=p]\n"
            "    p\n"
        )

    def test_exhausted(self, capsys):
        assert run(capsys, "prove", "--rules", "R_pl", "--sequent", "pl(p,q) |- pl(q,p)") == (1, "EXHAUSTED\n", "")

    def test_right_tree(self, capsys):
        code, out, _ = run(
            capsys, "prove", "--rules", "R_and_pl", "--sequent", "pl(and(p,q),and(q,p)) |- and(p,q)"
        )
        assert code == 0 and out.splitlines()[-1] == "        and(p,q)"

    def test_decide_only(self, capsys):
        assert run(capsys, "prove", "--rules", "R_pl", "--sequent", "p, q |- pl(p,q)", "--decide-only") == (
            0,
            "DERIVABLE\n",
            "",
        )

    def test_rules_file_and_generators(self, capsys, tmp_path):
        path = tmp_path / "r.rules"
        path.write_text("rule a : p |- and(p,p)\nrule b : and(p,p) |- or(p,p)\n")
        base = ["prove", "--rules", str(path), "--sequent", "p |- or(p,p)"]
        assert run(capsys, *base)[0] == 1
        code, out, _ = run(capsys, *base, "--generators", "and(p,p)")
        assert code == 0 and "[b @ p:=p]" in out


class TestAxiomatize:
    def test_pl(self, capsys):
        code, out, _ = run(capsys, "axiomatize", "--matrix", "BM_pl")
        assert code == 0
        assert out == "rule pl_00 : pl(p1,p2) |- p1, p2\nrule pl_11 : p1, p2 |- pl(p1,p2)\n"

    def test_and(self, capsys):
        code, out, _ = run(capsys, "axiomatize", "--matrix", "BM_and")
        assert code == 0 and len(out.splitlines()) == 4

    def test_not_boolean(self, capsys):
        code, _, err = run(capsys, "axiomatize", "--matrix", "Wronski_C")
        assert code == 2 and "two-valued" in err


class TestProduct:
    def test_factorization(self, capsys):
        code, out, _ = run(capsys, "product", "BM_pl_in", "BM_pl_el", "--check-iso", "BM_pl")
        assert code == 0
        assert out.splitlines()[0] == "values: (0,0) (1,1)"
        assert out.splitlines()[-1] == "ISOMORPHIC (0,0)->0 (1,1)->1"

    def test_disjoint(self, capsys):
        code, out, _ = run(capsys, "product", "BM_and", "BM_or", "--rename", "(0,0)=0 (1,1)=1")
        assert code == 0
        assert out == format_matrix(builtin("BM_and_or"))

    def test_not_isomorphic(self, capsys):
        assert run(capsys, "product", "BM_and", "BM_or", "--check-iso", "BM_pl")[0] == 1

    def test_partial(self, capsys, tmp_path):
        m1 = tmp_path / "a.nm"
        m2 = tmp_path / "b.nm"
        m1.write_text("values: 0 1\ndesignated: 1\nop c 1\n0 : 0\n1 : 1\n")
        m2.write_text("values: 0 1\ndesignated: 1\nop c 1\n0 : 0\n1 : 0\n")
        code, out, _ = run(capsys, "product", str(m1), str(m2))
        assert code == 0
        assert "partial: true" in out and "(1,1) :\n" in out + "\n"

    def test_arity_conflict(self, capsys, tmp_path):
        m = tmp_path / "a.nm"
        m.write_text("values: 0 1\ndesignated: 1\nop pl 1\n0 : 0\n1 : 1\n")
        assert run(capsys, "product", "BM_pl", str(m))[0] == 2


class TestSat:
    def test_reduce(self, capsys, tmp_path):
        path = tmp_path / "one.cnf"
        path.write_text("p cnf 1 1\n1 0\n")
        code, out, _ = run(capsys, "sat", "reduce", str(path))
        assert code == 0
        assert out == "pl(q_p_1,q_np_1), pl(q_p_1,pl(q_p_1,q_p_1)) |- pl(q_np_1,q_p_1)\n"

    def test_check_sat(self, capsys, tmp_path):
        path = tmp_path / "sat.cnf"
        path.write_text("p cnf 2 2\n1 2 0\n-1 0\n")
        assert run(capsys, "sat", "check", str(path)) == (0, "AGREE (sat, entailment invalid)\n", "")

    def test_check_unsat(self, capsys, tmp_path):
        path = tmp_path / "unsat.cnf"
        path.write_text("p cnf 1 2\n1 0\n-1 0\n")
        assert run(capsys, "sat", "check", str(path)) == (0, "AGREE (unsat, entailment valid)\n", "")

    def test_malformed(self, capsys, tmp_path):
        path = tmp_path / "bad.cnf"
        path.write_text("p cnf 1 1\n1 1 1 1 0\n")
        assert run(capsys, "sat", "check", str(path))[0] == 2

    def test_guard(self, capsys, tmp_path):
        path = tmp_path / "big.cnf"
        path.write_text("p cnf 30 1\n30 0\n")
        assert run(capsys, "sat", "check", str(path))[0] == 2


class TestDecideSc:
    def test_examples(self, capsys):
        assert run(capsys, "decide-sc", "--gamma", "p", "--phi", "pl(pl(p,p),p)") == (0, "DERIVABLE\n", "")
        assert run(capsys, "decide-sc", "--gamma", "pl(pl(p,p),q)", "--phi", "pl(p,q)") == (
            1,
            "NOT-DERIVABLE\n",
            "",
        )
        assert run(capsys, "decide-sc", "--gamma", "p, q", "--phi", "pl(p,q)")[0] == 0

    def test_foreign(self, capsys):
        assert run(capsys, "decide-sc", "--gamma", "and(p,q)", "--phi", "p")[0] == 2

    def test_agrees_with_decide(self, capsys):
        rng = random.Random(17)
        for _ in range(150):
            gamma = [random_formula(rng, PL, "pq", 3) for _ in range(rng.randint(0, 3))]
            phi = random_formula(rng, PL, "pq", 3)
            g = ", ".join(map(str, gamma))
            sc = run(capsys, "decide-sc", "--gamma", g, "--phi", str(phi))[0]
            sem = run(capsys, "decide", "--matrix", "BM_pl", "--sequent", f"{g} |- {phi}")[0]
            assert sc == sem, (g, phi)


class TestSoundnessAndSeparation:
    def test_soundness(self, capsys):
        code, out, _ = run(capsys, "check-soundness", "--matrix", "Wronski_C", "--rules", "R_wronski6")
        assert code == 0 and out == "".join(f"SOUND w{i}\n" for i in range(1, 7))

    def test_unsound(self, capsys, tmp_path):
        path = tmp_path / "c.rules"
        path.write_text("rule comm : pl(p,q) |- pl(q,p)\n")
        code, out, _ = run(capsys, "check-soundness", "--matrix", "BM_pl", "--rules", str(path))
        assert code == 1 and out.startswith("UNSOUND comm\n  p = 0\n")

    def test_separate(self, capsys):
        assert run(capsys, "separate", "--matrix", "Wronski_C", "--formulas", "p, dot(p,p)") == (0, "SEPARATED\n", "")
        assert run(capsys, "separate", "--matrix", "Wronski_C", "--formulas", "p") == (1, "NOT-SEPARATED 0 1\n", "")

    def test_separate_foreign(self, capsys):
        assert run(capsys, "separate", "--matrix", "BM_pl", "--formulas", "pl(p,q)")[0] == 2


def test_stable_output(capsys):
    first = run(capsys, "prove", "--rules", "R_and_or_pl", "--sequent", "pl(or(p,q),and(q,p)) |- or(q,p), and(p,q)")
    second = run(capsys, "prove", "--rules", "R_and_or_pl", "--sequent", "pl(or(p,q),and(q,p)) |- or(q,p), and(p,q)")
    assert first == second


@pytest.mark.parametrize("argv", [["-m", "platypus"], ["-m", "platypus.cli"]])
def test_module_entry(argv):
    out = subprocess.run(
        [sys.executable, *argv, "decide", "--matrix", "BM_pl", "--sequent", "p |- pl(p,p)"],
        capture_output=True,
        text=True,
    )
    assert (out.returncode, out.stdout) == (0, "VALID\n")
