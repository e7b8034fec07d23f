import random

import pytest

from platypus.corpus import random_cnf
from platypus.formula import Var, variables
from platypus.nmatrix import entails, format_sequent
from platypus.sat import Cnf, DimacsError, format_dimacs, parse_dimacs, sat_oracle, sat_to_sequent

from oracles import PL, F, S, brute_entails


class TestDimacs:
    def test_basic(self):
        assert parse_dimacs("p cnf 2 1\n1 -2 2 0").clauses == ((1, -2, 2),)

    def test_padding(self):
        assert parse_dimacs("p cnf 1 1\n1 0").clauses == ((1, 1, 1),)
        assert parse_dimacs("p cnf 2 1\n1 -2 0").clauses == ((1, -2, -2),)

    def test_too_long(self):
        with pytest.raises(DimacsError, match="longer than 3"):
            parse_dimacs("p cnf 1 1\n1 1 1 1 0")

    def test_comments_and_multiline_clause(self):
        c = parse_dimacs("c hello\np cnf 3 2\n1 2\n3 0 -1 0\n")
        assert c.clauses == ((1, 2, 3), (-1, -1, -1))

    @pytest.mark.parametrize(
        "text",
        [
            "p cnf x 1\n1 0",
            "p dnf 1 1\n1 0",
            "1 0",
            "p cnf 1 1\n2 0",
            "p cnf 1 1\n1 a 0",
            "p cnf 1 1\n1",
            "p cnf 1 1\n0",
            "",
        ],
    )
    def test_errors(self, text):
        with pytest.raises(DimacsError):
            parse_dimacs(text)

    def test_round_trip(self):
        c = Cnf(3, ((1, -2, 3), (-3, -3, 2)))
        assert parse_dimacs(format_dimacs(c)) == c

    def test_cnf_validation(self):
        with pytest.raises(DimacsError):
            Cnf(2, ((1, 2),))
        with pytest.raises(DimacsError):
            Cnf(2, ((1, 2, 3),))
        with pytest.raises(DimacsError):
            Cnf(0)


class TestReduction:
    def test_single_clause(self):
        s = sat_to_sequent(Cnf(3, ((1, 2, 3),)))
        assert F("pl(q_p_1,pl(q_p_2,q_p_3))") in s.premises
        assert len(s.premises) == 4 and len(s.conclusions) == 3
        assert F("pl(q_p_2,q_np_2)") in s.premises
        assert F("pl(q_np_2,q_p_2)") in s.conclusions

    def test_text(self):
        s = sat_to_sequent(parse_dimacs("p cnf 1 1\n1 0"))
        assert format_sequent(s) == (
            "pl(q_p_1,q_np_1), pl(q_p_1,pl(q_p_1,q_p_1)) |- pl(q_np_1,q_p_1)"
        )

    def test_negative_literals(self):
        s = sat_to_sequent(Cnf(3, ((-1, 2, -3),)))
        assert F("pl(q_np_1,pl(q_p_2,q_np_3))") in s.premises

    def test_unused_variables_skipped(self):
        s = sat_to_sequent(Cnf(5, ((2, 2, 2),)))
        names = set().union(*(variables(f) for f in s.formulas()))
        assert names == {"q_p_2", "q_np_2"}

    def test_tautologies_dropped(self, bm_pl):
        c = Cnf(2, ((1, -2, 2), (-1, -1, -1)))
        assert sat_oracle(c)
        s = sat_to_sequent(c)
        assert s == sat_to_sequent(Cnf(2, ((-1, -1, -1),)))
        assert not entails(bm_pl, s)

    def test_tautology_kept_verbatim_breaks(self, bm_pl):
        # {(1,-2,2), (-1,-1,-1)} reduced clause by clause, tautology included;
        # its inner pl(q_np_2,q_p_2) is also a right-hand formula
        literal = S(
            "pl(q_p_1,pl(q_np_2,q_p_2)), pl(q_np_1,pl(q_np_1,q_np_1)),"
            " pl(q_p_1,q_np_1), pl(q_p_2,q_np_2)"
            " |- pl(q_np_1,q_p_1), pl(q_np_2,q_p_2)",
            PL,
        )
        assert entails(bm_pl, literal)

    def test_linear_size(self):
        c = random_cnf(random.Random(1), 6, 10)
        s = sat_to_sequent(c)
        assert len(s.premises) <= len(c.clauses) + c.num_vars
        assert len(s.conclusions) == len(c.variables)

    def test_unsat_valid(self, bm_pl):
        s = sat_to_sequent(Cnf(1, ((1, 1, 1), (-1, -1, -1))))
        assert entails(bm_pl, s)
        assert brute_entails(bm_pl, s)

    def test_sat_invalid(self, bm_pl):
        s = sat_to_sequent(Cnf(1, ((1, 1, 1),)))
        v = entails(bm_pl, s)
        assert not v and v.countervaluation[Var("q_p_1")] == "1"
        assert not brute_entails(bm_pl, s)

    def test_countervaluation_reads_off_assignment(self, bm_pl):
        c = Cnf(3, ((1, 2, 3), (-1, -2, -2), (-1, -3, -3), (-2, -3, -3)))
        v = entails(bm_pl, sat_to_sequent(c)).countervaluation
        assign = {i: v[Var(f"q_p_{i}")] == "1" for i in (1, 2, 3)}
        assert all(any(assign[abs(l)] == (l > 0) for l in cl) for cl in c.clauses)

    def test_random_agreement(self, bm_pl):
        rng = random.Random(3)
        for _ in range(60):
            c = random_cnf(rng, rng.randint(1, 4), rng.randint(1, 8))
            assert sat_oracle(c) == (not entails(bm_pl, sat_to_sequent(c))), c


class TestOracle:
    def test_examples(self):
        assert sat_oracle(Cnf(1, ((1, 1, 1),)))
        assert not sat_oracle(Cnf(1, ((1, 1, 1), (-1, -1, -1))))
        assert sat_oracle(Cnf(3))

    def test_pigeonhole(self):
        # 3 pigeons in 2 holes, encoded with clauses of at most 3 literals
        v = lambda i, h: 2 * i + h + 1  # noqa: E731
        clauses = [(v(i, 0), v(i, 1), v(i, 1)) for i in range(3)]
        for h in (0, 1):
            for i in range(3):
                for j in range(i + 1, 3):
                    clauses.append((-v(i, h), -v(j, h), -v(j, h)))
        assert not sat_oracle(Cnf(6, tuple(clauses)))

    def test_guard(self):
        with pytest.raises(DimacsError):
            sat_oracle(Cnf(25))
