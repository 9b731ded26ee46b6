import pytest

from arlab.complexity import (
    NEG_INF,
    bracket_bispecial,
    inrc_formula,
    nrc_details,
    nrc_formula,
    s_last_occurrence,
)
from arlab.complexity.verify import tie_lengths
from arlab.errors import DomainError, InvalidDirective
from arlab.words import DirectiveSequence


def ds(text, d=None):
    return DirectiveSequence.parse(text, d)


class TestLastOccurrence:
    def test_values(self):
        assert s_last_occurrence(ds(":012"), 4, 0) == 3
        assert s_last_occurrence(ds(":012"), 1, 2) is NEG_INF
        assert s_last_occurrence(ds("1:0"), 3, 1) == 0

    def test_sentinel_order(self):
        assert NEG_INF < -(10**9) and NEG_INF < 0
        assert NEG_INF == NEG_INF and not NEG_INF < NEG_INF
        assert min([3, NEG_INF, 0]) is NEG_INF

    def test_bad_letter(self):
        with pytest.raises(DomainError):
            s_last_occurrence(ds(":012"), 2, 3)


class TestBracket:
    @pytest.mark.parametrize("text,n,k", [(":012", 3, 2), (":01", 1, 1), (":01", 7, 4)])
    def test_values(self, text, n, k):
        assert bracket_bispecial(ds(text), n) == k

    def test_zero(self):
        with pytest.raises(DomainError):
            bracket_bispecial(ds(":01"), 0)


class TestNrcFormula:
    def test_fibonacci(self):
        assert nrc_formula(ds(":01"), 9) == 10

    def test_tribonacci(self):
        det = nrc_details(ds(":012"), 3)
        assert (det.k, det.letter, det.pair_length, det.value) == (2, 0, 7, 6)
        det = nrc_details(ds(":012"), 1)
        assert (det.k, det.letter, det.pair_length, det.value) == (1, 2, 4, 3)

    def test_diagnostics_bispecial_case(self):
        det = nrc_details(ds(":012"), 7)
        # n = |B(3)| = 7: the value is the longest admissible return-word pair minus one
        assert det.bispecial_length == 7 and det.value == det.at_bispecial == det.pair_length - 1
        assert sorted(det.return_lengths) == [4, 6, 7]

    def test_invalid(self):
        with pytest.raises(InvalidDirective):
            nrc_formula(ds(":0", 2), 3)

    def test_piecewise_linear(self):
        d = ds("1:02213")
        by_k = {}
        for n in range(1, 300):
            by_k.setdefault(bracket_bispecial(d, n), set()).add(nrc_formula(d, n) - n)
        assert all(len(v) == 1 for v in by_k.values())


class TestInrcFormula:
    def test_values(self):
        assert inrc_formula(ds(":012"), 2) == 4
        assert inrc_formula(ds(":01"), 2) == 3

    def test_sturmian_n_plus_one(self):
        # after a bispecial B(k) with i_k != i_{k+1}, inrC(|B(k)| + 1) = |B(k)| + 2
        from arlab.complexity.formulas import lengths_for

        for text in (":01", "0:0111", ":00101"):
            d = ds(text)
            lengths = lengths_for(d)
            hits = 0
            for k in range(1, 25):
                if d.letter(k) != d.letter(k + 1):
                    n = lengths.bispecial_length(k) + 1
                    assert inrc_formula(d, n) == n + 1
                    hits += 1
            assert hits >= 5

    def test_constant_on_bracket(self):
        d = ds("2:3012")
        by_k = {}
        for n in range(1, 300):
            by_k.setdefault(bracket_bispecial(d, n), set()).add(inrc_formula(d, n))
        assert all(len(v) == 1 for v in by_k.values())


@pytest.mark.parametrize("text,k", [("00:012", 2), ("000:0123", 3), ("11:0123", 2), ("1:3012", 1)])
def test_tie_lengths_equal(text, k):
    ties = tie_lengths(ds(text), k)
    assert len(ties) >= 2
    assert len(set(ties.values())) == 1
