"""Parsing, validation, and the arc/long-arc/column decomposition."""

import random

import pytest
from conftest import random_code

from longzeta.diagram import (
    Arc,
    Diagram,
    InvalidDiagram,
    PassageToken,
    connect_sum,
    decompose,
    generate,
    read_gauss_file,
)


class TestParse:
    def test_pinned_roundtrip(self):
        text = "O1+ V2+ U1+ V2-"
        d = Diagram.parse(text)
        assert d.render() == text
        assert d.tokens[0] == PassageToken("O", 1, 1)
        assert d.tokens[3] == PassageToken("V", 2, -1)

    def test_comments_and_whitespace(self):
        d = Diagram.parse("# a kink\nO1+   V2+\t\nU1+ V2-  # tail\n\n")
        assert d.render() == "O1+ V2+ U1+ V2-"

    def test_empty_inputs(self):
        assert len(Diagram.parse("")) == 0
        assert len(Diagram.parse("  # only a comment\n")) == 0

    @pytest.mark.parametrize(
        "bad", ["O1", "X1+", "O0+", "O1++", "o1+", "O+1", "U01+"]
    )
    def test_bad_token(self, bad):
        with pytest.raises(InvalidDiagram, match="syntax error at token 1"):
            Diagram.parse(bad)

    def test_error_offset_is_one_based(self):
        with pytest.raises(InvalidDiagram, match=r"token 3: 'Q3-'"):
            Diagram.parse("O1+ U1+ Q3-")

    def test_random_roundtrip(self):
        rng = random.Random(7)
        for _ in range(200):
            d = random_code(rng, rng.randint(0, 5), rng.randint(0, 5))
            assert Diagram.parse(d.render()) == d

    def test_counts(self):
        assert (generate("classical_trefoil").n, generate("classical_trefoil").k) == (3, 0)
        assert (generate("classical_figure8").n, generate("classical_figure8").k) == (4, 0)
        assert (generate("virtual_kink").n, generate("virtual_kink").k) == (1, 1)
        ch = generate("virtual_kink_chain", 5)
        assert (ch.n, ch.k, len(ch)) == (1, 5, 12)


class TestValidate:
    def test_valid_families(self):
        for fam in ("classical_trefoil", "classical_figure8", "virtual_kink"):
            assert generate(fam).validate() == []
        assert generate("virtual_kink_chain", 4).validate() == []

    def test_sign_mismatch(self):
        out = Diagram.parse("O1+ U1-").validate()
        assert out == ["classical crossing 1 has mismatched signs"]

    def test_equal_virtual_senses(self):
        out = Diagram.parse("V2+ V2+").validate()
        assert out == ["virtual crossing 2 has equal senses on both passages"]

    def test_double_overpass(self):
        out = Diagram.parse("O1+ O1+").validate()
        assert len(out) == 1 and "one overpass and one underpass" in out[0]

    def test_wrong_count(self):
        assert Diagram.parse("O1+").validate() == ["crossing 1 has 1 passages, expected 2"]
        assert Diagram.parse("U3- O3- U3-").validate() == [
            "crossing 3 has 3 passages, expected 2"
        ]

    def test_mixed_kind(self):
        out = Diagram.parse("O1+ V1- U1+").validate()
        assert out == ["crossing 1 mixes virtual and classical passages"]

    def test_reports_everything_at_once(self):
        out = Diagram.parse("O1+ U1- V2+ V2+").validate()
        assert out == [
            "classical crossing 1 has mismatched signs",
            "virtual crossing 2 has equal senses on both passages",
        ]

    def test_check_raises_joined(self):
        with pytest.raises(InvalidDiagram, match="mismatched signs.*equal senses"):
            Diagram.parse("O1+ U1- V2+ V2+").check()
        d = generate("virtual_kink")
        assert d.check() is d


class TestDecomposition:
    def test_kink_arc_table(self):
        dec = decompose(generate("virtual_kink"))
        got = [(a.index, a.start, a.end, a.long_arc, a.degree) for a in dec.arcs]
        assert got == [
            (0, -1, 1, 0, 0),
            (1, 1, 2, 0, 1),
            (2, 2, 3, 1, 0),
            (3, 3, 4, 1, -1),
        ]
        la0, la1 = dec.long_arcs
        assert (la0.is_initial, la0.is_final, la0.increasing) == (True, False, 1)
        assert (la1.is_initial, la1.is_final, la1.increasing) == (False, True, 0)
        assert la1.origin == 1
        col, = dec.columns
        assert (col.crossing, col.long_arcs, col.threshold) == (1, (0, 1), 1)
        assert dec.early == {1: "O"}
        assert dec.sign == {1: 1}

    def test_early_under_kink(self):
        dec = decompose(Diagram.parse("U1+ V2+ O1+ V2-"))
        got = [(a.index, a.start, a.end, a.long_arc, a.degree) for a in dec.arcs]
        assert got == [
            (0, -1, 0, 0, 0),
            (1, 0, 1, 1, 0),
            (2, 1, 3, 1, 1),
            (3, 3, 4, 1, 0),
        ]
        assert dec.early == {1: "U"}

    def test_trefoil_columns(self):
        dec = decompose(generate("classical_trefoil"))
        assert [a.degree for a in dec.arcs] == [0, 0, 0, 0]
        assert len(dec.long_arcs) == 4
        # the crossing whose underpass cuts last owns the united column
        owners = {c.crossing: c.long_arcs for c in dec.columns}
        assert owners == {1: (2,), 2: (1,), 3: (0, 3)}
        assert all(c.threshold == 0 for c in dec.columns)

    def test_empty_code(self):
        dec = decompose(Diagram.parse(""))
        assert dec.arcs == (Arc(0, -1, 0, 0, 0),)
        la, = dec.long_arcs
        assert la.is_initial and la.is_final and la.origin is None
        assert dec.columns == ()

    def test_position_lookups(self):
        dec = decompose(generate("virtual_kink"))
        assert dec.arc_starting_at(2).index == 2
        assert dec.arc_ending_at(2).index == 1
        assert dec.arc_containing(0).index == 0  # overpass token sits inside arc 0
        assert dec.arc_starting_at(0) is None
        with pytest.raises(LookupError):
            dec.arc_containing(2)  # cut token, not arc interior

    def test_rejects_invalid(self):
        with pytest.raises(InvalidDiagram):
            decompose(Diagram.parse("O1+ U1-"))

    def test_random_structure(self):
        rng = random.Random(31)
        for _ in range(1000):
            n, kv = rng.randint(1, 6), rng.randint(0, 6)
            dec = decompose(random_code(rng, n, kv))
            assert len(dec.long_arcs) == n + 1
            assert sum(la.increasing for la in dec.long_arcs) == kv
            toks = dec.diagram.tokens
            for la in dec.long_arcs:
                # degrees restart at 0 and take a +-1 step per virtual cut
                assert dec.arcs[la.arcs[0]].degree == 0
                for a_idx, b_idx in zip(la.arcs, la.arcs[1:]):
                    a, b = dec.arcs[a_idx], dec.arcs[b_idx]
                    assert a.end == b.start and toks[a.end].kind == "V"
                    assert b.degree == a.degree + toks[a.end].sign
                # the ceiling of a long arc is hit at most once
                degs = [dec.arcs[i].degree for i in la.arcs]
                assert sum(1 for dg in degs if dg == la.increasing) <= 1
            for col in dec.columns:
                for la_idx in col.long_arcs:
                    la = dec.long_arcs[la_idx]
                    assert all(
                        dec.arcs[i].degree <= col.threshold for i in la.arcs
                    )


class TestConnectSum:
    def test_empty_identity(self):
        e = Diagram.parse("")
        d = generate("virtual_kink")
        assert connect_sum(e, d) == d
        assert connect_sum(d, e) == d

    def test_kink_then_trefoil(self):
        d = connect_sum(generate("virtual_kink"), generate("classical_trefoil"))
        assert d.render() == "O1+ V2+ U1+ V2- O3+ U4+ O5+ U3+ O4+ U5+"
        assert (d.n, d.k) == (4, 1)

    def test_associative(self):
        a = generate("virtual_kink")
        b = generate("classical_trefoil")
        c = generate("virtual_kink_chain", 2)
        assert connect_sum(connect_sum(a, b), c) == connect_sum(a, connect_sum(b, c))

    def test_validates_inputs(self):
        with pytest.raises(InvalidDiagram):
            connect_sum(Diagram.parse("O1+ U1-"), generate("virtual_kink"))


class TestGenerate:
    def test_chain_1_is_the_kink(self):
        assert generate("virtual_kink_chain", 1) == generate("virtual_kink")

    def test_chain_3_pinned(self):
        assert generate("virtual_kink_chain", 3).render() == (
            "O1+ V2+ V3+ V4+ U1+ V4- V3- V2-"
        )

    def test_chain_needs_length(self):
        with pytest.raises(ValueError):
            generate("virtual_kink_chain")
        with pytest.raises(ValueError):
            generate("virtual_kink_chain", 0)

    def test_unknown_family(self):
        with pytest.raises(ValueError, match="unknown family"):
            generate("granny_knot")


class TestGaussFile:
    def test_read(self, tmp_path):
        path = tmp_path / "kink.gauss"
        path.write_text("# one virtual kink\nO1+ V2+\nU1+ V2-\n")
        assert read_gauss_file(str(path)) == generate("virtual_kink")

    def test_read_validates(self, tmp_path):
        path = tmp_path / "bad.gauss"
        path.write_text("O1+ U1-\n")
        with pytest.raises(InvalidDiagram, match="mismatched signs"):
            read_gauss_file(str(path))
