"""Move rewrites: pinned examples, regime preconditions, site enumeration,
seeded walks, and the q-power transport laws."""

import random

import pytest
from conftest import random_code

from longzeta.diagram import Diagram, PassageToken, generate
from longzeta.invariant import zeta
from longzeta.moves import (
    KINDS,
    InapplicableMove,
    MoveSpec,
    apply,
    enumerate_sites,
    random_equivalent,
)
from longzeta.rings import RingT, equal_up_to_q_power

VK = generate("virtual_kink")  # O1+ V2+ U1+ V2-


def law_holds(move, before, z0, z1):
    """zeta transport predicted per move kind; exact unless a kink of the
    second type is created or removed."""
    if move.kind == "R1_insert" and move.params[2] == "UO":
        return z1 == z0.scaled(RingT.q_power(move.params[1]))
    if move.kind == "R1_delete" and before.tokens[move.params[0]].kind == "U":
        return z1 == z0.scaled(RingT.q_power(-before.tokens[move.params[0]].sign))
    return z1 == z0


# ---------------------------------------------------------------- MoveSpec


@pytest.mark.parametrize(
    "spec",
    [
        MoveSpec("R1_insert", (3, -1, "UO")),
        MoveSpec("R1_delete", (0,)),
        MoveSpec("V1_insert", (2, 1)),
        MoveSpec("V1_delete", (5,)),
        MoveSpec("R2_insert", (1, 4, -1, "antiparallel")),
        MoveSpec("R2_delete", (2, 7)),
        MoveSpec("V2_insert", (0, 0, 1, "parallel")),
        MoveSpec("V2_delete", (1, 6)),
        MoveSpec("Triangle_classical", (0, 2, 4)),
        MoveSpec("Triangle_virtual", (1, 3, 5)),
        MoveSpec("Triangle_semivirtual", (2, 4, 6)),
    ],
)
def test_render_parse_roundtrip(spec):
    assert MoveSpec.parse(spec.render()) == spec
    assert str(spec) == spec.render()


def test_render_formats_signs_and_words():
    assert MoveSpec("R1_insert", (3, -1, "UO")).render() == "R1_insert 3 - UO"
    assert (
        MoveSpec("R2_insert", (1, 4, 1, "parallel")).render()
        == "R2_insert 1 4 + parallel"
    )


@pytest.mark.parametrize(
    "line,msg",
    [
        ("", "empty move line"),
        ("Flype 1 2", "unknown move kind"),
        ("R1_delete 1 2", "takes 1 parameters, got 2"),
        ("R1_delete x", "bad position"),
        ("V1_insert 0 *", "bad sign"),
        ("R1_insert 0 + QO", "bad kink order"),
        ("R2_insert 0 1 + crossed", "bad variant"),
    ],
)
def test_parse_rejects(line, msg):
    with pytest.raises(ValueError, match=msg):
        MoveSpec.parse(line)


def test_spec_validates_parameters():
    with pytest.raises(ValueError, match="unknown move kind"):
        MoveSpec("Flype", (1,))
    with pytest.raises(ValueError, match="takes 3 parameters"):
        MoveSpec("R1_insert", (1, 1))
    # booleans are not positions even though they are ints
    with pytest.raises(ValueError, match="bad parameter"):
        MoveSpec("R1_delete", (True,))
    with pytest.raises(ValueError, match="bad parameter"):
        MoveSpec("V1_insert", (0, 2))


# ------------------------------------------------------- pinned rewrites


def test_kink_insert_first_type_is_exact():
    move = MoveSpec("R1_insert", (0, 1, "OU"))
    out = apply(VK, move)
    assert str(out) == "O3+ U3+ O1+ V2+ U1+ V2-"
    assert zeta(out) == zeta(VK)


def test_kink_insert_second_type_scales_by_q():
    out = apply(VK, MoveSpec("R1_insert", (0, 1, "UO")))
    assert str(out) == "U3+ O3+ O1+ V2+ U1+ V2-"
    assert zeta(out) == zeta(VK).scaled(RingT.q_power(1))
    out = apply(VK, MoveSpec("R1_insert", (0, -1, "UO")))
    assert zeta(out) == zeta(VK).scaled(RingT.q_power(-1))


def test_kink_delete_inverts_insert():
    for order in ("OU", "UO"):
        ins = MoveSpec("R1_insert", (2, -1, order))
        grown = apply(VK, ins)
        back = apply(grown, MoveSpec("R1_delete", (2,)))
        assert back == VK


def test_virtual_kink_insert_then_delete_roundtrip():
    for g in range(len(VK.tokens) + 1):
        grown = apply(VK, MoveSpec("V1_insert", (g, -1)))
        assert apply(grown, MoveSpec("V1_delete", (g,))) == VK
        assert zeta(grown) == zeta(VK)


def test_poke_inserts_place_both_pairs():
    out = apply(VK, MoveSpec("R2_insert", (0, 2, 1, "parallel")))
    assert str(out) == "O3+ O4- O1+ V2+ U3+ U4- U1+ V2-"
    out = apply(VK, MoveSpec("R2_insert", (0, 2, 1, "antiparallel")))
    assert str(out) == "O3+ O4- O1+ V2+ U4- U3+ U1+ V2-"
    # the one-gap form nests the underpasses inside the overpasses
    out = apply(VK, MoveSpec("R2_insert", (2, 2, -1, "antiparallel")))
    assert str(out) == "O1+ V2+ O3- O4+ U4+ U3- U1+ V2-"
    assert zeta(out) == zeta(VK)


def test_poke_delete_inverts_poke_insert():
    for variant in ("parallel", "antiparallel"):
        grown = apply(VK, MoveSpec("V2_insert", (1, 3, 1, variant)))
        assert zeta(grown) == zeta(VK)
        back = apply(grown, MoveSpec("V2_delete", (1, 5)))
        assert back == VK


def test_delete_requires_exact_pattern():
    with pytest.raises(InapplicableMove):
        apply(VK, MoveSpec("V1_delete", (1,)))  # V2+ U1+ is no kink
    with pytest.raises(InapplicableMove):
        apply(VK, MoveSpec("R1_delete", (0,)))
    with pytest.raises(InapplicableMove):
        apply(Diagram.parse("O1+ O2+ U1+ U2+"), MoveSpec("R2_delete", (0, 2)))


# --------------------------------------------------- regime preconditions


def test_classical_insert_needs_a_classical_anchor():
    bare = Diagram.parse("V1+ V1-")
    with pytest.raises(InapplicableMove, match="discontinuous at zero"):
        apply(bare, MoveSpec("R1_insert", (0, 1, "OU")))
    with pytest.raises(InapplicableMove, match="discontinuous at zero"):
        apply(bare, MoveSpec("R2_insert", (0, 1, 1, "parallel")))
    assert enumerate_sites(bare, "R1_insert") == []
    assert enumerate_sites(bare, "R2_insert") == []


def test_kink_delete_may_not_empty_the_code():
    lone = Diagram.parse("O1+ U1+")
    with pytest.raises(InapplicableMove, match="discontinuous at zero"):
        apply(lone, MoveSpec("R1_delete", (0,)))
    assert enumerate_sites(lone, "R1_delete") == []
    # with a second crossing present the same deletion goes through
    padded = Diagram.parse("O1+ U1+ O2+ V3+ U2+ V3-")
    assert str(apply(padded, MoveSpec("R1_delete", (0,)))) == "O2+ V3+ U2+ V3-"


def test_undercut_rejected_on_final_long_arc_at_nonzero_degree():
    src = Diagram.parse("V13- V17+ V13+ V16+ O2- U2- V16- O9- U9- V17-")
    with pytest.raises(InapplicableMove, match="final long arc"):
        apply(src, MoveSpec("R1_insert", (10, 1, "OU")))
    # the guard is there because the rewrite really does change zeta:
    # forcing the tokens in by hand kills the polynomial entirely
    toks = list(src.tokens)
    toks[10:10] = [PassageToken("O", 18, 1), PassageToken("U", 18, 1)]
    forced = Diagram(toks)
    assert zeta(src) != zeta(forced)
    assert equal_up_to_q_power(zeta(src), zeta(forced)) is None
    assert all(m.params[0] != 10 for m in enumerate_sites(src, "R1_insert"))


def test_poke_checks_the_undercut_gap_only():
    src = Diagram.parse("V13- V17+ V13+ V16+ O2- U2- V16- O9- U9- V17-")
    with pytest.raises(InapplicableMove, match="final long arc"):
        apply(src, MoveSpec("R2_insert", (0, 10, 1, "parallel")))
    # same overpass gap with a safe undercut gap is fine
    out = apply(src, MoveSpec("R2_insert", (0, 5, 1, "parallel")))
    assert zeta(out) == zeta(src)


# ---------------------------------------------------------- triangle slides


def test_classical_triangle_slides_exactly():
    d = Diagram.parse("O1+ O2+ U2+ U3+ U1+ O3+")
    out = apply(d, MoveSpec("Triangle_classical", (0, 2, 4)))
    assert str(out) == "O2+ O1+ U3+ U2+ O3+ U1+"
    assert zeta(out) == zeta(d)
    assert sorted(map(str, out.tokens)) == sorted(map(str, d.tokens))
    # sliding is an involution at the same site
    assert apply(out, MoveSpec("Triangle_classical", (0, 2, 4))) == d


def test_classical_triangle_requires_role_split():
    with pytest.raises(InapplicableMove, match="over-over"):
        apply(
            generate("classical_trefoil"),
            MoveSpec("Triangle_classical", (0, 2, 4)),
        )


def test_classical_triangle_requires_coherent_traversal():
    d = Diagram.parse("O1+ O2+ U2+ U3+ O3+ U1+")
    with pytest.raises(InapplicableMove, match="coherently"):
        apply(d, MoveSpec("Triangle_classical", (0, 2, 4)))


def test_classical_triangle_requires_matching_signs():
    d = Diagram.parse("O1+ O2- U2- U3+ U1+ O3+")
    with pytest.raises(InapplicableMove, match="share one sign"):
        apply(d, MoveSpec("Triangle_classical", (0, 2, 4)))


def test_virtual_triangle_slides_exactly():
    d = Diagram.parse("V1+ V2+ V2- V3+ V1- V3-")
    out = apply(d, MoveSpec("Triangle_virtual", (0, 2, 4)))
    assert str(out) == "V2+ V1+ V3+ V2- V3- V1-"
    assert zeta(out) == zeta(d)


def test_semivirtual_triangle_slides_exactly():
    d = Diagram.parse("V4+ V5+ V4- U1+ V5- O1+ O9+ U9+")
    out = apply(d, MoveSpec("Triangle_semivirtual", (0, 2, 4)))
    assert str(out) == "V5+ V4+ U1+ V4- O1+ V5- O9+ U9+"
    assert zeta(out) == zeta(d)
    assert out.n == d.n and out.k == d.k


def test_semivirtual_rejects_uncompensated_shift():
    # both side pairs lead with the virtual passage, so the underpass and
    # overpass degree shifts coincide instead of canceling
    d = Diagram.parse("V4+ V5+ V4- U1+ O1+ V5- O9+ U9+")
    with pytest.raises(InapplicableMove, match="must cancel"):
        apply(d, MoveSpec("Triangle_semivirtual", (0, 2, 4)))


def test_semivirtual_rejects_cut_on_final_long_arc():
    d = Diagram.parse("V4+ V5+ V4- U1+ V5- O1+")
    with pytest.raises(InapplicableMove, match="final long arc"):
        apply(d, MoveSpec("Triangle_semivirtual", (0, 2, 4)))


def test_triangle_sites_need_disjoint_adjacent_pairs():
    d = Diagram.parse("V1+ V2+ V2- V3+ V1- V3-")
    with pytest.raises(InapplicableMove, match="adjacent"):
        apply(d, MoveSpec("Triangle_virtual", (0, 1, 4)))
    with pytest.raises(InapplicableMove, match="strictly increasing"):
        apply(d, MoveSpec("Triangle_virtual", (0, 0, 4)))


# ----------------------------------------------------------- enumeration


def test_enumerate_pinned_examples():
    assert enumerate_sites(VK, "V1_delete") == []
    assert enumerate_sites(Diagram.parse("V1+ V1-"), "V1_delete") == [
        MoveSpec("V1_delete", (0,))
    ]
    assert enumerate_sites(generate("classical_trefoil"), "Triangle_classical") == []


def test_enumerate_rejects_unknown_kind():
    with pytest.raises(ValueError, match="unknown move kind"):
        enumerate_sites(VK, "R7_insert")


def test_enumerate_none_concatenates_all_kinds_in_order():
    sites = enumerate_sites(VK)
    kinds = [m.kind for m in sites]
    assert kinds == sorted(kinds, key=KINDS.index)
    assert set(kinds) >= {"R1_insert", "V1_insert", "R2_insert", "V2_insert"}


def test_insert_enumeration_is_capped():
    chain = generate("virtual_kink_chain", 30)  # 62 tokens, 63 gaps
    v1 = enumerate_sites(chain, "V1_insert")
    assert len(v1) <= 64  # 32 spread gaps x 2 senses
    gaps = sorted({m.params[0] for m in v1})
    assert gaps[0] == 0 and gaps[-1] == len(chain.tokens)
    r2 = enumerate_sites(chain, "R2_insert")
    assert 0 < len(r2) <= 12 * (11 * 4 + 2)


def test_every_enumerated_site_applies_and_obeys_the_law():
    rng = random.Random(20260819)
    checked = 0
    for _ in range(10):
        d = random_code(rng, rng.randint(1, 4), rng.randint(0, 3))
        z0 = zeta(d)
        for kind in KINDS:
            sites = enumerate_sites(d, kind)
            sample = sites if len(sites) <= 6 else rng.sample(sites, 6)
            for move in sample:
                out = apply(d, move)
                assert out.validate() == []
                assert law_holds(move, d, z0, zeta(out))
                checked += 1
    assert checked > 100


# ----------------------------------------------------------- random walks


def test_walk_is_deterministic_and_replayable():
    d0 = generate("virtual_kink")
    d1, log1 = random_equivalent(d0, 12, seed=5)
    d2, log2 = random_equivalent(d0, 12, seed=5)
    assert d1 == d2 and log1 == log2
    replay = d0
    for move in log1:
        replay = apply(replay, MoveSpec.parse(move.render()))
    assert replay == d1
    d3, log3 = random_equivalent(d0, 12, seed=6)
    assert (d3, log3) != (d1, log1)


def test_walk_zero_steps_is_identity():
    d, log = random_equivalent(VK, 0, seed=1)
    assert d == VK and log == []
    with pytest.raises(ValueError, match="steps"):
        random_equivalent(VK, -1, seed=1)


def test_walk_transports_zeta_by_a_q_power():
    rng = random.Random(7)
    for trial in range(6):
        d0 = random_code(rng, rng.randint(1, 3), rng.randint(0, 3))
        z0 = zeta(d0)
        d1, log = random_equivalent(d0, 10, seed=100 + trial)
        r = 0
        cur = d0
        for move in log:
            if move.kind == "R1_insert" and move.params[2] == "UO":
                r += move.params[1]
            if move.kind == "R1_delete" and cur.tokens[move.params[0]].kind == "U":
                r -= cur.tokens[move.params[0]].sign
            cur = apply(cur, move)
        assert zeta(d1) == z0.scaled(RingT.q_power(r))


def test_walk_honors_growth_caps():
    d0 = generate("virtual_kink")
    cur = d0
    d1, log = random_equivalent(d0, 25, seed=9, max_classical=3, max_virtual=4)
    for move in log:
        cur = apply(cur, move)
        assert cur.n <= 3 and cur.k <= 4
    assert cur == d1


def test_walk_keeps_a_classical_floor():
    d0 = Diagram.parse("O1+ U1+ O2+ V3+ U2+ V3-")
    _, log = random_equivalent(d0, 20, seed=3, min_classical=2, max_classical=2)
    assert all(not m.kind.startswith("R1") or m.kind == "R1_insert" for m in log)
    assert not any(m.kind in ("R1_delete", "R2_delete", "R1_insert") for m in log)


def test_walk_skips_kinds_without_sites():
    # nothing classical: only the virtual kinds can fire, and they do
    d1, log = random_equivalent(Diagram.parse("V1+ V1-"), 8, seed=2)
    assert log and all(m.kind.startswith(("V1", "V2", "Triangle_virtual")) for m in log)
    assert d1.n == 0


def test_apply_validates_handler_output(monkeypatch):
    import longzeta.moves as moves

    monkeypatch.setitem(
        moves._HANDLERS, "V1_insert", lambda toks, params, diagram: toks + [toks[0]]
    )
    with pytest.raises(RuntimeError, match="invalid code"):
        moves.apply(VK, MoveSpec("V1_insert", (0, 1)))
