import pytest

import pedcomb


def twin_pedigree():
    return {
        "vertices": [0, 1, 10, 11],
        "arcs": [[0, 10], [0, 11], [1, 10], [1, 11]],
        "extant": {"x1": 0, "x2": 1},
    }


def test_validate_accepts_twins():
    assert pedcomb.validate(twin_pedigree())


def test_validate_rejects_bad_degree():
    bad = {"vertices": [0, 1], "arcs": [[0, 1]], "extant": {"x1": 0}}
    with pytest.raises(Exception, match="BadOutDegree"):
        pedcomb.validate(bad)


def test_counterexample_pair_is_hypomorphic_not_isomorphic():
    t, u = pedcomb.build_counterexample(4)
    assert len(t["vertices"]) == 19
    assert len(u["vertices"]) == 20
    assert pedcomb.find_isomorphism(t, u) is None
    assert pedcomb.are_r_hypomorphic(t, u, 3)
    assert not pedcomb.are_r_hypomorphic(t, u, 4)


def test_canonical_code_ignores_ids():
    p = twin_pedigree()
    q = {
        "vertices": [5, 7, 20, 30],
        "arcs": [[5, 20], [5, 30], [7, 20], [7, 30]],
        "extant": {"x1": 5, "x2": 7},
    }
    assert pedcomb.canonical_code(p) == pedcomb.canonical_code(q)


def test_sub_pedigree_and_deck():
    t, _ = pedcomb.build_counterexample(3)
    sub = pedcomb.sub_pedigree(t, ["x1", "x2"])
    assert set(sub["extant"]) == {"x1", "x2"}
    d = pedcomb.deck(t, 2)
    assert d["format"] == "pedcomb-deck-v1"
    assert len(d["entries"]) == 3


def test_reconstruct_round_trip():
    p = {
        "vertices": [0, 1, 2, 3, 10, 11, 12, 13],
        "arcs": [
            [0, 10], [0, 11],
            [1, 10], [1, 11],
            [2, 11], [2, 12],
            [3, 12], [3, 13],
        ],
        "extant": {"x1": 0, "x2": 1, "x3": 2, "x4": 3},
    }
    cards = pedcomb.full_deck(p)
    out = pedcomb.reconstruct(cards)
    assert out["status"] == "Reconstructed"
    assert pedcomb.canonical_code(out["pedigree"]) == pedcomb.canonical_code(p)


def test_probe_finds_the_base_counterpart():
    t, u = pedcomb.build_counterexample(3)
    res = pedcomb.probe(t, 2, 7)
    assert not res["reconstructible"]
    assert pedcomb.canonical_code(res["counterpart"]) == pedcomb.canonical_code(u)


def test_genderize_admits_labelling():
    t, _ = pedcomb.build_counterexample(3)
    g = pedcomb.genderize(t)
    assert len(g["vertices"]) == 2 * len(t["vertices"]) + 3


def test_bounds_and_census():
    b = pedcomb.bounds("discrete", 3, 1)
    assert b["lower"] == "3"
    assert b["upper"] == "27"
    assert pedcomb.census(2, 1) == "1"
    assert pedcomb.stirling2(5, 3) == "25"


def test_to_dot_mentions_labels():
    dot = pedcomb.to_dot(twin_pedigree())
    assert "x1" in dot and "digraph" in dot
