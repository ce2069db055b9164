import pytest

import coarse_ends


def test_integers_have_two_ends():
    report, code = coarse_ends.ends(group="Z", radii="1..10")
    assert code == 0
    assert report["verdict"]["classification"] == "Exactly(2)"
    assert report["verdict"]["count"] == 2


def test_inconclusive_exit_code():
    _report, code = coarse_ends.ends(group="Z", radii="1..3")
    assert code == 2


def test_classify_direct():
    v = coarse_ends.classify("Z^2", list(range(1, 9)), 3.0, 5)
    assert v["classification"] == "Exactly(1)"
    assert v["count"] == 1


def test_builtin_groups_listed():
    names = coarse_ends.builtin_groups()
    for n in ("Z", "Z^2", "F2", "D_inf", "Q-like"):
        assert n in names


def test_word_norm():
    assert coarse_ends.word_norm("Z^2", "[3,-4]") == 7
    assert coarse_ends.word_norm("Z", "[50]", 10) is None


def test_glacial_subset_and_coarse():
    report, code = coarse_ends.glacial(fixtures=["Z positives"])
    assert code == 0
    assert report["summary"]["fixtures"] == 1
    report, code = coarse_ends.coarse(space="segment:40", trials=20)
    assert code == 0
    assert report["ends"]["atom_count"] == 2


def test_errors_raise():
    with pytest.raises(coarse_ends.Error):
        coarse_ends.ends(group="no such group")
    with pytest.raises(coarse_ends.Error):
        coarse_ends.word_norm("Z", "not an element")
