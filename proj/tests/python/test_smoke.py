import pytest

import cshift


def test_points():
    p = cshift.Point.evp([1], [2, 3])
    assert str(p) == "[1|2,3]"
    assert p.at(4) == 2
    assert p.length is None
    assert cshift.Point.finite([1, 2]).at(3) is None
    assert cshift.Point.parse("[|3]") == cshift.Point.evp([], [3])
    assert p.shift(1) == cshift.Point.evp([], [2, 3])


def test_shift_queries():
    s = cshift.Shift("shift { alphabet = naturals; forbidden = [[1,1]] }")
    assert not s.in_language([1, 1])
    assert 1 not in s.follower([1])
    assert 2 in s.follower([1])
    assert s.classify()["is_sft"]
    assert cshift.Shift("gallery:i").follower([5]).elements() == [4]


def test_codes():
    d = cshift.Code("gallery:d")
    assert d(cshift.Point.parse("[|3]")) == cshift.Point.parse("[|2]")
    assert d.validate()["ok"]
    with pytest.raises(cshift.PreconditionError):
        cshift.Code("gallery:b")


def test_certificates():
    assert cshift.certify_t1(cshift.Code("gallery:d"))["kind"] == "certified_continuous"
    f = cshift.certify_t1(cshift.Code("gallery:f"))
    assert f["kind"] == "certified_discontinuous"
    assert f["witness"]["limit"] == cshift.Point()
    h = cshift.certify_t2(cshift.Code("gallery:h"), 3, 2)
    assert h["fm"] == {1: [1, 2], 2: [1, 2, 3]}
    with pytest.raises(cshift.HypothesisNotMet):
        cshift.certify_t1(cshift.Code("gallery:h"))


def test_higher_blocks():
    assert cshift.xi(2, cshift.Point.finite([1, 2, 3])) == "[[1,2],[2,3]]"
    assert cshift.xi_inverse(2, "[[1,2],[2,3]]") == cshift.Point.finite([1, 2, 3])
    with pytest.raises(cshift.DomainError):
        cshift.xi_inverse(2, "[[1,2],[3,1]]")


def test_text():
    doc = "p = [1|2,3]\nc = Z([1]; {5})\n"
    once = cshift.roundtrip(doc)
    assert cshift.roundtrip(once) == once
    with pytest.raises(cshift.ParseError):
        cshift.roundtrip("p = [1|")


def test_gallery_report():
    lines = cshift.gallery_report(samples=50)
    assert lines
    assert all(" | pass | " in line or " | unknown | " in line for line in lines)
