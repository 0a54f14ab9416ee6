import pytest

from gkmchar.rootdata import EqualRankPair, root_system, weight
from gkmchar.verify import Report, denominator_suite, gkm_suite, kac_suite, small_weights, theta_suite


def test_report_verdicts():
    rep = Report("demo")
    assert rep.check(True, "first")
    assert not rep.check(False, "second", witness=3)
    rep.note("detail")
    assert not rep.ok
    assert rep.text().splitlines() == ["PASS first", "FAIL second (witness: 3)", "  detail", "demo: FAIL"]


def test_small_weights():
    ws = small_weights(2, 1)
    assert ws == sorted(weight(c) for c in [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)])
    assert len(small_weights(1, 3)) == 7


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_denominator_suite(name):
    assert denominator_suite(root_system(name)).ok


@pytest.mark.parametrize("name,sub", [("A1", []), ("A2", []), ("A2", [1]), ("B2", [2])])
def test_gkm_suite(name, sub):
    rep = gkm_suite(EqualRankPair.parabolic(root_system(name), sub), height=2, degrees=2)
    assert rep.ok, rep.text()
    assert "point-supported constant is rejected" in rep.text()


@pytest.mark.parametrize("name,level", [("A1", 1), ("A1", 2), ("A2", 1)])
def test_theta_suite(name, level):
    assert theta_suite(root_system(name), level, 6).ok


def test_kac_suite_a1():
    rep = kac_suite(root_system("A1"), 1, 8)
    assert rep.ok, rep.text()
    assert "affine wall" in rep.text()


def test_kac_suite_a2():
    assert kac_suite(root_system("A2"), 1, 3).ok
