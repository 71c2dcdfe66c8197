import json
import random
from fractions import Fraction

import pytest

from cftower import bounds as bd
from cftower.exact import ceil_ksqrt


def no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(no_floats(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return all(no_floats(v) for v in obj)
    return True


def test_weil_serre():
    assert bd.weil_serre_max(7, 2) == 18
    assert bd.weil_serre_max(5, 0) == 6
    assert bd.weil_serre_max(4, 1) == 9


def test_drinfeld_vladut():
    assert bd.drinfeld_vladut_upper(4).value == 1 and bd.drinfeld_vladut_upper(4).exact_equality
    assert bd.drinfeld_vladut_upper(9).value == 2
    lo, hi = bd.drinfeld_vladut_upper(7).interval
    assert Fraction(1645, 1000) < lo <= hi < Fraction(1646, 1000)
    assert lo * lo < 0 + (lo + 1) ** 2 <= 7 <= (hi + 1) ** 2
    assert bd.drinfeld_vladut_upper(2, 4).value == 3
    assert bd.ihara_square(16).value == 3 and bd.ihara_square(8) is None


def test_classic_catalog():
    assert bd.zink_bound(3).value == Fraction(16, 5)
    assert bd.nx_odd_bound(7, 1).value == Fraction(14, 9)
    assert bd.nx_even_bound(4, 1).value == Fraction(5, 9)
    names = [b.name for b in bd.classic_lower_bounds(3, 3)]
    assert "zink_cube" in names and "perret" in names


def test_perret_is_flagged_outside_its_range():
    rep = bd.perret_bound(7, 3)
    assert rep.violated and rep.interval[0] <= rep.value <= rep.interval[1]


def test_gennx_matches_classic():
    assert bd.gennx_bounds(7, 3, 8, 0).value == Fraction(14, 9)
    assert bd.gennx_bounds(7, 3, 1, 0).value == 0
    rep = bd.gennx_bounds(7, 3, 8, 0, b_r=112, h_ratio=1)
    assert not rep.violated and all(h.status == bd.VERIFIED for h in rep.hypotheses)
    assert bd.gennx_bounds(7, 3, 8, 0, h_ratio=2).violated
    with pytest.raises(ValueError):
        bd.gennx_bounds(7, 1, 8, 0)


def test_cubes():
    assert [(b.name, b.value) for b in bd.cube_bounds(7)] == [("cube_odd_coprime", Fraction(22, 13))]
    assert [b.value for b in bd.cube_bounds(4)] == [Fraction(7, 11)]
    assert bd.is_special(5) and bd.is_special(13) and bd.is_special(7) and not bd.is_special(11)
    assert "cube_nonspecial" not in [b.name for b in bd.cube_bounds(5)]
    assert "cube_nonspecial" in [b.name for b in bd.cube_bounds(11)]


def test_ray_class_tower_values():
    assert bd.thm_qodd_value(8, 0, 3, 1) == Fraction(32, 21)
    assert bd.thm_anyp_value(2, 2, 0) == Fraction(1, 3)
    assert bd.thm_anyp_value(3, 4, 1) == Fraction(3, 10)


def test_rational_specialisation_flagged():
    rep = bd.cor_qoddcor(7, 5)
    assert rep.value == Fraction(8, 3)
    parent = bd.thm_qodd_value(8, 0, 5, 1)
    assert rep.value > parent and rep.violated


def test_anyp_at_two_matches_even_display():
    rng = random.Random(20)
    for _ in range(20):
        N, g = rng.randint(1, 10**4), rng.randint(0, 500)
        assert bd.thm_anyp_value(2, N, g) == bd.thm_qeven_value(N, g)
        assert bd.thm_qeven_value(N, g) == Fraction(N, g + 2 + ceil_ksqrt(2, 2 * N))


def test_dl_tower_values():
    assert bd.thm_qevenagain(8, 5).value == Fraction(5, 3)
    assert bd.thm_qevenagain(8, 7).value == Fraction(5, 3)
    r3 = bd.thm_qevenagain(8, 3)
    assert r3.value == Fraction(17, 16) and r3.name == "dl_tower_r3"


def test_char357():
    assert bd.thm_357(27, 3).value == Fraction(123, 50)


def test_compositum_reports():
    reps = {r.name: r for r in bd.kem_bounds(5, 7, Fraction(2, 5))}
    assert reps["compositum_odd"].value == Fraction(7, 10)
    cons = reps["compositum_odd_construction"]
    assert cons.value == Fraction(21, 5) and not cons.violated
    assert any("counted: 148" in h.text for h in cons.hypotheses)
    value, a, M = bd.kem_display(3, 9, Fraction(9, 20))
    assert (value, a, M) == (Fraction(45, 64), 6, 5)
    with pytest.raises(ValueError):
        bd.kem_bounds(5, 7, Fraction(1, 2))


def test_certificate_bounds():
    assert bd.certificate_bound(7).value == Fraction(9, 10)
    assert bd.certificate_bound(19) is None
    assert {b.value for b in bd.literature_bounds(3)} == {Fraction(62, 163), Fraction(8, 17)}


def test_best_table_examples():
    table = bd.best_table(8, 3)
    assert bd.best_lower(table).value == Fraction(17, 16)
    table = bd.best_table(4, 2)
    dv = next(r for r in table if r.name == "drinfeld_vladut_upper")
    assert dv.value == 3 and dv.exact_equality
    assert bd.best_lower(table).value == 3


def test_best_lower_skips_violated():
    good = bd.BoundReport("a", bd.LOWER, 7, 1, Fraction(1), "x", ())
    bad = bd.BoundReport("b", bd.LOWER, 7, 1, Fraction(5), "x", (bd.Hypothesis("h", bd.VIOLATED),))
    assert bd.best_lower([good, bad]) is good
    assert bd.best_lower([bad]) is None


@pytest.mark.parametrize("q,r", [(7, 1), (8, 3), (3, 5), (9, 2), (5, 7)])
def test_report_json_roundtrip(q, r):
    for rep in bd.best_table(q, r, theta=Fraction(2, 5) if r % 2 else None):
        data = rep.to_json()
        assert no_floats(data)
        text = json.dumps(data)
        back = bd.BoundReport.from_json(json.loads(text))
        assert back.to_json() == data


def test_sanity_wall_raises_on_bad_bound(monkeypatch):
    bogus = bd.BoundReport("bogus", bd.LOWER, 7, 1, Fraction(100), "test", ())
    real = bd._at

    def patched(q, e, theta, budget):
        return real(q, e, theta, budget) + [bogus]

    monkeypatch.setattr(bd, "_at", patched)
    with pytest.raises(bd.SanityWallError):
        bd.best_table(7, 1)
