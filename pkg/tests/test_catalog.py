import pytest

from rotnorm.catalog import (
    check_fixture,
    hopf_lattice,
    list_fixtures,
    load_fixture,
    s1_action_vector,
    vanishing_condition,
)
from rotnorm.errors import ValidationError
from rotnorm.lattice import normalize, quotient_info


class TestHopfLattice:
    def test_m1_is_all_of_z(self):
        A = hopf_lattice(1)
        assert A.hnf_basis == ((1,),)
        assert quotient_info(A).k == 1

    def test_m2_is_full_z2(self):
        A = hopf_lattice(2)
        assert A.rank == 2
        assert quotient_info(A).k == 1

    def test_m3_is_diagonal_line(self):
        A = hopf_lattice(3)
        assert A.rank == 1
        assert A.hnf_basis == ((1, 1, 1),)

    def test_bad_m(self):
        with pytest.raises(ValidationError):
            hopf_lattice(0)


class TestAssertions:
    def test_s1_action_membership(self):
        a = s1_action_vector([3, 3, 3])
        assert a.holds_in(hopf_lattice(3))
        assert not s1_action_vector([1, 2, 3]).holds_in(hopf_lattice(3))

    def test_divides_form(self):
        a = s1_action_vector([6])
        assert a.divides(3)
        assert not a.divides(4)
        with pytest.raises(ValidationError):
            s1_action_vector([1, 2]).divides(2)

    def test_vanishing(self):
        cond = vanishing_condition(center_trivial=True, pi1_injective=True)
        assert cond.check(normalize([], ambient_dim=2))
        assert not cond.check(normalize([(1, 0)]))
        weak = vanishing_condition(center_trivial=True, pi1_injective=False)
        assert weak.check(normalize([(1, 0)]))


class TestCatalog:
    def test_list_nonempty_sorted(self):
        names = list_fixtures()
        assert names == sorted(names)
        assert len(names) >= 8

    def test_unknown_fixture(self):
        with pytest.raises(ValidationError):
            load_fixture("no-such-fixture")

    @pytest.mark.parametrize("name", list_fixtures())
    def test_every_fixture_self_checks(self, name):
        report = check_fixture(name)
        failing = {k: v for k, v in report["checks"].items() if not v["ok"]}
        assert report["ok"], f"{name}: {failing}"

    def test_fixture_fields(self):
        for name in list_fixtures():
            fx = load_fixture(name)
            assert fx.name
            assert fx.source
            assert (fx.lattice is None) != (fx.rank_at_most is None)
            assert "verdict" in fx.expected
