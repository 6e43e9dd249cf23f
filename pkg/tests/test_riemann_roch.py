from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from omalous.errors import HypothesisError, OmalousError, VanishingAssumptionError
from omalous.riemann_roch import (
    BlowupSheafData,
    TwistSpec,
    euler_char,
    h1_under_vanishing,
    monad_dimensions,
    omalous_sheaf,
    todd_euler_char,
)


def structure_sheaf(n):
    return BlowupSheafData(1, 0, (0,) * n, 0)


def unit_twist(n, i):
    q = [0] * n
    q[i - 1] = 1
    return TwistSpec(-1, tuple(q))


def test_structure_sheaf():
    for n in range(7):
        assert euler_char(structure_sheaf(n), TwistSpec.zero(n)) == 1
        assert todd_euler_char(structure_sheaf(n), TwistSpec.zero(n)) == 1


def test_sections_of_pulled_back_line():
    # h^0(O(H)) = 3, higher cohomology vanishes
    assert euler_char(structure_sheaf(2), TwistSpec(1, (0, 0))) == 3
    assert todd_euler_char(structure_sheaf(2), TwistSpec(1, (0, 0))) == 3


@pytest.mark.parametrize("p", range(0, 6))
def test_twists_of_structure_sheaf_count_plane_curves(p):
    # chi(O(pH)) on Bl_n P^2 equals h^0(O_P2(p)) = C(p+2, 2)
    for n in range(4):
        assert euler_char(structure_sheaf(n), TwistSpec(p, (0,) * n)) == (p + 1) * (p + 2) // 2


def test_exceptional_curve_restriction():
    # chi(O(E1)) = chi(O) + chi(O_E1(E1)) = 1 + chi(O_P1(-1)) = 1
    assert euler_char(structure_sheaf(1), TwistSpec(0, (1,))) == 1
    # chi(O(-E1)) = chi(ideal of a point) = 0
    assert euler_char(structure_sheaf(1), TwistSpec(0, (-1,))) == 0


def test_omalous_data_example():
    n = 4
    chi = euler_char(omalous_sheaf(n, 6), TwistSpec(-1, (0,) * n))
    assert chi == -5 == -(2 * n - 3)


def test_h1_under_vanishing_examples():
    assert h1_under_vanishing(omalous_sheaf(3, 4), TwistSpec(-1, (0, 0, 0))) == 3
    assert h1_under_vanishing(omalous_sheaf(3, 4), unit_twist(3, 2)) == 2
    dual = BlowupSheafData(6, -3, (1,) * 5, 8)
    assert dual == omalous_sheaf(5, 6).dual()
    assert h1_under_vanishing(dual, TwistSpec(-1, (0,) * 5)) == 5


def test_h1_rejects_positive_chi():
    with pytest.raises(VanishingAssumptionError, match="vanishing assumption violated"):
        h1_under_vanishing(structure_sheaf(2), TwistSpec(1, (0, 0)))


def test_length_mismatch():
    with pytest.raises(OmalousError):
        euler_char(structure_sheaf(2), TwistSpec(0, (0,)))
    with pytest.raises(OmalousError):
        todd_euler_char(structure_sheaf(2), TwistSpec(0, (0, 0, 0)))


def test_monad_dimensions_examples():
    dims = monad_dimensions(3, 4)
    assert (dims.dim_k, dims.dim_l, dims.dim_w) == ((3, 3, 3, 3), (3, 2, 2, 2), 25)
    assert monad_dimensions(4, 5).dim_w == 4 * 4 * 3 - 3 + 5 == 50
    with pytest.raises(HypothesisError, match="r > 3"):
        monad_dimensions(3, 3)
    with pytest.raises(HypothesisError, match="n >= 3"):
        monad_dimensions(2, 5)


@pytest.mark.parametrize("n", range(3, 12))
def test_monad_rank_bookkeeping_closes(n):
    for r in range(4, 12):
        d = monad_dimensions(n, r)
        assert sum(d.dim_k) + sum(d.dim_l) + r == d.dim_w == 4 * n * (n - 1) - 3 + r


sheaf_and_twist = st.integers(0, 8).flatmap(
    lambda n: st.tuples(
        st.builds(
            BlowupSheafData,
            st.integers(1, 20),
            st.integers(-20, 20),
            st.lists(st.integers(-20, 20), min_size=n, max_size=n),
            st.integers(-20, 20),
        ),
        st.builds(TwistSpec, st.integers(-20, 20), st.lists(st.integers(-20, 20), min_size=n, max_size=n)),
    )
)


@settings(max_examples=60)
@given(sheaf_and_twist)
def test_closed_formula_matches_todd_integral(args):
    sheaf, twist = args
    assert Fraction(euler_char(sheaf, twist)) == todd_euler_char(sheaf, twist)


@settings(max_examples=30)
@given(sheaf_and_twist)
def test_euler_char_is_additive_in_rank_for_fixed_c1(args):
    # chi(E + O^s) = chi(E) + s chi(O(D))
    sheaf, twist = args
    bigger = BlowupSheafData(sheaf.r + 2, sheaf.a, sheaf.a_vec, sheaf.k)
    line = BlowupSheafData(1, 0, (0,) * sheaf.n, 0)
    assert euler_char(bigger, twist) == euler_char(sheaf, twist) + 2 * euler_char(line, twist)
