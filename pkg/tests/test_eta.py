from fractions import Fraction
from math import gcd

import pytest

from lenswall.cyclotomic import root_of_unity
from lenswall.errors import ParameterError, ResourceBoundError
from lenswall.eta import (
    FlipSpun,
    LensSpace,
    component_classes,
    distinguish_metrics,
    eta_flipspun,
    eta_table,
    eta_variant,
    fourier_closed_form,
    fourier_coefficient,
    fourier_unit_ratio,
    rho_lens,
)
from oracles import eta_float, eta_half_roots_float, eta_odd_p_float, rho_float


def test_params_validation():
    assert LensSpace(6, 7).q == 1
    with pytest.raises(ParameterError):
        LensSpace(6, 2)
    with pytest.raises(ParameterError):
        FlipSpun(5, 4)  # even q
    with pytest.raises(ParameterError):
        FlipSpun(5, 5)  # shares a factor with 2p
    assert FlipSpun(5, 13).q == 3


def test_rho_zero_character():
    for n, q in [(2, 1), (6, 1), (10, 3), (9, 2)]:
        assert rho_lens(n, q, 0) == 0


def test_rho_frozen_values():
    # single-term evaluation at lam = -1: ((-2)(-1))/((-2)(-2)) / 2 = 1/4
    assert rho_lens(2, 1, 1) == Fraction(1, 4)


def test_rho_matches_float_oracle():
    for n, q in [(6, 1), (10, 3), (14, 5), (9, 4)]:
        for s in range(n):
            assert abs(rho_lens(n, q, s) - rho_float(n, q, s)) < 1e-9


def test_eta_frozen_values():
    assert eta_flipspun(3, 1, 1) == Fraction(-1, 4)
    assert eta_flipspun(3, 1, 0) == Fraction(-3, 4)
    assert eta_flipspun(3, 1, 2) == Fraction(1, 4)


def test_eta_antisymmetry():
    for p, q in [(3, 1), (5, 3), (7, 5), (6, 5)]:
        for s in range(2 * p):
            assert eta_flipspun(p, q, s) == -eta_flipspun(p, q, s + p)


def test_eta_variants_agree():
    for p, q in [(3, 1), (5, 3), (7, 3), (9, 7)]:
        for s in range(2 * p):
            pinc = eta_variant(p, q, s, "pinc-difference")
            assert eta_variant(p, q, s, "half-roots") == pinc
            assert eta_variant(p, q, s, "odd-p") == pinc


def test_eta_variants_match_float_oracles():
    for p, q, s in [(3, 1, 1), (5, 3, 2), (7, 3, 4), (9, 5, 7)]:
        assert abs(eta_flipspun(p, q, s) - eta_float(p, q, s)) < 1e-9
        assert abs(eta_variant(p, q, s, "half-roots") - eta_half_roots_float(p, q, s)) < 1e-9
        assert abs(eta_variant(p, q, s, "odd-p") - eta_odd_p_float(p, q, s)) < 1e-9


def test_eta_variant_rejects_even_p_odd_formula():
    with pytest.raises(ParameterError):
        eta_variant(4, 1, 1, "odd-p")
    # half-roots works for even p
    assert eta_variant(4, 1, 1, "half-roots") == eta_flipspun(4, 1, 1)
    with pytest.raises(ParameterError):
        eta_variant(3, 1, 1, "no-such-formula")


def test_fourier_frozen_values():
    # p=3, q=1, j=1: the transform collapses to omega/(omega+1)^2 = 1
    assert fourier_coefficient(3, 1, 1) == 1
    # p=5, q=3, j=2: all three expressions equal -zeta_5^2
    expected = -root_of_unity(5, 2)
    assert fourier_coefficient(5, 3, 2) == expected
    assert fourier_closed_form(5, 3, 2) == expected
    assert fourier_unit_ratio(5, 3, 2) == expected


def test_fourier_three_forms_agree():
    for p in (3, 5, 7, 9):
        for q in [x for x in range(1, 2 * p) if x % 2 and gcd(x, 2 * p) == 1]:
            for j in range(1, p):
                dft = fourier_coefficient(p, q, j)
                assert dft == fourier_closed_form(p, q, j)
                assert dft == fourier_unit_ratio(p, q, j)


def test_fourier_parameter_errors():
    with pytest.raises(ParameterError):
        fourier_coefficient(4, 1, 1)
    with pytest.raises(ParameterError):
        fourier_coefficient(5, 1, 0)
    with pytest.raises(ParameterError):
        fourier_coefficient(5, 1, 5)


def test_distinguish_examples():
    assert 1 in distinguish_metrics(5, 1, 1).matches
    r = distinguish_metrics(5, 1, 3)
    assert r.distinguishable and r.matches == ()
    r = distinguish_metrics(7, 3, 5)  # 3*5 = 15 = 1 mod 14
    assert not r.distinguishable
    assert 9 in r.matches  # a = -q' mod 14


def test_distinguish_iff_inverse_pair():
    for p in (3, 5, 7):
        n = 2 * p
        qs = [x for x in range(1, n) if x % 2 and gcd(x, n) == 1]
        for q in qs:
            for qp in qs:
                expected = qp == q or (q * qp) % n == 1 % n
                got = not distinguish_metrics(p, q, qp).distinguishable
                assert got == expected, (p, q, qp)


def test_distinguish_symmetry():
    for p in (3, 5, 7):
        n = 2 * p
        qs = [x for x in range(1, n) if x % 2 and gcd(x, n) == 1]
        for q in qs:
            for qp in qs:
                a = distinguish_metrics(p, q, qp).distinguishable
                b = distinguish_metrics(p, qp, q).distinguishable
                assert a == b


def test_distinguish_even_p():
    with pytest.raises(ParameterError):
        distinguish_metrics(4, 1, 3)
    r = distinguish_metrics(4, 1, 1, experimental_even_p=True)
    assert 1 in r.matches


def test_component_classes():
    assert component_classes(3) == [[1], [5]]
    classes = component_classes(11)
    assert classes == [[1], [3, 15], [5, 9], [7, 19], [13, 17], [21]]
    assert len(classes) == 6


def test_component_classes_equivalence_relation():
    for p in (5, 9):
        classes = component_classes(p)
        for cls in classes:
            for q in cls:
                for qp in cls:
                    assert not distinguish_metrics(p, q, qp).distinguishable
        flat = [q for cls in classes for q in cls]
        assert sorted(flat) == [x for x in range(1, 2 * p) if x % 2 and gcd(x, 2 * p) == 1]
        for i, cls in enumerate(classes):
            for other in classes[i + 1 :]:
                assert distinguish_metrics(p, cls[0], other[0]).distinguishable


def test_resource_bound():
    with pytest.raises(ResourceBoundError):
        eta_flipspun(51, 1, 0)
    with pytest.raises(ResourceBoundError):
        rho_lens(102, 1, 1)
    with pytest.raises(ResourceBoundError):
        component_classes(53)
    # explicit override unlocks larger sizes
    assert eta_flipspun(51, 1, 0, max_p=51) == -eta_flipspun(51, 1, 51, max_p=51)


def test_eta_table_consistency():
    table = eta_table(5, 3)
    assert len(table) == 10
    for s in range(10):
        assert table[s] == eta_flipspun(5, 3, s)
