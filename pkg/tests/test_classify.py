import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from qgalois.classify import (FAMILIES, GroupDescriptor, case_of, classify,
                              membership_residual)
from qgalois.errors import UnsupportedResonant
from qgalois.hyperseries import HGParams
from qgalois.specfun import QContext, mat2
from qgalois.spiral import ScalarGroup, Spiral

from conftest import params
from golden import SYMMETRY_ROWS, THEOREM_ROWS

ROWS = THEOREM_ROWS + SYMMETRY_ROWS


@pytest.mark.parametrize("row", ROWS, ids=[r[0] for r in ROWS])
def test_golden_rows(row):
    label, q, abc, name, family, scalar, sym = row
    ctx, p = params(q, *abc)
    tag, desc = classify(ctx, p)
    assert tag.name == name
    assert desc.family == family
    assert tag.symmetry_derived == sym
    if scalar is None:
        assert desc.scalar is None
    else:
        assert desc.scalar == ScalarGroup(*scalar)
    res = max(membership_residual(ctx, desc, g) for g in desc.generators_witness)
    assert res < 1e-8


@pytest.mark.parametrize("row", ROWS, ids=[r[0] for r in ROWS])
def test_numeric_inputs_dispatch_like_exact(row):
    label, q, abc, name, family, scalar, sym = row
    ctx = QContext(q)
    exact = HGParams.make(ctx, *abc)
    numeric = HGParams.make(ctx, *(s.value(ctx) for s in abc))
    t1, f1, s1 = case_of(ctx, exact)
    t2, f2, s2 = case_of(ctx, numeric)
    assert (t1, f1, s1) == (t2, f2, s2)


@pytest.mark.parametrize("row", ROWS, ids=[r[0] for r in ROWS])
def test_swap_symmetry(row):
    label, q, abc, *_ = row
    ctx, p = params(q, *abc)
    _, f1, s1 = case_of(ctx, p)
    _, f2, s2 = case_of(ctx, p.swapped())
    assert (f1, s1) == (f2, s2)


def test_unsupported_domain():
    ctx = QContext(0.3)
    with pytest.raises(UnsupportedResonant):
        classify(ctx, HGParams.make(ctx, Spiral(Fraction(3, 10)), Spiral(Fraction(7, 10)),
                                    Spiral(Fraction(2))))


def test_torus_conjugator_diagonalises():
    label, q, abc, *_ = THEOREM_ROWS[4]
    ctx, p = params(q, *abc)
    _, desc = classify(ctx, p)
    R = desc.conjugator
    for g in desc.connection_witness:
        h = np.linalg.inv(R) @ g @ R
        assert abs(h[0, 1]) + abs(h[1, 0]) < 1e-9 * np.max(np.abs(h))


@pytest.mark.parametrize("family,inside,outside", [
    ("SL2", mat2(2, 1, 1, 1), mat2(2, 0, 0, 1)),
    ("LowerTriangular_full", mat2(1, 0, 3, 2j), mat2(2, 0, 3, 2j)),
    ("UpperTriangular_full", mat2(1, 5, 0, -3), mat2(1, 0, 0.1, -3)),
    ("UpperTriangular_Cstar_one", mat2(4, 5, 0, 1), mat2(4, 5, 0, 2)),
    ("UnipotentUpper", mat2(1, 5, 0, 1), mat2(1, 5, 0, -1)),
])
def test_membership_residual_discriminates(family, inside, outside):
    ctx = QContext(0.3)
    desc = GroupDescriptor(family)
    assert membership_residual(ctx, desc, inside) < 1e-14
    assert membership_residual(ctx, desc, outside) > 1e-3


def test_scalar_families_respect_the_scalar_group():
    ctx = QContext(0.3)
    desc = GroupDescriptor("Diagonal_1_scalars", ScalarGroup("FiniteCyclic", 4))
    assert membership_residual(ctx, desc, mat2(1, 0, 0, 1j)) < 1e-14
    assert membership_residual(ctx, desc, mat2(1, 0, 0, cmath.exp(0.3j))) > 1e-2
    desc = GroupDescriptor("SL2_times_scalars", ScalarGroup("FiniteCyclic", 4))
    # determinants must be squares of 4th roots of unity
    assert membership_residual(ctx, desc, mat2(1, 0, 0, -1)) < 1e-14
    assert membership_residual(ctx, desc, mat2(1, 0, 0, 1j)) > 1e-2


def test_families_enumerated():
    for row in ROWS:
        assert row[4] in FAMILIES


# a coarse lattice makes resonances between a, b, c frequent
exponents = st.builds(lambda k, f: Fraction(k, 2) + f, st.integers(-4, 5),
                      st.sampled_from([Fraction(0), Fraction(3, 10)]))
turns = st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1, 4), Fraction(1, 3)])


@pytest.mark.parametrize("q", [0.3, 0.3 + 0.4j])
@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(oa=exponents, ob=exponents, oc=exponents, ta=turns, tb=turns, tc=turns)
def test_tags_partition_and_witnesses_lie_in_group(q, oa, ob, oc, ta, tb, tc):
    """Each supported triple gets one tag whose group contains every witness."""
    ctx = QContext(q)
    p = HGParams.make(ctx, Spiral(oa, ta), Spiral(ob, tb), Spiral(oc, tc))
    try:
        tag, desc = classify(ctx, p, n_conn=3)
    except UnsupportedResonant:
        return
    assert desc.family in FAMILIES
    res = max(membership_residual(ctx, desc, g) for g in desc.generators_witness)
    assert res < 1e-7, (str(tag), desc.family)
