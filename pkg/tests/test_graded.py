"""Graded subspaces, ideal components, kernels and Hilbert functions."""

from __future__ import annotations

import random

import pytest

from zonoforge.errors import NoStabilization
from zonoforge.graded import (
    GradedSubspace,
    IdealGens,
    add,
    component_dim,
    contains,
    direct_sum_certificate,
    equals,
    hilbert_quotient,
    ideal_component,
    ideal_contains,
    ideals_equal,
    intersect,
    kernel,
)
from zonoforge.poly import HPoly, monomials


def gens_of(nvars, exps):
    return IdealGens.make(nvars, [HPoly.monomial(nvars, e) for e in exps])


def test_component_dim():
    assert component_dim(3, 2) == 6
    assert component_dim(1, 5) == 1
    assert component_dim(2, 0) == 1


def test_from_spanning_is_canonical():
    t1 = HPoly.linear_form((1, 0))
    t2 = HPoly.linear_form((0, 1))
    a = GradedSubspace.from_spanning(2, [t1, t2])
    b = GradedSubspace.from_spanning(2, [t1 + t2, t1 - t2, t1])
    assert a == b and equals(a, b)
    assert a.hilbert() == (0, 2)
    assert a.dim() == 2


def test_ideal_component_dims_principal():
    g = gens_of(2, [(2, 0)])
    assert len(ideal_component(g, 1)) == 0
    assert len(ideal_component(g, 2)) == 1
    assert len(ideal_component(g, 3)) == 2
    assert len(ideal_component(g, 4)) == 3


def test_kernel_of_two_pure_powers():
    g = gens_of(2, [(2, 0), (0, 2)])
    k = kernel(g, 4)
    assert k.hilbert() == (1, 2, 1)
    assert hilbert_quotient(g) == (1, 2, 1)


def test_hilbert_quotient_never_stabilizes_without_gens():
    with pytest.raises(NoStabilization):
        hilbert_quotient(IdealGens.make(2, []), cap=5)


def test_kernel_ideal_duality_random():
    # dim kernel_d + dim ideal_d must always give the full component
    rng = random.Random(11)
    for _ in range(8):
        nvars = rng.randint(1, 3)
        exps = [rng.choice(monomials(nvars, rng.randint(1, 2))) for _ in range(2)]
        g = gens_of(nvars, exps)
        k = kernel(g, 4)
        for d in range(5):
            assert len(k.component(d)) + len(ideal_component(g, d)) == component_dim(
                nvars, d
            )


def random_space(rng, nvars, degree, count):
    polys = [
        HPoly(nvars, {m: rng.randint(-2, 2) for m in monomials(nvars, degree)})
        for _ in range(count)
    ]
    return GradedSubspace.from_spanning(nvars, polys)


def test_lattice_identities_random():
    rng = random.Random(5)
    for _ in range(10):
        nvars = rng.randint(2, 3)
        d = rng.randint(1, 2)
        a = random_space(rng, nvars, d, rng.randint(1, 3))
        b = random_space(rng, nvars, d, rng.randint(1, 3))
        s = add(a, b)
        m = intersect(a, b)
        assert contains(s, a) and contains(s, b)
        assert contains(a, m) and contains(b, m)
        assert intersect(a, s) == a
        assert a.dim() + b.dim() == s.dim() + m.dim()


def test_direct_sum_certificate_pass_and_fail():
    g = gens_of(2, [(2, 0), (0, 2)])
    cert = direct_sum_certificate(kernel(g, 2), g)
    assert cert["passed"]
    assert cert["dmax"] == 3
    assert all(line["passed"] for line in cert["degrees"])
    wrong = GradedSubspace.from_spanning(2, [HPoly.monomial(2, (2, 0))])
    assert not direct_sum_certificate(wrong, g)["passed"]


def test_ideal_equality_and_containment():
    a = gens_of(2, [(1, 0)])
    b = IdealGens.make(
        2, [HPoly.monomial(2, (1, 0)), HPoly.monomial(2, (2, 0))]
    )
    assert ideals_equal(a, b, 5)
    assert ideal_contains(a, gens_of(2, [(2, 0)]), 5)
    assert not ideal_contains(gens_of(2, [(2, 0)]), a, 5)
    assert not ideals_equal(a, gens_of(2, [(0, 1)]), 3)


def test_contains_is_degreewise():
    big = GradedSubspace.from_spanning(
        2, [HPoly.monomial(2, (1, 0)), HPoly.monomial(2, (0, 1))]
    )
    small = GradedSubspace.from_spanning(2, [HPoly.monomial(2, (2, 0))])
    # degree 2 of big is empty, so the degree-2 line cannot sit inside it
    assert not contains(big, small)
    assert contains(big, GradedSubspace.zero(2))
