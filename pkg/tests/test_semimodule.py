"""Semimodules: presentation of partials, sums, tensors, preorder, flatness."""

from fractions import Fraction

import pytest

from sheafflow.errors import MixedGround, NoFlatCertificate
from sheafflow.semimodule import (FLAT, NOT_FLAT, UNKNOWN, DefinedSet,
                                  FreeSemimodule, Hom, IntAsNatSemimodule,
                                  PartialSemimodule, PresentedSemimodule,
                                  as_partial, check_complement_ideal,
                                  check_flat_certificate, coequalizer,
                                  direct_sum, down_set, equalizer,
                                  extend_scalars, join_semilattice_from_leq,
                                  natural_preorder_leq, present, tensor)
from sheafflow.semiring import BOOL, INT, NAT, QPOS


def nat_free(*gens):
    return FreeSemimodule(NAT(), gens)


# -- present ----------------------------------------------------------------

def test_present_total_is_identity():
    m = nat_free("a", "b")
    target, incl = present(as_partial(m))
    assert target is m
    assert incl.apply((3, 4)) == (3, 4)


def test_present_truncated_naturals():
    # {0..5} with sums defined when <= 5: generators 1..5, relations like
    # e1+e1 = e2; the inclusion is injective on the defined elements
    nat = nat_free("x")
    els = frozenset((k,) for k in range(6))
    p = PartialSemimodule(nat, DefinedSet(DefinedSet.FINITE, members=els))
    assert check_complement_ideal(p)
    target, incl = present(p)
    imgs = [incl.apply((k,)) for k in range(6)]
    assert len({tuple(i) for i in imgs}) == 6
    # 1+1 = 2 must hold in the presentation
    two = target.add(imgs[1], imgs[1])
    assert target.eq(two, imgs[2])
    # 3+4 escapes the defined set: its class is a fresh formal sum, distinct
    # from every embedded element
    formal = target.add(imgs[3], imgs[4])
    assert not any(target.eq(formal, im) for im in imgs)


def test_present_zero():
    nat = nat_free("x")
    p = PartialSemimodule(nat, DefinedSet(DefinedSet.FINITE,
                                          members=frozenset({(0,)})))
    target, incl = present(p)
    assert incl.apply((0,)) == target.zero()


# -- equalizer / coequalizer --------------------------------------------------

def test_equalizer_nat_projections():
    m2 = nat_free("a", "b")
    m1 = nat_free("c")
    f = Hom(m2, m1, gen_images=[(1,), (0,)])
    g = Hom(m2, m1, gen_images=[(0,), (1,)])
    res = equalizer(f, g)
    assert res.generators == [(1, 1)]
    assert res.module.contains((3, 3))
    assert not res.module.contains((2, 1))


def test_equalizer_identity_case():
    m = nat_free("a", "b")
    f = Hom.identity(m)
    res = equalizer(f, f)
    assert sorted(res.generators) == [(0, 1), (1, 0)]


def test_equalizer_int_kernel():
    m2 = FreeSemimodule(INT(), ("a", "b"))
    m1 = FreeSemimodule(INT(), ("c",))
    f = Hom(m2, m1, gen_images=[(1,), (1,)])
    g = Hom.zero_map(m2, m1)
    res = equalizer(f, g)
    assert len(res.generators) == 1
    a, b = res.generators[0]
    assert a + b == 0 and (a, b) != (0, 0)


def test_coequalizer_identifies_generators():
    m1 = nat_free("x")
    m2 = nat_free("a", "b")
    f = Hom(m1, m2, gen_images=[(1, 0)])
    g = Hom(m1, m2, gen_images=[(0, 1)])
    res = coequalizer(f, g)
    assert res.complete
    assert res.module.eq((2, 1), (0, 3))
    assert not res.module.eq((1, 0), (1, 1))


def test_coequalizer_trivial():
    m = nat_free("a")
    f = Hom.identity(m)
    res = coequalizer(f, f)
    assert res.module.eq((1,), (1,)) and not res.module.eq((1,), (2,))


def test_coequalizer_int_torsion():
    m = FreeSemimodule(INT(), ("a",))
    f = Hom(m, m, gen_images=[(2,)])
    g = Hom.zero_map(m, m)
    res = coequalizer(f, g)
    # Z / 2Z
    assert res.module.z_invariants() == (0, [2])
    assert res.module.eq((0,), (2,))
    assert not res.module.eq((0,), (1,))


def test_coequalizer_finite():
    lat = join_semilattice_from_leq("c3", ("0", "m", "1"),
                                    [("0", "m"), ("m", "1")], "0")
    f = Hom(lat, lat, elem_map={"0": "0", "m": "m", "1": "1"})
    g = Hom(lat, lat, elem_map={"0": "0", "m": "1", "1": "1"})
    res = coequalizer(f, g)
    # m ~ 1 collapses the top two
    assert res.class_of("m") == res.class_of("1")
    assert res.class_of("0") != res.class_of("1")


# -- direct sums ---------------------------------------------------------------

def test_direct_sum_free():
    s, embs, projs = direct_sum([as_partial(nat_free("a")),
                                 as_partial(nat_free("b", "c"))])
    x = embs[0].apply((2,))
    y = embs[1].apply((1, 1))
    assert s.ambient.add(x, y) == (2, 1, 1)
    assert projs[1].apply((2, 1, 1)) == (1, 1)


def test_direct_sum_mixed_ground_rejected():
    with pytest.raises(MixedGround):
        direct_sum([as_partial(nat_free("a")),
                    as_partial(FreeSemimodule(INT(), ("b",)))])


def test_direct_sum_partial_coordinatewise():
    # {0..3} in N and all of N: (2,5)+(2,0) leaves the defined set
    nat = nat_free("x")
    box = down_set(nat, (3,))
    s, embs, _ = direct_sum([box, as_partial(nat_free("y"))])
    a = s.ambient.add(embs[0].apply((2,)), embs[1].apply((5,)))
    b = embs[0].apply((2,))
    assert s.contains(a)
    total = s.ambient.add(a, b)
    assert not s.contains(total)


def test_direct_sum_empty_is_zero():
    s, _, _ = direct_sum([])
    assert s.ambient.zero() == ()


# -- tensor ---------------------------------------------------------------------

def test_tensor_unit():
    b = as_partial(nat_free("u"))
    assert tensor(FreeSemimodule(NAT(), ("s",)), b) is b


def test_tensor_free_is_direct_sum():
    lat = join_semilattice_from_leq("c2", ("0", "1"), [("0", "1")], "0")
    t = tensor(FreeSemimodule(BOOL(), ("x", "y")), as_partial(lat))
    els = t.elements()
    assert len(els) == 4  # Lambda + Lambda


def test_tensor_presented_with_int_scalars():
    # N^4 / (g0+g3 = g1+g2) tensored with Z has rank 3
    pres = PresentedSemimodule(NAT(), ("g0", "g1", "g2", "g3"),
                               [((1, 0, 0, 1), (0, 1, 1, 0))])
    z = extend_scalars(pres, INT())
    assert z.z_invariants() == (3, [])


def test_tensor_distributes_over_sum_finite():
    lat = join_semilattice_from_leq("c2", ("0", "1"), [("0", "1")], "0")
    a = FreeSemimodule(BOOL(), ("x",))
    s, _, _ = direct_sum([as_partial(lat), as_partial(lat)])
    lhs = tensor(a, s)
    assert len(lhs.elements()) == len(s.elements())


# -- natural preorder and down sets ----------------------------------------------

def test_preorder_nat():
    m = nat_free("x")
    assert natural_preorder_leq(m, (2,), (5,))
    assert not natural_preorder_leq(m, (5,), (2,))


def test_preorder_int_everything():
    m = FreeSemimodule(INT(), ("x",))
    assert natural_preorder_leq(m, (5,), (-2,))


def test_preorder_qpos_support():
    m = FreeSemimodule(QPOS(), ("x", "y"))
    one = Fraction(1)
    assert natural_preorder_leq(m, (Fraction(5), Fraction(0)), (one, Fraction(0)))
    assert not natural_preorder_leq(m, (one, one), (one, Fraction(0)))


def test_preorder_lattice_matches_hasse():
    lat = join_semilattice_from_leq(
        "star6", ("0", "l1", "l2", "l3", "l4", "1"),
        [("0", "l1"), ("0", "l2"), ("0", "l3"), ("0", "l4"),
         ("l1", "1"), ("l2", "1"), ("l3", "1"), ("l4", "1")], "0")
    assert natural_preorder_leq(lat, "l1", "1")
    assert not natural_preorder_leq(lat, "l1", "l2")
    assert natural_preorder_leq(lat, "0", "l3")


def test_preorder_reflexive_transitive_sampled():
    m = nat_free("x", "y")
    pts = [(0, 0), (1, 0), (1, 1), (2, 1)]
    for a in pts:
        assert natural_preorder_leq(m, a, a)
    for a in pts:
        for b in pts:
            for c in pts:
                if natural_preorder_leq(m, a, b) and \
                        natural_preorder_leq(m, b, c):
                    assert natural_preorder_leq(m, a, c)


def test_down_set_nat():
    m = nat_free("x")
    d = down_set(m, (3,))
    assert d.contains((3,)) and d.contains((0,)) and not d.contains((4,))
    assert sorted(d.elements()) == [(0,), (1,), (2,), (3,)]
    assert d.padd((2,), (1,)) == (3,)
    assert d.padd((2,), (2,)) is None


def test_down_set_qpos_coordinatewise_box():
    m = FreeSemimodule(QPOS(), ("x", "y"))
    d = down_set(m, (Fraction(1), Fraction(1)), order="coordinatewise")
    assert d.contains((Fraction(1, 2), Fraction(1)))
    assert not d.contains((Fraction(3, 2), Fraction(0)))


def test_down_set_top_of_lattice_is_everything():
    lat = join_semilattice_from_leq("c3", ("0", "m", "1"),
                                    [("0", "m"), ("m", "1")], "0")
    d = down_set(lat, "1")
    assert set(d.elements()) == set(lat.elements())


# -- homomorphism structure ---------------------------------------------------

def test_hom_composition():
    m = nat_free("a", "b")
    n = nat_free("c")
    f = Hom(m, n, gen_images=[(1,), (2,)])
    g = Hom(n, m, gen_images=[(1, 1)])
    gf = g.compose(f)
    assert gf.apply((1, 1)) == (3, 3)


def test_partial_identity_factorization():
    # a partial homomorphism is a partial identity followed by a total map
    nat = nat_free("x")
    box = down_set(nat, (3,))
    pid = Hom.partial_identity(as_partial(nat), box)
    assert pid.apply((2,)) == (2,)
    assert pid.apply((4,)) is None
    dbl = Hom(box, as_partial(nat), gen_images=[(2,)])
    composite = dbl.compose(pid)
    assert composite.apply((2,)) == (4,)
    assert composite.apply((5,)) is None
    # zero is preserved and defined sums are respected
    assert pid.apply(nat.zero()) == nat.zero()


# -- flatness ---------------------------------------------------------------------

def test_free_is_flat():
    assert check_flat_certificate(nat_free("a", "b")) == FLAT


def test_diamond_lattice_is_flat_free():
    # the diamond is the free Boolean semimodule on two generators
    lat = join_semilattice_from_leq(
        "diamond", ("0", "a", "b", "1"),
        [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], "0")
    assert check_flat_certificate(lat) == FLAT


def test_star_lattice_not_flat():
    lat = join_semilattice_from_leq(
        "star6", ("0", "l1", "l2", "l3", "l4", "1"),
        [("0", "l1"), ("0", "l2"), ("0", "l3"), ("0", "l4"),
         ("l1", "1"), ("l2", "1"), ("l3", "1"), ("l4", "1")], "0")
    assert check_flat_certificate(lat) == NOT_FLAT


def test_int_as_nat_not_flat():
    assert check_flat_certificate(IntAsNatSemimodule(NAT())) == NOT_FLAT
