"""Remaining worked examples: the cuts digraph, Borel-Moore difference,
degenerate networks, flow flags, unsupported-representation errors."""

import pytest

from fixtures import int_constant, nat_constant, two_path

from sheafflow.digraph import CellSet, Digraph, full_cellset, is_acyclic
from sheafflow.errors import UnsupportedRepresentation
from sheafflow.flowcut import algebraic_mfmc
from sheafflow.homology import (delta_homology, h0_homology,
                                h0_inclusion_map, h1_relative)
from sheafflow.semimodule import (FreeSemimodule, Hom, PresentedSemimodule,
                                  as_partial, equalizer)
from sheafflow.semiring import NAT
from sheafflow.weights import BoxSet, WeightedNetwork, enumerate_e_cuts


def cuts_example_digraph():
    """The six-vertex instance whose dashed pair forms an e-cut."""
    verts = {"n1", "n2", "n3", "n4", "n5", "n6"}
    edges = {"e": ("n4", "n1"),       # marked edge, sink back to source
             "f12": ("n1", "n2"), "f23": ("n2", "n3"),
             "f56": ("n5", "n6"), "f53": ("n5", "n3"),
             "f64": ("n6", "n4"),
             "d34": ("n3", "n4"), "d15": ("n1", "n5")}
    return Digraph(verts, edges.keys(),
                   {e: st[0] for e, st in edges.items()},
                   {e: st[1] for e, st in edges.items()})


def test_cuts_example_dashed_pair_is_a_cut():
    x = cuts_example_digraph()
    assert is_acyclic(CellSet(x, x.cells - {"e"}))
    cuts = enumerate_e_cuts(x, "e")
    assert frozenset({"d34", "d15"}) in {c.edges for c in cuts}


def test_delta_difference_is_borel_moore_over_ring():
    # the relative generator's two boundary evaluations become equal in
    # H0(X): the pair difference is the classical connecting map, whose
    # image is exactly the kernel of H0(U) -> H0(X)
    x = two_path()
    f = int_constant(x)
    u = CellSet(x, x.cells - {"v"})
    rel = h1_relative(x, u, f)
    gen = rel.generating_flows()[0]
    dm, h0u = delta_homology(x, u, f, "-")
    dp, _ = delta_homology(x, u, f, "+")
    h0x = h0_homology(full_cellset(x), f)
    inc = h0_inclusion_map(x, u, f, h0u, h0x)
    a, b = dm(gen), dp(gen)
    assert not h0u.eq(a, b)
    na, _ = h0x.presented.normal_form(inc(a))
    nb, _ = h0x.presented.normal_form(inc(b))
    assert na == nb


def test_single_dangling_marked_edge_top_convention():
    # no endpoints -> no cuts; the convention reports the weight top
    x = Digraph(set(), {"e"}, {"e": None}, {"e": None})
    net = WeightedNetwork(x, "nat", {"e": BoxSet.principal(7)}, "e")
    vmax, vmin, equal = algebraic_mfmc(net)
    assert vmin == 7  # empty cut family: the marked stalk's top
    assert vmax == 7 and equal


def test_flow_support_and_e_acyclicity():
    from fixtures import figure_eight
    from sheafflow.homology import Flow, h1_direct
    x = figure_eight()
    f = nat_constant(x)
    res = h1_direct(x, f)
    loops = res.generating_flows()
    assert len(loops) == 2
    one = loops[0]
    supp = one.support().cells
    assert len(supp & x.edges) == 2  # one digon
    e_in = sorted(supp & x.edges)[0]
    assert one.is_e_acyclic(e_in)
    # the sum of both loop flows is not acyclic off either edge
    both_sections = {}
    for e in sorted(x.edges):
        sec = {v: (1,) for v, _ in x.incidences(e)}
        sec["value"] = (1,)
        both_sections[e] = sec
    both = Flow(f, both_sections)
    assert both.support().cells == x.cells
    assert not both.is_e_acyclic(e_in)


def test_equalizer_with_presented_source_rejected():
    pres = PresentedSemimodule(NAT(), ("a", "b"), [((1, 0), (0, 1))])
    free = FreeSemimodule(NAT(), ("c",))
    f = Hom(as_partial(pres), as_partial(free), gen_images=[(1,), (1,)])
    with pytest.raises(UnsupportedRepresentation):
        equalizer(f, f)


def test_holim_single_cut_network():
    from sheafflow.weights import holim_cut_values, intersect_cut_values
    x = Digraph({"s", "t"}, {"f", "e"}, {"f": "s", "e": "t"},
                {"f": "t", "e": "s"})
    net = WeightedNetwork(x, "nat", {"f": BoxSet.principal(4),
                                     "e": BoxSet.principal(9)}, "e")
    inter, cuts = intersect_cut_values(net)
    assert len(cuts) == 1
    assert holim_cut_values(net) == inter == BoxSet.principal(4)
