"""Shared digraph and sheaf fixtures for the test suite."""

from sheafflow.digraph import Digraph
from sheafflow.semimodule import FreeSemimodule, Hom, join_semilattice_from_leq
from sheafflow.semiring import BOOL, INT, NAT, QPOS
from sheafflow.sheaf import CellSheaf, constant_sheaf


def single_edge():
    return Digraph({"v1", "v2"}, {"e"}, {"e": "v1"}, {"e": "v2"})


def two_cycle():
    return Digraph({"v", "w"}, {"e1", "e2"},
                   {"e1": "v", "e2": "w"}, {"e1": "w", "e2": "v"})


def three_cycle():
    return Digraph({"a", "b", "c"}, {"e1", "e2", "e3"},
                   {"e1": "a", "e2": "b", "e3": "c"},
                   {"e1": "b", "e2": "c", "e3": "a"})


def cospan():
    """v1 -e1-> w <-e2- v2: the exactness counterexample."""
    return Digraph({"v1", "w", "v2"}, {"e1", "e2"},
                   {"e1": "v1", "e2": "v2"}, {"e1": "w", "e2": "w"})


def two_path():
    """u -e1-> v -e2-> w."""
    return Digraph({"u", "v", "w"}, {"e1", "e2"},
                   {"e1": "u", "e2": "v"}, {"e1": "v", "e2": "w"})


def figure_eight():
    """Two 2-cycles sharing the vertex m."""
    return Digraph({"m", "a", "b"}, {"e1", "e2", "f1", "f2"},
                   {"e1": "m", "e2": "a", "f1": "m", "f2": "b"},
                   {"e1": "a", "e2": "m", "f1": "b", "f2": "m"})


def freeness_star(kind):
    """The three stars from the orientation-freeness example."""
    if kind == "v1":  # in 2, out 0
        return Digraph({"a", "b", "v"}, {"e1", "e2"},
                       {"e1": "a", "e2": "b"}, {"e1": "v", "e2": "v"}), "v"
    if kind == "v2":  # in 2, out 1
        return Digraph({"a", "b", "v", "c"}, {"e1", "e2", "e3"},
                       {"e1": "a", "e2": "b", "e3": "v"},
                       {"e1": "v", "e2": "v", "e3": "c"}), "v"
    # in 2, out 2
    return Digraph({"a", "b", "v", "c", "d"}, {"e1", "e2", "e3", "e4"},
                   {"e1": "a", "e2": "b", "e3": "v", "e4": "v"},
                   {"e1": "v", "e2": "v", "e3": "c", "e4": "d"}), "v"


def nat_constant(x):
    return constant_sheaf(x, FreeSemimodule(NAT(), ("u",)))


def int_constant(x):
    return constant_sheaf(x, FreeSemimodule(INT(), ("u",)))


def chain(name, els):
    leq = [(els[i], els[i + 1]) for i in range(len(els) - 1)]
    return join_semilattice_from_leq(name, tuple(els), leq, els[0])


def etale_sheaf():
    """The etale-space example: chains over a single edge, with the bottoms
    of the vertex and edge stalks drawn as l11 and l1."""
    x = single_edge()
    f_v1 = chain("F(v1)", ["l11", "l12"])
    f_e = chain("F(e)", ["l1", "l2"])
    f_v2 = chain("F(v2)", ["z", "l21", "l22"])
    r1 = Hom(f_v1, f_e, elem_map={"l11": "l1", "l12": "l2"})
    r2 = Hom(f_v2, f_e, elem_map={"z": "l1", "l21": "l2", "l22": "l2"})
    return x, CellSheaf(x, {"v1": f_v1, "e": f_e, "v2": f_v2},
                        {("v1", "e"): r1, ("v2", "e"): r2})


def star6_lattice():
    return join_semilattice_from_leq(
        "star6", ("0", "l1", "l2", "l3", "l4", "1"),
        [("0", "l1"), ("0", "l2"), ("0", "l3"), ("0", "l4"),
         ("l1", "1"), ("l2", "1"), ("l3", "1"), ("l4", "1")], "0")


def bifurcation_digraph():
    """The indecomposability example: two bifurcations chained into a cycle
    through the shared vertex v."""
    return Digraph(
        {"v", "n1", "n2", "n3", "n4", "n5"},
        {"a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"},
        {"a1": "v", "a2": "v", "b1": "n1", "b2": "n3",
         "c1": "n2", "c2": "n2", "d1": "n4", "d2": "n5"},
        {"a1": "n1", "a2": "n3", "b1": "n2", "b2": "n2",
         "c1": "n4", "c2": "n5", "d1": "v", "d2": "v"})
