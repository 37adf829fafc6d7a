"""Sheaf constructors and functorial operations."""

from fixtures import (etale_sheaf, nat_constant, single_edge, three_cycle,
                      two_cycle)

from sheafflow.cohomology import h0, h0_sections
from sheafflow.digraph import CellSet, closure, full_cellset
from sheafflow.semimodule import FreeSemimodule, down_set
from sheafflow.semiring import NAT
from sheafflow.sheaf import (constant_sheaf, csection_surjection_cover,
                             pullback, pushforward, sd_sheaf, tensor_sheaf,
                             weight_sheaf)


def test_constant_sheaf_stalks_and_identities():
    x = single_edge()
    f = nat_constant(x)
    assert set(f.stalks) == {"v1", "e", "v2"}
    assert f.restriction("v1", "e").apply((3,)) == (3,)


def test_constant_zero_sheaf():
    x = single_edge()
    f = constant_sheaf(x, FreeSemimodule(NAT(), ()))
    assert f.stalks["e"].zero() == ()


def test_etale_differs_from_constant():
    x, f = etale_sheaf()
    # the pictured restrictions are not all injective, a constant sheaf's are
    r = f.restriction("v2", "e")
    assert r.apply("l21") == r.apply("l22")


def test_pushforward_skyscraper():
    x = single_edge()
    f = nat_constant(x)
    sky = pushforward(CellSet(x, {"v1"}), f)
    assert sky.stalks["v1"].ambient.gens == ("u",)
    assert sky.stalks["e"].zero() == ()
    assert sky.restriction("v1", "e").apply((2,)) == ()


def test_pushforward_full_and_empty():
    x = single_edge()
    f = nat_constant(x)
    full = pushforward(full_cellset(x), f)
    assert full.stalks["e"].ambient.gens == ("u",)
    zero = pushforward(CellSet(x, set()), f)
    assert all(zero.stalks[c].zero() == () for c in x.cells)


def test_pullback_identity_and_edge():
    x = single_edge()
    f = nat_constant(x)
    assert pullback(full_cellset(x), f).base.cells == x.cells
    sub = pullback(CellSet(x, {"e"}), f)
    assert sub.base.edges == {"e"} and not sub.base.vertices


def test_pullback_weight_sheaf_keeps_downset():
    x = single_edge()
    m = FreeSemimodule(NAT(), ("u",))
    w = weight_sheaf(x, m, {"e": down_set(m, (3,))})
    sub = pullback(closure(CellSet(x, {"e"})), w)
    assert sub.stalks["e"].contains((3,))
    assert not sub.stalks["e"].contains((4,))


def test_sd_sheaf_constant_stays_constant():
    x = two_cycle()
    f = nat_constant(x)
    sdF, sd, corr = sd_sheaf(f)
    for c in sd.cells:
        assert sdF.stalks[c].ambient.gens == ("u",)
    em, ep = corr.halves("e1")
    assert sdF.restriction("e1", em).apply((5,)) == (5,)


def test_sd_sheaf_weight_puts_stalk_on_middle():
    x = single_edge()
    m = FreeSemimodule(NAT(), ("u",))
    w = weight_sheaf(x, m, {"e": down_set(m, (2,))})
    sdW, sd, corr = sd_sheaf(w)
    em, ep = corr.halves("e")
    # middle vertex and both halves carry the edge stalk
    for c in ("e", em, ep):
        assert not sdW.stalks[c].contains((3,))
        assert sdW.stalks[c].contains((2,))


def test_tensor_sheaf_unit():
    x = single_edge()
    f = nat_constant(x)
    unit = constant_sheaf(x, FreeSemimodule(NAT(), ("s",)))
    t = tensor_sheaf(unit, f)
    assert t.restriction("v1", "e").apply((4,)) == (4,)


def test_functoriality_on_incidences():
    x, f = etale_sheaf()
    for e in x.edges:
        for v, _ in x.incidences(e):
            r = f.restriction(v, e)
            a, b = "l11", "l12"
            if v == "v2":
                a, b = "l21", "l22"
            s = f.stalks[v].ambient.add(a, b)
            assert r.apply(s) == f.stalks[e].ambient.add(r.apply(a),
                                                         r.apply(b))


def test_csection_cover_hits_every_section():
    x, f = etale_sheaf()
    summands = csection_surjection_cover(f)
    # every nonzero global section must appear in some summand restricted to
    # the whole space; singleton closures suffice for stalk surjectivity
    secs = h0_sections(full_cellset(x), f)
    nonzero = [s for s in secs if any(v != f.stalks[c].zero()
                                      for c, v in s.items())]
    assert len(nonzero) == 2
    covered = set()
    for cs, cover, named in summands:
        for s in named:
            covered.add(tuple(sorted((k, repr(v)) for k, v in s.items())))
    for s in nonzero:
        # each global section restricts into the closure summands
        for cs, cover, named in summands:
            restr = {c: s[c] for c in cs.cells if c in s}
            if len(restr) == len(cs.cells):
                assert any(all(n.get(c) == restr[c] for c in restr)
                           for n in named)


def test_cover_surjective_on_open_sections_small_bases():
    # exhaustive over the open subsets of a <= 4 cell base
    x, f = etale_sheaf()
    summands = csection_surjection_cover(f)
    from itertools import combinations
    cells = sorted(x.cells)
    for r in range(len(cells) + 1):
        for combo in combinations(cells, r):
            cs = CellSet(x, combo)
            if not cs.is_open:
                continue
            target = h0_sections(cs, f)
            # sums of restricted summand sections must reach every target
            reachable = _reachable_sections(x, f, cs, summands)
            for t in target:
                filled = {c: t.get(c, f.stalks[c].zero()) for c in cs.cells}
                key = tuple(sorted((k, repr(v)) for k, v in filled.items()))
                assert key in reachable


def _reachable_sections(x, f, cs, summands):
    from sheafflow.cohomology import h0
    base = {c: f.stalks[c].zero() for c in cs.cells}
    pool = []
    for sum_cs, cover, named in summands:
        for s in named:
            if all(c in s for c in cs.cells & sum_cs.cells):
                restricted = {c: s.get(c, f.stalks[c].zero())
                              for c in cs.cells}
                pool.append(restricted)
    reached = {tuple(sorted((k, repr(v)) for k, v in base.items()))}
    frontier = [base]
    while frontier:
        cur = frontier.pop()
        for p in pool:
            nxt = {}
            ok = True
            for c in cs.cells:
                val = f.stalks[c].ambient.add(cur[c], p[c])
                if not f.stalks[c].contains(val):
                    ok = False
                    break
                nxt[c] = val
            if not ok:
                continue
            key = tuple(sorted((k, repr(v)) for k, v in nxt.items()))
            if key not in reached:
                reached.add(key)
                frontier.append(nxt)
    return reached
