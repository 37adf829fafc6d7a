"""Cellular sheaves of partial semimodules on digraphs."""

from __future__ import annotations

from .digraph import CellSet, closure, subdivide
from .errors import MixedGround, SheafflowError
from .semimodule import FreeSemimodule, Hom, as_partial, tensor


class CellSheaf:
    """Stalks on every cell and a restriction hom for every incidence.

    Restrictions are keyed by (vertex, edge); they exist exactly for the
    defined endpoints of each edge.
    """

    def __init__(self, base, stalks, restrictions):
        self.base = base
        self.stalks = {c: as_partial(m) for c, m in stalks.items()}
        self.restrictions = dict(restrictions)
        grounds = {m.ground for m in self.stalks.values()}
        if len(grounds) > 1:
            raise MixedGround("stalks over several grounds: %r" % grounds)
        self.ground = next(iter(grounds)) if grounds else None
        for e in base.edges:
            for v, _sign in base.incidences(e):
                if (v, e) not in self.restrictions:
                    raise SheafflowError("missing restriction %r -> %r" % (v, e))

    def stalk(self, c):
        return self.stalks[c]

    def restriction(self, v, e):
        return self.restrictions[(v, e)]

    def restrict_to(self, cells):
        """Pullback along a cell subset (stalk/restriction data restricted)."""
        cs = cells.cells if isinstance(cells, CellSet) else frozenset(cells)
        sub = self.base.subgraph(cs)
        stalks = {c: self.stalks[c] for c in sub.cells}
        restr = {(v, e): self.restrictions[(v, e)]
                 for e in sub.edges for v, _ in sub.incidences(e)}
        return CellSheaf(sub, stalks, restr)

    def is_finite_stalked(self):
        return all(m.is_finite() for m in self.stalks.values())

    def __repr__(self):
        return "CellSheaf(%r)" % self.base


def constant_sheaf(x, m):
    m = as_partial(m)
    stalks = {c: m for c in x.cells}
    restr = {}
    for e in x.edges:
        for v, _ in x.incidences(e):
            restr[(v, e)] = Hom.identity(m)
    return CellSheaf(x, stalks, restr)


def weight_sheaf(x, m, edge_stalks):
    """Subsheaf of the constant sheaf at m: full stalks on vertices, the
    given partial subsemimodules on edges, partial identities as
    restrictions."""
    m = as_partial(m)
    stalks = {}
    for v in x.vertices:
        stalks[v] = m
    for e in x.edges:
        stalks[e] = edge_stalks[e]
    restr = {}
    for e in x.edges:
        for v, _ in x.incidences(e):
            restr[(v, e)] = Hom.partial_identity(m, edge_stalks[e])
    return CellSheaf(x, stalks, restr)


def zero_stalk(ground):
    zero = FreeSemimodule(ground, ())
    return as_partial(zero)


def pushforward(c, f):
    """(C < X)_* F: stalks kept on C, zero off C, restrictions kept inside C."""
    x = c.digraph
    z = zero_stalk(f.ground)
    stalks = {}
    restr = {}
    for cell in x.cells:
        stalks[cell] = f.stalks[cell] if cell in c.cells else z
    for e in x.edges:
        for v, _ in x.incidences(e):
            if v in c.cells and e in c.cells:
                restr[(v, e)] = f.restrictions[(v, e)]
            else:
                restr[(v, e)] = Hom.zero_map(stalks[v], stalks[e])
    return CellSheaf(x, stalks, restr)


def pullback(c, f):
    return f.restrict_to(c)


def sd_sheaf(f, sd=None, corr=None):
    """Subdivided sheaf: old stalks at old cells, edge stalks on both halves,
    identities out of the subdivision vertices."""
    if sd is None:
        sd, corr = subdivide(f.base)
    x = f.base
    stalks = {}
    for c in x.cells:
        stalks[c] = f.stalks[c]
    restr = {}
    for e in x.edges:
        em, ep = corr.halves(e)
        stalks_e = f.stalks[e]
        # e as a subdivision vertex carries the old edge stalk
        for half, old_vertex in ((em, x.src[e]), (ep, x.tgt[e])):
            if old_vertex is not None:
                restr[(old_vertex, half)] = f.restrictions[(old_vertex, e)]
            restr[(e, half)] = Hom.identity(stalks_e)
    for e in x.edges:
        em, ep = corr.halves(e)
        stalks[em] = f.stalks[e]
        stalks[ep] = f.stalks[e]
    return CellSheaf(sd, stalks, restr), sd, corr


def tensor_sheaf(a, b):
    """Objectwise tensor of a sheaf of total semimodules with a sheaf."""
    if a.base is not b.base:
        raise SheafflowError("tensor of sheaves on different bases")
    stalks = {}
    for c in a.base.cells:
        stalks[c] = tensor(a.stalks[c].ambient, b.stalks[c])
    restr = {}
    for e in a.base.edges:
        for v, _ in a.base.incidences(e):
            restr[(v, e)] = _tensor_hom(a.restrictions[(v, e)],
                                        b.restrictions[(v, e)],
                                        stalks[v], stalks[e])
    return CellSheaf(a.base, stalks, restr)


def _tensor_hom(fa, fb, source, target):
    """Tensor of restriction maps, acting on the product generators."""
    sa = fa.source.ambient
    sb = fb.source.ambient

    def build():
        imgs = []
        gens_a = sa.generators()
        gens_b = sb.generators()
        ta = fa.target.ambient
        tb = fb.target.ambient
        for ga in gens_a:
            ya = fa.apply(ga)
            for gb in gens_b:
                yb = fb.apply(gb)
                if ya is None or yb is None:
                    imgs.append(None)
                    continue
                imgs.append(_tensor_elem(ya, yb, ta, tb, target))
        return imgs

    imgs = build()
    if any(i is None for i in imgs):
        return _PartialTensorHom(source, target, fa, fb)
    return Hom(source, target, gen_images=imgs, name="⊗")


def _tensor_elem(ya, yb, ta, tb, target):
    """Image of a pure tensor in the flattened product coordinates."""
    na = len(ta.generators())
    nb = len(tb.generators())
    out = [target.ground.zero] * (na * nb)
    for i in range(na):
        for j in range(nb):
            out[i * nb + j] = target.ground.mul(ya[i], yb[j])
    return tuple(out)


class _PartialTensorHom(Hom):
    def __init__(self, source, target, fa, fb):
        self.source = as_partial(source)
        self.target = as_partial(target)
        self.fa = fa
        self.fb = fb
        self.gen_images = None
        self.elem_map = None
        self.domain = None
        self.name = "⊗"

    def apply(self, x):
        sa = self.fa.source.ambient
        sb = self.fb.source.ambient
        na = len(sa.generators())
        nb = len(sb.generators())
        ta = self.fa.target.ambient
        tb = self.fb.target.ambient
        tgt = self.target.ambient
        acc = tgt.zero()
        for i in range(na):
            for j in range(nb):
                c = x[i * nb + j]
                if c == self.source.ground.zero:
                    continue
                ya = self.fa.apply(sa.gen(i))
                yb = self.fb.apply(sb.gen(j))
                if ya is None or yb is None:
                    return None
                term = _tensor_elem(ya, yb, ta, tb, self.target)
                acc = tgt.add(acc, tgt.smul(c, term))
        if not self.target.contains(acc):
            return None
        return acc


# ---------------------------------------------------------------------------
# canonical c-section cover
# ---------------------------------------------------------------------------

def csection_surjection_cover(f, extra_subsets=()):
    """A sectionwise surjection from a direct sum of pushforwards of
    constant sheaves at free covers of section semimodules.

    Summands are indexed by the closures of single cells plus any caller
    supplied subsets; the singleton-closure summands already hit every stalk,
    which is what the surjectivity property needs.
    Returns a list of (cellset, free_cover, section_elements, eps) where eps
    sends each cover generator to the section it names, as stalk data.
    """
    from .cohomology import h0_sections
    x = f.base
    summands = []
    subsets = [closure(CellSet(x, {c})) for c in sorted(x.cells)]
    subsets.extend(extra_subsets)
    for cs in subsets:
        secs = h0_sections(cs, f)
        nonzero = [s for s in secs if any_nonzero(s, f, cs)]
        if not nonzero:
            continue
        cover = FreeSemimodule(f.ground, tuple("s%d" % i
                                               for i in range(len(nonzero))))
        summands.append((cs, cover, nonzero))
    return summands


def any_nonzero(section, f, cs):
    for c in cs.cells:
        if c in section and section[c] != f.stalks[c].zero():
            return True
    return False
