"""Hilbert bases of homogeneous linear Diophantine systems.

`hilbert_basis(A)` returns the minimal generating set of the monoid
{x in N^n : A x = 0} using Contejean-Devie completion.  The brute-force
enumerator `nonneg_solutions_up_to` backs the property tests: every bounded
solution must be an N-combination of basis elements.
"""

from __future__ import annotations


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _leq(u, v):
    return all(a <= b for a, b in zip(u, v))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def hilbert_basis(A, max_level=10_000):
    """Minimal generators of {x >= 0 integer : A x = 0}.

    A is a list of integer rows, all of length n.  Contejean-Devie
    completion, processed level by grade level with frontier deduplication.
    The zero solution is never included; completeness is a theorem of the
    algorithm, not a bounded search.
    """
    if not A:
        raise ValueError("need at least the zero row to fix the dimension")
    n = len(A[0])
    m = len(A)
    cols = [tuple(A[i][j] for i in range(m)) for j in range(n)]
    zero_val = tuple(0 for _ in range(m))
    units = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]

    basis = []
    frontier = {units[j]: cols[j] for j in range(n)}
    level = 0
    while frontier:
        level += 1
        if level > max_level:
            raise RuntimeError("hilbert basis completion exceeded level budget")
        nxt = {}
        for x, v in frontier.items():
            if any(_leq(b, x) for b in basis):
                continue
            if v == zero_val:
                basis = [b for b in basis if not _leq(x, b)]
                basis.append(x)
                continue
            for j in range(n):
                if _dot(v, cols[j]) < 0:
                    x2 = _add(x, units[j])
                    if x2 not in nxt and not any(_leq(b, x2) for b in basis):
                        nxt[x2] = _add(v, cols[j])
        frontier = nxt
    return sorted(basis)


def hilbert_basis_eq(A, B):
    """Minimal generators of {x >= 0 : A x = B x}."""
    diff = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]
    return hilbert_basis(diff)


def nonneg_solutions_up_to(A, total):
    """All x in N^n with A x = 0 and sum(x) <= total, zero excluded."""
    n = len(A[0])
    out = []
    for x in _bounded_vectors(n, total):
        if any(x) and all(_dot(row, x) == 0 for row in A):
            out.append(x)
    return out


def _bounded_vectors(n, total):
    if n == 0:
        yield ()
        return
    for head in range(total + 1):
        for tail in _bounded_vectors(n - 1, total - head):
            yield (head,) + tail


def is_nat_combination(x, gens):
    """Decide whether x is an N-combination of gens (exact search)."""
    if not any(x):
        return True
    usable = [g for g in gens if _leq(g, x)]
    if not usable:
        return False
    g = usable[0]
    # bounded branching on the multiplicity of the first usable generator
    kmax = min((xi // gi) for xi, gi in zip(x, g) if gi)
    rest = [h for h in usable[1:]]
    for k in range(kmax, -1, -1):
        r = tuple(xi - k * gi for xi, gi in zip(x, g))
        if is_nat_combination(r, rest):
            return True
    return False


def syzygy_pairs(gens, bound=6):
    """Minimal nontrivial pairs (k, l) with sum k_i g_i = sum l_i g_i.

    These are relations among Hilbert-basis generators, found as the Hilbert
    basis of the doubled system; pairs with overlapping support carry no
    information beyond smaller ones and are dropped, as is the diagonal.
    The result presents the monoid generated by `gens`.
    """
    if not gens:
        return []
    n = len(gens)
    m = len(gens[0])
    rows = []
    for i in range(m):
        rows.append([gens[j][i] for j in range(n)] + [-gens[j][i] for j in range(n)])
    pairs = []
    for sol in hilbert_basis(rows):
        k, l = sol[:n], sol[n:]
        if k == l:
            continue
        if any(a and b for a, b in zip(k, l)):
            continue
        if not any(k) or not any(l):
            # one side zero means the other maps to 0; keep as a relation to 0
            pass
        if (l, k) in pairs:
            continue
        pairs.append((k, l))
    pairs.sort()
    return [p for p in pairs if sum(p[0]) + sum(p[1]) <= 2 * bound]
