"""Graph symmetry and regularity structure.

Automorphisms are found with color refinement plus individualization search,
organized as a stabilizer chain: at each level the base vertex is matched
against every other vertex in its cell, the coset representatives are
collected, and the base vertex is then pinned. The union of representatives
over all levels is a strong generating set for the full automorphism group.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeCapExceeded
from .graphs import Graph, WeightVector

GENERATOR_CAP = 256


def _refine(n, nbrs, colors):
    """Iterated neighborhood color refinement to a stable partition."""
    colors = list(colors)
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[u] for u in nbrs[v])))
            for v in range(n)
        ]
        ids = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ids[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def _cells(colors):
    byc = {}
    for v, c in enumerate(colors):
        byc.setdefault(c, []).append(v)
    return byc


def _target_cell(colors):
    """Smallest non-singleton cell, ties broken by smallest vertex."""
    best = None
    for cell in _cells(colors).values():
        if len(cell) > 1:
            key = (len(cell), min(cell))
            if best is None or key < (len(best), min(best)):
                best = cell
    return best


def _is_automorphism(g, nbr_sets, perm):
    for i, j in g.edges:
        a, b = perm[i], perm[j]
        if b not in nbr_sets[a]:
            return False
    return True


def _match(g, nbrs, nbr_sets, colors_a, colors_b):
    """Search for an automorphism consistent with the two colorings.

    colors_a colors the domain, colors_b the codomain. Returns a permutation
    tuple or None. Complete search: returns None only when no extension exists.
    """
    n = g.n
    ca = _refine(n, nbrs, colors_a)
    cb = _refine(n, nbrs, colors_b)
    if sorted(ca) != sorted(cb):
        return None
    cells_a = _cells(ca)
    cells_b = _cells(cb)
    if set(cells_a) != set(cells_b):
        return None
    for c, cell in cells_a.items():
        if len(cell) != len(cells_b[c]):
            return None
    if all(len(cell) == 1 for cell in cells_a.values()):
        perm = [0] * n
        for c, cell in cells_a.items():
            perm[cell[0]] = cells_b[c][0]
        perm = tuple(perm)
        return perm if _is_automorphism(g, nbr_sets, perm) else None
    cell = _target_cell(ca)
    v = min(cell)
    color_of_v = ca[v]
    mark = n + 1  # fresh color, refinement renumbers anyway
    for u in sorted(cells_b[color_of_v]):
        ca2 = list(ca)
        cb2 = list(cb)
        ca2[v] = mark
        cb2[u] = mark
        perm = _match(g, nbrs, nbr_sets, ca2, cb2)
        if perm is not None:
            return perm
    return None


def automorphism_generators(g, cap=GENERATOR_CAP):
    """Strong generating set for Aut(g) as permutation tuples.

    Raises SizeCapExceeded if more than cap generators accumulate, which for
    the graph sizes this package targets signals a runaway input.
    """
    n = g.n
    nbrs = [sorted(s) for s in g.adjacency_sets()]
    nbr_sets = g.adjacency_sets()
    colors = _refine(n, nbrs, [0] * n)
    gens = []
    mark = n + 1
    while True:
        cell = _target_cell(colors)
        if cell is None:
            break
        v = min(cell)
        for u in sorted(cell):
            if u == v:
                continue
            ca = list(colors)
            cb = list(colors)
            ca[v] = mark
            cb[u] = mark
            perm = _match(g, nbrs, nbr_sets, ca, cb)
            if perm is not None:
                gens.append(perm)
                if len(gens) > cap:
                    raise SizeCapExceeded(
                        f"more than {cap} automorphism generators"
                    )
        colors = list(colors)
        colors[v] = mark
        mark += 1
        colors = _refine(n, nbrs, colors)
    return tuple(gens)


def group_order(gens, cap=2_000_000):
    """Order of the permutation group generated by gens (breadth-first)."""
    if not gens:
        return 1
    k = len(gens[0])
    ident = tuple(range(k))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for gperm in gens:
                y = tuple(x[gperm[i]] for i in range(k))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise SizeCapExceeded(f"group larger than {cap}")
        frontier = nxt
    return len(seen)


@dataclass(frozen=True)
class EdgeOrbitPartition:
    """Edge orbits under the automorphism group, largest first."""

    orbits: tuple  # tuple of tuples of edge indices into graph.edges

    @property
    def sizes(self):
        return tuple(len(o) for o in self.orbits)

    @property
    def count(self):
        return len(self.orbits)


def edge_orbits(g, gens=None):
    """Partition edge indices into automorphism orbits.

    Orbits are ordered by decreasing size, then by smallest contained index.
    """
    if gens is None:
        gens = automorphism_generators(g)
    index = g.edge_index()
    parent = list(range(g.m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for perm in gens:
        for k, (i, j) in enumerate(g.edges):
            a, b = perm[i], perm[j]
            if a > b:
                a, b = b, a
            union(k, index[(a, b)])
    groups = {}
    for k in range(g.m):
        groups.setdefault(find(k), []).append(k)
    orbits = sorted(
        (tuple(sorted(o)) for o in groups.values()),
        key=lambda o: (-len(o), o[0]),
    )
    return EdgeOrbitPartition(orbits=tuple(orbits))


def is_edge_transitive(g, gens=None):
    return edge_orbits(g, gens).count == 1


def orbit_average(g, w, orbits=None):
    """Replace each weight by the mean over its edge orbit.

    Averaging over the group's action preserves the total weight, so a
    normalized vector stays normalized.
    """
    if orbits is None:
        orbits = edge_orbits(g)
    if isinstance(w, WeightVector):
        w = w.as_array()
    w = np.asarray(w, dtype=np.float64)
    out = np.empty(g.m)
    for orbit in orbits.orbits:
        idx = list(orbit)
        out[idx] = float(np.mean(w[idx]))
    return WeightVector(values=tuple(out.tolist()))


@dataclass(frozen=True)
class IntersectionArray:
    """Distance-regular intersection numbers {b_0..b_{d-1}; c_1..c_d}."""

    b: tuple
    c: tuple

    @property
    def diameter(self):
        return len(self.c)


def distance_regular_check(g):
    """Intersection array when g is distance-regular, else None."""
    n = g.n
    nbrs = g.adjacency_sets()
    degs = g.degrees()
    if len(set(degs)) != 1:
        return None
    diameter = None
    b_ref = None
    c_ref = None
    for root in range(n):
        dist = [-1] * n
        dist[root] = 0
        frontier = [root]
        d = 0
        while frontier:
            nxt = []
            for v in frontier:
                for u in nbrs[v]:
                    if dist[u] == -1:
                        dist[u] = d + 1
                        nxt.append(u)
            frontier = nxt
            if nxt:
                d += 1
        if any(x == -1 for x in dist):
            return None
        if diameter is None:
            diameter = d
            b_ref = [None] * (d + 1)
            c_ref = [None] * (d + 1)
        elif d != diameter:
            return None
        for v in range(n):
            i = dist[v]
            ci = sum(1 for u in nbrs[v] if dist[u] == i - 1)
            bi = sum(1 for u in nbrs[v] if dist[u] == i + 1)
            if b_ref[i] is None:
                b_ref[i] = bi
                c_ref[i] = ci
            elif b_ref[i] != bi or c_ref[i] != ci:
                return None
    return IntersectionArray(b=tuple(b_ref[:-1]), c=tuple(c_ref[1:]))


def is_strongly_regular(g):
    """Parameters (n, k, lam, mu) when g is strongly regular, else None.

    Complete graphs are excluded as degenerate (no non-adjacent pairs).
    """
    n = g.n
    if g.m == n * (n - 1) // 2:
        return None
    degs = g.degrees()
    if len(set(degs)) != 1:
        return None
    k = degs[0]
    nbrs = g.adjacency_sets()
    lam = None
    mu = None
    for i in range(n):
        for j in range(i + 1, n):
            common = len(nbrs[i] & nbrs[j])
            if j in nbrs[i]:
                if lam is None:
                    lam = common
                elif lam != common:
                    return None
            else:
                if mu is None:
                    mu = common
                elif mu != common:
                    return None
    return (n, k, lam, 0 if mu is None else mu)
