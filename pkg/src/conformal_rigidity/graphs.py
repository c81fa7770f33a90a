"""Graph construction, validation, weights, and serialization.

Graphs here are finite, simple, undirected, connected, on vertices 0..n-1.
Edges are canonicalized to (i, j) with i < j and stored sorted, so the edge
order is reproducible everywhere a weight vector or certificate refers to
edges by position.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import (
    AllZeroWeights,
    ComplementDisconnected,
    DimensionMismatch,
    Disconnected,
    DisconnectedCirculant,
    DuplicateEdge,
    LoopEdge,
    NegativeWeight,
    NotSymmetricGeneratingSet,
    OutOfRange,
    ParseError,
)


@dataclass(frozen=True)
class Graph:
    """Immutable simple connected graph with canonical edge order."""

    n: int
    edges: tuple  # tuple of (i, j), i < j, sorted lexicographically

    @property
    def m(self):
        return len(self.edges)

    def adjacency(self):
        A = np.zeros((self.n, self.n))
        for i, j in self.edges:
            A[i, j] = A[j, i] = 1.0
        return A

    def adjacency_sets(self):
        nbrs = [set() for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return nbrs

    def degrees(self):
        d = [0] * self.n
        for i, j in self.edges:
            d[i] += 1
            d[j] += 1
        return d

    def edge_index(self):
        return {e: k for k, e in enumerate(self.edges)}

    def to_json(self):
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges]})


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative edge weights in the graph's canonical edge order."""

    values: tuple

    def as_array(self):
        return np.array(self.values, dtype=np.float64)

    def __len__(self):
        return len(self.values)


# Laplacians are plain float64 arrays; the alias documents intent in signatures.
LaplacianMatrix = np.ndarray


def _check_connected(n, edges):
    if n == 0:
        return False
    nbrs = [[] for _ in range(n)]
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for u in nbrs[v]:
            if not seen[u]:
                seen[u] = True
                count += 1
                stack.append(u)
    return count == n


def build_graph(n, edges):
    """Validate and canonicalize an edge list into a Graph.

    Raises OutOfRange, LoopEdge, DuplicateEdge, or Disconnected.
    """
    if not isinstance(n, int) or n < 1:
        raise OutOfRange(f"vertex count must be a positive integer, got {n!r}")
    canon = []
    seen = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if not (0 <= i < n and 0 <= j < n):
            raise OutOfRange(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise LoopEdge(f"loop at vertex {i}")
        if i > j:
            i, j = j, i
        if (i, j) in seen:
            raise DuplicateEdge(f"edge ({i}, {j}) appears more than once")
        seen.add((i, j))
        canon.append((i, j))
    canon.sort()
    if not _check_connected(n, canon):
        raise Disconnected("graph is not connected")
    return Graph(n=n, edges=tuple(canon))


def circulant(n, steps):
    """Circulant graph on Z_n with connection set steps.

    Steps are taken mod n and folded to min(s, n-s); duplicates collapse.
    Raises DisconnectedCirculant when gcd(steps + [n]) > 1.
    """
    if n < 3:
        raise OutOfRange(f"circulant needs n >= 3, got {n}")
    folded = set()
    for s in steps:
        s = int(s) % n
        if s == 0:
            raise LoopEdge("step 0 gives loops")
        folded.add(min(s, n - s))
    g = n
    for s in folded:
        g = math.gcd(g, s)
    if g > 1:
        raise DisconnectedCirculant(
            f"steps {sorted(folded)} generate a proper subgroup of Z_{n}"
        )
    edges = set()
    for s in sorted(folded):
        for i in range(n):
            j = (i + s) % n
            edges.add((min(i, j), max(i, j)))
    return build_graph(n, sorted(edges))


@dataclass(frozen=True)
class CayleyPresentation:
    """A finite group given by generator action, plus a connection set.

    elements: tuple of hashable group elements (identity first),
    multiply: the group operation, connection: the symmetric generating set.
    Use cyclic() or from_permutations() instead of constructing directly.
    """

    elements: tuple
    connection: tuple
    multiply: object = field(compare=False)

    @classmethod
    def cyclic(cls, n, steps):
        conn = []
        for s in steps:
            s = int(s) % n
            if s == 0:
                raise LoopEdge("identity element in connection set")
            conn.append(s)
        # close under inversion
        full = sorted(set(conn) | {(n - s) % n for s in conn})
        return cls(elements=tuple(range(n)), connection=tuple(full),
                   multiply=lambda a, b: (a + b) % n)

    @classmethod
    def from_permutations(cls, generators):
        """Group generated by permutations (tuples mapping index -> image)."""
        gens = [tuple(g) for g in generators]
        if not gens:
            raise NotSymmetricGeneratingSet("empty generating set")
        k = len(gens[0])
        ident = tuple(range(k))

        def mul(a, b):
            return tuple(a[b[i]] for i in range(k))

        def inv(a):
            out = [0] * k
            for i, ai in enumerate(a):
                out[ai] = i
            return tuple(out)

        conn = sorted(set(gens) | {inv(g) for g in gens})
        if ident in conn:
            raise LoopEdge("identity element in connection set")
        # breadth-first closure from the identity
        elems = [ident]
        index = {ident: 0}
        head = 0
        while head < len(elems):
            x = elems[head]
            head += 1
            for s in conn:
                y = mul(x, s)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
        return cls(elements=tuple(elems), connection=tuple(conn), multiply=mul)


def cayley_graph(pres):
    """Cayley graph of a presentation: x ~ x*s for s in the connection set.

    The connection set must be inverse-closed and must generate the group,
    otherwise NotSymmetricGeneratingSet / Disconnected is raised.
    """
    elems = list(pres.elements)
    index = {x: i for i, x in enumerate(elems)}
    mul = pres.multiply
    ident = elems[0]
    # symmetry check: for each s the inverse must be in the set
    conn = list(pres.connection)
    for s in conn:
        if s not in index:
            raise OutOfRange("connection element outside the group")
        inv_found = False
        for t in conn:
            if mul(s, t) == ident:
                inv_found = True
                break
        if not inv_found:
            raise NotSymmetricGeneratingSet(
                "connection set is not closed under inverses"
            )
    edges = set()
    for x in elems:
        ix = index[x]
        for s in conn:
            iy = index[mul(x, s)]
            if ix == iy:
                raise LoopEdge("identity element in connection set")
            edges.add((min(ix, iy), max(ix, iy)))
    return build_graph(len(elems), sorted(edges))


def complement(g):
    """Complement graph on the same vertex set.

    Raises ComplementDisconnected when the complement fails connectivity,
    since every graph in this package must stay connected.
    """
    present = set(g.edges)
    edges = [
        (i, j)
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if (i, j) not in present
    ]
    if not _check_connected(g.n, edges):
        raise ComplementDisconnected("complement is not connected")
    return Graph(n=g.n, edges=tuple(edges))


def normalize_weights(g, w):
    """Scale nonnegative weights to sum to m, the unweighted total.

    Raises DimensionMismatch, NegativeWeight, or AllZeroWeights.
    """
    if isinstance(w, WeightVector):
        w = w.as_array()
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (g.m,):
        raise DimensionMismatch(f"expected {g.m} weights, got shape {w.shape}")
    if np.any(w < 0):
        k = int(np.argmin(w))
        raise NegativeWeight(f"weight {w[k]} at edge index {k}")
    s = float(w.sum())
    if s == 0.0:
        raise AllZeroWeights("weights sum to zero")
    return WeightVector(values=tuple((w * (g.m / s)).tolist()))


def laplacian(g, w=None):
    """Weighted Laplacian L = sum_e w_e (e_i - e_j)(e_i - e_j)^T.

    With w=None all weights are 1. Weights are used as given (no rescaling);
    call normalize_weights first when the sum-to-m normalization matters.
    """
    if w is None:
        wv = np.ones(g.m)
    elif isinstance(w, WeightVector):
        wv = w.as_array()
    else:
        wv = np.asarray(w, dtype=np.float64)
        if wv.shape != (g.m,):
            raise DimensionMismatch(f"expected {g.m} weights, got shape {wv.shape}")
    L = np.zeros((g.n, g.n))
    for k, (i, j) in enumerate(g.edges):
        c = wv[k]
        L[i, j] -= c
        L[j, i] -= c
        L[i, i] += c
        L[j, j] += c
    return L


# ------------------------------------------------------------- serialization


def parse_graph_json(text):
    """Parse the {"n": int, "edges": [[i, j], ...]} interchange format."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise ParseError('expected an object with "n" and "edges"')
    n = obj["n"]
    edges = obj["edges"]
    if not isinstance(n, int):
        raise ParseError('"n" must be an integer')
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 for e in edges
    ):
        raise ParseError('"edges" must be a list of [i, j] pairs')
    return build_graph(n, [(e[0], e[1]) for e in edges])


def parse_graph_text(text):
    """Parse the plain format: first line "n m", then m lines "i j"."""
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f'expected header "n m", got {lines[0]!r}')
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as e:
        raise ParseError(f"non-integer header: {lines[0]!r}") from e
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header promises {m} edges, found {len(body)} lines")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"bad edge line: {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as e:
            raise ParseError(f"non-integer edge line: {ln!r}") from e
    return build_graph(n, edges)


def parse_graph(text):
    """Sniff JSON versus plain text and parse accordingly."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_graph_json(text)
    return parse_graph_text(text)


def load_fixture(name):
    """Load one of the bundled example graphs by name (no .json suffix)."""
    fname = name if name.endswith(".json") else name + ".json"
    try:
        text = resources.files("conformal_rigidity.data").joinpath(fname).read_text()
    except FileNotFoundError as e:
        raise ParseError(f"no bundled graph named {name!r}") from e
    return parse_graph_json(text)


def fixture_names():
    out = []
    for entry in resources.files("conformal_rigidity.data").iterdir():
        if entry.name.endswith(".json"):
            out.append(entry.name[:-5])
    return sorted(out)
