"""Simple labeled graphs and their matroid-side combinatorics: the cone
construction, flats as connected partitions, localization and contraction,
reduced characteristic polynomials, canonical forms for memoization, and
configuration-space Betti numbers.
"""

from __future__ import annotations

from fractions import Fraction

from .polyseries import Poly

CANON_BOUND = 12


class Graph:
    """Finite simple graph on vertices 0..n-1."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError("loops are not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge endpoint out of range")
            es.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = frozenset(es)

    def adjacency_masks(self) -> list:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph({self.n}, {sorted(self.edges)})"


class SetPartition:
    """Partition of a vertex set into disjoint nonempty blocks, stored in
    canonical order (blocks sorted by their minimum element)."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        bs = [tuple(sorted(int(v) for v in b)) for b in blocks]
        if any(not b for b in bs):
            raise ValueError("blocks must be nonempty")
        seen = set()
        for b in bs:
            for v in b:
                if v in seen:
                    raise ValueError("blocks must be disjoint")
                seen.add(v)
        bs.sort(key=lambda b: b[0])
        self.blocks = tuple(bs)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def support(self) -> set:
        return {v for b in self.blocks for v in b}

    def __eq__(self, other):
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"SetPartition({[list(b) for b in self.blocks]})"


def _mask_connected(mask: int, adj: list) -> bool:
    if mask == 0:
        return True
    start = (mask & -mask).bit_length() - 1
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            nxt |= adj[v] & mask
        frontier = nxt & ~seen
        seen |= nxt
    return seen & mask == mask


def is_connected(gamma: Graph) -> bool:
    if gamma.n <= 1:
        return True
    return _mask_connected((1 << gamma.n) - 1, gamma.adjacency_masks())


def components(gamma: Graph) -> list:
    """Vertex sets of the connected components, sorted by minimum element."""
    adj = gamma.adjacency_masks()
    left = set(range(gamma.n))
    comps = []
    while left:
        start = min(left)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            m = adj[v]
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(seen)))
        left -= seen
    return comps


def cone_extend(gamma: Graph, n: int) -> Graph:
    """Add n new vertices adjacent to everything (including each other)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = gamma.n + n
    edges = set(gamma.edges)
    for w in range(gamma.n, total):
        for u in range(total):
            if u != w:
                edges.add((min(u, w), max(u, w)))
    return Graph(total, edges)


def _set_partition_blocks(n: int):
    """All set partitions of range(n) in restricted-growth order; blocks
    come out sorted by minimum element."""
    blocks = []

    def rec(v):
        if v == n:
            yield [tuple(b) for b in blocks]
            return
        for b in blocks:
            b.append(v)
            yield from rec(v + 1)
            b.pop()
        blocks.append([v])
        yield from rec(v + 1)
        blocks.pop()

    if n == 0:
        yield []
    else:
        yield from rec(0)


def connected_partitions(gamma: Graph, num_blocks: int | None = None) -> list:
    """Vertex partitions of gamma whose blocks induce connected subgraphs
    (the flats of the graphic matroid), optionally filtered by block count."""
    adj = gamma.adjacency_masks()
    out = []
    for blocks in _set_partition_blocks(gamma.n):
        if num_blocks is not None and len(blocks) != num_blocks:
            continue
        ok = True
        for b in blocks:
            mask = 0
            for v in b:
                mask |= 1 << v
            if not _mask_connected(mask, adj):
                ok = False
                break
        if ok:
            out.append(SetPartition(blocks))
    return out


def localize(gamma: Graph, pi: SetPartition) -> list:
    """Induced subgraphs on the blocks of pi, each relabeled 0..|B|-1."""
    out = []
    for b in pi.blocks:
        index = {v: i for i, v in enumerate(b)}
        sub = Graph(
            len(b),
            [
                (index[u], index[v])
                for u, v in gamma.edges
                if u in index and v in index
            ],
        )
        if not is_connected(sub):
            raise ValueError(f"block {list(b)} is not connected: not a flat")
        out.append(sub)
    return out


def contract(gamma: Graph, pi: SetPartition) -> Graph:
    """Simple quotient graph on the blocks of pi (canonical block order)."""
    localize(gamma, pi)  # validates connectivity of every block
    owner = {}
    for i, b in enumerate(pi.blocks):
        for v in b:
            owner[v] = i
    if len(owner) != gamma.n:
        raise ValueError("partition does not cover the vertex set")
    edges = set()
    for u, v in gamma.edges:
        bu, bv = owner[u], owner[v]
        if bu != bv:
            edges.add((min(bu, bv), max(bu, bv)))
    return Graph(pi.num_blocks, edges)


def _perm_bits(gamma: Graph, perm: list) -> list:
    adj = gamma.adjacency_masks()
    bits = []
    for k in range(1, gamma.n):
        vk = perm[k]
        for i in range(k):
            bits.append(1 if adj[perm[i]] >> vk & 1 else 0)
    return bits


def _pack_key(tag: bytes, n: int, bits: list) -> bytes:
    acc = 1  # sentinel high bit keeps leading zeros
    for b in bits:
        acc = acc << 1 | b
    return tag + bytes([n]) + acc.to_bytes((acc.bit_length() + 7) // 8, "big")


def _twin_ids(gamma: Graph) -> list:
    # u, w are twins when swapping them is an automorphism: equal open
    # neighborhoods (non-adjacent) or equal closed neighborhoods (adjacent).
    adj = gamma.adjacency_masks()
    ids = list(range(gamma.n))
    for u in range(gamma.n):
        for w in range(u + 1, gamma.n):
            open_eq = adj[u] & ~(1 << w) == adj[w] & ~(1 << u)
            closed_eq = adj[u] | 1 << u == adj[w] | 1 << w
            if open_eq or closed_eq:
                ids[w] = min(ids[w], ids[u])
    return ids


def canonical_key(gamma: Graph) -> bytes:
    """Lexicographically minimal adjacency encoding over all relabelings;
    equal keys iff isomorphic.  Above CANON_BOUND vertices, falls back to
    the identity labeling (callers must then skip caching)."""
    n = gamma.n
    if n > CANON_BOUND:
        return _pack_key(b"R", n, _perm_bits(gamma, list(range(n))))
    if n <= 1 or gamma.is_complete() or not gamma.edges:
        return _pack_key(b"C", n, _perm_bits(gamma, list(range(n))))

    adj = gamma.adjacency_masks()
    twins = _twin_ids(gamma)
    degs = [m.bit_count() for m in adj]
    order = sorted(range(n), key=lambda v: (-degs[v], v))
    best: list | None = None
    placed: list = []
    cur: list = []

    def dfs(tight: bool) -> bool:
        nonlocal best
        k = len(placed)
        if k == n:
            if best is None or not tight:
                best = cur.copy()
                return True
            return False
        updated = False
        seen = set()
        for v in order:
            if v in placed:
                continue
            chunk = tuple(1 if adj[p] >> v & 1 else 0 for p in placed)
            profile = (chunk, twins[v])
            if profile in seen:
                continue
            seen.add(profile)
            child_tight = False
            if best is not None:
                ref = tuple(best[len(cur) : len(cur) + k])
                if tight:
                    if chunk > ref:
                        continue
                    child_tight = chunk == ref
            placed.append(v)
            cur.extend(chunk)
            if dfs(child_tight):
                updated = True
                tight = True
            placed.pop()
            del cur[len(cur) - k :]
        return updated

    dfs(False)
    assert best is not None
    return _pack_key(b"C", n, best)


_CHROMATIC_CACHE: dict = {}


def _poly_mul_int(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _falling_factorial_int(n: int) -> list:
    # t(t-1)...(t-n+1) as ascending int coefficients
    out = [1]
    for k in range(n):
        out = _poly_mul_int(out, [-k, 1])
    return out


def _delete_edge(g: Graph, e) -> Graph:
    return Graph(g.n, g.edges - {e})


def _add_edge(g: Graph, e) -> Graph:
    return Graph(g.n, set(g.edges) | {e})


def _contract_edge(g: Graph, e) -> Graph:
    u, v = e  # u < v; merge v into u, relabel above v down by one
    def relab(w):
        if w == v:
            return u
        return w - 1 if w > v else w
    edges = set()
    for a, b in g.edges:
        ra, rb = relab(a), relab(b)
        if ra != rb:
            edges.add((min(ra, rb), max(ra, rb)))
    return Graph(g.n - 1, edges)


def _chromatic_connected(g: Graph) -> tuple:
    if g.is_complete():
        return tuple(_falling_factorial_int(g.n))
    key = canonical_key(g)
    hit = _CHROMATIC_CACHE.get(key)
    if hit is not None:
        return hit
    full = g.n * (g.n - 1) // 2
    if len(g.edges) * 2 > full:
        # dense: recurse toward the complete graph via a non-edge
        e = next(
            (u, v)
            for u in range(g.n)
            for v in range(u + 1, g.n)
            if (u, v) not in g.edges
        )
        a = _chromatic(_add_edge(g, e))
        b = _chromatic(_contract_edge(g, e))
        out = [x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)]
    else:
        e = min(g.edges)
        a = _chromatic(_delete_edge(g, e))
        b = _chromatic(_contract_edge(g, e))
        out = [x - (b[i] if i < len(b) else 0) for i, x in enumerate(a)]
    out = tuple(out)
    if g.n <= CANON_BOUND:
        _CHROMATIC_CACHE[key] = out
    return out


def _chromatic(g: Graph) -> tuple:
    comps = components(g)
    if len(comps) == 1:
        return _chromatic_connected(g)
    acc = [1]
    for comp in comps:
        index = {v: i for i, v in enumerate(comp)}
        sub = Graph(
            len(comp),
            [
                (index[u], index[v])
                for u, v in g.edges
                if u in index and v in index
            ],
        )
        acc = _poly_mul_int(acc, list(_chromatic_connected(sub)))
    return tuple(acc)


def char_poly(gamma: Graph) -> Poly:
    """Reduced characteristic polynomial of the graphic matroid: the
    chromatic polynomial divided by t^(number of components).  Its degree
    equals the matroid rank."""
    if gamma.n == 0:
        return Poly([1], "t")
    chrom = _chromatic(gamma)
    ncomp = len(components(gamma))
    assert all(c == 0 for c in chrom[:ncomp]), "chromatic not divisible by t^c"
    return Poly([Fraction(c) for c in chrom[ncomp:]], "t")


def matroid_rank(gamma: Graph) -> int:
    return gamma.n - len(components(gamma))


def conf_betti(gamma: Graph, i: int) -> int:
    """dim H^i of the configuration space of gamma: the unsigned Whitney
    number |[t^(rank-i)] char_poly|."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    rank = matroid_rank(gamma)
    if i > rank:
        return 0
    cp = char_poly(gamma)
    c = cp.coeff(rank - i)
    assert c.denominator == 1
    return abs(c.numerator)


def load_graph(path: str) -> Graph:
    """Read a graph file: JSON {"n": int, "edges": [[u,v], ...]} or plain
    text lines "u v" (vertex count inferred as max label + 1)."""
    import json

    with open(path) as fh:
        text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        return Graph(int(data["n"]), [tuple(e) for e in data.get("edges", [])])
    edges = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(max(n, 0), edges)
