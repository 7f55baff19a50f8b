"""Exact minimum-weight perfect matching on general graphs.

The solver is a primal-dual blossom algorithm (Edmonds' shrinking with the
classic O(V^3) stage structure).  It maximizes weight in max-cardinality
mode on the negated weights, which yields the minimum-weight perfect
matching whenever one exists; missing edges are padded with a strongly
negative sentinel so that a "perfect" matching through a sentinel edge is
exactly the witness that no true perfect matching exists.

Weights are scaled to 64-bit integers whenever every input weight is a
decimal with at most nine fractional digits, so matchings on instance
weights are computed in exact arithmetic.  Other inputs fall back to
floating point with a relative tie tolerance of 1e-12.

The implementation keeps a dense weight matrix and performs the hot
per-vertex scans (slack rows, best-edge tracking for dual updates) as
vectorized numpy operations; blossom bookkeeping stays in plain Python.
Duals follow the doubled convention: vertex duals are stored as 2*y so all
dual adjustments stay integral for integer weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class MatchingError(ValueError):
    pass


class OddVertexCount(MatchingError):
    """Perfect matchings require an even number of vertices."""


class NoPerfectMatching(MatchingError):
    """The graph admits no perfect matching."""


@dataclass(frozen=True)
class MatchingProblem:
    """A weighted undirected graph; weights may be negative."""

    vertex_count: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "edges",
            tuple((int(u), int(v), float(w)) for u, v, w in self.edges),
        )
        for u, v, w in self.edges:
            if u == v:
                raise MatchingError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise MatchingError(f"edge ({u}, {v}) out of range")
            if not np.isfinite(w):
                raise MatchingError("edge weights must be finite")


@dataclass(frozen=True)
class Matching:
    """A perfect matching: member edge indices and their total weight."""

    matched_edges: frozenset[int]
    total_weight: float
    mate: tuple[int, ...]


def scale_to_int(values, max_digits: int = 9):
    """Return (int64 array, 10**digits) if all values are short decimals.

    Tries scales 10**0 .. 10**max_digits and accepts the first one under
    which every value is (numerically) an integer.  Returns None when the
    inputs are not decimal-representable at that precision.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return np.zeros(0, dtype=np.int64), 1
    if not np.all(np.isfinite(arr)):
        return None
    for digits in range(max_digits + 1):
        scale = 10**digits
        scaled = arr * scale
        rounded = np.rint(scaled)
        # a true decimal leaves only float64 representation error (~1e-16
        # relative); anything larger means the value is not this decimal
        tol = 1e-12 * np.maximum(1.0, np.abs(scaled))
        if np.all(np.abs(scaled - rounded) <= tol):
            if np.max(np.abs(rounded)) < 2**52:
                return rounded.astype(np.int64), scale
            return None
    return None


def min_weight_perfect_matching(problem: MatchingProblem) -> Matching:
    """Exact minimum-weight perfect matching.

    Raises OddVertexCount for odd vertex counts and NoPerfectMatching when
    the graph has none.  Among co-optimal matchings the result is
    deterministic (fixed scan order); only the total weight is contractual.
    """
    n = problem.vertex_count
    if n <= 0:
        raise MatchingError("vertex_count must be positive")
    if n % 2 != 0:
        raise OddVertexCount(f"vertex_count {n} is odd")

    # Pick one representative per vertex pair: minimum weight, then lowest
    # edge index, so parallel inputs behave deterministically.
    weights = np.array([w for _, _, w in problem.edges], dtype=float)
    rep: dict[tuple[int, int], int] = {}
    for k, (u, v, w) in enumerate(problem.edges):
        key = (u, v) if u < v else (v, u)
        j = rep.get(key)
        if j is None or w < problem.edges[j][2]:
            rep[key] = k

    scaled = scale_to_int(weights)
    if scaled is not None:
        wint, scale = scaled
        solver = _DenseBlossom(n, integer=True)
        for key, k in rep.items():
            solver.add_edge(key[0], key[1], -int(wint[k]))
    else:
        solver = _DenseBlossom(n, integer=False)
        for key, k in rep.items():
            solver.add_edge(key[0], key[1], -float(weights[k]))

    mate = solver.solve()
    matched = []
    for v in range(n):
        u = mate[v]
        if u < 0:
            raise NoPerfectMatching("maximum matching is not perfect")
        if v < u:
            if not solver.is_real_edge(v, u):
                raise NoPerfectMatching("no perfect matching exists")
            matched.append(rep[(v, u)])
    total = float(weights[matched].sum()) if matched else 0.0
    return Matching(
        matched_edges=frozenset(matched),
        total_weight=total,
        mate=tuple(int(m) for m in mate),
    )


class _DenseBlossom:
    """Max-weight matching in max-cardinality mode on a dense matrix.

    Vertex ids 0..n-1; blossom ids n..2n-1.  Missing edges hold a strongly
    negative sentinel weight, which max-cardinality mode will only match
    when no real perfect matching exists.
    """

    def __init__(self, n: int, integer: bool):
        self.n = n
        self.integer = integer
        if integer:
            self.dtype = np.int64
            self.NONEDGE = -(2**44)
            self.INF = 2**62
        else:
            self.dtype = np.float64
            self.NONEDGE = -1e18
            self.INF = np.inf
        # W2 holds doubled weights so slacks stay integral.
        self.W2 = np.full((n, n), 2 * self.NONEDGE, dtype=self.dtype)
        self.real = np.zeros((n, n), dtype=bool)

    def add_edge(self, u: int, v: int, w):
        self.W2[u, v] = self.W2[v, u] = 2 * w
        self.real[u, v] = self.real[v, u] = True

    def is_real_edge(self, u: int, v: int) -> bool:
        return bool(self.real[u, v])

    # -- solver state ---------------------------------------------------

    def _init_state(self):
        n = self.n
        if self.integer:
            maxw = max(0, int(self.W2.max()) // 2) if n else 0
            self.tol = 0
        else:
            realw = self.W2[self.real]
            maxw = max(0.0, float(realw.max()) / 2.0) if realw.size else 0.0
            self.tol = 1e-12 * max(1.0, float(np.abs(self.W2[self.real]).max()) if realw.size else 1.0)
        self.y = np.zeros(2 * n, dtype=self.dtype)
        self.y[:n] = maxw
        self.mate = np.full(n, -1, dtype=np.int64)
        self.label = np.zeros(2 * n, dtype=np.int8)
        self.labeledge: list = [None] * (2 * n)
        self.inblossom = np.arange(n, dtype=np.int64)
        self.parent = np.full(2 * n, -1, dtype=np.int64)
        self.base = np.full(2 * n, -1, dtype=np.int64)
        self.base[:n] = np.arange(n)
        self.childs: list = [None] * (2 * n)
        self.cycedges: list = [None] * (2 * n)
        self.free_ids = list(range(2 * n - 1, n - 1, -1))
        self.active_blossoms: set[int] = set()
        self.vlabel = np.zeros(n, dtype=np.int8)
        self.s2val = np.full(n, self.INF, dtype=self.dtype if self.integer else np.float64)
        self.s2arg = np.full(n, -1, dtype=np.int64)
        self.queue: list[int] = []
        self.allowed: set[tuple[int, int]] = set()

    def _leaves(self, b: int):
        if b < self.n:
            return [b]
        out = []
        stack = [b]
        while stack:
            t = stack.pop()
            if t < self.n:
                out.append(t)
            else:
                stack.extend(self.childs[t])
        return out

    def _slack_row(self, v: int):
        return self.y[v] + self.y[: self.n] - self.W2[v]

    def _slack(self, u: int, v: int):
        return self.y[u] + self.y[v] - self.W2[u, v]

    # -- labeling -------------------------------------------------------

    def _assign_label(self, w: int, t: int, edge):
        b = int(self.inblossom[w])
        assert self.label[b] == 0 and self.label[w] == 0
        self.label[w] = self.label[b] = t
        self.labeledge[w] = self.labeledge[b] = edge
        leaves = self._leaves(b)
        self.vlabel[leaves] = t
        if t == 1:
            self.queue.extend(leaves)
        else:
            bb = int(self.base[b])
            m = int(self.mate[bb])
            assert m >= 0
            self._assign_label(m, 1, (bb, m))

    def _scan_blossom(self, v: int, w: int) -> int:
        """Common base of the trees of v and w, or -1 for distinct trees."""
        marked = []
        found = -1
        vv, ww = v, w
        while vv != -1 or ww != -1:
            if vv != -1:
                b = int(self.inblossom[vv])
                if self.label[b] & 4:
                    found = int(self.base[b])
                    break
                assert self.label[b] & 3 == 1
                marked.append(b)
                self.label[b] |= 4
                if self.labeledge[b] is None:
                    vv = -1  # tree root
                else:
                    far = self.labeledge[b][0]
                    bt = int(self.inblossom[far])
                    assert self.label[bt] & 3 == 2
                    vv = self.labeledge[bt][0]
            if ww != -1:
                vv, ww = ww, vv
        for b in marked:
            self.label[b] &= ~4
        return found

    # -- blossom surgery ------------------------------------------------

    def _add_blossom(self, base_vertex: int, v: int, w: int):
        bb = int(self.inblossom[base_vertex])
        bv = int(self.inblossom[v])
        bw = int(self.inblossom[w])
        b = self.free_ids.pop()

        def chain_up(btop):
            out = []
            while btop != bb:
                edge = self.labeledge[btop]
                out.append((btop, edge))
                btop = int(self.inblossom[edge[0]])
            return out

        cv = chain_up(bv)
        cw = chain_up(bw)
        childs = [bb]
        cyc = []
        for bl, (far, near) in reversed(cv):
            childs.append(bl)
            cyc.append((far, near))
        cyc.append((v, w))
        for bl, (far, near) in cw:
            childs.append(bl)
            cyc.append((near, far))
        assert len(childs) % 2 == 1

        self.base[b] = base_vertex
        self.parent[b] = -1
        self.childs[b] = childs
        self.cycedges[b] = cyc
        self.label[b] = 1
        self.labeledge[b] = self.labeledge[bb]
        self.y[b] = 0
        self.active_blossoms.add(b)
        for s in childs:
            self.parent[s] = b
        for leaf in self._leaves(b):
            if self.label[self.inblossom[leaf]] == 2:
                # former T-vertex becomes S; it must be scanned
                self.queue.append(leaf)
            self.inblossom[leaf] = b
            self.vlabel[leaf] = 1

    def _expand_blossom(self, b: int, endstage: bool):
        childs = self.childs[b]
        cyc = self.cycedges[b]
        for s in childs:
            self.parent[s] = -1
            if s < self.n:
                self.inblossom[s] = s
            elif endstage and self.y[s] == 0:
                self._expand_blossom(s, True)
            else:
                for leaf in self._leaves(s):
                    self.inblossom[leaf] = s
        if not endstage:
            for s in childs:
                if s >= self.n:
                    self.label[s] = 0
                    self.labeledge[s] = None
        if (not endstage) and self.label[b] == 2:
            self._relabel_expanded(b, childs, cyc)
        self.label[b] = 0
        self.labeledge[b] = None
        self.childs[b] = None
        self.cycedges[b] = None
        self.base[b] = -1
        self.active_blossoms.discard(b)
        self.free_ids.append(b)

    def _relabel_expanded(self, b: int, childs: list, cyc: list):
        """After expanding a T-blossom mid-stage, restore tree labels.

        The alternating path from the entry vertex to the blossom base runs
        along the even side of the odd cycle; children on it alternate T/S.
        Children off the path become free unless an earlier tight edge left
        a vertex-level T mark to relabel them through.
        """
        far0, near0 = self.labeledge[b]
        L = len(childs)
        entry = int(self.inblossom[near0])
        j = childs.index(entry)
        step = 1 if j % 2 == 1 else -1
        p = (far0, near0)
        jj = j
        # reset labels of path children so _assign_label sees a clean slate
        for s in childs:
            self.vlabel[self._leaves(s)] = 0
        while jj != 0:
            # T-label the child containing p[1]; auto-labels its partner S
            self.label[p[1]] = 0
            bchild = int(self.inblossom[p[1]])
            partner = int(self.mate[self.base[bchild]])
            if partner >= 0:
                self.label[partner] = 0
            self._assign_label(p[1], 2, p)
            if step == 1:
                self._mark_allowed(*cyc[jj])
                jj += 1
                a, c = cyc[jj]
                self._mark_allowed(a, c)
                p = (a, c)
                jj += 1
                if jj == L:
                    jj = 0
            else:
                self._mark_allowed(*cyc[jj - 1])
                jj -= 1
                a, c = cyc[jj - 1]
                self._mark_allowed(a, c)
                p = (c, a)
                jj -= 1
        # base child: T label without stepping to its (external) mate
        bv = int(self.inblossom[p[1]])
        self.label[bv] = 2
        self.label[p[1]] = 2
        self.labeledge[bv] = p
        self.labeledge[p[1]] = p
        self.vlabel[self._leaves(bv)] = 2
        # walk the off-path side: free, unless a vertex-level T mark exists
        jj = 0 + step
        cur = childs[jj % L]
        while cur != entry:
            if self.label[cur] == 1:
                jj += step
                cur = childs[jj % L]
                continue
            marked_vertex = -1
            for leaf in self._leaves(cur):
                if self.label[leaf] != 0:
                    marked_vertex = leaf
                    break
            if marked_vertex >= 0:
                assert self.label[marked_vertex] == 2
                self.label[marked_vertex] = 0
                self.label[int(self.mate[self.base[cur]])] = 0
                self._assign_label(marked_vertex, 2, self.labeledge[marked_vertex])
            jj += step
            cur = childs[jj % L]

    # -- augmenting -----------------------------------------------------

    def _augment_blossom(self, b: int, v: int):
        t = v
        while self.parent[t] != b:
            t = int(self.parent[t])
        if t >= self.n:
            self._augment_blossom(t, v)
        ch = self.childs[b]
        ce = self.cycedges[b]
        L = len(ch)
        i = ch.index(t)
        if i % 2 == 0:
            pairs = range(i - 2, -1, -2)
        else:
            pairs = range(i + 1, L, 2)
        for j in pairs:
            a, c = ce[j]
            if ch[j] >= self.n:
                self._augment_blossom(ch[j], a)
            nxt = ch[(j + 1) % L]
            if nxt >= self.n:
                self._augment_blossom(nxt, c)
            self.mate[a] = c
            self.mate[c] = a
        self.childs[b] = ch[i:] + ch[:i]
        self.cycedges[b] = ce[i:] + ce[:i]
        self.base[b] = v if t < self.n else self.base[t]

    def _augment_matching(self, v: int, w: int):
        for s, p in ((v, w), (w, v)):
            while True:
                bs = int(self.inblossom[s])
                assert self.label[bs] == 1
                if bs >= self.n:
                    self._augment_blossom(bs, s)
                self.mate[s] = p
                if self.labeledge[bs] is None:
                    break
                t = self.labeledge[bs][0]
                bt = int(self.inblossom[t])
                assert self.label[bt] == 2
                far, near = self.labeledge[bt]
                if bt >= self.n:
                    self._augment_blossom(bt, near)
                self.mate[near] = far
                s, p = far, near

    # -- dual machinery ---------------------------------------------------

    def _mark_allowed(self, u: int, v: int):
        self.allowed.add((u, v) if u < v else (v, u))

    def _scan_vertex(self, v: int) -> bool:
        """Process tight edges at S-vertex v. Returns True on augmentation."""
        n = self.n
        row = self._slack_row(v)
        s2row = self.y[v] - self.W2[v]
        improved = s2row < self.s2val
        if improved.any():
            self.s2val[improved] = s2row[improved]
            self.s2arg[improved] = v
        tight = np.flatnonzero(row <= self.tol)
        cand = list(tight)
        if self.allowed:
            for (a, c) in self.allowed:
                if a == v and row[c] > self.tol:
                    cand.append(c)
                elif c == v and row[a] > self.tol:
                    cand.append(a)
        for w in cand:
            w = int(w)
            if w == v or self.inblossom[w] == self.inblossom[v]:
                continue
            bw = int(self.inblossom[w])
            lb = self.label[bw] & 3
            if lb == 0:
                self._assign_label(w, 2, (v, w))
            elif lb == 1:
                bse = self._scan_blossom(v, w)
                if bse >= 0:
                    self._add_blossom(bse, v, w)
                else:
                    self._augment_matching(v, w)
                    return True
            elif self.label[w] == 0:
                self.label[w] = 2
                self.labeledge[w] = (v, w)
        return False

    def _delta3(self):
        """Min half-slack over S-S edges between different top blossoms."""
        sv = np.flatnonzero(self.vlabel == 1)
        if sv.size < 2:
            return None, None
        cand = self.s2val[sv] + self.y[sv]
        args = self.s2arg[sv]
        has = args >= 0
        if not has.any():
            return None, None
        tops = self.inblossom[sv]
        argtops = np.where(has, self.inblossom[np.maximum(args, 0)], -1)
        valid = has & (argtops != tops)
        best_val = None
        best_pair = None
        if valid.any():
            i = int(np.argmin(np.where(valid, cand, self.INF)))
            best_val = cand[i]
            best_pair = (int(args[i]), int(sv[i]))
        # vertices whose stored best partner sits in their own blossom may
        # hide a valid cross-blossom edge at larger slack
        invalid = np.flatnonzero(has & ~valid)
        if invalid.size:
            if invalid.size <= 16:
                for ii in invalid:
                    w = int(sv[ii])
                    rw = self.y[w] + self.y[sv] - self.W2[w, sv]
                    rw = np.where(self.inblossom[sv] == self.inblossom[w], self.INF, rw)
                    k = int(np.argmin(rw))
                    if rw[k] < (self.INF if best_val is None else best_val):
                        best_val = rw[k]
                        best_pair = (int(sv[k]), w)
            else:
                sub = self.y[sv, None] + self.y[None, sv] - self.W2[np.ix_(sv, sv)]
                same = tops[:, None] == tops[None, :]
                sub = np.where(same, self.INF, sub)
                k = int(np.argmin(sub))
                r, c = divmod(k, sv.size)
                if sub[r, c] < (self.INF if best_val is None else best_val):
                    best_val = sub[r, c]
                    best_pair = (int(sv[r]), int(sv[c]))
        if best_val is None or best_val >= self.INF:
            return None, None
        half = best_val // 2 if self.integer else best_val / 2
        return half, best_pair

    def solve(self):
        self._init_state()
        n = self.n
        while True:
            # new stage
            self.label[:] = 0
            self.labeledge = [None] * (2 * n)
            self.vlabel[:] = 0
            self.s2val[:] = self.INF
            self.s2arg[:] = -1
            self.queue = []
            self.allowed = set()
            free = [v for v in range(n) if self.mate[v] == -1]
            if not free:
                return self.mate
            for v in free:
                if self.label[self.inblossom[v]] == 0:
                    self._assign_label(v, 1, None)
            augmented = False
            while True:
                while self.queue and not augmented:
                    v = self.queue.pop()
                    augmented = self._scan_vertex(v)
                if augmented:
                    break
                # dual update
                delta = None
                dtype_ = -1
                d_edge = None
                d_blossom = None
                freemask = self.vlabel == 0
                if freemask.any():
                    cand2 = np.where(freemask, self.s2val + self.y[:n], self.INF)
                    i = int(np.argmin(cand2))
                    if cand2[i] < self.INF and self.s2arg[i] >= 0:
                        delta = cand2[i]
                        dtype_ = 2
                        d_edge = (int(self.s2arg[i]), i)
                d3, pair3 = self._delta3()
                if d3 is not None and (delta is None or d3 < delta):
                    delta = d3
                    dtype_ = 3
                    d_edge = pair3
                for b in self.active_blossoms:
                    if self.parent[b] == -1 and self.label[b] & 3 == 2:
                        if delta is None or self.y[b] < delta:
                            delta = self.y[b]
                            dtype_ = 4
                            d_blossom = b
                if delta is None:
                    # no way to grow any tree: matching has maximum cardinality
                    return self.mate
                if not self.integer:
                    delta = max(delta, 0.0)
                self.y[:n][self.vlabel == 1] -= delta
                self.y[:n][self.vlabel == 2] += delta
                self.s2val -= delta
                for b in self.active_blossoms:
                    if self.parent[b] == -1:
                        lb = self.label[b] & 3
                        if lb == 1:
                            self.y[b] += delta
                        elif lb == 2:
                            self.y[b] -= delta
                if dtype_ == 2:
                    u, w = d_edge
                    self._mark_allowed(u, w)
                    self.queue.append(u)
                elif dtype_ == 3:
                    u, w = d_edge
                    self._mark_allowed(u, w)
                    self.queue.append(u)
                elif dtype_ == 4:
                    self._expand_blossom(d_blossom, endstage=False)
            # stage ended with augmentation
            for b in list(self.active_blossoms):
                if (
                    self.parent[b] == -1
                    and self.base[b] >= 0
                    and self.label[b] & 3 == 1
                    and self.y[b] == 0
                ):
                    self._expand_blossom(b, endstage=True)
