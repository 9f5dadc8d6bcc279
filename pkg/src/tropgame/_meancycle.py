"""Cycle means on small weighted digraphs.

Two independent evaluators are kept on purpose: Karp's algorithm on strongly
connected components (used by the solvers) and explicit enumeration of
simple cycles (used as a test oracle).
"""
from __future__ import annotations

from fractions import Fraction

from .semiring import BOTTOM


def _best_arcs(n, arcs, better):
    best = {}
    for u, v, w in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"arc {u}->{v} outside 0..{n - 1}")
        key = (u, v)
        if key not in best or better(w, best[key]):
            best[key] = w
    return best


def strongly_connected_components(n: int, succ) -> list:
    """Tarjan's algorithm, iterative.  Components come out sinks first."""
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    out = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            if pos < len(succ[v]):
                work[-1] = (v, pos + 1)
                w = succ[v][pos]
                if index[w] is None:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


def karp_max_mean(nodes, weight) -> Fraction:
    """Maximal cycle mean of a strongly connected graph with at least one arc.

    ``weight`` maps ``(u, v)`` pairs (over ``nodes``) to arc weights.
    """
    pos = {u: p for p, u in enumerate(nodes)}
    s = len(nodes)
    into = [[] for _ in range(s)]
    for (u, v), w in weight.items():
        into[pos[v]].append((pos[u], w))
    table = [[BOTTOM] * s for _ in range(s + 1)]
    table[0][0] = 0
    for k in range(1, s + 1):
        prev, cur = table[k - 1], table[k]
        for v in range(s):
            best = BOTTOM
            for u, w in into[v]:
                if prev[u] != BOTTOM and prev[u] + w > best:
                    best = prev[u] + w
            cur[v] = best
    result = None
    for v in range(s):
        dn = table[s][v]
        if dn == BOTTOM:
            continue
        worst = None
        for k in range(s):
            dk = table[k][v]
            if dk == BOTTOM:
                continue
            r = Fraction(dn - dk, s - k)
            if worst is None or r < worst:
                worst = r
        if worst is not None and (result is None or worst > result):
            result = worst
    if result is None:
        raise ValueError("graph has no cycle")
    return result


def max_reachable_mean(n: int, arcs) -> list:
    """For every node, the largest mean of a cycle reachable from it.

    ``arcs`` is an iterable of ``(u, v, weight)``.  Every node must reach a
    cycle (true when every node has an outgoing arc).
    """
    best = _best_arcs(n, arcs, lambda a, b: a > b)
    succ = [[] for _ in range(n)]
    for u, v in best:
        succ[u].append(v)
    for row in succ:
        row.sort()
    comps = strongly_connected_components(n, succ)
    comp_of = [0] * n
    for c, comp in enumerate(comps):
        for u in comp:
            comp_of[u] = c
    value = [None] * len(comps)
    for c, comp in enumerate(comps):
        inner = {(u, v): w for (u, v), w in best.items() if comp_of[u] == c and comp_of[v] == c}
        val = karp_max_mean(comp, inner) if inner else None
        for u in comp:
            for v in succ[u]:
                d = comp_of[v]
                if d != c and value[d] is not None and (val is None or value[d] > val):
                    val = value[d]
        if val is None:
            raise ValueError(f"node {comp[0]} reaches no cycle")
        value[c] = val
    return [value[comp_of[j]] for j in range(n)]


def min_reachable_mean(n: int, arcs) -> list:
    return [-x for x in max_reachable_mean(n, [(u, v, -w) for u, v, w in arcs])]


def simple_cycles(n: int, succ) -> list:
    """All simple cycles as node lists, each listed once from its least node."""
    cycles = []
    for start in range(n):
        path = [start]
        on_path = {start}
        iters = [iter(succ[start])]
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                iters.pop()
                on_path.discard(path.pop())
                continue
            if nxt == start:
                cycles.append(list(path))
            elif nxt > start and nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                iters.append(iter(succ[nxt]))
    return cycles


def enumerated_max_reachable_mean(n: int, arcs) -> list:
    """Same contract as :func:`max_reachable_mean`, by brute force."""
    best = _best_arcs(n, arcs, lambda a, b: a > b)
    succ = [sorted(v for (u, v) in best if u == x) for x in range(n)]
    means = []
    for cyc in simple_cycles(n, succ):
        total = sum(best[(cyc[p], cyc[(p + 1) % len(cyc)])] for p in range(len(cyc)))
        means.append((set(cyc), Fraction(total, len(cyc))))
    out = []
    for j in range(n):
        seen = {j}
        todo = [j]
        while todo:
            u = todo.pop()
            for v in succ[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        vals = [mu for nodes, mu in means if nodes & seen]
        if not vals:
            raise ValueError(f"node {j} reaches no cycle")
        out.append(max(vals))
    return out


def enumerated_min_reachable_mean(n: int, arcs) -> list:
    return [-x for x in enumerated_max_reachable_mean(n, [(u, v, -w) for u, v, w in arcs])]
