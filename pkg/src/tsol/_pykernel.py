"""Pure-Python kernels for the exponential subset recursions.

Mirrors tsol._kernel bit for bit: same traversal orders, same statistics
counting, so results and witnesses are identical across backends.  Masks
are Python ints, so this backend has no alternative-count cap.
"""

from __future__ import annotations

from typing import Sequence

NAME = "python"


def _transpose(rows: Sequence[int], n: int) -> list[int]:
    cols = [0] * n
    for b in range(n):
        m = rows[b]
        while m:
            low = m & -m
            cols[low.bit_length() - 1] |= 1 << b
            m &= m - 1
    return cols


def _tarjan(carrier: int, out: dict[int, int]) -> tuple[dict[int, int], int]:
    """Strongly connected components of the carrier under ``out`` adjacency."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    comp: dict[int, int] = {}
    stack: list[int] = []
    onstack = 0
    counter = 0
    ncomp = 0
    roots = carrier
    while roots:
        root = (roots & -roots).bit_length() - 1
        roots &= roots - 1
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack |= 1 << root
        frames = [[root, out.get(root, 0) & carrier]]
        while frames:
            frame = frames[-1]
            v = frame[0]
            m = frame[1]
            advanced = False
            while m:
                wlow = m & -m
                w = wlow.bit_length() - 1
                m &= m - 1
                if w not in index:
                    frame[1] = m
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack |= 1 << w
                    frames.append([w, out.get(w, 0) & carrier])
                    advanced = True
                    break
                if onstack >> w & 1 and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            frames.pop()
            if frames:
                p = frames[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack &= ~(1 << w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp, ncomp


def _out_edges(carrier: int, in_edges) -> dict[int, int]:
    out: dict[int, int] = {}
    m = carrier
    while m:
        a = (m & -m).bit_length() - 1
        m &= m - 1
        e = in_edges[a] & carrier
        while e:
            b = (e & -e).bit_length() - 1
            e &= e - 1
            out[b] = out.get(b, 0) | (1 << a)
    return out


def top_cycle_masks(carrier: int, in_edges) -> int:
    """Union of the source components of the condensation.

    ``in_edges[a]`` holds the mask of b with an edge b -> a; works with a
    list indexed by alternative or a dict.
    """
    comp, ncomp = _tarjan(carrier, _out_edges(carrier, in_edges))
    incoming = [False] * ncomp
    m = carrier
    while m:
        a = (m & -m).bit_length() - 1
        m &= m - 1
        ca = comp[a]
        e = in_edges[a] & carrier
        while e:
            b = (e & -e).bit_length() - 1
            e &= e - 1
            if comp[b] != ca:
                incoming[ca] = True
    res = 0
    m = carrier
    while m:
        low = m & -m
        a = low.bit_length() - 1
        m &= m - 1
        if not incoming[comp[a]]:
            res |= low
    return res


def scc_count_masks(carrier: int, in_edges) -> int:
    """Number of strongly connected components of the relation."""
    _, ncomp = _tarjan(carrier, _out_edges(carrier, in_edges))
    return ncomp


# --- tournament equilibrium set ----------------------------------------------


def teq_exact_masks(
    rows: Sequence[int], x_mask: int, use_cache: bool = True
) -> tuple[int, list[int], int, int]:
    """Exact recursive TEQ on the carrier ``x_mask``.

    Returns ``(teq_mask, in_edges, calls, subsets)`` where ``in_edges[a]``
    is the mask of TEQ-dominators of ``a`` within the carrier, ``calls``
    counts solver entries on nonempty sets (cache hits included) and
    ``subsets`` counts sets actually evaluated (cache misses).
    """
    n = len(rows)
    if x_mask == 0:
        raise ValueError("empty carrier")
    cols = _transpose(rows, n)
    memo: dict[int, int] = {}
    stats = [0, 0]  # calls, computed

    def solve(mask: int) -> int:
        stats[0] += 1
        if use_cache:
            hit = memo.get(mask)
            if hit is not None:
                return hit
        stats[1] += 1
        in_e: dict[int, int] = {}
        m = mask
        while m:
            a = (m & -m).bit_length() - 1
            m &= m - 1
            sub = cols[a] & mask
            in_e[a] = solve(sub) if sub else 0
        res = top_cycle_masks(mask, in_e)
        if use_cache:
            memo[mask] = res
        return res

    # top level inlined so the carrier's in-edges can be reported
    stats[0] += 1
    stats[1] += 1
    in_edges = [0] * n
    m = x_mask
    while m:
        a = (m & -m).bit_length() - 1
        m &= m - 1
        sub = cols[a] & x_mask
        in_edges[a] = solve(sub) if sub else 0
    teq = top_cycle_masks(x_mask, in_edges)
    if use_cache:
        memo[x_mask] = teq
    return teq, in_edges, stats[0], stats[1]


def teq_heuristic_masks(
    rows: Sequence[int], x_mask: int, inner_exact: bool = False
) -> tuple[int, int, list[int], int, int, int]:
    """Iterative-deepening TEQ heuristic seeded with minimal dominator sets.

    Returns ``(teq_mask, base_mask, in_edges, calls, subsets, iterations)``
    where ``base_mask`` is the explored base set and ``iterations`` the
    outer loop count of the top-level procedure.
    """
    n = len(rows)
    if x_mask == 0:
        raise ValueError("empty carrier")
    cols = _transpose(rows, n)
    hmemo: dict[int, int] = {}
    ememo: dict[int, int] = {}
    stats = [0, 0]  # calls, computed

    def solve_exact(mask: int) -> int:
        stats[0] += 1
        hit = ememo.get(mask)
        if hit is not None:
            return hit
        stats[1] += 1
        in_e: dict[int, int] = {}
        m = mask
        while m:
            a = (m & -m).bit_length() - 1
            m &= m - 1
            sub = cols[a] & mask
            in_e[a] = solve_exact(sub) if sub else 0
        res = top_cycle_masks(mask, in_e)
        ememo[mask] = res
        return res

    def proc(mask: int, capture: dict | None) -> int:
        stats[0] += 1
        if capture is None:
            hit = hmemo.get(mask)
            if hit is not None:
                return hit
        stats[1] += 1
        # seed with the alternatives whose dominator sets are smallest
        best = -1
        seed = 0
        m = mask
        while m:
            low = m & -m
            a = low.bit_length() - 1
            m &= m - 1
            k = (cols[a] & mask).bit_count()
            if best < 0 or k < best:
                best = k
                seed = low
            elif k == best:
                seed |= low
        base = seed
        cur = seed
        in_e: dict[int, int] = {}
        iterations = 0
        while True:
            iterations += 1
            found = 0
            m = cur
            while m:
                a = (m & -m).bit_length() - 1
                m &= m - 1
                sub = cols[a] & mask
                if sub:
                    ta = solve_exact(sub) if inner_exact else proc(sub, None)
                else:
                    ta = 0
                in_e[a] = in_e.get(a, 0) | ta
                found |= ta
            if found & ~base == 0:
                restricted = {a: in_e.get(a, 0) & base for a in _mask_iter(base)}
                res = top_cycle_masks(base, restricted)
                break
            cur = found
            base |= found
        hmemo[mask] = res
        if capture is not None:
            capture["base"] = base
            capture["in_edges"] = in_e
            capture["iterations"] = iterations
        return res

    capture: dict = {}
    teq = proc(x_mask, capture)
    in_edges = [0] * n
    for a, e in capture["in_edges"].items():
        in_edges[a] = e
    return (
        teq,
        capture["base"],
        in_edges,
        stats[0],
        stats[1],
        capture["iterations"],
    )


def _mask_iter(mask: int):
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


# --- Banks set ----------------------------------------------------------------


def banks_member_masks(
    rows: Sequence[int], x_mask: int, a: int
) -> tuple[int, ...] | None:
    """Chain witness for Banks membership of ``a`` within the carrier.

    Depth-first search over dominance-decreasing chains headed by ``a``;
    succeeds on the first chain no outside alternative dominates entirely.
    """
    n = len(rows)
    if not x_mask >> a & 1:
        raise ValueError("queried alternative not in the carrier")
    cols = _transpose(rows, n)
    chain = [a]

    def dfs(pool: int, doms: int) -> bool:
        if doms == 0:
            return True
        m = doms
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if pool & cols[v] == 0:
                # v dominates the chain and everything that could extend it
                return False
        cands = sorted(_mask_iter(pool), key=lambda u: (-(rows[u] & pool).bit_count(), u))
        for u in cands:
            chain.append(u)
            if dfs(pool & rows[u], doms & cols[u]):
                return True
            chain.pop()
        return False

    if dfs(rows[a] & x_mask, cols[a] & x_mask):
        return tuple(chain)
    return None


def banks_set_masks(rows: Sequence[int], x_mask: int) -> int:
    if x_mask == 0:
        raise ValueError("empty carrier")
    res = 0
    m = x_mask
    while m:
        low = m & -m
        a = low.bit_length() - 1
        m &= m - 1
        if banks_member_masks(rows, x_mask, a) is not None:
            res |= low
    return res
