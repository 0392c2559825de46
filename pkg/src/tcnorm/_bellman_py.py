"""Pure-Python negative-cycle search, used when the compiled kernel is absent."""


def negative_cycle(n, tails, heads, costs):
    """Find a negative-cost cycle in a directed graph with integer arc costs.

    Every vertex starts at distance 0 (a virtual source joined to all of
    them). Returns ``(cycle, dist)``: ``cycle`` lists arc indices in walking
    order, or is ``None`` when no negative cycle exists, in which case
    ``dist`` are shortest-path distances (a feasible potential).
    """
    m = len(tails)
    dist = [0] * n
    pred = [-1] * n
    x = -1
    for _ in range(n):
        changed = False
        for a in range(m):
            t = tails[a]
            h = heads[a]
            nd = dist[t] + costs[a]
            if nd < dist[h]:
                dist[h] = nd
                pred[h] = a
                changed = True
                x = h
        if not changed:
            return None, dist

    # n steps back along predecessors is guaranteed to land on the cycle
    for _ in range(n):
        x = tails[pred[x]]
    cycle = []
    t = x
    while True:
        a = pred[t]
        cycle.append(a)
        t = tails[a]
        if t == x:
            break
    cycle.reverse()
    return cycle, dist
