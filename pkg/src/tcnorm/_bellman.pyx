# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled negative-cycle search (Bellman-Ford with a virtual source).

Mirrors ``tcnorm._bellman_py`` exactly: same relaxation order, same cycle
extraction, so both return identical results.
"""


def negative_cycle(Py_ssize_t n, long long[::1] tails, long long[::1] heads, long long[::1] costs):
    cdef Py_ssize_t m = tails.shape[0]
    cdef Py_ssize_t i, a, t, h, x = -1
    cdef long long nd
    cdef bint changed
    cdef long long[::1] dist
    cdef long long[::1] pred

    import array
    dist_arr = array.array("q", bytes(8 * n))
    pred_arr = array.array("q", [-1]) * n
    dist = dist_arr
    pred = pred_arr

    for i in range(n):
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
            return None, list(dist_arr)

    for i in range(n):
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
    return cycle, list(dist_arr)
