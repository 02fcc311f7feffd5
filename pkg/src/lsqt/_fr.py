"""Force-simulation kernels for the spring layout.

The jitted kernel runs the whole iteration loop: repulsion (exact all-pairs
below the Barnes-Hut threshold, quadtree-approximated above it), spring
attraction along backbone edges, displacement capped by a linearly cooling
temperature. Everything is single-threaded and iteration order is fixed, so
results are reproducible for a given seed and machine.

When numba is unavailable the pure-numpy exact fallback is used for any
size (slow but correct above the threshold).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def _fr_loop(pos, ea, eb, iters, k, t0, theta, bh_threshold):  # pragma: no cover
    n = pos.shape[0]
    disp = np.zeros((n, 2))
    eps = 1e-12
    k2 = k * k
    use_bh = n > bh_threshold
    # quadtree storage (only touched in BH mode)
    cap = 8 * n + 64
    child = np.full((cap, 4), -1, np.int32)
    par = np.full(cap, -1, np.int32)
    ccx = np.zeros(cap)
    ccy = np.zeros(cap)
    half = np.zeros(cap)
    lsx = np.zeros(cap)
    lsy = np.zeros(cap)
    lcnt = np.zeros(cap, np.int32)
    mass = np.zeros(cap)
    comx = np.zeros(cap)
    comy = np.zeros(cap)
    stack = np.empty(cap, np.int32)
    for it in range(iters):
        t = t0 * (1.0 - it / iters)
        for i in range(n):
            disp[i, 0] = 0.0
            disp[i, 1] = 0.0
        if use_bh:
            xmin = pos[0, 0]
            xmax = pos[0, 0]
            ymin = pos[0, 1]
            ymax = pos[0, 1]
            for i in range(1, n):
                if pos[i, 0] < xmin:
                    xmin = pos[i, 0]
                if pos[i, 0] > xmax:
                    xmax = pos[i, 0]
                if pos[i, 1] < ymin:
                    ymin = pos[i, 1]
                if pos[i, 1] > ymax:
                    ymax = pos[i, 1]
            nnodes = 1
            for q in range(4):
                child[0, q] = -1
            par[0] = -1
            ccx[0] = 0.5 * (xmin + xmax)
            ccy[0] = 0.5 * (ymin + ymax)
            half[0] = 0.5 * max(xmax - xmin, ymax - ymin) + eps
            lsx[0] = 0.0
            lsy[0] = 0.0
            lcnt[0] = 0
            for p in range(n):
                px = pos[p, 0]
                py = pos[p, 1]
                node = 0
                depth = 0
                while True:
                    if lcnt[node] > 0 and depth >= 48:
                        # depth cap: merge near-coincident points
                        lsx[node] += px
                        lsy[node] += py
                        lcnt[node] += 1
                        break
                    if lcnt[node] > 0:
                        # occupied leaf: push its aggregate one level down
                        ox = lsx[node] / lcnt[node]
                        oy = lsy[node] / lcnt[node]
                        oq = 0
                        if ox >= ccx[node]:
                            oq += 1
                        if oy >= ccy[node]:
                            oq += 2
                        c = nnodes
                        nnodes += 1
                        for q in range(4):
                            child[c, q] = -1
                        par[c] = node
                        hh = 0.5 * half[node]
                        ccx[c] = ccx[node] + (hh if oq & 1 else -hh)
                        ccy[c] = ccy[node] + (hh if oq & 2 else -hh)
                        half[c] = hh
                        lsx[c] = lsx[node]
                        lsy[c] = lsy[node]
                        lcnt[c] = lcnt[node]
                        child[node, oq] = c
                        lsx[node] = 0.0
                        lsy[node] = 0.0
                        lcnt[node] = 0
                        continue
                    q = 0
                    if px >= ccx[node]:
                        q += 1
                    if py >= ccy[node]:
                        q += 2
                    c = child[node, q]
                    if c < 0:
                        c = nnodes
                        nnodes += 1
                        for qq in range(4):
                            child[c, qq] = -1
                        par[c] = node
                        hh = 0.5 * half[node]
                        ccx[c] = ccx[node] + (hh if q & 1 else -hh)
                        ccy[c] = ccy[node] + (hh if q & 2 else -hh)
                        half[c] = hh
                        lsx[c] = px
                        lsy[c] = py
                        lcnt[c] = 1
                        child[node, q] = c
                        break
                    node = c
                    depth += 1
            # bottom-up mass and centers (children ids exceed parents')
            for nd in range(nnodes):
                mass[nd] = lcnt[nd]
                comx[nd] = lsx[nd]
                comy[nd] = lsy[nd]
            for nd in range(nnodes - 1, 0, -1):
                pp = par[nd]
                mass[pp] += mass[nd]
                comx[pp] += comx[nd]
                comy[pp] += comy[nd]
            for nd in range(nnodes):
                if mass[nd] > 0.0:
                    comx[nd] /= mass[nd]
                    comy[nd] /= mass[nd]
            th2 = theta * theta
            for i in range(n):
                xi = pos[i, 0]
                yi = pos[i, 1]
                fx = 0.0
                fy = 0.0
                sp = 0
                stack[sp] = 0
                sp += 1
                while sp > 0:
                    sp -= 1
                    nd = stack[sp]
                    if mass[nd] == 0.0:
                        continue
                    dx = xi - comx[nd]
                    dy = yi - comy[nd]
                    d2 = dx * dx + dy * dy
                    is_leaf = lcnt[nd] > 0
                    if is_leaf or 4.0 * half[nd] * half[nd] < th2 * d2:
                        m = mass[nd]
                        if is_leaf and d2 < 1e-18:
                            # a leaf this close holds i itself (and any
                            # depth-capped coincident points)
                            m -= 1.0
                            if m <= 0.0:
                                continue
                            dx = 1e-9 * (1.0 + (i & 7))
                            dy = 1e-9 * (1.0 + (i & 3))
                            d2 = dx * dx + dy * dy
                        f = m * k2 / (d2 + eps)
                        fx += dx * f
                        fy += dy * f
                    else:
                        for q in range(4):
                            c = child[nd, q]
                            if c >= 0:
                                stack[sp] = c
                                sp += 1
                disp[i, 0] += fx
                disp[i, 1] += fy
        else:
            for i in range(n):
                xi = pos[i, 0]
                yi = pos[i, 1]
                fx = 0.0
                fy = 0.0
                for j in range(n):
                    if j == i:
                        continue
                    dx = xi - pos[j, 0]
                    dy = yi - pos[j, 1]
                    d2 = dx * dx + dy * dy + eps
                    f = k2 / d2
                    fx += dx * f
                    fy += dy * f
                disp[i, 0] += fx
                disp[i, 1] += fy
        for e in range(ea.shape[0]):
            a = ea[e]
            b = eb[e]
            dx = pos[a, 0] - pos[b, 0]
            dy = pos[a, 1] - pos[b, 1]
            d = np.sqrt(dx * dx + dy * dy) + eps
            f = d / k
            disp[a, 0] -= dx * f
            disp[a, 1] -= dy * f
            disp[b, 0] += dx * f
            disp[b, 1] += dy * f
        for i in range(n):
            dx = disp[i, 0]
            dy = disp[i, 1]
            d = np.sqrt(dx * dx + dy * dy)
            if d > eps:
                lim = d if d < t else t
                pos[i, 0] += dx / d * lim
                pos[i, 1] += dy / d * lim
    return pos


def _fr_loop_numpy(pos, ea, eb, iters, k, t0):
    """Exact all-pairs fallback; chunked to bound memory."""
    n = pos.shape[0]
    eps = 1e-12
    k2 = k * k
    chunk = max(1, min(n, 2_000_000 // max(n, 1)))
    for it in range(iters):
        t = t0 * (1.0 - it / iters)
        disp = np.zeros((n, 2))
        for lo in range(0, n, chunk):
            hi = min(lo + chunk, n)
            d = pos[lo:hi, None, :] - pos[None, :, :]
            d2 = (d * d).sum(axis=2) + eps
            np.fill_diagonal(d2[:, lo:hi], np.inf)
            disp[lo:hi] += (d * (k2 / d2)[:, :, None]).sum(axis=1)
        if len(ea):
            delta = pos[ea] - pos[eb]
            dist = np.sqrt((delta * delta).sum(axis=1)) + eps
            pull = delta * (dist / k)[:, None]
            np.add.at(disp, ea, -pull)
            np.add.at(disp, eb, pull)
        norm = np.sqrt((disp * disp).sum(axis=1))
        norm = np.where(norm < eps, 1.0, norm)
        step = np.minimum(norm, t)
        pos += disp / norm[:, None] * step[:, None]
    return pos


def run_force_simulation(pos, ea, eb, iters, k, t0, theta, bh_threshold):
    """Dispatch to the jitted kernel, falling back to numpy without numba."""
    pos = np.ascontiguousarray(pos, dtype=np.float64)
    ea = np.ascontiguousarray(ea, dtype=np.int64)
    eb = np.ascontiguousarray(eb, dtype=np.int64)
    if HAVE_NUMBA:
        return _fr_loop(pos, ea, eb, iters, k, t0, theta, bh_threshold)
    return _fr_loop_numpy(pos, ea, eb, iters, k, t0)
