"""Hot integer loops: DP table combination and brute-force sweeps.

Every kernel has a numba ``@njit`` version and a pure-numpy version that
produce identical outputs. Set ``MIMSOLVE_DISABLE_NUMBA=1`` to force the
numpy path (also used automatically when numba is not importable).
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("MIMSOLVE_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

_CHUNK = 1 << 16


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# DP combine
# --------------------------------------------------------------------------

def _combine_py(val_a, ok_a, val_b, ok_b, inner, out_a, out_b, n_in, maximize):
    na, nb = inner.shape
    n_out = out_a.shape[1]
    val = np.zeros((n_in, n_out), np.int64)
    ok = np.zeros((n_in, n_out), np.bool_)
    back_a = np.full((n_in, n_out), -1, np.int64)
    back_b = np.full((n_in, n_out), -1, np.int64)
    for ra in range(na):
        for rb in range(nb):
            r = inner[ra, rb]
            for ro in range(n_out):
                xa = out_a[rb, ro]
                xb = out_b[ra, ro]
                if ok_a[ra, xa] and ok_b[rb, xb]:
                    v = val_a[ra, xa] + val_b[rb, xb]
                    if not ok[r, ro] or (v > val[r, ro] if maximize else v < val[r, ro]):
                        ok[r, ro] = True
                        val[r, ro] = v
                        back_a[r, ro] = ra
                        back_b[r, ro] = rb
    return val, ok, back_a, back_b


def _combine_np(val_a, ok_a, val_b, ok_b, inner, out_a, out_b, n_in, maximize):
    na, nb = inner.shape
    n_out = out_a.shape[1]
    val = np.zeros((n_in, n_out), np.int64)
    ok = np.zeros((n_in, n_out), np.bool_)
    back_a = np.full((n_in, n_out), -1, np.int64)
    back_b = np.full((n_in, n_out), -1, np.int64)
    rb_idx = np.arange(nb)[:, None]
    flat_base = np.broadcast_to(np.arange(n_out), (nb, n_out))
    sentinel = np.iinfo(np.int64).min if maximize else np.iinfo(np.int64).max
    for ra in range(na):
        xa = out_a                                  # (nb, n_out)
        xb = np.broadcast_to(out_b[ra], (nb, n_out))
        feas = ok_a[ra][xa] & ok_b[rb_idx, xb]
        if not feas.any():
            continue
        v = val_a[ra][xa] + val_b[rb_idx, xb]
        # best value per (r, ro), ties to the smallest rb
        rbs = np.broadcast_to(rb_idx, (nb, n_out))
        key = v * nb + ((nb - 1 - rbs) if maximize else rbs)
        flat = inner[ra][:, None] * n_out + flat_base
        best = np.full(n_in * n_out, sentinel, np.int64)
        reducer = np.maximum if maximize else np.minimum
        reducer.at(best, flat[feas], key[feas])
        hit = best != sentinel
        cand_v = np.where(hit, best // nb, 0)
        cand_rb = np.where(hit, (nb - 1 - best % nb) if maximize else best % nb, -1)
        cur_v = val.ravel()
        cur_ok = ok.ravel()
        better = hit & (~cur_ok | ((cand_v > cur_v) if maximize else (cand_v < cur_v)))
        idx = np.flatnonzero(better)
        val.ravel()[idx] = cand_v[idx]
        ok.ravel()[idx] = True
        back_a.ravel()[idx] = ra
        back_b.ravel()[idx] = cand_rb[idx]
    return val, ok, back_a, back_b


# --------------------------------------------------------------------------
# brute-force (sigma, rho) sweep over all 2^n subsets
# --------------------------------------------------------------------------

def _popcount_py(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def _sigma_rho_sweep_py(masks, sigma_ok, rho_ok, n):
    # returns [min_size, min_code, max_size, max_code, first_code], size_flags
    res = np.array([-1, -1, -1, -1, -1], np.int64)
    sizes = np.zeros(n + 1, np.bool_)
    for code in range(1 << n):
        good = True
        for v in range(n):
            c = _popcount(masks[v] & code)
            if (code >> v) & 1:
                if not sigma_ok[c]:
                    good = False
                    break
            elif not rho_ok[c]:
                good = False
                break
        if good:
            size = _popcount(code)
            sizes[size] = True
            if res[4] < 0:
                res[4] = code
            if res[0] < 0 or size < res[0]:
                res[0] = size
                res[1] = code
            if size > res[2]:
                res[2] = size
                res[3] = code
    return res, sizes


def _sigma_rho_sweep_np(masks, sigma_ok, rho_ok, n):
    res = np.array([-1, -1, -1, -1, -1], np.int64)
    sizes = np.zeros(n + 1, np.bool_)
    total = 1 << n
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        good = np.ones(codes.shape, np.bool_)
        for v in range(n):
            c = np.bitwise_count(codes & masks[v]).astype(np.int64)
            inside = ((codes >> v) & 1).astype(np.bool_)
            good &= np.where(inside, sigma_ok[c], rho_ok[c])
        hits = codes[good]
        if hits.size == 0:
            continue
        sz = np.bitwise_count(hits).astype(np.int64)
        sizes[np.unique(sz)] = True
        if res[4] < 0:
            res[4] = hits[0]
        i = int(np.argmin(sz))
        if res[0] < 0 or sz[i] < res[0]:
            res[0], res[1] = sz[i], hits[i]
        i = int(np.argmax(sz))
        if sz[i] > res[2]:
            res[2], res[3] = sz[i], hits[i]
    return res, sizes


# --------------------------------------------------------------------------
# brute-force LCVP sweep over all q^n labelings (base-q counting order)
# --------------------------------------------------------------------------

def _lcvp_sweep_py(nbr_idx, nbr_ptr, table, q, n, total):
    # table[i, j, c]: count c (clipped at table.shape[2]-1) allowed for v in V_i, class j
    res = np.array([-1, -1, -1, -1, -1], np.int64)
    cap = table.shape[2] - 1
    labels = np.zeros(n, np.int64)
    counts = np.zeros(q, np.int64)
    for code in range(total):
        x = code
        ones = 0
        for v in range(n):
            labels[v] = x % q
            x //= q
            if labels[v] == 0:
                ones += 1
        good = True
        for v in range(n):
            for j in range(q):
                counts[j] = 0
            for p in range(nbr_ptr[v], nbr_ptr[v + 1]):
                counts[labels[nbr_idx[p]]] += 1
            i = labels[v]
            for j in range(q):
                c = counts[j] if counts[j] < cap else cap
                if not table[i, j, c]:
                    good = False
                    break
            if not good:
                break
        if good:
            if res[4] < 0:
                res[4] = code
            if res[0] < 0 or ones < res[0]:
                res[0] = ones
                res[1] = code
            if ones > res[2]:
                res[2] = ones
                res[3] = code
    return res


def _lcvp_sweep_np(nbr_idx, nbr_ptr, table, q, n, total):
    res = np.array([-1, -1, -1, -1, -1], np.int64)
    cap = table.shape[2] - 1
    powers = q ** np.arange(n, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        labels = (codes[:, None] // powers[None, :]) % q          # (chunk, n)
        good = np.ones(codes.shape, np.bool_)
        for v in range(n):
            nb = nbr_idx[nbr_ptr[v]:nbr_ptr[v + 1]]
            lv = labels[:, v]
            for j in range(q):
                c = np.minimum((labels[:, nb] == j).sum(axis=1), cap)
                good &= table[lv, j, c]
        hits = np.flatnonzero(good)
        if hits.size == 0:
            continue
        ones = (labels[hits] == 0).sum(axis=1)
        if res[4] < 0:
            res[4] = codes[hits[0]]
        i = int(np.argmin(ones))
        if res[0] < 0 or ones[i] < res[0]:
            res[0], res[1] = ones[i], codes[hits[i]]
        i = int(np.argmax(ones))
        if ones[i] > res[2]:
            res[2], res[3] = ones[i], codes[hits[i]]
    return res


if HAVE_NUMBA:
    _popcount = njit(cache=True)(_popcount_py)
    combine_tables = njit(cache=True)(_combine_py)
    sigma_rho_sweep = njit(cache=True)(_sigma_rho_sweep_py)
    lcvp_sweep = njit(cache=True)(_lcvp_sweep_py)
else:
    _popcount = _popcount_py
    combine_tables = _combine_np
    sigma_rho_sweep = _sigma_rho_sweep_np
    lcvp_sweep = _lcvp_sweep_np

# explicit handles for the benchmark and the backend-agreement tests
NUMPY_KERNELS = {
    "combine_tables": _combine_np,
    "sigma_rho_sweep": _sigma_rho_sweep_np,
    "lcvp_sweep": _lcvp_sweep_np,
}
