"""Vectorised product for binary64 coefficients, canonical ordering, labels < 64.

Monomials are uint64 bitmasks.  The canonical epsilon of a disjoint pair
(m1, m2) is the parity of #{(a, b) in m1 x m2 : a > b}, i.e. the popcount
parity of ``above_parity(m1) & m2``.
"""

from __future__ import annotations

import numpy as np

PAIRS_PER_CHUNK = 1 << 21
N_BUCKETS = 256

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


def above_parity(masks: np.ndarray) -> np.ndarray:
    x = masks >> np.uint64(1)
    for shift in (1, 2, 4, 8, 16, 32):
        x ^= x >> np.uint64(shift)
    return x


def packed_mul(ma: np.ndarray, ca: np.ndarray, mb: np.ndarray, cb: np.ndarray):
    """Product of two packed elements as (masks, coeffs), masks in no particular order.

    Pairs are generated row-chunk by row-chunk in (i, j) order and scattered
    into hash buckets of the output mask; each bucket is then sorted and
    reduced on its own, which keeps the working set cache sized.  Every step
    is a deterministic function of the input arrays, so repeated products
    give bit-identical floating point sums.
    """
    pa = above_parity(ma)
    rows = max(1, PAIRS_PER_CHUNK // max(1, len(mb)))
    key_parts = [[] for _ in range(N_BUCKETS)]
    val_parts = [[] for _ in range(N_BUCKETS)]
    for r0 in range(0, len(ma), rows):
        m1 = ma[r0 : r0 + rows, None]
        i, j = np.nonzero((m1 & mb[None, :]) == 0)
        if len(i) == 0:
            continue
        i += r0
        mbj = mb[j]
        odd = (np.bitwise_count(pa[i] & mbj) & np.uint8(1)).astype(bool)
        v = ca[i] * cb[j]
        np.negative(v, out=v, where=odd)
        k = ma[i] | mbj
        bucket = ((k * _GOLDEN) >> np.uint64(56)).astype(np.uint8)
        order = np.argsort(bucket, kind="stable")
        bounds = np.searchsorted(bucket[order], np.arange(1, N_BUCKETS, dtype=np.uint8))
        for b, (ks, vs) in enumerate(zip(np.split(k[order], bounds), np.split(v[order], bounds))):
            if len(ks):
                key_parts[b].append(ks)
                val_parts[b].append(vs)
    out_k, out_v = [], []
    for kp, vp in zip(key_parts, val_parts):
        if not kp:
            continue
        k = np.concatenate(kp)
        v = np.concatenate(vp)
        order = np.argsort(k)
        k = k[order]
        v = v[order]
        starts = np.flatnonzero(np.concatenate(([True], k[1:] != k[:-1])))
        sums = np.add.reduceat(v, starts)
        keep = sums != 0.0
        out_k.append(k[starts][keep])
        out_v.append(sums[keep])
    if not out_k:
        return np.empty(0, np.uint64), np.empty(0, np.float64)
    return np.concatenate(out_k), np.concatenate(out_v)
