"""Subgroup arithmetic on element indices of a group with a Cayley table.

A group of order m is described by ``table`` (m x m, ``table[a, b]`` is the
index of ``a * b``) and ``inv``.  Subgroups are boolean masks of length m.
Everything here is vectorised over numpy; callers keep Python loops short.
"""

from __future__ import annotations

import numpy as np


def closure_mask(table, gens, start=None):
    """Mask of the subgroup generated by ``gens`` (plus the subgroup ``start``)."""
    m = table.shape[0]
    mask = np.zeros(m, dtype=bool)
    gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
    if start is None:
        frontier = np.array([0], dtype=np.int64)
    else:
        frontier = np.flatnonzero(start)
    mask[frontier] = True
    if len(gens) == 0:
        return mask
    while len(frontier):
        nxt = table[frontier][:, gens].ravel().astype(np.int64)
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return mask


def conjugate(table, inv, g, x):
    """Index of g x g^-1 (either argument may be an array)."""
    return table[table[g, x], inv[g]]


def conjugates_by_all(table, inv, x):
    """Indices of g x g^-1 for every g in the group, in order of g."""
    m = table.shape[0]
    ar = np.arange(m)
    return table[table[ar, x], inv]


def normalizer_mask(table, inv, sub_mask, sub_gens, within=None):
    """Mask of elements g with g H g^-1 = H, optionally restricted to ``within``."""
    m = table.shape[0]
    ar = np.arange(m)
    mask = np.ones(m, dtype=bool) if within is None else within.copy()
    for k in sub_gens:
        mask &= sub_mask[table[table[ar, k], inv]]
    return mask


def is_normal(table, inv, sub_mask, sub_gens, ambient_gens):
    for g in ambient_gens:
        for k in sub_gens:
            if not sub_mask[table[table[g, k], inv[g]]]:
                return False
    return True


def normal_closure_mask(table, inv, ambient_gens, seeds):
    """Smallest subgroup normalised by ``ambient_gens`` that contains ``seeds``."""
    gens = sorted(set(int(s) for s in seeds))
    mask = closure_mask(table, gens)
    while True:
        new = []
        for g in ambient_gens:
            for h in gens:
                c = int(table[table[g, h], inv[g]])
                if not mask[c]:
                    new.append(c)
        if not new:
            return mask, gens
        gens = sorted(set(gens) | set(new))
        mask = closure_mask(table, gens)


def commutator(table, inv, a, b):
    return table[table[a, b], table[inv[a], inv[b]]]


def derived_mask(table, inv, gens):
    """Derived subgroup of <gens> as (mask, generators)."""
    seeds = [int(commutator(table, inv, a, b)) for i, a in enumerate(gens) for b in gens[i + 1:]]
    seeds = [s for s in seeds if s != 0]
    if not seeds:
        mask = np.zeros(table.shape[0], dtype=bool)
        mask[0] = True
        return mask, []
    return normal_closure_mask(table, inv, gens, seeds)


def derived_series_masks(table, inv, gens, limit=64):
    """Derived series of <gens>; stops when a term repeats or becomes trivial."""
    mask = closure_mask(table, gens)
    series = [(mask, list(gens))]
    while series[-1][0].sum() > 1 and len(series) <= limit:
        nxt = derived_mask(table, inv, series[-1][1])
        if nxt[0].sum() == series[-1][0].sum():
            break
        series.append(nxt)
    return series


def power_map(table, k):
    """Index of x^k for every x (k >= 0)."""
    m = table.shape[0]
    ar = np.arange(m)
    result = np.zeros(m, dtype=np.int64)
    base = ar.copy()
    while k:
        if k & 1:
            result = table[result, base].astype(np.int64)
        base = table[base, base].astype(np.int64)
        k >>= 1
    return result


def element_orders(table):
    m = table.shape[0]
    ar = np.arange(m)
    orders = np.zeros(m, dtype=np.int64)
    orders[0] = 1
    cur = ar.copy()
    k = 1
    todo = ar[1:]
    cur = cur[1:]
    while len(todo):
        k += 1
        cur = table[cur, todo].astype(np.int64)
        done = cur == 0
        orders[todo[done]] = k
        todo = todo[~done]
        cur = cur[~done]
    return orders


def conjugacy_class_ids(table, inv, members=None):
    """Class id per element (-1 outside ``members``), ids in order of first element."""
    m = table.shape[0]
    if members is None:
        members = np.ones(m, dtype=bool)
    idx = np.flatnonzero(members)
    cls = np.full(m, -1, dtype=np.int64)
    next_id = 0
    for x in idx:
        if cls[x] >= 0:
            continue
        conj = table[table[idx, x], inv[idx]]
        cls[conj] = next_id
        next_id += 1
    return cls


def mask_key(mask) -> bytes:
    return np.packbits(mask).tobytes()
