# cython: language_level=3
# distutils: language = c++
"""Compiled implementations of the search hot kernels.

Mirrors the signatures and semantics of ``_kernels_py`` (the pure-NumPy
fallback); see that module for the contract.  Integer outputs are exact
matches for the fallback, so either backend can serve any caller.
"""

import numpy as np

cimport numpy as cnp
from cython.operator cimport dereference, preincrement
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort as cpp_sort

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.uint64_t u64
ctypedef cnp.int64_t i64

cdef extern from *:
    """
    #include <stdint.h>
    static inline int qdf_popcount64(uint64_t v) { return __builtin_popcountll(v); }
    """
    int qdf_popcount64(u64 v) nogil


cdef inline bint _contains_pair(const u64[::1] xs, const u64[::1] zs,
                                u64 x, u64 z) nogil:
    cdef Py_ssize_t lo = 0, hi = xs.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if xs[mid] < x or (xs[mid] == x and zs[mid] < z):
            lo = mid + 1
        else:
            hi = mid
    return lo < xs.shape[0] and xs[lo] == x and zs[lo] == z


def anticommute_mask(cnp.ndarray xs_arr, cnp.ndarray zs_arr, xp, zp):
    cdef const u64[::1] xs = xs_arr
    cdef const u64[::1] zs = zs_arr
    cdef u64 cx = <u64> xp
    cdef u64 cz = <u64> zp
    cdef Py_ssize_t n = xs.shape[0], i
    out_arr = np.empty(n, dtype=np.bool_)
    cdef cnp.uint8_t[::1] out = out_arr.view(np.uint8)
    with nogil:
        for i in range(n):
            out[i] = (qdf_popcount64(xs[i] & cz) + qdf_popcount64(zs[i] & cx)) & 1
    return out_arr


def growth_stats(cnp.ndarray xs_arr, cnp.ndarray zs_arr, xp, zp):
    cdef const u64[::1] xs = xs_arr
    cdef const u64[::1] zs = zs_arr
    cdef u64 cx = <u64> xp
    cdef u64 cz = <u64> zp
    cdef Py_ssize_t n = xs.shape[0], i
    cdef i64 n_anti = 0, present = 0
    with nogil:
        for i in range(n):
            if (qdf_popcount64(xs[i] & cz) + qdf_popcount64(zs[i] & cx)) & 1:
                n_anti += 1
                if _contains_pair(xs, zs, xs[i] ^ cx, zs[i] ^ cz):
                    present += 1
    return int(n_anti), int(n_anti - present)


def anticommute_counts(cnp.ndarray xs_arr, cnp.ndarray zs_arr, xc, cnp.ndarray zcs_arr):
    cdef const u64[::1] xs = xs_arr
    cdef const u64[::1] zs = zs_arr
    cdef const u64[::1] zcs = zcs_arr
    cdef u64 cx = <u64> xc
    cdef Py_ssize_t n = xs.shape[0], r = zcs.shape[0], i, j
    out_arr = np.empty(r, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef i64 acc
    with nogil:
        for j in range(r):
            acc = 0
            for i in range(n):
                if (qdf_popcount64(xs[i] & zcs[j]) + qdf_popcount64(zs[i] & cx)) & 1:
                    acc += 1
            out[j] = acc
    return out_arr


def commutator_multiset(cnp.ndarray zs_arr, cnp.ndarray offsets_arr,
                        cnp.ndarray mus_arr, cnp.ndarray pair_i_arr,
                        cnp.ndarray pair_j_arr):
    cdef const u64[::1] zs = zs_arr
    cdef const i64[::1] offsets = offsets_arr
    cdef const u64[::1] mus = mus_arr
    cdef const i64[::1] pair_i = pair_i_arr
    cdef const i64[::1] pair_j = pair_j_arr
    cdef unordered_map[u64, i64] counts
    cdef Py_ssize_t k, a, b, gi, gj
    cdef i64 n_query = 0
    cdef u64 mu_i, mu_j, za
    cdef int pa
    with nogil:
        for k in range(pair_i.shape[0]):
            gi = pair_i[k]
            gj = pair_j[k]
            mu_i = mus[gi]
            mu_j = mus[gj]
            n_query += (offsets[gi + 1] - offsets[gi]) * (offsets[gj + 1] - offsets[gj])
            for a in range(offsets[gi], offsets[gi + 1]):
                za = zs[a]
                pa = qdf_popcount64(za & mu_j) & 1
                for b in range(offsets[gj], offsets[gj + 1]):
                    if (qdf_popcount64(zs[b] & mu_i) & 1) != pa:
                        counts[za ^ zs[b]] += 1

    cdef vector[u64] keys
    keys.reserve(counts.size())
    cdef unordered_map[u64, i64].iterator it = counts.begin()
    while it != counts.end():
        keys.push_back(dereference(it).first)
        preincrement(it)
    cpp_sort(keys.begin(), keys.end())

    cdef Py_ssize_t m = keys.size(), i
    uniq_arr = np.empty(m, dtype=np.uint64)
    cnt_arr = np.empty(m, dtype=np.int64)
    cdef u64[::1] uniq = uniq_arr
    cdef i64[::1] cnt = cnt_arr
    for i in range(m):
        uniq[i] = keys[i]
        cnt[i] = counts[keys[i]]
    return uniq_arr, cnt_arr, int(n_query)


def profile_sweep(cnp.ndarray xs_arr, cnp.ndarray zs_arr, mu, cnp.ndarray z_members_arr):
    cdef const u64[::1] xs = xs_arr
    cdef const u64[::1] zs = zs_arr
    cdef const u64[::1] zms = z_members_arr
    cdef u64 cmu = <u64> mu
    cdef Py_ssize_t n = xs.shape[0], m = zms.shape[0], i, j
    na_arr = np.empty(m, dtype=np.int64)
    ga_arr = np.empty(m, dtype=np.int64)
    cdef i64[::1] na = na_arr
    cdef i64[::1] ga = ga_arr
    cdef i64 n_anti, present
    cdef u64 zc
    with nogil:
        for j in range(m):
            zc = zms[j]
            n_anti = 0
            present = 0
            for i in range(n):
                if (qdf_popcount64(xs[i] & zc) + qdf_popcount64(zs[i] & cmu)) & 1:
                    n_anti += 1
                    if _contains_pair(xs, zs, xs[i] ^ cmu, zs[i] ^ zc):
                        present += 1
            na[j] = n_anti
            ga[j] = n_anti - present
    return na_arr, ga_arr
