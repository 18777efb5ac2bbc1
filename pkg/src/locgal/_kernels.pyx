# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled set-of-bitmask kernels.

Same contracts as ``_kernels_py``. Masks that fit in one machine word take a
single-word path; wider masks are stored as little-endian runs of ``W``
words and handled by the multiword routines below.
"""

import sys

from libc.stdint cimport uint64_t
from libc.string cimport memcpy
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort, unique

if sys.byteorder != "little":
    raise ImportError("multiword kernels assume a little-endian host")

BACKEND = "cython"
MAX_BITS = 1 << 20


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef extern from *:
    """
    #include <algorithm>
    #include <cstdint>
    #include <vector>
    typedef std::vector<uint64_t> wvec;

    static inline int w_cmp(const uint64_t* a, const uint64_t* b, int W) {
        for (int i = W - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static void w_sort_unique(wvec& v, int W) {
        size_t n = v.size() / W;
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        const uint64_t* d = v.data();
        std::sort(idx.begin(), idx.end(),
                  [d, W](size_t x, size_t y) { return w_cmp(d + x * W, d + y * W, W) < 0; });
        wvec out;
        out.reserve(v.size());
        for (size_t k = 0; k < n; ++k) {
            const uint64_t* p = d + idx[k] * W;
            if (!out.empty() && w_cmp(out.data() + out.size() - W, p, W) == 0) continue;
            out.insert(out.end(), p, p + W);
        }
        v.swap(out);
    }

    static inline void w_or_push(wvec& out, const uint64_t* a, const uint64_t* b, int W) {
        for (int i = 0; i < W; ++i) out.push_back(a[i] | b[i]);
    }

    static wvec w_minimize(wvec v, int W) {
        w_sort_unique(v, W);
        size_t n = v.size() / W;
        const uint64_t* d = v.data();
        std::vector<size_t> idx(n);
        std::vector<int> pc(n);
        for (size_t i = 0; i < n; ++i) {
            idx[i] = i;
            int c = 0;
            for (int w = 0; w < W; ++w) c += __builtin_popcountll(d[i * W + w]);
            pc[i] = c;
        }
        std::stable_sort(idx.begin(), idx.end(), [&pc](size_t x, size_t y) { return pc[x] < pc[y]; });
        wvec kept;
        for (size_t k = 0; k < n; ++k) {
            const uint64_t* p = d + idx[k] * W;
            bool dominated = false;
            for (size_t j = 0; j < kept.size() / W && !dominated; ++j) {
                const uint64_t* q = kept.data() + j * W;
                bool sub = true;
                for (int w = 0; w < W && sub; ++w) sub = (q[w] & p[w]) == q[w];
                dominated = sub;
            }
            if (!dominated) kept.insert(kept.end(), p, p + W);
        }
        w_sort_unique(kept, W);
        return kept;
    }

    static bool w_union_product(const wvec& a, const wvec& b, int W, long long limit, wvec& out) {
        size_t na = a.size() / W, nb = b.size() / W;
        size_t cap = limit >= 0 ? (size_t)limit * 4 + 1024 : 0;
        for (size_t i = 0; i < na; ++i) {
            for (size_t j = 0; j < nb; ++j) w_or_push(out, a.data() + i * W, b.data() + j * W, W);
            if (limit >= 0 && out.size() / W > cap) {
                w_sort_unique(out, W);
                if (out.size() / W > (size_t)limit) return false;
            }
        }
        w_sort_unique(out, W);
        return !(limit >= 0 && out.size() / W > (size_t)limit);
    }

    static wvec w_unions_upto(wvec base, int W, int k) {
        w_sort_unique(base, W);
        wvec out = base, frontier = base, nxt;
        size_t nb = base.size() / W;
        for (int step = 0; step < k - 1; ++step) {
            nxt.clear();
            size_t nf = frontier.size() / W;
            for (size_t i = 0; i < nf; ++i)
                for (size_t j = 0; j < nb; ++j) w_or_push(nxt, frontier.data() + i * W, base.data() + j * W, W);
            w_sort_unique(nxt, W);
            size_t before = out.size();
            out.insert(out.end(), nxt.begin(), nxt.end());
            w_sort_unique(out, W);
            if (out.size() == before) break;
            frontier.swap(nxt);
        }
        return out;
    }
    """
    vector[uint64_t] w_minimize(vector[uint64_t] v, int W) nogil
    bint w_union_product(const vector[uint64_t]& a, const vector[uint64_t]& b, int W, long long limit,
                         vector[uint64_t]& out) nogil
    vector[uint64_t] w_unions_upto(vector[uint64_t] base, int W, int k) nogil


cdef int _words(masks):
    """Machine words needed for the widest mask (at least one)."""
    acc = 0
    for m in masks:
        acc |= m
    return max(1, (acc.bit_length() + 63) // 64)


cdef vector[uint64_t] _wload(masks, int W):
    cdef vector[uint64_t] out
    cdef bytes raw
    cdef size_t k = 0
    out.resize(len(masks) * W)
    for m in masks:
        raw = m.to_bytes(W * 8, "little")
        memcpy(&out[k * W], <const char*>raw, W * 8)
        k += 1
    return out


cdef list _wdump(vector[uint64_t]& v, int W):
    cdef size_t k
    cdef size_t n = v.size() // W
    from_bytes = int.from_bytes
    return [from_bytes((<char*>&v[k * W])[:W * 8], "little") for k in range(n)]


cdef inline int popcount(uint64_t v) noexcept nogil:
    return __builtin_popcountll(v)


cdef vector[uint64_t] _load(masks):
    cdef vector[uint64_t] out
    out.reserve(len(masks))
    for m in masks:
        out.push_back(<uint64_t>m)
    return out


cdef list _dump(vector[uint64_t]& v):
    cdef size_t i
    return [v[i] for i in range(v.size())]


cdef void _sort_unique(vector[uint64_t]& v) noexcept nogil:
    sort(v.begin(), v.end())
    v.erase(unique(v.begin(), v.end()), v.end())


def _pull_wide(mask, row):
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << row[low.bit_length() - 1]
        mask ^= low
    return out


def _union_product_wide(left, right, int W, long long limit):
    cdef vector[uint64_t] a = _wload(left, W)
    cdef vector[uint64_t] b = _wload(right, W)
    cdef vector[uint64_t] out
    cdef bint ok
    with nogil:
        ok = w_union_product(a, b, W, limit, out)
    return _wdump(out, W) if ok else None


def _minimize_wide(masks, int W):
    cdef vector[uint64_t] v = _wload(masks, W)
    with nogil:
        v = w_minimize(v, W)
    return _wdump(v, W)


def _union_product_min_wide(left, right, int W):
    cdef vector[uint64_t] a = _wload(left, W)
    cdef vector[uint64_t] b = _wload(right, W)
    cdef vector[uint64_t] out
    with nogil:
        w_union_product(a, b, W, -1, out)
        out = w_minimize(out, W)
    return _wdump(out, W)


def _unions_upto_wide(masks, int W, int k):
    cdef vector[uint64_t] v = _wload(masks, W)
    with nogil:
        v = w_unions_upto(v, W, k)
    return _wdump(v, W)


def pull(mask, row):
    if len(row) > 64:
        return _pull_wide(mask, row)
    cdef uint64_t m = <uint64_t>mask
    cdef uint64_t out = 0
    cdef int i = 0
    while m:
        if m & 1:
            out |= (<uint64_t>1) << <int>row[i]
        m >>= 1
        i += 1
    return out


def union_product(left, right, long long limit=-1):
    cdef int W = max(_words(left), _words(right))
    if W > 1:
        return _union_product_wide(left, right, W, limit)
    cdef vector[uint64_t] a = _load(left)
    cdef vector[uint64_t] b = _load(right)
    cdef vector[uint64_t] out
    cdef size_t i, j
    cdef size_t want = a.size() * b.size()
    if limit >= 0 and want > <size_t>limit * 4 + 1024 + b.size():
        want = <size_t>limit * 4 + 1024 + b.size()
    out.reserve(want)
    with nogil:
        for i in range(a.size()):
            for j in range(b.size()):
                out.push_back(a[i] | b[j])
            if limit >= 0 and out.size() > <size_t>limit * 4 + 1024:
                _sort_unique(out)
                if out.size() > <size_t>limit:
                    break
        _sort_unique(out)
    if limit >= 0 and out.size() > <size_t>limit:
        return None
    return _dump(out)


cdef vector[uint64_t] _minimize(vector[uint64_t]& v) noexcept nogil:
    cdef vector[uint64_t] kept
    cdef vector[uint64_t] bucket
    cdef size_t i, k
    cdef int c
    cdef bint dominated
    _sort_unique(v)
    # process by increasing popcount so any dominator is already kept
    for c in range(65):
        for i in range(v.size()):
            if popcount(v[i]) != c:
                continue
            dominated = False
            for k in range(kept.size()):
                if kept[k] & v[i] == kept[k]:
                    dominated = True
                    break
            if not dominated:
                kept.push_back(v[i])
    sort(kept.begin(), kept.end())
    return kept


def minimize(masks):
    masks = list(masks)
    cdef int W = _words(masks)
    if W > 1:
        return _minimize_wide(masks, W)
    cdef vector[uint64_t] v = _load(masks)
    cdef vector[uint64_t] out
    with nogil:
        out = _minimize(v)
    return _dump(out)


def union_product_min(left, right):
    cdef int W = max(_words(left), _words(right))
    if W > 1:
        return _union_product_min_wide(left, right, W)
    cdef vector[uint64_t] a = _load(left)
    cdef vector[uint64_t] b = _load(right)
    cdef vector[uint64_t] prod
    cdef vector[uint64_t] out
    cdef size_t i, j
    with nogil:
        prod.reserve(a.size() * b.size())
        for i in range(a.size()):
            for j in range(b.size()):
                prod.push_back(a[i] | b[j])
        out = _minimize(prod)
    return _dump(out)


def unions_upto(masks, int k):
    cdef int W = _words(masks)
    if W > 1:
        return _unions_upto_wide(masks, W, k)
    cdef vector[uint64_t] base = _load(masks)
    cdef vector[uint64_t] out
    cdef vector[uint64_t] frontier
    cdef vector[uint64_t] nxt
    cdef size_t i, j, before
    cdef int step
    with nogil:
        _sort_unique(base)
        out = base
        frontier = base
        for step in range(k - 1):
            nxt.clear()
            for i in range(frontier.size()):
                for j in range(base.size()):
                    nxt.push_back(frontier[i] | base[j])
            _sort_unique(nxt)
            before = out.size()
            for i in range(nxt.size()):
                out.push_back(nxt[i])
            _sort_unique(out)
            if out.size() == before:
                break
            frontier = nxt
    return _dump(out)
