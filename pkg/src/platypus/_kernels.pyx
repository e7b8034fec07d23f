# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same encodings, same answers.

``derivable`` handles universes of at most 64 formulas (one machine word per
branch state); callers fall back to the Python kernel above that.
"""

from libc.stdint cimport uint64_t, int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref

MAX_UNIVERSE = 64


def first_valuation(int nvals, conn, arg_off, args, tab_off, tabs, allowed):
    cdef Py_ssize_t n = len(conn)
    if n == 0:
        return []
    if nvals > 63:
        raise ValueError("compiled kernel supports at most 63 truth values")
    cdef vector[int] c_conn = conn
    cdef vector[int] c_arg_off = arg_off
    cdef vector[int] c_args = args
    cdef vector[int] c_tab_off = tab_off
    cdef vector[uint64_t] c_tabs = tabs
    cdef vector[uint64_t] c_allowed = allowed
    cdef vector[int] vals = vector[int](n, 0)
    cdef vector[uint64_t] cand = vector[uint64_t](n, 0)
    cdef Py_ssize_t i = 0
    cdef uint64_t m, low
    cdef int found = 0
    with nogil:
        cand[0] = _domain(0, nvals, c_conn, c_arg_off, c_args, c_tab_off, c_tabs, c_allowed, vals)
        while True:
            m = cand[i]
            if m == 0:
                i -= 1
                if i < 0:
                    break
                continue
            low = m & (~m + 1)
            cand[i] = m ^ low
            vals[i] = _ctz(low)
            i += 1
            if i == n:
                found = 1
                break
            cand[i] = _domain(i, nvals, c_conn, c_arg_off, c_args, c_tab_off, c_tabs, c_allowed, vals)
    if not found:
        return None
    return [vals[j] for j in range(n)]


cdef inline int _ctz(uint64_t x) nogil:
    cdef int k = 0
    while not (x & 1):
        x >>= 1
        k += 1
    return k


cdef inline uint64_t _domain(Py_ssize_t i, int nvals, vector[int]& conn,
                             vector[int]& arg_off, vector[int]& args,
                             vector[int]& tab_off, vector[uint64_t]& tabs,
                             vector[uint64_t]& allowed, vector[int]& vals) nogil:
    cdef int c = conn[i]
    if c < 0:
        return allowed[i]
    cdef int64_t cell = 0
    cdef int j
    for j in range(arg_off[i], arg_off[i + 1]):
        cell = cell * nvals + vals[args[j]]
    return allowed[i] & tabs[tab_off[c] + cell]


cdef struct Problem:
    vector[uint64_t] prem
    vector[uint64_t] cmask
    vector[int] c_off
    vector[int] concl
    uint64_t delta
    unordered_map[uint64_t, char] memo


cdef char _expand(Problem* p, uint64_t state) nogil:
    if state & p.delta:
        return 1
    cdef unordered_map[uint64_t, char].iterator it = p.memo.find(state)
    if it != p.memo.end():
        return deref(it).second
    cdef Py_ssize_t m = p.prem.size()
    cdef Py_ssize_t k
    cdef int j
    cdef uint64_t cm
    cdef char ok = 0
    for k in range(m):
        if p.prem[k] & ~state:
            continue
        cm = p.cmask[k]
        if cm and (cm & state):
            continue
        ok = 1
        for j in range(p.c_off[k], p.c_off[k + 1]):
            if not _expand(p, state | ((<uint64_t>1) << p.concl[j])):
                ok = 0
                break
        break
    p.memo[state] = ok
    return ok


def derivable(prem, cmask, c_off, concl, delta, start):
    cdef Problem p
    p.prem = prem
    p.cmask = cmask
    p.c_off = c_off
    p.concl = concl
    p.delta = delta
    cdef uint64_t s = start
    cdef char ok
    with nogil:
        ok = _expand(&p, s)
    return bool(ok)
