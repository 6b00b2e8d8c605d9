# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Monte Carlo kernels.

Same draw-consumption contract as the NumPy backend (`_mc_numpy`): one
uniform per detection step, then the policy's guess columns; a click
happens iff the draw is >= the no-click probability.  Floating-point
expressions mirror the NumPy ones operation for operation (the extension
is built with FP contraction disabled) so both backends yield identical
outcomes from identical uniforms.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef signed char _RAW3[4]
_RAW3[0] = 3
_RAW3[1] = 0
_RAW3[2] = 1
_RAW3[3] = 2


def decide_static3(double[:, ::1] u, double[:, ::1] q, int m0):
    cdef Py_ssize_t n = u.shape[0]
    out_arr = np.empty(n, dtype=np.int8)
    cdef signed char[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int m, ca, cb
    with nogil:
        for i in range(n):
            m = (m0 + i) % 3
            ca = 0 if u[i, 0] < q[m, 0] else 1
            cb = 0 if u[i, 1] < q[m, 1] else 1
            out[i] = _RAW3[ca * 2 + cb]
    return out_arr


def decide_static4(double[:, ::1] u, double[:, ::1] q, int m0):
    cdef Py_ssize_t n = u.shape[0]
    out_arr = np.empty(n, dtype=np.int8)
    cdef signed char[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int m, ca, cb, cc
    with nogil:
        for i in range(n):
            m = (m0 + i) % 4
            ca = 0 if u[i, 0] < q[m, 0] else 1
            cb = 0 if u[i, 1] < q[m, 1] else 1
            cc = 0 if u[i, 2] < q[m, 2] else 1
            out[i] = <signed char> (ca * 4 + cb * 2 + cc)
    return out_arr


def decide_ff_fixed(double[:, ::1] u, double[:, ::1] q, signed char[::1] order, int m0):
    cdef Py_ssize_t n = u.shape[0]
    cdef int N = <int> u.shape[1] - 1
    cdef int M = <int> q.shape[0]
    out_arr = np.empty(n, dtype=np.int8)
    cdef signed char[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int m, k, nc, cap, ncand, pick
    cdef bint last_click
    with nogil:
        for i in range(n):
            m = (m0 + i) % M
            nc = 0
            last_click = 0
            for k in range(N):
                if u[i, k] < q[m, nc if nc < M - 1 else M - 1]:
                    last_click = 0
                else:
                    nc += 1
                    last_click = 1
                    if nc >= M - 1 and k < N - 1:
                        # decision is already pinned to the terminal symbol
                        nc = M - 1
                        last_click = 0
                        break
            cap = nc if nc < M - 1 else M - 1
            if last_click:
                ncand = M - cap
                pick = <int> (u[i, N] * ncand)
                out[i] = order[cap + pick]
            else:
                out[i] = order[cap]
    return out_arr


def decide_ff_map(double[:, ::1] u, double[:, ::1] q, double[::1] log_w,
                  long long[:, ::1] adj, int m0):
    cdef Py_ssize_t n = u.shape[0]
    cdef int N = <int> u.shape[1] - 4
    cdef double lp1 = log_w[0]
    cdef double l1 = log_w[1]
    cdef double l2 = log_w[2]
    out_arr = np.empty(n, dtype=np.int8)
    cdef signed char[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int m, k, j, hyp, ncl, ntie, pick, cnt, aj
    cdef long long a[4]
    cdef long long c[4]
    cdef long long d[4]
    cdef bint alive[4]
    cdef double logL[4]
    cdef double best
    with nogil:
        for i in range(n):
            m = (m0 + i) % 4
            for j in range(4):
                a[j] = 0
                c[j] = 0
                d[j] = 0
                alive[j] = 1
            hyp = 0
            ncl = 0
            for k in range(N):
                if u[i, k] < q[m, hyp]:
                    for j in range(4):
                        a[j] += adj[hyp, j]
                    continue
                for j in range(4):
                    aj = <int> adj[hyp, j]
                    if aj == 1:
                        c[j] += 1
                    elif aj == 2:
                        d[j] += 1
                alive[hyp] = 0
                best = -1e308
                ntie = 0
                for j in range(4):
                    if not alive[j]:
                        continue
                    logL[j] = a[j] * lp1 + c[j] * l1 + d[j] * l2
                    if logL[j] > best:
                        best = logL[j]
                        ntie = 1
                    elif logL[j] == best:
                        ntie += 1
                pick = <int> (u[i, N + ncl] * ntie)
                cnt = 0
                for j in range(4):
                    if alive[j] and logL[j] == best:
                        if cnt == pick:
                            hyp = j
                            break
                        cnt += 1
                ncl += 1
            best = -1e308
            ntie = 0
            for j in range(4):
                if not alive[j]:
                    continue
                logL[j] = a[j] * lp1 + c[j] * l1 + d[j] * l2
                if logL[j] > best:
                    best = logL[j]
                    ntie = 1
                elif logL[j] == best:
                    ntie += 1
            pick = <int> (u[i, N + 3] * ntie)
            cnt = 0
            for j in range(4):
                if alive[j] and logL[j] == best:
                    if cnt == pick:
                        out[i] = <signed char> j
                        break
                    cnt += 1
    return out_arr


def decide_ff_optdisp(double[:, ::1] u, double[::1] q1, double[:, ::1] q2, int m0):
    cdef Py_ssize_t n = u.shape[0]
    cdef int N = <int> u.shape[1] - 1
    out_arr = np.empty(n, dtype=np.int8)
    cdef signed char[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int m, k, first
    cdef bint click2, clicked
    cdef double qq
    with nogil:
        for i in range(n):
            m = (m0 + i) % 3
            first = -1
            click2 = 0
            for k in range(N):
                if first < 0:
                    qq = q1[m]
                else:
                    qq = q2[m, N - 1 - first]
                clicked = not (u[i, k] < qq)
                if clicked:
                    if first < 0:
                        first = k
                    else:
                        click2 = 1
                        break
            if first < 0:
                out[i] = 0
            elif first == N - 1:
                out[i] = <signed char> (1 + <int> (u[i, N] * 2))
            elif click2:
                out[i] = 2
            else:
                out[i] = 1
    return out_arr
