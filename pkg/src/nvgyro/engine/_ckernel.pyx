# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled program kernel: per-draw 6x6 complex arithmetic in C.

Semantics match nvgyro.engine.pure exactly; only the iteration strategy
differs (one draw at a time here, the whole stack at once there).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

NAME = "cython"

DEF N = 6
DEF N2 = 36

DEF OP_APPLY = 0
DEF OP_EVOLVE = 1
DEF OP_RESET = 2
DEF OP_READOUT = 3


cdef inline void mat_mul(const double complex* a, const double complex* b, double complex* out) noexcept nogil:
    cdef int i, j, k
    cdef double complex acc
    for i in range(N):
        for j in range(N):
            acc = 0
            for k in range(N):
                acc = acc + a[i * N + k] * b[k * N + j]
            out[i * N + j] = acc


cdef inline void conjugate_in_place(const double complex* u, double complex* rho,
                                    double complex* tmp, double complex* tmp2) noexcept nogil:
    # rho <- u rho u+
    cdef int i, j, k
    cdef double complex acc
    mat_mul(u, rho, tmp)
    for i in range(N):
        for j in range(N):
            acc = 0
            for k in range(N):
                acc = acc + tmp[i * N + k] * u[j * N + k].conjugate()
            tmp2[i * N + j] = acc
    for i in range(N2):
        rho[i] = tmp2[i]


cdef inline void build_propagator(const double* w, const double complex* v, double tau,
                                  const double* extra, double complex* u) noexcept nogil:
    # u = v exp(-i w tau) v+; a small extra term is exponentiated
    # separately so its phase stays exact next to the ~1e10 rad/s
    # eigenvalue phases
    cdef int a, b, k
    cdef double ph, ph2
    cdef double complex phase[N]
    cdef double complex acc
    for k in range(N):
        ph = -w[k] * tau
        phase[k] = cos(ph) + 1j * sin(ph)
        if extra != NULL:
            ph2 = -extra[k] * tau
            phase[k] = phase[k] * (cos(ph2) + 1j * sin(ph2))
    for a in range(N):
        for b in range(N):
            acc = 0
            for k in range(N):
                acc = acc + v[a * N + k] * phase[k] * v[b * N + k].conjugate()
            u[a * N + b] = acc


cdef inline void reset_op(double complex* rho, double fidelity) noexcept nogil:
    # rho <- |0><0|_e (x) (f Tr_e rho + (1 - f) 1/2)
    cdef double complex tr[4]
    cdef int a, j, jp, i
    for j in range(2):
        for jp in range(2):
            tr[j * 2 + jp] = 0
            for a in range(3):
                tr[j * 2 + jp] = tr[j * 2 + jp] + rho[(2 * a + j) * N + (2 * a + jp)]
    for i in range(N2):
        rho[i] = 0
    for j in range(2):
        for jp in range(2):
            rho[(2 + j) * N + (2 + jp)] = fidelity * tr[j * 2 + jp]
    rho[2 * N + 2] = rho[2 * N + 2] + 0.5 * (1.0 - fidelity)
    rho[3 * N + 3] = rho[3 * N + 3] + 0.5 * (1.0 - fidelity)


cdef inline double readout_op(const double complex* rho, const double* p) noexcept nogil:
    cdef int a, b
    cdef double acc = 0.0
    for a in range(N):
        for b in range(N):
            acc = acc + (rho[a * N + b] * p[b * N + a]).real
    return acc


cdef int run_ops(const long long[:, ::1] ops, Py_ssize_t lo, Py_ssize_t hi,
                 const double* w, const double complex* v, const double* extra,
                 const double complex[:, :, ::1] unitaries,
                 const double[::1] taus, const double[::1] fids,
                 const double[:, :, ::1] projs,
                 double complex* rho, double complex* tmp, double complex* tmp2,
                 double complex* u, double* value) noexcept nogil:
    # returns 1 if a readout was emitted
    cdef Py_ssize_t i
    cdef long long code, arg
    cdef int emitted = 0
    for i in range(lo, hi):
        code = ops[i, 0]
        arg = ops[i, 1]
        if code == OP_APPLY:
            conjugate_in_place(&unitaries[arg, 0, 0], rho, tmp, tmp2)
        elif code == OP_EVOLVE:
            build_propagator(w, v, taus[arg], extra, u)
            conjugate_in_place(u, rho, tmp, tmp2)
        elif code == OP_RESET:
            reset_op(rho, fids[arg])
        elif code == OP_READOUT:
            value[0] = readout_op(rho, &projs[arg, 0, 0])
            emitted = 1
    return emitted


def run_program_arrays(const double[:, ::1] evals,
                       const double complex[:, :, ::1] evecs,
                       const double complex[:, ::1] rho0,
                       const long long[:, ::1] prefix,
                       const long long[:, ::1] suffix_flat,
                       const long long[::1] suffix_offsets,
                       const double complex[:, :, ::1] unitaries,
                       const double[::1] taus,
                       const double[::1] fids,
                       const double[:, :, ::1] projs,
                       evals_extra=None):
    cdef Py_ssize_t n = evals.shape[0]
    cdef Py_ssize_t n_suffix = suffix_offsets.shape[0] - 1
    out_arr = np.zeros((n, n_suffix), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef const double[:, ::1] extra_mv = None
    cdef bint has_extra = evals_extra is not None
    if has_extra:
        extra_mv = np.ascontiguousarray(evals_extra, dtype=np.float64)
    cdef double complex rho[N2]
    cdef double complex chk[N2]
    cdef double complex tmp[N2]
    cdef double complex tmp2[N2]
    cdef double complex u[N2]
    cdef double value
    cdef Py_ssize_t d, s, i
    cdef const double* extra_ptr
    with nogil:
        for d in range(n):
            extra_ptr = &extra_mv[d, 0] if has_extra else NULL
            for i in range(N2):
                rho[i] = rho0[i // N, i % N]
            run_ops(prefix, 0, prefix.shape[0], &evals[d, 0], &evecs[d, 0, 0], extra_ptr,
                    unitaries, taus, fids, projs, rho, tmp, tmp2, u, &value)
            for i in range(N2):
                chk[i] = rho[i]
            for s in range(n_suffix):
                for i in range(N2):
                    rho[i] = chk[i]
                value = 0.0
                run_ops(suffix_flat, suffix_offsets[s], suffix_offsets[s + 1],
                        &evals[d, 0], &evecs[d, 0, 0], extra_ptr,
                        unitaries, taus, fids, projs, rho, tmp, tmp2, u, &value)
                out[d, s] = value
    return out_arr
