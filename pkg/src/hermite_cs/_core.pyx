# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: Hermite recurrences and the Gaussian-kernel sum.

Signatures and results match :mod:`hermite_cs._fallback` exactly; the
dispatcher in :mod:`hermite_cs._backend` picks one at import time.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, cos, sin

cnp.import_array()

ctypedef double complex cplx

cdef double PRUNE = -60.0


cdef inline cplx cexp(cplx w) noexcept nogil:
    cdef double r = exp(w.real)
    return r * cos(w.imag) + 1j * (r * sin(w.imag))


def hermite_raw_table(z, int nmax):
    cdef cplx[::1] zz = np.ascontiguousarray(z, dtype=np.complex128).ravel()
    cdef Py_ssize_t npts = zz.shape[0], i
    cdef int n
    out_arr = np.empty((npts, nmax + 1), dtype=np.complex128)
    cdef cplx[:, ::1] out = out_arr
    cdef cplx x
    with nogil:
        for i in range(npts):
            x = zz[i]
            out[i, 0] = 1.0
            if nmax >= 1:
                out[i, 1] = 2.0 * x
            for n in range(1, nmax):
                out[i, n + 1] = 2.0 * x * out[i, n] - 2.0 * n * out[i, n - 1]
    return out_arr


def hermite_scaled_table(z, int nmax, cplx p, cplx q):
    cdef cplx[::1] zz = np.ascontiguousarray(z, dtype=np.complex128).ravel()
    cdef Py_ssize_t npts = zz.shape[0], i
    cdef int n
    out_arr = np.empty((npts, nmax + 1), dtype=np.complex128)
    cdef cplx[:, ::1] out = out_arr
    cdef cplx pz
    with nogil:
        for i in range(npts):
            pz = p * zz[i]
            out[i, 0] = 1.0
            if nmax >= 1:
                out[i, 1] = pz
            for n in range(1, nmax):
                out[i, n + 1] = (pz * out[i, n] - q * sqrt(<double>n) * out[i, n - 1]) / sqrt(n + 1.0)
    return out_arr


def hermite2d_raw_table(z1, z2, int mmax, int nmax):
    cdef cplx[::1] a = np.ascontiguousarray(z1, dtype=np.complex128).ravel()
    cdef cplx[::1] b = np.ascontiguousarray(z2, dtype=np.complex128).ravel()
    cdef Py_ssize_t npts = a.shape[0], i
    cdef int m, n
    out_arr = np.empty((npts, mmax + 1, nmax + 1), dtype=np.complex128)
    cdef cplx[:, :, ::1] out = out_arr
    cdef cplx x1, x2
    with nogil:
        for i in range(npts):
            x1 = a[i]
            x2 = b[i]
            out[i, 0, 0] = 1.0
            for n in range(nmax):
                out[i, 0, n + 1] = x2 * out[i, 0, n]
            for m in range(mmax):
                out[i, m + 1, 0] = x1 * out[i, m, 0]
                for n in range(1, nmax + 1):
                    out[i, m + 1, n] = x1 * out[i, m, n] - n * out[i, m, n - 1]
    return out_arr


def hermite2d_scaled_table(z1, z2, int mmax, int nmax, cplx p, cplx q):
    cdef cplx[::1] a = np.ascontiguousarray(z1, dtype=np.complex128).ravel()
    cdef cplx[::1] b = np.ascontiguousarray(z2, dtype=np.complex128).ravel()
    cdef Py_ssize_t npts = a.shape[0], i
    cdef int m, n
    out_arr = np.empty((npts, mmax + 1, nmax + 1), dtype=np.complex128)
    cdef cplx[:, :, ::1] out = out_arr
    cdef cplx x1, x2
    cdef double r
    with nogil:
        for i in range(npts):
            x1 = p * a[i]
            x2 = p * b[i]
            out[i, 0, 0] = 1.0
            for n in range(nmax):
                out[i, 0, n + 1] = x2 * out[i, 0, n] / sqrt(n + 1.0)
            for m in range(mmax):
                r = 1.0 / sqrt(m + 1.0)
                out[i, m + 1, 0] = x1 * out[i, m, 0] * r
                for n in range(1, nmax + 1):
                    out[i, m + 1, n] = (x1 * out[i, m, n] - q * sqrt(<double>n) * out[i, m, n - 1]) * r
    return out_arr


def bilinear_exp_apply(targets, sources, coupling, log_g, values):
    cdef cplx[:, ::1] S = np.ascontiguousarray(sources, dtype=np.complex128)
    cdef cplx[::1] lg = np.ascontiguousarray(log_g, dtype=np.complex128)
    cdef cplx[:, ::1] P = np.ascontiguousarray(values, dtype=np.complex128)
    cdef cplx[:, ::1] TM = np.ascontiguousarray(
        np.asarray(targets, dtype=np.complex128) @ np.asarray(coupling, dtype=np.complex128))
    cdef Py_ssize_t nt = TM.shape[0], ns = S.shape[0], nb = P.shape[1], d = S.shape[1]
    cdef Py_ssize_t t, s, k, c
    out_arr = np.zeros((nt, nb), dtype=np.complex128)
    shift_arr = np.empty(nt, dtype=np.float64)
    cdef cplx[:, ::1] out = out_arr
    cdef double[::1] shift = shift_arr
    buf_arr = np.empty(ns, dtype=np.complex128)
    cdef cplx[::1] buf = buf_arr
    cdef double mx, r, fr, fi, pr, pi_
    cdef cplx e
    with nogil:
        for t in range(nt):
            mx = -1e308
            for s in range(ns):
                e = lg[s]
                for k in range(d):
                    e = e + TM[t, k] * S[s, k]
                buf[s] = e
                if e.real > mx:
                    mx = e.real
            shift[t] = mx
            for s in range(ns):
                r = buf[s].real - mx
                # terms this far below the row maximum cannot move the sum
                if r < PRUNE:
                    continue
                r = exp(r)
                fr = r * cos(buf[s].imag)
                fi = r * sin(buf[s].imag)
                for c in range(nb):
                    pr = P[s, c].real
                    pi_ = P[s, c].imag
                    out[t, c] = out[t, c] + ((fr * pr - fi * pi_) + 1j * (fr * pi_ + fi * pr))
    return out_arr, shift_arr
