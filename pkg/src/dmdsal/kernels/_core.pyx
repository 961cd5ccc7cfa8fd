# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled per-pixel kernels. Semantics mirror ``_fallback``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport pow, cbrt, floor, fabs, sqrt

from ._fallback import (
    KR, KB, SRGB_TO_XYZ, LAB_DELTA, X_DR, X_DB, Z_DR, Z_DB,
)

cnp.import_array()

cdef double _KR = KR
cdef double _KB = KB
cdef double _M10 = SRGB_TO_XYZ[1, 0]
cdef double _M11 = SRGB_TO_XYZ[1, 1]
cdef double _M12 = SRGB_TO_XYZ[1, 2]
cdef double _XDR = X_DR
cdef double _XDB = X_DB
cdef double _ZDR = Z_DR
cdef double _ZDB = Z_DB
cdef double _D = LAB_DELTA
cdef double _D3 = LAB_DELTA ** 3
cdef double _LIN[256]


cdef double _lin_slow(double c):
    c = c / 255.0
    if c <= 0.04045:
        return c / 12.92
    return pow((c + 0.055) / 1.055, 2.4)


cdef int _i
for _i in range(256):
    _LIN[_i] = _lin_slow(<double>_i)


cdef inline double _lab_f(double t) nogil:
    if t > _D3:
        return cbrt(t)
    return t / (3.0 * _D * _D) + 4.0 / 29.0


cdef inline double _clip255(double v) nogil:
    if v < 0.0:
        return 0.0
    if v > 255.0:
        return 255.0
    return v


def rgb_planes(rgb):
    cdef const cnp.uint8_t[:, :, ::1] src = np.ascontiguousarray(rgb, dtype=np.uint8)
    cdef Py_ssize_t M = src.shape[0], N = src.shape[1], i, j
    out_arr = np.empty((8, M, N), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    cdef double R, G, B, Y, r, g, b, xx, yy, zz, fx, fy, fz
    cdef double cb_k = 0.5 / (1.0 - _KB)
    cdef double cr_k = 0.5 / (1.0 - _KR)
    with nogil:
        for i in range(M):
            for j in range(N):
                R = src[i, j, 0]
                G = src[i, j, 1]
                B = src[i, j, 2]
                Y = G + _KR * (R - G) + _KB * (B - G)
                out[0, i, j] = Y
                out[1, i, j] = 0.492 * (B - Y)
                out[2, i, j] = 0.877 * (R - Y)
                out[3, i, j] = _clip255(128.0 + cb_k * (B - Y))
                out[4, i, j] = _clip255(128.0 + cr_k * (R - Y))
                r = _LIN[src[i, j, 0]]
                g = _LIN[src[i, j, 1]]
                b = _LIN[src[i, j, 2]]
                yy = _M10 * r + _M11 * g + _M12 * b
                xx = yy + _XDR * (r - g) + _XDB * (b - g)
                zz = yy + _ZDR * (r - g) + _ZDB * (b - g)
                fx = _lab_f(xx)
                fy = _lab_f(yy)
                fz = _lab_f(zz)
                out[5, i, j] = 116.0 * fy - 16.0
                out[6, i, j] = 500.0 * (fx - fy)
                out[7, i, j] = 200.0 * (fy - fz)
    return out_arr


def mean_abs_sparse(X, coef, powers):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef const double complex[:, ::1] c = np.ascontiguousarray(coef, dtype=np.complex128)
    cdef const double complex[:, ::1] p = np.ascontiguousarray(powers, dtype=np.complex128)
    cdef Py_ssize_t n = x.shape[0], m = x.shape[1], z = c.shape[1], i, k, j
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double acc_re, acc_im, s, cr, ci, pr, pi
    with nogil:
        for i in range(n):
            s = 0.0
            for k in range(m):
                acc_re = 0.0
                acc_im = 0.0
                for j in range(z):
                    cr = c[i, j].real
                    ci = c[i, j].imag
                    pr = p[j, k].real
                    pi = p[j, k].imag
                    acc_re = acc_re + (cr * pr - ci * pi)
                    acc_im = acc_im + (cr * pi + ci * pr)
                s = s + fabs(x[i, k] - sqrt(acc_re * acc_re + acc_im * acc_im))
            out[i] = s / m
    return out_arr


def threshold_counts(values, truth, thresholds):
    cdef const double[::1] v = np.ascontiguousarray(np.ravel(values), dtype=np.float64)
    cdef const cnp.uint8_t[::1] t = np.ascontiguousarray(np.ravel(truth), dtype=np.uint8)
    cdef const double[::1] th = np.ascontiguousarray(thresholds, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0], nt = th.shape[0], i, lo, hi, mid, k
    pos_arr = np.zeros(nt + 1, dtype=np.int64)
    neg_arr = np.zeros(nt + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] pos = pos_arr
    cdef cnp.int64_t[::1] neg = neg_arr
    with nogil:
        for i in range(n):
            # count thresholds strictly below v[i]
            lo = 0
            hi = nt
            while lo < hi:
                mid = (lo + hi) >> 1
                if th[mid] < v[i]:
                    lo = mid + 1
                else:
                    hi = mid
            if t[i]:
                pos[lo] += 1
            else:
                neg[lo] += 1
        for k in range(nt - 1, -1, -1):
            pos[k] += pos[k + 1]
            neg[k] += neg[k + 1]
    return pos_arr[1:].copy(), neg_arr[1:].copy()


def resize_bilinear(plane, Py_ssize_t out_h, Py_ssize_t out_w):
    cdef const double[:, ::1] src = np.ascontiguousarray(plane, dtype=np.float64)
    cdef Py_ssize_t H = src.shape[0], W = src.shape[1], i, j, r0, r1, c0, c1
    out_arr = np.empty((out_h, out_w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double sy = <double>H / out_h, sx = <double>W / out_w
    cdef double fy, fx, wy, wx, top, bot
    with nogil:
        for i in range(out_h):
            fy = (i + 0.5) * sy - 0.5
            if fy < 0.0:
                fy = 0.0
            if fy > H - 1:
                fy = H - 1
            r0 = <Py_ssize_t>floor(fy)
            r1 = r0 + 1 if r0 + 1 < H else H - 1
            wy = fy - r0
            for j in range(out_w):
                fx = (j + 0.5) * sx - 0.5
                if fx < 0.0:
                    fx = 0.0
                if fx > W - 1:
                    fx = W - 1
                c0 = <Py_ssize_t>floor(fx)
                c1 = c0 + 1 if c0 + 1 < W else W - 1
                wx = fx - c0
                top = src[r0, c0] * (1.0 - wx) + src[r0, c1] * wx
                bot = src[r1, c0] * (1.0 - wx) + src[r1, c1] * wx
                out[i, j] = top * (1.0 - wy) + bot * wy
    return out_arr
