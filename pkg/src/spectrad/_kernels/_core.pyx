# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""LAPACK-backed hot kernels.

Everything here is called inside tight loops (Aluthge iteration, angle
sweeps, orbit objective evaluations), so buffers are Fortran-ordered,
workspaces are hoisted out of loops, and LAPACK/BLAS are driven directly
to avoid per-call wrapper overhead.
"""

import numpy as np

from libc.math cimport cos, pow, sin

from scipy.linalg.cython_blas cimport zgemm
from scipy.linalg.cython_lapack cimport zgesdd, zheevd

from spectrad.errors import NumericalFailureError

BACKEND_NAME = "compiled"

ctypedef double complex zdbl

cdef double _EPS = 2.220446049250313e-16


cdef int _svd(zdbl[::1, :] a, double[::1] s, zdbl[::1, :] u, zdbl[::1, :] vt,
              bint want_uv) except -1:
    # a is destroyed; u/vt are written only when want_uv
    cdef int n = <int> a.shape[0]
    cdef int info = 0, lwork = -1, ldu = n, ldvt = n
    cdef char *joba = b'A'
    cdef char *jobn = b'N'
    cdef char *jz = joba if want_uv else jobn
    cdef zdbl wkopt
    cdef zdbl *up = &u[0, 0] if want_uv else &wkopt
    cdef zdbl *vtp = &vt[0, 0] if want_uv else &wkopt
    if not want_uv:
        ldu = 1
        ldvt = 1
    # worst-case gesdd real workspace for a square complex matrix
    rwork_arr = np.empty(max(1, 5 * n * n + 7 * n), dtype=np.float64)
    iwork_arr = np.empty(max(1, 8 * n), dtype=np.int32)
    cdef double[::1] rwork = rwork_arr
    cdef int[::1] iwork = iwork_arr
    zgesdd(jz, &n, &n, &a[0, 0], &n, &s[0], up, &ldu, vtp, &ldvt,
           &wkopt, &lwork, &rwork[0], &iwork[0], &info)
    lwork = <int> wkopt.real
    work_arr = np.empty(lwork, dtype=np.complex128)
    cdef zdbl[::1] work = work_arr
    zgesdd(jz, &n, &n, &a[0, 0], &n, &s[0], up, &ldu, vtp, &ldvt,
           &work[0], &lwork, &rwork[0], &iwork[0], &info)
    if info != 0:
        raise NumericalFailureError(f"zgesdd failed with info={info}")
    return 0


cdef int _heevd(zdbl[::1, :] h, double[::1] w, bint vectors) except -1:
    # h is overwritten; holds the eigenvector columns when vectors
    cdef int n = <int> h.shape[0]
    cdef int info = 0, lwork = -1, lrwork = -1, liwork = -1
    cdef char *jobv = b'V'
    cdef char *jobn = b'N'
    cdef char *jz = jobv if vectors else jobn
    cdef char *uplo = b'L'
    cdef zdbl wkopt
    cdef double rwopt
    cdef int iwopt
    zheevd(jz, uplo, &n, &h[0, 0], &n, &w[0], &wkopt, &lwork,
           &rwopt, &lrwork, &iwopt, &liwork, &info)
    lwork = <int> wkopt.real
    lrwork = <int> rwopt
    liwork = iwopt
    work_arr = np.empty(lwork, dtype=np.complex128)
    rwork_arr = np.empty(lrwork, dtype=np.float64)
    iwork_arr = np.empty(liwork, dtype=np.int32)
    cdef zdbl[::1] work = work_arr
    cdef double[::1] rwork = rwork_arr
    cdef int[::1] iwork = iwork_arr
    zheevd(jz, uplo, &n, &h[0, 0], &n, &w[0], &work[0], &lwork,
           &rwork[0], &lrwork, &iwork[0], &liwork, &info)
    if info != 0:
        raise NumericalFailureError(f"zheevd failed with info={info}")
    return 0


cdef void _gemm(char *ta, char *tb, int n, zdbl *a, zdbl *b, zdbl *c) noexcept nogil:
    cdef zdbl one = 1.0
    cdef zdbl zero = 0.0
    zgemm(ta, tb, &n, &n, &n, &one, a, &n, b, &n, &zero, c, &n)


def svdvals(a):
    """Singular values of a square complex matrix, descending."""
    af = np.array(a, dtype=np.complex128, order='F', copy=True)
    cdef Py_ssize_t n = af.shape[0]
    s_arr = np.empty(n, dtype=np.float64)
    _svd(af, s_arr, af, af, False)
    return s_arr


def svd(a):
    """Full SVD ``a = u @ diag(s) @ vh`` with s descending."""
    af = np.array(a, dtype=np.complex128, order='F', copy=True)
    cdef Py_ssize_t n = af.shape[0]
    u_arr = np.empty((n, n), dtype=np.complex128, order='F')
    vt_arr = np.empty((n, n), dtype=np.complex128, order='F')
    s_arr = np.empty(n, dtype=np.float64)
    _svd(af, s_arr, u_arr, vt_arr, True)
    return u_arr, s_arr, vt_arr


def eigh(h):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    hf = np.array(h, dtype=np.complex128, order='F', copy=True)
    cdef Py_ssize_t n = hf.shape[0]
    w_arr = np.empty(n, dtype=np.float64)
    _heevd(hf, w_arr, True)
    return w_arr, hf


def eigvalsh(h):
    """Eigenvalues of a Hermitian matrix, ascending."""
    hf = np.array(h, dtype=np.complex128, order='F', copy=True)
    cdef Py_ssize_t n = hf.shape[0]
    w_arr = np.empty(n, dtype=np.float64)
    _heevd(hf, w_arr, False)
    return w_arr


def aluthge_step(a, double lam, double tol_override=-1.0):
    """One lambda-weighted Aluthge application via a single SVD.

    With a = v diag(s) wh, the result is wh* B wh where
    B[i, j] = s[i]**lam * s[j]**(1-lam) * d[j] * (wh @ v)[i, j]
    and d masks singular values at or below the rank tolerance.
    """
    af = np.array(a, dtype=np.complex128, order='F', copy=True)
    cdef Py_ssize_t n = af.shape[0]
    u_arr = np.empty((n, n), dtype=np.complex128, order='F')
    vt_arr = np.empty((n, n), dtype=np.complex128, order='F')
    s_arr = np.empty(n, dtype=np.float64)
    _svd(af, s_arr, u_arr, vt_arr, True)
    cdef double[::1] s = s_arr
    cdef double tol = tol_override if tol_override >= 0.0 else n * _EPS * s[0]

    m_arr = np.empty((n, n), dtype=np.complex128, order='F')
    cdef zdbl[::1, :] mm = m_arr
    cdef zdbl[::1, :] u = u_arr
    cdef zdbl[::1, :] vt = vt_arr
    _gemm(b'N', b'N', <int> n, &vt[0, 0], &u[0, 0], &mm[0, 0])

    # pow(0, 0) == 1 keeps the lam in {0, 1} endpoints exact
    cdef Py_ssize_t i, j
    cdef double colc
    for j in range(n):
        colc = pow(s[j], 1.0 - lam) if s[j] > tol else 0.0
        for i in range(n):
            mm[i, j] = mm[i, j] * (pow(s[i], lam) * colc)

    c1_arr = np.empty((n, n), dtype=np.complex128, order='F')
    out_arr = np.empty((n, n), dtype=np.complex128, order='F')
    cdef zdbl[::1, :] c1 = c1_arr
    cdef zdbl[::1, :] out = out_arr
    _gemm(b'C', b'N', <int> n, &vt[0, 0], &mm[0, 0], &c1[0, 0])
    _gemm(b'N', b'N', <int> n, &c1[0, 0], &vt[0, 0], &out[0, 0])
    return np.ascontiguousarray(out_arr)


def realpart_top_eig_grid(a, thetas):
    """Largest eigenvalue of Re(exp(i*theta) * a) for each theta.

    Workspace is queried once and reused across the whole sweep.
    """
    af = np.array(a, dtype=np.complex128, order='F', copy=True)
    th_arr = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] th = th_arr
    cdef int n = <int> af.shape[0]
    cdef Py_ssize_t m = th.shape[0]
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    h_arr = np.empty((n, n), dtype=np.complex128, order='F')
    w_arr = np.empty(n, dtype=np.float64)
    cdef zdbl[::1, :] av = af
    cdef zdbl[::1, :] h = h_arr
    cdef double[::1] w = w_arr

    cdef char *jobn = b'N'
    cdef char *uplo = b'L'
    cdef int info = 0, lwork = -1, lrwork = -1, liwork = -1
    cdef zdbl wkopt
    cdef double rwopt
    cdef int iwopt
    zheevd(jobn, uplo, &n, &h[0, 0], &n, &w[0], &wkopt, &lwork,
           &rwopt, &lrwork, &iwopt, &liwork, &info)
    lwork = <int> wkopt.real
    lrwork = <int> rwopt
    liwork = iwopt
    work_arr = np.empty(lwork, dtype=np.complex128)
    rwork_arr = np.empty(lrwork, dtype=np.float64)
    iwork_arr = np.empty(liwork, dtype=np.int32)
    cdef zdbl[::1] work = work_arr
    cdef double[::1] rwork = rwork_arr
    cdef int[::1] iwork = iwork_arr

    cdef zdbl z
    cdef Py_ssize_t t, i, j
    for t in range(m):
        z = cos(th[t]) + 1j * sin(th[t])
        # lower triangle only; zheevd reads uplo='L'
        for j in range(n):
            for i in range(j, n):
                h[i, j] = 0.5 * (z * av[i, j] + (z * av[j, i]).conjugate())
        zheevd(jobn, uplo, &n, &h[0, 0], &n, &w[0], &work[0], &lwork,
               &rwork[0], &lrwork, &iwork[0], &liwork, &info)
        if info != 0:
            raise NumericalFailureError(f"zheevd failed with info={info}")
        out[t] = w[n - 1]
    return out_arr
