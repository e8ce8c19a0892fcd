"""Hot Monte-Carlo kernels for the built-in sign model.

Two interchangeable implementations exist: numba-jitted loops and vectorized
numpy.  Both consume the same Gaussian draws and accumulate in exact integer
arithmetic, so they return bit-identical sums.  The jitted path is used when
numba imports cleanly; set BELLSIM_DISABLE_NUMBA=1 to force the numpy path
(the benchmark under benchmarks/ compares the two).
"""

from __future__ import annotations

import os

import numpy as np


def numpy_sign_products(gauss, a, b):
    """Sum over samples of A(a, lam) * B(b, lam) for the sign model.

    lam is the direction of each Gaussian row (signs do not depend on the
    radius, so rows are used unnormalized); A = sign(a . lam) with
    sign(0) = +1, and B(b, lam) = -sign(b . lam).
    """
    ra = np.where(gauss @ a >= 0.0, 1, -1)
    rb = np.where(gauss @ b >= 0.0, -1, 1)
    return int(np.sum(ra * rb, dtype=np.int64))


def numpy_sign_chsh(gauss, a, a_p, b, b_p):
    """Per-sample CHSH combination for the sign model.

    Returns (sum of c, count of samples where c^2 != 4); the count is a
    tripwire, algebra forces c into {-2, +2}.
    """
    ra = np.where(gauss @ a >= 0.0, 1, -1)
    rap = np.where(gauss @ a_p >= 0.0, 1, -1)
    rb = np.where(gauss @ b >= 0.0, -1, 1)
    rbp = np.where(gauss @ b_p >= 0.0, -1, 1)
    c = ra * rb + rap * rb + ra * rbp - rap * rbp
    bad = int(np.count_nonzero(c * c != 4))
    return int(np.sum(c, dtype=np.int64)), bad


numba_sign_products = None
numba_sign_chsh = None

_DISABLE = os.environ.get("BELLSIM_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

if not _DISABLE:
    try:
        from numba import njit
    except ImportError:
        njit = None

    if njit is not None:

        @njit(cache=True)
        def _nb_sign_products(gauss, a, b):
            total = np.int64(0)
            for i in range(gauss.shape[0]):
                x, y, z = gauss[i, 0], gauss[i, 1], gauss[i, 2]
                ra = 1 if x * a[0] + y * a[1] + z * a[2] >= 0.0 else -1
                rb = -1 if x * b[0] + y * b[1] + z * b[2] >= 0.0 else 1
                total += ra * rb
            return total

        @njit(cache=True)
        def _nb_sign_chsh(gauss, a, a_p, b, b_p):
            total = np.int64(0)
            bad = np.int64(0)
            for i in range(gauss.shape[0]):
                x, y, z = gauss[i, 0], gauss[i, 1], gauss[i, 2]
                ra = 1 if x * a[0] + y * a[1] + z * a[2] >= 0.0 else -1
                rap = 1 if x * a_p[0] + y * a_p[1] + z * a_p[2] >= 0.0 else -1
                rb = -1 if x * b[0] + y * b[1] + z * b[2] >= 0.0 else 1
                rbp = -1 if x * b_p[0] + y * b_p[1] + z * b_p[2] >= 0.0 else 1
                c = ra * rb + rap * rb + ra * rbp - rap * rbp
                if c * c != 4:
                    bad += 1
                total += c
            return total, bad

        def numba_sign_products(gauss, a, b):  # noqa: F811
            return int(_nb_sign_products(gauss, a, b))

        def numba_sign_chsh(gauss, a, a_p, b, b_p):  # noqa: F811
            total, bad = _nb_sign_chsh(gauss, a, a_p, b, b_p)
            return int(total), int(bad)


USING_NUMBA = numba_sign_chsh is not None

sign_products = numba_sign_products if USING_NUMBA else numpy_sign_products
sign_chsh = numba_sign_chsh if USING_NUMBA else numpy_sign_chsh
