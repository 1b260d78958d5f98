"""Seeded Haar sampling of orthogonal and bistochastic-orthogonal matrices.

This is the only numerically hot code in the package.  Two interchangeable
backends produce the same matrix stream:

* ``numba``  - scalar kernel compiled with ``@njit`` (default when numba
  is importable),
* ``numpy``  - vectorized pure-numpy fallback.

Selection: the ``EQG_BACKEND`` environment variable ("numba" or "numpy"),
overridable per call.  Both backends consume one shared counter-based
random stream, so they agree to floating-point noise and each is bitwise
deterministic for a fixed seed.

The stream is splitmix64 (draw k is a pure function of seed and k), turned
into standard Gaussians by the polar variant of the Box-Muller transform,
and into Haar orthogonal matrices by modified Gram-Schmidt on columns; the
Gram-Schmidt pivots are positive by construction, which is the sign
convention that makes the distribution Haar.
"""

from __future__ import annotations

import math
import os

import numpy as np

GENERATOR = "splitmix64-polar"
BACKEND_ENV = "EQG_BACKEND"

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U53 = 1.0 / 9007199254740992.0  # 2**-53

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]


def available_backends():
    return ("numba", "numpy") if HAS_NUMBA else ("numpy",)


def active_backend(backend=None):
    """Resolve the backend: explicit argument, else EQG_BACKEND, else best."""
    choice = backend or os.environ.get(BACKEND_ENV, "")
    if not choice:
        choice = "numba" if HAS_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {choice!r}; expected 'numba' or 'numpy'")
    if choice == "numba" and not HAS_NUMBA:
        raise ValueError("numba backend requested but numba is not installed")
    return choice


# ---------------------------------------------------------------------------
# numpy backend


def _uniforms_numpy(seed, start, count):
    """Uniform [0,1) draws start..start+count-1 of the splitmix64 stream."""
    k = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = np.uint64(seed) + k * _GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * _U53


def _gaussians_numpy(seed, total):
    """First `total` Gaussians of the polar stream for this seed."""
    chunks = []
    have = 0
    pair_index = 0
    while have < total:
        want_pairs = max(4096, int((total - have) * 0.8) + 16)
        u = _uniforms_numpy(seed, 2 * pair_index, 2 * want_pairs)
        pair_index += want_pairs
        x = 2.0 * u[0::2] - 1.0
        y = 2.0 * u[1::2] - 1.0
        s = x * x + y * y
        ok = (s > 0.0) & (s < 1.0)
        x, y, s = x[ok], y[ok], s[ok]
        f = np.sqrt(-2.0 * np.log(s) / s)
        pairs = np.empty((x.size, 2))
        pairs[:, 0] = x * f
        pairs[:, 1] = y * f
        flat = pairs.ravel()
        chunks.append(flat)
        have += flat.size
    return np.concatenate(chunks)[:total]


def _orthogonal_numpy(n, count, seed):
    a = _gaussians_numpy(seed, count * n * n).reshape(count, n, n)
    # Batched modified Gram-Schmidt on columns; accumulation order matches
    # the scalar kernel so both backends emit the same matrices.  Two full
    # sweeps keep the loss of orthogonality at rounding level even for
    # ill-conditioned draws.
    for _ in range(2):
        for j in range(n):
            for i in range(j):
                d = np.zeros(count)
                for t in range(n):
                    d += a[:, t, i] * a[:, t, j]
                for t in range(n):
                    a[:, t, j] -= d * a[:, t, i]
            nrm = np.zeros(count)
            for t in range(n):
                nrm += a[:, t, j] * a[:, t, j]
            nrm = np.sqrt(nrm)
            for t in range(n):
                a[:, t, j] /= nrm
    return a


# ---------------------------------------------------------------------------
# numba backend


@njit(cache=True, nogil=True)
def _orthogonal_numba(n, count, seed):  # pragma: no cover - compiled
    gamma = np.uint64(0x9E3779B97F4A7C15)
    mix1 = np.uint64(0xBF58476D1CE4E5B9)
    mix2 = np.uint64(0x94D049BB133111EB)
    u53 = 1.0 / 9007199254740992.0
    out = np.empty((count, n, n))
    seed64 = np.uint64(seed)
    k = np.uint64(0)
    one = np.uint64(1)
    pending = 0.0
    has_pending = False
    for m in range(count):
        a = out[m]
        filled = 0
        size = n * n
        while filled < size:
            if has_pending:
                a[filled // n, filled % n] = pending
                filled += 1
                has_pending = False
                continue
            # one polar rejection step: two uniforms -> maybe two Gaussians
            k += one
            z = seed64 + k * gamma
            z = (z ^ (z >> np.uint64(30))) * mix1
            z = (z ^ (z >> np.uint64(27))) * mix2
            z = z ^ (z >> np.uint64(31))
            u1 = np.float64(z >> np.uint64(11)) * u53
            k += one
            z = seed64 + k * gamma
            z = (z ^ (z >> np.uint64(30))) * mix1
            z = (z ^ (z >> np.uint64(27))) * mix2
            z = z ^ (z >> np.uint64(31))
            u2 = np.float64(z >> np.uint64(11)) * u53
            x = 2.0 * u1 - 1.0
            y = 2.0 * u2 - 1.0
            s = x * x + y * y
            if s <= 0.0 or s >= 1.0:
                continue
            f = math.sqrt(-2.0 * math.log(s) / s)
            a[filled // n, filled % n] = x * f
            filled += 1
            pending = y * f
            has_pending = True
        # modified Gram-Schmidt on columns, positive pivots, two sweeps
        for _ in range(2):
            for j in range(n):
                for i in range(j):
                    d = 0.0
                    for t in range(n):
                        d += a[t, i] * a[t, j]
                    for t in range(n):
                        a[t, j] -= d * a[t, i]
                nrm = 0.0
                for t in range(n):
                    nrm += a[t, j] * a[t, j]
                nrm = math.sqrt(nrm)
                for t in range(n):
                    a[t, j] /= nrm
        # a leftover Gaussian stays pending: the Gaussian stream is
        # continuous across samples, exactly as in the numpy backend
    return out


# ---------------------------------------------------------------------------
# public surface


def sample_orthogonal(n, count, seed, backend=None):
    """`count` Haar orthogonal n x n matrices for this seed, stacked."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if count < 0:
        raise ValueError("count must be >= 0")
    if count == 0:
        return np.empty((0, n, n))
    if active_backend(backend) == "numba":
        return _orthogonal_numba(n, count, np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF))
    return _orthogonal_numpy(n, count, int(seed) & 0xFFFFFFFFFFFFFFFF)


def ones_fixing_rotation(n):
    """Symmetric orthogonal matrix mapping e_1 to the normalized ones vector."""
    u = np.full(n, 1.0 / math.sqrt(n))
    v = np.zeros(n)
    v[0] = 1.0
    v -= u
    vv = float(v @ v)
    if vv == 0.0:
        return np.eye(n)
    return np.eye(n) - 2.0 * np.outer(v, v) / vv


def sample_bistochastic(n, count, seed, backend=None):
    """`count` Haar orthogonal matrices fixing the all-ones vector.

    Built as R (1 + Q) R^t with Q Haar on the (n-1)-dimensional orthogonal
    group and R the fixed reflection sending e_1 to (1,...,1)/sqrt(n), so
    every sample has all row and column sums equal to 1.
    """
    if n < 2:
        raise ValueError("bistochastic sampling needs dimension >= 2")
    q = sample_orthogonal(n - 1, count, seed, backend=backend)
    d = np.zeros((count if count else 0, n, n))
    d[:, 0, 0] = 1.0
    d[:, 1:, 1:] = q
    r = ones_fixing_rotation(n)
    return np.matmul(r, np.matmul(d, r))
