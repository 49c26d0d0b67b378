"""Dense linear algebra helpers: rank decisions via singular values.

Every rank/nullity decision in the package goes through these routines so
that the gap-ambiguity policy is applied uniformly.
"""
import numpy as np

from .errors import NumericalRankFailure

DEFAULT_TOL = 1e-9

# a rank decision is accepted only if retained and discarded singular
# values are separated by this multiple of the threshold
GAP_FACTOR = 10.0


def _check_gap(s, thresh, tol, scale):
    kept = s[s > thresh]
    dropped = s[s <= thresh]
    if kept.size and dropped.size:
        if kept.min() - dropped.max() < GAP_FACTOR * tol * scale:
            raise NumericalRankFailure(
                "ambiguous singular value gap: retained %.3e vs discarded %.3e"
                % (kept.min(), dropped.max())
            )


def nullspace(a, tol=DEFAULT_TOL):
    """Orthonormal basis (columns) of the nullspace of `a`.

    The cutoff is relative: singular values below tol * s_max are treated
    as zero.  Raises NumericalRankFailure when the decision is ambiguous.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.size == 0 or not np.any(a):
        return np.eye(a.shape[1])
    _, s, vt = np.linalg.svd(a)
    scale = s[0] if s.size else 1.0
    thresh = tol * max(scale, 1.0)
    _check_gap(s, thresh, tol, max(scale, 1.0))
    rank = int(np.sum(s > thresh))
    return vt[rank:].T


def column_space(a, tol=DEFAULT_TOL):
    """Orthonormal basis (columns) of the column space of `a`."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.size == 0 or not np.any(a):
        return np.zeros((a.shape[0], 0))
    u, s, _ = np.linalg.svd(a)
    scale = s[0]
    thresh = tol * max(scale, 1.0)
    _check_gap(s, thresh, tol, max(scale, 1.0))
    rank = int(np.sum(s > thresh))
    return u[:, :rank]


def gram_orthonormalize(cols, gram):
    """Orthonormalize the columns of `cols` with respect to `gram`.

    Cholesky-based: if M = cols^T gram cols = L L^T then cols L^{-T} is
    gram-orthonormal with the same span.
    """
    cols = np.asarray(cols, dtype=float)
    if cols.shape[1] == 0:
        return cols
    m = cols.T @ gram @ cols
    chol = np.linalg.cholesky(m)
    return np.linalg.solve(chol, cols.T).T


def projection_residual(a, b):
    """How far the column span of `a` sticks out of the span of `b`.

    Both inputs must have orthonormal columns; returns a max-norm residual
    that is 0 iff span(a) is contained in span(b).
    """
    if a.shape[1] == 0:
        return 0.0
    if b.shape[1] == 0:
        return float(np.abs(a).max())
    return float(np.abs(a - b @ (b.T @ a)).max())


def span_distance(a, b):
    """Symmetric span mismatch of two orthonormal column families."""
    return max(projection_residual(a, b), projection_residual(b, a))
