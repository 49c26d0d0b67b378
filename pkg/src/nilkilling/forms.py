"""Exterior algebra over the adapted frame.

Forms are stored densely over the C(n, k) strictly increasing index tuples
of frame indices; the frame is orthonormal so the coefficient vector also
gives the inner product.  Alongside the standard wedge/contraction pair,
this module provides the derivation action of skew endomorphisms, the Lie
algebra differential, the covariant derivative of invariant forms, and the
projection onto the v/z bigrading.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .algebra import AdaptedFrame, MetricLieAlgebra, nabla_matrix
from .errors import DegreeOverflow, NotSkew
from .linalg import DEFAULT_TOL


@lru_cache(maxsize=None)
def basis_tuples(n, k):
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def tuple_index(n, k):
    return {t: i for i, t in enumerate(basis_tuples(n, k))}


class Form:
    """Degree-k alternating form in frame coordinates."""

    __slots__ = ("n", "degree", "vec")

    def __init__(self, n, degree, vec=None):
        if not 0 <= degree <= n:
            raise ValueError("degree out of range")
        self.n = n
        self.degree = degree
        if vec is None:
            vec = np.zeros(comb(n, degree))
        self.vec = np.asarray(vec, dtype=float)
        if self.vec.shape != (comb(n, degree),):
            raise ValueError("coefficient vector has wrong length")

    @classmethod
    def from_terms(cls, n, degree, terms):
        """Build from (indices, coeff) pairs; indices need not be sorted."""
        out = cls(n, degree)
        pos = tuple_index(n, degree)
        for indices, coeff in terms:
            idx = tuple(indices)
            if len(set(idx)) != len(idx):
                continue
            srt = tuple(sorted(idx))
            out.vec[pos[srt]] += _sort_sign(idx) * coeff
        return out

    @classmethod
    def basis(cls, n, degree, indices):
        return cls.from_terms(n, degree, [(indices, 1.0)])

    def coeff(self, indices):
        idx = tuple(indices)
        srt = tuple(sorted(idx))
        if len(set(idx)) != len(idx):
            return 0.0
        return _sort_sign(idx) * self.vec[tuple_index(self.n, self.degree)[srt]]

    def terms(self, tol=0.0):
        for t, c in zip(basis_tuples(self.n, self.degree), self.vec):
            if abs(c) > tol:
                yield t, float(c)

    def copy(self):
        return Form(self.n, self.degree, self.vec.copy())

    def norm(self):
        return float(np.linalg.norm(self.vec))

    def __add__(self, other):
        self._compat(other)
        return Form(self.n, self.degree, self.vec + other.vec)

    def __sub__(self, other):
        self._compat(other)
        return Form(self.n, self.degree, self.vec - other.vec)

    def __mul__(self, scalar):
        return Form(self.n, self.degree, self.vec * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return Form(self.n, self.degree, -self.vec)

    def _compat(self, other):
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("incompatible forms")

    def __repr__(self):
        inside = " + ".join(
            "%.3g*e%s" % (c, "".join(str(i) for i in t)) for t, c in self.terms(1e-12)
        )
        return "Form(%d, deg=%d: %s)" % (self.n, self.degree, inside or "0")

    def to_json(self):
        return {
            "degree": self.degree,
            "terms": [
                {"indices": list(t), "coeff": c} for t, c in self.terms(1e-15)
            ],
        }

    @classmethod
    def from_json(cls, data, n):
        return cls.from_terms(
            n, int(data["degree"]),
            [(term["indices"], term["coeff"]) for term in data.get("terms", [])],
        )


def _sort_sign(idx):
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def _merge_sign(s, t):
    """Sign of sorting the concatenation of two sorted disjoint tuples."""
    sign = 1
    for x in t:
        sign *= (-1) ** sum(1 for y in s if y > x)
    return sign


def oneform(vector):
    """The 1-form dual to a frame-coordinate vector (frame is orthonormal)."""
    return Form(len(vector), 1, np.asarray(vector, dtype=float))


def wedge(omega: Form, eta: Form) -> Form:
    """Exterior product with shuffle signs."""
    n = omega.n
    k, l = omega.degree, eta.degree
    if k + l > n:
        raise DegreeOverflow("wedge degree %d exceeds dimension %d" % (k + l, n))
    out = Form(n, k + l)
    pos = tuple_index(n, k + l)
    for s, a in omega.terms():
        for t, b in eta.terms():
            if set(s) & set(t):
                continue
            merged = tuple(sorted(s + t))
            out.vec[pos[merged]] += _merge_sign(s, t) * a * b
    return out


def contract(x, omega: Form) -> Form:
    """Interior product of a frame-coordinate vector with a form."""
    if omega.degree == 0:
        return Form(omega.n, 0)
    x = np.asarray(x, dtype=float)
    out = Form(omega.n, omega.degree - 1)
    pos = tuple_index(omega.n, omega.degree - 1)
    for t, c in omega.terms():
        for p, i in enumerate(t):
            if x[i] == 0.0:
                continue
            rest = t[:p] + t[p + 1:]
            out.vec[pos[rest]] += ((-1) ** p) * x[i] * c
    return out


def skew_extend(f, omega: Form, tol=DEFAULT_TOL) -> Form:
    """Derivation action of a skew endomorphism on a form.

    Sum over the frame of f(u_i) wedged with the contraction by u_i; the
    action on a 1-form dual to u is the 1-form dual to f(u).
    """
    f = np.asarray(f, dtype=float)
    scale = max(1.0, np.abs(f).max()) if f.size else 1.0
    if f.size and np.abs(f + f.T).max() > tol * scale:
        raise NotSkew("endomorphism is not skew-symmetric")
    out = Form(omega.n, omega.degree)
    if omega.degree == 0:
        return out
    basis = np.eye(omega.n)
    for i in range(omega.n):
        col = f[:, i]
        if not np.any(col):
            continue
        out = out + wedge(oneform(col), contract(basis[:, i], omega))
    return out


def _d_of_frame_oneform(F: AdaptedFrame, index):
    """d(e^index): minus the frame bracket coefficients as a 2-form."""
    n = F.n
    out = Form(n, 2)
    pos = tuple_index(n, 2)
    c = F.constants
    for a in range(n):
        for b in range(a + 1, n):
            coeff = c[a, b, index]
            if coeff != 0.0:
                out.vec[pos[(a, b)]] -= coeff
    return out


def lie_diff(L: MetricLieAlgebra, F: AdaptedFrame, omega: Form) -> Form:
    """Lie algebra (Chevalley-Eilenberg) differential in frame coordinates."""
    n = F.n
    k = omega.degree
    if k >= n:
        raise DegreeOverflow("differential of a top-degree form")
    out = Form(n, k + 1)
    d1 = {}
    for t, c in omega.terms():
        for p, i in enumerate(t):
            if i not in d1:
                d1[i] = _d_of_frame_oneform(F, i)
            di = d1[i]
            if not np.any(di.vec):
                continue
            rest = t[:p] + t[p + 1:]
            out = out + ((-1) ** p * c) * wedge(di, Form.basis(n, k - 1, rest))
    return out


def nabla_form(L: MetricLieAlgebra, F: AdaptedFrame, y, omega: Form) -> Form:
    """Covariant derivative of an invariant form in the direction y."""
    if omega.degree == 0:
        return Form(omega.n, 0)
    return skew_extend(nabla_matrix(L, F, y), omega)


def bigrade(F: AdaptedFrame, omega: Form, l: int) -> Form:
    """Projection onto the component with l v-legs and degree-l z-legs."""
    if not 0 <= l <= omega.degree:
        raise ValueError("bigrade index out of range")
    vset = set(F.v_indices)
    out = omega.copy()
    for i, t in enumerate(basis_tuples(omega.n, omega.degree)):
        if sum(1 for x in t if x in vset) != l:
            out.vec[i] = 0.0
    return out


def transform(omega: Form, matrix, n_out=None) -> Form:
    """Pull a form back along a linear map.

    `matrix` maps R^{n_out} to R^{n_in} coordinates (n_in = omega.n); the
    result is the form x -> omega(Mx, ...), a form on R^{n_out}.
    """
    matrix = np.asarray(matrix, dtype=float)
    n_in, n_cols = matrix.shape
    if n_in != omega.n:
        raise ValueError("matrix rows must match form dimension")
    n_out = n_cols if n_out is None else n_out
    k = omega.degree
    out = Form(n_out, k)
    src = [(t, c) for t, c in omega.terms()]
    for i, s in enumerate(basis_tuples(n_out, k)):
        total = 0.0
        for t, c in src:
            total += c * np.linalg.det(matrix[np.ix_(t, s)])
        out.vec[i] = total
    return out
