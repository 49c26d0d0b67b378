"""Metric 2-step nilpotent Lie algebras and their adapted orthonormal frames.

A metric Lie algebra is given by structure constants c[i][j][k] in a user
basis together with a symmetric positive-definite Gram matrix.  All the
geometry (central splitting, the skew maps attached to central directions,
the Levi-Civita connection) is computed in a g-orthonormal frame adapted
to the splitting n = v + z.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import AlgebraAbelian
from .linalg import (
    DEFAULT_TOL,
    column_space,
    gram_orthonormalize,
    nullspace,
    projection_residual,
)


@dataclass(frozen=True)
class MetricLieAlgebra:
    """Structure constants plus inner product in a fixed user basis.

    structure_constants[i, j, k] is the coefficient of b_k in [b_i, b_j].
    """

    dim: int
    basis_names: list
    structure_constants: np.ndarray
    gram: np.ndarray
    name: str = ""

    def __post_init__(self):
        c = np.asarray(self.structure_constants, dtype=float)
        g = np.asarray(self.gram, dtype=float)
        if c.shape != (self.dim,) * 3:
            raise ValueError("structure constant table has wrong shape")
        if g.shape != (self.dim, self.dim):
            raise ValueError("gram matrix has wrong shape")
        object.__setattr__(self, "structure_constants", c)
        object.__setattr__(self, "gram", g)
        if len(self.basis_names) != self.dim:
            raise ValueError("need one basis name per dimension")

    def bracket(self, x, y):
        """[x, y] in user coordinates."""
        return np.einsum("i,j,ijk->k", x, y, self.structure_constants)

    def ad_matrix(self, i):
        """Matrix of ad_{b_i} acting on user coordinates."""
        return self.structure_constants[i].T

    def inner(self, x, y):
        return float(x @ self.gram @ y)

    def to_json(self):
        brackets = []
        c = self.structure_constants
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    if c[i, j, k] != 0.0:
                        brackets.append([i, j, k, float(c[i, j, k])])
        out = {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis_names),
            "brackets": brackets,
        }
        if np.array_equal(self.gram, np.eye(self.dim)):
            out["metric"] = {"identity": True}
        else:
            out["metric"] = {"gram": self.gram.tolist()}
        return out

    @classmethod
    def from_json(cls, data):
        n = int(data["dim"])
        basis = list(data.get("basis", [f"b{i}" for i in range(n)]))
        c = np.zeros((n, n, n))
        for i, j, k, coeff in data.get("brackets", []):
            c[i, j, k] += coeff
            c[j, i, k] -= coeff
        metric = data.get("metric", {"identity": True})
        if metric.get("identity"):
            gram = np.eye(n)
        else:
            gram = np.asarray(metric["gram"], dtype=float)
        return cls(n, basis, c, gram, name=data.get("name", ""))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class Subspace:
    """Columns spanning a subspace, in whatever coordinates the caller uses."""

    columns: np.ndarray
    label: str = ""

    @property
    def dim(self):
        return self.columns.shape[1]


@dataclass(frozen=True)
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


@dataclass(frozen=True)
class AdaptedFrame:
    """g-orthonormal frame adapted to the orthogonal splitting n = v + z.

    Columns of `frame` are the frame vectors in user coordinates, v-part
    first.  `constants` holds the structure constants rewritten in frame
    coordinates, where the metric is the identity.  `j_matrices[t]` is the
    skew map on v attached to the t-th z-frame vector.
    """

    frame: np.ndarray
    v_indices: tuple
    z_indices: tuple
    a_indices: tuple
    j_matrices: tuple
    constants: np.ndarray

    @property
    def n(self):
        return self.frame.shape[0]

    @property
    def nv(self):
        return len(self.v_indices)

    @property
    def nz(self):
        return len(self.z_indices)

    def j_of(self, zcoords):
        """Skew map on v for a center element given in z-frame coordinates."""
        out = np.zeros((self.nv, self.nv))
        for t, jt in enumerate(self.j_matrices):
            out += zcoords[t] * jt
        return out


def validate(L: MetricLieAlgebra, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check antisymmetry, 2-step nilpotency and positive-definiteness."""
    c = L.structure_constants
    violations = []
    scale = max(1.0, float(np.abs(c).max()) if c.size else 1.0)
    if np.abs(c + c.transpose(1, 0, 2)).max() > tol * scale:
        violations.append("antisymmetry: c[i][j][k] != -c[j][i][k]")
    # [[b_i, b_j], b_k] must vanish for all triples; subsumes Jacobi here
    double = np.einsum("ijm,mkl->ijkl", c, c)
    if np.abs(double).max() > tol * scale * scale:
        violations.append("2-step: [[x,y],w] != 0 for some basis triple")
    g = L.gram
    if np.abs(g - g.T).max() > tol * max(1.0, np.abs(g).max()):
        violations.append("gram not symmetric")
    else:
        eigvals = np.linalg.eigvalsh(0.5 * (g + g.T))
        if eigvals.min() <= tol * max(1.0, eigvals.max()):
            violations.append("gram not positive definite")
    return ValidationReport(violations)


def center_commutator(L: MetricLieAlgebra, tol: float = DEFAULT_TOL):
    """Subspaces spanning the center z and the commutator n' (user coords).

    Raises AlgebraAbelian when n' = 0.
    """
    n = L.dim
    stacked = np.concatenate([L.ad_matrix(i) for i in range(n)], axis=0)
    z_cols = nullspace(stacked, tol)
    brackets = np.array(
        [L.structure_constants[i, j] for i in range(n) for j in range(i + 1, n)]
    ).T
    if brackets.size == 0 or np.abs(brackets).max() <= tol:
        raise AlgebraAbelian("all brackets vanish")
    comm_cols = column_space(brackets, tol)
    res = projection_residual(comm_cols, z_cols)
    if res > 10 * tol:
        raise AlgebraAbelian(
            "commutator not contained in center (residual %.2e): not 2-step" % res
        )
    return Subspace(z_cols, "center"), Subspace(comm_cols, "commutator")


def _canonical_span_basis(cols, gram, tol=1e-12):
    """g-orthonormal basis of span(cols) aligned with user axes when possible.

    Pivoted Gram-Schmidt on the g-orthogonal projections of the user basis
    vectors: deterministic, and returns the user vectors themselves whenever
    the span is axis-aligned and the metric is diagonal there.
    """
    cols = np.asarray(cols, dtype=float)
    n, p = cols.shape
    if p == 0:
        return cols
    c_on = gram_orthonormalize(cols, gram)
    proj = c_on @ (c_on.T @ gram)           # g-orthogonal projector onto the span
    cands = [proj @ e for e in np.eye(n)]
    chosen = []
    for _ in range(p):
        best, best_norm = None, -1.0
        for v in cands:
            w = v.copy()
            for u in chosen:
                w -= (u @ gram @ w) * u
            nrm = np.sqrt(max(w @ gram @ w, 0.0))
            if nrm > best_norm:
                best, best_norm = w, nrm
        if best_norm <= np.sqrt(tol):
            break
        chosen.append(best / best_norm)
    if len(chosen) != p:
        return c_on
    return np.array(chosen).T


def _frame_constants(L, frame):
    """Structure constants rewritten in the (orthonormal) frame columns."""
    # bracket of frame vectors in user coordinates, then frame coordinates
    br_user = np.einsum("ia,jb,ijk->abk", frame, frame, L.structure_constants)
    return np.einsum("abk,kc->abc", br_user, L.gram @ frame)


def adapted_frame(L: MetricLieAlgebra, tol: float = DEFAULT_TOL) -> AdaptedFrame:
    """Build a g-orthonormal frame split into v-part and z-part.

    The center comes from the SVD nullspace of the stacked ad matrices, v is
    its g-orthogonal complement, both parts are orthonormalized via a
    Cholesky factor, and the z-frame is rotated so that ker j is spanned by
    trailing frame vectors.  Works for abelian input too (v empty).
    """
    n = L.dim
    stacked = np.concatenate([L.ad_matrix(i) for i in range(n)], axis=0)
    z_raw = nullspace(stacked, tol)
    v_raw = nullspace(z_raw.T @ L.gram, tol) if z_raw.shape[1] < n else np.zeros((n, 0))
    v_cols = _canonical_span_basis(v_raw, L.gram)
    z_cols = _canonical_span_basis(z_raw, L.gram)
    nv, nz = v_cols.shape[1], z_cols.shape[1]

    def j_list(zc):
        mats = []
        for t in range(zc.shape[1]):
            br = np.einsum("ia,jb,ijk->abk", v_cols, v_cols, L.structure_constants)
            jt = np.einsum("abk,k->ba", br, L.gram @ zc[:, t])
            mats.append(jt)
        return mats

    mats = j_list(z_cols)
    if nz:
        # rotate the z-frame so the kernel of z -> j(z) is axis-aligned
        jstack = np.array([m.ravel() for m in mats]).T if nv else np.zeros((1, nz))
        ker = nullspace(jstack, tol)
        img = column_space(jstack.T, tol) if np.any(jstack) else np.zeros((nz, 0))
        if img.shape[1] + ker.shape[1] == nz and ker.shape[1] not in (0, nz):
            z_cols = np.concatenate(
                [
                    _canonical_span_basis(z_cols @ img, L.gram),
                    _canonical_span_basis(z_cols @ ker, L.gram),
                ],
                axis=1,
            )
            mats = j_list(z_cols)
    frame = np.concatenate([v_cols, z_cols], axis=1)
    a_idx = tuple(
        nv + t for t, m in enumerate(mats) if (m.size == 0 or np.abs(m).max() <= tol)
    )
    for m in mats:
        if m.size and np.abs(m + m.T).max() > 100 * tol * max(1.0, np.abs(m).max()):
            raise AssertionError("j matrix not skew; inconsistent input")
    return AdaptedFrame(
        frame=frame,
        v_indices=tuple(range(nv)),
        z_indices=tuple(range(nv, nv + nz)),
        a_indices=a_idx,
        j_matrices=tuple(m for m in mats),
        constants=_frame_constants(L, frame),
    )


def levi_civita(L: MetricLieAlgebra, F: AdaptedFrame, x, y):
    """Covariant derivative of y in the direction x, frame coordinates.

    Three-case table: half the bracket on v x v, minus half of j(z) applied
    to the v-argument in the mixed cases, zero on z x z.
    """
    nv, nz = F.nv, F.nz
    xv, xz = x[:nv], x[nv:]
    yv, yz = y[:nv], y[nv:]
    out_v = np.zeros(nv)
    out_z = np.zeros(nz)
    for t, jt in enumerate(F.j_matrices):
        out_z[t] += 0.5 * float(yv @ jt @ xv)
        out_v += -0.5 * (yz[t] * (jt @ xv) + xz[t] * (jt @ yv))
    return np.concatenate([out_v, out_z])


def nabla_matrix(L: MetricLieAlgebra, F: AdaptedFrame, y):
    """Matrix of the skew endomorphism u -> nabla_y u in frame coordinates."""
    n = F.n
    cols = [levi_civita(L, F, y, np.eye(n)[:, i]) for i in range(n)]
    return np.array(cols).T


def j_trace_form(L: MetricLieAlgebra, F: AdaptedFrame):
    """Symmetric matrix [tr(J_s J_t)] on the z-frame; an isometry invariant."""
    nz = F.nz
    out = np.zeros((nz, nz))
    for s in range(nz):
        for t in range(nz):
            out[s, t] = float(np.trace(F.j_matrices[s] @ F.j_matrices[t]))
    return out
