"""Decomposition of metric 2-step nilpotent algebras and factor analysis.

Splits an algebra into an abelian block plus irreducible orthogonal ideals,
detects bi-invariant orthogonal complex structures, tests the algebraic
criterion for natural reductivity, and evaluates the two dimension
formulas for Killing 2- and 3-forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np

from .algebra import (
    AdaptedFrame,
    MetricLieAlgebra,
    Subspace,
    adapted_frame,
    validate,
)
from .errors import (
    DecompositionAmbiguous,
    InternalInvariantViolation,
    NotComplexStructure,
)
from .linalg import DEFAULT_TOL, nullspace


@dataclass(frozen=True)
class FactorReport:
    """One irreducible factor together with its analysis flags."""

    sub_algebra: MetricLieAlgebra
    columns: np.ndarray          # factor basis in ambient frame coordinates
    frame: AdaptedFrame          # adapted frame of the factor itself
    has_complex_structure: bool
    J: Optional[np.ndarray]
    naturally_reductive: bool
    compact_bracket: Optional[np.ndarray]

    @property
    def dim(self):
        return self.columns.shape[1]


@dataclass(frozen=True)
class Decomposition:
    abelian: Subspace
    factors: list
    transform: np.ndarray        # columns: abelian block then factor blocks

    @property
    def d(self):
        return self.abelian.dim


def _restrict_constants(constants, cols):
    """Structure constants of the span of orthonormal columns `cols`."""
    return np.einsum("ai,bj,abk,kc->ijc", cols, cols, constants, cols)


def _solve_intertwiners(constants, tol, symmetric):
    """Basis of {S : S[x,y] = [Sx,y]} among symmetric or skew matrices.

    Returns matrices orthonormal in the Frobenius inner product.
    """
    p = constants.shape[0]
    params = []
    if symmetric:
        for i in range(p):
            for j in range(i, p):
                e = np.zeros((p, p))
                e[i, j] = 1.0
                e[j, i] = 1.0
                params.append(e)
    else:
        for i in range(p):
            for j in range(i + 1, p):
                e = np.zeros((p, p))
                e[i, j] = 1.0
                e[j, i] = -1.0
                params.append(e)
    if not params:
        return []
    cols = []
    for s in params:
        lhs = np.einsum("pk,abk->abp", s, constants)
        rhs = np.einsum("ca,cbp->abp", s, constants)
        cols.append((lhs - rhs).ravel())
    system = np.array(cols).T
    null = nullspace(system, tol)
    mats = []
    for v in null.T:
        m = sum(c * e for c, e in zip(v, params))
        mats.append(m)
    # re-orthonormalize in the Frobenius inner product
    if mats:
        stack = np.array([m.ravel() for m in mats]).T
        q, _ = np.linalg.qr(stack)
        mats = [q[:, i].reshape(p, p) for i in range(q.shape[1])]
    return mats


def bracket_commutant(L: MetricLieAlgebra, F: AdaptedFrame, tol=DEFAULT_TOL):
    """Symmetric matrices commuting with the bracket: S[x,y] = [Sx,y].

    Computed in frame coordinates on the whole algebra; a 1-dimensional
    result (the identity line) certifies irreducibility.
    """
    return _solve_intertwiners(F.constants, tol, symmetric=True)


def _pick_splitting_element(mats, p):
    """The commutant basis element farthest from the line through Id."""
    best, best_norm = None, -1.0
    eye = np.eye(p)
    for m in mats:
        m0 = m - (np.trace(m) / p) * eye
        nrm = np.linalg.norm(m0)
        if nrm > best_norm:
            best, best_norm = m0, nrm
    return 0.5 * (best + best.T)


def _cluster(eigvals, tol):
    """Group sorted eigenvalues into clusters separated by a gap threshold."""
    order = np.argsort(eigvals)
    scale = max(1.0, float(np.abs(eigvals).max()))
    gap = 10.0 * tol * scale
    clusters = [[order[0]]]
    for idx in order[1:]:
        if eigvals[idx] - eigvals[clusters[-1][-1]] > gap:
            clusters.append([idx])
        else:
            clusters[-1].append(idx)
    return clusters


def find_complex_structure(L_irr, F: AdaptedFrame, tol=DEFAULT_TOL):
    """Bi-invariant orthogonal complex structure of an irreducible factor.

    Solves the linear space of skew D with D[x,y] = [Dx,y]; a non-zero
    solution must square to a negative multiple of the identity, which is
    rescaled to the complex structure.  Returns None when the space is 0.
    """
    sols = _solve_intertwiners(F.constants, tol, symmetric=False)
    if not sols:
        return None
    if len(sols) > 1:
        raise InternalInvariantViolation(
            "bi-invariant skew solution space has dimension %d > 1" % len(sols)
        )
    d = sols[0]
    d2 = d @ d
    p = d.shape[0]
    lam = float(np.trace(d2)) / p
    scale = max(1.0, float(np.abs(d2).max()))
    if np.abs(d2 - lam * np.eye(p)).max() > 100 * tol * scale:
        raise InternalInvariantViolation(
            "square of bi-invariant skew map is not scalar; factor not irreducible"
        )
    if lam >= 0:
        raise InternalInvariantViolation("scalar square is not negative")
    j = d / np.sqrt(-lam)
    # deterministic sign: first non-zero entry positive
    flat = j.ravel()
    lead = flat[np.abs(flat) > 1e-8]
    if lead.size and lead[0] < 0:
        j = -j
    return j


def naturally_reductive_type(L_irr, F: AdaptedFrame, tol=DEFAULT_TOL):
    """Compact bracket on z when the factor is of naturally reductive type.

    Checks that the skew maps attached to z close under commutators and
    that the induced bracket on z has skew adjoint maps; returns the m^3
    bracket table or None.
    """
    mats = F.j_matrices
    m = len(mats)
    if m == 0:
        return None
    a = np.array([jt.ravel() for jt in mats]).T
    scale = max(1.0, float(np.abs(a).max()))
    cb = np.zeros((m, m, m))
    for s in range(m):
        for t in range(s + 1, m):
            target = (mats[s] @ mats[t] - mats[t] @ mats[s]).ravel()
            coef, *_ = np.linalg.lstsq(a, target, rcond=None)
            if np.linalg.norm(a @ coef - target) > 100 * tol * scale:
                return None
            cb[s, t] = coef
            cb[t, s] = -coef
    for s in range(m):
        k = cb[s]
        if np.abs(k + k.T).max() > 100 * tol * max(1.0, np.abs(k).max()):
            return None
    return cb


def decompose(L: MetricLieAlgebra, tol=DEFAULT_TOL) -> Decomposition:
    """Split into the abelian block plus irreducible orthogonal ideals.

    Works in frame coordinates: the kernel of j is split off first, then
    blocks are subdivided along eigenspaces of generic bracket-commutant
    elements until every commutant is 1-dimensional.
    """
    report = validate(L, tol)
    if not report.ok:
        raise ValueError("invalid algebra: %s" % "; ".join(report.violations))
    F = adapted_frame(L, tol)
    n = F.n
    nv = F.nv
    eye = np.eye(n)
    a_idx = list(F.a_indices)
    abelian = Subspace(eye[:, a_idx], "abelian")
    v0 = eye[:, list(F.v_indices)]
    z0 = eye[:, [i for i in F.z_indices if i not in a_idx]]
    const = F.constants

    blocks = [(v0, z0)] if v0.shape[1] else []
    final = []
    while blocks:
        vc, zc = blocks.pop()
        cols = np.concatenate([vc, zc], axis=1)
        sub = _restrict_constants(const, cols)
        comm = _solve_intertwiners(sub, tol, symmetric=True)
        if len(comm) <= 1:
            final.append((vc, zc))
            continue
        p = cols.shape[1]
        pv = vc.shape[1]
        s_mat = _pick_splitting_element(comm, p)
        if np.abs(s_mat[:pv, pv:]).max() > 100 * tol * max(1.0, np.abs(s_mat).max()):
            raise DecompositionAmbiguous("splitting element mixes v and z parts")
        ev_v, u_v = np.linalg.eigh(s_mat[:pv, :pv])
        ev_z, u_z = np.linalg.eigh(s_mat[pv:, pv:])
        allvals = np.concatenate([ev_v, ev_z])
        clusters = _cluster(allvals, tol)
        if len(clusters) < 2:
            raise DecompositionAmbiguous(
                "commutant is %d-dimensional but eigenvalue clusters are not "
                "separated by the gap threshold" % len(comm)
            )
        for cl in clusters:
            sel_v = [i for i in cl if i < pv]
            sel_z = [i - pv for i in cl if i >= pv]
            if not sel_v or not sel_z:
                raise DecompositionAmbiguous(
                    "eigenvalue cluster missing a v-part or z-part"
                )
            blocks.append((vc @ u_v[:, sel_v], zc @ u_z[:, sel_z]))

    # deterministic order: largest factors first, then lexicographic columns
    final.sort(key=lambda b: (-(b[0].shape[1] + b[1].shape[1]),
                              tuple(np.round(b[0][:, 0], 6))))
    factors = []
    parts = [abelian.columns]
    for vc, zc in final:
        cols = np.concatenate([vc, zc], axis=1)
        parts.append(cols)
        sub_const = _restrict_constants(const, cols)
        p = cols.shape[1]
        sub = MetricLieAlgebra(
            p, [f"f{i}" for i in range(p)], sub_const, np.eye(p),
            name=f"{L.name}:factor" if L.name else "factor",
        )
        ff = adapted_frame(sub, tol)
        j_struct = find_complex_structure(sub, ff, tol)
        cbr = naturally_reductive_type(sub, ff, tol)
        if j_struct is not None and cbr is not None:
            raise InternalInvariantViolation(
                "factor flagged both complex and naturally reductive"
            )
        factors.append(
            FactorReport(
                sub_algebra=sub,
                columns=cols,
                frame=ff,
                has_complex_structure=j_struct is not None,
                J=j_struct,
                naturally_reductive=cbr is not None,
                compact_bracket=cbr,
            )
        )
    transform = np.concatenate(parts, axis=1) if parts else np.zeros((n, 0))
    # the blocks must reassemble the algebra: no cross-block brackets
    c_rot = _restrict_constants(const, transform)
    offsets = np.cumsum([0] + [p.shape[1] for p in parts])
    block_of = np.zeros(n, dtype=int)
    for b in range(len(parts)):
        block_of[offsets[b]:offsets[b + 1]] = b
    scale = max(1.0, float(np.abs(c_rot).max()))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({block_of[i], block_of[j], block_of[k]}) > 1:
                    if abs(c_rot[i, j, k]) > 100 * tol * scale:
                        raise DecompositionAmbiguous(
                            "cross-block bracket residual %.2e" % c_rot[i, j, k]
                        )
    return Decomposition(abelian=abelian, factors=factors, transform=transform)


def killing_dimensions(L: MetricLieAlgebra, tol=DEFAULT_TOL):
    """(dimK2, dimK3, d, r2, r3) from the decomposition and the formulas."""
    dec = decompose(L, tol)
    d = dec.d
    r2 = sum(1 for f in dec.factors if f.has_complex_structure)
    r3 = sum(1 for f in dec.factors if f.naturally_reductive)
    dim_k2 = comb(d, 2) + r2
    dim_k3 = comb(d, 3) + r3
    return dim_k2, dim_k3, d, r2, r3


def compatible_metric(H: MetricLieAlgebra, J, h) -> MetricLieAlgebra:
    """Equip an algebra carrying a bi-invariant complex structure J with a
    metric for which J is orthogonal: gram = h + J^T h J."""
    J = np.asarray(J, dtype=float)
    h = np.asarray(h, dtype=float)
    n = H.dim
    if np.abs(J @ J + np.eye(n)).max() > 1e-8:
        raise NotComplexStructure("J^2 != -Id")
    c = H.structure_constants
    lhs = np.einsum("ijm,km->ijk", c, J)
    rhs = np.einsum("mi,mjk->ijk", J, c)
    if np.abs(lhs - rhs).max() > 1e-8 * max(1.0, np.abs(c).max()):
        raise NotComplexStructure("J is not bi-invariant")
    gram = h + J.T @ h @ J
    return MetricLieAlgebra(
        n, list(H.basis_names), c, gram,
        name=f"{H.name}+compatible" if H.name else "compatible",
    )
