"""Model spaces as exact joint kernels of differential operators.

A GradedSpec fixes a multigraded polynomial component (degrees per
vector-variable copy, optionally a spinor-degree cap zMax); joint_kernel
computes the exact rational nullspace of the stacked operator matrices on
that component.  Operators that shift the z degree (Dirac type) map the
truncated domain P_(degrees) (x) P_{<=zMax}(z) into the untruncated image
span, so every reported kernel vector is a genuine global solution; the
truncationStable flag reports whether raising zMax by one changes any of the
per-z-degree dimensions below zMax.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import nullspace
from .poly import (
    Monomial,
    MultiDegree,
    Poly,
    UniverseMismatch,
    VarId,
    copy_variables,
    mono_multidegree,
    monomial_basis,
)
from .roots import Weight
from .weyl import (
    CARTAN,
    POSITIVE,
    RealizationElement,
    WeylOp,
    apply_op,
    contraction_op,
    dirac_op,
    laplacian_op,
    pairing_derivs_op,
)


class DegreeShiftMismatch(ValueError):
    """Operator image leaves the requested codomain component."""


class EmptyBasis(ValueError):
    """The requested graded component has no monomials."""


@dataclass(frozen=True)
class GradedSpec:
    """A multigraded component P_(degrees) (x) P_{<=z_max}(z) of the universe.

    ``num_vars`` restricts copy 1 to its first num_vars coordinates (the
    classical R^m validation path; requires N=1).  ``allow_wide`` downgrades
    the stable-range guard N <= n to a warning, and ``allow_non_dominant``
    does the same for non-weakly-decreasing degrees.
    """

    n: int
    N: int
    degrees: Tuple[int, ...]
    z_max: Optional[int] = None
    num_vars: Optional[int] = None
    allow_wide: bool = False
    allow_non_dominant: bool = False

    def __post_init__(self):
        if len(self.degrees) != self.N:
            raise ValueError(f"{len(self.degrees)} degrees for N={self.N} copies")
        if any(d < 0 for d in self.degrees):
            raise ValueError("degrees must be nonnegative")
        if self.z_max is not None and self.z_max < 0:
            raise ValueError("z_max must be nonnegative")
        if any(a < b for a, b in zip(self.degrees, self.degrees[1:])):
            if not self.allow_non_dominant:
                raise ValueError(
                    f"degrees {self.degrees} are not weakly decreasing; "
                    "pass allow_non_dominant=True to override"
                )

    def check_range(self):
        if self.N > self.n:
            if not self.allow_wide:
                raise ValueError(
                    f"N={self.N} exceeds the stable range n={self.n}; kernel "
                    "dimensions may disagree with the Weyl dimension formula "
                    "(pass allow_wide=True to continue anyway)"
                )
            warnings.warn(
                f"N={self.N} > n={self.n}: outside the stable range, kernel "
                "dimensions may disagree with the Weyl dimension formula"
            )

    def domain_monomials(self, z_cap: Optional[int] = None) -> List[Monomial]:
        """Ordered monomial basis; z degrees 0..z_cap (default self.z_max)."""
        if z_cap is None:
            z_cap = self.z_max
        z_range = [0] if z_cap is None else list(range(z_cap + 1))
        out: List[Monomial] = []
        for z in z_range:
            out.extend(
                monomial_basis(
                    self.n,
                    self.N,
                    MultiDegree(self.degrees, z),
                    num_vars=self.num_vars,
                )
            )
        return out

    def to_json(self) -> dict:
        data = {"n": self.n, "N": self.N, "degrees": list(self.degrees)}
        if self.z_max is not None:
            data["zMax"] = self.z_max
        if self.num_vars is not None:
            data["numVars"] = self.num_vars
        return data


@dataclass
class OperatorMatrix:
    """Matrix of an operator between two graded components, row-major sparse."""

    rows: List[Dict[int, Fraction]]
    domain_basis: List[Monomial]
    codomain_basis: List[Monomial]

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.codomain_basis), len(self.domain_basis))

    def dense(self) -> List[List[Fraction]]:
        ncols = len(self.domain_basis)
        return [
            [row.get(j, Fraction(0)) for j in range(ncols)] for row in self.rows
        ]


def operator_matrix(
    A: WeylOp, domain: GradedSpec, codomain_degree: MultiDegree
) -> OperatorMatrix:
    """Matrix of A from the domain component to the codomain component.

    Raises DegreeShiftMismatch if some image leaves the codomain component.
    """
    domain_basis = domain.domain_monomials()
    if not domain_basis:
        raise EmptyBasis(f"no monomials in {domain}")
    codomain_basis = monomial_basis(
        A.n, A.N, codomain_degree, num_vars=domain.num_vars
    )
    index = {m: i for i, m in enumerate(codomain_basis)}
    rows: List[Dict[int, Fraction]] = [dict() for _ in codomain_basis]
    for j, mono in enumerate(domain_basis):
        image = apply_op(A, Poly(A.n, A.N, {mono: Fraction(1)}))
        for imono, c in image.terms.items():
            i = index.get(imono)
            if i is None:
                raise DegreeShiftMismatch(
                    f"image term {imono} of column {mono} has multidegree "
                    f"{mono_multidegree(imono, A.N)}, not {codomain_degree}"
                )
            rows[i][j] = c
    return OperatorMatrix(rows, domain_basis, codomain_basis)


@dataclass
class KernelBasis:
    """Exact basis of a joint kernel restricted to a graded component."""

    spec: GradedSpec
    operators: List[str]
    vectors: List[Poly]
    per_z_degree_dims: Dict[int, int]
    truncation_stable: bool
    ambient_dim: int

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def to_json(self, include_basis: bool = True) -> dict:
        data = {
            "spec": self.spec.to_json(),
            "operators": list(self.operators),
            "ambientDim": self.ambient_dim,
            "kernelDim": self.dimension,
            "perZDegreeDims": {str(k): v for k, v in sorted(self.per_z_degree_dims.items())},
            "truncationStable": self.truncation_stable,
        }
        if include_basis:
            data["vectors"] = [v.to_json() for v in self.vectors]
        return data


def _kernel_polys(
    ops: Sequence[WeylOp],
    spec: GradedSpec,
    z_cap: Optional[int],
    reverse_columns: bool = False,
) -> List[Poly]:
    domain = spec.domain_monomials(z_cap)
    if not domain:
        raise EmptyBasis(f"no monomials in {spec}")
    if reverse_columns:
        domain = list(reversed(domain))
    n, N = spec.n, spec.N
    row_index: Dict[Tuple[int, Monomial], int] = {}
    rows: List[Dict[int, Fraction]] = []
    for j, mono in enumerate(domain):
        p = Poly(n, N, {mono: Fraction(1)})
        for oi, op in enumerate(ops):
            image = apply_op(op, p)
            for imono, c in image.terms.items():
                key = (oi, imono)
                i = row_index.get(key)
                if i is None:
                    i = len(rows)
                    row_index[key] = i
                    rows.append({})
                rows[i][j] = c
    vecs = nullspace(rows, len(domain))
    out = []
    for vec in vecs:
        terms = {m: c for m, c in zip(domain, vec) if c != 0}
        out.append(Poly(n, N, terms))
    return out


def joint_kernel(
    ops: Sequence[WeylOp],
    spec: GradedSpec,
    labels: Optional[Sequence[str]] = None,
    *,
    check_stability: bool = True,
    reverse_columns: bool = False,
) -> KernelBasis:
    """Exact joint kernel of the operators on the graded component.

    For z-shifting operators the image span is never truncated, so kernel
    vectors are global solutions.  per_z_degree_dims[t] is the dimension
    gained when the z-degree cap grows from t-1 to t, and truncation_stable
    records whether recomputing with z_max+1 leaves every dimension at
    z degree <= z_max - 1 unchanged.
    """
    ops = list(ops)
    for op in ops:
        if op.n != spec.n or op.N != spec.N:
            raise UniverseMismatch(
                f"operator universe (n={op.n}, N={op.N}) does not match spec"
            )
    spec.check_range()
    if labels is None:
        labels = [f"op{i}" for i in range(len(ops))]
    vectors = _kernel_polys(ops, spec, spec.z_max, reverse_columns)
    if spec.z_max is None:
        per_z = {0: len(vectors)}
        stable = True
    else:
        dims = []
        for t in range(spec.z_max + 1):
            if t == spec.z_max:
                dims.append(len(vectors))
            else:
                dims.append(len(_kernel_polys(ops, spec, t)))
        per_z = {t: dims[t] - (dims[t - 1] if t else 0) for t in range(spec.z_max + 1)}
        stable = True
        if check_stability:
            wider = [len(_kernel_polys(ops, spec, t)) for t in range(spec.z_max + 2)]
            per_z_wider = {
                t: wider[t] - (wider[t - 1] if t else 0)
                for t in range(spec.z_max + 2)
            }
            stable = all(
                per_z_wider[t] == per_z[t] for t in range(max(spec.z_max, 0))
            )
    return KernelBasis(
        spec=spec,
        operators=list(labels),
        vectors=vectors,
        per_z_degree_dims=per_z,
        truncation_stable=stable,
        ambient_dim=len(spec.domain_monomials()),
    )


# ---------------------------------------------------------------------------
# Named operator systems
# ---------------------------------------------------------------------------


def harmonic_system(n: int, N: int) -> Tuple[List[WeylOp], List[str]]:
    """The simplicial system <u_r, d_u_s> (r<s), <d_u_p, d_u_q>_s (p<q).

    Empty for N=1: the one-copy component P_k is already a model, so the
    joint kernel degenerates to the whole graded component.
    """
    ops, labels = [], []
    for r in range(1, N + 1):
        for s in range(r + 1, N + 1):
            ops.append(contraction_op(n, N, r, s))
            labels.append(f"<u{r},d_u{s}>")
    for p in range(1, N + 1):
        for q in range(p + 1, N + 1):
            ops.append(pairing_derivs_op(n, N, p, q))
            labels.append(f"<d_u{p},d_u{q}>_s")
    return ops, labels


def monogenic_system(n: int, N: int) -> Tuple[List[WeylOp], List[str]]:
    """Dirac operators of every copy plus the simplicial system (when N > 1)."""
    ops, labels = [], []
    for a in range(1, N + 1):
        ops.append(dirac_op(n, N, a))
        labels.append(f"D_s,u{a}")
    if N > 1:
        more_ops, more_labels = harmonic_system(n, N)
        ops.extend(more_ops)
        labels.extend(more_labels)
    return ops, labels


def symplectic_harmonic_kernel(
    n: int, N: int, degrees: Sequence[int], **kwargs
) -> KernelBasis:
    spec = GradedSpec(n, N, tuple(degrees))
    ops, labels = harmonic_system(n, N)
    return joint_kernel(ops, spec, labels, **kwargs)


def symplectic_monogenic_kernel(
    n: int, N: int, degrees: Sequence[int], z_max: int, **kwargs
) -> KernelBasis:
    spec = GradedSpec(n, N, tuple(degrees), z_max=z_max)
    ops, labels = monogenic_system(n, N)
    return joint_kernel(ops, spec, labels, **kwargs)


def orthogonal_harmonic_kernel(m: int, k: int, **kwargs) -> KernelBasis:
    """ker Delta on P_k(R^m): the classical validation path (m = real dim)."""
    if m < 1:
        raise ValueError("need m >= 1")
    n = (m + 1) // 2
    spec = GradedSpec(n, 1, (k,), num_vars=m)
    active = copy_variables(n, 1)[:m]
    op = laplacian_op(n, 1, active)
    return joint_kernel([op], spec, ["laplacian"], **kwargs)


def poly_space_dim(m: int, k: int) -> int:
    """dim P_k(R^m) by stars and bars."""
    return comb(k + m - 1, m - 1)


def fischer_layer_dims(m: int, k: int) -> Tuple[int, List[int]]:
    """dim P_k(R^m) and the harmonic layer dims [dim H_{k-2j}] of its
    Fischer decomposition P_k = (+)_j |x|^{2j} H_{k-2j}."""
    layers = [
        orthogonal_harmonic_kernel(m, k - 2 * j).dimension
        for j in range(k // 2 + 1)
    ]
    return poly_space_dim(m, k), layers


# ---------------------------------------------------------------------------
# Highest weight vectors
# ---------------------------------------------------------------------------


@dataclass
class HwvReport:
    annihilated: Dict[str, bool]
    residuals: Dict[str, Poly]
    cartan_eigenvalues: Optional[Weight]
    eigen_failures: Dict[str, Poly]

    @property
    def passed(self) -> bool:
        return (
            all(self.annihilated.values())
            and not self.eigen_failures
            and self.cartan_eigenvalues is not None
        )

    def to_json(self) -> dict:
        data = {
            "annihilated": dict(self.annihilated),
            "passed": self.passed,
        }
        if self.cartan_eigenvalues is not None:
            data["cartanEigenvalues"] = self.cartan_eigenvalues.to_json()
        if self.residuals:
            data["residuals"] = {k: str(v) for k, v in self.residuals.items()}
        if self.eigen_failures:
            data["eigenFailures"] = {k: str(v) for k, v in self.eigen_failures.items()}
        return data


def _eigenvalue(op: WeylOp, p: Poly) -> Optional[Fraction]:
    """The exact scalar c with op(p) = c p, or None if p is no eigenvector."""
    q = apply_op(op, p)
    if q.is_zero():
        return Fraction(0)
    m0, c0 = p.leading()
    cq = q.terms.get(m0)
    if cq is None:
        return None
    lam = cq / c0
    if q == p * lam:
        return lam
    return None


def hwv_verify(
    candidate: Poly,
    realization: Sequence[RealizationElement],
    extra_ops: Sequence[WeylOp] = (),
    extra_labels: Optional[Sequence[str]] = None,
) -> HwvReport:
    """Check that candidate is a joint highest weight vector.

    Every positive-root operator of the realization and every extra operator
    must annihilate the candidate exactly; every Cartan operator must have it
    as an exact eigenvector.  Returns the per-operator outcome and the Cartan
    eigenvalue tuple.
    """
    if candidate.is_zero():
        raise ValueError("candidate must be nonzero")
    annihilated: Dict[str, bool] = {}
    residuals: Dict[str, Poly] = {}
    eigen_failures: Dict[str, Poly] = {}
    if extra_labels is None:
        extra_labels = [f"extra{i}" for i in range(len(extra_ops))]
    for elem in realization:
        if elem.role != POSITIVE:
            continue
        res = apply_op(elem.op, candidate)
        annihilated[elem.label] = res.is_zero()
        if not res.is_zero():
            residuals[elem.label] = res
    for label, op in zip(extra_labels, extra_ops):
        res = apply_op(op, candidate)
        annihilated[label] = res.is_zero()
        if not res.is_zero():
            residuals[label] = res
    eigs: List[Fraction] = []
    cartan = [e for e in realization if e.role == CARTAN]
    for elem in cartan:
        lam = _eigenvalue(elem.op, candidate)
        if lam is None:
            eigen_failures[elem.label] = apply_op(elem.op, candidate)
        else:
            eigs.append(lam)
    weight = Weight(tuple(eigs)) if len(eigs) == len(cartan) and cartan else None
    return HwvReport(annihilated, residuals, weight, eigen_failures)


def determinantal_hwv(n: int, N: int, degrees: Sequence[int]) -> Poly:
    """prod_j det(Xi_j)^(lambda_j - lambda_{j+1}) with (Xi_j)_{a,i} = x_a.i.

    The highest weight vector of the scalar model; for N=2 it reduces to
    x1.1^(l1-l2) (x1.1 x2.2 - x1.2 x2.1)^l2.
    """
    degrees = tuple(degrees)
    if len(degrees) != N:
        raise ValueError(f"{len(degrees)} degrees for N={N}")
    if N > n:
        raise ValueError(f"N={N} exceeds n={n}")
    if any(a < b for a, b in zip(degrees, degrees[1:])) or degrees[-1] < 0:
        raise ValueError(f"degrees {degrees} are not dominant")
    out = Poly.const(n, N, 1)
    for j in range(1, N + 1):
        power = degrees[j - 1] - (degrees[j] if j < N else 0)
        if power == 0:
            continue
        det = Poly.zero(n, N)
        for perm in permutations(range(1, j + 1)):
            sign = _perm_sign(perm)
            term = Poly.const(n, N, sign)
            for a, i in enumerate(perm, start=1):
                term = term * Poly.var(n, N, VarId("x", a, i))
            det = det + term
        out = out * det**power
    return out


def _perm_sign(perm: Tuple[int, ...]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign
