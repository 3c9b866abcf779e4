"""Joint kernels, operator matrices, HWV verification, Fischer sanity."""

import warnings
from fractions import Fraction

import pytest

from helpers import dense_kernel_dim
from sympalg.kernels import (
    DegreeShiftMismatch,
    GradedSpec,
    determinantal_hwv,
    fischer_layer_dims,
    harmonic_system,
    hwv_verify,
    joint_kernel,
    operator_matrix,
    orthogonal_harmonic_kernel,
    poly_space_dim,
    symplectic_harmonic_kernel,
    symplectic_monogenic_kernel,
)
from sympalg.poly import MultiDegree, Poly, VarId, copy_variables, parse_poly
from sympalg.roots import Weight, weyl_dim
from sympalg.tensor import cartan_product
from sympalg.weyl import (
    WeylOp,
    apply_op,
    build_sp2n_realization,
    contraction_op,
    dirac_op,
    laplacian_op,
    pairing_derivs_op,
)


class TestOperatorMatrix:
    def test_single_derivative(self):
        n = 1
        spec = GradedSpec(n, 1, (1,))
        A = WeylOp.deriv(n, 1, VarId("x", 1, 1))
        mat = operator_matrix(A, spec, MultiDegree((0,), 0))
        assert mat.shape == (1, 2)
        # domain order is x1.1, y1.1: the x column is 1, the y column 0
        assert mat.dense() == [[Fraction(1), Fraction(0)]]

    def test_laplacian_on_p2_r3(self):
        # squares map to 2, cross terms to 0 (differentiate each monomial by hand)
        n = 2
        spec = GradedSpec(n, 1, (2,), num_vars=3)
        active = copy_variables(n, 1)[:3]
        A = laplacian_op(n, 1, active)
        mat = operator_matrix(A, spec, MultiDegree((0,), 0))
        assert mat.shape == (1, 6)
        row = mat.dense()[0]
        for j, mono in enumerate(mat.domain_basis):
            exps = dict(mono)
            if len(exps) == 1:  # a square v^2
                assert row[j] == 2
            else:  # a cross term
                assert row[j] == 0

    def test_zero_operator(self):
        spec = GradedSpec(1, 1, (2,))
        mat = operator_matrix(WeylOp.zero(1, 1), spec, MultiDegree((0,), 0))
        assert all(not r for r in mat.rows)

    def test_degree_shift_mismatch(self):
        spec = GradedSpec(1, 1, (2,))
        A = WeylOp.deriv(1, 1, VarId("x", 1, 1))
        with pytest.raises(DegreeShiftMismatch):
            operator_matrix(A, spec, MultiDegree((0,), 0))


class TestJointKernel:
    def test_harmonics_p2_r3(self):
        kb = orthogonal_harmonic_kernel(3, 2)
        assert kb.dimension == 5  # classical dim H_2(R^3)
        assert kb.ambient_dim == 6

    def test_against_dense_oracle(self):
        # same dimension by an independent dense elimination
        n = 2
        spec = GradedSpec(n, 2, (2, 1))
        ops, _ = harmonic_system(n, 2)
        kb = joint_kernel(ops, spec)
        dense = dense_kernel_dim(ops, spec.domain_monomials(), n, 2)
        assert kb.dimension == dense

    def test_counterexample_288_160(self):
        kb = symplectic_harmonic_kernel(4, 2, (2, 1))
        assert kb.ambient_dim == 288
        assert kb.dimension == 160
        assert kb.dimension == weyl_dim(Weight.parse("2,1", 4))

    def test_basis_exactly_annihilated(self):
        n = 3
        kb = symplectic_harmonic_kernel(n, 2, (2, 1))
        ops, _ = harmonic_system(n, 2)
        for v in kb.vectors:
            for op in ops:
                assert apply_op(op, v).is_zero()

    def test_scalar_model_small_grid(self):
        # dim H^s = weyl_dim on a small slice (the full grid runs in acceptance)
        for n in (2, 3):
            for degrees in ((1, 0), (1, 1), (2, 1)):
                kb = symplectic_harmonic_kernel(n, 2, degrees)
                assert kb.dimension == weyl_dim(Weight.from_partition(degrees, n))

    def test_single_copy_degenerates_to_full_component(self):
        # N=1 has no simplicial operators: P_k itself is the model
        for n in (2, 3):
            for k in (0, 2, 3):
                kb = symplectic_harmonic_kernel(n, 1, (k,))
                assert kb.dimension == kb.ambient_dim
                assert kb.dimension == weyl_dim(Weight.from_partition([k], n))

    def test_three_copies(self):
        # the general-N system beyond the N=2 grid: dim H^s_(1,1,1) at n=3
        n, N = 3, 3
        kb = symplectic_harmonic_kernel(n, N, (1, 1, 1))
        assert kb.dimension == weyl_dim(Weight.parse("1,1,1", n))
        w = determinantal_hwv(n, N, (1, 1, 1))
        ops, _ = harmonic_system(n, N)
        assert all(apply_op(op, w).is_zero() for op in ops)
        real = build_sp2n_realization("scalar", n, N)
        rep = hwv_verify(w, real, ops)
        assert rep.passed
        assert rep.cartan_eigenvalues == Weight.parse("1,1,1", n)

    def test_monogenic_k0_all_z_survives(self):
        kb = symplectic_monogenic_kernel(1, 1, (0,), z_max=3, check_stability=False)
        assert kb.per_z_degree_dims == {0: 1, 1: 1, 2: 1, 3: 1}

    def test_operator_permutation_invariance(self):
        n = 2
        spec = GradedSpec(n, 2, (2, 1))
        ops, _ = harmonic_system(n, 2)
        d1 = joint_kernel(ops, spec).dimension
        d2 = joint_kernel(list(reversed(ops)), spec).dimension
        assert d1 == d2

    def test_column_order_invariance(self):
        n = 2
        spec = GradedSpec(n, 2, (2, 1))
        ops, _ = harmonic_system(n, 2)
        d1 = joint_kernel(ops, spec).dimension
        d2 = joint_kernel(ops, spec, reverse_columns=True).dimension
        assert d1 == d2

    def test_range_guard(self):
        with pytest.raises(ValueError):
            symplectic_harmonic_kernel(1, 2, (1, 1))
        spec = GradedSpec(1, 2, (1, 1), allow_wide=True)
        ops, labels = harmonic_system(1, 2)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            joint_kernel(ops, spec, labels)
        assert any("stable range" in str(w.message) for w in caught)

    def test_truncation_stability_flag(self):
        kb = symplectic_monogenic_kernel(1, 1, (1,), z_max=3)
        assert kb.truncation_stable
        assert sum(kb.per_z_degree_dims.values()) == kb.dimension


class TestFischer:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_layers_sum_to_polynomial_space(self, m):
        for k in range(0, 7):
            total, layers = fischer_layer_dims(m, k)
            assert total == sum(layers)

    def test_poly_space_dim(self):
        assert poly_space_dim(3, 2) == 6
        assert poly_space_dim(2, 5) == 6

    def test_decomposition_is_direct_sum(self):
        # the embedded layers |x|^{2j} H_{k-2j} jointly span P_k(R^3): the
        # stacked coefficient vectors of all embedded basis polynomials have
        # full rank (checked with the independent dense elimination), so the
        # sum is direct, not just dimension-consistent
        from fractions import Fraction as F

        from helpers import dense_rank
        from sympalg.poly import mono_sort_key
        from sympalg.weyl import r_squared_op

        m, k = 3, 4
        n = (m + 1) // 2
        active = copy_variables(n, 1)[:m]
        r2 = r_squared_op(n, 1, active)
        embedded = []
        for j in range(k // 2 + 1):
            layer = orthogonal_harmonic_kernel(m, k - 2 * j)
            for h in layer.vectors:
                p = h
                for _ in range(j):
                    p = apply_op(r2, p)
                embedded.append(p)
        monos = sorted({mo for p in embedded for mo in p.terms}, key=mono_sort_key)
        rows = [
            [p.terms.get(mo, F(0)) for mo in monos] for p in embedded
        ]
        assert len(embedded) == poly_space_dim(m, k)
        assert dense_rank(rows) == poly_space_dim(m, k)


class TestHwv:
    def test_scalar_n2_hwv(self):
        n, N = 4, 2
        w = determinantal_hwv(n, N, (2, 1))
        real = build_sp2n_realization("scalar", n, N)
        extra = [contraction_op(n, N, 1, 2), pairing_derivs_op(n, N, 1, 2)]
        rep = hwv_verify(w, real, extra, ["<x,d_u>", "<d_x,d_u>_s"])
        assert rep.passed
        assert rep.cartan_eigenvalues == Weight.parse("2,1", n)

    @pytest.mark.parametrize("n,k", [(2, 1), (2, 3), (3, 2)])
    def test_spinor_hwv_weights(self, n, k):
        real = build_sp2n_realization("spinor", n, 1)
        Ds = dirac_op(n, 1, 1)
        x1k = Poly.var(n, 1, "x1.1") ** k
        zn = Poly.var(n, 1, f"z{n}")
        even = hwv_verify(x1k, real, [Ds], ["D_s"])
        odd = hwv_verify(x1k * zn, real, [Ds], ["D_s"])
        assert even.passed and odd.passed
        half = Fraction(1, 2)
        assert even.cartan_eigenvalues == Weight.of(
            *([k - half] + [-half] * (n - 1))
        )
        assert odd.cartan_eigenvalues == Weight.of(
            *([k - half] + [-half] * (n - 2) + [Fraction(-3, 2)])
        )

    def test_non_eigenvector_reported(self):
        n = 2
        real = build_sp2n_realization("scalar", n, 1)
        p = Poly.var(n, 1, "x1.1") + Poly.var(n, 1, "x1.2") ** 2
        rep = hwv_verify(p, real)
        assert not rep.passed
        assert rep.eigen_failures

    def test_rejects_zero_candidate(self):
        real = build_sp2n_realization("scalar", 2, 1)
        with pytest.raises(ValueError):
            hwv_verify(Poly.zero(2, 1), real)


class TestDeterminantalHwv:
    def test_single_copy_power(self):
        assert determinantal_hwv(3, 1, (4,)) == Poly.var(3, 1, "x1.1") ** 4

    def test_two_copies_formula(self):
        n = 3
        got = determinantal_hwv(n, 2, (3, 1))
        x1 = Poly.var(n, 2, "x1.1")
        det = Poly.var(n, 2, "x1.1") * Poly.var(n, 2, "x2.2") - Poly.var(
            n, 2, "x1.2"
        ) * Poly.var(n, 2, "x2.1")
        assert got == x1**2 * det

    def test_pure_determinant(self):
        got = determinantal_hwv(2, 2, (1, 1))
        assert got == parse_poly("x1.1*x2.2 - x1.2*x2.1", 2, 2)

    def test_lies_in_kernel_and_verifies(self):
        for n, degrees in ((2, (2, 1)), (3, (1, 1)), (3, (2, 2))):
            w = determinantal_hwv(n, 2, degrees)
            ops, _ = harmonic_system(n, 2)
            assert all(apply_op(op, w).is_zero() for op in ops)
            real = build_sp2n_realization("scalar", n, 2)
            rep = hwv_verify(w, real, ops)
            assert rep.passed
            assert rep.cartan_eigenvalues == Weight.from_partition(degrees, n)

    def test_rejects_non_dominant(self):
        with pytest.raises(ValueError):
            determinantal_hwv(3, 2, (1, 2))


class TestCombinedSpinorModel:
    def test_cartan_product_cross_check(self):
        # determinantal HWV (x) 1 and (x) z_n under the combined realization
        n, N = 3, 2
        lam = Weight.parse("2,1", n)
        real = build_sp2n_realization("spinor", n, N)
        extra = [
            dirac_op(n, N, 1),
            dirac_op(n, N, 2),
            contraction_op(n, N, 1, 2),
            pairing_derivs_op(n, N, 1, 2),
        ]
        w = determinantal_hwv(n, N, (2, 1))
        zn = Poly.var(n, N, f"z{n}")
        even, odd = cartan_product(lam)
        rep_even = hwv_verify(w, real, extra)
        rep_odd = hwv_verify(w * zn, real, extra)
        assert rep_even.passed and rep_odd.passed
        assert rep_even.cartan_eigenvalues == even
        assert rep_odd.cartan_eigenvalues == odd
