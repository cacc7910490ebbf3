//! Unambiguous discrimination of two states.
//!
//! Covers the two-pure-state solution with its three prior regimes, the
//! reduction theorems for a common subspace / orthogonal subspaces / block
//! diagonal structure, the proper-measurement and optimality certificates
//! for the inconclusive element, the fidelity bound with its saturating
//! measurement, and unambiguous discrimination of two subspaces via Jordan
//! angles.

use crate::linalg::{
    self, cr, herm_eigen, identity, inner, pinv_on_support, projector, psd_sqrt, CMatrix, CVector,
};
use crate::operator::{
    intersect_projectors, kernel_projector, support_projector, HermitianOperator, Povm,
    DEFAULT_TOL,
};
use crate::{Error, Result};

/// Two weighted density operators to be told apart without error.
#[derive(Debug, Clone)]
pub struct UsdProblem {
    pub rho1: HermitianOperator,
    pub rho2: HermitianOperator,
    pub eta1: f64,
}

impl UsdProblem {
    pub fn new(rho1: HermitianOperator, rho2: HermitianOperator, eta1: f64) -> Result<Self> {
        if rho1.dim() != rho2.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                rho1.dim(),
                rho2.dim()
            )));
        }
        if !(eta1 > 0.0 && eta1 < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "prior eta1 = {eta1} must lie strictly between 0 and 1"
            )));
        }
        for rho in [&rho1, &rho2] {
            if (rho.trace() - 1.0).abs() > 1e-8 {
                return Err(Error::InvalidArgument(format!(
                    "density operator trace {} != 1",
                    rho.trace()
                )));
            }
            if !rho.is_positive() {
                return Err(Error::NotPositive(rho.min_eigenvalue()));
            }
        }
        Ok(Self { rho1, rho2, eta1 })
    }

    pub fn dim(&self) -> usize {
        self.rho1.dim()
    }

    pub fn eta2(&self) -> f64 {
        1.0 - self.eta1
    }

    /// Weighted density operator γ₁ = η₁ρ₁.
    pub fn gamma1(&self) -> CMatrix {
        self.rho1.matrix() * cr(self.eta1)
    }

    pub fn gamma2(&self) -> CMatrix {
        self.rho2.matrix() * cr(self.eta2())
    }

    /// Projector onto the span of both supports.
    pub fn span_projector(&self) -> Result<HermitianOperator> {
        let sum = HermitianOperator::from_hermitian_parts(
            (self.rho1.matrix() + self.rho2.matrix()) * cr(0.5),
            DEFAULT_TOL,
        );
        support_projector(&sum, DEFAULT_TOL)
    }
}

/// Which of the three prior regimes the optimal measurement falls in, or
/// `Composite` for measurements assembled from several Jordan pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// E₁ = 0: only the second state is ever detected.
    LeftProjective,
    /// True three-outcome POVM detecting both states.
    Povm,
    /// E₂ = 0: only the first state is ever detected.
    RightProjective,
    /// Assembled per Jordan pair (subspace discrimination, reductions).
    Composite,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::LeftProjective => "left-projective",
            Regime::Povm => "povm",
            Regime::RightProjective => "right-projective",
            Regime::Composite => "composite",
        }
    }
}

/// Solution of a USD instance: the POVM (E₁, E₂, E₀) and its success rate.
#[derive(Debug, Clone)]
pub struct UsdSolution {
    pub povm: Povm,
    pub p_discrimination: f64,
    pub regime: Regime,
}

/// Component of `v` orthogonal to the unit vector `against`, normalized.
fn orthogonal_component(v: &CVector, against: &CVector) -> CVector {
    let overlap = inner(against, v);
    let w = v - against * overlap;
    let n = w.norm();
    &w / cr(n)
}

/// Optimal unambiguous discrimination of two known pure states
/// (Ivanovic-Dieks-Peres / Jaeger-Shimony).
///
/// The regime is fixed by where η₁ falls relative to
/// [λ²/(1+λ²), 1/(1+λ²)] with λ = |⟨ψ₁|ψ₂⟩|; exactly on a border the
/// POVM-regime form is emitted (the two coincide there).
pub fn idp_optimal(psi1: &CVector, psi2: &CVector, eta1: f64) -> Result<UsdSolution> {
    if psi1.len() != psi2.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            psi1.len(),
            psi2.len()
        )));
    }
    for psi in [psi1, psi2] {
        if (psi.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument("states must be unit vectors".into()));
        }
    }
    if !(eta1 > 0.0 && eta1 < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "prior eta1 = {eta1} must lie strictly between 0 and 1"
        )));
    }
    let lambda = inner(psi1, psi2).norm();
    if lambda > 1.0 - 1e-12 {
        return Err(Error::DegenerateInput(
            "states are identical up to phase".into(),
        ));
    }
    let eta2 = 1.0 - eta1;
    let dim = psi1.len();
    let one_min_l2 = 1.0 - lambda * lambda;

    let psi2_perp = orthogonal_component(psi1, psi2); // ⟂ ψ₂, detects ψ₁
    let psi1_perp = orthogonal_component(psi2, psi1); // ⟂ ψ₁, detects ψ₂

    let lower = lambda * lambda / (1.0 + lambda * lambda);
    let upper = 1.0 / (1.0 + lambda * lambda);

    let (c1, c2, p_d, regime) = if eta1 < lower {
        (0.0, 1.0, eta2 * one_min_l2, Regime::LeftProjective)
    } else if eta1 > upper {
        (1.0, 0.0, eta1 * one_min_l2, Regime::RightProjective)
    } else {
        let c1 = (1.0 - (eta2 / eta1).sqrt() * lambda) / one_min_l2;
        let c2 = (1.0 - (eta1 / eta2).sqrt() * lambda) / one_min_l2;
        (c1, c2, 1.0 - 2.0 * (eta1 * eta2).sqrt() * lambda, Regime::Povm)
    };

    let e1 = projector(&psi2_perp) * cr(c1);
    let e2 = projector(&psi1_perp) * cr(c2);
    let e0 = identity(dim) - &e1 - &e2;
    let povm = Povm::new(
        dim,
        vec![
            HermitianOperator::from_hermitian_parts(e1, DEFAULT_TOL),
            HermitianOperator::from_hermitian_parts(e2, DEFAULT_TOL),
            HermitianOperator::from_hermitian_parts(e0, DEFAULT_TOL),
        ],
    );
    Ok(UsdSolution {
        povm,
        p_discrimination: p_d,
        regime,
    })
}

// ---------------------------------------------------------------------------
// Jordan bases

/// Paired orthonormal bases of two subspaces with diagonal, nonnegative
/// mutual overlaps ⟨aᵢ|bⱼ⟩ = δᵢⱼ cos θᵢ, cosines sorted descending.
#[derive(Debug, Clone)]
pub struct JordanPair {
    pub basis_a: Vec<CVector>,
    pub basis_b: Vec<CVector>,
    /// One cosine per index up to min(dim V₁, dim V₂).
    pub cosines: Vec<f64>,
}

fn check_orthonormal(basis: &[CVector], tol: f64) -> Result<()> {
    for (i, v) in basis.iter().enumerate() {
        for (j, w) in basis.iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            if (inner(v, w) - cr(expect)).norm() > tol {
                return Err(Error::InvalidArgument(
                    "input basis is not orthonormal".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Lexicographic comparison of coordinate vectors; used only to fix the
/// order of Jordan pairs with degenerate cosines.
fn lex_less(v: &CVector, w: &CVector) -> bool {
    for (a, b) in v.iter().zip(w.iter()) {
        if (a.re - b.re).abs() > 1e-12 {
            return a.re < b.re;
        }
        if (a.im - b.im).abs() > 1e-12 {
            return a.im < b.im;
        }
    }
    false
}

/// Construct the Jordan (principal) bases of two subspaces from orthonormal
/// bases, via the singular value decomposition of the overlap matrix.
pub fn jordan_basis(basis_v1: &[CVector], basis_v2: &[CVector]) -> Result<JordanPair> {
    if basis_v1.is_empty() || basis_v2.is_empty() {
        return Err(Error::InvalidArgument("empty subspace basis".into()));
    }
    let dim = basis_v1[0].len();
    if basis_v1.iter().chain(basis_v2.iter()).any(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(
            "basis vectors differ in length".into(),
        ));
    }
    check_orthonormal(basis_v1, 1e-8)?;
    check_orthonormal(basis_v2, 1e-8)?;

    let n1 = basis_v1.len();
    let n2 = basis_v2.len();
    let h = CMatrix::from_fn(n1, n2, |i, j| inner(&basis_v1[i], &basis_v2[j]));
    let svd = h.svd(true, true);
    let u = svd.u.as_ref().unwrap(); // n1 x r
    let v_t = svd.v_t.as_ref().unwrap(); // r x n2
    let r = svd.singular_values.len();

    let mut rotated_a: Vec<CVector> = Vec::with_capacity(r);
    let mut rotated_b: Vec<CVector> = Vec::with_capacity(r);
    for i in 0..r {
        let mut a = CVector::zeros(dim);
        for k in 0..n1 {
            a += &basis_v1[k] * u[(k, i)];
        }
        rotated_a.push(a);
        let mut b = CVector::zeros(dim);
        for l in 0..n2 {
            // columns of V, i.e. conjugated rows of V†
            b += &basis_v2[l] * v_t[(i, l)].conj();
        }
        rotated_b.push(b);
    }

    // order: descending cosine, ties broken lexicographically on the A side
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| {
        let (si, sj) = (svd.singular_values[i], svd.singular_values[j]);
        if (si - sj).abs() > 1e-12 {
            sj.total_cmp(&si)
        } else if lex_less(&rotated_a[i], &rotated_a[j]) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });

    let mut basis_a: Vec<CVector> = order.iter().map(|&i| rotated_a[i].clone()).collect();
    let mut basis_b: Vec<CVector> = order.iter().map(|&i| rotated_b[i].clone()).collect();
    let cosines: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();

    // complete the larger side to a full basis of its subspace
    if n1 > r {
        let mut full = basis_a.clone();
        full.extend(basis_v1.iter().cloned());
        basis_a = linalg::orthonormalize(&full, 1e-6);
    }
    if n2 > r {
        let mut full = basis_b.clone();
        full.extend(basis_v2.iter().cloned());
        basis_b = linalg::orthonormalize(&full, 1e-6);
    }
    debug_assert_eq!(basis_a.len(), n1);
    debug_assert_eq!(basis_b.len(), n2);

    Ok(JordanPair {
        basis_a,
        basis_b,
        cosines,
    })
}

// ---------------------------------------------------------------------------
// Reduction theorems

/// Outcome of splitting off the common subspace of the two supports.
#[derive(Debug, Clone)]
pub struct CommonSubspaceReduction {
    /// The reduced problem on the orthocomplement of the common subspace;
    /// `None` when nothing remains (identical supports).
    pub reduced: Option<UsdProblem>,
    /// N = N₁η₁ + N₂η₂, the weight of the surviving part.
    pub n_factor: f64,
    /// Projector onto the subspace that was split off.
    pub pi_common: HermitianOperator,
}

impl CommonSubspaceReduction {
    /// Q = 1 − N + N·Q′.
    pub fn lift_failure(&self, q_reduced: f64) -> f64 {
        1.0 - self.n_factor + self.n_factor * q_reduced
    }

    /// Rebuild the full-space POVM from the reduced one: the conclusive
    /// elements carry over, the common subspace joins the inconclusive one.
    pub fn lift_povm(&self, reduced: &Povm) -> Povm {
        let e1 = reduced.effects[0].clone();
        let e2 = reduced.effects[1].clone();
        let e0 = HermitianOperator::from_hermitian_parts(
            reduced.effects[2].matrix() + self.pi_common.matrix(),
            DEFAULT_TOL,
        );
        Povm::new(reduced.dim, vec![e1, e2, e0])
    }
}

fn reduce_with_projector(p: &UsdProblem, pi_rest: &CMatrix) -> (Option<UsdProblem>, f64) {
    let n1 = linalg::trace_re(&(p.rho1.matrix() * pi_rest));
    let n2 = linalg::trace_re(&(p.rho2.matrix() * pi_rest));
    let n = n1 * p.eta1 + n2 * p.eta2();
    if n1 < 1e-12 || n2 < 1e-12 {
        return (None, n.max(0.0));
    }
    let rho1 = pi_rest * p.rho1.matrix() * pi_rest / cr(n1);
    let rho2 = pi_rest * p.rho2.matrix() * pi_rest / cr(n2);
    let eta1 = n1 * p.eta1 / n;
    let reduced = UsdProblem {
        rho1: HermitianOperator::from_hermitian_parts(rho1, DEFAULT_TOL),
        rho2: HermitianOperator::from_hermitian_parts(rho2, DEFAULT_TOL),
        eta1,
    };
    (Some(reduced), n)
}

/// Reduction theorem for a common subspace: the intersection of the two
/// supports cannot help discrimination and moves wholesale into E₀.
pub fn reduce_common_subspace(p: &UsdProblem) -> Result<CommonSubspaceReduction> {
    let s1 = support_projector(&p.rho1, DEFAULT_TOL)?;
    let s2 = support_projector(&p.rho2, DEFAULT_TOL)?;
    let pi_common = intersect_projectors(s1.matrix(), s2.matrix());
    let pi_rest = identity(p.dim()) - &pi_common;
    let (reduced, n_factor) = reduce_with_projector(p, &pi_rest);
    Ok(CommonSubspaceReduction {
        reduced,
        n_factor,
        pi_common: HermitianOperator::from_hermitian_parts(pi_common, DEFAULT_TOL),
    })
}

/// Outcome of splitting off the parts of each support orthogonal to the
/// other support.
#[derive(Debug, Clone)]
pub struct OrthogonalSubspacesReduction {
    pub reduced: Option<UsdProblem>,
    /// N = N₁η₁ + N₂η₂.
    pub n_factor: f64,
    /// Projector onto ker ρ₁ ∩ supp ρ₂ (appended to E₂).
    pub pi_s1_perp: HermitianOperator,
    /// Projector onto ker ρ₂ ∩ supp ρ₁ (appended to E₁).
    pub pi_s2_perp: HermitianOperator,
}

impl OrthogonalSubspacesReduction {
    /// Q = N·Q′.
    pub fn lift_failure(&self, q_reduced: f64) -> f64 {
        self.n_factor * q_reduced
    }

    pub fn lift_povm(&self, reduced: &Povm) -> Povm {
        let e1 = HermitianOperator::from_hermitian_parts(
            reduced.effects[0].matrix() + self.pi_s2_perp.matrix(),
            DEFAULT_TOL,
        );
        let e2 = HermitianOperator::from_hermitian_parts(
            reduced.effects[1].matrix() + self.pi_s1_perp.matrix(),
            DEFAULT_TOL,
        );
        Povm::new(reduced.dim, vec![e1, e2, reduced.effects[2].clone()])
    }
}

/// Reduction theorem for orthogonal subspaces. Requires that the supports
/// have no common subspace (apply [`reduce_common_subspace`] first).
pub fn reduce_orthogonal_subspaces(p: &UsdProblem) -> Result<OrthogonalSubspacesReduction> {
    let s1 = support_projector(&p.rho1, DEFAULT_TOL)?;
    let s2 = support_projector(&p.rho2, DEFAULT_TOL)?;
    let common = intersect_projectors(s1.matrix(), s2.matrix());
    if linalg::trace_re(&common) > 0.5 {
        return Err(Error::Precondition(
            "supports share a common subspace; split it off first".into(),
        ));
    }
    let k1 = kernel_projector(&p.rho1, DEFAULT_TOL)?;
    let k2 = kernel_projector(&p.rho2, DEFAULT_TOL)?;
    let pi_s1_perp = intersect_projectors(k1.matrix(), s2.matrix());
    let pi_s2_perp = intersect_projectors(k2.matrix(), s1.matrix());
    let pi_rest = identity(p.dim()) - &pi_s1_perp - &pi_s2_perp;
    let (reduced, n_factor) = reduce_with_projector(p, &pi_rest);
    Ok(OrthogonalSubspacesReduction {
        reduced,
        n_factor,
        pi_s1_perp: HermitianOperator::from_hermitian_parts(pi_s1_perp, DEFAULT_TOL),
        pi_s2_perp: HermitianOperator::from_hermitian_parts(pi_s2_perp, DEFAULT_TOL),
    })
}

/// One block of a block-diagonal reduction.
#[derive(Debug, Clone)]
pub struct BlockProblem {
    /// Nᵏ = N₁ᵏη₁ + N₂ᵏη₂ — the weight of this block in Q = Σ Nₖ Qₖ.
    pub weight: f64,
    /// The renormalized sub-problem; `None` when at most one state reaches
    /// the block.
    pub problem: Option<UsdProblem>,
    pub projector: HermitianOperator,
}

/// Reduction theorem for simultaneously block-diagonal states: solve each
/// block separately, then Q = Σₖ Nₖ Qₖ.
///
/// The caller supplies the blocks; finding a common block structure in
/// general is open (see [`two_dim_block_structure_exists`] for the
/// two-dimensional-block criterion).
pub fn reduce_block_diagonal(
    p: &UsdProblem,
    blocks: &[HermitianOperator],
) -> Result<Vec<BlockProblem>> {
    let dim = p.dim();
    let mut sum = CMatrix::zeros(dim, dim);
    for b in blocks {
        if b.dim() != dim {
            return Err(Error::DimensionMismatch("block dimension".into()));
        }
        if b.projector_defect() > 1e-8 {
            return Err(Error::InvalidArgument("blocks must be projectors".into()));
        }
        sum += b.matrix();
    }
    if (sum - identity(dim)).norm() > 1e-8 {
        return Err(Error::InvalidArgument("blocks must sum to identity".into()));
    }
    for rho in [&p.rho1, &p.rho2] {
        let mut pinched = CMatrix::zeros(dim, dim);
        for b in blocks {
            pinched += b.matrix() * rho.matrix() * b.matrix();
        }
        if (pinched - rho.matrix()).norm() > 1e-8 {
            return Err(Error::InvalidArgument(
                "states are not block diagonal for the given blocks".into(),
            ));
        }
    }

    let mut out = Vec::with_capacity(blocks.len());
    for b in blocks {
        let (problem, weight) = reduce_with_projector(p, b.matrix());
        out.push(BlockProblem {
            weight,
            problem,
            projector: b.clone(),
        });
    }
    Ok(out)
}

/// Kleinmann's criterion for the existence of a two-dimensional common block
/// structure of γ₁, γ₂ without common support:
/// [γ₁, γ₁γ₂γ₁] = [γ₂, γ₂γ₁²γ₂] = [γ₁, γ₁γ₂²γ₁] = 0.
pub fn two_dim_block_structure_exists(p: &UsdProblem, tol: f64) -> bool {
    let g1 = p.gamma1();
    let g2 = p.gamma2();
    let comm = |a: &CMatrix, b: &CMatrix| (a * b - b * a).norm();
    let scale = (g1.norm() * g2.norm()).max(1e-300);
    comm(&g1, &(&g1 * &g2 * &g1)) <= tol * scale
        && comm(&g2, &(&g2 * &g1 * &g1 * &g2)) <= tol * scale
        && comm(&g1, &(&g1 * &g2 * &g2 * &g1)) <= tol * scale
}

// ---------------------------------------------------------------------------
// proper measurements and optimality

/// Residuals of the proper-USD defining conditions: E₀ acts as identity
/// outside the span of the supports, E₀ and I−E₀ are positive, and
/// γ₁(I−E₀)γ₂ = 0.
#[derive(Debug, Clone)]
pub struct ProperUsdReport {
    pub identity_outside_span_residual: f64,
    pub e0_min_eigenvalue: f64,
    pub complement_min_eigenvalue: f64,
    pub gamma_sandwich_residual: f64,
    pub tol: f64,
}

impl ProperUsdReport {
    pub fn is_proper(&self) -> bool {
        self.identity_outside_span_residual <= self.tol
            && self.e0_min_eigenvalue >= -self.tol
            && self.complement_min_eigenvalue >= -self.tol
            && self.gamma_sandwich_residual <= self.tol
    }
}

/// Checks whether the POVM (with E₀ last) is a proper USD measurement for
/// the problem.
pub fn is_proper_usd(povm: &Povm, p: &UsdProblem) -> Result<ProperUsdReport> {
    let e0 = povm
        .effects
        .last()
        .ok_or_else(|| Error::InvalidArgument("POVM has no effects".into()))?;
    let span = p.span_projector()?;
    let pi_perp = identity(p.dim()) - span.matrix();
    let identity_outside_span_residual = ((e0.matrix() - identity(p.dim())) * &pi_perp).norm();
    let complement = identity(p.dim()) - e0.matrix();
    let gamma_sandwich_residual = (p.gamma1() * &complement * p.gamma2()).norm();
    Ok(ProperUsdReport {
        identity_outside_span_residual,
        e0_min_eigenvalue: e0.min_eigenvalue(),
        complement_min_eigenvalue: linalg::min_eigenvalue(&complement),
        gamma_sandwich_residual,
        tol: 1e-7,
    })
}

/// Residual report for the operational optimality conditions on the
/// inconclusive element of a proper USD measurement, plus the rank identity
/// rank E₀ = rank γ₁γ₂ + dim ker(γ₁+γ₂).
///
/// With X = E₀(γ₂−γ₁)E₀ the conditions are Λ₁XΛ₁ ≥ 0, Λ₂XΛ₂ ≤ 0 and
/// Λ₁XΛ₂ = 0, where Λ₁, Λ₂ project onto ker γ₂ ∩ S and ker γ₁ ∩ S.
#[derive(Debug, Clone)]
pub struct OptimalityReport {
    /// Minimum eigenvalue of Λ₁E₀(γ₂−γ₁)E₀Λ₁ (must be ≥ 0).
    pub positivity_on_lambda1: f64,
    /// Minimum eigenvalue of Λ₂E₀(γ₁−γ₂)E₀Λ₂ (must be ≥ 0).
    pub positivity_on_lambda2: f64,
    /// ‖Λ₁E₀(γ₂−γ₁)E₀Λ₂‖ (must vanish).
    pub cross_residual: f64,
    pub rank_e0: usize,
    pub expected_rank_e0: usize,
    pub tol: f64,
}

impl OptimalityReport {
    pub fn passes(&self) -> bool {
        self.positivity_on_lambda1 >= -self.tol
            && self.positivity_on_lambda2 >= -self.tol
            && self.cross_residual <= self.tol
            && self.rank_e0 == self.expected_rank_e0
    }
}

/// Evaluates the operational optimality conditions for the inconclusive
/// element of a proper USD measurement.
pub fn check_optimality(e0: &HermitianOperator, p: &UsdProblem) -> Result<OptimalityReport> {
    let g1 = p.gamma1();
    let g2 = p.gamma2();
    let span = p.span_projector()?;
    let k1 = kernel_projector(
        &HermitianOperator::from_hermitian_parts(g1.clone(), DEFAULT_TOL),
        DEFAULT_TOL,
    )?;
    let k2 = kernel_projector(
        &HermitianOperator::from_hermitian_parts(g2.clone(), DEFAULT_TOL),
        DEFAULT_TOL,
    )?;
    let lambda1 = intersect_projectors(k2.matrix(), span.matrix());
    let lambda2 = intersect_projectors(k1.matrix(), span.matrix());

    let diff = &g2 - &g1;
    let scale = diff.norm().max(1e-300);
    let x = e0.matrix() * &diff * e0.matrix();
    let on1 = &lambda1 * &x * &lambda1;
    let on2 = &lambda2 * &x * &lambda2 * cr(-1.0);
    let positivity_on_lambda1 = linalg::min_eigenvalue(&linalg::hermitize(&on1)) / scale;
    let positivity_on_lambda2 = linalg::min_eigenvalue(&linalg::hermitize(&on2)) / scale;
    let cross_residual = (&lambda1 * &x * &lambda2).norm() / scale;

    let rank_e0 = e0.rank();
    let product = &g1 * &g2;
    let svd = product.clone().svd(false, false);
    let smax = svd.singular_values.iter().fold(0.0f64, |m, &v| m.max(v));
    let rank_g1g2 = if smax == 0.0 {
        0
    } else {
        svd.singular_values
            .iter()
            .filter(|&&v| v > 1e-9 * smax)
            .count()
    };
    let sum = HermitianOperator::from_hermitian_parts(&g1 + &g2, DEFAULT_TOL);
    let dim_kernel = p.dim() - linalg::herm_rank(sum.matrix(), 1e-9);
    Ok(OptimalityReport {
        positivity_on_lambda1,
        positivity_on_lambda2,
        cross_residual,
        rank_e0,
        expected_rank_e0: rank_g1g2 + dim_kernel,
        tol: 1e-7,
    })
}

// ---------------------------------------------------------------------------
// fidelity bound and fidelity-form measurement

/// Upper bound P_D ≤ 1 − 2·Tr√(√γ₁ γ₂ √γ₁) on every USD success probability.
pub fn fidelity_bound(p: &UsdProblem) -> f64 {
    let s1 = psd_sqrt(p.rho1.matrix(), 1e-8).expect("density operator is positive");
    let sandwich = &s1 * p.rho2.matrix() * &s1;
    let f = psd_sqrt(&sandwich, 1e-8).expect("sandwiched operator is positive");
    let fidelity = linalg::trace_re(&f);
    1.0 - 2.0 * (p.eta1 * p.eta2()).sqrt() * fidelity
}

/// Result of attempting the fidelity-form inconclusive element.
#[derive(Debug, Clone)]
pub enum FidelityForm {
    /// The operator inequalities γᵢ ≥ Fᵢ hold and the bound is attained.
    Feasible {
        e0: HermitianOperator,
        p_discrimination: f64,
    },
    /// γᵢ ≥ Fᵢ fails; the most negative eigenvalue is reported.
    Infeasible { violation: f64 },
}

/// The fidelity-form inconclusive element
/// E₀ = I − (γ₁+γ₂)⁻ {√γ₁(γ₁−F₁)√γ₁ + √γ₂(γ₂−F₂)√γ₂} (γ₁+γ₂)⁻,
/// valid when the supports are strictly skew and γ₁ ≥ F₁, γ₂ ≥ F₂ with
/// F₁ = √(√γ₁γ₂√γ₁), F₂ = √(√γ₂γ₁√γ₂).
pub fn fidelity_form_e0(p: &UsdProblem) -> Result<FidelityForm> {
    let s1 = support_projector(&p.rho1, DEFAULT_TOL)?;
    let s2 = support_projector(&p.rho2, DEFAULT_TOL)?;
    let k1 = kernel_projector(&p.rho1, DEFAULT_TOL)?;
    let k2 = kernel_projector(&p.rho2, DEFAULT_TOL)?;
    let common = linalg::trace_re(&intersect_projectors(s1.matrix(), s2.matrix()));
    let skew1 = linalg::trace_re(&intersect_projectors(s1.matrix(), k2.matrix()));
    let skew2 = linalg::trace_re(&intersect_projectors(s2.matrix(), k1.matrix()));
    if common > 0.5 || skew1 > 0.5 || skew2 > 0.5 {
        return Err(Error::Precondition("supports are not strictly skew".into()));
    }

    let g1 = p.gamma1();
    let g2 = p.gamma2();
    let sq1 = psd_sqrt(&g1, 1e-8)?;
    let sq2 = psd_sqrt(&g2, 1e-8)?;
    let f1 = psd_sqrt(&(&sq1 * &g2 * &sq1), 1e-8)?;
    let f2 = psd_sqrt(&(&sq2 * &g1 * &sq2), 1e-8)?;
    let viol1 = linalg::min_eigenvalue(&(&g1 - &f1));
    let viol2 = linalg::min_eigenvalue(&(&g2 - &f2));
    let viol = viol1.min(viol2);
    let scale = g1.norm().max(g2.norm()).max(1e-300);
    if viol < -1e-9 * scale {
        return Ok(FidelityForm::Infeasible { violation: viol });
    }

    let ginv = pinv_on_support(&(&g1 + &g2), 1e-10);
    let middle = &sq1 * (&g1 - &f1) * &sq1 + &sq2 * (&g2 - &f2) * &sq2;
    let e0_m = identity(p.dim()) - &ginv * middle * &ginv;
    let e0 = HermitianOperator::new(e0_m, 1e-7)?;
    let q = linalg::trace_re(&(e0.matrix() * (&g1 + &g2)));
    Ok(FidelityForm::Feasible {
        e0,
        p_discrimination: 1.0 - q,
    })
}

// ---------------------------------------------------------------------------
// subspace discrimination

/// Per-Jordan-pair record of the assembled subspace measurement.
#[derive(Debug, Clone)]
pub struct PairSolution {
    pub cosine: f64,
    pub regime: Regime,
    pub c1: f64,
    pub c2: f64,
    /// Success probability of the embedded two-pure-state problem.
    pub p_k: f64,
}

/// Solution of unambiguous discrimination between two subspaces.
#[derive(Debug, Clone)]
pub struct SubspaceSolution {
    pub povm: Povm,
    pub p_discrimination: f64,
    pub pairs: Vec<PairSolution>,
    /// Number of Jordan cosines at 1 (common subspace directions).
    pub n_common: usize,
    /// Number of Jordan cosines at 0 (mutually orthogonal directions).
    pub n_zero: usize,
}

impl SubspaceSolution {
    /// View as a two-state solution. A measurement assembled from a single
    /// intermediate pair keeps that pair's regime tag; anything richer is
    /// composite.
    pub fn into_usd_solution(self) -> UsdSolution {
        let regime = match (self.pairs.as_slice(), self.n_common, self.n_zero) {
            ([only], 0, 0) => only.regime,
            _ => Regime::Composite,
        };
        UsdSolution {
            povm: self.povm,
            p_discrimination: self.p_discrimination,
            regime,
        }
    }
}

fn projector_basis(p: &HermitianOperator) -> Vec<CVector> {
    let (vals, vecs) = herm_eigen(p.matrix());
    vals.iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(i, _)| vecs.column(i).into_owned())
        .collect()
}

/// Unambiguous discrimination of two subspaces given by projectors, for a
/// state drawn uniformly from subspace i with prior ηᵢ.
///
/// Jordan angles are classified as common (cos θ > 1−1e-8), orthogonal
/// (cos θ < 1e-8) or intermediate; each intermediate pair is an embedded
/// two-pure-state discrimination with rescaled priors, and the pieces are
/// assembled into a single POVM.
pub fn subspace_discrimination(
    p1: &HermitianOperator,
    p2: &HermitianOperator,
    eta1: f64,
) -> Result<SubspaceSolution> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch("projector dimensions".into()));
    }
    if p1.projector_defect() > 1e-8 || p2.projector_defect() > 1e-8 {
        return Err(Error::InvalidArgument("inputs must be projectors".into()));
    }
    if !(eta1 > 0.0 && eta1 < 1.0) {
        return Err(Error::InvalidArgument(
            "prior must lie strictly inside (0,1)".into(),
        ));
    }
    let dim = p1.dim();

    // identical subspaces: nothing is ever concludable
    if (p1.matrix() - p2.matrix()).norm() < 1e-10 {
        let povm = Povm::new(
            dim,
            vec![
                HermitianOperator::zero(dim),
                HermitianOperator::zero(dim),
                HermitianOperator::identity(dim),
            ],
        );
        return Ok(SubspaceSolution {
            povm,
            p_discrimination: 0.0,
            pairs: Vec::new(),
            n_common: p1.rank(),
            n_zero: 0,
        });
    }

    // work with dim V1 >= dim V2, swapping outcomes back at the end
    let swapped = p1.rank() < p2.rank();
    let (pa, pb, eta_a) = if swapped {
        (p2, p1, 1.0 - eta1)
    } else {
        (p1, p2, eta1)
    };
    let n1 = pa.rank();
    let n2 = pb.rank();
    let eta_b = 1.0 - eta_a;

    let jordan = jordan_basis(&projector_basis(pa), &projector_basis(pb))?;

    let mut n_common = 0usize;
    let mut n_zero = 0usize;
    let mut e1 = CMatrix::zeros(dim, dim);
    let mut e2 = CMatrix::zeros(dim, dim);
    let mut pairs = Vec::new();

    // priors of every embedded pure-state pair (pair independent)
    let weight_a = eta_a / n1 as f64;
    let weight_b = eta_b / n2 as f64;
    let eta1_pair = weight_a / (weight_a + weight_b);
    let eta2_pair = 1.0 - eta1_pair;

    for (i, &cos) in jordan.cosines.iter().enumerate() {
        if cos > 1.0 - 1e-8 {
            n_common += 1;
        } else if cos < 1e-8 {
            n_zero += 1;
            // fully orthogonal directions project conclusively
            e1 += projector(&jordan.basis_a[i]);
            e2 += projector(&jordan.basis_b[i]);
        } else {
            let a = &jordan.basis_a[i];
            let b = &jordan.basis_b[i];
            let b_perp = orthogonal_component(a, b); // in T_k, ⟂ b
            let a_perp = orthogonal_component(b, a); // in T_k, ⟂ a
            let lower = cos * cos / (1.0 + cos * cos);
            let upper = 1.0 / (1.0 + cos * cos);
            let one_min = 1.0 - cos * cos;
            let (c1, c2, p_k, regime) = if eta1_pair < lower {
                (0.0, 1.0, eta2_pair * one_min, Regime::LeftProjective)
            } else if eta1_pair > upper {
                (1.0, 0.0, eta1_pair * one_min, Regime::RightProjective)
            } else {
                let c1 = (1.0 - (eta2_pair / eta1_pair).sqrt() * cos) / one_min;
                let c2 = (1.0 - (eta1_pair / eta2_pair).sqrt() * cos) / one_min;
                (
                    c1,
                    c2,
                    1.0 - 2.0 * (eta1_pair * eta2_pair).sqrt() * cos,
                    Regime::Povm,
                )
            };
            e1 += projector(&b_perp) * cr(c1);
            e2 += projector(&a_perp) * cr(c2);
            pairs.push(PairSolution {
                cosine: cos,
                regime,
                c1,
                c2,
                p_k,
            });
        }
    }
    // unmatched directions of the larger subspace are orthogonal to all of V2
    for i in jordan.cosines.len()..n1 {
        e1 += projector(&jordan.basis_a[i]);
    }

    // overall success probability of the assembled measurement
    let inconclusive_weight: f64 = pairs.iter().map(|p| 1.0 - p.p_k).sum();
    let p_d = 1.0 - (weight_a + weight_b) * (n_common as f64 + inconclusive_weight);

    // undo the internal ordering so outcome 1 always refers to the caller's
    // first subspace
    let (e1, e2) = if swapped { (e2, e1) } else { (e1, e2) };
    if swapped {
        for pair in &mut pairs {
            std::mem::swap(&mut pair.c1, &mut pair.c2);
            pair.regime = match pair.regime {
                Regime::LeftProjective => Regime::RightProjective,
                Regime::RightProjective => Regime::LeftProjective,
                other => other,
            };
        }
    }
    let e0 = identity(dim) - &e1 - &e2;
    let povm = Povm::new(
        dim,
        vec![
            HermitianOperator::from_hermitian_parts(e1, DEFAULT_TOL),
            HermitianOperator::from_hermitian_parts(e2, DEFAULT_TOL),
            HermitianOperator::from_hermitian_parts(e0, DEFAULT_TOL),
        ],
    );
    Ok(SubspaceSolution {
        povm,
        p_discrimination: p_d,
        pairs,
        n_common,
        n_zero,
    })
}

/// Lemma 1 check: for positive A, B with Tr(AB) = 0 the supports must be
/// orthogonal. Returns ‖Π_A Π_B‖.
pub fn support_overlap(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    let pa = support_projector(a, DEFAULT_TOL)?;
    let pb = support_projector(b, DEFAULT_TOL)?;
    Ok((pa.matrix() * pb.matrix()).norm())
}
