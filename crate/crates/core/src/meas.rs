//! Unambiguous comparison of sharp non-degenerate observables.
//!
//! Two measurement apparatuses are compared through their outcomes alone.
//! With labeled outcomes a single use of each suffices: an antisymmetric
//! test state makes coinciding outcomes a proof of difference. Without
//! labels two uses of each apparatus are needed; the qubit solution rests
//! on the four-party subspace geometry worked out here (and audited
//! numerically by [`four_qubit_subspace_audit`]).

use crate::linalg::{cr, herm_eigen, identity, inner, projector, trace_re, CMatrix, CVector};
use crate::operator::{
    antisymmetric_projector, assemble_state, symmetric_projector, HermitianOperator, DEFAULT_TOL,
};
use crate::{Error, Result};

/// A sharp non-degenerate observable: d rank-one orthogonal projectors.
#[derive(Debug, Clone)]
pub struct SharpObservable {
    pub d: usize,
    pub basis: Vec<CVector>,
}

impl SharpObservable {
    /// Build from an orthonormal basis.
    pub fn from_basis(basis: Vec<CVector>) -> Result<Self> {
        let d = basis.len();
        for (i, v) in basis.iter().enumerate() {
            if v.len() != d {
                return Err(Error::DimensionMismatch(
                    "need d vectors of length d".into(),
                ));
            }
            for (j, w) in basis.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (inner(v, w) - cr(expect)).norm() > 1e-8 {
                    return Err(Error::InvalidArgument("basis is not orthonormal".into()));
                }
            }
        }
        Ok(Self { d, basis })
    }

    /// The observable with effects projecting on the columns of a unitary.
    pub fn from_unitary(u: &CMatrix) -> Result<Self> {
        let dev = crate::linalg::unitarity_deviation(u);
        if dev > 1e-8 {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self {
            d: u.nrows(),
            basis: (0..u.ncols()).map(|i| u.column(i).into_owned()).collect(),
        })
    }

    pub fn projector(&self, j: usize) -> CMatrix {
        projector(&self.basis[j])
    }

    /// Σⱼ Aⱼ ⊗ Aⱼ on two uses of the apparatus.
    pub fn same_operator(&self) -> CMatrix {
        let n = self.d * self.d;
        let mut out = CMatrix::zeros(n, n);
        for j in 0..self.d {
            let w = self.basis[j].kronecker(&self.basis[j]);
            out += projector(&w);
        }
        out
    }

    /// Σ_{j≠k} Aⱼ ⊗ Aₖ on two uses of the apparatus.
    pub fn diff_operator(&self) -> CMatrix {
        identity(self.d * self.d) - self.same_operator()
    }
}

/// The labeled single-shot comparator: an antisymmetric test state whose
/// coinciding outcomes certify A ≠ B.
#[derive(Debug, Clone)]
pub struct LabeledComparator {
    pub d: usize,
    pub rho_test: HermitianOperator,
    /// Average conditional success over Haar-different observables: 1/d.
    pub average_success: f64,
}

impl LabeledComparator {
    /// Conditional success q_same(A, B) = Σⱼ Tr(ρ Aⱼ ⊗ Bⱼ).
    pub fn q_same(&self, a: &SharpObservable, b: &SharpObservable) -> f64 {
        (0..self.d)
            .map(|j| {
                let w = a.basis[j].kronecker(&b.basis[j]);
                inner(&w, &(self.rho_test.matrix() * &w)).re
            })
            .sum()
    }
}

/// Build the labeled comparator for a test state supported on the two-party
/// antisymmetric subspace (the no-error requirement).
pub fn labeled_compare(d: usize, rho_test: &HermitianOperator) -> Result<LabeledComparator> {
    if rho_test.dim() != d * d {
        return Err(Error::DimensionMismatch(
            "test state must live on two copies".into(),
        ));
    }
    let sym = symmetric_projector(d, 2, &[0, 1], 2)?;
    let sym_part = trace_re(&(rho_test.matrix() * sym.matrix()));
    if sym_part > 1e-9 {
        return Err(Error::Precondition(format!(
            "test state has symmetric component {sym_part:.3e}"
        )));
    }
    Ok(LabeledComparator {
        d,
        rho_test: rho_test.clone(),
        average_success: 1.0 / d as f64,
    })
}

/// The maximally mixed antisymmetric test state P^asym/d_asym.
pub fn antisymmetric_test_state(d: usize) -> Result<HermitianOperator> {
    let asym = antisymmetric_projector(d, 2, &[0, 1], 2)?.operator;
    let d_asym = (d * (d - 1) / 2) as f64;
    Ok(HermitianOperator::from_hermitian_parts(
        asym.matrix() / cr(d_asym),
        DEFAULT_TOL,
    ))
}

/// Why identity of labeled observables is never concludable: the averaged
/// different-observable outcome operator is a full-rank multiple of the
/// identity, and the averaged equal-observable mixed-outcome operator
/// (1/d)P^asym + ((d−1)/(d(d+1)))P^sym is full-rank positive.
#[derive(Debug, Clone)]
pub struct IdentityObstruction {
    /// q̄ⱼⱼ(A≠B) = q̄ⱼₖ(A≠B) for unit-trace test states.
    pub different_rate: f64,
    /// Eigenvalues of the equal-hypothesis mixed-outcome operator.
    pub equal_diff_eigenvalues: Vec<f64>,
    pub full_rank: bool,
}

pub fn identity_not_concludable(d: usize) -> Result<IdentityObstruction> {
    let sym = symmetric_projector(d, 2, &[0, 1], 2)?;
    let asym = antisymmetric_projector(d, 2, &[0, 1], 2)?.operator;
    let df = d as f64;
    let op = asym.matrix() / cr(df) + sym.matrix() * cr((df - 1.0) / (df * (df + 1.0)));
    let (vals, _) = herm_eigen(&op);
    let full_rank = vals.iter().all(|&v| v > 1e-12);
    Ok(IdentityObstruction {
        different_rate: 1.0 / (df * df),
        equal_diff_eigenvalues: vals,
        full_rank,
    })
}

// ---------------------------------------------------------------------------
// two-shot comparison of unlabeled qubit observables

/// The four Haar-averaged outcome-class operators of one hypothesis.
#[derive(Debug, Clone)]
pub struct HypothesisOperators {
    pub same_same: HermitianOperator,
    pub same_diff: HermitianOperator,
    pub diff_same: HermitianOperator,
    pub diff_diff: HermitianOperator,
}

impl HypothesisOperators {
    pub fn all(&self) -> [&HermitianOperator; 4] {
        [
            &self.same_same,
            &self.same_diff,
            &self.diff_same,
            &self.diff_diff,
        ]
    }
}

/// Outcome-class operators of the two-shot scenario for both hypotheses,
/// on four qubits ordered (A-use-1, A-use-2, B-use-1, B-use-2).
#[derive(Debug, Clone)]
pub struct OutcomeClassOperators {
    pub equal: HypothesisOperators,
    pub different: HypothesisOperators,
}

/// Embedded symmetric projector on the listed parties of four qubits.
fn p_sym(parties: &[usize]) -> CMatrix {
    symmetric_projector(2, parties.len(), parties, 4)
        .expect("four-qubit projector")
        .into_matrix()
}

/// R_{ab−cd} = ∫ ψ_a ψ_b (I−ψ)_c (I−ψ)_d dψ expanded into symmetric
/// projectors (qubits: I−ψ is the orthogonal projector itself).
fn r_operator(a: usize, b: usize, c: usize, d: usize) -> CMatrix {
    p_sym(&[a, b]) / cr(3.0) + p_sym(&[0, 1, 2, 3]) / cr(5.0)
        - (p_sym(&[a, b, c]) + p_sym(&[a, b, d])) / cr(4.0)
}

/// Build all eight averaged outcome-class operators for qubits. The
/// construction is closed form; the Haar integrals reduce to symmetric
/// projectors because a qubit has a unique orthogonal direction.
pub fn build_outcome_operators(d: usize) -> Result<OutcomeClassOperators> {
    if d != 2 {
        return Err(Error::Unsupported(
            "closed outcome-class constructions exist for qubits only".into(),
        ));
    }
    let dim = 16;
    let r_same = p_sym(&[0, 1]) / cr(3.0); // on one apparatus pair, embedded
    let r_same_b = p_sym(&[2, 3]) / cr(3.0);
    let r_diff = identity(dim) / cr(2.0) - &r_same;
    let r_diff_b = identity(dim) / cr(2.0) - &r_same_b;

    // A ≠ B: products of independent single-apparatus averages
    let different = HypothesisOperators {
        same_same: HermitianOperator::new(&r_same * &r_same_b * cr(4.0), DEFAULT_TOL)?,
        same_diff: HermitianOperator::new(&r_same * &r_diff_b * cr(4.0), DEFAULT_TOL)?,
        diff_same: HermitianOperator::new(&r_diff * &r_same_b * cr(4.0), DEFAULT_TOL)?,
        diff_diff: HermitianOperator::new(&r_diff * &r_diff_b * cr(4.0), DEFAULT_TOL)?,
    };

    // A = B: correlated four-party integrals
    let p1234 = p_sym(&[0, 1, 2, 3]);
    let same_same = (&p1234 / cr(5.0) + r_operator(0, 1, 2, 3)) * cr(2.0);
    let same_diff =
        ((p_sym(&[0, 1, 2]) + p_sym(&[0, 1, 3])) / cr(4.0) - &p1234 * cr(2.0 / 5.0)) * cr(2.0);
    let diff_same =
        ((p_sym(&[0, 2, 3]) + p_sym(&[1, 2, 3])) / cr(4.0) - &p1234 * cr(2.0 / 5.0)) * cr(2.0);
    let diff_diff =
        (r_operator(0, 2, 1, 3) * p_sym(&[1, 3]) + r_operator(0, 3, 1, 2) * p_sym(&[1, 2]))
            * cr(2.0);
    let equal = HypothesisOperators {
        same_same: HermitianOperator::new(same_same, DEFAULT_TOL)?,
        same_diff: HermitianOperator::new(same_diff, DEFAULT_TOL)?,
        diff_same: HermitianOperator::new(diff_same, DEFAULT_TOL)?,
        diff_diff: HermitianOperator::new(diff_diff, DEFAULT_TOL)?,
    };
    Ok(OutcomeClassOperators { equal, different })
}

/// Singlet of two qubits.
pub fn singlet() -> CVector {
    CVector::from_vec(vec![cr(0.0), cr(1.0), cr(-1.0), cr(0.0)]) / cr(2f64.sqrt())
}

/// The optimal four-qubit test state for comparing unlabeled qubit
/// observables: (1/√3)(|ψ⁻₁₃⟩|ψ⁻₂₄⟩ + |ψ⁻₁₄⟩|ψ⁻₂₃⟩). Symmetric under the
/// within-apparatus exchanges and annihilated by every three-party
/// symmetric projector.
pub fn unlabeled_test_state() -> CVector {
    let s = singlet();
    let first = assemble_state(2, 4, &[], &[((0, 2), &s), ((1, 3), &s)]);
    let second = assemble_state(2, 4, &[], &[((0, 3), &s), ((1, 2), &s)]);
    (first + second) / cr(3f64.sqrt())
}

/// Two-shot success probability of revealing A ≠ B for sharp qubit
/// observables at angle θ (cos θ = |⟨ψ|φ⟩|): p = (2/3)sin²(2θ), collected
/// from the (same,diff) and (diff,same) outcome classes.
pub fn unlabeled_success(psi: &CVector, phi: &CVector) -> f64 {
    let cos_t = inner(psi, phi).norm().clamp(0.0, 1.0);
    let theta = cos_t.acos();
    2.0 / 3.0 * (2.0 * theta).sin().powi(2)
}

/// Dense 16×16 evaluation of the same success probability:
/// ⟨φ_Q|A_same⊗B_diff + A_diff⊗B_same|φ_Q⟩.
pub fn unlabeled_success_matrix(a: &SharpObservable, b: &SharpObservable) -> f64 {
    let phi_q = unlabeled_test_state();
    let op = a.same_operator().kronecker(&b.diff_operator())
        + a.diff_operator().kronecker(&b.same_operator());
    inner(&phi_q, &(op * &phi_q)).re
}

/// The (diff,diff)-based strategy: a three-dimensional space of test states
/// all achieving p̄ = 1/9.
pub fn diffdiff_strategy() -> (Vec<CVector>, f64) {
    let zero_zero = {
        let mut v = CVector::zeros(4);
        v[0] = cr(1.0);
        v
    };
    let one_one = {
        let mut v = CVector::zeros(4);
        v[3] = cr(1.0);
        v
    };
    let psi_plus = CVector::from_vec(vec![cr(0.0), cr(1.0), cr(1.0), cr(0.0)]) / cr(2f64.sqrt());
    let k1 = (zero_zero.kronecker(&psi_plus) - psi_plus.kronecker(&zero_zero)) / cr(2f64.sqrt());
    let k2 = (zero_zero.kronecker(&one_one) - one_one.kronecker(&zero_zero)) / cr(2f64.sqrt());
    let k3 = (one_one.kronecker(&psi_plus) - psi_plus.kronecker(&one_one)) / cr(2f64.sqrt());
    (vec![k1, k2, k3], 1.0 / 9.0)
}

/// Unambiguous detection of a known unlabeled qubit observable against a
/// projective alternative at Bloch angle θ: P = η_A sin²θ.
pub fn unlabeled_detection(eta_a: f64, theta_ab: f64) -> Result<f64> {
    if !(0.0..=std::f64::consts::PI).contains(&theta_ab) {
        return Err(Error::InvalidArgument("angle outside [0, π]".into()));
    }
    if !(0.0..=1.0).contains(&eta_a) {
        return Err(Error::InvalidArgument("prior outside [0, 1]".into()));
    }
    Ok(eta_a * theta_ab.sin().powi(2))
}

/// Numeric audit of the four-qubit subspace facts behind the unlabeled
/// comparison: spectra, dimensions, and the cross-structure of the
/// partially symmetric subspaces.
#[derive(Debug, Clone)]
pub struct SubspaceAudit {
    /// Nonzero eigenvalues of Q₁₂₃ + Q₁₂₄ with multiplicities.
    pub q_sum_eigenvalues: Vec<f64>,
    pub dim_totally_symmetric: usize,
    pub dim_kappa_span: usize,
    pub dim_q12_plus: usize,
    /// ⟨ωⱼ|ωⱼ⟩ values (must be 6).
    pub omega_norms: Vec<f64>,
    /// max |⟨ωⱼ|ω'ₖ⟩ + 2δⱼₖ| over all pairs.
    pub omega_cross_deviation: f64,
    /// ‖joint subspace of P^sym₁₂₃ and P^sym₁₂₄ − P^sym₁₂₃₄‖.
    pub joint_subspace_deviation: f64,
}

impl SubspaceAudit {
    pub fn passes(&self) -> bool {
        let (mut n_four_thirds, mut n_two_thirds, mut n_zero) = (0, 0, 0);
        for &v in &self.q_sum_eigenvalues {
            if (v - 4.0 / 3.0).abs() < 1e-9 {
                n_four_thirds += 1;
            } else if (v - 2.0 / 3.0).abs() < 1e-9 {
                n_two_thirds += 1;
            } else if v.abs() < 1e-9 {
                n_zero += 1;
            }
        }
        n_four_thirds == 3
            && n_two_thirds == 3
            && n_zero == 10
            && self.dim_totally_symmetric == 5
            && self.dim_kappa_span == 3
            && self.dim_q12_plus == 4
            && self.omega_norms.iter().all(|&n| (n - 6.0).abs() < 1e-9)
            && self.omega_cross_deviation < 1e-9
            && self.joint_subspace_deviation < 1e-8
    }
}

/// Builds the ω / ω′ bases of Q₁₂₃ and Q₁₂₄ and re-derives the subspace
/// dimensions used by the unlabeled comparison, entirely numerically.
pub fn four_qubit_subspace_audit() -> Result<SubspaceAudit> {
    let p1234 = p_sym(&[0, 1, 2, 3]);
    let q123 = p_sym(&[0, 1, 2]) - &p1234;
    let q124 = p_sym(&[0, 1, 3]) - &p1234;
    let (q_sum_eigenvalues, _) = herm_eigen(&(&q123 + &q124));

    let dim_totally_symmetric = crate::linalg::herm_rank(&p1234, 1e-9);
    let (kappas, _) = diffdiff_strategy();
    let dim_kappa_span = crate::linalg::orthonormalize(&kappas, 1e-9).len();
    let q12_plus = p_sym(&[0, 1]) * p_sym(&[2, 3]) - &p1234;
    let dim_q12_plus = crate::linalg::herm_rank(&q12_plus, 1e-9);

    // unnormalized ω and ω' bases of the two partially-symmetric leftovers
    let s = singlet();
    let zz = {
        let mut v = CVector::zeros(4);
        v[0] = cr(1.0);
        v
    };
    let oo = {
        let mut v = CVector::zeros(4);
        v[3] = cr(1.0);
        v
    };
    let psi_plus = CVector::from_vec(vec![cr(0.0), cr(1.0), cr(1.0), cr(0.0)]) / cr(2f64.sqrt());
    let pair_state = |p: (usize, usize), q: (usize, usize), a: &CVector, b: &CVector| {
        assemble_state(2, 4, &[], &[(p, a), (q, b)])
    };
    let omega = [
        pair_state((0, 1), (2, 3), &zz, &s)
            + pair_state((0, 2), (1, 3), &zz, &s)
            + pair_state((1, 2), (0, 3), &zz, &s),
        zz.kronecker(&oo) - oo.kronecker(&zz) + psi_plus.kronecker(&s) * cr(2.0),
        pair_state((0, 1), (2, 3), &oo, &s)
            + pair_state((0, 2), (1, 3), &oo, &s)
            + pair_state((1, 2), (0, 3), &oo, &s),
    ];
    let omega_prime = [
        pair_state((0, 1), (2, 3), &zz, &s) * cr(-1.0)
            + pair_state((0, 3), (1, 2), &zz, &s)
            + pair_state((1, 3), (0, 2), &zz, &s),
        zz.kronecker(&oo) - oo.kronecker(&zz) - psi_plus.kronecker(&s) * cr(2.0),
        pair_state((0, 1), (2, 3), &oo, &s) * cr(-1.0)
            + pair_state((0, 3), (1, 2), &oo, &s)
            + pair_state((1, 3), (0, 2), &oo, &s),
    ];
    let omega_norms: Vec<f64> = omega.iter().map(|v| v.norm_squared()).collect();
    let mut omega_cross_deviation = 0.0f64;
    for (j, w) in omega.iter().enumerate() {
        for (k, wp) in omega_prime.iter().enumerate() {
            let expect = if j == k { -2.0 } else { 0.0 };
            omega_cross_deviation =
                omega_cross_deviation.max((inner(w, wp) - cr(expect)).norm());
        }
    }

    // ω vectors must span the support of Q123 (and ω' of Q124)
    let mut omega_span_dev = 0.0f64;
    for w in &omega {
        let normalized = w / cr(w.norm());
        omega_span_dev = omega_span_dev.max((&q123 * &normalized - &normalized).norm());
    }
    for wp in &omega_prime {
        let normalized = wp / cr(wp.norm());
        omega_span_dev = omega_span_dev.max((&q124 * &normalized - &normalized).norm());
    }

    // greatest joint subspace of the two three-party symmetric projectors
    let joint = crate::operator::intersect_projectors(&p_sym(&[0, 1, 2]), &p_sym(&[0, 1, 3]));
    let joint_subspace_deviation = ((&joint - &p1234).norm()).max(omega_span_dev);

    Ok(SubspaceAudit {
        q_sum_eigenvalues,
        dim_totally_symmetric,
        dim_kappa_span,
        dim_q12_plus,
        omega_norms,
        omega_cross_deviation,
        joint_subspace_deviation,
    })
}
