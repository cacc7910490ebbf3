//! Unambiguous comparison of pure-state ensembles and of finite state sets.
//!
//! The universal comparator projects onto the orthocomplement of the totally
//! symmetric subspace; its conclusive probability on a product input is
//! governed by permanents (difference detection) and determinants (all
//! different) of the Gram matrix of the compared states.

use crate::linalg::{cr, identity, inner, CMatrix, CVector, C64};
use crate::operator::{
    support_projector, symmetric_dimension, symmetric_projector, HermitianOperator, Povm,
    DEFAULT_TOL,
};
use crate::{Error, Result};
use statrs::function::gamma::ln_gamma;

/// Copy counts and prior for an ensemble-comparison instance.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonConfig {
    /// Local dimension.
    pub d: usize,
    /// Copies from the first preparator.
    pub k: usize,
    /// Copies from the second preparator.
    pub l: usize,
    /// Prior probability that the preparators differ, in (0, 1].
    pub eta_diff: f64,
}

/// Gram matrix of pairwise overlaps Γᵢⱼ = ⟨ψᵢ|ψⱼ⟩.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub n: usize,
    pub entries: CMatrix,
}

impl GramMatrix {
    pub fn from_states(states: &[CVector]) -> Self {
        let n = states.len();
        let entries = CMatrix::from_fn(n, n, |i, j| inner(&states[i], &states[j]));
        Self { n, entries }
    }
}

/// Binomial coefficient C(n, k) as f64: exact 128-bit integer arithmetic for
/// n ≤ 60, log-gamma beyond (overflow safety without precision loss at the
/// sizes used here).
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 60 {
        // C(n, i)·(n−i)/(i+1) stays integral at every step
        let mut result: u128 = 1;
        for i in 1..=k as u128 {
            result = result * (n as u128 - k as u128 + i) / i;
        }
        result as f64
    } else {
        (ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0))
            .exp()
    }
}

/// Probability of revealing a difference between k copies of one pure state
/// and l copies of another with squared overlap `x`:
///
/// 1 − Σ_m C(k,m) C(l,m) / C(k+l,k) · xᵐ
pub fn compare_prob_pure(k: usize, l: usize, x: f64) -> f64 {
    let mut failure = 0.0;
    let denom = binomial((k + l) as u64, k as u64);
    for m in 0..=k.min(l) {
        failure += binomial(k as u64, m as u64) * binomial(l as u64, m as u64) / denom
            * x.powi(m as i32);
    }
    1.0 - failure
}

/// Average comparison success over Haar-random pure inputs:
///
/// η_diff · (1 − dim H_sym^{k+l} / (dim H_sym^{k} · dim H_sym^{l}))
pub fn compare_avg_success(cfg: &ComparisonConfig) -> f64 {
    let ratio = symmetric_dimension(cfg.d, cfg.k + cfg.l)
        / (symmetric_dimension(cfg.d, cfg.k) * symmetric_dimension(cfg.d, cfg.l));
    cfg.eta_diff * (1.0 - ratio)
}

/// The optimal comparison POVM (E₁, E₂, E₀) on (k+l) d-level systems:
/// E₁ = 0 (equality is never concludable), E₂ = I − P^sym, E₀ = P^sym.
pub fn comparison_povm(d: usize, k: usize, l: usize) -> Result<Povm> {
    let n_parties = k + l;
    let subsystems: Vec<usize> = (0..n_parties).collect();
    let p_sym = symmetric_projector(d, n_parties, &subsystems, n_parties)?;
    let dim = d.pow(n_parties as u32);
    let e2 = HermitianOperator::from_hermitian_parts(identity(dim) - p_sym.matrix(), DEFAULT_TOL);
    Ok(Povm::new(
        dim,
        vec![HermitianOperator::zero(dim), e2, p_sym],
    ))
}

/// Permanent of a complex matrix by Ryser's inclusion-exclusion formula.
/// Exact (up to float roundoff) and exponential in n; callers cap n.
fn permanent(m: &CMatrix) -> C64 {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols());
    if n == 0 {
        return cr(1.0);
    }
    let mut total = cr(0.0);
    for subset in 1u32..(1 << n) {
        let bits = subset.count_ones();
        let mut prod = cr(1.0);
        for i in 0..n {
            let mut row = cr(0.0);
            for j in 0..n {
                if subset & (1 << j) != 0 {
                    row += m[(i, j)];
                }
            }
            prod *= row;
        }
        let sign = if (n as u32 - bits).is_multiple_of(2) { 1.0 } else { -1.0 };
        total += prod * cr(sign);
    }
    total
}

/// Probability that the totally-antisymmetric-complement measurement reveals
/// at least one difference among the given pure states: 1 − per(Γ)/n!.
///
/// The permanent is evaluated exactly, which limits the state count to 10.
pub fn difference_detect_prob(states: &[CVector]) -> Result<f64> {
    let n = states.len();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "need at least two states to compare".into(),
        ));
    }
    if n > 10 {
        return Err(Error::Unsupported(format!(
            "exact permanent limited to 10 states, got {n}"
        )));
    }
    let gram = GramMatrix::from_states(states);
    let factorial: f64 = (1..=n as u64).map(|i| i as f64).product();
    Ok(1.0 - permanent(&gram.entries).re / factorial)
}

/// Result of the all-states-different projection.
#[derive(Debug, Clone, Copy)]
pub struct AllDifferent {
    pub probability: f64,
    /// True when n > d, so the totally antisymmetric subspace is empty.
    pub empty_subspace: bool,
}

/// Probability that projecting onto the totally antisymmetric subspace
/// certifies all n states mutually different: det(Γ)/n!.
pub fn all_different_prob(states: &[CVector]) -> AllDifferent {
    let n = states.len();
    let d = states[0].len();
    if n > d {
        return AllDifferent {
            probability: 0.0,
            empty_subspace: true,
        };
    }
    let gram = GramMatrix::from_states(states);
    let det = gram.entries.lu().determinant().re;
    let factorial: f64 = (1..=n as u64).map(|i| i as f64).product();
    AllDifferent {
        probability: (det / factorial).max(0.0),
        empty_subspace: false,
    }
}

/// Two-system comparison of states drawn from a finite two-element set,
/// rewritten as discrimination of two known two-party mixed states.
///
/// Returns (ρ_same, ρ_diff, η_same, η_diff) with
/// η_same = q₁² + q₂², η_diff = 2 q₁ q₂.
pub fn finite_set_comparison_states(
    q1: f64,
    q2: f64,
    phi1: &CVector,
    phi2: &CVector,
) -> Result<(HermitianOperator, HermitianOperator, f64, f64)> {
    if (q1 + q2 - 1.0).abs() > 1e-12 || q1 < 0.0 || q2 < 0.0 {
        return Err(Error::InvalidArgument(
            "set probabilities must be nonnegative and sum to 1".into(),
        ));
    }
    for phi in [phi1, phi2] {
        if (phi.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument("states must be normalized".into()));
        }
    }
    let eta1 = q1 * q1 + q2 * q2;
    let eta2 = 2.0 * q1 * q2;
    let p11 = crate::operator::tensor_vectors(&[phi1, phi1]);
    let p22 = crate::operator::tensor_vectors(&[phi2, phi2]);
    let p12 = crate::operator::tensor_vectors(&[phi1, phi2]);
    let p21 = crate::operator::tensor_vectors(&[phi2, phi1]);
    let rho1 =
        (&p11 * p11.adjoint()) * cr(q1 * q1 / eta1) + (&p22 * p22.adjoint()) * cr(q2 * q2 / eta1);
    let rho2 = ((&p12 * p12.adjoint()) + (&p21 * p21.adjoint())) * cr(0.5);
    Ok((
        HermitianOperator::new(rho1, DEFAULT_TOL)?,
        HermitianOperator::new(rho2, DEFAULT_TOL)?,
        eta1,
        eta2,
    ))
}

/// Feasibility of unambiguous identity confirmation for a finite state set:
/// possible exactly when the set is linearly independent. The optimal
/// measurement for M > 2 is not constructed here.
pub fn identity_confirmation_feasible(states: &[CVector]) -> bool {
    let gram = GramMatrix::from_states(states);
    let op = HermitianOperator::from_hermitian_parts(gram.entries.clone(), DEFAULT_TOL);
    support_projector(&op, DEFAULT_TOL)
        .map(|s| s.rank() == states.len())
        .unwrap_or(false)
}
