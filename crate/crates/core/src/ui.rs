//! Unambiguous identification with finite-dimensional systems.
//!
//! An unknown state arrives together with quantum "program" registers
//! holding copies of each candidate reference state; the measurement must
//! name the matching register without error. This module builds the average
//! reference states, the programmable-discriminator measurement for qubits
//! with its three prior regimes, the swap-based and group-projector
//! measurements for qudits, the d-reference construction for d = M, and the
//! equatorial-qubit variant.

use crate::linalg::{c, cr, identity, inner, projector, CMatrix, CVector};
use crate::operator::{
    antisymmetric_projector, embed_operator, symmetric_dimension, symmetric_projector,
    tensor_vectors, vector_power, HermitianOperator, Povm, DEFAULT_TOL,
};
use crate::{Error, Result};

/// Shape of an identification instance: M reference types with their copy
/// counts, the number of unknown copies, local dimension and priors.
#[derive(Debug, Clone)]
pub struct UiConfig {
    pub m: usize,
    pub n_unknown: usize,
    /// Copies held per reference type (length M).
    pub n_refs: Vec<usize>,
    pub d: usize,
    /// Prior probability of each hypothesis (length M, sums to one).
    pub priors: Vec<f64>,
}

impl UiConfig {
    pub fn new(n_unknown: usize, n_refs: Vec<usize>, d: usize, priors: Vec<f64>) -> Result<Self> {
        let m = n_refs.len();
        if m < 2 {
            return Err(Error::InvalidArgument("need at least two reference types".into()));
        }
        if priors.len() != m {
            return Err(Error::InvalidArgument("one prior per reference type".into()));
        }
        if (priors.iter().sum::<f64>() - 1.0).abs() > 1e-9 || priors.iter().any(|&p| p < 0.0) {
            return Err(Error::InvalidArgument("priors must be a distribution".into()));
        }
        if n_unknown == 0 || n_refs.contains(&0) {
            return Err(Error::InvalidArgument("copy counts must be positive".into()));
        }
        Ok(Self {
            m,
            n_unknown,
            n_refs,
            d,
            priors,
        })
    }

    /// Symmetric two-reference instance with a single copy everywhere.
    pub fn basic(d: usize) -> Self {
        Self::new(1, vec![1, 1], d, vec![0.5, 0.5]).unwrap()
    }

    pub fn total_parties(&self) -> usize {
        self.n_unknown + self.n_refs.iter().sum::<usize>()
    }

    pub fn total_dim(&self) -> usize {
        self.d.pow(self.total_parties() as u32)
    }

    /// Party indices of the unknown block.
    pub fn unknown_parties(&self) -> Vec<usize> {
        (0..self.n_unknown).collect()
    }

    /// Party indices of reference block i.
    pub fn reference_parties(&self, i: usize) -> Vec<usize> {
        let start = self.n_unknown + self.n_refs[..i].iter().sum::<usize>();
        (start..start + self.n_refs[i]).collect()
    }

    /// |Ψᵢ⟩ for a concrete tuple of reference states: the unknown block
    /// carries copies of reference i, every reference block its own state.
    pub fn input_state(&self, i: usize, refs: &[CVector]) -> CVector {
        assert_eq!(refs.len(), self.m);
        let mut factors: Vec<&CVector> = Vec::with_capacity(self.total_parties());
        let unknown = vector_power(&refs[i], 1); // clone via power
        for _ in 0..self.n_unknown {
            factors.push(&unknown);
        }
        let mut out = tensor_vectors(&factors);
        for (j, r) in refs.iter().enumerate() {
            let block = vector_power(r, self.n_refs[j]);
            out = out.kronecker(&block);
        }
        out
    }
}

/// An identification measurement: effects E₁..E_M plus the inconclusive E₀
/// (last), with the configuration needed to evaluate it on reference tuples.
#[derive(Debug, Clone)]
pub struct UiMeasurement {
    pub cfg: UiConfig,
    pub povm: Povm,
}

impl UiMeasurement {
    /// Identification probability Σᵢ ηᵢ ⟨Ψᵢ|Eᵢ|Ψᵢ⟩ for a reference tuple.
    pub fn identification_probability(&self, refs: &[CVector]) -> f64 {
        (0..self.cfg.m)
            .map(|i| {
                let psi = self.cfg.input_state(i, refs);
                self.cfg.priors[i] * inner(&psi, &(self.povm.effects[i].matrix() * &psi)).re
            })
            .sum()
    }

    /// Largest no-error violation max_{i≠j} Tr(Eᵢ Ψⱼ) on a reference tuple.
    pub fn no_error_violation(&self, refs: &[CVector]) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.cfg.m {
            let psi = self.cfg.input_state(j, refs);
            for i in 0..self.cfg.m {
                if i != j {
                    let v = inner(&psi, &(self.povm.effects[i].matrix() * &psi)).re;
                    worst = worst.max(v.abs());
                }
            }
        }
        worst
    }
}

/// Average input states: each hypothesis integrates the reference tuple over
/// Haar-random choices from a d_S-dimensional subspace, giving rescaled
/// tensor products of symmetric projectors (the unknown block merged into
/// reference block i).
pub fn ui_average_states(cfg: &UiConfig, d_subspace: usize) -> Result<Vec<HermitianOperator>> {
    if d_subspace > cfg.d || d_subspace == 0 {
        return Err(Error::InvalidArgument(
            "subspace dimension out of range".into(),
        ));
    }
    let total = cfg.total_parties();

    // projector onto the first d_subspace levels of one party
    let pi_s_single = {
        let mut m = CMatrix::zeros(cfg.d, cfg.d);
        for i in 0..d_subspace {
            m[(i, i)] = cr(1.0);
        }
        m
    };
    let restrict = |m: CMatrix, parties: &[usize]| -> CMatrix {
        if d_subspace == cfg.d {
            return m;
        }
        let mut out = m;
        for &p in parties {
            let pi = embed_operator(cfg.d, total, &[p], &pi_s_single);
            out = &pi * out * &pi;
        }
        out
    };

    let mut states = Vec::with_capacity(cfg.m);
    for i in 0..cfg.m {
        let mut merged = cfg.unknown_parties();
        merged.extend(cfg.reference_parties(i));
        let mut rho = restrict(
            symmetric_projector(cfg.d, merged.len(), &merged, total)?.into_matrix(),
            &merged,
        );
        rho /= cr(symmetric_dimension(d_subspace, merged.len()));
        for j in 0..cfg.m {
            if j == i {
                continue;
            }
            let parties = cfg.reference_parties(j);
            let block = restrict(
                symmetric_projector(cfg.d, parties.len(), &parties, total)?.into_matrix(),
                &parties,
            );
            rho = rho * block / cr(symmetric_dimension(d_subspace, parties.len()));
        }
        states.push(HermitianOperator::new(rho, DEFAULT_TOL)?);
    }
    debug_assert!(states.iter().all(|s| (s.trace() - 1.0).abs() < 1e-8));
    Ok(states)
}

fn measurement_from_conclusive(
    cfg: UiConfig,
    conclusive: Vec<CMatrix>,
) -> Result<UiMeasurement> {
    let dim = cfg.total_dim();
    let mut e0 = identity(dim);
    let mut effects = Vec::with_capacity(cfg.m + 1);
    for e in conclusive {
        e0 -= &e;
        effects.push(HermitianOperator::new(e, DEFAULT_TOL)?);
    }
    effects.push(HermitianOperator::new(e0, DEFAULT_TOL)?);
    Ok(UiMeasurement {
        cfg,
        povm: Povm::new(dim, effects),
    })
}

/// Mean identification probability of the optimal single-copy qubit
/// measurement as a function of the prior of the first hypothesis.
pub fn bergou_hillery_mean(eta1: f64) -> f64 {
    let eta2 = 1.0 - eta1;
    if eta1 < 0.2 {
        (1.0 - eta1) / 4.0
    } else if eta1 > 0.8 {
        eta1 / 4.0
    } else {
        let lam = 2.0 / 3.0 * (2.0 - (eta2 / eta1).sqrt());
        (eta1 * lam + eta2 * (4.0 - 4.0 * lam) / (4.0 - 3.0 * lam)) / 4.0
    }
}

/// Optimal universal identification for one copy of everything on qubits
/// (M = 2, d = 2): antisymmetric-projector effects whose weights switch
/// through three prior regimes. Returns the measurement and its mean
/// identification probability.
pub fn bergou_hillery(eta1: f64) -> Result<(UiMeasurement, f64)> {
    if !(0.0..=1.0).contains(&eta1) {
        return Err(Error::InvalidArgument("prior must lie in [0, 1]".into()));
    }
    let cfg = UiConfig::new(1, vec![1, 1], 2, vec![eta1, 1.0 - eta1])?;
    let asym_ac = antisymmetric_projector(2, 2, &[0, 2], 3)?.operator;
    let asym_ab = antisymmetric_projector(2, 2, &[0, 1], 3)?.operator;
    let (c1, c2) = if eta1 < 0.2 {
        (0.0, 1.0)
    } else if eta1 > 0.8 {
        (1.0, 0.0)
    } else {
        let lam = 2.0 / 3.0 * (2.0 - ((1.0 - eta1) / eta1).sqrt());
        (lam, (4.0 - 4.0 * lam) / (4.0 - 3.0 * lam))
    };
    let e1 = asym_ac.matrix() * cr(c1);
    let e2 = asym_ab.matrix() * cr(c2);
    let m = measurement_from_conclusive(cfg, vec![e1, e2])?;
    Ok((m, bergou_hillery_mean(eta1)))
}

/// Spectrum of the swap-based inconclusive element predicted by its block
/// structure: 1×1 blocks on repeated indices, 3×3 blocks on pairs, 6×6
/// blocks on triples (the latter only exist for d ≥ 3).
pub fn swap_based_block_spectrum(d: usize, c1: f64, c2: f64) -> Vec<f64> {
    let disc = (c1 * c1 - c1 * c2 + c2 * c2).sqrt();
    let lam_plus = (2.0 - c1 - c2 + disc) / 2.0;
    let lam_minus = (2.0 - c1 - c2 - disc) / 2.0;
    let mut spectrum = Vec::with_capacity(d * d * d);
    spectrum.extend(std::iter::repeat_n(1.0, d)); // (iii)
    let pairs = d * (d - 1);
    for _ in 0..pairs {
        spectrum.extend_from_slice(&[1.0, lam_plus, lam_minus]);
    }
    let triples = d * (d - 1) * (d - 2) / 6;
    for _ in 0..triples {
        spectrum.extend_from_slice(&[
            1.0,
            1.0 - c1 - c2,
            lam_plus,
            lam_plus,
            lam_minus,
            lam_minus,
        ]);
    }
    spectrum.sort_by(f64::total_cmp);
    spectrum
}

/// Swap-based identification measurement E₁ = c₁ I_B ⊗ P^asym_AC,
/// E₂ = c₂ I_C ⊗ P^asym_AB at equal priors.
///
/// Positivity of the inconclusive element is certified twice — by the
/// closed-form block spectrum and by a dense eigensolve — and the two
/// routes must agree. For c₁ + c₂ > 1 (d ≥ 3) the construction fails with
/// the offending eigenvalue 1 − c₁ − c₂.
pub fn swap_based(d: usize, c1: f64, c2: f64) -> Result<UiMeasurement> {
    if c1 < 0.0 || c2 < 0.0 {
        return Err(Error::InvalidArgument("weights must be nonnegative".into()));
    }
    let cfg = UiConfig::basic(d);
    let asym_ac = antisymmetric_projector(d, 2, &[0, 2], 3)?.operator;
    let asym_ab = antisymmetric_projector(d, 2, &[0, 1], 3)?.operator;
    let e1 = asym_ac.matrix() * cr(c1);
    let e2 = asym_ab.matrix() * cr(c2);
    let e0 = identity(cfg.total_dim()) - &e1 - &e2;

    let closed = swap_based_block_spectrum(d, c1, c2);
    let dense_min = crate::linalg::min_eigenvalue(&e0);
    let closed_min = closed[0];
    if (dense_min - closed_min).abs() > 1e-8 {
        return Err(Error::InvalidArgument(format!(
            "block spectrum ({closed_min:.3e}) and dense eigensolve ({dense_min:.3e}) disagree"
        )));
    }
    if closed_min < -1e-12 {
        return Err(Error::NotPositive(closed_min));
    }
    measurement_from_conclusive(cfg, vec![e1, e2])
}

/// Per-pair swap-based success at equal priors:
/// ((c₁+c₂)/4)(1 − |⟨ψ₁|ψ₂⟩|²).
pub fn swap_based_pair_probability(c1: f64, c2: f64, overlap_sq: f64) -> f64 {
    (c1 + c2) / 4.0 * (1.0 - overlap_sq)
}

/// Haar average of the swap-based measurement at c₁ = c₂ = 1/2:
/// (1/4)(d−1)/d.
pub fn swap_based_average(d: usize) -> f64 {
    0.25 * (d as f64 - 1.0) / d as f64
}

/// The optimal universal identification measurement for one copy of
/// everything at equal priors: e·I_B⊗P^asym_AC and e·I_C⊗P^asym_AB with
/// e = (2/3)·Γ_mixed + (1/2)·Γ_antisym built from the three-party
/// symmetric and antisymmetric projectors.
pub fn hayashi_optimal(d: usize) -> Result<UiMeasurement> {
    if d < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    let cfg = UiConfig::basic(d);
    let dim = cfg.total_dim();
    let sym3 = symmetric_projector(d, 3, &[0, 1, 2], 3)?;
    let asym3 = antisymmetric_projector(d, 3, &[0, 1, 2], 3)?.operator;
    let gamma_mixed = identity(dim) - sym3.matrix() - asym3.matrix();
    let e_op = gamma_mixed * cr(2.0 / 3.0) + asym3.matrix() * cr(0.5);

    let asym_ac = antisymmetric_projector(d, 2, &[0, 2], 3)?.operator;
    let asym_ab = antisymmetric_projector(d, 2, &[0, 1], 3)?.operator;
    let e1 = &e_op * asym_ac.matrix();
    let e2 = &e_op * asym_ab.matrix();
    measurement_from_conclusive(cfg, vec![e1, e2])
}

/// Per-pair success of the optimal universal measurement:
/// (1/3)(1 − |⟨ψ₁|ψ₂⟩|²).
pub fn hayashi_pair_probability(overlap_sq: f64) -> f64 {
    (1.0 - overlap_sq) / 3.0
}

/// Haar average of the optimal universal measurement: (1/3)(d−1)/d.
pub fn hayashi_average(d: usize) -> f64 {
    (d as f64 - 1.0) / (3.0 * d as f64)
}

/// Normalized totally antisymmetric vector of d parties of dimension d.
fn determinant_state(d: usize) -> CVector {
    let n = d.pow(d as u32);
    let mut v = CVector::zeros(n);
    let mut perm: Vec<usize> = (0..d).collect();
    let norm = (1..=d as u64).map(|i| i as f64).product::<f64>().sqrt();
    loop {
        let idx = perm.iter().fold(0, |acc, &x| acc * d + x);
        v[idx] = cr(parity(&perm) / norm);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    v
}

fn parity(perm: &[usize]) -> f64 {
    let mut p = 1.0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                p = -p;
            }
        }
    }
    p
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Identification of M = d reference states with one copy each: Eᵢ is
/// identity on the i-th reference register tensored with the projector onto
/// the unique totally antisymmetric vector of the unknown register and the
/// remaining references.
///
/// A frequently quoted form of this measurement places the identity on
/// the unknown register and the antisymmetric projector on the references
/// alone. That assignment cannot be unambiguous: the reference registers
/// carry the same states under every hypothesis, so each Eᵢ would respond
/// identically to all of them. The assignment here passes the no-error
/// conditions exactly.
pub fn zhang_ying(d: usize) -> Result<UiMeasurement> {
    let m = d;
    if m < 2 {
        return Err(Error::Unsupported(
            "need at least two reference states".into(),
        ));
    }
    let cfg = UiConfig::new(1, vec![1; m], d, vec![1.0 / m as f64; m])?;
    let total = cfg.total_parties(); // m + 1 parties
    let phi = determinant_state(d);
    let phi_proj = projector(&phi);
    let mut conclusive = Vec::with_capacity(m);
    for i in 0..m {
        // antisymmetric block over the unknown and all references except i
        let mut parties: Vec<usize> = vec![0];
        parties.extend((1..=m).filter(|&p| p != i + 1));
        let e = embed_operator(d, total, &parties, &phi_proj) * cr(1.0 / m as f64);
        conclusive.push(e);
    }
    measurement_from_conclusive(cfg, conclusive)
}

/// The four zero modes of the equatorial average states:
/// (a₁, a₂) annihilated by ρ₂ and (b₁, b₂) annihilated by ρ₁.
pub fn equatorial_kernel_vectors() -> (Vec<CVector>, Vec<CVector>) {
    let d = 2;
    let zero = CVector::from_vec(vec![cr(1.0), cr(0.0)]);
    let one = CVector::from_vec(vec![cr(0.0), cr(1.0)]);
    let singlet = CVector::from_vec(vec![cr(0.0), cr(1.0), cr(-1.0), cr(0.0)]) / cr(2f64.sqrt());
    let make = |pair: (usize, usize), single: usize, s: &CVector| -> CVector {
        crate::operator::assemble_state(d, 3, &[(single, s)], &[(pair, &singlet)])
    };
    let a = vec![make((0, 2), 1, &zero), make((0, 2), 1, &one)];
    let b = vec![make((0, 1), 2, &zero), make((0, 1), 2, &one)];
    (a, b)
}

/// Average states of single-copy identification restricted to equatorial
/// qubits (both reference phases uniform on the equator of the Bloch
/// sphere):
///
/// ρ₁ = (1/8)(|00⟩⟨00| + |11⟩⟨11| + 2|ψ⁺⟩⟨ψ⁺|)_AB ⊗ I_C and the same with
/// B ↔ C.
pub fn equatorial_average_states() -> (HermitianOperator, HermitianOperator) {
    let psi_plus = CVector::from_vec(vec![cr(0.0), cr(1.0), cr(1.0), cr(0.0)]) / cr(2f64.sqrt());
    let mut core = CMatrix::zeros(4, 4);
    core[(0, 0)] = cr(1.0);
    core[(3, 3)] = cr(1.0);
    core += projector(&psi_plus) * cr(2.0);
    core /= cr(8.0);
    let rho1 = embed_operator(2, 3, &[0, 1], &core);
    let rho2 = embed_operator(2, 3, &[0, 2], &core);
    (
        HermitianOperator::from_hermitian_parts(rho1, DEFAULT_TOL),
        HermitianOperator::from_hermitian_parts(rho2, DEFAULT_TOL),
    )
}

/// An equatorial qubit state (|0⟩ + e^{iφ}|1⟩)/√2.
pub fn equatorial_state(phi: f64) -> CVector {
    CVector::from_vec(vec![cr(1.0), c(phi.cos(), phi.sin())]) / cr(2f64.sqrt())
}
