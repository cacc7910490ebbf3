//! Single-shot channel testing via process POVMs.
//!
//! A channel is represented by its (unnormalized) process operator
//! ω = (I⊗E)[Ψ⁺] with Ψ⁺ = Σ|jj⟩⟨kk|; any single-use experiment is a
//! collection of positive operators normalized to ξᵀ ⊗ I. On top of that
//! representation this module builds unambiguous discrimination of two
//! unitary channels (with the completely bounded process fidelity and its
//! minimizing test state) and the optimal unambiguous comparator of two
//! unknown unitaries.

use crate::linalg::{
    self, cr, identity, inner, min_eigenvalue, projector, psd_sqrt, trace_norm, trace_re,
    unitary_eigenphases, CMatrix, CVector,
};
use crate::operator::{
    antisymmetric_projector, partial_trace, support_projector, symmetric_projector,
    HermitianOperator, DEFAULT_TOL,
};
use crate::rng::RandomStream;
use crate::{Error, Result};

/// Unnormalized maximally entangled vector Σⱼ |j⟩⊗|j⟩.
pub fn bell_vector(d: usize) -> CVector {
    let mut v = CVector::zeros(d * d);
    for j in 0..d {
        v[j * d + j] = cr(1.0);
    }
    v
}

/// Choi-Jamiolkowski operator of a channel on a D-dimensional system: a
/// positive operator on D² with trace D.
#[derive(Debug, Clone)]
pub struct ChoiOperator {
    pub d: usize,
    pub omega: CMatrix,
}

impl ChoiOperator {
    pub fn new(d: usize, omega: CMatrix) -> Result<Self> {
        if omega.nrows() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "Choi operator must be {0}x{0}",
                d * d
            )));
        }
        let h = HermitianOperator::new(omega.clone(), 1e-8)?;
        if !h.is_positive() {
            return Err(Error::NotPositive(h.min_eigenvalue()));
        }
        Ok(Self { d, omega })
    }

    pub fn trace(&self) -> f64 {
        trace_re(&self.omega)
    }

    pub fn support(&self) -> Result<HermitianOperator> {
        support_projector(
            &HermitianOperator::from_hermitian_parts(self.omega.clone(), DEFAULT_TOL),
            DEFAULT_TOL,
        )
    }
}

/// Process operator of a unitary channel: ω_U = |ψ_U⟩⟨ψ_U| with
/// |ψ_U⟩ = (I⊗U)|Ψ⁺⟩ — rank one, trace D.
pub fn choi_of_unitary(u: &CMatrix) -> Result<ChoiOperator> {
    let d = u.nrows();
    let dev = linalg::unitarity_deviation(u);
    if dev > 1e-8 {
        return Err(Error::NotUnitary(dev));
    }
    let psi = (identity(d).kronecker(u)) * bell_vector(d);
    ChoiOperator::new(d, projector(&psi))
}

/// Process operator of the channel built from Kraus operators.
pub fn choi_of_kraus(d: usize, kraus: &[CMatrix]) -> Result<ChoiOperator> {
    let bell = bell_vector(d);
    let mut omega = CMatrix::zeros(d * d, d * d);
    for k in kraus {
        let v = (identity(d).kronecker(k)) * &bell;
        omega += projector(&v);
    }
    ChoiOperator::new(d, omega)
}

/// A process POVM: positive operators on a D²-dimensional space summing to
/// ξᵀ ⊗ I for some state ξ of the principal system.
#[derive(Debug, Clone)]
pub struct Ppovm {
    pub d: usize,
    pub elements: Vec<HermitianOperator>,
    /// Declared normalization state (validation recovers it independently).
    pub xi: CMatrix,
}

/// Validation report for a process POVM.
#[derive(Debug, Clone)]
pub struct PpovmValidation {
    pub min_eigenvalues: Vec<f64>,
    /// ‖Σ Mⱼ − ξᵀ⊗I‖ with ξ recovered from the sum itself.
    pub normalization_deviation: f64,
    /// ξ recovered as (Tr₂ Σ Mⱼ / D)ᵀ.
    pub recovered_xi: CMatrix,
    pub xi_trace: f64,
    pub xi_min_eigenvalue: f64,
    pub tol: f64,
}

impl PpovmValidation {
    pub fn is_valid(&self) -> bool {
        self.min_eigenvalues.iter().all(|&m| m >= -self.tol)
            && self.normalization_deviation <= self.tol
            && (self.xi_trace - 1.0).abs() <= self.tol
            && self.xi_min_eigenvalue >= -self.tol
    }
}

/// Report-only check of the process-POVM conditions.
pub fn validate_ppovm(p: &Ppovm) -> PpovmValidation {
    let d = p.d;
    let dim = p.elements.first().map(|e| e.dim()).unwrap_or(d * d);
    let mut sum = CMatrix::zeros(dim, dim);
    for e in &p.elements {
        sum += e.matrix();
    }
    // the sum acts on ancilla ⊗ principal with equal dimensions
    let anc_dim = dim / d;
    let xi_t = partial_trace(&sum, &[1], &[anc_dim, d])
        .map(|m| m / cr(d as f64))
        .unwrap_or_else(|_| CMatrix::zeros(anc_dim, anc_dim));
    let normalization_deviation = (&sum - xi_t.kronecker(&identity(d))).norm();
    let recovered_xi = xi_t.transpose();
    let xi_trace = trace_re(&recovered_xi);
    let xi_min_eigenvalue = min_eigenvalue(&recovered_xi);
    PpovmValidation {
        min_eigenvalues: p.elements.iter().map(|e| e.min_eigenvalue()).collect(),
        normalization_deviation,
        recovered_xi,
        xi_trace,
        xi_min_eigenvalue,
        tol: 1e-7,
    }
}

/// Two channels admit unambiguous single-use discrimination exactly when
/// their process operators have distinct supports.
pub fn usd_feasible(omega1: &ChoiOperator, omega2: &ChoiOperator) -> Result<bool> {
    let p1 = omega1.support()?;
    let p2 = omega2.support()?;
    Ok((p1.matrix() - p2.matrix()).norm() > 1e-8)
}

/// Completely bounded process fidelity of two unitary channels, together
/// with a minimizing test-state reduction ξ.
#[derive(Debug, Clone)]
pub struct CbFidelity {
    pub value: f64,
    /// A state attaining min_ξ |Tr(ξ U†V)|.
    pub xi: CMatrix,
    /// Eigenphases of U†V, sorted ascending in (−π, π].
    pub phases: Vec<f64>,
}

/// F(U, V) = min_ξ |Tr(ξ U†V)|: zero when the origin lies in the convex
/// hull of the eigenphase points of U†V, else ½ min over phase pairs of
/// |e^{iθₖ} + e^{iθₗ}|.
///
/// Hull membership is decided on the circle: the origin is enclosed exactly
/// when no open semicircle contains all eigenphases (largest angular gap
/// ≤ π, with 1e-10 rad boundary tolerance).
pub fn cb_fidelity_unitaries(u: &CMatrix, v: &CMatrix) -> Result<CbFidelity> {
    if u.shape() != v.shape() {
        return Err(Error::DimensionMismatch("unitary sizes differ".into()));
    }
    let w = u.adjoint() * v;
    let eig = unitary_eigenphases(&w, 1e-8)?;
    let phases: Vec<f64> = eig.iter().map(|(t, _)| *t).collect();
    let n = phases.len();

    // largest angular gap between consecutive phases (cyclically)
    let mut max_gap = 0.0f64;
    let mut gap_at = 0usize; // gap between phases[gap_at] and its successor
    for i in 0..n {
        let next = if i + 1 < n {
            phases[i + 1]
        } else {
            phases[0] + 2.0 * std::f64::consts::PI
        };
        let gap = next - phases[i];
        if gap > max_gap {
            max_gap = gap;
            gap_at = i;
        }
    }

    const GAP_TOL: f64 = 1e-10;
    if max_gap <= std::f64::consts::PI + GAP_TOL {
        // origin enclosed: build convex weights summing the phase points
        // to zero, by pairs first, then triples
        let pts: Vec<(f64, f64)> = phases.iter().map(|&t| (t.cos(), t.sin())).collect();
        let mut xi = CMatrix::zeros(u.nrows(), u.nrows());
        'search: {
            for i in 0..n {
                for j in i + 1..n {
                    let s = (pts[i].0 + pts[j].0, pts[i].1 + pts[j].1);
                    if s.0.hypot(s.1) < 1e-9 {
                        xi += projector(&eig[i].1) * cr(0.5);
                        xi += projector(&eig[j].1) * cr(0.5);
                        break 'search;
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        if let Some(wts) = triangle_weights(pts[i], pts[j], pts[k]) {
                            xi += projector(&eig[i].1) * cr(wts.0);
                            xi += projector(&eig[j].1) * cr(wts.1);
                            xi += projector(&eig[k].1) * cr(wts.2);
                            break 'search;
                        }
                    }
                }
            }
            return Err(Error::InvalidArgument(
                "gap criterion and weight search disagree on hull membership".into(),
            ));
        }
        return Ok(CbFidelity {
            value: 0.0,
            xi,
            phases,
        });
    }

    // origin outside: the closest hull point is the midpoint of the pair of
    // phases bounding the largest gap; scan all pairs regardless
    let mut best = f64::INFINITY;
    let mut pair = (gap_at, (gap_at + 1) % n);
    for i in 0..n {
        for j in i..n {
            let m = 0.5
                * ((phases[i].cos() + phases[j].cos()).hypot(phases[i].sin() + phases[j].sin()));
            if m < best {
                best = m;
                pair = (i, j);
            }
        }
    }
    let mut xi = CMatrix::zeros(u.nrows(), u.nrows());
    if pair.0 == pair.1 {
        xi += projector(&eig[pair.0].1);
    } else {
        xi += projector(&eig[pair.0].1) * cr(0.5);
        xi += projector(&eig[pair.1].1) * cr(0.5);
    }
    Ok(CbFidelity {
        value: best,
        xi,
        phases,
    })
}

/// Convex weights placing the origin inside a triangle, if it is inside.
fn triangle_weights(
    a: (f64, f64),
    b: (f64, f64),
    c: (f64, f64),
) -> Option<(f64, f64, f64)> {
    // solve w_a a + w_b b + w_c c = 0, w_a + w_b + w_c = 1
    let det =
        a.0 * (b.1 - c.1) - b.0 * (a.1 - c.1) + c.0 * (a.1 - b.1);
    if det.abs() < 1e-12 {
        return None;
    }
    // Cramer on the 3x3 system [[ax,bx,cx],[ay,by,cy],[1,1,1]] w = (0,0,1)
    let wa = (b.0 * c.1 - c.0 * b.1) / det;
    let wb = (c.0 * a.1 - a.0 * c.1) / det;
    let wc = (a.0 * b.1 - b.0 * a.1) / det;
    let eps = -1e-12;
    if wa >= eps && wb >= eps && wc >= eps {
        Some((wa.max(0.0), wb.max(0.0), wc.max(0.0)))
    } else {
        None
    }
}

/// Solution of unambiguous discrimination of two unitary channels.
#[derive(Debug, Clone)]
pub struct UnitaryUsd {
    pub p_success: f64,
    /// Reduced test state on the principal system.
    pub xi: CMatrix,
    /// The purified test state on ancilla ⊗ principal.
    pub test_state: CVector,
    /// Conclusive and inconclusive effects (F_U, F_V, F₀) on the output.
    pub effects: [HermitianOperator; 3],
    pub fidelity: f64,
}

impl UnitaryUsd {
    /// The corresponding process POVM M_x = (A⊗I)F_x(A⊗I) with A = √(ξᵀ).
    pub fn ppovm(&self) -> Result<Ppovm> {
        let d = self.xi.nrows();
        let a = psd_sqrt(&self.xi.transpose(), 1e-9)?;
        let sandwich = a.kronecker(&identity(d));
        let elements = self
            .effects
            .iter()
            .map(|f| {
                HermitianOperator::new(&sandwich * f.matrix() * &sandwich, 1e-7)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ppovm {
            d,
            elements,
            xi: self.xi.clone(),
        })
    }
}

/// Optimal unambiguous discrimination of two unitary channels with priors
/// η_U, η_V (the larger prior drives the branch choice):
///
/// P = 1 − 2√(η_Uη_V) F  when F ≤ √(η_min/η_max), else η_max(1 − F²).
pub fn unitary_usd(u: &CMatrix, v: &CMatrix, eta_u: f64, eta_v: f64) -> Result<UnitaryUsd> {
    if (eta_u + eta_v - 1.0).abs() > 1e-12 || eta_u < 0.0 || eta_v < 0.0 {
        return Err(Error::InvalidArgument("priors must sum to one".into()));
    }
    // work with η_first >= η_second; swap the roles back afterwards
    let swapped = eta_u < eta_v;
    let (ua, va, eta_a, eta_b) = if swapped {
        (v, u, eta_v, eta_u)
    } else {
        (u, v, eta_u, eta_v)
    };

    let fid = cb_fidelity_unitaries(ua, va)?;
    let f = fid.value;
    let d = u.nrows();
    let dim = d * d;

    let a = psd_sqrt(&fid.xi.transpose(), 1e-9)?;
    let test_state = (a.kronecker(&identity(d))) * bell_vector(d);
    let phi_u = (identity(d).kronecker(ua)) * &test_state;
    let phi_v = (identity(d).kronecker(va)) * &test_state;
    let overlap = inner(&phi_u, &phi_v).norm();

    if overlap > 1.0 - 1e-12 {
        // identical channels: nothing is concludable
        let zero = HermitianOperator::zero(dim);
        return Ok(UnitaryUsd {
            p_success: 0.0,
            xi: fid.xi,
            test_state,
            effects: [zero.clone(), zero, HermitianOperator::identity(dim)],
            fidelity: f,
        });
    }

    let ratio = (eta_b / eta_a).sqrt();
    let p_success = if f <= ratio {
        1.0 - 2.0 * (eta_a * eta_b).sqrt() * f
    } else {
        eta_a * (1.0 - f * f)
    };

    // effects on the two-dimensional relevant subspace
    let basis = linalg::orthonormalize(&[phi_u.clone(), phi_v.clone()], 1e-9);
    let mut q = CMatrix::zeros(dim, dim);
    for b in &basis {
        q += projector(b);
    }
    let one_min = 1.0 - overlap * overlap;
    let cu = ((1.0 - ratio * overlap) / one_min).min(1.0);
    let cv = ((1.0 - overlap / ratio) / one_min).clamp(0.0, 1.0);
    let f_a = (&q - projector(&phi_v) / cr(phi_v.norm_squared())) * cr(cu);
    let f_b = (&q - projector(&phi_u) / cr(phi_u.norm_squared())) * cr(cv);
    let (f_u, f_v) = if swapped { (f_b, f_a) } else { (f_a, f_b) };
    let f0 = identity(dim) - &f_u - &f_v;
    Ok(UnitaryUsd {
        p_success,
        xi: fid.xi,
        test_state,
        effects: [
            HermitianOperator::new(f_u, 1e-8)?,
            HermitianOperator::new(f_v, 1e-8)?,
            HermitianOperator::new(f0, 1e-8)?,
        ],
        fidelity: f,
    })
}

/// Fidelity-type upper bound on unambiguous discrimination of two general
/// channels: 1 − 2√(η₁η₂) min_ξ Tr|√ω₁ (ξᵀ⊗I) √ω₂|, the minimization done
/// by seeded coordinate descent over a Cholesky-like parameterization.
pub fn channel_fidelity_bound(
    omega1: &ChoiOperator,
    omega2: &ChoiOperator,
    eta1: f64,
    rs: &mut RandomStream,
) -> Result<f64> {
    if omega1.d != omega2.d {
        return Err(Error::DimensionMismatch("channel dimensions differ".into()));
    }
    let d = omega1.d;
    let sq1 = psd_sqrt(&omega1.omega, 1e-8)?;
    let sq2 = psd_sqrt(&omega2.omega, 1e-8)?;
    let objective = |l: &CMatrix| -> f64 {
        let xi = l * l.adjoint();
        let norm = trace_re(&xi);
        let xi_t = xi.transpose() / cr(norm);
        trace_norm(&(&sq1 * xi_t.kronecker(&identity(d)) * &sq2))
    };

    // parameter layout: d real diagonal entries, then (re, im) pairs for
    // the strictly lower triangle
    let n_params = d * d;
    let build = |params: &[f64]| -> CMatrix {
        let mut l = CMatrix::zeros(d, d);
        for i in 0..d {
            l[(i, i)] = cr(params[i]);
        }
        let mut k = d;
        for i in 0..d {
            for j in 0..i {
                l[(i, j)] = linalg::c(params[k], params[k + 1]);
                k += 2;
            }
        }
        l
    };

    let mut best = f64::INFINITY;
    for restart in 0..10 {
        let mut params: Vec<f64> = if restart == 0 {
            let mut p = vec![0.0; n_params];
            p[..d].fill(1.0); // maximally mixed start
            p
        } else {
            (0..n_params).map(|_| rs.normal()).collect()
        };
        let mut step = 0.5;
        let mut current = objective(&build(&params));
        while step > 1e-9 {
            // bounded number of sweeps per step size
            for _ in 0..25 {
                let mut improved = false;
                for i in 0..n_params {
                    for sign in [1.0, -1.0] {
                        let old = params[i];
                        params[i] = old + sign * step;
                        let v = objective(&build(&params));
                        if v < current - 1e-13 && build(&params).norm() > 1e-12 {
                            current = v;
                            improved = true;
                        } else {
                            params[i] = old;
                        }
                    }
                }
                if !improved {
                    break;
                }
            }
            step *= 0.5;
        }
        best = best.min(current);
    }
    Ok(1.0 - 2.0 * (eta1 * (1.0 - eta1)).sqrt() * best)
}

/// Action of the Haar-average unitary channel: X ↦ Tr(X)/d · I.
pub fn average_channel(x: &CMatrix, d: usize) -> CMatrix {
    identity(d) * (linalg::trace(x) / cr(d as f64))
}

/// Action of the twirling channel U⊗U · U†⊗U†:
/// Y ↦ Tr(YP^sym)/d_sym P^sym + Tr(YP^asym)/d_asym P^asym.
pub fn twirl(y: &CMatrix, d: usize) -> Result<CMatrix> {
    let sym = symmetric_projector(d, 2, &[0, 1], 2)?;
    let asym = antisymmetric_projector(d, 2, &[0, 1], 2)?.operator;
    let d_sym = (d * (d + 1) / 2) as f64;
    let d_asym = (d * (d - 1) / 2) as f64;
    let w_sym = trace_re(&(y * sym.matrix())) / d_sym;
    let mut out = sym.matrix() * cr(w_sym);
    if d_asym > 0.0 {
        let w_asym = trace_re(&(y * asym.matrix())) / d_asym;
        out += asym.matrix() * cr(w_asym);
    }
    Ok(out)
}

/// The twirled process operator (I ⊗ T)[Ψ⁺] governing comparator no-error
/// conditions: (1/d_sym)P^sym⊗P^sym + (1/d_asym)P^asym⊗P^asym.
pub fn omega_twirl(d: usize) -> Result<CMatrix> {
    let sym = symmetric_projector(d, 2, &[0, 1], 2)?;
    let asym = antisymmetric_projector(d, 2, &[0, 1], 2)?.operator;
    let d_sym = (d * (d + 1) / 2) as f64;
    let d_asym = (d * (d - 1) / 2) as f64;
    let mut out = sym.matrix().kronecker(sym.matrix()) / cr(d_sym);
    if d_asym > 0.0 {
        out += asym.matrix().kronecker(asym.matrix()) / cr(d_asym);
    }
    Ok(out)
}

/// The optimal unambiguous comparator of two unknown unitary channels: an
/// antisymmetric test state, outcome "different" on the symmetric output
/// subspace. Rejects test states with any symmetric component.
///
/// Elements come ordered {M_diff, M₀}; the average conditional success is
/// d_sym/d² = (d+1)/(2d).
pub fn comparator_ppovm(d: usize, rho_test: &HermitianOperator) -> Result<Ppovm> {
    if rho_test.dim() != d * d {
        return Err(Error::DimensionMismatch(
            "test state must live on two qudits".into(),
        ));
    }
    if (rho_test.trace() - 1.0).abs() > 1e-9 || !rho_test.is_positive() {
        return Err(Error::InvalidArgument("test state must be a density operator".into()));
    }
    let sym = symmetric_projector(d, 2, &[0, 1], 2)?;
    let sym_component = trace_re(&(rho_test.matrix() * sym.matrix()));
    if sym_component > 1e-9 {
        return Err(Error::Precondition(format!(
            "test state has symmetric component {sym_component:.3e}; comparator no-error \
             conditions require an antisymmetric test state"
        )));
    }
    let asym = antisymmetric_projector(d, 2, &[0, 1], 2)?.operator;
    let xi_t = rho_test.matrix().transpose();
    let m_diff = xi_t.kronecker(sym.matrix());
    let m_0 = xi_t.kronecker(asym.matrix());
    Ok(Ppovm {
        d: d * d,
        elements: vec![
            HermitianOperator::new(m_diff, 1e-9)?,
            HermitianOperator::new(m_0, 1e-9)?,
        ],
        xi: rho_test.matrix().clone(),
    })
}

/// Average conditional success of the optimal comparator: (d+1)/(2d).
pub fn comparator_average_success(d: usize) -> f64 {
    (d as f64 + 1.0) / (2.0 * d as f64)
}

/// Conditional probability of revealing U ≠ V with test state ρ:
/// Tr(P^sym (U⊗V) ρ (U⊗V)†). Zero when U = V.
pub fn comparator_conditional(
    u: &CMatrix,
    v: &CMatrix,
    rho_test: &HermitianOperator,
) -> Result<f64> {
    let d = u.nrows();
    let sym = symmetric_projector(d, 2, &[0, 1], 2)?;
    let uv = u.kronecker(v);
    let evolved = &uv * rho_test.matrix() * uv.adjoint();
    Ok(trace_re(&(sym.matrix() * evolved)))
}

/// Requirements a candidate comparator strategy must satisfy: the
/// "same" element has to vanish and the "different" element has to avoid
/// the twirled process operator.
#[derive(Debug, Clone)]
pub struct ComparatorRequirements {
    /// Tr(M_same); any nonzero value breaks the same-side no-error
    /// condition.
    pub same_trace: f64,
    /// Tr(ω_T M_diff) — the different-side no-error condition.
    pub diff_twirl_overlap: f64,
    pub tol: f64,
}

impl ComparatorRequirements {
    pub fn acceptable(&self) -> bool {
        self.same_trace.abs() <= self.tol && self.diff_twirl_overlap.abs() <= self.tol
    }
}

/// Evaluate the no-error requirements on a candidate (M_same, M_diff) pair.
pub fn comparator_requirements(
    d: usize,
    m_same: &HermitianOperator,
    m_diff: &HermitianOperator,
) -> Result<ComparatorRequirements> {
    let omega_t = omega_twirl(d)?;
    Ok(ComparatorRequirements {
        same_trace: m_same.trace(),
        diff_twirl_overlap: trace_re(&(&omega_t * m_diff.matrix())),
        tol: 1e-9,
    })
}
