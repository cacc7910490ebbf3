//! Coherent-state amplitude networks.
//!
//! Beamsplitters act linearly on coherent amplitudes without entangling the
//! modes, so every setup here is a unitary matrix over mode amplitudes plus
//! photodetectors that click on non-vacuum modes. The module builds the
//! comparison and identification networks, the reference-recovery and
//! splitting strategies, detector-efficiency curves and the technical-noise
//! analysis, each with its closed-form success probability.

use crate::linalg::{cr, identity, unitarity_deviation, CMatrix, CVector, C64};
use crate::{Error, Result};

/// A vector of coherent mode amplitudes.
#[derive(Debug, Clone)]
pub struct CoherentRegister {
    pub amplitudes: CVector,
}

impl CoherentRegister {
    pub fn new(amplitudes: Vec<C64>) -> Self {
        Self {
            amplitudes: CVector::from_vec(amplitudes),
        }
    }

    pub fn vacuum(modes: usize) -> Self {
        Self {
            amplitudes: CVector::zeros(modes),
        }
    }

    pub fn modes(&self) -> usize {
        self.amplitudes.len()
    }

    /// Total photon number Σ|αᵢ|².
    pub fn energy(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// A linear-optics network: a unitary amplitude-transfer matrix with
/// detector bindings and a common detector efficiency.
#[derive(Debug, Clone)]
pub struct LinearNetwork {
    g: CMatrix,
    detectors: Vec<(usize, String)>,
    efficiency: f64,
}

impl LinearNetwork {
    pub fn identity(modes: usize) -> Self {
        Self {
            g: identity(modes),
            detectors: Vec::new(),
            efficiency: 1.0,
        }
    }

    pub fn modes(&self) -> usize {
        self.g.nrows()
    }

    pub fn transfer_matrix(&self) -> &CMatrix {
        &self.g
    }

    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.g)
    }

    pub fn set_efficiency(&mut self, gamma: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidArgument(format!(
                "detector efficiency {gamma} outside [0, 1]"
            )));
        }
        self.efficiency = gamma;
        Ok(())
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }

    /// Append a beamsplitter of transmittivity T on modes (i, j):
    /// (αᵢ, αⱼ) ↦ (√T αᵢ + √R αⱼ, −√R αᵢ + √T αⱼ).
    pub fn then_beamsplitter(&mut self, i: usize, j: usize, t: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidArgument(format!(
                "transmittivity {t} outside [0, 1]"
            )));
        }
        let n = self.modes();
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidArgument("bad beamsplitter modes".into()));
        }
        let (st, sr) = (t.sqrt(), (1.0 - t).sqrt());
        let mut b = identity(n);
        b[(i, i)] = cr(st);
        b[(i, j)] = cr(sr);
        b[(j, i)] = cr(-sr);
        b[(j, j)] = cr(st);
        self.g = b * &self.g;
        Ok(())
    }

    /// Bind a detector to a mode.
    pub fn add_detector(&mut self, mode: usize, label: impl Into<String>) {
        self.detectors.push((mode, label.into()));
    }

    pub fn detectors(&self) -> &[(usize, String)] {
        &self.detectors
    }

    pub fn apply(&self, input: &CoherentRegister) -> CoherentRegister {
        CoherentRegister {
            amplitudes: &self.g * &input.amplitudes,
        }
    }

    /// Probability that the detector on `mode` fires on the output register:
    /// 1 − e^{−Γ|β|²}.
    pub fn click_probability(&self, output: &CoherentRegister, mode: usize) -> f64 {
        1.0 - (-self.efficiency * output.amplitudes[mode].norm_sqr()).exp()
    }
}

/// One beamsplitter applied to a pair of amplitudes, with the sign
/// convention (√T α + √R β, −√R α + √T β) that the recovery cancellation
/// conditions depend on.
pub fn beamsplitter(t: f64, alpha: C64, beta: C64) -> Result<(C64, C64)> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "transmittivity {t} outside [0, 1]"
        )));
    }
    let (st, sr) = (cr(t.sqrt()), cr((1.0 - t).sqrt()));
    Ok((st * alpha + sr * beta, -sr * alpha + st * beta))
}

/// Concentration cascade: k copies of |α⟩ mapped to (|√k α⟩, 0, …, 0) with
/// transmittivities T_j = j/(j+1). Returns the network and its output on
/// the all-α input.
pub fn concentrate(k: usize, alpha: C64) -> Result<(LinearNetwork, CoherentRegister)> {
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one copy".into()));
    }
    let mut net = LinearNetwork::identity(k);
    for j in 1..k {
        net.then_beamsplitter(0, j, j as f64 / (j + 1) as f64)?;
    }
    let input = CoherentRegister::new(vec![alpha; k]);
    let output = net.apply(&input);
    Ok((net, output))
}

/// Splitting cascade appended to an existing network: divides the amplitude
/// in `source` equally over `parts` modes (`source` plus `parts − 1` fresh
/// target modes, which must currently be vacuum).
fn split_equally(
    net: &mut LinearNetwork,
    source: usize,
    targets: &[usize],
) -> Result<Vec<usize>> {
    let parts = targets.len() + 1;
    let mut order = Vec::with_capacity(parts);
    // peel 1/parts, then 1/(parts-1) of the remainder, and so on; putting
    // the vacuum mode first keeps every peeled amplitude positive
    for (i, &tgt) in targets.iter().enumerate() {
        let fraction = 1.0 / (parts - i) as f64;
        net.then_beamsplitter(tgt, source, 1.0 - fraction)?;
        order.push(tgt);
    }
    order.push(source);
    Ok(order)
}

/// Outcome of a comparison network: the network itself, the closed-form
/// success probability and the network-simulated one.
#[derive(Debug, Clone)]
pub struct CoherentComparison {
    pub network: LinearNetwork,
    pub probability: f64,
    pub simulated_probability: f64,
    pub detector_mode: usize,
}

/// Optimal unambiguous comparison of k copies of |α₁⟩ against l copies of
/// |α₂⟩: both ensembles are concentrated and interfered on a final
/// beamsplitter with T = k/(k+l); a click certifies difference.
///
/// P = 1 − e^{−(kl/(k+l))|α₁−α₂|²}.
pub fn compare_coherent(k: usize, l: usize, alpha1: C64, alpha2: C64) -> Result<CoherentComparison> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("copy counts must be positive".into()));
    }
    let modes = k + l;
    let mut net = LinearNetwork::identity(modes);
    for j in 1..k {
        net.then_beamsplitter(0, j, j as f64 / (j + 1) as f64)?;
    }
    for j in 1..l {
        net.then_beamsplitter(k, k + j, j as f64 / (j + 1) as f64)?;
    }
    net.then_beamsplitter(0, k, k as f64 / (k + l) as f64)?;
    net.add_detector(k, "difference");

    let mut input = Vec::with_capacity(modes);
    input.extend(std::iter::repeat_n(alpha1, k));
    input.extend(std::iter::repeat_n(alpha2, l));
    let output = net.apply(&CoherentRegister::new(input));
    let simulated_probability = net.click_probability(&output, k);
    let probability =
        1.0 - (-((k * l) as f64) / (k + l) as f64 * (alpha1 - alpha2).norm_sqr()).exp();
    Ok(CoherentComparison {
        network: net,
        probability,
        simulated_probability,
        detector_mode: k,
    })
}

/// Transmittivities of the identification setup: T₂ balances the unknown
/// against the first reference, T₃ against the second.
pub fn ui_transmittivities(n_a: usize, n_b: usize, n_c: usize, t1: f64) -> (f64, f64) {
    let (na, nb, nc) = (n_a as f64, n_b as f64, n_c as f64);
    let t2 = 1.0 / (1.0 + na / nb * t1);
    let t3 = (1.0 - t1) / (nc / na + 1.0 - t1);
    (t2, t3)
}

/// Result of the three-beamsplitter identification network on a concrete
/// input. Detector 1 watches the mode interfering with the second
/// reference (a click proves α_? = α₁), detector 2 the mode interfering
/// with the first.
#[derive(Debug, Clone)]
pub struct UiNetworkOutcome {
    pub network: LinearNetwork,
    /// Output amplitude at the detector-1 mode (∝ α₂ − α_?).
    pub amp_detector1: C64,
    /// Output amplitude at the detector-2 mode (∝ α_? − α₁).
    pub amp_detector2: C64,
    /// Non-click probabilities of the two detectors.
    pub silent1: f64,
    pub silent2: f64,
    /// Closed-form correct-identification probabilities for α_? = α₁ / α₂.
    pub p1: f64,
    pub p2: f64,
    /// η-weighted identification probability at equal priors.
    pub probability: f64,
}

/// The multi-copy identification network: concentrate the n_A unknown and
/// the n_B, n_C reference copies, split the unknown with transmittivity t1
/// and interfere each part with one concentrated reference.
pub fn ui_two_refs(
    n_a: usize,
    n_b: usize,
    n_c: usize,
    t1: f64,
    alpha_q: C64,
    alpha1: C64,
    alpha2: C64,
) -> Result<UiNetworkOutcome> {
    if n_a == 0 || n_b == 0 || n_c == 0 {
        return Err(Error::InvalidArgument("copy counts must be positive".into()));
    }
    if !(0.0..=1.0).contains(&t1) {
        return Err(Error::InvalidArgument("t1 outside [0, 1]".into()));
    }
    let (na, nb, nc) = (n_a as f64, n_b as f64, n_c as f64);
    let (t2, t3) = ui_transmittivities(n_a, n_b, n_c, t1);

    // mode layout: [A-block (n_a), B-block (n_b), C-block (n_c), D], where
    // the first mode of each block carries the concentrated amplitude
    let modes = n_a + n_b + n_c + 1;
    let (a0, b0, c0, d0) = (0usize, n_a, n_a + n_b, n_a + n_b + n_c);
    let mut net = LinearNetwork::identity(modes);
    for j in 1..n_a {
        net.then_beamsplitter(a0, a0 + j, j as f64 / (j + 1) as f64)?;
    }
    for j in 1..n_b {
        net.then_beamsplitter(b0, b0 + j, j as f64 / (j + 1) as f64)?;
    }
    for j in 1..n_c {
        net.then_beamsplitter(c0, c0 + j, j as f64 / (j + 1) as f64)?;
    }
    net.then_beamsplitter(d0, a0, t1)?; // splits the unknown between A and D
    net.then_beamsplitter(b0, a0, t2)?; // compares with the first reference
    net.then_beamsplitter(d0, c0, t3)?; // compares with the second reference
    net.add_detector(c0, "detector-1");
    net.add_detector(a0, "detector-2");

    let mut input = Vec::with_capacity(modes);
    input.extend(std::iter::repeat_n(alpha_q, n_a));
    input.extend(std::iter::repeat_n(alpha1, n_b));
    input.extend(std::iter::repeat_n(alpha2, n_c));
    input.push(cr(0.0));
    let output = net.apply(&CoherentRegister::new(input));

    let amp_detector1 = output.amplitudes[c0];
    let amp_detector2 = output.amplitudes[a0];
    let silent1 = 1.0 - net.click_probability(&output, c0);
    let silent2 = 1.0 - net.click_probability(&output, a0);

    let delta = (alpha1 - alpha2).norm_sqr();
    let p1 = 1.0 - (-nc * na * (1.0 - t1) / (nc + na * (1.0 - t1)) * delta).exp();
    let p2 = 1.0 - (-nb * na * t1 / (nb + na * t1) * delta).exp();
    Ok(UiNetworkOutcome {
        network: net,
        amp_detector1,
        amp_detector2,
        silent1,
        silent2,
        p1,
        p2,
        probability: 0.5 * (p1 + p2),
    })
}

/// Closed-form identification probability for n_B = n_C and the balanced
/// splitting T₁ = 1/2: P = 1 − e^{−(n_A n_B/(n_A+2n_B))|α₁−α₂|²}.
pub fn ui_two_refs_probability(n_a: usize, n_b: usize, delta_sq: f64) -> f64 {
    let (na, nb) = (n_a as f64, n_b as f64);
    1.0 - (-na * nb / (na + 2.0 * nb) * delta_sq).exp()
}

/// Numerically optimal T₁ for given priors and reference states (golden
/// section on η₁P₁ + η₂P₂). For n_B ≠ n_C the optimum depends on the
/// reference amplitudes, which is why it is exposed as a search.
pub fn optimize_t1(
    n_a: usize,
    n_b: usize,
    n_c: usize,
    eta1: f64,
    alpha1: C64,
    alpha2: C64,
) -> f64 {
    let delta = (alpha1 - alpha2).norm_sqr();
    let (na, nb, nc) = (n_a as f64, n_b as f64, n_c as f64);
    let objective = |t1: f64| -> f64 {
        let p1 = 1.0 - (-nc * na * (1.0 - t1) / (nc + na * (1.0 - t1)) * delta).exp();
        let p2 = 1.0 - (-nb * na * t1 / (nb + na * t1) * delta).exp();
        eta1 * p1 + (1.0 - eta1) * p2
    };
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    for _ in 0..100 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = objective(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = objective(x1);
        }
    }
    0.5 * (a + b)
}

/// Identification among M reference states with equal copy counts: the
/// concentrated unknown is split equally, each part interferes with one
/// concentrated reference at T_k = n_A/(n_A + M n_B).
///
/// All detectors except the k-th firing certifies α_? = α_k. Returns the
/// network and the closed-form probability
/// Σⱼ (1/M) Πₖ≠ⱼ (1 − e^{−(n_A n_B/(n_A+M n_B))|αⱼ−αₖ|²}).
pub fn ui_m_refs(
    m: usize,
    n_a: usize,
    n_b: usize,
    alpha_q: C64,
    refs: &[C64],
) -> Result<(LinearNetwork, CoherentRegister, f64)> {
    if refs.len() != m || m < 2 {
        return Err(Error::InvalidArgument("need M ≥ 2 reference amplitudes".into()));
    }
    if n_a == 0 || n_b == 0 {
        return Err(Error::InvalidArgument("copy counts must be positive".into()));
    }
    let (na, nb) = (n_a as f64, n_b as f64);
    let t_k = na / (na + m as f64 * nb);

    // modes: A-block, M reference blocks, M−1 split targets
    let modes = n_a + m * n_b + (m - 1);
    let a0 = 0usize;
    let ref0 = |i: usize| n_a + i * n_b;
    let split0 = n_a + m * n_b;
    let mut net = LinearNetwork::identity(modes);
    for j in 1..n_a {
        net.then_beamsplitter(a0, a0 + j, j as f64 / (j + 1) as f64)?;
    }
    for i in 0..m {
        for j in 1..n_b {
            net.then_beamsplitter(ref0(i), ref0(i) + j, j as f64 / (j + 1) as f64)?;
        }
    }
    let targets: Vec<usize> = (0..m - 1).map(|i| split0 + i).collect();
    let parts = split_equally(&mut net, a0, &targets)?;
    for (i, &part) in parts.iter().enumerate() {
        // out2 = −√R·part + √T·ref must vanish for α_? = α_i
        net.then_beamsplitter(part, ref0(i), t_k)?;
        net.add_detector(ref0(i), format!("detector-{}", i + 1));
    }

    let mut input = vec![cr(0.0); modes];
    for j in 0..n_a {
        input[a0 + j] = alpha_q;
    }
    for (i, &r) in refs.iter().enumerate() {
        for j in 0..n_b {
            input[ref0(i) + j] = r;
        }
    }
    let output = net.apply(&CoherentRegister::new(input));

    let rate = na * nb / (na + m as f64 * nb);
    let mut probability = 0.0;
    for j in 0..m {
        let mut prod = 1.0;
        for k in 0..m {
            if k != j {
                prod *= 1.0 - (-rate * (refs[j] - refs[k]).norm_sqr()).exp();
            }
        }
        probability += prod / m as f64;
    }
    Ok((net, output, probability))
}

/// Optimal split of a fixed budget of N modes between unknown copies and
/// reference copies: n_A = ⌊N/2⌋ maximizes n_A(N−n_A)/(2N).
pub fn resource_tradeoff(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidArgument("need at least three modes".into()));
    }
    Ok(n / 2)
}

/// The exponent rate n_A(N−n_A)/(2N) maximized by [`resource_tradeoff`].
pub fn resource_rate(n: usize, n_a: usize) -> f64 {
    let (nf, naf) = (n as f64, n_a as f64);
    naf * (nf - naf) / (2.0 * nf)
}

/// Known-reference limit: with the reference states known exactly, the
/// optimal unambiguous discrimination of |α₁⟩^{⊗n_A} vs |α₂⟩^{⊗n_A}
/// succeeds with 1 − |⟨α₁|α₂⟩|^{n_A} = 1 − e^{−(n_A/2)|α₁−α₂|²}.
pub fn known_states_limit(n_a: usize, alpha1: C64, alpha2: C64) -> f64 {
    1.0 - (-(n_a as f64) / 2.0 * (alpha1 - alpha2).norm_sqr()).exp()
}

/// Weak implementation: split every input into N parts and run the basic
/// setup on each triple. Returns (per-round, overall) probabilities; the
/// overall value 1 − e^{−|Δ|²/3} is independent of N.
pub fn weak_ui(n: usize, alpha1: C64, alpha2: C64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one round".into()));
    }
    let delta = (alpha1 - alpha2).norm_sqr();
    let per_round = 1.0 - (-delta / (3.0 * n as f64)).exp();
    let overall = 1.0 - (-delta / 3.0).exp();
    Ok((per_round, overall))
}

/// Conditional identification probability when the unmeasured modes of a
/// first round are reused against a fresh copy of the same unknown state
/// (T₂ = 3/4, T₃ = 1/4): 1 − e^{−|Δ|²/6}, with the measured modes in
/// |(α_?−α₁)/√6⟩ and |(α₂−α_?)/√6⟩.
pub fn repeat_same_unknown(alpha_q: C64, alpha1: C64, alpha2: C64) -> (f64, C64, C64) {
    let p = 1.0 - (-(alpha1 - alpha2).norm_sqr() / 6.0).exp();
    let s6 = cr(6.0f64.sqrt());
    ((p), (alpha_q - alpha1) / s6, (alpha2 - alpha_q) / s6)
}

/// One recovery round: transmittivities of the recovery beamsplitters and
/// the next amplitude suppression factor.
#[derive(Debug, Clone, Copy)]
pub struct RecoveryRound {
    pub t1_recovery: f64,
    pub t2_recovery: f64,
    pub lambda_next: f64,
}

/// Amplitude-suppression map f of the recovery scheme.
pub fn recovery_map(x: f64) -> f64 {
    let u = 1.0 + 2.0 * x;
    (u * u - 2.0 * x * x - (4.0 * x.powi(4) + u * u).sqrt()) / (2.0 * u)
}

/// Recovery transmittivities and the next suppression factor for the
/// current factor λ_k ∈ (0, 1].
pub fn recovery_round(lambda_k: f64) -> Result<RecoveryRound> {
    if lambda_k <= 0.0 || lambda_k > 1.0 {
        return Err(Error::InvalidArgument(format!(
            "suppression factor {lambda_k} outside (0, 1]"
        )));
    }
    let u = 1.0 + 2.0 * lambda_k;
    let t1 = 1.0 - (2.0 * lambda_k * lambda_k + (4.0 * lambda_k.powi(4) + u * u).sqrt()) / (u * u);
    let t2 = (1.0 - t1) * u * u / (1.0 + (1.0 - t1) * u * u);
    let lambda_next = recovery_map(lambda_k);
    debug_assert!(lambda_next > 0.0 && lambda_next < lambda_k);
    Ok(RecoveryRound {
        t1_recovery: t1,
        t2_recovery: t2,
        lambda_next,
    })
}

/// Cumulative success probabilities P⁽¹⁾ ≥ P⁽²⁾ ≥ … of K identification
/// rounds with reference recovery in between:
/// P⁽ᵏ⁾ = P⁽ᵏ⁻¹⁾ (1 − e^{−(λₖ/(1+2λₖ))|Δ|²}), λ₁ = 1.
pub fn multi_round_success(rounds: usize, alpha1: C64, alpha2: C64) -> Result<Vec<f64>> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("need at least one round".into()));
    }
    let delta = (alpha1 - alpha2).norm_sqr();
    let mut lambda = 1.0f64;
    let mut cumulative = 1.0f64;
    let mut out = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        cumulative *= 1.0 - (-lambda / (1.0 + 2.0 * lambda) * delta).exp();
        out.push(cumulative);
        lambda = recovery_map(lambda);
    }
    Ok(out)
}

/// Splitting strategy for N identifications:
/// P_S⁽ᴺ⁾ = (1 − e^{−|Δ|²/(N+2)})ᴺ.
pub fn splitting_strategy(n: usize, alpha1: C64, alpha2: C64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one round".into()));
    }
    let delta = (alpha1 - alpha2).norm_sqr();
    Ok((1.0 - (-delta / (n as f64 + 2.0)).exp()).powi(n as i32))
}

/// Gaussian chain integral
/// I_m = b/(b+2aσ²m) · e^{−a|x|²/(b+2maσ²)}
/// (m nested complex Gaussians of per-quadrature variance σ² displacing x).
pub fn gaussian_integral(m: usize, a: f64, b: f64, sigma: f64, x: C64) -> Result<f64> {
    if b <= 0.0 || a < 0.0 {
        return Err(Error::InvalidArgument(
            "need b > 0 and a >= 0 in the Gaussian chain".into(),
        ));
    }
    let denom = b + 2.0 * a * sigma * sigma * m as f64;
    Ok(b / denom * (-a * x.norm_sqr() / denom).exp())
}

/// The four conclusive-rate entries of the noisy identification setup
/// (technical noise of per-quadrature dispersion σ on every input).
#[derive(Debug, Clone, Copy)]
pub struct NoisyClickMatrix {
    pub e1_rho1: f64,
    pub e1_rho2: f64,
    pub e2_rho1: f64,
    pub e2_rho2: f64,
}

/// Closed-form conclusive rates Tr(Eᵢρⱼ) under technical noise (n_B = n_C
/// assumed by the closed forms; σ = 0 restores the no-error conditions).
pub fn noisy_click_matrix(
    n_a: usize,
    n_b: usize,
    n_c: usize,
    sigma: f64,
    alpha1: C64,
    alpha2: C64,
) -> Result<NoisyClickMatrix> {
    if sigma < 0.0 {
        return Err(Error::InvalidArgument("noise dispersion must be >= 0".into()));
    }
    let (na, nb, nc) = (n_a as f64, n_b as f64, n_c as f64);
    let s2 = 1.0 + 2.0 * sigma * sigma;
    let delta = (alpha1 - alpha2).norm_sqr();
    let rate_b = na * nb / (na + 2.0 * nb);
    let rate_c = na * nc / (na + 2.0 * nc);
    let exp_b = (-rate_b * delta / s2).exp();
    let exp_c = (-rate_c * delta / s2).exp();
    Ok(NoisyClickMatrix {
        e1_rho1: (s2 - exp_c) / (s2 * s2),
        e1_rho2: 2.0 * sigma * sigma / (s2 * s2) * exp_b,
        e2_rho1: 2.0 * sigma * sigma / (s2 * s2) * exp_c,
        e2_rho2: (s2 - exp_b) / (s2 * s2),
    })
}

/// Reliability of a conclusive outcome in the phase-keying scenario:
/// R = (1+θ)/(1+2θ) with θ = ((n_A+2n_B)/(n_A n_B)) (σ/2ξ)².
pub fn reliability(n_a: usize, n_b: usize, sigma: f64, xi: f64) -> Result<f64> {
    if xi <= 0.0 {
        return Err(Error::InvalidArgument(
            "signal dispersion xi must be positive".into(),
        ));
    }
    let (na, nb) = (n_a as f64, n_b as f64);
    let theta = (na + 2.0 * nb) / (na * nb) * (sigma / (2.0 * xi)).powi(2);
    Ok((1.0 + theta) / (1.0 + 2.0 * theta))
}

/// Averaged success, error and failure probabilities of the noisy
/// phase-keying identification; the three sum to one exactly.
pub fn noisy_averages(n_a: usize, n_b: usize, sigma: f64, xi: f64) -> Result<(f64, f64, f64)> {
    if xi <= 0.0 {
        return Err(Error::InvalidArgument(
            "signal dispersion xi must be positive".into(),
        ));
    }
    let (na, nb) = (n_a as f64, n_b as f64);
    let s2 = 1.0 + 2.0 * sigma * sigma;
    let k = 8.0 * na * nb / (na + 2.0 * nb) * xi * xi;
    let p = (1.0 - 1.0 / (s2 + k)) / s2;
    let pe = 2.0 * sigma * sigma / (s2 * (s2 + k));
    let pf = 2.0 * sigma * sigma / s2 + (1.0 - 2.0 * sigma * sigma) / (s2 * (s2 + k));
    Ok((p, pe, pf))
}

/// Detector-efficiency curves of the single-copy setup with first
/// transmittivity T₀ and detector efficiency Γ:
/// p₁ = 1 − e^{−Γ(1−T₀)/(2−T₀)|Δ|²}, p₂ = 1 − e^{−ΓT₀/(1+T₀)|Δ|²}.
pub fn detector_curves(t0: f64, gamma: f64, alpha1: C64, alpha2: C64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidArgument("efficiency outside [0, 1]".into()));
    }
    if !(0.0..=1.0).contains(&t0) {
        return Err(Error::InvalidArgument("transmittivity outside [0, 1]".into()));
    }
    let delta = (alpha1 - alpha2).norm_sqr();
    let p1 = 1.0 - (-gamma * (1.0 - t0) / (2.0 - t0) * delta).exp();
    let p2 = 1.0 - (-gamma * t0 / (1.0 + t0) * delta).exp();
    Ok((p1, p2))
}

/// Constrained optimum of the general linear-optics identification bound:
/// maximize ½Σᵢ(1−e^{−|λᵢ|²|Δ|²}) subject to the unitarity constraint
/// linking |λ₂|² to |λ₁|². Returns (|λ₁|², |λ₂|², P); the optimum sits at
/// |λ₁|² = |λ₂|² = n_A n_B/(n_A+2n_B) for every |Δ|.
pub fn linear_optics_optimum(n_a: usize, n_b: usize, delta_abs: f64) -> (f64, f64, f64) {
    let (na, nb) = (n_a as f64, n_b as f64);
    let d2 = delta_abs * delta_abs;
    let lambda2_sq = |l1: f64| -> f64 {
        (na * nb - (na + nb) * l1) / (na + nb - (2.0 + na / nb) * l1)
    };
    let objective = |l1: f64| -> f64 {
        let l2 = lambda2_sq(l1);
        if l2 < 0.0 {
            return f64::NEG_INFINITY;
        }
        0.5 * (1.0 - (-l1 * d2).exp()) + 0.5 * (1.0 - (-l2 * d2).exp())
    };
    // the constraint keeps |λ1|² within [0, n_A n_B/(n_A+n_B)]
    let hi = na * nb / (na + nb);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, hi);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    for _ in 0..200 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = objective(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = objective(x1);
        }
    }
    let l1 = 0.5 * (a + b);
    (l1, lambda2_sq(l1), objective(l1))
}

/// Per-pair probabilities of the three identification strategies at equal
/// priors, as functions of |α₁−α₂|: swap-based, optimal universal, and the
/// coherent-specialized beamsplitter setup.
pub fn strategy_probabilities(delta_abs: f64) -> (f64, f64, f64) {
    let x = (-delta_abs * delta_abs).exp();
    let p_sb = 0.25 * (1.0 - x);
    let p_opt = (1.0 - x) / 3.0;
    let p_bs = 1.0 - (-delta_abs * delta_abs / 3.0).exp();
    (p_sb, p_opt, p_bs)
}
