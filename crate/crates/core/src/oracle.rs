//! Independent numeric reference routes: brute-force POVM optimization,
//! Gauss-Legendre quadrature, convex-hull membership by enumeration, and a
//! Welford accumulator for Monte Carlo error bars.
//!
//! Nothing here shares code with the closed forms it is used to check.

/// Streaming mean/variance accumulator (Welford).
#[derive(Debug, Clone, Default)]
pub struct Accumulator {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn se(&self) -> f64 {
        (self.variance() / self.n as f64).sqrt()
    }

    /// |mean − expected| ≤ k standard errors (with a small absolute floor
    /// for exactly-zero-variance cases).
    pub fn within(&self, expected: f64, k_sigma: f64) -> bool {
        (self.mean - expected).abs() <= k_sigma * self.se() + 1e-12
    }
}

/// Maximize w₁c₁ + w₂c₂ over the feasible part of the unit square, assumed
/// convex and downward closed (a POVM positivity region).
///
/// 200×200 grid scan followed by one golden-section refinement pass over c₁,
/// with the boundary value of c₂ found by bisection.
pub fn maximize_two_coefficients(
    feasible: impl Fn(f64, f64) -> bool,
    w1: f64,
    w2: f64,
) -> (f64, f64, f64) {
    const GRID: usize = 200;
    let mut best = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for i in 0..=GRID {
        let c1 = i as f64 / GRID as f64;
        for j in 0..=GRID {
            let c2 = j as f64 / GRID as f64;
            if feasible(c1, c2) {
                let v = w1 * c1 + w2 * c2;
                if v > best.2 {
                    best = (c1, c2, v);
                }
            }
        }
    }

    let max_c2 = |c1: f64| -> f64 {
        if !feasible(c1, 0.0) {
            return f64::NEG_INFINITY;
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        if feasible(c1, 1.0) {
            return 1.0;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if feasible(c1, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let objective = |c1: f64| -> f64 {
        let c2 = max_c2(c1);
        if c2.is_finite() {
            w1 * c1 + w2 * c2
        } else {
            f64::NEG_INFINITY
        }
    };

    // golden-section pass over c1; the boundary objective is concave
    // because the feasible region is convex, so the full interval works
    let mut a = 0.0f64;
    let mut b = 1.0f64;
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    for _ in 0..80 {
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
    let c1 = 0.5 * (a + b);
    let c2 = max_c2(c1);
    let v = w1 * c1 + w2 * c2;
    if v > best.2 {
        (c1, c2, v)
    } else {
        (best.0, best.1, best.2)
    }
}

/// Brute-force optimum of two-pure-state USD at overlap `lambda`, prior
/// `eta1`: E₁ = c₁|ψ₂⊥⟩⟨ψ₂⊥|, E₂ = c₂|ψ₁⊥⟩⟨ψ₁⊥| with (c₁,c₂) scanned over
/// the 2×2 positivity region of E₀.
pub fn idp_brute_force(lambda: f64, eta1: f64) -> f64 {
    let s2 = 1.0 - lambda * lambda;
    let s = s2.sqrt();
    // E0 in the {ψ1, ψ1⊥} basis as a real symmetric 2x2 matrix
    let feasible = move |c1: f64, c2: f64| -> bool {
        let a = 1.0 - c1 * s2;
        let d = 1.0 - c1 * lambda * lambda - c2;
        let b = c1 * s * lambda;
        a >= -1e-14 && d >= -1e-14 && a * d - b * b >= -1e-14
    };
    let (_, _, v) = maximize_two_coefficients(feasible, eta1 * s2, (1.0 - eta1) * s2);
    v
}

// ---------------------------------------------------------------------------
// quadrature

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Tensor-product Gauss-Legendre quadrature of f over
/// [cx−hx, cx+hx] × [cy−hy, cy+hy].
pub fn quadrature_2d(
    f: impl Fn(f64, f64) -> f64,
    cx: f64,
    cy: f64,
    hx: f64,
    hy: f64,
    n: usize,
) -> f64 {
    let nodes = gauss_legendre(n);
    let mut total = 0.0;
    for &(xi, wi) in &nodes {
        let x = cx + hx * xi;
        for &(yj, wj) in &nodes {
            let y = cy + hy * yj;
            total += wi * wj * f(x, y);
        }
    }
    total * hx * hy
}

/// The coherent-comparison failure integral
/// (k+l)/π ∫ d²β e^{−k|α₁−β|² − l|α₂−β|²}
/// evaluated by 2-D Gauss-Legendre quadrature over a box around the
/// weighted mean of the two amplitudes.
pub fn coherent_overlap_quadrature(
    k: usize,
    l: usize,
    alpha1: crate::C64,
    alpha2: crate::C64,
) -> f64 {
    let (kf, lf) = (k as f64, l as f64);
    let center = (alpha1 * crate::linalg::cr(kf) + alpha2 * crate::linalg::cr(lf))
        / crate::linalg::cr(kf + lf);
    let half = 9.0 / (kf + lf).sqrt();
    let f = |x: f64, y: f64| -> f64 {
        let b = crate::linalg::c(x, y);
        (-kf * (alpha1 - b).norm_sqr() - lf * (alpha2 - b).norm_sqr()).exp()
    };
    (kf + lf) / std::f64::consts::PI * quadrature_2d(f, center.re, center.im, half, half, 120)
}

// ---------------------------------------------------------------------------
// convex hull membership by enumeration

fn origin_on_segment(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
    let cross = a.0 * b.1 - a.1 * b.0;
    let dot = a.0 * b.0 + a.1 * b.1;
    cross.abs() <= tol && dot <= tol
}

fn origin_in_triangle(a: (f64, f64), b: (f64, f64), c: (f64, f64), tol: f64) -> bool {
    let sign = |p: (f64, f64), q: (f64, f64)| p.0 * q.1 - p.1 * q.0;
    let d1 = sign(a, b);
    let d2 = sign(b, c);
    let d3 = sign(c, a);
    let has_neg = d1 < -tol || d2 < -tol || d3 < -tol;
    let has_pos = d1 > tol || d2 > tol || d3 > tol;
    !(has_neg && has_pos)
}

/// Whether the origin lies in the convex hull of the given planar points,
/// decided by enumerating pairs and triples (Caratheodory).
pub fn origin_in_hull(points: &[(f64, f64)], tol: f64) -> bool {
    let n = points.len();
    for (i, &p) in points.iter().enumerate() {
        if p.0.hypot(p.1) <= tol {
            return true;
        }
        for &q in &points[i + 1..n] {
            if origin_on_segment(p, q, tol) {
                return true;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if origin_in_triangle(points[i], points[j], points[k], tol) {
                    return true;
                }
            }
        }
    }
    false
}

fn point_to_segment_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let ab = (b.0 - a.0, b.1 - a.1);
    let len2 = ab.0 * ab.0 + ab.1 * ab.1;
    if len2 == 0.0 {
        return a.0.hypot(a.1);
    }
    let t = (-(a.0 * ab.0 + a.1 * ab.1) / len2).clamp(0.0, 1.0);
    let px = a.0 + t * ab.0;
    let py = a.1 + t * ab.1;
    px.hypot(py)
}

/// Numeric minimum of |Σₖ wₖ e^{iθₖ}| over probability weights wₖ: the
/// distance from the origin to the convex hull of the unit-circle points,
/// by hull membership plus distance minimization over all edges.
pub fn min_modulus_over_simplex(phases: &[f64]) -> f64 {
    let points: Vec<(f64, f64)> = phases.iter().map(|&t| (t.cos(), t.sin())).collect();
    if origin_in_hull(&points, 1e-12) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for (i, &p) in points.iter().enumerate() {
        best = best.min(p.0.hypot(p.1));
        for &q in &points[i + 1..] {
            best = best.min(point_to_segment_distance(p, q));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn accumulator_matches_direct_formulas() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let mut acc = Accumulator::new();
        for &x in &xs {
            acc.push(x);
        }
        assert!((acc.mean() - 3.75).abs() < 1e-14);
        let var = xs.iter().map(|x| (x - 3.75f64).powi(2)).sum::<f64>() / 3.0;
        assert!((acc.variance() - var).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let nodes = gauss_legendre(8);
        // degree-15 polynomial must be exact
        let integral: f64 = nodes.iter().map(|&(x, w)| w * x.powi(14)).sum();
        assert!((integral - 2.0 / 15.0).abs() < 1e-13);
        let total_weight: f64 = nodes.iter().map(|&(_, w)| w).sum();
        assert!((total_weight - 2.0).abs() < 1e-13);
    }

    #[test]
    fn quadrature_handles_gaussian() {
        // ∫ e^{-|β|²} d²β = π
        let v = quadrature_2d(|x, y| (-(x * x + y * y)).exp(), 0.0, 0.0, 9.0, 9.0, 120);
        assert!((v - std::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn coherent_overlap_matches_closed_form() {
        let (k, l) = (2usize, 3usize);
        let a1 = c(0.4, -0.2);
        let a2 = c(-0.3, 0.9);
        let expect =
            (-((k * l) as f64) / (k + l) as f64 * (a1 - a2).norm_sqr()).exp();
        let got = coherent_overlap_quadrature(k, l, a1, a2);
        assert!((got - expect).abs() < 1e-10);
    }

    #[test]
    fn hull_membership_small_cases() {
        // antipodal pair contains the origin
        assert!(origin_in_hull(&[(1.0, 0.0), (-1.0, 0.0)], 1e-12));
        // a tight cluster does not
        assert!(!origin_in_hull(&[(1.0, 0.1), (1.0, -0.1), (0.9, 0.0)], 1e-12));
        // triangle around the origin does
        assert!(origin_in_hull(
            &[(1.0, 0.0), (-0.5, 0.8), (-0.5, -0.8)],
            1e-12
        ));
    }

    #[test]
    fn simplex_minimum_matches_geometry() {
        // two phases separated by 2φ: minimum modulus is |cos φ|
        let phi = 0.7f64;
        let m = min_modulus_over_simplex(&[phi, -phi]);
        assert!((m - phi.cos()).abs() < 1e-12);
        // origin inside hull
        let m = min_modulus_over_simplex(&[0.0, 2.2, -2.2]);
        assert_eq!(m, 0.0);
    }

    #[test]
    fn brute_force_reproduces_frozen_idp_values() {
        // middle regime, λ=1/2, η=1/2: P = 1 − λ = 1/2
        assert!((idp_brute_force(0.5, 0.5) - 0.5).abs() < 1e-6);
        // left regime: λ=1/2, η1=0.1 -> P = 0.9·0.75
        assert!((idp_brute_force(0.5, 0.1) - 0.675).abs() < 1e-6);
        // orthogonal states are perfectly discriminated
        assert!((idp_brute_force(0.0, 0.3) - 1.0).abs() < 1e-9);
    }
}
