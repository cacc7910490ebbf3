//! Seeded randomness for the Haar and Monte Carlo oracles.
//!
//! Every randomized routine in the crate takes an explicit [`RandomStream`];
//! there is no hidden global state, so identical seeds reproduce identical
//! draw sequences bit for bit.

use crate::linalg::{c, cr, CMatrix, CVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Deterministic random stream: a seed plus a draw counter.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    counter: u64,
    rng: ChaCha12Rng,
    spare_normal: Option<f64>,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            counter: 0,
            rng: ChaCha12Rng::seed_from_u64(seed),
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of scalar draws made so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Child stream for sharding; distinct `index` values give independent
    /// streams.
    pub fn shard(&self, index: u64) -> Self {
        Self::new(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index))
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.counter += 1;
        self.rng.gen::<f64>()
    }

    /// Standard normal draw (Box-Muller).
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        // avoid log(0)
        let u1 = loop {
            let u = self.uniform();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let phi = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * phi.sin());
        r * phi.cos()
    }

    /// Complex Gaussian with independent N(0,1) real and imaginary parts.
    pub fn complex_normal(&mut self) -> C64 {
        c(self.normal(), self.normal())
    }

    /// Complex Gaussian with per-quadrature standard deviation `sigma`.
    pub fn complex_gaussian(&mut self, sigma: f64) -> C64 {
        self.complex_normal() * cr(sigma)
    }
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of the
/// R diagonal folded into Q.
pub fn haar_unitary(d: usize, rs: &mut RandomStream) -> CMatrix {
    assert!(d >= 1, "dimension must be positive");
    let g = CMatrix::from_fn(d, d, |_, _| rs.complex_normal());
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phases = CVector::from_iterator(
        d,
        (0..d).map(|i| {
            let z = r[(i, i)];
            if z.norm() == 0.0 {
                cr(1.0)
            } else {
                z / cr(z.norm())
            }
        }),
    );
    q * CMatrix::from_diagonal(&phases)
}

/// Haar-random pure state (normalized complex Gaussian vector).
pub fn haar_state(d: usize, rs: &mut RandomStream) -> CVector {
    let v = CVector::from_fn(d, |_, _| rs.complex_normal());
    let n = v.norm();
    v / cr(n)
}
