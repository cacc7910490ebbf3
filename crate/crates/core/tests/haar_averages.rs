//! Haar Monte Carlo oracles for the closed-form channel averages: the
//! depolarizing action of the average unitary channel and the twirling
//! channel, each at 1e5 samples with per-entry error bars.

use uqm_core::channels::{average_channel, twirl};
use uqm_core::linalg::{cr, hermitize, CMatrix};
use uqm_core::oracle::Accumulator;
use uqm_core::rng::haar_unitary;
use uqm_core::RandomStream;

#[test]
fn average_unitary_channel_is_depolarizing() {
    // E[U X U†] = Tr(X)/d · I at 1e5 samples, per-entry within 3.5 SE
    let mut rs = RandomStream::new(509);
    for d in [2usize, 3] {
        let x = CMatrix::from_fn(d, d, |_, _| rs.complex_normal());
        let closed = average_channel(&x, d);
        let mut acc = vec![Accumulator::new(); d * d * 2];
        for _ in 0..100_000 {
            let u = haar_unitary(d, &mut rs);
            let sample = &u * &x * u.adjoint();
            for r in 0..d {
                for c_ in 0..d {
                    acc[2 * (r * d + c_)].push(sample[(r, c_)].re);
                    acc[2 * (r * d + c_) + 1].push(sample[(r, c_)].im);
                }
            }
        }
        for r in 0..d {
            for c_ in 0..d {
                assert!(
                    acc[2 * (r * d + c_)].within(closed[(r, c_)].re, 3.5),
                    "d={d} entry ({r},{c_}) re"
                );
                assert!(
                    acc[2 * (r * d + c_) + 1].within(closed[(r, c_)].im, 3.5),
                    "d={d} entry ({r},{c_}) im"
                );
            }
        }
    }
}

#[test]
fn twirling_channel_matches_projector_form() {
    // E[(U⊗U) Y (U⊗U)†] against the symmetric/antisymmetric projector
    // combination at 1e5 samples
    let mut rs = RandomStream::new(521);
    let d = 2;
    let n = d * d;
    let y = hermitize(&CMatrix::from_fn(n, n, |_, _| rs.complex_normal()));
    let closed = twirl(&y, d).unwrap();
    let mut acc = vec![Accumulator::new(); n * n * 2];
    for _ in 0..100_000 {
        let u = haar_unitary(d, &mut rs);
        let uu = u.kronecker(&u);
        let sample = &uu * &y * uu.adjoint();
        for r in 0..n {
            for c_ in 0..n {
                acc[2 * (r * n + c_)].push(sample[(r, c_)].re);
                acc[2 * (r * n + c_) + 1].push(sample[(r, c_)].im);
            }
        }
    }
    for r in 0..n {
        for c_ in 0..n {
            assert!(
                acc[2 * (r * n + c_)].within(closed[(r, c_)].re, 3.5),
                "entry ({r},{c_}) re"
            );
            assert!(
                acc[2 * (r * n + c_) + 1].within(closed[(r, c_)].im, 3.5),
                "entry ({r},{c_}) im"
            );
        }
    }
    let _ = cr(0.0);
}
