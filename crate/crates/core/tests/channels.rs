//! Integration tests for process-POVM channel testing: Choi operators,
//! completely bounded process fidelity, unitary discrimination and the
//! optimal unitary comparator.

use uqm_core::channels::{
    average_channel, bell_vector, cb_fidelity_unitaries, channel_fidelity_bound, choi_of_kraus,
    choi_of_unitary, comparator_average_success, comparator_conditional, comparator_ppovm,
    comparator_requirements, omega_twirl, twirl, unitary_usd, usd_feasible, validate_ppovm,
    ChoiOperator, Ppovm,
};
use uqm_core::linalg::{c, cr, identity, inner, projector, trace_re, CMatrix, CVector};
use uqm_core::operator::{
    antisymmetric_projector, intersect_projectors, kernel_projector, support_projector,
    symmetric_projector, HermitianOperator,
};
use uqm_core::oracle::min_modulus_over_simplex;
use uqm_core::rng::{haar_state, haar_unitary};
use uqm_core::RandomStream;

fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)])
}

fn diag_unitary(phases: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(
        phases.len(),
        phases.iter().map(|&t| c(t.cos(), t.sin())),
    ))
}

#[test]
fn choi_of_identity_and_pauli() {
    let omega_i = choi_of_unitary(&identity(2)).unwrap();
    let bell = bell_vector(2);
    assert!((&omega_i.omega - &bell * bell.adjoint()).norm() < 1e-13);
    assert!((omega_i.trace() - 2.0).abs() < 1e-12);
    assert_eq!(omega_i.support().unwrap().rank(), 1);

    // Pauli X against the four-index oracle ω = Σ_{jk} |j><k| ⊗ X|j><k|X
    let omega_x = choi_of_unitary(&pauli_x()).unwrap();
    let x = pauli_x();
    let mut oracle = CMatrix::zeros(4, 4);
    for j in 0..2 {
        for k in 0..2 {
            let mut ejk = CMatrix::zeros(2, 2);
            ejk[(j, k)] = cr(1.0);
            oracle += ejk.kronecker(&(&x * &ejk * &x));
        }
    }
    assert!((&omega_x.omega - oracle).norm() < 1e-13);

    // non-unitary input is rejected
    assert!(choi_of_unitary(&(identity(2) * cr(2.0))).is_err());
}

#[test]
fn ppovm_validation_cases() {
    let mut rs = RandomStream::new(61);
    let xi = {
        let v = haar_state(2, &mut rs);
        let w = haar_state(2, &mut rs);
        projector(&v) * cr(0.6) + projector(&w) * cr(0.4)
    };
    let half = xi.transpose().kronecker(&identity(2)) * cr(0.5);
    let p = Ppovm {
        d: 2,
        elements: vec![
            HermitianOperator::new(half.clone(), 1e-9).unwrap(),
            HermitianOperator::new(half, 1e-9).unwrap(),
        ],
        xi: xi.clone(),
    };
    let report = validate_ppovm(&p);
    assert!(report.is_valid());
    assert!((report.recovered_xi - &xi).norm() < 1e-10);

    // maximally entangled probe: elements F_j / D for any POVM {F_j}
    let u = haar_unitary(4, &mut rs);
    let elements: Vec<HermitianOperator> = (0..4)
        .map(|i| {
            let col = u.column(i).into_owned();
            HermitianOperator::new(projector(&col) / cr(2.0), 1e-9).unwrap()
        })
        .collect();
    let p = Ppovm {
        d: 2,
        elements,
        xi: identity(2) * cr(0.5),
    };
    assert!(validate_ppovm(&p).is_valid());

    // a negative element is flagged
    let p = Ppovm {
        d: 2,
        elements: vec![
            HermitianOperator::new(identity(4), 1e-9).unwrap(),
            HermitianOperator::new(-identity(4) * cr(0.5), 1e-9).unwrap(),
        ],
        xi: identity(2) * cr(0.5),
    };
    let report = validate_ppovm(&p);
    assert!(!report.is_valid());
    assert!(report.min_eigenvalues[1] < -0.4);
}

#[test]
fn feasibility_by_support_comparison() {
    let mut rs = RandomStream::new(67);
    let u = haar_unitary(3, &mut rs);
    let v = haar_unitary(3, &mut rs);
    let omega_u = choi_of_unitary(&u).unwrap();
    let omega_v = choi_of_unitary(&v).unwrap();
    assert!(usd_feasible(&omega_u, &omega_v).unwrap());
    assert!(!usd_feasible(&omega_u, &omega_u).unwrap());

    // depolarizing vs identity: feasible for any noise below 1
    for &p in &[0.1, 0.5, 0.9] {
        let d = 2;
        let omega_dep = ChoiOperator::new(
            d,
            choi_of_unitary(&identity(d)).unwrap().omega * cr(1.0 - p)
                + identity(d * d) * cr(p / d as f64),
        )
        .unwrap();
        let omega_id = choi_of_unitary(&identity(d)).unwrap();
        assert!(usd_feasible(&omega_dep, &omega_id).unwrap(), "p = {p}");
    }
}

#[test]
fn cb_fidelity_qubits_is_half_trace() {
    let mut rs = RandomStream::new(71);
    for _ in 0..200 {
        let u = haar_unitary(2, &mut rs);
        let v = haar_unitary(2, &mut rs);
        let fid = cb_fidelity_unitaries(&u, &v).unwrap();
        let expect = 0.5 * (u.adjoint() * &v).diagonal().sum().norm();
        assert!((fid.value - expect).abs() < 1e-12);
        // the returned xi attains the minimum
        let attained = ((&fid.xi * u.adjoint() * &v).diagonal().sum()).norm();
        assert!((attained - fid.value).abs() < 1e-10);
    }
    // identical channels: F = 1
    let u = haar_unitary(2, &mut rs);
    assert!((cb_fidelity_unitaries(&u, &u).unwrap().value - 1.0).abs() < 1e-12);
}

#[test]
fn cb_fidelity_hull_cases_and_oracle() {
    // phases {0, π/2, π}: the antipodal pair puts the origin in the hull
    let u = identity(3);
    let v = diag_unitary(&[0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI]);
    let fid = cb_fidelity_unitaries(&u, &v).unwrap();
    assert_eq!(fid.value, 0.0);
    let attained = ((&fid.xi * u.adjoint() * &v).diagonal().sum()).norm();
    assert!(attained < 1e-10);

    // random pairs in d = 3, 4 against the geometric oracle
    let mut rs = RandomStream::new(73);
    for d in [3usize, 4] {
        for _ in 0..50 {
            let u = haar_unitary(d, &mut rs);
            let v = haar_unitary(d, &mut rs);
            let fid = cb_fidelity_unitaries(&u, &v).unwrap();
            let oracle = min_modulus_over_simplex(&fid.phases);
            assert!(
                (fid.value - oracle).abs() < 1e-9,
                "d={d}: {} vs oracle {oracle}",
                fid.value
            );
            let attained = ((&fid.xi * u.adjoint() * &v).diagonal().sum()).norm();
            assert!((attained - fid.value).abs() < 1e-9);
        }
    }
}

#[test]
fn unitary_usd_branches_and_test_state_scan() {
    // perfectly discriminable pair
    let u = identity(2);
    let v = diag_unitary(&[0.0, std::f64::consts::PI]); // F = 0
    let sol = unitary_usd(&u, &v, 0.5, 0.5).unwrap();
    assert!((sol.p_success - 1.0).abs() < 1e-12);

    // equal priors, qubit: P = 1 - F
    let mut rs = RandomStream::new(79);
    for _ in 0..20 {
        let u = haar_unitary(2, &mut rs);
        let v = haar_unitary(2, &mut rs);
        let f = cb_fidelity_unitaries(&u, &v).unwrap().value;
        let sol = unitary_usd(&u, &v, 0.5, 0.5).unwrap();
        assert!((sol.p_success - (1.0 - f)).abs() < 1e-10);
        assert!(validate_ppovm(&sol.ppovm().unwrap()).is_valid());
        // no-error on the constructed effects
        let phi_u = (identity(2).kronecker(&u)) * &sol.test_state;
        let phi_v = (identity(2).kronecker(&v)) * &sol.test_state;
        assert!(inner(&phi_v, &(sol.effects[0].matrix() * &phi_v)).re.abs() < 1e-10);
        assert!(inner(&phi_u, &(sol.effects[1].matrix() * &phi_u)).re.abs() < 1e-10);
    }

    // unbalanced-prior branch: eta = 0.9, F = 1/2 -> 0.9 · 3/4
    let v = diag_unitary(&[std::f64::consts::FRAC_PI_3, -std::f64::consts::FRAC_PI_3]);
    let fid = cb_fidelity_unitaries(&identity(2), &v).unwrap();
    assert!((fid.value - 0.5).abs() < 1e-12);
    let sol = unitary_usd(&identity(2), &v, 0.9, 0.1).unwrap();
    assert!((sol.p_success - 0.675).abs() < 1e-12);

    // oracle: scan pure test states built from diagonal weights over the
    // eigenbasis of U†V and solve the induced pure-state discrimination
    let mut best = 0.0f64;
    for i in 0..=2000 {
        let w = i as f64 / 2000.0;
        let overlap = (w * (std::f64::consts::FRAC_PI_3).cos()
            + (1.0 - w) * (-std::f64::consts::FRAC_PI_3).cos())
        .hypot(
            w * (std::f64::consts::FRAC_PI_3).sin()
                + (1.0 - w) * (-std::f64::consts::FRAC_PI_3).sin(),
        );
        let (eta_a, eta_b) = (0.9, 0.1);
        let p = if overlap <= (eta_b / eta_a as f64).sqrt() {
            1.0 - 2.0 * (eta_a * eta_b).sqrt() * overlap
        } else {
            eta_a * (1.0 - overlap * overlap)
        };
        best = best.max(p);
    }
    assert!((best - sol.p_success).abs() < 1e-6);
}

#[test]
fn channel_bound_matches_unitary_fidelity() {
    let mut rs = RandomStream::new(83);
    for d in [2usize, 3] {
        for _ in 0..3 {
            let u = haar_unitary(d, &mut rs);
            let v = haar_unitary(d, &mut rs);
            let f = cb_fidelity_unitaries(&u, &v).unwrap().value;
            let eta1 = 0.4;
            let bound = channel_fidelity_bound(
                &choi_of_unitary(&u).unwrap(),
                &choi_of_unitary(&v).unwrap(),
                eta1,
                &mut rs,
            )
            .unwrap();
            let expect = 1.0 - 2.0 * (eta1 * 0.6f64).sqrt() * f;
            assert!(
                (bound - expect).abs() < 1e-6,
                "d={d}: bound {bound} vs {expect}"
            );
        }
    }

    // identical channels at equal priors: bound falls to zero
    let u = haar_unitary(2, &mut rs);
    let omega = choi_of_unitary(&u).unwrap();
    let bound = channel_fidelity_bound(&omega, &omega, 0.5, &mut rs).unwrap();
    assert!(bound.abs() < 1e-9);
}

#[test]
fn channel_bound_dominates_sampled_strategies() {
    // random dilated qubit channels; probe states + kernel-projector USD
    // measurements never beat the bound
    let mut rs = RandomStream::new(89);
    let d = 2;
    for _ in 0..5 {
        let big = haar_unitary(d * 2, &mut rs);
        let kraus = |u: &CMatrix| -> Vec<CMatrix> {
            // K_i = <i|_env U |0>_env with env second factor
            (0..2)
                .map(|i| CMatrix::from_fn(d, d, |r, c_| u[(r * 2 + i, c_ * 2)]))
                .collect()
        };
        let big2 = haar_unitary(d * 2, &mut rs);
        let omega1 = choi_of_kraus(d, &kraus(&big)).unwrap();
        let omega2 = choi_of_kraus(d, &kraus(&big2)).unwrap();
        let eta1 = 0.5;
        let bound = channel_fidelity_bound(&omega1, &omega2, eta1, &mut rs).unwrap();

        for _ in 0..10 {
            let probe = haar_state(d * d, &mut rs);
            // output states (I ⊗ E)[probe] from the Choi operators:
            // tr_in[(probe^{T_in} ⊗ I) (omega)] realized entrywise
            let out = |omega: &CMatrix| -> CMatrix {
                let mut rho = CMatrix::zeros(d * d, d * d);
                // probe = Σ c_{jm}|jm>; output = Σ c c* |j><k|_anc ⊗ E[|m><n|]
                for j in 0..d {
                    for m in 0..d {
                        for k in 0..d {
                            for n in 0..d {
                                let coeff = probe[j * d + m] * probe[k * d + n].conj();
                                // E[|m><n|] block of the Choi operator
                                for r in 0..d {
                                    for s in 0..d {
                                        rho[(j * d + r, k * d + s)] +=
                                            coeff * omega[(m * d + r, n * d + s)];
                                    }
                                }
                            }
                        }
                    }
                }
                rho
            };
            let rho1 = HermitianOperator::new(out(&omega1.omega), 1e-8).unwrap();
            let rho2 = HermitianOperator::new(out(&omega2.omega), 1e-8).unwrap();
            let s1 = support_projector(&rho1, 1e-9).unwrap();
            let s2 = support_projector(&rho2, 1e-9).unwrap();
            let k1 = kernel_projector(&rho1, 1e-9).unwrap();
            let k2 = kernel_projector(&rho2, 1e-9).unwrap();
            let e1 = intersect_projectors(k2.matrix(), s1.matrix());
            let e2 = intersect_projectors(k1.matrix(), s2.matrix());
            let success = eta1 * trace_re(&(&e1 * rho1.matrix()))
                + (1.0 - eta1) * trace_re(&(&e2 * rho2.matrix()));
            assert!(success <= bound + 1e-7, "strategy beats the bound");
        }
    }
}

#[test]
fn twirl_closed_form_cases() {
    for d in [2usize, 3] {
        let n = d * d;
        // twirl fixes the identity and the swap
        let id_out = twirl(&identity(n), d).unwrap();
        assert!((id_out - identity(n)).norm() < 1e-12);
        let swap = symmetric_projector(d, 2, &[0, 1], 2).unwrap().matrix()
            - antisymmetric_projector(d, 2, &[0, 1], 2).unwrap().operator.matrix();
        let swap_out = twirl(&swap, d).unwrap();
        assert!((swap_out - swap).norm() < 1e-12);

        // Haar Monte Carlo spot check on a random operator
        let mut rs = RandomStream::new(97 + d as u64);
        let y = {
            let g = CMatrix::from_fn(n, n, |_, _| rs.complex_normal());
            &g + g.adjoint()
        };
        let closed = twirl(&y, d).unwrap();
        let mut acc = CMatrix::zeros(n, n);
        let samples = 20_000;
        for _ in 0..samples {
            let u = haar_unitary(d, &mut rs);
            let uu = u.kronecker(&u);
            acc += &uu * &y * uu.adjoint();
        }
        acc /= cr(samples as f64);
        // Frobenius deviation scales like ||Y|| · n / sqrt(samples)
        let tol = 3.0 * y.norm() * n as f64 / (samples as f64).sqrt();
        assert!((acc - closed).norm() < tol, "d = {d}");
    }
}

#[test]
fn average_channel_closed_form() {
    let mut rs = RandomStream::new(101);
    let x = {
        let g = CMatrix::from_fn(3, 3, |_, _| rs.complex_normal());
        g
    };
    let avg = average_channel(&x, 3);
    let expect = identity(3) * (x.diagonal().sum() / cr(3.0));
    assert!((avg - expect).norm() < 1e-13);
}

#[test]
fn omega_twirl_structure() {
    // (I ⊗ T)[Ψ⁺] built entry by entry from the twirl action must equal
    // the closed P⊗P form
    for d in [2usize, 3] {
        let n = d * d;
        let closed = omega_twirl(d).unwrap();
        let mut direct = CMatrix::zeros(n * n, n * n);
        for j in 0..n {
            for k in 0..n {
                let mut ejk = CMatrix::zeros(n, n);
                ejk[(j, k)] = cr(1.0);
                let twirled = twirl(&ejk, d).unwrap();
                // |j><k| ⊗ T[|j><k|]
                for r in 0..n {
                    for s in 0..n {
                        direct[(j * n + r, k * n + s)] += twirled[(r, s)];
                    }
                }
            }
        }
        assert!((direct - closed).norm() < 1e-10, "d = {d}");
    }
}

#[test]
fn comparator_construction_and_values() {
    let mut rs = RandomStream::new(103);
    // d = 2 singlet test state: average success 3/4
    let singlet = CVector::from_vec(vec![cr(0.0), cr(1.0), cr(-1.0), cr(0.0)]) / cr(2f64.sqrt());
    let rho = HermitianOperator::new(projector(&singlet), 1e-9).unwrap();
    let ppovm = comparator_ppovm(2, &rho).unwrap();
    assert!(validate_ppovm(&ppovm).is_valid());
    let avg = trace_re(ppovm.elements[0].matrix()) / 4.0;
    assert!((avg - 0.75).abs() < 1e-12);
    assert!((comparator_average_success(2) - 0.75).abs() < 1e-15);

    // conditional no-error for U = V, and certainty for I vs X on the singlet
    for _ in 0..20 {
        let u = haar_unitary(2, &mut rs);
        assert!(comparator_conditional(&u, &u, &rho).unwrap().abs() < 1e-12);
    }
    let p = comparator_conditional(&identity(2), &pauli_x(), &rho).unwrap();
    assert!((p - 1.0).abs() < 1e-12);

    // symmetric test states are rejected
    let sym_state = CVector::from_vec(vec![cr(1.0), cr(0.0), cr(0.0), cr(0.0)]);
    let sym_rho = HermitianOperator::new(projector(&sym_state), 1e-9).unwrap();
    assert!(comparator_ppovm(2, &sym_rho).is_err());

    // requirements validator: a nonzero M_same is rejected
    let m_same = HermitianOperator::new(identity(16) * cr(0.01), 1e-9).unwrap();
    let m_diff = ppovm.elements[0].clone();
    let req = comparator_requirements(2, &m_same, &m_diff).unwrap();
    assert!(!req.acceptable());
    assert!(req.same_trace > 0.1);
    let req = comparator_requirements(
        2,
        &HermitianOperator::zero(16),
        &m_diff,
    )
    .unwrap();
    assert!(req.acceptable());
}

#[test]
fn maximally_entangled_probe_is_universal_for_qubits() {
    // the ξ = I/2 strategy attains the optimal qubit value on Haar pairs
    let mut rs = RandomStream::new(727);
    for _ in 0..100 {
        let u = haar_unitary(2, &mut rs);
        let v = haar_unitary(2, &mut rs);
        let eta_u = 0.3 + 0.4 * rs.uniform();
        let sol = unitary_usd(&u, &v, eta_u, 1.0 - eta_u).unwrap();

        // maximally entangled test state: overlap is ½|Tr(U†V)| = F
        let probe = bell_vector(2) / cr(2f64.sqrt());
        let phi_u = (identity(2).kronecker(&u)) * &probe;
        let phi_v = (identity(2).kronecker(&v)) * &probe;
        let overlap = inner(&phi_u, &phi_v).norm();
        let (eta_a, eta_b) = if eta_u >= 0.5 {
            (eta_u, 1.0 - eta_u)
        } else {
            (1.0 - eta_u, eta_u)
        };
        let probe_value = if overlap <= (eta_b / eta_a).sqrt() {
            1.0 - 2.0 * (eta_a * eta_b).sqrt() * overlap
        } else {
            eta_a * (1.0 - overlap * overlap)
        };
        assert!(
            (probe_value - sol.p_success).abs() < 1e-8,
            "probe {probe_value} vs optimal {}",
            sol.p_success
        );
    }
}

#[test]
fn theorem4_bound_on_sampled_comparator_strategies() {
    // random valid comparator strategies (positive operators in the sector
    // allowed by the no-error conditions, clipped to the normalization)
    // never beat (d+1)/(2d)
    let mut rs = RandomStream::new(733);
    for d in [2usize, 3] {
        let bound = comparator_average_success(d);
        let asym = antisymmetric_projector(d, 2, &[0, 1], 2).unwrap().operator;
        let sym = symmetric_projector(d, 2, &[0, 1], 2).unwrap();
        let d_asym = d * (d - 1) / 2;
        for _ in 0..50 {
            // random antisymmetric test state
            let mut xi = CMatrix::zeros(d * d, d * d);
            for _ in 0..d_asym {
                let raw = CVector::from_fn(d * d, |_, _| rs.complex_normal());
                let v = asym.matrix() * raw;
                let n = v.norm();
                if n > 1e-9 {
                    xi += projector(&(v / cr(n))) * cr(rs.uniform() + 0.01);
                }
            }
            let tr = trace_re(&xi);
            xi /= cr(tr);
            // random conclusive element below ξᵀ ⊗ P^sym: a scaled version
            let scale = rs.uniform();
            let m_diff = xi.transpose().kronecker(sym.matrix()) * cr(scale);
            let avg = trace_re(&m_diff) / (d * d) as f64;
            assert!(avg <= bound + 1e-12, "d={d}: sampled {avg} beats {bound}");
        }
    }
}

#[test]
fn comparator_symmetric_strategy_is_suboptimal() {
    // symmetric test state with exchanged outcome roles succeeds with
    // (d-1)/(2d) < (d+1)/(2d)
    for d in [2usize, 3] {
        let asym = antisymmetric_projector(d, 2, &[0, 1], 2).unwrap().operator;
        let avg_sym_strategy = trace_re(asym.matrix()) / (d * d) as f64;
        assert!((avg_sym_strategy - (d as f64 - 1.0) / (2.0 * d as f64)).abs() < 1e-12);
        assert!(avg_sym_strategy < comparator_average_success(d));
    }
}

#[test]
fn comparator_uniqueness_perturbations_break_positivity() {
    // adding any traceless H supported across antisym ⊗ sym sectors to
    // M_diff forces M_0 = ξᵀ⊗P^asym − H to lose positivity
    let d = 2;
    let singlet = CVector::from_vec(vec![cr(0.0), cr(1.0), cr(-1.0), cr(0.0)]) / cr(2f64.sqrt());
    let rho = HermitianOperator::new(projector(&singlet), 1e-9).unwrap();
    let ppovm = comparator_ppovm(d, &rho).unwrap();
    let m0 = ppovm.elements[1].clone();

    // basis vectors: antisymmetric a1, symmetric s1 != s2 (two qudits)
    let a1 = singlet.clone();
    let s1 = CVector::from_vec(vec![cr(1.0), cr(0.0), cr(0.0), cr(0.0)]);
    let s2 = CVector::from_vec(vec![cr(0.0), cr(0.0), cr(0.0), cr(1.0)]);
    for &eps in &[1e-3, 1e-2, 0.1] {
        let v1 = a1.kronecker(&s1);
        let v2 = a1.kronecker(&s2);
        let h = (&v1 * v2.adjoint() + &v2 * v1.adjoint()) * cr(eps);
        assert!(trace_re(&h).abs() < 1e-12);
        let perturbed = m0.matrix() - &h;
        let min = uqm_core::linalg::min_eigenvalue(&perturbed);
        assert!(min < -eps * 0.9, "eps = {eps}: min eigenvalue {min}");
    }
}
