//! Checks against independent reference computations written here from
//! first principles.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satclock_core::bellsim::{self, fidelity, make_input_state, parity_check_block, DensityMatrix};
use satclock_core::link::{delivery_confidence, TailMethod};
use satclock_core::model::PurificationSpec;
use satclock_core::purify::{fidelity_ladder, ladder_success};

type Complex64 = Complex<f64>;

/// P(X >= r) for X ~ Binomial(k, eta) by summing the mass function term by
/// term, using whichever side of the mean is shorter.
fn binomial_tail_by_summation(k: u64, eta: f64, r: u64) -> f64 {
    if r == 0 {
        return 1.0;
    }
    if r > k {
        return 0.0;
    }
    let ln_eta = eta.ln();
    let ln_q = (-eta).ln_1p();
    let mut ln_choose = vec![0.0f64; k as usize + 1];
    for i in 1..=k as usize {
        ln_choose[i] = ln_choose[i - 1] + ((k as usize - i + 1) as f64).ln() - (i as f64).ln();
    }
    let term = |i: u64| (ln_choose[i as usize] + i as f64 * ln_eta + (k - i) as f64 * ln_q).exp();
    if (r as f64) > k as f64 * eta {
        (r..=k).map(term).sum()
    } else {
        1.0 - (0..r).map(term).sum::<f64>()
    }
}

/// A purification tree of `rounds` levels. Every internal node is one block
/// taking its children's output pairs; leaves are raw pairs of fidelity `f0`.
/// Returns (output fidelity, probability that every block in the subtree
/// succeeds, number of blocks).
fn enumerate_tree(rounds: u32, f0: f64) -> (f64, f64, u64) {
    if rounds == 0 {
        return (f0, 1.0, 0);
    }
    let (fl, pl, nl) = enumerate_tree(rounds - 1, f0);
    let (fr, pr, nr) = enumerate_tree(rounds - 1, f0);
    // one block on the two child pairs
    let ok = fl * fr + (1.0 - fl) * (1.0 - fr);
    (fl * fr / ok, pl * pr * ok, nl + nr + 1)
}

#[test]
fn exact_tail_matches_direct_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3000 {
        let k = rng.random_range(1..=1000u64);
        let eta = rng.random_range(1e-4..1.0 - 1e-4);
        let r = rng.random_range(0..=k + 1);
        let got = delivery_confidence(k, eta, r, TailMethod::ExactBinomial).unwrap();
        let want = binomial_tail_by_summation(k, eta, r);
        assert!((got - want).abs() <= 1e-12, "k={k} eta={eta} r={r}: {got} vs {want}");
    }
}

#[test]
fn ladder_success_matches_tree_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = [false; 7];
    for _ in 0..2000 {
        let f0 = rng.random_range(0.51..0.99);
        let rounds = rng.random_range(1..=6u32);
        let (f_top, p_tree, blocks) = enumerate_tree(rounds, f0);
        assert_eq!(blocks, (1 << rounds) - 1);
        if f_top >= 1.0 {
            continue;
        }
        // target just below the tree's output fidelity, just above the
        // previous round's, so the planner stops after exactly `rounds`
        let (f_prev, _, _) = enumerate_tree(rounds - 1, f0);
        let target = 0.5 * (f_prev + f_top);
        if !(target > f_prev && target < f_top) {
            continue;
        }
        let spec = PurificationSpec::new(f0, target, 0.9).unwrap();
        let (n, ladder) = fidelity_ladder(&spec).unwrap();
        assert_eq!(n, rounds);
        let p = ladder_success(&ladder);
        assert!((p - p_tree).abs() <= 1e-12, "f0={f0} N={rounds}: {p} vs {p_tree}");
        seen[rounds as usize] = true;
    }
    assert!(seen[1..].iter().all(|&s| s));
}

#[test]
fn parity_block_reproduces_recurrence() {
    for i in 0..=44 {
        let f = 0.55 + 0.01 * f64::from(i);
        let input = make_input_state(f).unwrap();
        let out = parity_check_block(&input, &input).unwrap();
        let ok = f * f + (1.0 - f) * (1.0 - f);
        assert!((out.success_probability - ok).abs() <= 1e-12);
        assert!((out.output.fidelity() - f * f / ok).abs() <= 1e-12);
    }
}

fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m / tr).unwrap()
}

fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    g.qr().q()
}

#[test]
fn fidelity_symmetry_and_local_unitary_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let rho = random_state(&mut rng, 4);
        let sigma = random_state(&mut rng, 4);
        let f = fidelity(&rho, &sigma).unwrap();
        assert!((f - fidelity(&sigma, &rho).unwrap()).abs() < 1e-10);
        assert!((0.0..=1.0 + 1e-10).contains(&f));

        let local = random_unitary(&mut rng, 2).kronecker(&random_unitary(&mut rng, 2));
        let g = fidelity(&rho.conjugate(&local).unwrap(), &sigma.conjugate(&local).unwrap()).unwrap();
        assert!((f - g).abs() < 1e-10, "{f} vs {g}");
    }
}

#[test]
fn fidelity_with_pure_state_is_overlap() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let rho = random_state(&mut rng, 4);
        let psi = DVector::from_fn(4, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let psi = psi.normalize();
        let pure = DensityMatrix::pure(&psi).unwrap();
        let overlap = (psi.adjoint() * rho.matrix() * &psi)[(0, 0)].re;
        let f = fidelity(&rho, &pure).unwrap();
        assert!((f - overlap).abs() < 1e-10, "{f} vs {overlap}");
    }
}

#[test]
fn general_bell_diagonal_blocks_stay_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let mut w = [0.0; 4];
        for x in &mut w {
            *x = rng.random_range(0.0..1.0);
        }
        let total: f64 = w.iter().sum();
        let a = bellsim::BellDiagonal::new(w.map(|x| x / total)).unwrap();
        let out = parity_check_block(&a, &a).unwrap();
        assert!(out.success_probability > 0.0 && out.success_probability <= 1.0 + 1e-12);
        let c = out.output.coefficients();
        assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
