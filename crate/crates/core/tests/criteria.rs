mod common;

use freeparticle::algebra::{RationalFunction, VariableId, Q};
use freeparticle::criteria::{
    check, check_with, family_residuals, fels_tensors, lie_residuals_m1, linear_check, probe_residual, CheckOptions,
    LinearSystemData, ProbeOutcome, Residuals, Verdict,
};
use freeparticle::decomposition::{extract_decomposition, reassemble, CubicDecomposition, DiagnosticKind};
use freeparticle::jets::{induced_system, OdeSystem};
use freeparticle::Error;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{corpus, int, point_vars, random_poly, rng, x, y, yx};

fn sys(rhs: Vec<RationalFunction>) -> OdeSystem {
    OdeSystem::new(rhs).unwrap()
}

#[test]
fn family_examples() {
    let r = family_residuals(&CubicDecomposition::zero(2)).unwrap();
    assert!(r.linearizable());

    let mut d = CubicDecomposition::zero(2);
    d.set_mm(2, 2, int(1));
    assert!(family_residuals(&d).unwrap().linearizable());

    let mut d = CubicDecomposition::zero(2);
    d.set_g(1, y(1));
    let r = family_residuals(&d).unwrap();
    assert_eq!(r.verdict(), Verdict::Obstructed);
    let Residuals::Families { i, .. } = &r.residuals else { panic!("m = 2 uses the families") };
    let e = i.iter().find(|e| e.index == [1, 1, 2]).unwrap();
    assert_eq!(e.value, int(-2));

    assert!(matches!(family_residuals(&CubicDecomposition::zero(1)), Err(Error::WrongArity { .. })));
}

#[test]
fn lie_examples() {
    assert!(lie_residuals_m1(&CubicDecomposition::zero(1)).unwrap().linearizable());

    let mut d = CubicDecomposition::zero(1);
    d.set_l(1, 1, 1, int(-2) * (int(1) - y(1)).inverse().unwrap());
    assert!(lie_residuals_m1(&d).unwrap().linearizable());

    let mut d = CubicDecomposition::zero(1);
    d.set_g(1, y(1) * y(1));
    let r = lie_residuals_m1(&d).unwrap();
    assert_eq!(r.verdict(), Verdict::Obstructed);
    let Residuals::Lie { lie1, .. } = &r.residuals else { panic!("m = 1 uses the Lie pair") };
    assert_eq!(lie1, &int(-4));

    assert!(matches!(lie_residuals_m1(&CubicDecomposition::zero(2)), Err(Error::WrongArity { .. })));
}

#[test]
fn structure_examples() {
    for m in 1..=4 {
        assert!(check(&OdeSystem::flat(m)).unwrap().linearizable());
    }
    let f = int(-2) * yx(1) * yx(1) * (int(1) - y(1)).inverse().unwrap();
    assert!(check(&sys(vec![f])).unwrap().linearizable());

    let diag = check(&sys(vec![yx(1).pow(4).unwrap(), int(0)])).unwrap_err();
    assert_eq!(diag.kind, DiagnosticKind::DegreeExceeded);

    let diag = extract_decomposition(&sys(vec![yx(2).pow(3).unwrap(), int(0)])).unwrap_err();
    assert_eq!(diag.kind, DiagnosticKind::ForbiddenCubic);
    assert_eq!((diag.j, diag.indices.as_slice()), (1, &[2, 2, 2][..]));

    let diag = extract_decomposition(&sys(vec![yx(1) * yx(2) * yx(2), int(0)])).unwrap_err();
    assert_eq!(diag.kind, DiagnosticKind::InconsistentM);

    let d = extract_decomposition(&sys(vec![yx(1) * yx(2) * yx(2), yx(2).pow(3).unwrap()])).unwrap();
    assert_eq!(d.mm(2, 2), &int(1));
    assert!(d.mm(1, 1).is_zero() && d.mm(1, 2).is_zero());
}

#[test]
fn fels_examples() {
    let t = fels_tensors(&OdeSystem::flat(2)).unwrap();
    assert!(t.s_vanishes() && t.p_vanishes());
    let t = fels_tensors(&sys(vec![yx(2).pow(4).unwrap(), int(0)])).unwrap();
    assert_eq!(t.s(1, 2, 2, 2), &(int(24) * yx(2)));
    assert!(!t.s_vanishes());
    for s in corpus(2, 3, 21) {
        let t = fels_tensors(&induced_system(&s).unwrap()).unwrap();
        assert!(t.s_vanishes() && t.p_vanishes());
    }
    assert!(fels_tensors(&OdeSystem::flat(1)).is_err());
}

/// Systems polynomial in `y_x` up to degree four, with coefficients in the
/// point variables.
fn random_system(r: &mut ChaCha8Rng, m: usize) -> OdeSystem {
    let coeffs = point_vars(m);
    let jets: Vec<VariableId> = (1..=m).map(|j| VariableId::Jet1(j as u8)).collect();
    let rhs = (0..m)
        .map(|_| {
            let mut f = RationalFunction::zero();
            for _ in 0..r.gen_range(1..=4) {
                let c = RationalFunction::from_poly(random_poly(r, &coeffs, 1, 0..=1));
                let p = RationalFunction::from_poly(random_poly(r, &jets, 1, 1..=4));
                f = &f + &(&c * &p);
            }
            f
        })
        .collect();
    sys(rhs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fels_s_is_symmetric_and_trace_free(seed in any::<u64>(), m in 2usize..=3) {
        let t = fels_tensors(&random_system(&mut rng(seed), m)).unwrap();
        for j in 1..=m {
            for i in 1..=m {
                for k in 1..=m {
                    for l in 1..=m {
                        let s = t.s(j, i, k, l);
                        for (a, b, c) in [(i, l, k), (k, i, l), (k, l, i), (l, i, k), (l, k, i)] {
                            prop_assert_eq!(s, t.s(j, a, b, c));
                        }
                    }
                }
            }
        }
        for k in 1..=m {
            for l in 1..=m {
                let trace: RationalFunction = (1..=m).map(|j| t.s(j, j, k, l).clone()).sum();
                prop_assert!(trace.is_zero());
            }
        }
    }

    #[test]
    fn probe_is_sound(seed in any::<u64>(), probe_seed in any::<u64>()) {
        let mut r = rng(seed);
        let vars = point_vars(2);
        let f = RationalFunction::from_poly(random_poly(&mut r, &vars, 3, 0..=3));
        if let Ok(ProbeOutcome::CertainlyNonzero) = probe_residual(&f, 4, probe_seed) {
            prop_assert!(!f.is_zero());
        }
        let g = &f - &f;
        prop_assert_eq!(probe_residual(&g, 4, probe_seed).unwrap(), ProbeOutcome::ZeroAtAllSamples);
    }

    #[test]
    fn probing_never_changes_the_verdict(seed in any::<u64>(), m in 1usize..=3) {
        let mut r = rng(seed);
        let t = common::random_transformation(&mut r, m);
        let mut d = extract_decomposition(&induced_system(&t).unwrap()).unwrap();
        let bump = RationalFunction::from_poly(random_poly(&mut r, &point_vars(m), 1, 0..=2));
        d.set_g(1, d.g(1) + &bump);
        let s = reassemble(&d);
        let off = check_with(&s, &CheckOptions { probe_trials: 0, seed: 0 }).unwrap();
        let on = check_with(&s, &CheckOptions { probe_trials: 8, seed }).unwrap();
        prop_assert_eq!(off.verdict(), on.verdict());
        prop_assert_eq!(off.nonzero(), on.nonzero());
    }
}

#[test]
fn probe_examples() {
    assert_eq!(probe_residual(&int(0), 5, 1).unwrap(), ProbeOutcome::ZeroAtAllSamples);
    let xx = &x() - &x();
    assert_eq!(probe_residual(&xx, 5, 1).unwrap(), ProbeOutcome::ZeroAtAllSamples);
    assert!(xx.is_zero());
    for seed in 0..50 {
        assert_eq!(probe_residual(&(y(1) * y(1)), 3, seed).unwrap(), ProbeOutcome::CertainlyNonzero);
    }
}

fn linear_data(g1: Vec<Vec<RationalFunction>>, h: Vec<Vec<RationalFunction>>) -> LinearSystemData {
    let m = g1.len();
    LinearSystemData::new(vec![RationalFunction::zero(); m], g1, h).unwrap()
}

fn zeros(m: usize) -> Vec<Vec<RationalFunction>> {
    vec![vec![RationalFunction::zero(); m]; m]
}

#[test]
fn linear_examples() {
    for m in 2..=4 {
        let b = &(x() * x()) - &int(3);
        let g1 = (0..m)
            .map(|j| (0..m).map(|l| if j == l { b.clone() } else { int(0) }).collect())
            .collect();
        let v = linear_check(&linear_data(g1, zeros(m))).unwrap();
        assert!(v.linearizable);
        assert_eq!(v.b, Some(b));
    }

    let v = linear_check(&linear_data(vec![vec![x(), int(0)], vec![int(0), int(0)]], zeros(2))).unwrap();
    assert!(!v.linearizable);
    assert_eq!(v.candidates, vec![x(), int(0)]);

    let osc = sys(vec![-y(1), -y(2)]);
    let v = linear_check(&LinearSystemData::from_system(&osc).unwrap()).unwrap();
    assert_eq!(v.b, Some(int(-1)));

    // The verdict agrees with the general check on the assembled system.
    let data = linear_data(vec![vec![x(), int(0)], vec![int(0), int(0)]], zeros(2));
    assert_eq!(check(&data.to_system()).unwrap().verdict(), Verdict::Obstructed);
    let h = vec![vec![x(), int(1)], vec![int(0), x()]];
    let half = Q::new(1, 2);
    let quarter = Q::new(1, 4);
    // G1 = ½ H_x − ¼ H·H makes the system linearizable with B = 0.
    let g1: Vec<Vec<RationalFunction>> = (0..2)
        .map(|j| {
            (0..2)
                .map(|l| {
                    let quad: RationalFunction = (0..2).map(|k| &h[k][l] * &h[j][k]).sum();
                    &h[j][l].derivative(VariableId::Base).scale(&half) - &quad.scale(&quarter)
                })
                .collect()
        })
        .collect();
    let data = linear_data(g1, h);
    let v = linear_check(&data).unwrap();
    assert!(v.linearizable);
    assert!(v.b.unwrap().is_zero());
    assert!(check(&data.to_system()).unwrap().linearizable());
}
