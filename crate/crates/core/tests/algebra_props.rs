mod common;

use std::collections::BTreeMap;

use freeparticle::algebra::{
    determinant, determinant_cofactor, AlgebraError, Matrix, Polynomial, RationalFunction, VariableId, Q,
};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{int, random_poly, rng, x, y};

const VARS: [VariableId; 3] = [VariableId::Base, VariableId::Dep(1), VariableId::Dep(2)];

fn random_rf(r: &mut ChaCha8Rng) -> RationalFunction {
    let terms = r.gen_range(0..=3);
    let num = random_poly(r, &VARS, terms, 0..=2);
    let den = if r.gen_bool(0.5) {
        Polynomial::one()
    } else {
        let terms = r.gen_range(1..=2);
        let d = random_poly(r, &VARS, terms, 0..=2);
        if d.is_zero() {
            Polynomial::one()
        } else {
            d
        }
    };
    RationalFunction::from_parts(num, &den).unwrap()
}

fn random_matrix(r: &mut ChaCha8Rng, n: usize) -> Matrix {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if r.gen_bool(0.3) {
                        RationalFunction::zero()
                    } else if r.gen_bool(0.7) {
                        RationalFunction::from_poly(random_poly(r, &VARS, 2, 0..=1))
                    } else {
                        random_rf(r)
                    }
                })
                .collect()
        })
        .collect()
}

fn three(seed: u64) -> (RationalFunction, RationalFunction, RationalFunction) {
    let mut r = rng(seed);
    (random_rf(&mut r), random_rf(&mut r), random_rf(&mut r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (a, b, c) = three(seed);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &RationalFunction::one(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), RationalFunction::one());
            prop_assert_eq!(b.checked_div(&a).unwrap() * a.clone(), b.clone());
        } else {
            prop_assert_eq!(a.inverse(), Err(AlgebraError::DivisionByZero));
        }
    }

    #[test]
    fn powers(seed in any::<u64>(), e in 0i32..4) {
        let (a, _, _) = three(seed);
        let direct = (0..e).fold(RationalFunction::one(), |acc, _| &acc * &a);
        prop_assert_eq!(a.pow(e).unwrap(), direct.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.pow(-e).unwrap(), direct.inverse().unwrap());
        }
    }

    #[test]
    fn leibniz_and_commuting_partials(seed in any::<u64>()) {
        let (f, g, _) = three(seed);
        for v in VARS {
            let lhs = (&f * &g).derivative(v);
            let rhs = &(&f * &g.derivative(v)) + &(&g * &f.derivative(v));
            prop_assert_eq!(lhs, rhs);
            if !g.is_zero() {
                let q = f.checked_div(&g).unwrap().derivative(v);
                let expect = (&(&f.derivative(v) * &g) - &(&f * &g.derivative(v)))
                    .checked_div(&(&g * &g))
                    .unwrap();
                prop_assert_eq!(q, expect);
            }
            for w in VARS {
                prop_assert_eq!(f.derivative(v).derivative(w), f.derivative(w).derivative(v));
            }
        }
    }

    #[test]
    fn canonical_form_is_a_normal_form(seed in any::<u64>()) {
        let (a, b, _) = three(seed);
        // The same value built two ways prints identically.
        let roundabout = &(&(&a * &b) + &a) - &(&a * &b);
        prop_assert_eq!(roundabout.to_string(), a.to_string());
        prop_assert_eq!(a.equals(&b), a.to_string() == b.to_string());
        prop_assert_eq!(a.equals(&b), b.equals(&a));
        // Rebuilding from the stored parts changes nothing.
        let rebuilt = RationalFunction::from_parts(a.numerator().clone(), &a.denominator()).unwrap();
        prop_assert_eq!(rebuilt.to_string(), a.to_string());
        if let Some((lead, _)) = a.denominator_factors().first() {
            // The first printed term carries the positive sign.
            prop_assert!(lead.trailing().map(|(_, c)| c.signum() > 0).unwrap_or(false));
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>(), px in -5i64..5, py in 1i64..7) {
        let (a, b, _) = three(seed);
        let point: BTreeMap<VariableId, Q> = [
            (VariableId::Base, Q::new(px, 3)),
            (VariableId::Dep(1), Q::new(py, 5)),
            (VariableId::Dep(2), Q::new(-py, 2)),
        ]
        .into_iter()
        .collect();
        if let (Ok(va), Ok(vb)) = (a.evaluate(&point), b.evaluate(&point)) {
            prop_assert_eq!((&a * &b).evaluate(&point).unwrap(), &va * &vb);
            prop_assert_eq!((&a + &b).evaluate(&point).unwrap(), &va + &vb);
        }
    }

    #[test]
    fn substitution_composes_with_evaluation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_rf(&mut r);
        let s = RationalFunction::from_poly(random_poly(&mut r, &VARS[..2], 2, 0..=2));
        let bound: BTreeMap<VariableId, RationalFunction> = [(VariableId::Dep(2), s.clone())].into_iter().collect();
        let point = |v: VariableId| match v {
            VariableId::Base => Some(Q::new(2, 7)),
            VariableId::Dep(1) => Some(Q::new(-3, 4)),
            _ => None,
        };
        let Ok(sv) = s.evaluate_with(&point) else { return Ok(()) };
        let full = |v: VariableId| if v == VariableId::Dep(2) { Some(sv.clone()) } else { point(v) };
        match f.substitute(&bound) {
            Ok(g) => {
                if let (Ok(a), Ok(b)) = (g.evaluate_with(&point), f.evaluate_with(&full)) {
                    prop_assert_eq!(a, b);
                }
            }
            Err(e) => prop_assert_eq!(e, AlgebraError::SubstitutionPole),
        }
    }

    #[test]
    fn bareiss_matches_cofactor(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let mat = random_matrix(&mut r, n);
        prop_assert_eq!(determinant(&mat).unwrap(), determinant_cofactor(&mat).unwrap());
    }

    #[test]
    fn determinant_is_multilinear_and_alternating(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let mat = random_matrix(&mut r, n);
        let other = random_matrix(&mut r, n);
        let i = r.gen_range(0..n);
        let k = random_rf(&mut r);
        // Row i of `sum` is row i of `mat` plus k times row i of `other`.
        let mut sum = mat.clone();
        for c in 0..n {
            sum[i][c] = &mat[i][c] + &(&k * &other[i][c]);
        }
        let mut with_other = mat.clone();
        with_other[i] = other[i].clone();
        let lhs = determinant(&sum).unwrap();
        let rhs = &determinant(&mat).unwrap() + &(&k * &determinant(&with_other).unwrap());
        prop_assert_eq!(lhs, rhs);

        let j = (i + 1) % n;
        let swap_cols: Matrix = mat.iter().map(|row| {
            let mut row = row.clone();
            row.swap(i, j);
            row
        }).collect();
        prop_assert_eq!(determinant(&swap_cols).unwrap(), -determinant(&mat).unwrap());
        let mut equal_rows = mat.clone();
        equal_rows[j] = mat[i].clone();
        prop_assert!(determinant(&equal_rows).unwrap().is_zero());
    }
}

#[test]
fn spec_examples() {
    assert_eq!(&(x() + y(1)) + &(x() - y(1)), int(2) * x());
    let one_minus_y = int(1) - y(1);
    assert_eq!(one_minus_y.inverse().unwrap() * one_minus_y.clone(), int(1));
    let q = (&(x() * x()) - &(y(1) * y(1))).checked_div(&(x() - y(1))).unwrap();
    assert_eq!(q, x() + y(1));
    assert_eq!((x() * y(1) * y(1)).derivative(VariableId::Dep(1)), int(2) * x() * y(1));
    assert_eq!(
        one_minus_y.inverse().unwrap().derivative(VariableId::Dep(1)),
        one_minus_y.pow(-2).unwrap()
    );
    assert!((&(&(x() + y(1)) - &x()) - &y(1)).is_zero());
    assert!(x().checked_div(&(x() * x())).unwrap().equals(&x().inverse().unwrap()));
    let point: BTreeMap<_, _> = [(VariableId::Base, Q::new(1, 2)), (VariableId::Dep(1), Q::new(1, 3))]
        .into_iter()
        .collect();
    assert_eq!((x() + y(1)).evaluate(&point).unwrap(), Q::new(5, 6));
    let at_one: BTreeMap<_, _> = [(VariableId::Dep(1), Q::one())].into_iter().collect();
    assert_eq!(one_minus_y.inverse().unwrap().evaluate(&at_one), Err(AlgebraError::EvaluationPole));
    let to_one: BTreeMap<_, _> = [(VariableId::Dep(1), int(1))].into_iter().collect();
    assert_eq!(one_minus_y.inverse().unwrap().substitute(&to_one), Err(AlgebraError::SubstitutionPole));
    assert_eq!((x() + y(1)).substitute(&BTreeMap::new()).unwrap(), x() + y(1));
    let yxx = RationalFunction::var(VariableId::Jet2(1));
    let yx2 = common::yx(1) * common::yx(1);
    let bind: BTreeMap<_, _> = [(VariableId::Jet2(1), int(-2) * yx2.clone())].into_iter().collect();
    assert_eq!(yxx.substitute(&bind).unwrap(), int(-2) * yx2);
}

#[test]
fn determinant_examples() {
    let m: Matrix = vec![vec![int(1), int(0)], vec![int(2) * x(), int(2)]];
    assert_eq!(determinant(&m).unwrap(), int(2));
    for n in 1..=4 {
        let id: Matrix = (0..n)
            .map(|i| (0..n).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert_eq!(determinant(&id).unwrap(), int(1));
    }
}
