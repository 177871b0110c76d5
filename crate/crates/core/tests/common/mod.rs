//! Shared generators for the integration tests.
#![allow(dead_code)]

use freeparticle::algebra::{Monomial, Polynomial, RationalFunction, VariableId, Q};
use freeparticle::jets::PointTransformation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn var(v: VariableId) -> RationalFunction {
    RationalFunction::var(v)
}

pub fn x() -> RationalFunction {
    var(VariableId::Base)
}

pub fn y(j: usize) -> RationalFunction {
    var(VariableId::Dep(j as u8))
}

pub fn yx(j: usize) -> RationalFunction {
    var(VariableId::Jet1(j as u8))
}

pub fn int(n: i64) -> RationalFunction {
    RationalFunction::int(n)
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return n;
        }
    }
}

/// A random monomial of total degree `deg` in `vars`.
pub fn random_monomial(rng: &mut ChaCha8Rng, vars: &[VariableId], deg: u32) -> Monomial {
    let mut m = Monomial::one();
    for _ in 0..deg {
        m = m.mul(&Monomial::var(vars[rng.gen_range(0..vars.len())]));
    }
    m
}

/// A sparse polynomial with `terms` monomials of degree in `degs`.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    vars: &[VariableId],
    terms: usize,
    degs: std::ops::RangeInclusive<u32>,
) -> Polynomial {
    let t = (0..terms).map(|_| {
        let d = rng.gen_range(degs.clone());
        (random_monomial(rng, vars, d), Q::from_int(nonzero(rng, 3)))
    });
    Polynomial::from_terms(t)
}

pub fn point_vars(m: usize) -> Vec<VariableId> {
    (0..=m).map(VariableId::coordinate).collect()
}

/// Identity plus one or two monomials of degree 2 or 3 in each component,
/// occasionally with a linear mixing term. Regenerates until the Jacobian is
/// invertible at the origin.
pub fn random_transformation(rng: &mut ChaCha8Rng, m: usize) -> PointTransformation {
    let vars = point_vars(m);
    loop {
        let comps: Vec<RationalFunction> = (0..=m)
            .map(|k| {
                let mut p = Polynomial::var(VariableId::coordinate(k));
                let terms = rng.gen_range(1..=2);
                p = p.add(&random_poly(rng, &vars, terms, 2..=3));
                if rng.gen_bool(0.2) {
                    let other = VariableId::coordinate(rng.gen_range(0..=m));
                    p = p.add(&Polynomial::var(other).scale(&Q::from_int(nonzero(rng, 2))));
                }
                RationalFunction::from_poly(p)
            })
            .collect();
        let mut it = comps.into_iter();
        let xx = it.next().unwrap();
        if let Ok(t) = PointTransformation::new(xx, it.collect(), None) {
            return t;
        }
    }
}

pub fn corpus(m: usize, count: usize, seed: u64) -> Vec<PointTransformation> {
    let mut r = rng(seed ^ (m as u64) << 32);
    (0..count).map(|_| random_transformation(&mut r, m)).collect()
}
