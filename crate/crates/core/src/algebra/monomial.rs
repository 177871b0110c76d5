use std::cmp::Ordering;

use super::variable::{VariableId, NVARS};

/// A power product over the jet coordinates, stored as a dense exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: [u16; NVARS],
    degree: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: VariableId) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: VariableId, e: u16) -> Monomial {
        let mut m = Monomial::one();
        m.exps[v.slot()] = e;
        m.degree = e as u32;
        m
    }

    pub fn exp(&self, v: VariableId) -> u16 {
        self.exps[v.slot()]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Variables with a positive exponent, in ascending order.
    pub fn support(&self) -> impl Iterator<Item = (VariableId, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(s, e)| (VariableId::from_slot(s), *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out.degree += other.degree;
        out
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        out.degree -= other.degree;
        Some(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::one();
        for s in 0..NVARS {
            out.exps[s] = self.exps[s].min(other.exps[s]);
        }
        out.degree = out.exps.iter().map(|&e| e as u32).sum();
        out
    }

    /// Lowers the exponent of `v` by one; `None` when `v` is absent.
    pub fn lower(&self, v: VariableId) -> Option<Monomial> {
        let s = v.slot();
        if self.exps[s] == 0 {
            return None;
        }
        let mut out = *self;
        out.exps[s] -= 1;
        out.degree -= 1;
        Some(out)
    }

    pub fn with_exp(&self, v: VariableId, e: u16) -> Monomial {
        let mut out = *self;
        let s = v.slot();
        out.degree = out.degree - out.exps[s] as u32 + e as u32;
        out.exps[s] = e;
        out
    }

    /// Splits into the part over the variables selected by `pred` and the rest.
    pub fn split(&self, pred: impl Fn(VariableId) -> bool) -> (Monomial, Monomial) {
        let mut inside = Monomial::one();
        let mut outside = Monomial::one();
        for (v, e) in self.support() {
            let target = if pred(v) { &mut inside } else { &mut outside };
            target.exps[v.slot()] = e;
            target.degree += e as u32;
        }
        (inside, outside)
    }
}

/// Graded order: total degree first, then the monomial carrying the larger
/// exponent in the earliest variable comes first. Ascending iteration thus
/// prints `1 + x + y1 + x^2 + x*y1 + …`.
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let x = Monomial::var(VariableId::Base);
        let y = Monomial::var(VariableId::Dep(1));
        let one = Monomial::one();
        assert!(one < x);
        assert!(x < y);
        assert!(y < x.mul(&x));
        assert!(x.mul(&x) < x.mul(&y));
        assert!(x.mul(&y) < y.mul(&y));
    }

    #[test]
    fn order_is_multiplicative() {
        let x = Monomial::var(VariableId::Base);
        let y = Monomial::var(VariableId::Dep(1));
        let z = Monomial::var(VariableId::Jet1(2));
        let pairs = [(x, y), (y, z), (x.mul(&z), y.mul(&y))];
        for (a, b) in pairs {
            for c in [x, y, z, x.mul(&y)] {
                assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
            }
        }
    }
}
