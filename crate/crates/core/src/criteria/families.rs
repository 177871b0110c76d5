//! The four first-order families for `m >= 2`, term by term.

use crate::algebra::{RationalFunction, VariableId, Q};
use crate::decomposition::CubicDecomposition;

use super::ResidualEntry;

pub struct FamilyValues {
    pub i: Vec<ResidualEntry>,
    pub ii: Vec<ResidualEntry>,
    pub iii: Vec<ResidualEntry>,
    pub iv: Vec<ResidualEntry>,
}

struct Ctx<'a> {
    d: &'a CubicDecomposition,
    m: usize,
}

fn dx(f: &RationalFunction) -> RationalFunction {
    f.derivative(VariableId::Base)
}

fn dy(f: &RationalFunction, l: usize) -> RationalFunction {
    f.derivative(VariableId::Dep(l as u8))
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

impl Ctx<'_> {
    fn sum(&self, f: impl Fn(usize) -> RationalFunction) -> RationalFunction {
        (1..=self.m).map(f).sum()
    }

    fn family_i(&self, j: usize, l1: usize, l2: usize) -> RationalFunction {
        let d = self.d;
        let mut r = dy(d.g(j), l1).scale(&q(-2, 1));
        r = &r + &dx(d.h(j, l1));
        r = &r + &self.sum(|k| d.g(k) * d.l(j, l1, k)).scale(&q(2, 1));
        r = &r - &self.sum(|k| d.h(k, l1) * d.h(j, k)).scale(&q(1, 2));
        if j == l1 {
            r = &r + &dy(d.g(l2), l2).scale(&q(2, 1));
            r = &r - &dx(d.h(l2, l2));
            r = &r - &self.sum(|k| d.g(k) * d.l(l2, l2, k)).scale(&q(2, 1));
            r = &r + &self.sum(|k| d.h(k, l2) * d.h(l2, k)).scale(&q(1, 2));
        }
        r
    }

    fn family_ii(&self, j: usize, l1: usize, l2: usize) -> RationalFunction {
        let d = self.d;
        let mut r = dy(d.h(j, l1), l2).scale(&q(-1, 2));
        r = &r + &dx(d.l(j, l1, l2));
        r = &r + &(d.g(j) * d.mm(l1, l2));
        r = &r - &self.sum(|k| d.h(j, k) * d.l(k, l1, l2)).scale(&q(1, 2));
        r = &r + &self.sum(|k| d.h(k, l1) * d.l(j, l2, k)).scale(&q(1, 2));
        if j == l1 {
            r = &r + &dy(d.h(l2, l2), l2).scale(&q(1, 6));
            r = &r - &dx(d.l(l2, l2, l2)).scale(&q(1, 3));
            r = &r - &(d.g(l2) * d.mm(l2, l2)).scale(&q(1, 3));
            r = &r + &self.sum(|k| d.g(k) * d.mm(l2, k)).scale(&q(1, 3));
            r = &r + &self.sum(|k| d.h(l2, k) * d.l(k, l2, l2)).scale(&q(1, 6));
            r = &r - &self.sum(|k| d.h(k, l2) * d.l(l2, l2, k)).scale(&q(1, 6));
        }
        if j == l2 {
            r = &r + &dy(d.h(l1, l1), l1).scale(&q(1, 3));
            r = &r - &dx(d.l(l1, l1, l1)).scale(&q(2, 3));
            r = &r - &(d.g(l1) * d.mm(l1, l1)).scale(&q(2, 3));
            r = &r - &self.sum(|k| d.g(k) * d.mm(l1, k)).scale(&q(1, 3));
            r = &r + &self.sum(|k| d.h(l1, k) * d.l(k, l1, l1)).scale(&q(1, 3));
            r = &r - &self.sum(|k| d.h(k, l1) * d.l(l1, l1, k)).scale(&q(1, 3));
        }
        r
    }

    fn family_iii(&self, j: usize, l1: usize, l2: usize, l3: usize) -> RationalFunction {
        let d = self.d;
        let mut r = &dy(d.l(j, l1, l2), l3) - &dy(d.l(j, l1, l3), l2);
        if j == l3 {
            r = &r + &dx(d.mm(l1, l2));
        }
        if j == l2 {
            r = &r - &dx(d.mm(l1, l3));
        }
        r = &r + &(d.h(j, l3) * d.mm(l1, l2)).scale(&q(1, 2));
        r = &r - &(d.h(j, l2) * d.mm(l1, l3)).scale(&q(1, 2));
        if j == l1 {
            r = &r + &self.sum(|k| d.h(k, l3) * d.mm(l2, k)).scale(&q(1, 2));
            r = &r - &self.sum(|k| d.h(k, l2) * d.mm(l3, k)).scale(&q(1, 2));
        }
        if j == l3 {
            r = &r + &self.sum(|k| d.h(k, l1) * d.mm(l2, k)).scale(&q(1, 2));
        }
        if j == l2 {
            r = &r - &self.sum(|k| d.h(k, l1) * d.mm(l3, k)).scale(&q(1, 2));
        }
        r = &r + &self.sum(|k| d.l(k, l1, l3) * d.l(j, l2, k));
        r = &r - &self.sum(|k| d.l(k, l1, l2) * d.l(j, l3, k));
        r
    }

    fn family_iv(&self, l1: usize, l2: usize, l3: usize) -> RationalFunction {
        let d = self.d;
        let mut r = &dy(d.mm(l1, l2), l3) - &dy(d.mm(l1, l3), l2);
        r = &r - &self.sum(|k| d.l(k, l1, l2) * d.mm(l3, k));
        r = &r + &self.sum(|k| d.l(k, l1, l3) * d.mm(l2, k));
        r
    }
}

/// Evaluates the left-hand sides of all four families at every index tuple.
/// No arity check: the caller decides whether the values are meaningful.
pub fn family_values(d: &CubicDecomposition) -> FamilyValues {
    let ctx = Ctx { d, m: d.m() };
    let m = d.m();
    let range = || 1..=m;
    let mut out = FamilyValues {
        i: Vec::new(),
        ii: Vec::new(),
        iii: Vec::new(),
        iv: Vec::new(),
    };
    for j in range() {
        for l1 in range() {
            for l2 in range() {
                out.i.push(ResidualEntry::new(vec![j, l1, l2], ctx.family_i(j, l1, l2)));
                out.ii.push(ResidualEntry::new(vec![j, l1, l2], ctx.family_ii(j, l1, l2)));
                for l3 in range() {
                    let v = if l2 == l3 {
                        RationalFunction::zero()
                    } else {
                        ctx.family_iii(j, l1, l2, l3)
                    };
                    out.iii.push(ResidualEntry::new(vec![j, l1, l2, l3], v));
                }
            }
        }
    }
    for l1 in range() {
        for l2 in range() {
            for l3 in range() {
                let v = if l2 == l3 {
                    RationalFunction::zero()
                } else {
                    ctx.family_iv(l1, l2, l3)
                };
                out.iv.push(ResidualEntry::new(vec![l1, l2, l3], v));
            }
        }
    }
    out
}
