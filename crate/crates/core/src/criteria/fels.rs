//! The two relative invariants `S̃` and `P̃` restricted to the identity.

use crate::algebra::{RationalFunction, VariableId, Q};
use crate::error::{Error, Result};
use crate::jets::{total_derivative_along, OdeSystem};

/// `S^j_{ikl}` (fully symmetric in `i, k, l`) and `P^j_i`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FelsTensors {
    m: usize,
    s: Vec<RationalFunction>,
    p: Vec<RationalFunction>,
}

impl FelsTensors {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self, j: usize, i: usize, k: usize, l: usize) -> &RationalFunction {
        let m = self.m;
        &self.s[(((j - 1) * m + i - 1) * m + k - 1) * m + l - 1]
    }

    pub fn p(&self, j: usize, i: usize) -> &RationalFunction {
        &self.p[(j - 1) * self.m + i - 1]
    }

    pub fn s_vanishes(&self) -> bool {
        self.s.iter().all(RationalFunction::is_zero)
    }

    pub fn p_vanishes(&self) -> bool {
        self.p.iter().all(RationalFunction::is_zero)
    }
}

fn jet1(l: usize) -> VariableId {
    VariableId::Jet1(l as u8)
}

/// The correction in `S` sums over the six orderings of `(i, k, l)`, which
/// visits each of the three placements of the free index twice; the constant
/// `1/(2(m+2))` makes the result trace-free.
pub fn s_correction_constant(m: usize) -> Q {
    Q::new(1, 2 * (m as i64 + 2))
}

pub fn fels_tensors(sys: &OdeSystem) -> Result<FelsTensors> {
    let m = sys.m();
    if m < 2 {
        return Err(Error::WrongArity {
            expected: ">= 2",
            got: m,
        });
    }
    let fp: Vec<Vec<RationalFunction>> = (1..=m)
        .map(|j| (1..=m).map(|i| sys.f(j).derivative(jet1(i))).collect())
        .collect();
    let fpp = |j: usize, a: usize, b: usize| fp[j - 1][a - 1].derivative(jet1(b));
    let fppp = |j: usize, a: usize, b: usize, c: usize| fpp(j, a, b).derivative(jet1(c));

    // T_{ab} = Σ_l F^l_{p^l p^a p^b}
    let mut t = vec![RationalFunction::zero(); m * m];
    for a in 1..=m {
        for b in a..=m {
            let v: RationalFunction = (1..=m).map(|l| fppp(l, l, a, b)).sum();
            t[(b - 1) * m + a - 1] = v.clone();
            t[(a - 1) * m + b - 1] = v;
        }
    }
    let tt = |a: usize, b: usize| &t[(a - 1) * m + b - 1];
    let c = s_correction_constant(m);
    let mut s = vec![RationalFunction::zero(); m * m * m * m];
    let idx = |j: usize, i: usize, k: usize, l: usize| (((j - 1) * m + i - 1) * m + k - 1) * m + l - 1;
    for j in 1..=m {
        for i in 1..=m {
            for k in i..=m {
                for l in k..=m {
                    let mut corr = RationalFunction::zero();
                    for (a, b, last) in [(i, k, l), (k, i, l), (i, l, k), (l, i, k), (k, l, i), (l, k, i)] {
                        if last == j {
                            corr = &corr + tt(a, b);
                        }
                    }
                    let v = &fppp(j, i, k, l) - &corr.scale(&c);
                    for (a, b, e) in [(i, k, l), (i, l, k), (k, i, l), (k, l, i), (l, i, k), (l, k, i)] {
                        s[idx(j, a, b, e)] = v.clone();
                    }
                }
            }
        }
    }

    let half = Q::new(1, 2);
    let quarter = Q::new(1, 4);
    let dep = |l: usize| VariableId::Dep(l as u8);
    let mut core = Vec::with_capacity(m * m);
    for j in 1..=m {
        for i in 1..=m {
            let mut v = total_derivative_along(&fp[j - 1][i - 1], sys)?.scale(&half);
            v = &v - &sys.f(j).derivative(dep(i));
            let prod: RationalFunction = (1..=m).map(|k| &fp[j - 1][k - 1] * &fp[k - 1][i - 1]).sum();
            v = &v - &prod.scale(&quarter);
            core.push(v);
        }
    }
    let trace_p: RationalFunction = (1..=m).map(|k| fp[k - 1][k - 1].clone()).sum();
    let mut trace = total_derivative_along(&trace_p, sys)?.scale(&half);
    for k in 1..=m {
        trace = &trace - &sys.f(k).derivative(dep(k));
        for l in 1..=m {
            trace = &trace - &(&fp[l - 1][k - 1] * &fp[k - 1][l - 1]).scale(&quarter);
        }
    }
    let trace = trace.scale(&Q::new(1, m as i64));
    let mut p = core;
    for j in 1..=m {
        let e = &mut p[(j - 1) * m + j - 1];
        *e = &*e - &trace;
    }
    Ok(FelsTensors { m, s, p })
}
