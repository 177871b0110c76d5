use crate::algebra::{RationalFunction, VariableId, Q};
use crate::error::{Error, Result};

use super::{check_dimension, check_variables, jet1, jet2};

/// `X ∂/∂x + Σ Y^j ∂/∂y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    m: usize,
    comps: Vec<RationalFunction>,
}

impl VectorField {
    pub fn new(x: RationalFunction, y: Vec<RationalFunction>) -> Result<VectorField> {
        let m = y.len();
        check_dimension(m)?;
        let mut comps = Vec::with_capacity(m + 1);
        comps.push(x);
        comps.extend(y);
        for c in &comps {
            check_variables(c, m)?;
            if let Some(v) = c.variables().into_iter().find(|v| v.is_jet()) {
                return Err(Error::JetNotAllowed(v.to_string()));
            }
        }
        Ok(VectorField { m, comps })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x(&self) -> &RationalFunction {
        &self.comps[0]
    }

    pub fn y(&self, j: usize) -> &RationalFunction {
        &self.comps[j]
    }
}

/// The second prolongation: the field plus the `∂/∂y_x^j` and `∂/∂y_xx^j`
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedVectorField {
    pub field: VectorField,
    pub r1: Vec<RationalFunction>,
    pub r2: Vec<RationalFunction>,
}

pub fn prolong2(v: &VectorField) -> ProlongedVectorField {
    let m = v.m;
    let c = |k: usize| VariableId::coordinate(k);
    let d = |f: &RationalFunction, a: usize| f.derivative(c(a));
    let dd = |f: &RationalFunction, a: usize, b: usize| f.derivative(c(a)).derivative(c(b));
    let x = v.x();
    let two = Q::from_int(2);
    let mut r1 = Vec::with_capacity(m);
    let mut r2 = Vec::with_capacity(m);
    for j in 1..=m {
        let yj = v.y(j);

        let mut a = d(yj, 0);
        for l1 in 1..=m {
            let mut c1 = d(yj, l1);
            if l1 == j {
                c1 = &c1 - &d(x, 0);
            }
            a = &a + &(&jet1(l1) * &c1);
        }
        for l2 in 1..=m {
            // Only l1 = j survives the Kronecker delta.
            a = &a - &(&(&jet1(j) * &jet1(l2)) * &d(x, l2));
        }
        r1.push(a);

        let mut b = dd(yj, 0, 0);
        for l1 in 1..=m {
            let mut c1 = dd(yj, 0, l1).scale(&two);
            if l1 == j {
                c1 = &c1 - &dd(x, 0, 0);
            }
            b = &b + &(&jet1(l1) * &c1);
        }
        for l1 in 1..=m {
            for l2 in 1..=m {
                let mut c2 = dd(yj, l1, l2);
                if l1 == j {
                    c2 = &c2 - &dd(x, 0, l2);
                }
                if l2 == j {
                    c2 = &c2 - &dd(x, 0, l1);
                }
                b = &b + &(&(&jet1(l1) * &jet1(l2)) * &c2);
            }
        }
        for l2 in 1..=m {
            for l3 in 1..=m {
                let mono = &(&jet1(j) * &jet1(l2)) * &jet1(l3);
                b = &b - &(&mono * &dd(x, l2, l3));
            }
        }
        for l1 in 1..=m {
            let mut c1 = d(yj, l1);
            if l1 == j {
                c1 = &c1 - &d(x, 0).scale(&two);
            }
            b = &b + &(&jet2(l1) * &c1);
        }
        for l1 in 1..=m {
            for l2 in 1..=m {
                let mut c2 = RationalFunction::zero();
                if l1 == j {
                    c2 = &c2 - &d(x, l2);
                }
                if l2 == j {
                    c2 = &c2 - &d(x, l1).scale(&two);
                }
                b = &b + &(&(&jet1(l1) * &jet2(l2)) * &c2);
            }
        }
        r2.push(b);
    }
    ProlongedVectorField {
        field: v.clone(),
        r1,
        r2,
    }
}
