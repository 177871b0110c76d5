//! The linear case `y_xx^j = G0^j(x) + Σ y^l G1^j_l(x) + Σ y_x^l H^j_l(x)`.

use crate::algebra::{RationalFunction, VariableId, Q};
use crate::error::{Error, Result};
use crate::jets::{jet1, OdeSystem};

use super::{check_with, CheckOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystemData {
    m: usize,
    g0: Vec<RationalFunction>,
    g1: Vec<RationalFunction>,
    h: Vec<RationalFunction>,
}

fn depends_only_on_x(f: &RationalFunction) -> bool {
    !f.any_var(|v| v != VariableId::Base)
}

impl LinearSystemData {
    /// `g1` and `h` are row-major `m × m` tables indexed `[j][l]`.
    pub fn new(
        g0: Vec<RationalFunction>,
        g1: Vec<Vec<RationalFunction>>,
        h: Vec<Vec<RationalFunction>>,
    ) -> Result<LinearSystemData> {
        let m = g0.len();
        crate::jets::check_dimension(m)?;
        let square = |t: &Vec<Vec<RationalFunction>>| t.len() == m && t.iter().all(|r| r.len() == m);
        if !square(&g1) || !square(&h) {
            return Err(Error::InvalidInput("coefficient tables must be m x m".into()));
        }
        let g1: Vec<_> = g1.into_iter().flatten().collect();
        let h: Vec<_> = h.into_iter().flatten().collect();
        if !g0.iter().chain(&g1).chain(&h).all(depends_only_on_x) {
            return Err(Error::InvalidInput(
                "linear coefficients may depend on x only".into(),
            ));
        }
        Ok(LinearSystemData { m, g0, g1, h })
    }

    /// Reads the coefficients of a system that is affine in `(y, y_x)` with
    /// coefficients in `x`; `None` if the system is not of that shape.
    pub fn from_system(sys: &OdeSystem) -> Option<LinearSystemData> {
        let m = sys.m();
        let zero = RationalFunction::zero();
        let mut g0 = vec![zero.clone(); m];
        let mut g1 = vec![vec![zero.clone(); m]; m];
        let mut h = vec![vec![zero; m]; m];
        let affine_var = |v: VariableId| matches!(v, VariableId::Dep(_) | VariableId::Jet1(_));
        for j in 1..=m {
            for (mono, c) in sys.f(j).coefficients_in(affine_var)? {
                let mut support = mono.support();
                match (support.next(), support.next()) {
                    (None, _) => g0[j - 1] = c,
                    (Some((VariableId::Dep(l), 1)), None) => g1[j - 1][l as usize - 1] = c,
                    (Some((VariableId::Jet1(l), 1)), None) => h[j - 1][l as usize - 1] = c,
                    _ => return None,
                }
            }
        }
        LinearSystemData::new(g0, g1, h).ok()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn g0(&self, j: usize) -> &RationalFunction {
        &self.g0[j - 1]
    }

    pub fn g1(&self, j: usize, l: usize) -> &RationalFunction {
        &self.g1[(j - 1) * self.m + l - 1]
    }

    pub fn h(&self, j: usize, l: usize) -> &RationalFunction {
        &self.h[(j - 1) * self.m + l - 1]
    }

    /// The full system with `G = G0 + G1·y`, `H`, and `L = M = 0`.
    pub fn to_system(&self) -> OdeSystem {
        let m = self.m;
        let rhs = (1..=m)
            .map(|j| {
                let mut f = self.g0(j).clone();
                for l in 1..=m {
                    f = &f + &(&RationalFunction::var(VariableId::Dep(l as u8)) * self.g1(j, l));
                    f = &f + &(&jet1(l) * self.h(j, l));
                }
                f
            })
            .collect();
        OdeSystem::new(rhs).expect("coefficients depend on x only")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearVerdict {
    pub linearizable: bool,
    /// The common value of the candidates when they agree.
    pub b: Option<RationalFunction>,
    /// `B_l = G1^l_l − ½ H^l_{l,x} + ¼ Σ_k H^k_l H^l_k`, one per `l`.
    pub candidates: Vec<RationalFunction>,
}

/// The linear specialization of family (I): `G1^j_l = ½ H^j_{l,x} −
/// ¼ Σ_k H^k_l H^j_k + δ^j_l B` for a single function `B(x)`. The answer is
/// confirmed against the general check on the assembled system.
pub fn linear_check(d: &LinearSystemData) -> Result<LinearVerdict> {
    let m = d.m;
    if m < 2 {
        return Err(Error::WrongArity {
            expected: ">= 2",
            got: m,
        });
    }
    let half = Q::new(1, 2);
    let quarter = Q::new(1, 4);
    let x = VariableId::Base;
    // ½ H^j_{l,x} − ¼ Σ_k H^k_l H^j_k
    let shape = |j: usize, l: usize| -> RationalFunction {
        let quad: RationalFunction = (1..=m).map(|k| d.h(k, l) * d.h(j, k)).sum();
        &d.h(j, l).derivative(x).scale(&half) - &quad.scale(&quarter)
    };
    let candidates: Vec<RationalFunction> = (1..=m).map(|l| d.g1(l, l) - &shape(l, l)).collect();
    let agree = candidates.iter().all(|c| c.equals(&candidates[0]));
    let mut linearizable = agree;
    if agree {
        'outer: for j in 1..=m {
            for l in 1..=m {
                let mut expected = shape(j, l);
                if j == l {
                    expected = &expected + &candidates[0];
                }
                if !d.g1(j, l).equals(&expected) {
                    linearizable = false;
                    break 'outer;
                }
            }
        }
    }
    let general = check_with(&d.to_system(), &CheckOptions::default())
        .map(|r| r.linearizable())
        .unwrap_or(false);
    if general != linearizable {
        return Err(Error::LinearCheckMismatch);
    }
    Ok(LinearVerdict {
        linearizable,
        b: linearizable.then(|| candidates[0].clone()),
        candidates,
    })
}
