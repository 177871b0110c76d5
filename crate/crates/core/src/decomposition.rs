//! The cubic structure `F^j = G^j + H^j_l y_x^l + L^j_{ab} y_x^a y_x^b +
//! y_x^j M_{ab} y_x^a y_x^b` and its coefficient tensors.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Monomial, RationalFunction, VariableId, Q};
use crate::jets::{jet1, OdeSystem};

/// Coefficient tensors of a cubic-structured system. Indices are 1-based;
/// `L^j` and `M` are kept symmetric by the setters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicDecomposition {
    m: usize,
    g: Vec<RationalFunction>,
    h: Vec<RationalFunction>,
    l: Vec<RationalFunction>,
    mm: Vec<RationalFunction>,
}

impl CubicDecomposition {
    pub fn zero(m: usize) -> CubicDecomposition {
        let z = RationalFunction::zero();
        CubicDecomposition {
            m,
            g: vec![z.clone(); m],
            h: vec![z.clone(); m * m],
            l: vec![z.clone(); m * m * m],
            mm: vec![z; m * m],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn g(&self, j: usize) -> &RationalFunction {
        &self.g[j - 1]
    }

    /// `H^j_l`.
    pub fn h(&self, j: usize, l: usize) -> &RationalFunction {
        &self.h[(j - 1) * self.m + l - 1]
    }

    /// `L^j_{a,b}`.
    pub fn l(&self, j: usize, a: usize, b: usize) -> &RationalFunction {
        &self.l[((j - 1) * self.m + a - 1) * self.m + b - 1]
    }

    /// `M_{a,b}`.
    pub fn mm(&self, a: usize, b: usize) -> &RationalFunction {
        &self.mm[(a - 1) * self.m + b - 1]
    }

    pub fn set_g(&mut self, j: usize, v: RationalFunction) {
        self.g[j - 1] = v;
    }

    pub fn set_h(&mut self, j: usize, l: usize, v: RationalFunction) {
        let m = self.m;
        self.h[(j - 1) * m + l - 1] = v;
    }

    pub fn set_l(&mut self, j: usize, a: usize, b: usize, v: RationalFunction) {
        let m = self.m;
        self.l[((j - 1) * m + b - 1) * m + a - 1] = v.clone();
        self.l[((j - 1) * m + a - 1) * m + b - 1] = v;
    }

    pub fn set_mm(&mut self, a: usize, b: usize, v: RationalFunction) {
        let m = self.m;
        self.mm[(b - 1) * m + a - 1] = v.clone();
        self.mm[(a - 1) * m + b - 1] = v;
    }

    /// Every stored entry.
    pub fn entries(&self) -> impl Iterator<Item = &RationalFunction> {
        self.g.iter().chain(&self.h).chain(&self.l).chain(&self.mm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// Some `F^j` has degree above three in `y_x`.
    DegreeExceeded,
    /// A cubic monomial without `y_x^j` occurs in `F^j`.
    ForbiddenCubic,
    /// The cubic coefficients do not come from a single symmetric `M`.
    InconsistentM,
}

/// Why a system fails to have the cubic structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDiagnostic {
    pub kind: DiagnosticKind,
    /// The equation index.
    pub j: usize,
    /// The `y_x` indices of the offending monomial, with multiplicity.
    pub indices: Vec<usize>,
    /// The offending coefficient (for `InconsistentM`, its difference from
    /// the value implied by `F^1`).
    pub residual: RationalFunction,
}

impl fmt::Display for StructureDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            DiagnosticKind::DegreeExceeded => "DegreeExceeded",
            DiagnosticKind::ForbiddenCubic => "ForbiddenCubic",
            DiagnosticKind::InconsistentM => "InconsistentM",
        };
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{what} at ({};{}): residual {}", self.j, idx.join(","), self.residual)
    }
}

fn jet1_indices(mono: &Monomial) -> Vec<usize> {
    let mut out = Vec::new();
    for (v, e) in mono.support() {
        for _ in 0..e {
            out.push(v.index());
        }
    }
    out
}

fn jet1_mono(indices: &[usize]) -> Monomial {
    indices
        .iter()
        .fold(Monomial::one(), |acc, &i| acc.mul(&Monomial::var(VariableId::Jet1(i as u8))))
}

/// Reads off `(G, H, L, M)`, or explains why `F` is not of the cubic form.
pub fn extract_decomposition(sys: &OdeSystem) -> Result<CubicDecomposition, StructureDiagnostic> {
    let m = sys.m();
    let coeffs: Vec<BTreeMap<Monomial, RationalFunction>> = sys
        .rhs()
        .iter()
        .map(|f| {
            f.coefficients_in(VariableId::is_jet1)
                .expect("system denominators are free of y_x")
        })
        .collect();

    for (j, cj) in coeffs.iter().enumerate() {
        if let Some((mono, c)) = cj.iter().find(|(mono, _)| mono.degree() > 3) {
            return Err(StructureDiagnostic {
                kind: DiagnosticKind::DegreeExceeded,
                j: j + 1,
                indices: jet1_indices(mono),
                residual: c.clone(),
            });
        }
    }

    let half = Q::new(1, 2);
    let mut d = CubicDecomposition::zero(m);
    for (j0, cj) in coeffs.iter().enumerate() {
        let j = j0 + 1;
        for (mono, c) in cj {
            let idx = jet1_indices(mono);
            match idx.as_slice() {
                [] => d.set_g(j, c.clone()),
                [l] => d.set_h(j, *l, c.clone()),
                [a, b] if a == b => d.set_l(j, *a, *b, c.clone()),
                [a, b] => d.set_l(j, *a, *b, c.scale(&half)),
                _ => {}
            }
        }
    }

    let cubic = |j: usize, idx: &[usize]| -> RationalFunction {
        coeffs[j - 1]
            .get(&jet1_mono(idx))
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    };

    if m == 1 {
        d.set_mm(1, 1, cubic(1, &[1, 1, 1]));
        return Ok(d);
    }

    for (j0, cj) in coeffs.iter().enumerate() {
        let j = j0 + 1;
        for (mono, c) in cj {
            if mono.degree() == 3 && mono.exp(VariableId::Jet1(j as u8)) == 0 {
                return Err(StructureDiagnostic {
                    kind: DiagnosticKind::ForbiddenCubic,
                    j,
                    indices: jet1_indices(mono),
                    residual: c.clone(),
                });
            }
        }
    }

    // The monomial y_x^j·y_x^a·y_x^b of F^j carries M_aa when a = b and
    // 2·M_ab otherwise, independently of j.
    for a in 1..=m {
        for b in a..=m {
            let mut reference: Option<RationalFunction> = None;
            for j in 1..=m {
                let mut idx = vec![a, b, j];
                idx.sort_unstable();
                let value = cubic(j, &idx);
                match &reference {
                    None => reference = Some(value),
                    Some(r) if r.equals(&value) => {}
                    Some(r) => {
                        return Err(StructureDiagnostic {
                            kind: DiagnosticKind::InconsistentM,
                            j,
                            indices: idx,
                            residual: &value - r,
                        })
                    }
                }
            }
            let q = reference.expect("m >= 1");
            d.set_mm(a, b, if a == b { q } else { q.scale(&half) });
        }
    }
    Ok(d)
}

/// `F^j = G^j + Σ y_x^a H^j_a + ΣΣ y_x^a y_x^b L^j_{ab} + y_x^j ΣΣ y_x^a y_x^b M_{ab}`.
pub fn reassemble(d: &CubicDecomposition) -> OdeSystem {
    let m = d.m;
    let mut quad_m = RationalFunction::zero();
    for a in 1..=m {
        for b in 1..=m {
            quad_m = &quad_m + &(&(&jet1(a) * &jet1(b)) * d.mm(a, b));
        }
    }
    let rhs = (1..=m)
        .map(|j| {
            let mut f = d.g(j).clone();
            for a in 1..=m {
                f = &f + &(&jet1(a) * d.h(j, a));
                for b in 1..=m {
                    f = &f + &(&(&jet1(a) * &jet1(b)) * d.l(j, a, b));
                }
            }
            &f + &(&jet1(j) * &quad_m)
        })
        .collect();
    OdeSystem::new(rhs).expect("decomposition entries are free of jets")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rhs: Vec<RationalFunction>) -> OdeSystem {
        OdeSystem::new(rhs).unwrap()
    }

    fn p(a: &RationalFunction, e: i32) -> RationalFunction {
        a.pow(e).unwrap()
    }

    #[test]
    fn m1_rational_l() {
        let y = RationalFunction::var(VariableId::Dep(1));
        let den = &RationalFunction::one() - &y;
        let f = (&p(&jet1(1), 2) * &RationalFunction::int(-2)).checked_div(&den).unwrap();
        let d = extract_decomposition(&sys(vec![f])).unwrap();
        assert_eq!(d.l(1, 1, 1), &RationalFunction::int(-2).checked_div(&den).unwrap());
        assert!(d.g(1).is_zero() && d.h(1, 1).is_zero() && d.mm(1, 1).is_zero());
    }

    #[test]
    fn m2_examples() {
        let f1 = &jet1(1) * &p(&jet1(2), 2);
        let f2 = p(&jet1(2), 3);
        let d = extract_decomposition(&sys(vec![f1.clone(), f2.clone()])).unwrap();
        assert_eq!(d.mm(2, 2), &RationalFunction::one());
        assert!(d.mm(1, 1).is_zero() && d.mm(1, 2).is_zero());
        assert_eq!(reassemble(&d), sys(vec![f1.clone(), f2.clone()]));

        let e = extract_decomposition(&sys(vec![f2.clone(), RationalFunction::zero()])).unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::ForbiddenCubic);
        assert_eq!((e.j, e.indices.as_slice()), (1, &[2, 2, 2][..]));

        let e = extract_decomposition(&sys(vec![f1, RationalFunction::zero()])).unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::InconsistentM);
        assert!(!e.residual.is_zero());

        let e = extract_decomposition(&sys(vec![p(&jet1(1), 4), RationalFunction::zero()])).unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::DegreeExceeded);
    }

    #[test]
    fn mixed_monomial_halves() {
        // F^1 = 3 y_x^1 y_x^2 + y_x^1 (2 y_x^1 y_x^2), F^2 = y_x^2 (2 y_x^1 y_x^2)
        let f1 = &(&(&jet1(1) * &jet1(2)) * &RationalFunction::int(3))
            + &(&(&p(&jet1(1), 2) * &jet1(2)) * &RationalFunction::int(2));
        let f2 = &(&jet1(1) * &p(&jet1(2), 2)) * &RationalFunction::int(2);
        let s = sys(vec![f1, f2]);
        let d = extract_decomposition(&s).unwrap();
        assert_eq!(d.l(1, 1, 2), &RationalFunction::constant(Q::new(3, 2)));
        assert_eq!(d.l(1, 2, 1), d.l(1, 1, 2));
        assert_eq!(d.mm(1, 2), &RationalFunction::one());
        assert_eq!(reassemble(&d), s);
    }
}
