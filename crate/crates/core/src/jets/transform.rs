use std::collections::BTreeMap;

use crate::algebra::{determinant, AlgebraError, Matrix, RationalFunction, VariableId, Q};
use crate::decomposition::CubicDecomposition;
use crate::error::{Error, Result};

use super::{check_dimension, check_variables, jet1, total_derivative, OdeSystem};

/// A point transformation `(x, y) ↦ (X, Y)` together with the base point at
/// which it is required to be invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointTransformation {
    m: usize,
    /// `X, Y^1, …, Y^m`.
    comps: Vec<RationalFunction>,
    base_point: Vec<Q>,
}

impl PointTransformation {
    /// The base point defaults to the origin.
    pub fn new(
        x: RationalFunction,
        y: Vec<RationalFunction>,
        base_point: Option<Vec<Q>>,
    ) -> Result<PointTransformation> {
        let m = y.len();
        check_dimension(m)?;
        let base_point = base_point.unwrap_or_else(|| vec![Q::zero(); m + 1]);
        if base_point.len() != m + 1 {
            return Err(Error::InvalidInput(format!(
                "base point needs {} coordinates, got {}",
                m + 1,
                base_point.len()
            )));
        }
        let mut comps = Vec::with_capacity(m + 1);
        comps.push(x);
        comps.extend(y);
        for (k, c) in comps.iter().enumerate() {
            check_variables(c, m)?;
            if c.any_var(VariableId::is_jet) {
                let label = if k == 0 { "X".to_string() } else { format!("Y{k}") };
                return Err(Error::JetInTransform(label));
            }
        }
        let t = PointTransformation { m, comps, base_point };
        let point: BTreeMap<VariableId, Q> = t
            .base_point
            .iter()
            .enumerate()
            .map(|(l, q)| (VariableId::coordinate(l), q.clone()))
            .collect();
        for c in &t.comps {
            c.evaluate(&point).map_err(|_| Error::PoleAtBasePoint)?;
        }
        match t.jacobian_delta().evaluate(&point) {
            Ok(v) if v.is_zero() => Err(Error::SingularJacobianAtBasePoint),
            Ok(_) => Ok(t),
            Err(AlgebraError::EvaluationPole) => Err(Error::PoleAtBasePoint),
            Err(e) => Err(e.into()),
        }
    }

    pub fn identity(m: usize) -> PointTransformation {
        let comps = (0..=m).map(|l| RationalFunction::var(VariableId::coordinate(l))).collect();
        PointTransformation {
            m,
            comps,
            base_point: vec![Q::zero(); m + 1],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x(&self) -> &RationalFunction {
        &self.comps[0]
    }

    /// `Y^j`, 1-based.
    pub fn y(&self, j: usize) -> &RationalFunction {
        &self.comps[j]
    }

    /// Component `k`, with `0 ↦ X`.
    pub fn component(&self, k: usize) -> &RationalFunction {
        &self.comps[k]
    }

    pub fn base_point(&self) -> &[Q] {
        &self.base_point
    }

    /// Rows are the components `X, Y^1, …`; column `l` holds `∂/∂y^l`
    /// (`y^0 = x`).
    pub fn jacobian_matrix(&self) -> Matrix {
        self.comps
            .iter()
            .map(|c| {
                (0..=self.m)
                    .map(|l| c.derivative(VariableId::coordinate(l)))
                    .collect()
            })
            .collect()
    }

    /// `Δ(x|y^1|…|y^m)`.
    pub fn jacobian_delta(&self) -> RationalFunction {
        determinant(&self.jacobian_matrix()).expect("square")
    }

    /// The Jacobian determinant with column `k` replaced by the second
    /// derivatives `∂²/∂y^{l1}∂y^{l2}` of the components.
    pub fn modified_delta(&self, k: usize, l1: usize, l2: usize) -> RationalFunction {
        let mut mat = self.jacobian_matrix();
        let (v1, v2) = (VariableId::coordinate(l1), VariableId::coordinate(l2));
        for (row, c) in mat.iter_mut().zip(&self.comps) {
            row[k] = c.derivative(v1).derivative(v2);
        }
        determinant(&mat).expect("square")
    }
}

/// The table `□^k_{l1,l2}`, `k, l1, l2 ∈ 0..=m`, index 0 standing for `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFunctions {
    m: usize,
    table: Vec<RationalFunction>,
}

impl SquareFunctions {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, k: usize, l1: usize, l2: usize) -> &RationalFunction {
        let n = self.m + 1;
        &self.table[(k * n + l1) * n + l2]
    }
}

pub fn square_functions(t: &PointTransformation) -> Result<SquareFunctions> {
    let delta = t.jacobian_delta();
    if delta.is_zero() {
        return Err(Error::DegenerateTransformation);
    }
    let n = t.m + 1;
    let mut table = vec![RationalFunction::zero(); n * n * n];
    for k in 0..n {
        for l1 in 0..n {
            for l2 in l1..n {
                let value = t.modified_delta(k, l1, l2).checked_div(&delta)?;
                table[(k * n + l2) * n + l1] = value.clone();
                table[(k * n + l1) * n + l2] = value;
            }
        }
    }
    Ok(SquareFunctions { m: t.m, table })
}

fn kron(a: usize, b: usize) -> bool {
    a == b
}

/// The induced system written through the square functions.
pub fn induced_system_from_squares(sq: &SquareFunctions) -> OdeSystem {
    let m = sq.m;
    let s = |k, a, b| sq.get(k, a, b);
    let mut cubic = RationalFunction::zero();
    for l1 in 1..=m {
        for l2 in 1..=m {
            cubic = &cubic + &(&(&jet1(l1) * &jet1(l2)) * s(0, l1, l2));
        }
    }
    let rhs = (1..=m)
        .map(|j| {
            let mut acc = s(j, 0, 0).clone();
            for l1 in 1..=m {
                let mut c = s(j, 0, l1).scale(&Q::from_int(2));
                if kron(j, l1) {
                    c = &c - s(0, 0, 0);
                }
                acc = &acc + &(&jet1(l1) * &c);
            }
            for l1 in 1..=m {
                for l2 in 1..=m {
                    let mut c = s(j, l1, l2).clone();
                    if kron(j, l1) {
                        c = &c - s(0, 0, l2);
                    }
                    if kron(j, l2) {
                        c = &c - s(0, 0, l1);
                    }
                    acc = &acc + &(&(&jet1(l1) * &jet1(l2)) * &c);
                }
            }
            acc = &acc - &(&jet1(j) * &cubic);
            -acc
        })
        .collect();
    OdeSystem::new(rhs).expect("square functions are free of jets")
}

/// The coefficient tensors of the induced system read off the square
/// functions.
pub fn decomposition_from_squares(sq: &SquareFunctions) -> CubicDecomposition {
    let m = sq.m;
    let s = |k, a, b| sq.get(k, a, b);
    let mut d = CubicDecomposition::zero(m);
    for j in 1..=m {
        d.set_g(j, -s(j, 0, 0));
        for l1 in 1..=m {
            let mut h = s(j, 0, l1).scale(&Q::from_int(-2));
            if kron(j, l1) {
                h = &h + s(0, 0, 0);
            }
            d.set_h(j, l1, h);
            for l2 in l1..=m {
                let mut l = -s(j, l1, l2);
                if kron(j, l1) {
                    l = &l + s(0, 0, l2);
                }
                if kron(j, l2) {
                    l = &l + s(0, 0, l1);
                }
                d.set_l(j, l1, l2, l);
            }
        }
    }
    for l1 in 1..=m {
        for l2 in l1..=m {
            d.set_mm(l1, l2, s(0, l1, l2).clone());
        }
    }
    d
}

pub fn decomposition_from_transform(t: &PointTransformation) -> Result<CubicDecomposition> {
    Ok(decomposition_from_squares(&square_functions(t)?))
}

/// Eliminates `y_xx` from `DDY^j·DX − DDX·DY^j = 0` by Cramer's rule.
pub fn induced_system_cramer(t: &PointTransformation) -> Result<OdeSystem> {
    let m = t.m;
    let dx = total_derivative(t.x())?;
    let ddx = total_derivative(&dx)?;
    let jet2_zero: BTreeMap<VariableId, RationalFunction> = (1..=m)
        .map(|l| (VariableId::Jet2(l as u8), RationalFunction::zero()))
        .collect();
    let mut a = Vec::with_capacity(m);
    let mut b: Matrix = Vec::with_capacity(m);
    for j in 1..=m {
        let dy = total_derivative(t.y(j))?;
        let ddy = total_derivative(&dy)?;
        let e = &(&ddy * &dx) - &(&ddx * &dy);
        a.push(e.substitute(&jet2_zero)?);
        b.push(
            (1..=m)
                .map(|l| e.derivative(VariableId::Jet2(l as u8)))
                .collect(),
        );
    }
    // det B = Δ·(DX)^(m-1). Both Cramer numerators and det B are divided by
    // (DX)^(m-1) first: the denominators are never factored, so the common
    // power of DX would otherwise survive in the quotient.
    let dx_pow = dx.pow(m as i32 - 1)?;
    let det_b = determinant(&b)?.checked_div(&dx_pow)?;
    if det_b.is_zero() {
        return Err(Error::DegenerateTransformation);
    }
    let mut rhs = Vec::with_capacity(m);
    for j in 0..m {
        let mut bj = b.clone();
        for (row, aj) in bj.iter_mut().zip(&a) {
            row[j] = aj.clone();
        }
        let num = determinant(&bj)?.checked_div(&dx_pow)?;
        rhs.push(-num.checked_div(&det_b)?);
    }
    OdeSystem::new(rhs)
}

/// The system satisfied by the preimages of straight lines. Computed from the
/// square functions and confirmed by direct elimination.
pub fn induced_system(t: &PointTransformation) -> Result<OdeSystem> {
    let assembled = induced_system_from_squares(&square_functions(t)?);
    let eliminated = induced_system_cramer(t)?;
    for j in 1..=t.m {
        if !assembled.f(j).equals(eliminated.f(j)) {
            return Err(Error::CramerMismatch(j));
        }
    }
    Ok(assembled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RationalFunction {
        RationalFunction::var(VariableId::Base)
    }
    fn y(j: u8) -> RationalFunction {
        RationalFunction::var(VariableId::Dep(j))
    }

    fn shear() -> PointTransformation {
        PointTransformation::new(x(), vec![&y(1) + &(&x() * &x())], None).unwrap()
    }

    fn moebius() -> PointTransformation {
        let yy = y(1).checked_div(&(&RationalFunction::one() - &y(1))).unwrap();
        PointTransformation::new(x(), vec![yy], None).unwrap()
    }

    #[test]
    fn identity_is_trivial() {
        for m in 1..=3 {
            let t = PointTransformation::identity(m);
            assert_eq!(t.jacobian_delta(), RationalFunction::one());
            let sq = square_functions(&t).unwrap();
            for k in 0..=m {
                for a in 0..=m {
                    for b in 0..=m {
                        assert!(sq.get(k, a, b).is_zero());
                    }
                }
            }
            assert_eq!(induced_system(&t).unwrap(), OdeSystem::flat(m));
        }
    }

    #[test]
    fn shear_example() {
        let t = shear();
        assert_eq!(t.modified_delta(1, 0, 0), RationalFunction::int(2));
        let sq = square_functions(&t).unwrap();
        assert_eq!(sq.get(1, 0, 0), &RationalFunction::int(2));
        assert_eq!(induced_system(&t).unwrap().f(1), &RationalFunction::int(-2));
        let d = decomposition_from_transform(&t).unwrap();
        assert_eq!(d.g(1), &RationalFunction::int(-2));
        assert!(d.h(1, 1).is_zero() && d.l(1, 1, 1).is_zero() && d.mm(1, 1).is_zero());
    }

    #[test]
    fn moebius_example() {
        let t = moebius();
        let one = RationalFunction::one();
        let sq = square_functions(&t).unwrap();
        let two_over = RationalFunction::int(2).checked_div(&(&one - &y(1))).unwrap();
        assert_eq!(sq.get(1, 1, 1), &two_over);
        assert!(sq.get(1, 0, 0).is_zero() && sq.get(0, 1, 1).is_zero());
        let d = decomposition_from_transform(&t).unwrap();
        assert_eq!(d.l(1, 1, 1), &-two_over);
        let f = induced_system(&t).unwrap();
        let expected = (&(&jet1(1) * &jet1(1)) * &RationalFunction::int(-2))
            .checked_div(&(&one - &y(1)))
            .unwrap();
        assert_eq!(f.f(1), &expected);
    }

    #[test]
    fn quadratic_shear_m2() {
        let t = PointTransformation::new(x(), vec![y(1), &y(2) + &(&y(1) * &y(1))], None).unwrap();
        let f = induced_system(&t).unwrap();
        assert!(f.f(1).is_zero());
        assert_eq!(f.f(2), &(&(&jet1(1) * &jet1(1)) * &RationalFunction::int(-2)));
    }

    #[test]
    fn base_point_validation() {
        let sq = &y(1) * &y(1);
        assert_eq!(
            PointTransformation::new(x(), vec![sq.clone()], None),
            Err(Error::SingularJacobianAtBasePoint)
        );
        assert!(PointTransformation::new(x(), vec![sq], Some(vec![Q::zero(), Q::one()])).is_ok());
        let pole = RationalFunction::one().checked_div(&(&RationalFunction::one() - &y(1))).unwrap();
        assert_eq!(
            PointTransformation::new(x(), vec![pole], Some(vec![Q::zero(), Q::one()])),
            Err(Error::PoleAtBasePoint)
        );
        assert_eq!(
            PointTransformation::new(x(), vec![jet1(1)], None),
            Err(Error::JetInTransform("Y1".into()))
        );
    }
}
