//! Jets of point transformations: total derivatives, square functions,
//! induced systems and second prolongations.

mod prolong;
mod transform;

use crate::algebra::{RationalFunction, VariableId, MAX_M};
use crate::error::{Error, Result};

pub use prolong::{prolong2, ProlongedVectorField, VectorField};
pub use transform::{
    decomposition_from_squares, decomposition_from_transform, induced_system, induced_system_cramer,
    induced_system_from_squares, square_functions, PointTransformation, SquareFunctions,
};

pub(crate) fn check_dimension(m: usize) -> Result<()> {
    if (1..=MAX_M).contains(&m) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(m))
    }
}

/// Rejects variables with an index beyond `m`.
pub(crate) fn check_variables(f: &RationalFunction, m: usize) -> Result<()> {
    match f.variables().into_iter().find(|v| !v.fits(m)) {
        Some(v) => Err(Error::UnknownVariable(v.to_string())),
        None => Ok(()),
    }
}

pub(crate) fn jet1(l: usize) -> RationalFunction {
    RationalFunction::var(VariableId::Jet1(l as u8))
}

pub(crate) fn jet2(l: usize) -> RationalFunction {
    RationalFunction::var(VariableId::Jet2(l as u8))
}

/// A system `y_xx^j = F^j(x, y, y_x)`, `j = 1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeSystem {
    m: usize,
    rhs: Vec<RationalFunction>,
}

impl OdeSystem {
    /// Validates that no `y_xx` occurs and that every denominator is free of
    /// `y_x`.
    pub fn new(rhs: Vec<RationalFunction>) -> Result<OdeSystem> {
        let m = rhs.len();
        check_dimension(m)?;
        for (i, f) in rhs.iter().enumerate() {
            check_variables(f, m)?;
            if let Some(v) = f.variables().into_iter().find(|v| v.is_jet2()) {
                return Err(Error::JetNotAllowed(v.to_string()));
            }
            if f.denominator_any_var(VariableId::is_jet1) {
                return Err(Error::JetInDenominator(format!("F{}", i + 1)));
            }
        }
        Ok(OdeSystem { m, rhs })
    }

    /// The free particle system `y_xx^j = 0`.
    pub fn flat(m: usize) -> OdeSystem {
        OdeSystem {
            m,
            rhs: vec![RationalFunction::zero(); m],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rhs(&self) -> &[RationalFunction] {
        &self.rhs
    }

    /// `F^j`, 1-based.
    pub fn f(&self, j: usize) -> &RationalFunction {
        &self.rhs[j - 1]
    }
}

/// `D f = f_x + Σ y_x^l f_{y^l} + Σ y_xx^l f_{y_x^l}`, with `y_xx` left free.
pub fn total_derivative(f: &RationalFunction) -> Result<RationalFunction> {
    let vars = f.variables();
    if let Some(v) = vars.iter().find(|v| v.is_jet2()) {
        return Err(Error::JetNotAllowed(v.to_string()));
    }
    let mut acc = f.derivative(VariableId::Base);
    for v in vars {
        match v {
            VariableId::Dep(l) => acc = &acc + &(&jet1(l as usize) * &f.derivative(v)),
            VariableId::Jet1(l) => acc = &acc + &(&jet2(l as usize) * &f.derivative(v)),
            _ => {}
        }
    }
    Ok(acc)
}

/// Total derivative along the system: `y_xx^l` is replaced by `F^l`.
pub fn total_derivative_along(f: &RationalFunction, sys: &OdeSystem) -> Result<RationalFunction> {
    let df = total_derivative(f)?;
    let bindings = (1..=sys.m())
        .map(|l| (VariableId::Jet2(l as u8), sys.f(l).clone()))
        .collect();
    Ok(df.substitute(&bindings)?)
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

    #[test]
    fn total_derivative_examples() {
        assert_eq!(total_derivative(&x()).unwrap(), RationalFunction::one());
        assert_eq!(total_derivative(&y(1)).unwrap(), jet1(1));
        let f = &jet1(1) * &y(2);
        let expected = &(&jet2(1) * &y(2)) + &(&jet1(1) * &jet1(2));
        assert_eq!(total_derivative(&f).unwrap(), expected);
        assert!(total_derivative(&jet2(1)).is_err());
    }

    #[test]
    fn along_systems() {
        let flat = OdeSystem::flat(1);
        assert!(total_derivative_along(&jet1(1), &flat).unwrap().is_zero());
        let yy = &y(1) * &jet1(1);
        assert_eq!(total_derivative_along(&yy, &flat).unwrap(), &jet1(1) * &jet1(1));
        let one = RationalFunction::one();
        let f = (&(&jet1(1) * &jet1(1)) * &RationalFunction::int(-2))
            .checked_div(&(&one - &y(1)))
            .unwrap();
        let sys = OdeSystem::new(vec![f.clone()]).unwrap();
        assert_eq!(total_derivative_along(&jet1(1), &sys).unwrap(), f);
    }

    #[test]
    fn system_validation() {
        let bad = jet1(1).inverse().unwrap();
        assert_eq!(
            OdeSystem::new(vec![bad]),
            Err(Error::JetInDenominator("F1".into()))
        );
        assert!(matches!(OdeSystem::new(vec![jet2(1)]), Err(Error::JetNotAllowed(_))));
        assert!(matches!(OdeSystem::new(vec![y(2)]), Err(Error::UnknownVariable(_))));
        assert!(matches!(OdeSystem::new(vec![]), Err(Error::UnsupportedDimension(0))));
    }
}
