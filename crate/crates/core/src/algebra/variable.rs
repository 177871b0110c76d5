//! Jet-space coordinates.

use std::fmt;

/// Largest number of dependent variables supported by the fixed-width
/// exponent vectors.
pub const MAX_M: usize = 4;

/// Number of variable slots: `x`, then `y^j`, `y_x^j` and `y_xx^j` for
/// `j = 1..=MAX_M`.
pub const NVARS: usize = 1 + 3 * MAX_M;

/// A coordinate of the second-order jet space.
///
/// The derived ordering is `Base < Dep(1) < … < Dep(m) < Jet1(1) < … < Jet2(m)`.
/// Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VariableId {
    /// The independent variable `x` (also written `y^0`).
    Base,
    /// `y^j`.
    Dep(u8),
    /// `y_x^j`.
    Jet1(u8),
    /// `y_xx^j`; only meaningful inside total derivatives.
    Jet2(u8),
}

impl VariableId {
    /// Index-0 convention: `0 ↦ x`, `l ↦ y^l`.
    pub fn coordinate(l: usize) -> VariableId {
        if l == 0 {
            VariableId::Base
        } else {
            VariableId::Dep(l as u8)
        }
    }

    pub fn slot(self) -> usize {
        match self {
            VariableId::Base => 0,
            VariableId::Dep(j) => j as usize,
            VariableId::Jet1(j) => MAX_M + j as usize,
            VariableId::Jet2(j) => 2 * MAX_M + j as usize,
        }
    }

    pub fn from_slot(slot: usize) -> VariableId {
        assert!(slot < NVARS, "variable slot out of range");
        match slot {
            0 => VariableId::Base,
            s if s <= MAX_M => VariableId::Dep(s as u8),
            s if s <= 2 * MAX_M => VariableId::Jet1((s - MAX_M) as u8),
            s => VariableId::Jet2((s - 2 * MAX_M) as u8),
        }
    }

    /// The 1-based index, or 0 for `x`.
    pub fn index(self) -> usize {
        match self {
            VariableId::Base => 0,
            VariableId::Dep(j) | VariableId::Jet1(j) | VariableId::Jet2(j) => j as usize,
        }
    }

    pub fn is_jet1(self) -> bool {
        matches!(self, VariableId::Jet1(_))
    }

    pub fn is_jet2(self) -> bool {
        matches!(self, VariableId::Jet2(_))
    }

    pub fn is_jet(self) -> bool {
        self.is_jet1() || self.is_jet2()
    }

    /// Whether the index is admissible for a system with `m` dependent variables.
    pub fn fits(self, m: usize) -> bool {
        let j = self.index();
        match self {
            VariableId::Base => true,
            _ => (1..=m).contains(&j),
        }
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableId::Base => write!(f, "x"),
            VariableId::Dep(j) => write!(f, "y{j}"),
            VariableId::Jet1(j) => write!(f, "yx{j}"),
            VariableId::Jet2(j) => write!(f, "yxx{j}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_follow_ordering() {
        let mut prev = None;
        for s in 0..NVARS {
            let v = VariableId::from_slot(s);
            assert_eq!(v.slot(), s);
            if let Some(p) = prev {
                assert!(p < v);
            }
            prev = Some(v);
        }
    }
}
