//! Lie's pair of second-order equations for a single equation.

use crate::algebra::{RationalFunction, VariableId, Q};
use crate::decomposition::CubicDecomposition;

fn dx(f: &RationalFunction) -> RationalFunction {
    f.derivative(VariableId::Base)
}

fn dy(f: &RationalFunction) -> RationalFunction {
    f.derivative(VariableId::Dep(1))
}

fn c(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Coefficient of `L_xx` in the first equation. `-2/3` is what the x ↔ y
/// duality with the second equation (`-2/3 H_yy`) requires; `-1/3` leaves a
/// nonzero residual on induced systems.
pub const LIE1_LXX: (i64, i64) = (-2, 3);

/// `(lie1, lie2)` for `F = G + H y_x + L y_x^2 + M y_x^3`. Only the `m = 1`
/// entries of `d` are read.
pub fn lie_values(d: &CubicDecomposition) -> (RationalFunction, RationalFunction) {
    lie_values_with(d, Q::new(LIE1_LXX.0, LIE1_LXX.1))
}

/// As [`lie_values`] with an explicit `L_xx` coefficient in the first
/// equation.
pub fn lie_values_with(d: &CubicDecomposition, lxx: Q) -> (RationalFunction, RationalFunction) {
    let (g, h, l, m) = (d.g(1), d.h(1, 1), d.l(1, 1, 1), d.mm(1, 1));
    let terms1 = [
        dy(&dy(g)).scale(&c(-2, 1)),
        dy(&dx(h)).scale(&c(4, 3)),
        dx(&dx(l)).scale(&lxx),
        dy(&(g * l)).scale(&c(2, 1)),
        (&dx(g) * m).scale(&c(-2, 1)),
        (g * &dx(m)).scale(&c(-4, 1)),
        (h * &dx(l)).scale(&c(2, 3)),
        (h * &dy(h)).scale(&c(-4, 3)),
    ];
    let terms2 = [
        dy(&dy(h)).scale(&c(-2, 3)),
        dy(&dx(l)).scale(&c(4, 3)),
        dx(&dx(m)).scale(&c(-2, 1)),
        (g * &dy(m)).scale(&c(2, 1)),
        (&dy(g) * m).scale(&c(4, 1)),
        dx(&(h * m)).scale(&c(-2, 1)),
        (&dy(h) * l).scale(&c(-2, 3)),
        (l * &dx(l)).scale(&c(4, 3)),
    ];
    (terms1.into_iter().sum(), terms2.into_iter().sum())
}
