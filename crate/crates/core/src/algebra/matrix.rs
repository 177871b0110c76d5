//! Determinants of small matrices of rational functions.

use super::error::AlgebraError;
use super::polynomial::Polynomial;
use super::rational_function::RationalFunction;

/// A row-major square matrix.
pub type Matrix = Vec<Vec<RationalFunction>>;

fn check_square(mat: &[Vec<RationalFunction>]) -> Result<usize, AlgebraError> {
    let n = mat.len();
    if n == 0 || mat.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::NotSquare);
    }
    Ok(n)
}

/// Exact determinant by fraction-free Bareiss elimination.
///
/// Each column is first cleared of denominators, so elimination runs over
/// polynomials and every Bareiss quotient is an exact polynomial division.
pub fn determinant(mat: &[Vec<RationalFunction>]) -> Result<RationalFunction, AlgebraError> {
    let n = check_square(mat)?;
    if n == 1 {
        return Ok(mat[0][0].clone());
    }
    let mut den_factors = Vec::new();
    let mut a: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(n); n];
    for c in 0..n {
        let common = RationalFunction::common_denominator(mat.iter().map(|row| &row[c]));
        for r in 0..n {
            a[r].push(mat[r][c].numerator_over(&common));
        }
        den_factors.extend(common);
    }
    let det = bareiss(a);
    Ok(RationalFunction::from_factored(det, den_factors))
}

fn bareiss(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Prefer the sparsest nonzero pivot below.
            let swap = (k + 1..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].len());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = if prev.is_one() {
                    t
                } else {
                    t.div_exact(&prev).expect("Bareiss quotient is exact")
                };
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Determinant by Laplace expansion along the first row. Exponential in `n`;
/// kept as an independent check on [`determinant`].
pub fn determinant_cofactor(mat: &[Vec<RationalFunction>]) -> Result<RationalFunction, AlgebraError> {
    let n = check_square(mat)?;
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor(mat, 0, &cols))
}

fn cofactor(mat: &[Vec<RationalFunction>], row: usize, cols: &[usize]) -> RationalFunction {
    if cols.len() == 1 {
        return mat[row][cols[0]].clone();
    }
    let mut acc = RationalFunction::zero();
    for (i, &c) in cols.iter().enumerate() {
        if mat[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
        let term = &mat[row][c] * &cofactor(mat, row + 1, &rest);
        acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VariableId;

    fn rf(n: i64) -> RationalFunction {
        RationalFunction::int(n)
    }

    #[test]
    fn small_cases() {
        let x = RationalFunction::var(VariableId::Base);
        let m = vec![vec![rf(1), rf(0)], vec![&x * &rf(2), rf(2)]];
        assert_eq!(determinant(&m).unwrap(), rf(2));
        for n in 1..=5 {
            let id: Matrix = (0..n)
                .map(|i| (0..n).map(|j| rf((i == j) as i64)).collect())
                .collect();
            assert_eq!(determinant(&id).unwrap(), rf(1));
        }
    }

    #[test]
    fn zero_pivot_and_equal_columns() {
        let y = RationalFunction::var(VariableId::Dep(1));
        let m = vec![vec![rf(0), rf(1)], vec![rf(1), y.clone()]];
        assert_eq!(determinant(&m).unwrap(), rf(-1));
        let inv = (&rf(1) - &y).inverse().unwrap();
        let m = vec![
            vec![inv.clone(), inv.clone(), rf(3)],
            vec![y.clone(), y.clone(), rf(1)],
            vec![rf(2), rf(2), inv],
        ];
        assert!(determinant(&m).unwrap().is_zero());
    }

    #[test]
    fn not_square() {
        assert_eq!(determinant(&[vec![rf(1), rf(2)]]), Err(AlgebraError::NotSquare));
        assert_eq!(determinant(&[]), Err(AlgebraError::NotSquare));
    }
}
