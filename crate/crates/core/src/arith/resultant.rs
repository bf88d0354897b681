use num_traits::{One, Zero};

use super::linalg::Matrix;
use super::{ArithError, MultiPoly, Rational, Var};

/// Coefficients `[c_0, ..., c_deg]` of a polynomial in at most one variable.
/// Returns the variable too, if there is one.
pub fn univariate_coeffs(p: &MultiPoly) -> Result<(Option<Var>, Vec<Rational>), ArithError> {
    let vars = p.vars();
    if vars.len() > 1 {
        return Err(ArithError::NotUnivariate(
            vars.iter().map(|v| v.name().to_string()).collect(),
        ));
    }
    match vars.into_iter().next() {
        None => Ok((None, vec![p.constant_term()])),
        Some(v) => {
            let coeffs = p
                .coeffs_in(&v)
                .iter()
                .map(|c| c.constant_term())
                .collect();
            Ok((Some(v), coeffs))
        }
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), size (m+n)x(m+n).
/// Coefficient vectors are given lowest degree first.
pub fn sylvester_matrix(f: &[Rational], g: &[Rational]) -> Matrix {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s.set(i, i + k, c.clone());
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s.set(n + i, i + k, c.clone());
        }
    }
    s
}

/// Resultant of two univariate polynomials in the same variable, as the
/// Sylvester determinant. Nonzero iff the two have no common root over the
/// algebraic closure.
///
/// A zero polynomial shares every root, so `Res(0, g)` is `0` unless `g` is a
/// nonzero constant, which has no roots and gives `1`.
pub fn univariate_resultant(f: &MultiPoly, g: &MultiPoly) -> Result<Rational, ArithError> {
    if f.is_zero() && g.is_zero() {
        return Err(ArithError::BothZero);
    }
    let mut vars = f.vars();
    vars.extend(g.vars());
    if vars.len() > 1 {
        return Err(ArithError::NotUnivariate(
            vars.iter().map(|v| v.name().to_string()).collect(),
        ));
    }
    if f.is_zero() || g.is_zero() {
        let other = if f.is_zero() { g } else { f };
        return Ok(if other.is_constant() { Rational::one() } else { Rational::zero() });
    }
    let (_, fc) = univariate_coeffs(f)?;
    let (_, gc) = univariate_coeffs(g)?;
    if fc.len() == 1 && gc.len() == 1 {
        return Ok(Rational::one());
    }
    Ok(sylvester_matrix(&fc, &gc).determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn distinct_linear_factors() {
        assert_eq!(univariate_resultant(&p("x"), &p("x - 1")).unwrap(), int(-1));
    }

    #[test]
    fn shared_root() {
        assert_eq!(univariate_resultant(&p("x^2"), &p("x")).unwrap(), int(0));
    }

    #[test]
    fn sylvester_oracle_for_quadratics() {
        // Res(x^2+1, x^2-2) = Π over roots ±i of (x^2-2) = (-3)(-3) = 9.
        let res = univariate_resultant(&p("x^2 + 1"), &p("x^2 - 2")).unwrap();
        assert_eq!(res, int(9));
        let by_hand = Matrix::from_rows(vec![
            vec![int(1), int(0), int(1), int(0)],
            vec![int(0), int(1), int(0), int(1)],
            vec![int(1), int(0), int(-2), int(0)],
            vec![int(0), int(1), int(0), int(-2)],
        ]);
        assert_eq!(by_hand.determinant(), res);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            univariate_resultant(&MultiPoly::zero(), &MultiPoly::zero()),
            Err(ArithError::BothZero)
        );
        assert_eq!(univariate_resultant(&MultiPoly::zero(), &p("x")).unwrap(), int(0));
        assert_eq!(univariate_resultant(&MultiPoly::zero(), &p("3")).unwrap(), int(1));
        assert_eq!(univariate_resultant(&p("2"), &p("x^3 + 1")).unwrap(), int(8));
        assert!(matches!(
            univariate_resultant(&p("x"), &p("y")),
            Err(ArithError::NotUnivariate(_))
        ));
    }
}
