use num_traits::One;

use super::{int, MultiPoly, PolyT, Rational};

/// `C(t+n, n) = (t+n)(t+n-1)...(t+1) / n!`.
pub fn binomial_poly(n: u32) -> PolyT {
    let t = MultiPoly::var(PolyT::VAR);
    let mut acc = MultiPoly::one();
    let mut fact = Rational::one();
    for k in 1..=n {
        acc = &acc * &(&t + &MultiPoly::int(k as i64));
        fact *= int(k as i64);
    }
    PolyT::new(acc.scale(&fact.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_cases() {
        assert_eq!(binomial_poly(0).into_poly(), MultiPoly::one());
        assert_eq!(
            binomial_poly(2).to_string(),
            "(1/2)*t^2 + (3/2)*t + 1"
        );
    }

    #[test]
    fn degree_five_leading_coefficient() {
        let b = binomial_poly(5);
        assert_eq!(b.degree(), 5);
        assert_eq!(b.coeff(5).constant_value(), Some(rat(1, 120)));
    }

    #[test]
    fn integer_valued_on_window() {
        for n in 0..=8u32 {
            let b = binomial_poly(n);
            for k in -(n as i64)..=20 {
                let v = b.as_poly().eval_at("t", &int(k)).unwrap();
                assert!(v.is_integer(), "C(t+{n},{n}) at t={k} = {v}");
            }
        }
    }
}
