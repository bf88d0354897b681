//! Parametric cohomology of line bundles on P^1 and P^2.
//!
//! Degrees are integer linear forms in a parameter `r` and dimensions are
//! polynomials in `r`, both valid under an explicit [`Assumption`]. Any sign
//! question the assumption cannot settle is an error rather than a guess.
//!
//! Bundles on a smooth conic `C` are tracked as `L^k(m)` through their
//! pullback degree `k·r + 2m` on the normalizing P^1.

mod conic;
mod exact;
mod param;

pub use conic::{
    double_conic_chain, ext_vanishing_claim, family_dimension, tangent_dimension_double_conic,
    CertifiedCase, ConicChainReport, DisplayedDim, InjectivityCertificate,
};
pub use exact::{solve_exact_sequence, ExactSeqSpec, MapFact, SeqTerm, Space};
pub use param::{Assumption, Decision, LinForm, ParamDim, PARAM};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error("sign of {value} is not decided under {assumption}")]
    UndecidableSign { value: String, assumption: String },
    #[error("under-determined: {0}")]
    UnderDetermined(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("negative dimension: {0}")]
    NegativeDimension(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("missing injectivity certificate: {0}")]
    MissingCertificate(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// `L^k ⊗ O_C(m)` on a smooth conic, where `L` pulls back to `O(r)` and
/// `O_C(1)` to `O(2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ConicBundle {
    pub k: i64,
    pub m: i64,
}

impl ConicBundle {
    pub const fn new(k: i64, m: i64) -> Self {
        ConicBundle { k, m }
    }

    /// The line bundle `L`.
    pub const fn l() -> Self {
        ConicBundle::new(1, 0)
    }

    /// `O_C(m)`.
    pub const fn o(m: i64) -> Self {
        ConicBundle::new(0, m)
    }

    /// Restriction of the dualizing sheaf of the double structure, `L^{-1}(-1)`.
    pub const fn omega_restricted() -> Self {
        ConicBundle::new(-1, -1)
    }

    pub fn tensor(&self, o: &ConicBundle) -> ConicBundle {
        ConicBundle::new(self.k + o.k, self.m + o.m)
    }

    pub fn power(&self, e: i64) -> ConicBundle {
        ConicBundle::new(self.k * e, self.m * e)
    }

    /// The bundle `L^a(b/2)` with pullback degree `a·r + b`, if `b` is even.
    pub fn from_pullback(d: LinForm) -> Option<ConicBundle> {
        (d.b % 2 == 0).then(|| ConicBundle::new(d.a, d.b / 2))
    }
}

impl fmt::Display for ConicBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L^{}({})", self.k, self.m)
    }
}

pub fn pullback_degree(c: &ConicBundle) -> LinForm {
    LinForm::new(c.k, 2 * c.m)
}

/// `(h^0, h^1)` of a sheaf on a curve.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CohomPair {
    pub h0: ParamDim,
    pub h1: ParamDim,
}

impl CohomPair {
    pub fn new(h0: ParamDim, h1: ParamDim) -> Self {
        CohomPair { h0, h1 }
    }

    pub fn dims(&self) -> Vec<ParamDim> {
        vec![self.h0.clone(), self.h1.clone()]
    }

    pub fn from_dims(d: &[ParamDim]) -> Option<Self> {
        match d {
            [h0, h1] => Some(CohomPair::new(h0.clone(), h1.clone())),
            _ => None,
        }
    }

    pub fn euler(&self) -> ParamDim {
        &self.h0 - &self.h1
    }
}

impl fmt::Display for CohomPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(h0 = {}, h1 = {})", self.h0, self.h1)
    }
}

fn undecidable(value: &ParamDim, a: &Assumption) -> CohomError {
    CohomError::UndecidableSign { value: value.to_string(), assumption: a.to_string() }
}

/// `h^0, h^1` of `O(d)` on P^1. The two closed forms overlap at `d = -1`, so
/// only `d >= -1` or `d <= -1` has to be decided.
pub fn h_p1(d: LinForm, a: &Assumption) -> Result<CohomPair, CohomError> {
    let plus_one = ParamDim::from(d + LinForm::constant(1));
    let minus = ParamDim::from(-d - LinForm::constant(1));
    let out = if plus_one.decide_nonneg(a) == Decision::Always {
        CohomPair::new(plus_one, ParamDim::zero())
    } else if minus.decide_nonneg(a) == Decision::Always {
        CohomPair::new(ParamDim::zero(), minus)
    } else {
        return Err(undecidable(&ParamDim::from(d), a));
    };
    Ok(CohomPair::new(out.h0.specialize(a), out.h1.specialize(a)))
}

/// `h^0, h^1, h^2` of `O(d)` on P^2. The closed forms overlap on
/// `-2 <= d <= -1`.
pub fn h_p2(d: LinForm, a: &Assumption) -> Result<[ParamDim; 3], CohomError> {
    let x = d.to_poly();
    let out = if ParamDim::from(d + LinForm::constant(2)).decide_nonneg(a) == Decision::Always {
        [ParamDim::binomial2(&(&x + &MultiPoly::int(2))), ParamDim::zero(), ParamDim::zero()]
    } else if ParamDim::from(-d - LinForm::constant(1)).decide_nonneg(a) == Decision::Always {
        [ParamDim::zero(), ParamDim::zero(), ParamDim::binomial2(&(&(-&x) - &MultiPoly::one()))]
    } else {
        return Err(undecidable(&ParamDim::from(d), a));
    };
    Ok(out.map(|p| p.specialize(a)))
}

/// Determinant degrees in `0 -> left -> middle -> right -> 0`, where the
/// middle is a direct sum. Exactly one of the three must be missing; the
/// missing one is returned.
pub fn det_degree_solve(
    left: Option<LinForm>,
    middle: Option<&[LinForm]>,
    right: Option<LinForm>,
) -> Result<LinForm, CohomError> {
    let mid = middle.map(|m| m.iter().fold(LinForm::default(), |acc, &d| acc + d));
    match (left, mid, right) {
        (None, Some(m), Some(r)) => Ok(m - r),
        (Some(l), None, Some(r)) => Ok(l + r),
        (Some(l), Some(m), None) => Ok(m - l),
        (Some(l), Some(m), Some(r)) => {
            if l + r == m {
                Ok(l)
            } else {
                Err(CohomError::Inconsistent(format!("{l} + {r} differs from {m}")))
            }
        }
        _ => Err(CohomError::UnderDetermined("two determinant degrees unknown".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(s: &str) -> LinForm {
        s.parse().unwrap()
    }

    fn pd(s: &str) -> ParamDim {
        s.parse().unwrap()
    }

    #[test]
    fn pullbacks() {
        assert_eq!(pullback_degree(&ConicBundle::l()), lf("r"));
        assert_eq!(pullback_degree(&ConicBundle::omega_restricted()), lf("-r - 2"));
        assert_eq!(pullback_degree(&ConicBundle::new(2, -1)), lf("2*r - 2"));
    }

    #[test]
    fn line_bundles_on_p1() {
        let a0 = Assumption::at_least(0);
        let a1 = Assumption::at_least(1);
        assert_eq!(h_p1(lf("-2*r - 8"), &a0).unwrap(), CohomPair::new(pd("0"), pd("2*r + 7")));
        assert_eq!(h_p1(lf("r - 2"), &a1).unwrap(), CohomPair::new(pd("r - 1"), pd("0")));
        assert_eq!(h_p1(lf("-1"), &a0).unwrap(), CohomPair::new(pd("0"), pd("0")));
        assert!(matches!(h_p1(lf("r - 2"), &a0), Err(CohomError::UndecidableSign { .. })));
        assert_eq!(h_p1(lf("r - 2"), &Assumption::fixed(0)).unwrap(), CohomPair::new(pd("0"), pd("1")));
    }

    #[test]
    fn line_bundles_on_p2() {
        let a = Assumption::at_least(0);
        assert_eq!(h_p2(lf("0"), &a).unwrap(), [pd("1"), pd("0"), pd("0")]);
        assert_eq!(h_p2(lf("-3"), &a).unwrap(), [pd("0"), pd("0"), pd("1")]);
        assert_eq!(h_p2(lf("-1"), &a).unwrap(), [pd("0"), pd("0"), pd("0")]);
        assert_eq!(
            h_p2(lf("2*r + 1"), &a).unwrap(),
            [pd("(2*r + 3)*(2*r + 2)/2"), pd("0"), pd("0")]
        );
        assert!(h_p2(lf("r - 3"), &a).is_err());
        assert!(h_p1(lf("r - 3"), &Assumption::at_least(1)).is_err());
    }

    #[test]
    fn determinant_degrees() {
        let mid = [lf("-2"), lf("-4")];
        assert_eq!(det_degree_solve(None, Some(&mid), Some(lf("r"))).unwrap(), lf("-r - 6"));
        let mid = [lf("-4"), lf("-6"), lf("-8")];
        assert_eq!(det_degree_solve(None, Some(&mid), Some(lf("2*r"))).unwrap(), lf("-2*r - 18"));
        let mid = [lf("r + 1")];
        assert_eq!(det_degree_solve(None, Some(&mid), Some(lf("r + 1"))).unwrap(), lf("0"));
        assert!(det_degree_solve(Some(lf("2")), Some(&mid), Some(lf("r"))).is_err());
        assert!(det_degree_solve(None, None, Some(lf("r"))).is_err());
        assert_eq!(
            ConicBundle::from_pullback(lf("-2*r - 18")),
            Some(ConicBundle::new(-2, -9))
        );
    }
}
