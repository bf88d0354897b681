use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::CohomError;
use crate::arith::{int, MultiPoly, Rational, Var};

pub const PARAM: &str = "r";

/// Integer linear form `a·r + b`, used for degrees of line bundles.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct LinForm {
    pub a: i64,
    pub b: i64,
}

impl LinForm {
    pub const fn new(a: i64, b: i64) -> Self {
        LinForm { a, b }
    }

    pub const fn constant(b: i64) -> Self {
        LinForm { a: 0, b }
    }

    pub const fn r() -> Self {
        LinForm { a: 1, b: 0 }
    }

    pub fn eval(&self, r: i64) -> i64 {
        self.a * r + self.b
    }

    pub fn scale(&self, k: i64) -> LinForm {
        LinForm::new(self.a * k, self.b * k)
    }

    pub fn to_poly(&self) -> MultiPoly {
        &MultiPoly::var(PARAM).scale(&int(self.a)) + &MultiPoly::int(self.b)
    }

    /// Accepts integer polynomials of degree at most 1 in `r`.
    pub fn from_poly(p: &MultiPoly) -> Option<LinForm> {
        let r = Var::new(PARAM);
        if p.vars().iter().any(|v| v != &r) || p.degree_in(&r) > 1 || !p.has_integer_coeffs() {
            return None;
        }
        let a = p.coeff_in(&r, 1).constant_term().to_integer();
        let b = p.coeff_in(&r, 0).constant_term().to_integer();
        Some(LinForm::new(a.try_into().ok()?, b.try_into().ok()?))
    }
}

impl Add for LinForm {
    type Output = LinForm;
    fn add(self, o: LinForm) -> LinForm {
        LinForm::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for LinForm {
    type Output = LinForm;
    fn sub(self, o: LinForm) -> LinForm {
        LinForm::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for LinForm {
    type Output = LinForm;
    fn neg(self) -> LinForm {
        LinForm::new(-self.a, -self.b)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

impl FromStr for LinForm {
    type Err = CohomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p: MultiPoly = s
            .parse()
            .map_err(|e| CohomError::Parse { line: 0, msg: format!("{e}") })?;
        LinForm::from_poly(&p).ok_or_else(|| CohomError::Parse {
            line: 0,
            msg: format!("`{s}` is not an integer linear form in r"),
        })
    }
}

/// Range of the parameter `r`: either `r >= r_min` or one fixed value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Assumption {
    pub r_min: i64,
    pub fixed: Option<i64>,
}

impl Assumption {
    pub fn at_least(r_min: i64) -> Self {
        Assumption { r_min, fixed: None }
    }

    pub fn fixed(r: i64) -> Self {
        Assumption { r_min: r, fixed: Some(r) }
    }
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.fixed {
            Some(r) => write!(f, "r = {r}"),
            None => write!(f, "r >= {}", self.r_min),
        }
    }
}

/// Outcome of a sign query on a parametric value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Decision {
    Always,
    Never,
    Undecided,
}

/// A dimension depending polynomially on `r` (linear on P^1, quadratic for
/// `h^0` on P^2). Integer-valued at integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamDim(MultiPoly);

impl ParamDim {
    pub fn zero() -> Self {
        ParamDim(MultiPoly::zero())
    }

    pub fn constant(n: i64) -> Self {
        ParamDim(MultiPoly::int(n))
    }

    pub fn from_poly(p: MultiPoly) -> Result<Self, CohomError> {
        let r = Var::new(PARAM);
        if p.vars().iter().any(|v| v != &r) {
            return Err(CohomError::InvalidSequence(format!(
                "dimension `{p}` depends on variables other than r"
            )));
        }
        Ok(ParamDim(p))
    }

    pub fn as_poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_linform(&self) -> Option<LinForm> {
        LinForm::from_poly(&self.0)
    }

    pub fn eval(&self, r: i64) -> Rational {
        self.0.eval_at(PARAM, &int(r)).expect("univariate in r")
    }

    /// The value under a fixed assumption, unchanged otherwise.
    pub fn specialize(&self, a: &Assumption) -> ParamDim {
        match a.fixed {
            Some(r) => ParamDim(MultiPoly::constant(self.eval(r))),
            None => self.clone(),
        }
    }

    /// Decides `value >= 0` for every admissible `r`. Parametric queries
    /// expand around `r_min`: if every coefficient of `p(r_min + x)` is
    /// nonnegative the answer is `Always`, and if every coefficient of
    /// `-p(r_min + x) - 1` is, `Never` (values are integers). Exact for
    /// linear forms.
    pub fn decide_nonneg(&self, a: &Assumption) -> Decision {
        if let Some(r) = a.fixed {
            return if self.eval(r).is_negative() { Decision::Never } else { Decision::Always };
        }
        let x = &MultiPoly::var(PARAM) + &MultiPoly::int(a.r_min);
        let shifted = self.0.substitute_var(PARAM, &x);
        if !shifted.has_negative_coeff() {
            return Decision::Always;
        }
        let below = &(-&shifted) - &MultiPoly::one();
        if !below.has_negative_coeff() {
            return Decision::Never;
        }
        Decision::Undecided
    }

    /// Whether the value is identically zero for every admissible `r`.
    pub fn vanishes(&self, a: &Assumption) -> bool {
        match a.fixed {
            Some(r) => self.eval(r).is_zero(),
            None => self.0.is_zero(),
        }
    }

    pub fn binomial2(x: &MultiPoly) -> ParamDim {
        // x(x-1)/2
        let p = (x * &(x - &MultiPoly::one())).scale(&Rational::new(One::one(), 2.into()));
        ParamDim(p)
    }
}

impl From<LinForm> for ParamDim {
    fn from(l: LinForm) -> Self {
        ParamDim(l.to_poly())
    }
}

impl Add for &ParamDim {
    type Output = ParamDim;
    fn add(self, o: &ParamDim) -> ParamDim {
        ParamDim(&self.0 + &o.0)
    }
}

impl Sub for &ParamDim {
    type Output = ParamDim;
    fn sub(self, o: &ParamDim) -> ParamDim {
        ParamDim(&self.0 - &o.0)
    }
}

impl fmt::Display for ParamDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ParamDim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for ParamDim {
    type Err = CohomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p: MultiPoly = s
            .parse()
            .map_err(|e| CohomError::Parse { line: 0, msg: format!("{e}") })?;
        ParamDim::from_poly(p)
    }
}
