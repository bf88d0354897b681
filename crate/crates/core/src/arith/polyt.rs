use std::fmt;

use super::{MultiPoly, Var};

/// A polynomial viewed in the distinguished Hilbert variable `t`, with
/// coefficients in whatever parameters remain (`r`, `c1`, ...).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyT(MultiPoly);

impl PolyT {
    pub const VAR: &'static str = "t";

    pub fn new(p: MultiPoly) -> Self {
        PolyT(p)
    }

    pub fn t() -> Var {
        Var::new(Self::VAR)
    }

    /// Rebuilds `Σ coeffs[k] t^k`.
    pub fn from_coeffs(coeffs: &[MultiPoly]) -> Self {
        PolyT(MultiPoly::from_coeffs_in(&Self::t(), coeffs))
    }

    pub fn degree(&self) -> u32 {
        self.0.degree_in(&Self::t())
    }

    /// Coefficient of `t^k`; zero beyond the degree.
    pub fn coeff(&self, k: u32) -> MultiPoly {
        self.0.coeff_in(&Self::t(), k)
    }

    pub fn coeffs(&self) -> Vec<MultiPoly> {
        self.0.coeffs_in(&Self::t())
    }

    pub fn as_poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn into_poly(self) -> MultiPoly {
        self.0
    }

    /// Substitutes `t -> t + shift`.
    pub fn shift(&self, shift: &MultiPoly) -> PolyT {
        let t = MultiPoly::var(Self::VAR);
        PolyT(self.0.substitute_var(Self::VAR, &(&t + shift)))
    }
}

impl serde::Serialize for PolyT {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl From<MultiPoly> for PolyT {
    fn from(p: MultiPoly) -> Self {
        PolyT(p)
    }
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
