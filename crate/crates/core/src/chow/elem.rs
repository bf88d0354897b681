use std::fmt;

use super::{ChowError, MAX_AMBIENT_DIM};
use crate::arith::{int, MultiPoly, Rational};

/// Element of `Q[params][h]/(h^{n+1})`, stored as the coefficients of
/// `h^0..h^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChowElem {
    n: usize,
    coeffs: Vec<MultiPoly>,
}

impl ChowElem {
    pub fn zero(n: usize) -> Self {
        ChowElem { n, coeffs: vec![MultiPoly::zero(); n + 1] }
    }

    pub fn constant(n: usize, c: MultiPoly) -> Self {
        let mut out = ChowElem::zero(n);
        out.coeffs[0] = c;
        out
    }

    pub fn one(n: usize) -> Self {
        ChowElem::constant(n, MultiPoly::one())
    }

    /// Coefficients beyond `h^n` are dropped, missing ones are zero.
    pub fn from_coeffs(n: usize, coeffs: Vec<MultiPoly>) -> Self {
        let mut out = ChowElem::zero(n);
        for (i, c) in coeffs.into_iter().enumerate().take(n + 1) {
            out.coeffs[i] = c;
        }
        out
    }

    /// `exp(x h) = Σ x^k h^k / k!`.
    pub fn exp(n: usize, x: &MultiPoly) -> Self {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut term = MultiPoly::one();
        coeffs.push(term.clone());
        for k in 1..=n {
            term = (&term * x).scale(&Rational::new(1.into(), (k as i64).into()));
            coeffs.push(term.clone());
        }
        ChowElem { n, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize) -> &MultiPoly {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn add(&self, other: &ChowElem) -> ChowElem {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        ChowElem {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ChowElem) -> ChowElem {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        ChowElem {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// Product truncated at `h^{n+1}`.
    pub fn mul(&self, other: &ChowElem) -> ChowElem {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        let mut out = ChowElem::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> ChowElem {
        ChowElem { n: self.n, coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect() }
    }

    pub fn scale_int(&self, k: i64) -> ChowElem {
        self.scale(&int(k))
    }

    pub fn pow(&self, e: u32) -> ChowElem {
        (0..e).fold(ChowElem::one(self.n), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for ChowElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("h^{i}: {c}"))
            .collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

/// Rank and Chern classes `c_1..c_rank` of a (possibly virtual or
/// parametric) vector bundle on projective n-space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleClass {
    rank: usize,
    chern: Vec<MultiPoly>,
    ambient_dim: usize,
}

impl BundleClass {
    pub fn new(rank: usize, chern: Vec<MultiPoly>, ambient_dim: usize) -> Result<Self, ChowError> {
        if !(1..=MAX_AMBIENT_DIM).contains(&ambient_dim) {
            return Err(ChowError::AmbientDim(ambient_dim));
        }
        if rank == 0 {
            return Err(ChowError::ZeroRank);
        }
        if chern.len() != rank {
            return Err(ChowError::ChernCount { expected: rank, found: chern.len() });
        }
        if let Some(i) = (ambient_dim..rank).find(|&i| !chern[i].is_zero()) {
            return Err(ChowError::BeyondAmbient { index: i + 1, ambient: ambient_dim });
        }
        Ok(BundleClass { rank, chern, ambient_dim })
    }

    pub fn trivial(rank: usize, ambient_dim: usize) -> Result<Self, ChowError> {
        BundleClass::new(rank, vec![MultiPoly::zero(); rank], ambient_dim)
    }

    /// `O(d)`.
    pub fn line(d: impl Into<MultiPoly>, ambient_dim: usize) -> Result<Self, ChowError> {
        BundleClass::new(1, vec![d.into()], ambient_dim)
    }

    /// `O(d_1) ⊕ ... ⊕ O(d_k)`: the Chern classes are the elementary
    /// symmetric functions of the twists.
    pub fn split(twists: &[MultiPoly], ambient_dim: usize) -> Result<Self, ChowError> {
        let mut e = vec![MultiPoly::one()];
        for d in twists {
            let mut next = e.clone();
            next.push(MultiPoly::zero());
            for i in 1..next.len() {
                next[i] = &e.get(i).cloned().unwrap_or_else(MultiPoly::zero) + &(&e[i - 1] * d);
            }
            e = next;
        }
        let mut chern: Vec<MultiPoly> = e.into_iter().skip(1).collect();
        for c in chern.iter_mut().skip(ambient_dim) {
            *c = MultiPoly::zero();
        }
        BundleClass::new(twists.len(), chern, ambient_dim)
    }

    pub fn split_ints(twists: &[i64], ambient_dim: usize) -> Result<Self, ChowError> {
        let t: Vec<MultiPoly> = twists.iter().map(|&d| MultiPoly::int(d)).collect();
        BundleClass::split(&t, ambient_dim)
    }

    /// Direct sum: ranks add, total Chern classes multiply.
    pub fn direct_sum(&self, other: &BundleClass) -> Result<BundleClass, ChowError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(ChowError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let rank = self.rank + other.rank;
        let chern = (1..=rank)
            .map(|k| {
                let mut acc = MultiPoly::zero();
                for i in 0..=k {
                    acc = &acc + &(&self.chern(i) * &other.chern(k - i));
                }
                if k > self.ambient_dim {
                    MultiPoly::zero()
                } else {
                    acc
                }
            })
            .collect();
        BundleClass::new(rank, chern, self.ambient_dim)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// `c_i`, with `c_0 = 1` and `c_i = 0` for `i > rank`.
    pub fn chern(&self, i: usize) -> MultiPoly {
        match i {
            0 => MultiPoly::one(),
            i if i <= self.rank => self.chern[i - 1].clone(),
            _ => MultiPoly::zero(),
        }
    }

    pub fn chern_classes(&self) -> &[MultiPoly] {
        &self.chern
    }

    /// Substitutes into every Chern class.
    pub fn map_classes(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> BundleClass {
        BundleClass {
            rank: self.rank,
            chern: self.chern.iter().map(f).collect(),
            ambient_dim: self.ambient_dim,
        }
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} on P^{}: (", self.rank, self.ambient_dim)?;
        for (i, c) in self.chern.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "c{}={}", i + 1, c)?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn truncated_product() {
        let h = ChowElem::from_coeffs(2, vec![MultiPoly::zero(), MultiPoly::one()]);
        assert_eq!(h.pow(2), ChowElem::from_coeffs(2, vec![p("0"), p("0"), p("1")]));
        assert_eq!(h.pow(3), ChowElem::zero(2));
    }

    #[test]
    fn split_chern_classes() {
        let b = BundleClass::split_ints(&[-1, -1, -2], 5).unwrap();
        assert_eq!(b.chern_classes(), &[p("-4"), p("5"), p("-2")]);
    }

    #[test]
    fn validation() {
        assert_eq!(BundleClass::trivial(0, 3), Err(ChowError::ZeroRank));
        assert_eq!(BundleClass::trivial(1, 9), Err(ChowError::AmbientDim(9)));
        assert_eq!(
            BundleClass::new(2, vec![p("1")], 3),
            Err(ChowError::ChernCount { expected: 2, found: 1 })
        );
        assert_eq!(
            BundleClass::new(3, vec![p("1"), p("1"), p("1")], 2),
            Err(ChowError::BeyondAmbient { index: 3, ambient: 2 })
        );
        // a split rank-3 bundle on P^2 drops its c_3 rather than rejecting it
        assert!(BundleClass::split_ints(&[1, 1, 1], 2).is_ok());
    }

    #[test]
    fn direct_sum_multiplies_total_classes() {
        let a = BundleClass::split_ints(&[1, 2], 5).unwrap();
        let b = BundleClass::line(3, 5).unwrap();
        assert_eq!(a.direct_sum(&b).unwrap(), BundleClass::split_ints(&[1, 2, 3], 5).unwrap());
    }
}
