//! Degree-slice linear algebra over `S = Q[s, u]` for the complex
//!
//! ```text
//! 0 -> S(-2r-12) --α--> S(-8) ⊕ S(-6) ⊕ S(-4) --β--> S(r-4) ⊕ S(r-2) -> 0
//! α = (a², 2ab, b²)ᵀ,   β = [[2b, -a, 0], [0, -b, 2a]]
//! ```
//!
//! built from sections `a`, `b` of degrees `r+2` and `r+4` without common
//! zeros on P^1.
//!
//! A map `⊕ S(a_j) -> ⊕ S(b_i)` has entry `(i, j)` homogeneous of degree
//! `b_i - a_j`. The degree-`d` slice of `S(a)` is spanned by the monomials
//! `s^k u^(d+a-k)`, `k` descending.
//!
//! Exactness is certified on slices `[d0, d0+6]` past a regularity bound,
//! with fibrewise rank checks at rational points as a cheap first screen.
//! The splitting type of `V = coker α` comes from `h^0(V(d))`, computed from
//! `0 -> O(c) -> F -> V -> 0` as
//! `h^0(F(d)) - h^0(O(c+d)) + dim coker(αᵀ)_(-d-2)`, the last term being
//! the Serre dual of `ker(H^1(O(c+d)) -> H^1(F(d)))`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::linalg::Matrix;
use crate::arith::{int, univariate_resultant, MultiPoly, Rational, Var};
use crate::cohomology::{h_p1, Assumption, CertifiedCase, InjectivityCertificate, LinForm};

pub const S: &str = "s";
pub const U: &str = "u";

/// `[1:0], [0:1], [1:1], [1:-1], [2:3]`.
pub fn default_points() -> Vec<(Rational, Rational)> {
    [(1, 0), (0, 1), (1, 1), (1, -1), (2, 3)]
        .into_iter()
        .map(|(s, u)| (int(s), int(u)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("entry ({row}, {col}) must be homogeneous of degree {expected} in s, u: {entry}")]
    NotHomogeneous { row: usize, col: usize, expected: i64, entry: String },
    #[error("matrix is {rows}x{cols}, twists need {want_rows}x{want_cols}")]
    Shape { rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("section {name} must be homogeneous of degree {degree} in s, u: {poly}")]
    SectionDegree { name: &'static str, degree: i64, poly: String },
    #[error("r must be nonnegative, got {0}")]
    NegativeR(i64),
    #[error("sections have a common zero on P^1")]
    CommonZero,
    #[error("complex is not exact at {0}")]
    NotExact(String),
    #[error("no splitting type matches: {0}")]
    NoSplitting(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Cohomology(String),
}

/// `⊕ S(a_i)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GradedFree {
    pub twists: Vec<i64>,
}

impl GradedFree {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFree { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn dual(&self) -> GradedFree {
        GradedFree::new(self.twists.iter().map(|a| -a).collect())
    }

    /// Offsets of each summand's block in the degree-`d` slice.
    fn offsets(&self, d: i64) -> Vec<usize> {
        let mut acc = 0;
        self.twists
            .iter()
            .map(|&a| {
                let here = acc;
                acc += piece_dim(d + a);
                here
            })
            .collect()
    }
}

fn piece_dim(deg: i64) -> usize {
    (deg + 1).max(0) as usize
}

/// `Σ max(d + a_i + 1, 0)`.
pub fn slice_dim(f: &GradedFree, d: i64) -> usize {
    f.twists.iter().map(|&a| piece_dim(d + a)).sum()
}

fn su_vars() -> (Var, Var) {
    (Var::new(S), Var::new(U))
}

fn is_su_form(p: &MultiPoly, deg: i64) -> bool {
    let (s, u) = su_vars();
    p.is_zero() || (deg >= 0 && p.vars().iter().all(|v| v == &s || v == &u) && p.is_homogeneous_of(deg as u32))
}

/// Homogeneous map `source -> target`, rows indexed by target summands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMatrix {
    source: GradedFree,
    target: GradedFree,
    entries: Vec<Vec<MultiPoly>>,
}

impl GradedMatrix {
    pub fn new(source: GradedFree, target: GradedFree, entries: Vec<Vec<MultiPoly>>) -> Result<Self, GradedError> {
        let (rows, cols) = (entries.len(), entries.first().map_or(0, |r| r.len()));
        if rows != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(GradedError::Shape { rows, cols, want_rows: target.rank(), want_cols: source.rank() });
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let expected = target.twists[i] - source.twists[j];
                if !is_su_form(e, expected) {
                    return Err(GradedError::NotHomogeneous { row: i, col: j, expected, entry: e.to_string() });
                }
            }
        }
        Ok(GradedMatrix { source, target, entries })
    }

    pub fn source(&self) -> &GradedFree {
        &self.source
    }

    pub fn target(&self) -> &GradedFree {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    /// The dual map `target^∨ -> source^∨`.
    pub fn transpose(&self) -> GradedMatrix {
        let entries = (0..self.source.rank())
            .map(|j| (0..self.target.rank()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        GradedMatrix { source: self.target.dual(), target: self.source.dual(), entries }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMatrix) -> Result<GradedMatrix, GradedError> {
        if inner.target != self.source {
            return Err(GradedError::Shape {
                rows: inner.target.rank(),
                cols: inner.source.rank(),
                want_rows: self.source.rank(),
                want_cols: inner.source.rank(),
            });
        }
        let entries = (0..self.target.rank())
            .map(|i| {
                (0..inner.source.rank())
                    .map(|j| {
                        (0..self.source.rank()).fold(MultiPoly::zero(), |acc, k| {
                            &acc + &(&self.entries[i][k] * &inner.entries[k][j])
                        })
                    })
                    .collect()
            })
            .collect();
        GradedMatrix::new(inner.source.clone(), self.target.clone(), entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// Entries evaluated at `(s, u)`.
    pub fn eval(&self, s: &Rational, u: &Rational) -> Matrix {
        let (vs, vu) = su_vars();
        let at: BTreeMap<Var, Rational> = [(vs, s.clone()), (vu, u.clone())].into_iter().collect();
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval(&at).expect("entries are forms in s, u")).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    /// Matrix of the degree-`d` slice in the monomial bases.
    pub fn slice_matrix(&self, d: i64) -> Matrix {
        let (vs, _) = su_vars();
        let col_off = self.source.offsets(d);
        let row_off = self.target.offsets(d);
        let mut m = Matrix::zeros(slice_dim(&self.target, d), slice_dim(&self.source, d));
        for (i, row) in self.entries.iter().enumerate() {
            let top = d + self.target.twists[i];
            for (j, e) in row.iter().enumerate() {
                let src = d + self.source.twists[j];
                for k in 0..piece_dim(src) {
                    let s_exp = src - k as i64;
                    for (mono, c) in e.terms() {
                        let big_s = s_exp + mono.exponent(&vs) as i64;
                        let row = row_off[i] + (top - big_s) as usize;
                        let col = col_off[j] + k;
                        let v = m.get(row, col) + c;
                        m.set(row, col, v);
                    }
                }
            }
        }
        m
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Sections `a ∈ H^0(O(r+2))`, `b ∈ H^0(O(r+4))` as binary forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionPair {
    pub r: i64,
    pub a: MultiPoly,
    pub b: MultiPoly,
}

impl SectionPair {
    pub fn new(r: i64, a: MultiPoly, b: MultiPoly) -> Result<Self, GradedError> {
        if r < 0 {
            return Err(GradedError::NegativeR(r));
        }
        for (name, p, deg) in [("a", &a, r + 2), ("b", &b, r + 4)] {
            if p.is_zero() || !is_su_form(p, deg) {
                return Err(GradedError::SectionDegree { name, degree: deg, poly: p.to_string() });
            }
        }
        Ok(SectionPair { r, a, b })
    }

    /// `a = s^(r+2)`, `b = u^(r+4)`.
    pub fn monomial(r: i64) -> Result<Self, GradedError> {
        let s = MultiPoly::var(S);
        let u = MultiPoly::var(U);
        SectionPair::new(r, s.pow((r + 2).max(0) as u32), u.pow((r + 4).max(0) as u32))
    }

    /// `a = s^(r+2) + s u^(r+1)`, `b = s^(r+4) + u^(r+4)`. A common zero
    /// would need `s^3 = 1` and `s^(r+1) = -1` at once.
    pub fn mixed(r: i64) -> Result<Self, GradedError> {
        let s = MultiPoly::var(S);
        let u = MultiPoly::var(U);
        let e = (r.max(0)) as u32;
        SectionPair::new(r, &s.pow(e + 2) + &(&s * &u.pow(e + 1)), &s.pow(e + 4) + &u.pow(e + 4))
    }
}

impl fmt::Display for SectionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={}; a={}; b={}", self.r, self.a, self.b)
    }
}

/// `r=<int>; a=<form in s,u>; b=<form in s,u>`.
impl FromStr for SectionPair {
    type Err = GradedError;
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        for part in text.split(';') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| GradedError::Parse(format!("expected key=value, got `{}`", part.trim())))?;
            fields.insert(k.trim(), v.trim());
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| GradedError::Parse(format!("missing `{k}`")));
        let r: i64 = get("r")?.parse().map_err(|_| GradedError::Parse("r must be an integer".into()))?;
        let poly = |k: &str| -> Result<MultiPoly, GradedError> {
            get(k)?.parse().map_err(|e| GradedError::Parse(format!("{k}: {e}")))
        };
        SectionPair::new(r, poly("a")?, poly("b")?)
    }
}

/// Parses `[s:u]`, `s:u` with integer or `p/q` entries.
pub fn parse_point(text: &str) -> Result<(Rational, Rational), GradedError> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let (s, u) = inner
        .split_once(':')
        .ok_or_else(|| GradedError::Parse(format!("point `{text}` is not of the form [s:u]")))?;
    let num = |x: &str| -> Result<Rational, GradedError> {
        x.trim().parse().map_err(|_| GradedError::Parse(format!("bad coordinate `{x}`")))
    };
    let p = (num(s)?, num(u)?);
    if p.0.is_zero() && p.1.is_zero() {
        return Err(GradedError::Parse("[0:0] is not a point".into()));
    }
    Ok(p)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaBeta {
    pub pair: SectionPair,
    pub alpha: GradedMatrix,
    pub beta: GradedMatrix,
}

impl AlphaBeta {
    pub fn source(&self) -> &GradedFree {
        self.alpha.source()
    }

    pub fn middle(&self) -> &GradedFree {
        self.alpha.target()
    }

    pub fn target(&self) -> &GradedFree {
        self.beta.target()
    }
}

fn alpha_beta_entries(a: &MultiPoly, b: &MultiPoly) -> (Vec<Vec<MultiPoly>>, Vec<Vec<MultiPoly>>) {
    let two = int(2);
    let alpha = vec![vec![a * a], vec![(a * b).scale(&two)], vec![b * b]];
    let beta = vec![
        vec![b.scale(&two), -a, MultiPoly::zero()],
        vec![MultiPoly::zero(), -b, a.scale(&two)],
    ];
    (alpha, beta)
}

pub fn alphabeta_builder(pair: &SectionPair) -> Result<AlphaBeta, GradedError> {
    let r = pair.r;
    let source = GradedFree::new(vec![-2 * r - 12]);
    let middle = GradedFree::new(vec![-8, -6, -4]);
    let target = GradedFree::new(vec![r - 4, r - 2]);
    let (a, b) = alpha_beta_entries(&pair.a, &pair.b);
    let alpha = GradedMatrix::new(source, middle.clone(), a)?;
    let beta = GradedMatrix::new(middle, target, b)?;
    Ok(AlphaBeta { pair: pair.clone(), alpha, beta })
}

/// `β·α` for indeterminate `a`, `b`; every entry is the zero polynomial.
pub fn symbolic_beta_alpha() -> Vec<MultiPoly> {
    let (a, b) = (MultiPoly::var("a"), MultiPoly::var("b"));
    let (alpha, beta) = alpha_beta_entries(&a, &b);
    beta.iter()
        .map(|row| row.iter().zip(&alpha).fold(MultiPoly::zero(), |acc, (x, y)| &acc + &(x * &y[0])))
        .collect()
}

/// No common zero on P^1: the dehomogenized forms (`u = 1`) have nonzero
/// resultant and `u` does not divide both (the point `[1:0]`).
pub fn common_zero_check(pair: &SectionPair) -> bool {
    let one = MultiPoly::one();
    let a1 = pair.a.substitute_var(U, &one);
    let b1 = pair.b.substitute_var(U, &one);
    let finite_ok = univariate_resultant(&a1, &b1).map(|r| !r.is_zero()).unwrap_or(false);
    let zero = MultiPoly::zero();
    let at_infinity = pair.a.substitute_var(U, &zero).is_zero() && pair.b.substitute_var(U, &zero).is_zero();
    finite_ok && !at_infinity
}

fn show_point(p: &(Rational, Rational)) -> String {
    format!("[{}:{}]", p.0, p.1)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PointwiseReport {
    pub exact: bool,
    pub checked: Vec<String>,
    pub witness: Option<String>,
}

/// At each point: `α ≠ 0`, `rank β = 2` and `β·α = 0`.
pub fn pointwise_exactness(cx: &AlphaBeta, points: &[(Rational, Rational)]) -> PointwiseReport {
    let mut checked = Vec::new();
    for p in points {
        let al = cx.alpha.eval(&p.0, &p.1);
        let be = cx.beta.eval(&p.0, &p.1);
        checked.push(show_point(p));
        let ok = !al.is_zero() && be.rank() == cx.target().rank() && be.mul(&al).is_zero();
        if !ok {
            return PointwiseReport { exact: false, checked, witness: Some(show_point(p)) };
        }
    }
    PointwiseReport { exact: true, checked, witness: None }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SliceCheck {
    pub degree: i64,
    /// Slice dimensions of source, middle, target.
    pub dims: [usize; 3],
    pub rank_alpha: usize,
    pub rank_beta: usize,
    pub exact: bool,
}

/// `max |twist| + deg b + 2`.
pub fn regularity_bound(cx: &AlphaBeta) -> i64 {
    let twists = cx.source().twists.iter().chain(&cx.middle().twists).chain(&cx.target().twists);
    twists.map(|a| a.abs()).max().unwrap_or(0) + cx.pair.r + 4 + 2
}

pub fn slice_check(cx: &AlphaBeta, d: i64) -> SliceCheck {
    let dims = [slice_dim(cx.source(), d), slice_dim(cx.middle(), d), slice_dim(cx.target(), d)];
    let ra = cx.alpha.slice_matrix(d).rank();
    let rb = cx.beta.slice_matrix(d).rank();
    let exact = ra == dims[0] && rb == dims[2] && ra + rb == dims[1];
    SliceCheck { degree: d, dims, rank_alpha: ra, rank_beta: rb, exact }
}

/// Slices `[d0, d0 + 6]` from the regularity bound.
pub fn slice_exactness(cx: &AlphaBeta) -> Vec<SliceCheck> {
    let d0 = regularity_bound(cx);
    (d0..=d0 + 6).map(|d| slice_check(cx, d)).collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SplittingReport {
    pub pair: (i64, i64),
    /// `(d, h^0(V(d)))` over the search window.
    pub h0: Vec<(i64, usize)>,
    /// Hilbert function of `coker α` on the exactness slices agrees with the
    /// inferred type.
    pub hilbert_consistent: bool,
}

fn split_h0(p: i64, q: i64, d: i64) -> usize {
    piece_dim(d + p) + piece_dim(d + q)
}

/// Splitting type `{p, q}` of `coker α`, with `p + q` fixed by the twists.
pub fn splitting_type(cx: &AlphaBeta) -> Result<SplittingReport, GradedError> {
    let c = cx.source().twists[0];
    let sum: i64 = cx.middle().twists.iter().sum::<i64>() - c;
    let bound = cx.source().twists.iter().chain(&cx.middle().twists).map(|a| a.abs()).max().unwrap_or(0) + 2;
    let alpha_t = cx.alpha.transpose();
    let h0: Vec<(i64, usize)> = (-bound..=bound)
        .map(|d| {
            let e = -d - 2;
            let coker = slice_dim(alpha_t.target(), e) - alpha_t.slice_matrix(e).rank();
            (d, slice_dim(cx.middle(), d) - piece_dim(c + d) + coker)
        })
        .collect();
    let matches: Vec<(i64, i64)> = (-bound..=bound)
        .map(|p| (p, sum - p))
        .filter(|&(p, q)| p <= q && h0.iter().all(|&(d, h)| split_h0(p, q, d) == h))
        .collect();
    let [(p, q)] = matches[..] else {
        return Err(GradedError::NoSplitting(format!("{} candidate pairs with sum {sum}", matches.len())));
    };
    let hilbert_consistent = slice_exactness(cx)
        .iter()
        .all(|sc| sc.dims[1] - sc.rank_alpha == split_h0(p, q, sc.degree));
    Ok(SplittingReport { pair: (p, q), h0, hilbert_consistent })
}

/// Runs the whole chain for each pair: no common zeros, pointwise and slice
/// exactness, splitting type, twist by `-r-2`, and `h^0 = 0`.
pub fn injectivity_certificate(
    r: i64,
    pairs: &[SectionPair],
    points: &[(Rational, Rational)],
) -> Result<CertifiedCase, GradedError> {
    let mut case: Option<CertifiedCase> = None;
    for pair in pairs {
        if pair.r != r {
            return Err(GradedError::Parse(format!("pair for r = {} used at r = {r}", pair.r)));
        }
        if !common_zero_check(pair) {
            return Err(GradedError::CommonZero);
        }
        let cx = alphabeta_builder(pair)?;
        let pw = pointwise_exactness(&cx, points);
        if let Some(w) = pw.witness {
            return Err(GradedError::NotExact(format!("point {w}")));
        }
        if let Some(bad) = slice_exactness(&cx).into_iter().find(|c| !c.exact) {
            return Err(GradedError::NotExact(format!("degree {}", bad.degree)));
        }
        let split = splitting_type(&cx)?;
        if !split.hilbert_consistent {
            return Err(GradedError::NoSplitting("Hilbert function disagrees past the bound".into()));
        }
        let (p, q) = split.pair;
        let twisted = (p - r - 2, q - r - 2);
        let fixed = Assumption::fixed(r);
        let mut h0 = 0i64;
        for d in [twisted.0, twisted.1] {
            let h = h_p1(LinForm::constant(d), &fixed).map_err(|e| GradedError::Cohomology(e.to_string()))?;
            h0 += h.h0.eval(r).to_integer().to_string().parse::<i64>().unwrap_or(i64::MAX);
        }
        let entry = (pair.a.to_string(), pair.b.to_string());
        match &mut case {
            None => {
                case = Some(CertifiedCase { r, pairs: vec![entry], splitting: (p, q), twisted, twisted_h0: h0 })
            }
            Some(c) => {
                if c.splitting != (p, q) {
                    return Err(GradedError::NoSplitting(format!(
                        "pairs disagree at r = {r}: {:?} vs {:?}",
                        c.splitting,
                        (p, q)
                    )));
                }
                c.pairs.push(entry);
            }
        }
    }
    let case = case.ok_or_else(|| GradedError::Parse("no section pairs given".into()))?;
    if case.twisted_h0 != 0 {
        return Err(GradedError::Cohomology(format!("twisted h0 = {} at r = {r}", case.twisted_h0)));
    }
    Ok(case)
}

/// Certificates for every `r` in the window with the two default pairs.
pub fn certificate_window(
    rs: impl IntoIterator<Item = i64>,
    points: &[(Rational, Rational)],
) -> Result<InjectivityCertificate, GradedError> {
    let cases = rs
        .into_iter()
        .map(|r| injectivity_certificate(r, &[SectionPair::monomial(r)?, SectionPair::mixed(r)?], points))
        .collect::<Result<_, _>>()?;
    Ok(InjectivityCertificate { cases })
}
