//! Dimension bookkeeping in the long exact cohomology sequence of a short
//! exact sequence `0 -> T_0 -> T_1 -> T_2 -> 0`.
//!
//! The cohomology groups are laid out as slots `V_{3i+j} = H^i(T_j)` and
//! arrow `k` goes from slot `k` to slot `k+1`. With `ρ_k` the rank of arrow
//! `k`, exactness reads `dim V_j = ρ_{j-1} + ρ_j`. Declared facts add
//! `ρ_k = dim V_k` (injective), `ρ_k = dim V_{k+1}` (surjective) or
//! `ρ_k = 0` (zero). Ranks are nonnegative, so a slot of dimension zero
//! also forces both neighbouring ranks to vanish. The unknown term's
//! dimensions are the other unknowns,
//! and the whole system is solved exactly with polynomial right-hand sides.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! space p1            # or p2; default p1
//! conic 1 -1          # L^1(-1) on a conic
//! p1 -2*r - 8         # O(d) on P^1
//! p2 2*r + 1 x3       # O(d)^3 on P^2
//! dims r - 1, 0       # explicit dimensions h^0, h^1, ...
//! unknown
//! fact: injective 2   # also surjective <k>, zero <k>
//! ```

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{h_p1, h_p2, pullback_degree, Assumption, CohomError, ConicBundle, Decision, LinForm, ParamDim};
use crate::arith::{MultiPoly, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Space {
    P1,
    P2,
}

impl Space {
    pub fn top_degree(&self) -> usize {
        match self {
            Space::P1 => 1,
            Space::P2 => 2,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeqTerm {
    Conic(ConicBundle),
    LineP1(LinForm),
    LineP2 { degree: LinForm, mult: u32 },
    Dims(Vec<ParamDim>),
    Unknown,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapFact {
    Injective(usize),
    Surjective(usize),
    Zero(usize),
}

impl MapFact {
    fn arrow(&self) -> usize {
        match *self {
            MapFact::Injective(k) | MapFact::Surjective(k) | MapFact::Zero(k) => k,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactSeqSpec {
    pub space: Space,
    pub terms: Vec<SeqTerm>,
    pub facts: Vec<MapFact>,
}

impl ExactSeqSpec {
    pub fn new(space: Space, terms: Vec<SeqTerm>, facts: Vec<MapFact>) -> Self {
        ExactSeqSpec { space, terms, facts }
    }

    fn validate(&self) -> Result<usize, CohomError> {
        if self.terms.len() != 3 {
            return Err(CohomError::InvalidSequence(format!(
                "expected a short exact sequence with 3 terms, got {}",
                self.terms.len()
            )));
        }
        let unknowns: Vec<usize> = (0..3).filter(|&i| self.terms[i] == SeqTerm::Unknown).collect();
        let [u] = unknowns[..] else {
            return Err(CohomError::InvalidSequence(format!(
                "expected exactly one unknown term, got {}",
                unknowns.len()
            )));
        };
        let arrows = 3 * (self.space.top_degree() + 1) - 1;
        if let Some(f) = self.facts.iter().find(|f| f.arrow() >= arrows) {
            return Err(CohomError::InvalidSequence(format!(
                "arrow {} out of range 0..{arrows}",
                f.arrow()
            )));
        }
        Ok(u)
    }

    fn term_dims(&self, t: &SeqTerm, a: &Assumption) -> Result<Vec<ParamDim>, CohomError> {
        let top = self.space.top_degree();
        let wrong_space = |what: &str| {
            CohomError::InvalidSequence(format!("{what} term in a sequence on {:?}", self.space))
        };
        let dims = match (t, self.space) {
            (SeqTerm::Conic(c), Space::P1) => h_p1(pullback_degree(c), a)?.dims(),
            (SeqTerm::LineP1(d), Space::P1) => h_p1(*d, a)?.dims(),
            (SeqTerm::LineP2 { degree, mult }, Space::P2) => {
                let k = MultiPoly::int(*mult as i64);
                h_p2(*degree, a)?
                    .iter()
                    .map(|h| ParamDim::from_poly(h.as_poly() * &k))
                    .collect::<Result<_, _>>()?
            }
            (SeqTerm::Dims(d), _) => {
                if d.len() != top + 1 {
                    return Err(CohomError::InvalidSequence(format!(
                        "expected {} dimensions, got {}",
                        top + 1,
                        d.len()
                    )));
                }
                d.iter().map(|x| x.specialize(a)).collect()
            }
            (SeqTerm::Conic(_), _) => return Err(wrong_space("conic")),
            (SeqTerm::LineP1(_), _) => return Err(wrong_space("p1")),
            (SeqTerm::LineP2 { .. }, _) => return Err(wrong_space("p2")),
            (SeqTerm::Unknown, _) => unreachable!("unknown term has no dimensions"),
        };
        Ok(dims)
    }
}

struct Row {
    coeffs: Vec<Rational>,
    rhs: MultiPoly,
}

/// Reduced row echelon form in place; returns the pivot column of each
/// leading row.
fn reduce(rows: &mut [Row], nvars: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..nvars {
        let Some(p) = (next..rows.len()).find(|&i| !rows[i].coeffs[col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = Rational::one() / &rows[next].coeffs[col];
        for c in rows[next].coeffs.iter_mut() {
            *c = &*c * &inv;
        }
        rows[next].rhs = rows[next].rhs.scale(&inv);
        for i in 0..rows.len() {
            if i == next || rows[i].coeffs[col].is_zero() {
                continue;
            }
            let f = rows[i].coeffs[col].clone();
            for j in 0..nvars {
                let d = &f * &rows[next].coeffs[j];
                rows[i].coeffs[j] = &rows[i].coeffs[j] - &d;
            }
            rows[i].rhs = &rows[i].rhs - &rows[next].rhs.scale(&f);
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// Dimensions `h^0, ..., h^top` of the unknown term.
pub fn solve_exact_sequence(s: &ExactSeqSpec, a: &Assumption) -> Result<Vec<ParamDim>, CohomError> {
    let u = s.validate()?;
    let top = s.space.top_degree();
    let known: Vec<Option<Vec<ParamDim>>> = s
        .terms
        .iter()
        .map(|t| match t {
            SeqTerm::Unknown => Ok(None),
            t => s.term_dims(t, a).map(Some),
        })
        .collect::<Result<_, _>>()?;

    let slots = 3 * (top + 1);
    let arrows = slots - 1;
    let nvars = arrows + top + 1;
    let slot_dim = |j: usize| -> Option<MultiPoly> {
        known[j % 3].as_ref().map(|d| d[j / 3].as_poly().clone())
    };
    let mut rows = Vec::new();
    for j in 0..slots {
        let mut coeffs = vec![Rational::zero(); nvars];
        if j > 0 {
            coeffs[j - 1] = Rational::one();
        }
        if j < arrows {
            coeffs[j] = Rational::one();
        }
        let rhs = match slot_dim(j) {
            Some(d) => d,
            None => {
                coeffs[arrows + j / 3] = -Rational::one();
                MultiPoly::zero()
            }
        };
        rows.push(Row { coeffs, rhs });
    }
    let zero_rank = |k: usize| {
        let mut coeffs = vec![Rational::zero(); nvars];
        coeffs[k] = Rational::one();
        Row { coeffs, rhs: MultiPoly::zero() }
    };
    for j in 0..slots {
        let vanishing = known[j % 3].as_ref().is_some_and(|d| d[j / 3].vanishes(a));
        if vanishing {
            if j > 0 {
                rows.push(zero_rank(j - 1));
            }
            if j < arrows {
                rows.push(zero_rank(j));
            }
        }
    }
    for f in &s.facts {
        let k = f.arrow();
        let mut coeffs = vec![Rational::zero(); nvars];
        coeffs[k] = Rational::one();
        let target = match f {
            MapFact::Injective(_) => Some(k),
            MapFact::Surjective(_) => Some(k + 1),
            MapFact::Zero(_) => None,
        };
        let rhs = match target {
            None => MultiPoly::zero(),
            Some(j) => match slot_dim(j) {
                Some(d) => d,
                None => {
                    coeffs[arrows + j / 3] = &coeffs[arrows + j / 3] - &Rational::one();
                    MultiPoly::zero()
                }
            },
        };
        rows.push(Row { coeffs, rhs });
    }

    let pivots = reduce(&mut rows, nvars);
    if let Some(bad) = rows[pivots.len()..].iter().find(|row| !row.rhs.is_zero()) {
        return Err(CohomError::Inconsistent(format!(
            "exactness forces 0 = {} for term {u}",
            bad.rhs
        )));
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let value_of = |col: usize| -> Option<ParamDim> {
        let i = pivots.iter().position(|&p| p == col)?;
        free.iter()
            .all(|&f| rows[i].coeffs[f].is_zero())
            .then(|| ParamDim::from_poly(rows[i].rhs.clone()).expect("polynomial in r"))
    };

    for k in 0..arrows {
        if let Some(v) = value_of(k) {
            if v.decide_nonneg(a) == Decision::Never {
                return Err(CohomError::NegativeDimension(format!("rank of arrow {k} is {v}")));
            }
        }
    }
    let mut out = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let v = value_of(arrows + i).ok_or_else(|| {
            CohomError::UnderDetermined(format!("h^{i} of term {u} is not fixed by the facts"))
        })?;
        match v.decide_nonneg(a) {
            Decision::Always => out.push(v.specialize(a)),
            Decision::Never => {
                return Err(CohomError::NegativeDimension(format!("h^{i} of term {u} is {v}")))
            }
            Decision::Undecided => {
                return Err(CohomError::UndecidableSign {
                    value: v.to_string(),
                    assumption: a.to_string(),
                })
            }
        }
    }
    Ok(out)
}

impl fmt::Display for ExactSeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space {}", if self.space == Space::P1 { "p1" } else { "p2" })?;
        for t in &self.terms {
            match t {
                SeqTerm::Conic(c) => writeln!(f, "conic {} {}", c.k, c.m)?,
                SeqTerm::LineP1(d) => writeln!(f, "p1 {d}")?,
                SeqTerm::LineP2 { degree, mult: 1 } => writeln!(f, "p2 {degree}")?,
                SeqTerm::LineP2 { degree, mult } => writeln!(f, "p2 {degree} x{mult}")?,
                SeqTerm::Dims(d) => {
                    let s: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                    writeln!(f, "dims {}", s.join(", "))?
                }
                SeqTerm::Unknown => writeln!(f, "unknown")?,
            }
        }
        for fact in &self.facts {
            match fact {
                MapFact::Injective(k) => writeln!(f, "fact: injective {k}")?,
                MapFact::Surjective(k) => writeln!(f, "fact: surjective {k}")?,
                MapFact::Zero(k) => writeln!(f, "fact: zero {k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for ExactSeqSpec {
    type Err = CohomError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut space = Space::P1;
        let mut terms = Vec::new();
        let mut facts = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| CohomError::Parse { line: n + 1, msg };
            let relabel = |e: CohomError| match e {
                CohomError::Parse { msg, .. } => err(msg),
                other => other,
            };
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head {
                "space" => {
                    space = match rest {
                        "p1" => Space::P1,
                        "p2" => Space::P2,
                        _ => return Err(err(format!("unknown space `{rest}`"))),
                    }
                }
                "conic" => {
                    let nums: Vec<i64> = rest
                        .split_whitespace()
                        .map(|x| x.parse().map_err(|_| err(format!("bad integer `{x}`"))))
                        .collect::<Result<_, _>>()?;
                    let [k, m] = nums[..] else {
                        return Err(err("conic needs two integers k m".into()));
                    };
                    terms.push(SeqTerm::Conic(ConicBundle::new(k, m)));
                }
                "p1" => terms.push(SeqTerm::LineP1(rest.parse().map_err(relabel)?)),
                "p2" => {
                    let (deg, mult) = match rest.rsplit_once(char::is_whitespace) {
                        Some((d, m)) if m.starts_with('x') && m.len() > 1 => {
                            let k = m[1..].parse().map_err(|_| err(format!("bad multiplicity `{m}`")))?;
                            (d, k)
                        }
                        _ => (rest, 1),
                    };
                    terms.push(SeqTerm::LineP2 { degree: deg.parse().map_err(relabel)?, mult });
                }
                "dims" => {
                    let d = rest
                        .split(',')
                        .map(|x| x.trim().parse::<ParamDim>().map_err(relabel))
                        .collect::<Result<_, _>>()?;
                    terms.push(SeqTerm::Dims(d));
                }
                "unknown" => terms.push(SeqTerm::Unknown),
                "fact:" => {
                    let (kind, idx) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| err("fact needs a kind and an arrow index".into()))?;
                    let k: usize = idx
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("bad arrow index `{}`", idx.trim())))?;
                    facts.push(match kind {
                        "injective" => MapFact::Injective(k),
                        "surjective" => MapFact::Surjective(k),
                        "zero" => MapFact::Zero(k),
                        _ => return Err(err(format!("unknown fact `{kind}`"))),
                    });
                }
                _ => return Err(err(format!("unrecognized line `{line}`"))),
            }
        }
        Ok(ExactSeqSpec { space, terms, facts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> ParamDim {
        s.parse().unwrap()
    }

    #[test]
    fn middle_of_split_sides() {
        let s: ExactSeqSpec = "conic 1 -1\nunknown\nconic -2 -4\n".parse().unwrap();
        let a = Assumption::at_least(1);
        assert_eq!(solve_exact_sequence(&s, &a).unwrap(), vec![pd("r - 1"), pd("2*r + 7")]);
    }

    #[test]
    fn injective_connecting_map() {
        let text = "dims 2*r - 1, r + 7\nunknown\ndims r - 1, 2*r + 7\nfact: injective 2\n";
        let s: ExactSeqSpec = text.parse().unwrap();
        let a = Assumption::at_least(1);
        assert_eq!(solve_exact_sequence(&s, &a).unwrap(), vec![pd("2*r - 1"), pd("2*r + 15")]);
        let bare: ExactSeqSpec = "dims 2*r - 1, r + 7\nunknown\ndims r - 1, 2*r + 7\n".parse().unwrap();
        assert!(matches!(solve_exact_sequence(&bare, &a), Err(CohomError::UnderDetermined(_))));
    }

    #[test]
    fn unknown_end_term() {
        let s: ExactSeqSpec = "space p2\np2 r\np2 2*r + 1 x3\nunknown\n".parse().unwrap();
        let out = solve_exact_sequence(&s, &Assumption::at_least(0)).unwrap();
        assert_eq!(out, vec![pd("(11*r^2 + 27*r + 16)/2"), pd("0"), pd("0")]);
    }

    #[test]
    fn contradictions_are_reported() {
        let a = Assumption::at_least(0);
        let neg: ExactSeqSpec = "dims 0, 1\nunknown\ndims 2, 0\nfact: injective 2\n".parse().unwrap();
        assert!(matches!(solve_exact_sequence(&neg, &a), Err(CohomError::NegativeDimension(_))));
        let bad: ExactSeqSpec = "dims 1, 0\nunknown\ndims 0, 0\nfact: zero 0\n".parse().unwrap();
        assert!(matches!(solve_exact_sequence(&bad, &a), Err(CohomError::Inconsistent(_))));
        let two: ExactSeqSpec = "unknown\nunknown\ndims 1, 0\n".parse().unwrap();
        assert!(matches!(solve_exact_sequence(&two, &a), Err(CohomError::InvalidSequence(_))));
    }

    #[test]
    fn text_round_trip() {
        let text = "space p2\np2 r\np2 2*r + 1 x3\nunknown\nfact: injective 4\n";
        let s: ExactSeqSpec = text.parse().unwrap();
        assert_eq!(s.to_string(), text);
        assert!(matches!(
            "conic 1\n".parse::<ExactSeqSpec>(),
            Err(CohomError::Parse { line: 1, .. })
        ));
    }
}
