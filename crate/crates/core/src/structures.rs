//! Hilbert polynomials of multiple structures and Chern classes matched
//! against a Koszul template.
//!
//! A multiple structure is described by the locally free quotients of a
//! filtration of its structure sheaf. Each quotient is a line bundle either
//! on a smooth conic (pulled back to P^1 through the degree-2 embedding, so
//! `O_C(t)` has degree `2t`) or on a plane. The Hilbert polynomial is the sum
//! of their Euler characteristics.
//!
//! Text format, one layer per line:
//!
//! ```text
//! name: double conic
//! conic 0 0     # L^k(m), pullback degree k*r + 2m
//! conic 1 0
//! plane 2*r     # O(a) on P^2, a linear in r
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{binomial_poly, MultiPoly, PolyT, Rational, Var};
use crate::chow::{koszul_euler, BundleClass, ChowError};
use crate::chow::splitting::chern_vars;
use crate::cohomology::{pullback_degree, ConicBundle, LinForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("structure has no layers")]
    Empty,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("target has degree {found} in t, the template only reaches {max}")]
    DegreeTooHigh { found: u32, max: u32 },
    #[error("t^{degree} coefficient forces 0 = {residue}")]
    Inconsistent { degree: u32, residue: String },
    #[error("t^{degree} coefficient is not linear in a single new unknown with constant coefficient: {coeff}")]
    NonTriangular { degree: u32, coeff: String },
    #[error("unknowns left undetermined: {0:?}")]
    Underdetermined(Vec<String>),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiltrationLayer {
    /// A line bundle on a smooth conic.
    ConicP1(ConicBundle),
    /// `O(a)` on a plane.
    PlaneP2(LinForm),
}

impl FiltrationLayer {
    /// Euler characteristic of the layer twisted by `O(t)`.
    pub fn euler(&self) -> PolyT {
        match self {
            FiltrationLayer::ConicP1(c) => {
                let d = pullback_degree(c).to_poly();
                let t = MultiPoly::var(PolyT::VAR);
                PolyT::new(&(&t.scale(&Rational::from_integer(2.into())) + &d) + &MultiPoly::one())
            }
            FiltrationLayer::PlaneP2(a) => binomial_poly(2).shift(&a.to_poly()),
        }
    }
}

impl fmt::Display for FiltrationLayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationLayer::ConicP1(c) => write!(f, "conic {} {}", c.k, c.m),
            FiltrationLayer::PlaneP2(a) => write!(f, "plane {a}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureSpec {
    pub name: String,
    pub layers: Vec<FiltrationLayer>,
}

impl StructureSpec {
    pub fn new(name: &str, layers: Vec<FiltrationLayer>) -> Result<Self, StructureError> {
        if layers.is_empty() {
            return Err(StructureError::Empty);
        }
        Ok(StructureSpec { name: name.to_string(), layers })
    }

    pub fn double_conic() -> Self {
        let layers = vec![FiltrationLayer::ConicP1(ConicBundle::o(0)), FiltrationLayer::ConicP1(ConicBundle::l())];
        StructureSpec { name: "double conic".into(), layers }
    }

    /// Planes twisted by `0, r, ..., (k-1) r`.
    pub fn multiple_plane(k: usize) -> Self {
        let layers = (0..k as i64).map(|i| FiltrationLayer::PlaneP2(LinForm::new(i, 0))).collect();
        StructureSpec { name: format!("plane of multiplicity {k}"), layers }
    }

    pub fn concat(&self, other: &StructureSpec) -> StructureSpec {
        let mut layers = self.layers.clone();
        layers.extend_from_slice(&other.layers);
        StructureSpec { name: format!("{} + {}", self.name, other.name), layers }
    }
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        for l in &self.layers {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for StructureSpec {
    type Err = StructureError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut name = String::new();
        let mut layers = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| StructureError::Parse { line: n + 1, msg };
            if let Some(rest) = line.strip_prefix("name:") {
                name = rest.trim().to_string();
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match head {
                "conic" => {
                    let nums: Vec<i64> = rest
                        .split_whitespace()
                        .map(|x| x.parse().map_err(|_| err(format!("bad integer `{x}`"))))
                        .collect::<Result<_, _>>()?;
                    let [k, m] = nums[..] else {
                        return Err(err("conic needs two integers k m".into()));
                    };
                    layers.push(FiltrationLayer::ConicP1(ConicBundle::new(k, m)));
                }
                "plane" => {
                    let a: LinForm = rest.trim().parse().map_err(|e| err(format!("{e}")))?;
                    layers.push(FiltrationLayer::PlaneP2(a));
                }
                _ => return Err(err(format!("unrecognized line `{line}`"))),
            }
        }
        StructureSpec::new(&name, layers)
    }
}

pub fn hilbert_of_layers(s: &StructureSpec) -> PolyT {
    let sum = s
        .layers
        .iter()
        .fold(MultiPoly::zero(), |acc, l| &acc + l.euler().as_poly());
    PolyT::new(sum)
}

/// `C(t+2,2) + C(t+r+2,2)`.
pub fn hilbert_double_plane() -> PolyT {
    hilbert_of_layers(&StructureSpec::multiple_plane(2))
}

/// `C(t+2,2) + C(t+r+2,2) + C(t+2r+2,2)`.
pub fn hilbert_triple_plane() -> PolyT {
    hilbert_of_layers(&StructureSpec::multiple_plane(3))
}

/// Which formula for `χ(O_Y(t))` of a codimension-3 locally complete
/// intersection in P^5 to match against.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Template {
    /// The closed form as printed in the source, kept verbatim.
    Paper,
    /// Riemann-Roch applied to the Koszul resolution of a symbolic rank-3
    /// bundle with Chern classes `c1, c2, c3`.
    Derived,
}

impl Template {
    pub fn label(&self) -> &'static str {
        match self {
            Template::Paper => "paper",
            Template::Derived => "derived",
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Template {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Template::Paper),
            "derived" => Ok(Template::Derived),
            _ => Err(format!("unknown template `{s}`")),
        }
    }
}

/// `-(c3/2) t^2 - ((c1+6) c3/2) t + (c2 - 2 c1^2 - 18 c1 - 51) c3/2`.
pub fn paper_chi_formula(c1: &MultiPoly, c2: &MultiPoly, c3: &MultiPoly) -> PolyT {
    let half = Rational::new(1.into(), 2.into());
    let t = MultiPoly::var(PolyT::VAR);
    let quad = (&(&t * &t) * c3).scale(&-half.clone());
    let lin = (&(&(c1 + &MultiPoly::int(6)) * c3) * &t).scale(&-half.clone());
    let inner = &(&(c2 - &c1.pow(2).scale(&Rational::from_integer(2.into()))) - &c1.scale(&Rational::from_integer(18.into())))
        - &MultiPoly::int(51);
    let constant = (&inner * c3).scale(&half);
    PolyT::new(&(&quad + &lin) + &constant)
}

fn symbolic_chern() -> [MultiPoly; 3] {
    let v = chern_vars(3);
    [MultiPoly::var(v[0].name()), MultiPoly::var(v[1].name()), MultiPoly::var(v[2].name())]
}

/// The template as a polynomial in `t, c1, c2, c3`.
pub fn chi_template(template: Template) -> Result<PolyT, StructureError> {
    let [c1, c2, c3] = symbolic_chern();
    match template {
        Template::Paper => Ok(paper_chi_formula(&c1, &c2, &c3)),
        Template::Derived => {
            let e = BundleClass::new(3, vec![c1, c2, c3], 5)?;
            Ok(koszul_euler(&e)?)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ChernTriple {
    pub c1: MultiPoly,
    pub c2: MultiPoly,
    pub c3: MultiPoly,
}

impl ChernTriple {
    pub fn new(c1: MultiPoly, c2: MultiPoly, c3: MultiPoly) -> Self {
        ChernTriple { c1, c2, c3 }
    }

    pub fn as_vec(&self) -> Vec<MultiPoly> {
        vec![self.c1.clone(), self.c2.clone(), self.c3.clone()]
    }

    pub fn bindings(&self) -> BTreeMap<Var, MultiPoly> {
        chern_vars(3).into_iter().zip(self.as_vec()).collect()
    }

    pub fn substitute(&self, bindings: &BTreeMap<Var, MultiPoly>) -> ChernTriple {
        ChernTriple::new(
            self.c1.substitute(bindings),
            self.c2.substitute(bindings),
            self.c3.substitute(bindings),
        )
    }

    /// The template evaluated at this triple.
    pub fn apply(&self, template: &PolyT) -> PolyT {
        PolyT::new(template.as_poly().substitute(&self.bindings()))
    }
}

impl fmt::Display for ChernTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c1, self.c2, self.c3)
    }
}

/// Solves `template(c1, c2, c3) = target` coefficient by coefficient from
/// the top power of `t` down. Each coefficient, after substituting what is
/// already known, must be `α·x + β` for a single new unknown `x` and a
/// nonzero rational `α`.
pub fn solve_chern_from_hilbert(target: &PolyT, template: Template) -> Result<ChernTriple, StructureError> {
    let tpl = chi_template(template)?;
    let top = tpl.degree();
    if target.degree() > top {
        return Err(StructureError::DegreeTooHigh { found: target.degree(), max: top });
    }
    let unknowns = chern_vars(3);
    let mut known: BTreeMap<Var, MultiPoly> = BTreeMap::new();
    for k in (0..=top).rev() {
        let eq = &tpl.coeff(k).substitute(&known) - &target.coeff(k);
        let fresh: Vec<&Var> = unknowns.iter().filter(|v| eq.vars().contains(v)).collect();
        match fresh[..] {
            [] => {
                if !eq.is_zero() {
                    return Err(StructureError::Inconsistent { degree: k, residue: eq.to_string() });
                }
            }
            [x] => {
                let alpha = eq.coeff_in(x, 1);
                let non_triangular = || StructureError::NonTriangular { degree: k, coeff: eq.to_string() };
                if eq.degree_in(x) != 1 {
                    return Err(non_triangular());
                }
                let a = alpha.constant_value().filter(|a| !num_traits::Zero::is_zero(a)).ok_or_else(non_triangular)?;
                let beta = eq.coeff_in(x, 0);
                known.insert(x.clone(), (-&beta).scale(&a.recip()));
            }
            _ => {
                return Err(StructureError::NonTriangular { degree: k, coeff: eq.to_string() });
            }
        }
    }
    let missing: Vec<String> = unknowns
        .iter()
        .filter(|v| !known.contains_key(v))
        .map(|v| v.name().to_string())
        .collect();
    if !missing.is_empty() {
        return Err(StructureError::Underdetermined(missing));
    }
    Ok(ChernTriple::new(
        known.remove(&unknowns[0]).unwrap(),
        known.remove(&unknowns[1]).unwrap(),
        known.remove(&unknowns[2]).unwrap(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> PolyT {
        PolyT::new(p(s))
    }

    #[test]
    fn layer_sums() {
        assert_eq!(hilbert_of_layers(&StructureSpec::double_conic()), pt("4*t + r + 2"));
        assert_eq!(hilbert_of_layers(&StructureSpec::multiple_plane(1)), binomial_poly(2));
        assert_eq!(hilbert_double_plane(), pt("t^2 + (r + 3)*t + (r^2 + 3*r + 4)/2"));
        assert_eq!(hilbert_triple_plane(), pt("3/2*t^2 + (6*r + 9)/2*t + (5*r^2 + 9*r + 6)/2"));
        let at = hilbert_double_plane().as_poly().substitute_var("r", &p("2")).substitute_var("t", &p("0"));
        assert_eq!(at, p("7"));
    }

    #[test]
    fn text_format() {
        let s: StructureSpec = "name: Y\n# comment\nconic 0 0\nconic 1 0  # L\n".parse().unwrap();
        assert_eq!(s, StructureSpec { name: "Y".into(), ..StructureSpec::double_conic() });
        assert_eq!(s.to_string().parse::<StructureSpec>().unwrap(), s);
        assert_eq!("name: empty\n".parse::<StructureSpec>(), Err(StructureError::Empty));
        assert!(matches!("plane r^2".parse::<StructureSpec>(), Err(StructureError::Parse { line: 1, .. })));
    }

    #[test]
    fn paper_formula_values() {
        assert_eq!(paper_chi_formula(&p("-4"), &p("5"), &p("-2")), pt("t^2 + 2*t + 6"));
        assert_eq!(paper_chi_formula(&p("c1"), &p("c2"), &p("0")), pt("0"));
        assert_eq!(chi_template(Template::Paper).unwrap().degree(), 2);
    }

    #[test]
    fn solve_under_paper_template() {
        let two = solve_chern_from_hilbert(&hilbert_double_plane(), Template::Paper).unwrap();
        assert_eq!(two, ChernTriple::new(p("r - 3"), p("(3*r^2 + 9*r + 26)/2"), p("-2")));
        let three = solve_chern_from_hilbert(&hilbert_triple_plane(), Template::Paper).unwrap();
        assert_eq!(three, ChernTriple::new(p("2*r - 3"), p("(19*r^2 + 27*r + 39)/3"), p("-3")));
    }

    #[test]
    fn solve_under_derived_template() {
        let two = solve_chern_from_hilbert(&hilbert_double_plane(), Template::Derived).unwrap();
        assert_eq!(two, ChernTriple::new(p("r - 3"), p("-r^2 - 3*r + 3"), p("-2")));
        let three = solve_chern_from_hilbert(&hilbert_triple_plane(), Template::Derived).unwrap();
        assert_eq!(three, ChernTriple::new(p("2*r - 3"), p("-2*r^2 - 6*r + 3"), p("-3")));
        let tpl = chi_template(Template::Derived).unwrap();
        assert_eq!(two.apply(&tpl), hilbert_double_plane());
    }

    #[test]
    fn solve_errors() {
        assert!(matches!(
            solve_chern_from_hilbert(&pt("t^3"), Template::Paper),
            Err(StructureError::DegreeTooHigh { found: 3, max: 2 })
        ));
        assert!(matches!(
            solve_chern_from_hilbert(&pt("t + 1"), Template::Paper),
            Err(StructureError::Inconsistent { degree: 1, .. })
        ));
    }
}
