//! Binomial-basis expansions and integrality obstructions.
//!
//! A bundle on P^n has an integer-valued Hilbert polynomial, so every
//! coefficient of `χ(E(t))` in the basis `C(t+i, i)` must be an integer. When
//! the Chern classes depend on a parameter `r`, each coefficient is
//! `num(r)/den` and its integrality depends only on `r mod den`; the
//! residues that survive every coefficient are found by enumeration.
//!
//! When the Chern classes themselves are integral only on some residue
//! classes, the parameter is first rewritten as `r = m·R + ρ` for the
//! smallest period `m` of the admissible set, one branch per surviving `ρ`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{binomial_poly, int, MultiPoly, PolyT, Rational, Var};
use crate::chow::{euler_characteristic, BundleClass, ChowError};

/// Name of the parameter introduced by a pre-substitution `r = m·R + ρ`.
pub const BRANCH_PARAM: &str = "R";

/// Largest modulus enumerated.
pub const MAX_MODULUS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegralityError {
    #[error("polynomial has degree {found} in t, basis only reaches {max}")]
    DegreeTooHigh { found: u32, max: u32 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("modulus {0} exceeds the enumeration limit")]
    ModulusTooLarge(BigInt),
    #[error("coefficients are not all integers: {0}")]
    NotIntegral(String),
    #[error("expected a polynomial in at most one variable: {0}")]
    NotUnivariate(String),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

/// `num / den` with `num` an integer polynomial, `den > 0`, and no common
/// integer factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpansionCoeff {
    pub num: MultiPoly,
    pub den: BigInt,
}

fn content(p: &MultiPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

impl ExpansionCoeff {
    pub fn from_poly(p: &MultiPoly) -> Self {
        let den = p.denominator_lcm();
        let num = p.scale(&Rational::from_integer(den.clone()));
        let g = content(&num).gcd(&den);
        if g.is_zero() || g.is_one() {
            return ExpansionCoeff { num, den };
        }
        let gq = Rational::from_integer(g.clone());
        ExpansionCoeff { num: num.scale(&gq.recip()), den: den / g }
    }

    pub fn value(&self) -> MultiPoly {
        self.num.scale(&Rational::new(BigInt::one(), self.den.clone()))
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }
}

impl fmt::Display for ExpansionCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() > 1 {
            write!(f, "({})/{}", self.num, self.den)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for ExpansionCoeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `p = Σ coeffs[i] · C(t+i, i)` for `i = 0..=n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BinomialExpansion {
    pub n: u32,
    pub coeffs: Vec<ExpansionCoeff>,
}

impl fmt::Display for BinomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.num.is_zero())
            .map(|(i, c)| format!("[{c}]*C(t+{i},{i})"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn to_binomial_basis(p: &PolyT, n: u32) -> Result<BinomialExpansion, IntegralityError> {
    if p.degree() > n {
        return Err(IntegralityError::DegreeTooHigh { found: p.degree(), max: n });
    }
    let mut rest = p.as_poly().clone();
    let t = PolyT::t();
    let mut coeffs = vec![MultiPoly::zero(); n as usize + 1];
    let mut fact = Rational::one();
    for i in 1..=n {
        fact *= int(i as i64);
    }
    for i in (0..=n).rev() {
        let c = rest.coeff_in(&t, i).scale(&fact);
        rest = &rest - &(&c * binomial_poly(i).as_poly());
        coeffs[i as usize] = c;
        if i > 0 {
            fact /= int(i as i64);
        }
    }
    debug_assert!(rest.is_zero());
    Ok(BinomialExpansion { n, coeffs: coeffs.iter().map(ExpansionCoeff::from_poly).collect() })
}

pub fn from_binomial_basis(e: &BinomialExpansion) -> PolyT {
    let sum = e
        .coeffs
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(), |acc, (i, c)| &acc + &(&c.value() * binomial_poly(i as u32).as_poly()));
    PolyT::new(sum)
}

fn single_var(p: &MultiPoly) -> Result<Option<Var>, IntegralityError> {
    let vars = p.vars();
    if vars.len() > 1 {
        return Err(IntegralityError::NotUnivariate(p.to_string()));
    }
    Ok(vars.into_iter().next())
}

fn eval_mod(p: &MultiPoly, var: &Option<Var>, x: u64, m: &BigInt) -> BigInt {
    let v = match var {
        Some(v) => p.eval_at(v.name(), &int(x as i64)).expect("univariate"),
        None => p.constant_term(),
    };
    v.to_integer().mod_floor(m)
}

/// Residues `ρ mod m` with `num(ρ) ≡ 0 (mod m)`, by enumeration.
pub fn congruence_residues(num: &MultiPoly, m: u64) -> Result<BTreeSet<u64>, IntegralityError> {
    if m < 2 {
        return Err(IntegralityError::BadModulus(m));
    }
    if m > MAX_MODULUS {
        return Err(IntegralityError::ModulusTooLarge(m.into()));
    }
    if !num.has_integer_coeffs() {
        return Err(IntegralityError::NotIntegral(num.to_string()));
    }
    let var = single_var(num)?;
    let mb = BigInt::from(m);
    Ok((0..m).filter(|&x| eval_mod(num, &var, x, &mb).is_zero()).collect())
}

/// Prime-power divisors `p^k || n`.
pub fn prime_power_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut q = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    ExistsCandidate,
    Nonexistence,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::ExistsCandidate => "exists-candidate",
            Conclusion::Nonexistence => "nonexistence",
        })
    }
}

/// Residues of the parameter, modulo `modulus`, for which `label` is an
/// integer.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ResidueRecord {
    pub label: String,
    pub numerator: String,
    pub modulus: u64,
    pub residues: Vec<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Branch {
    /// E.g. `r = 3*R`; absent when no substitution was needed.
    pub substitution: Option<String>,
    pub chern: Vec<String>,
    pub expansion: BinomialExpansion,
    pub records: Vec<ResidueRecord>,
    /// All coefficients at once, modulo the lcm of their denominators.
    pub admissible: ResidueRecord,
    pub conclusion: Conclusion,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Verdict {
    pub template: String,
    /// Integrality of the Chern classes themselves.
    pub chern_records: Vec<ResidueRecord>,
    /// Smallest period of the residues where the Chern classes are integral.
    pub period: u64,
    pub branches: Vec<Branch>,
    pub conclusion: Conclusion,
}

impl Verdict {
    /// Every residue set computed, Chern classes first.
    pub fn all_records(&self) -> impl Iterator<Item = &ResidueRecord> {
        self.chern_records
            .iter()
            .chain(self.branches.iter().flat_map(|b| b.records.iter().chain(std::iter::once(&b.admissible))))
    }
}

fn to_u64(n: &BigInt) -> Result<u64, IntegralityError> {
    n.to_u64()
        .filter(|&m| m <= MAX_MODULUS)
        .ok_or_else(|| IntegralityError::ModulusTooLarge(n.clone()))
}

/// Records per coefficient modulo its denominator and each prime power of
/// it, plus the joint admissible set modulo the lcm.
fn residue_analysis(
    labelled: &[(String, ExpansionCoeff)],
) -> Result<(Vec<ResidueRecord>, ResidueRecord), IntegralityError> {
    let mut records = Vec::new();
    let mut lcm = BigInt::one();
    let mut var = None;
    for (label, c) in labelled {
        if c.den.is_one() {
            continue;
        }
        if let Some(v) = single_var(&c.num)? {
            if var.as_ref().is_some_and(|w| w != &v) {
                return Err(IntegralityError::NotUnivariate(c.num.to_string()));
            }
            var = Some(v);
        }
        let den = to_u64(&c.den)?;
        lcm = lcm.lcm(&c.den);
        let mut moduli = vec![den];
        let pp = prime_power_divisors(den);
        if pp.len() > 1 {
            moduli.extend(pp);
        }
        for m in moduli {
            records.push(ResidueRecord {
                label: label.clone(),
                numerator: c.num.to_string(),
                modulus: m,
                residues: congruence_residues(&c.num, m)?.into_iter().collect(),
            });
        }
    }
    let l = to_u64(&lcm)?;
    let joint: Vec<u64> = (0..l)
        .filter(|&x| {
            labelled
                .iter()
                .all(|(_, c)| c.den.is_one() || eval_mod(&c.num, &var, x, &c.den).is_zero())
        })
        .collect();
    let joint = ResidueRecord { label: "all".into(), numerator: String::new(), modulus: l, residues: joint };
    Ok((records, joint))
}

/// Smallest divisor `m` of `l` such that membership in `set` only depends on
/// the residue mod `m`.
fn minimal_period(set: &[u64], l: u64) -> u64 {
    let members: BTreeSet<u64> = set.iter().copied().collect();
    (1..=l)
        .filter(|&m| l.is_multiple_of(m))
        .find(|&m| (0..l).all(|x| members.contains(&x) == members.contains(&((x + m) % l))))
        .unwrap_or(l)
}

/// Integrality analysis of `χ(E(t))` for a bundle whose Chern classes are
/// polynomials in `r`. `template` is recorded in the verdict.
pub fn schwarzenberger_verdict(b: &BundleClass, template: &str) -> Result<Verdict, IntegralityError> {
    let n = b.ambient_dim() as u32;
    let chern: Vec<(String, ExpansionCoeff)> = b
        .chern_classes()
        .iter()
        .enumerate()
        .map(|(i, c)| (format!("c{}", i + 1), ExpansionCoeff::from_poly(c)))
        .collect();
    let (chern_records, chern_joint) = residue_analysis(&chern)?;
    let mut out = Verdict {
        template: template.to_string(),
        chern_records,
        period: 1,
        branches: Vec::new(),
        conclusion: Conclusion::Nonexistence,
    };
    if chern_joint.residues.is_empty() {
        out.chern_records.push(chern_joint);
        return Ok(out);
    }
    let period = minimal_period(&chern_joint.residues, chern_joint.modulus);
    out.period = period;
    let var = chern
        .iter()
        .find_map(|(_, c)| single_var(&c.num).ok().flatten());
    let starts: Vec<u64> = chern_joint.residues.iter().copied().filter(|&x| x < period).collect();
    out.chern_records.push(chern_joint);
    for rho in starts {
        let (bundle, substitution) = match (&var, period) {
            (Some(v), m) if m > 1 => {
                let big_r = MultiPoly::var(BRANCH_PARAM);
                let value = &big_r.scale(&int(m as i64)) + &MultiPoly::int(rho as i64);
                let sub = format!("{} = {}", v.name(), value);
                (b.map_classes(|c| c.substitute_var(v.name(), &value)), Some(sub))
            }
            _ => (b.clone(), None),
        };
        let chi = euler_characteristic(&bundle);
        let expansion = to_binomial_basis(&chi, n)?;
        let labelled: Vec<(String, ExpansionCoeff)> = expansion
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("C(t+{i},{i})"), c.clone()))
            .collect();
        let (records, admissible) = residue_analysis(&labelled)?;
        let conclusion = if admissible.residues.is_empty() {
            Conclusion::Nonexistence
        } else {
            Conclusion::ExistsCandidate
        };
        out.branches.push(Branch {
            substitution,
            chern: bundle.chern_classes().iter().map(|c| c.to_string()).collect(),
            expansion,
            records,
            admissible,
            conclusion,
        });
    }
    if out.branches.iter().any(|b| b.conclusion == Conclusion::ExistsCandidate) {
        out.conclusion = Conclusion::ExistsCandidate;
    }
    Ok(out)
}
