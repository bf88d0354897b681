use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{int, ArithError, Rational};

/// Fixed global order of the indeterminates the engine uses. Names not in
/// this list sort after it, alphabetically.
const KNOWN_VARS: &[&str] = &[
    "t", "r", "R", "c1", "c2", "c3", "h", "s", "u", "a1", "a2", "a3", "a4", "a5",
];

/// A named indeterminate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var {
    rank: u16,
    name: Arc<str>,
}

impl Var {
    pub fn new(name: &str) -> Self {
        let rank = KNOWN_VARS
            .iter()
            .position(|&v| v == name)
            .map_or(u16::MAX, |p| p as u16);
        Var { rank, name: Arc::from(name) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.name.cmp(&other.name))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Power product of variables, stored sparsely as `(var, exponent)` pairs
/// sorted by variable with every exponent positive.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the earliest variable in the global order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    /// Drops `v` from the monomial, returning its former exponent.
    pub fn without(&self, v: &Var) -> (Monomial, u32) {
        let e = self.exponent(v);
        let rest = self.0.iter().filter(|(w, _)| w != v).cloned().collect();
        (Monomial(rest), e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in named variables with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        MultiPoly::term(Rational::one(), Monomial::var(Var::new(name), 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, v: &Var, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            if e == k {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Coefficients of `v^0, v^1, ..., v^deg`.
    pub fn coeffs_in(&self, v: &Var) -> Vec<MultiPoly> {
        (0..=self.degree_in(v)).map(|k| self.coeff_in(v, k)).collect()
    }

    /// Rebuilds `Σ coeffs[k] v^k`.
    pub fn from_coeffs_in(v: &Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let x = MultiPoly::term(Rational::one(), Monomial::var(v.clone(), 1));
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> MultiPoly {
        if q.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn div_scalar(&self, q: &Rational) -> Result<MultiPoly, ArithError> {
        if q.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.scale(&q.recip()))
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of the bound variables; unbound variables
    /// are kept.
    pub fn substitute(&self, bindings: &BTreeMap<Var, MultiPoly>) -> MultiPoly {
        let mut powers: BTreeMap<(Var, u32), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = MultiPoly::constant(c.clone());
            for (v, e) in m.factors() {
                match bindings.get(v) {
                    Some(value) => {
                        let pw = powers
                            .entry((v.clone(), *e))
                            .or_insert_with(|| value.pow(*e));
                        factor = &factor * &*pw;
                    }
                    None => kept.push((v.clone(), *e)),
                }
            }
            let kept = MultiPoly::term(Rational::one(), Monomial(kept));
            out = &out + &(&factor * &kept);
        }
        out
    }

    pub fn substitute_var(&self, v: &str, value: &MultiPoly) -> MultiPoly {
        let mut b = BTreeMap::new();
        b.insert(Var::new(v), value.clone());
        self.substitute(&b)
    }

    /// Full evaluation; every variable must be bound.
    pub fn eval(&self, values: &BTreeMap<Var, Rational>) -> Result<Rational, ArithError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = values
                    .get(v)
                    .ok_or_else(|| ArithError::Unbound(v.name().to_string()))?;
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates a polynomial in at most the single variable `v`.
    pub fn eval_at(&self, v: &str, x: &Rational) -> Result<Rational, ArithError> {
        let mut values = BTreeMap::new();
        values.insert(Var::new(v), x.clone());
        self.eval(&values)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// The leading (largest) term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn is_homogeneous_of(&self, deg: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == deg)
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.terms.values().any(Signed::is_negative)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl From<Rational> for MultiPoly {
    fn from(q: Rational) -> Self {
        MultiPoly::constant(q)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_square() {
        let x = p("t + 1");
        assert_eq!(&x * &x, p("t^2 + 2*t + 1"));
    }

    #[test]
    fn sum_with_constant() {
        assert_eq!(p("r - 3") + p("6"), p("r + 3"));
    }

    #[test]
    fn expand_shifted_binomial() {
        let s = p("t + r");
        let q = (&s * &s + s.scale(&int(3)) + p("2")).div_scalar(&int(2)).unwrap();
        let expected = p("t^2 + (2*r + 3)*t + r^2 + 3*r + 2")
            .div_scalar(&int(2))
            .unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn scalar_division_by_zero() {
        assert_eq!(
            p("t").div_scalar(&int(0)),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn substitution_and_evaluation() {
        let f = p("4*t + r + 2");
        let mut v = BTreeMap::new();
        v.insert(Var::new("t"), int(0));
        v.insert(Var::new("r"), int(1));
        assert_eq!(f.eval(&v).unwrap(), int(3));

        assert_eq!(p("r - 3").substitute_var("r", &p("3*R")), p("3*R - 3"));

        let g = p("t^2 + (r + 3)*t + (1/2)*r^2 + (3/2)*r + 2");
        let mut v = BTreeMap::new();
        v.insert(Var::new("t"), int(0));
        v.insert(Var::new("r"), int(0));
        assert_eq!(g.eval(&v).unwrap(), int(2));
    }

    #[test]
    fn unbound_variable_is_an_error() {
        assert!(matches!(
            p("t + r").eval_at("t", &int(1)),
            Err(ArithError::Unbound(v)) if v == "r"
        ));
    }

    #[test]
    fn coefficient_extraction() {
        let f = p("t^2*r + 3*t*r + (1/2)*r^2 - 1");
        let t = Var::new("t");
        assert_eq!(f.degree_in(&t), 2);
        assert_eq!(f.coeff_in(&t, 1), p("3*r"));
        assert_eq!(f.coeff_in(&t, 0), p("(1/2)*r^2 - 1"));
        assert_eq!(MultiPoly::from_coeffs_in(&t, &f.coeffs_in(&t)), f);
    }

    #[test]
    fn grlex_order_of_terms() {
        let f = p("1 + r^2 + t*r + t^2 + t");
        let order: Vec<String> = f.terms().rev().map(|(m, _)| format!("{m:?}")).collect();
        assert_eq!(order, ["t^2", "t*r", "r^2", "t", "1"]);
    }

    #[test]
    fn denominators() {
        let f = p("(1/12)*r^3 + (1/8)*r - 2");
        assert_eq!(f.denominator_lcm(), BigInt::from(24));
        assert!(!f.has_integer_coeffs());
        assert_eq!(f.scale(&rat(24, 1)), p("2*r^3 + 3*r - 48"));
    }
}
