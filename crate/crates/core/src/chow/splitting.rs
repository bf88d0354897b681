//! Splitting-principle oracle.
//!
//! Everything here is recomputed from formal Chern roots `a1..a_k` without
//! going through Newton's identities or Adams operations, then compared with
//! the closed-form path by substituting `c_i = e_i(a)` into it. Symmetric
//! results are also rewritten back in terms of `c1..c_k` so they can be
//! printed next to the closed forms.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    adams_operation, chern_character, euler_from_character, koszul_euler, wedge_powers,
    BundleClass, ChowElem, ChowError,
};
use crate::arith::{Monomial, MultiPoly, Rational, Var};

pub fn root_vars(rank: usize) -> Vec<Var> {
    (1..=rank).map(|i| Var::new(&format!("a{i}"))).collect()
}

pub fn chern_vars(rank: usize) -> Vec<Var> {
    (1..=rank).map(|i| Var::new(&format!("c{i}"))).collect()
}

/// `e_1..e_k` of the given variables.
pub fn elementary_symmetric(vars: &[Var]) -> Vec<MultiPoly> {
    let twists: Vec<MultiPoly> = vars
        .iter()
        .map(|v| MultiPoly::term(Rational::from_integer(1.into()), Monomial::var(v.clone(), 1)))
        .collect();
    let mut e = vec![MultiPoly::one()];
    for x in &twists {
        let mut next = e.clone();
        next.push(MultiPoly::zero());
        for i in 1..next.len() {
            let prev = e.get(i).cloned().unwrap_or_else(MultiPoly::zero);
            next[i] = &prev + &(&e[i - 1] * x);
        }
        e = next;
    }
    e.into_iter().skip(1).collect()
}

/// Substitution `c_i -> e_i(a1..a_k)`.
pub fn chern_to_roots(rank: usize) -> BTreeMap<Var, MultiPoly> {
    chern_vars(rank)
        .into_iter()
        .zip(elementary_symmetric(&root_vars(rank)))
        .collect()
}

/// Rewrites a polynomial symmetric in `roots` as a polynomial in the
/// elementary symmetric functions, named `c1..c_k`. Other variables ride
/// along in the coefficients.
pub fn symmetric_to_chern(p: &MultiPoly, roots: &[Var]) -> Result<MultiPoly, ChowError> {
    let k = roots.len();
    let e = elementary_symmetric(roots);
    let c: Vec<MultiPoly> = chern_vars(k)
        .into_iter()
        .map(|v| MultiPoly::term(Rational::from_integer(1.into()), Monomial::var(v, 1)))
        .collect();
    let mut rest = p.clone();
    let mut out = MultiPoly::zero();
    loop {
        let mut groups: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (m, coef) in rest.terms() {
            let exps: Vec<u32> = roots.iter().map(|v| m.exponent(v)).collect();
            let stripped = Monomial::from_pairs(
                m.factors().iter().filter(|(v, _)| !roots.contains(v)).cloned(),
            );
            let g = groups.entry(exps).or_default();
            *g = &*g + &MultiPoly::term(coef.clone(), stripped);
        }
        let Some((lead, coeff)) = groups.into_iter().next_back() else {
            break;
        };
        if lead.iter().all(|&x| x == 0) {
            out = &out + &coeff;
            break;
        }
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(ChowError::NotSymmetric(lead));
        }
        let mut in_roots = coeff.clone();
        let mut in_chern = coeff;
        for i in 0..k {
            let pw = lead[i] - lead.get(i + 1).copied().unwrap_or(0);
            if pw > 0 {
                in_roots = &in_roots * &e[i].pow(pw);
                in_chern = &in_chern * &c[i].pow(pw);
            }
        }
        rest = &rest - &in_roots;
        out = &out + &in_chern;
    }
    Ok(out)
}

/// `Σ exp(x_i h)`.
pub fn character_of_roots(n: usize, roots: &[MultiPoly]) -> ChowElem {
    roots
        .iter()
        .fold(ChowElem::zero(n), |acc, x| acc.add(&ChowElem::exp(n, x)))
}

/// Chern classes of `Λ²E` from the pairwise root sums, written in `c1..c3`.
pub fn wedge_square_chern_via_roots(n: usize) -> Result<Vec<MultiPoly>, ChowError> {
    let roots = root_vars(3);
    let a: Vec<MultiPoly> = roots.iter().map(|v| MultiPoly::var(v.name())).collect();
    let pair_sums = [&a[0] + &a[1], &a[0] + &a[2], &a[1] + &a[2]];
    let e = BundleClass::split(&pair_sums, n)?;
    e.chern_classes()
        .iter()
        .map(|c| symmetric_to_chern(c, &roots))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// Root-path value rewritten in Chern classes.
    pub via_roots: String,
    pub closed_form: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub rank: usize,
    pub ambient_dim: usize,
    pub checks: Vec<IdentityCheck>,
}

impl SplittingReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn check(
    name: &str,
    closed: &MultiPoly,
    roots_value: &MultiPoly,
    roots: &[Var],
    subst: &BTreeMap<Var, MultiPoly>,
) -> Result<IdentityCheck, ChowError> {
    let holds = &closed.substitute(subst) == roots_value;
    Ok(IdentityCheck {
        name: name.to_string(),
        holds,
        via_roots: symmetric_to_chern(roots_value, roots)?.to_string(),
        closed_form: closed.to_string(),
    })
}

/// Recomputes `ch`, `ψ²`, `ψ³` and, for rank 3, the wedge powers and the
/// Koszul Euler characteristic from formal roots, and compares each with the
/// closed-form path.
pub fn splitting_oracle(rank: usize, n: usize) -> Result<SplittingReport, ChowError> {
    if !(1..=3).contains(&rank) {
        return Err(ChowError::RankMismatch { expected: 3, found: rank });
    }
    let roots = root_vars(rank);
    let a: Vec<MultiPoly> = roots.iter().map(|v| MultiPoly::var(v.name())).collect();
    let subst = chern_to_roots(rank);
    let symbolic = BundleClass::new(
        rank,
        chern_vars(rank).iter().map(|v| MultiPoly::var(v.name())).collect(),
        n,
    )?;
    let ch = chern_character(&symbolic);
    let ch_roots = character_of_roots(n, &a);
    let mut checks = Vec::new();
    for k in 0..=n {
        checks.push(check(&format!("ch_{k}"), ch.coeff(k), ch_roots.coeff(k), &roots, &subst)?);
    }
    for m in [2u32, 3] {
        let scaled: Vec<MultiPoly> = a.iter().map(|x| x.scale(&Rational::from_integer(m.into()))).collect();
        let psi_roots = character_of_roots(n, &scaled);
        let psi = adams_operation(m, &ch);
        for k in 0..=n {
            checks.push(check(
                &format!("psi{m}_ch_{k}"),
                psi.coeff(k),
                psi_roots.coeff(k),
                &roots,
                &subst,
            )?);
        }
    }
    if rank == 3 {
        let (l2, l3) = wedge_powers(&symbolic)?;
        let pair_sums = [&a[0] + &a[1], &a[0] + &a[2], &a[1] + &a[2]];
        let l2_roots = BundleClass::split(&pair_sums, n)?;
        let l3_roots = BundleClass::line(&(&a[0] + &a[1]) + &a[2], n)?;
        for i in 1..=3 {
            checks.push(check(
                &format!("wedge2_c{i}"),
                &l2.chern(i),
                &l2_roots.chern(i),
                &roots,
                &subst,
            )?);
        }
        checks.push(check("wedge3_c1", &l3.chern(1), &l3_roots.chern(1), &roots, &subst)?);

        let chi = koszul_euler(&symbolic)?.into_poly();
        let mut alt = ChowElem::one(n);
        for (sign, subset_sums) in koszul_root_terms(&a) {
            let term = character_of_roots(n, &subset_sums);
            alt = if sign > 0 { alt.add(&term) } else { alt.sub(&term) };
        }
        let chi_roots = euler_from_character(&alt).into_poly();
        checks.push(check("koszul_euler", &chi, &chi_roots, &roots, &subst)?);
    }
    Ok(SplittingReport { rank, ambient_dim: n, checks })
}

/// Roots of `E`, `Λ²E`, `Λ³E` with the Koszul signs `-, +, -`.
fn koszul_root_terms(a: &[MultiPoly]) -> Vec<(i32, Vec<MultiPoly>)> {
    vec![
        (-1, a.to_vec()),
        (1, vec![&a[0] + &a[1], &a[0] + &a[2], &a[1] + &a[2]]),
        (-1, vec![&(&a[0] + &a[1]) + &a[2]]),
    ]
}
