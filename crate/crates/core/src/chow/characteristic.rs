use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BundleClass, ChowElem, ChowError, MAX_AMBIENT_DIM};
use crate::arith::{int, MultiPoly, PolyT, Rational};

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

/// Power sums `p_1..p_n` of the Chern roots, by Newton's identities
/// `p_k = c_1 p_{k-1} - c_2 p_{k-2} + ... + (-1)^{k-1} k c_k`.
pub fn power_sums(b: &BundleClass) -> Vec<MultiPoly> {
    let n = b.ambient_dim();
    let mut p: Vec<MultiPoly> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = b.chern(k).scale(&int(k as i64));
        if k % 2 == 0 {
            acc = -acc;
        }
        for i in 1..k {
            let term = &b.chern(i) * &p[k - i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        p.push(acc);
    }
    p
}

/// `ch(B) = rank + Σ p_k / k! h^k`.
pub fn chern_character(b: &BundleClass) -> ChowElem {
    let n = b.ambient_dim();
    let mut coeffs = vec![MultiPoly::int(b.rank() as i64)];
    for (k, pk) in power_sums(b).into_iter().enumerate() {
        coeffs.push(pk.scale(&factorial(k + 1).recip()));
    }
    ChowElem::from_coeffs(n, coeffs)
}

/// `ψ^k`: scales the `h^i` component by `k^i`.
pub fn adams_operation(k: u32, c: &ChowElem) -> ChowElem {
    let coeffs = c
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, x)| x.scale(&Rational::from_integer(BigInt::from(k).pow(i as u32))))
        .collect();
    ChowElem::from_coeffs(c.dim(), coeffs)
}

/// Inverts the Chern character. The `h^0` component must be a nonnegative
/// integer (the rank) and every elementary class above the rank must vanish.
pub fn chern_from_character(ch: &ChowElem) -> Result<BundleClass, ChowError> {
    let n = ch.dim();
    let rank = ch
        .coeff(0)
        .constant_value()
        .filter(|q| q.is_integer() && !q.is_negative())
        .and_then(|q| usize::try_from(q.to_integer()).ok())
        .ok_or_else(|| ChowError::NotARank(ch.coeff(0).to_string()))?;
    let p: Vec<MultiPoly> = (1..=n).map(|k| ch.coeff(k).scale(&factorial(k))).collect();
    // k e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    let mut e = vec![MultiPoly::one()];
    for k in 1..=n {
        let mut acc = MultiPoly::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&int(k as i64).recip()));
    }
    if let Some(k) = (rank + 1..=n).find(|&k| !e[k].is_zero()) {
        return Err(ChowError::ExcessChernClass { rank, index: k, value: e[k].to_string() });
    }
    if rank == 0 {
        return Err(ChowError::ZeroRank);
    }
    let chern = (1..=rank)
        .map(|k| e.get(k).cloned().unwrap_or_else(MultiPoly::zero))
        .collect();
    BundleClass::new(rank, chern, n)
}

/// `ch(Λ²E) = (ch(E)² - ψ²ch(E)) / 2`.
pub fn wedge_square_character(ch: &ChowElem) -> ChowElem {
    ch.mul(ch).sub(&adams_operation(2, ch)).scale(&Rational::new(1.into(), 2.into()))
}

/// `ch(Λ³E) = (ch(E)³ - 3 ch(E) ψ²ch(E) + 2 ψ³ch(E)) / 6`.
pub fn wedge_cube_character(ch: &ChowElem) -> ChowElem {
    let psi2 = adams_operation(2, ch);
    let psi3 = adams_operation(3, ch);
    ch.pow(3)
        .sub(&ch.mul(&psi2).scale_int(3))
        .add(&psi3.scale_int(2))
        .scale(&Rational::new(1.into(), 6.into()))
}

/// Chern classes of `Λ²E` and `Λ³E` for a rank-3 class `E`.
pub fn wedge_powers(b: &BundleClass) -> Result<(BundleClass, BundleClass), ChowError> {
    if b.rank() != 3 {
        return Err(ChowError::RankMismatch { expected: 3, found: b.rank() });
    }
    let ch = chern_character(b);
    let l2 = chern_from_character(&wedge_square_character(&ch))?;
    let l3 = chern_from_character(&wedge_cube_character(&ch))?;
    Ok((l2, l3))
}

/// Todd class of projective n-space, `(h / (1 - e^{-h}))^{n+1}`, from the
/// exact inverse of the series `(1 - e^{-h}) / h = Σ (-1)^k h^k / (k+1)!`.
pub fn todd_class(n: usize) -> Result<ChowElem, ChowError> {
    if !(1..=MAX_AMBIENT_DIM).contains(&n) {
        return Err(ChowError::AmbientDim(n));
    }
    let f: Vec<Rational> = (0..=n)
        .map(|k| {
            let s = factorial(k + 1).recip();
            if k % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect();
    // g = 1/f, f[0] = 1
    let mut g = vec![Rational::one()];
    for k in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..=k {
            acc -= &f[i] * &g[k - i];
        }
        g.push(acc);
    }
    let base = ChowElem::from_coeffs(n, g.into_iter().map(MultiPoly::constant).collect());
    Ok(base.pow(n as u32 + 1))
}

/// `χ(B(t))`: the `h^n` coefficient of `ch · exp(t h) · td(P^n)`.
pub fn euler_from_character(ch: &ChowElem) -> PolyT {
    let n = ch.dim();
    let td = todd_class(n).expect("character lives on a supported ambient space");
    let twist = ChowElem::exp(n, &MultiPoly::var(PolyT::VAR));
    PolyT::new(ch.mul(&twist).mul(&td).coeff(n).clone())
}

pub fn euler_characteristic(b: &BundleClass) -> PolyT {
    euler_from_character(&chern_character(b))
}

/// Euler characteristic of the zero scheme of a regular section of a rank-3
/// bundle `F = E^∨`, from its Koszul resolution
/// `0 → Λ³E → Λ²E → E → O → O_Y → 0`.
pub fn koszul_euler(e: &BundleClass) -> Result<PolyT, ChowError> {
    let (l2, l3) = wedge_powers(e)?;
    let n = e.ambient_dim();
    let chi = euler_characteristic(&BundleClass::trivial(1, n)?).into_poly()
        - euler_characteristic(e).into_poly()
        + euler_characteristic(&l2).into_poly()
        - euler_characteristic(&l3).into_poly();
    Ok(PolyT::new(chi))
}
