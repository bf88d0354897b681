//! The normal-bundle count for double structures on a smooth conic in P^3.
//!
//! The conormal pieces are line bundles on the conic, encoded as fixed
//! [`ConicBundle`] identifications; only degrees, determinants and
//! cohomology dimensions are computed here.

use serde::Serialize;

use super::{
    det_degree_solve, h_p1, h_p2, pullback_degree, solve_exact_sequence, Assumption, CohomError,
    CohomPair, ConicBundle, ExactSeqSpec, LinForm, MapFact, ParamDim, SeqTerm, Space,
};

/// One verified value of `r` in an injectivity certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedCase {
    pub r: i64,
    /// Section pairs `(a, b)` checked, as polynomials in `s, u`.
    pub pairs: Vec<(String, String)>,
    /// Splitting type of the cokernel bundle on P^1.
    pub splitting: (i64, i64),
    /// The same after twisting by `-r-2`.
    pub twisted: (i64, i64),
    pub twisted_h0: i64,
}

/// Evidence that `H^0` of the twisted cokernel vanishes, which makes the
/// connecting map in the last sequence injective.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InjectivityCertificate {
    pub cases: Vec<CertifiedCase>,
}

impl InjectivityCertificate {
    /// Whether the certificate supports the assumption. A fixed `r` must be
    /// among the verified cases. A parametric claim needs every case to
    /// vanish with one common twisted splitting type, and at least one
    /// verified `r >= r_min`.
    pub fn covers(&self, a: &Assumption) -> Result<(), CohomError> {
        let missing = |msg: String| Err(CohomError::MissingCertificate(msg));
        if let Some(c) = self.cases.iter().find(|c| c.twisted_h0 != 0) {
            return missing(format!("twisted h0 is {} at r = {}", c.twisted_h0, c.r));
        }
        match a.fixed {
            Some(r) => {
                if self.cases.iter().any(|c| c.r == r) {
                    Ok(())
                } else {
                    missing(format!("no verified case for r = {r}"))
                }
            }
            None => {
                let Some(first) = self.cases.iter().find(|c| c.r >= a.r_min) else {
                    return missing(format!("no verified case with {a}"));
                };
                if self.cases.iter().any(|c| c.twisted != first.twisted) {
                    return missing("twisted splitting type varies with r".into());
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplayedDim {
    pub label: String,
    /// Pullback degree on P^1, absent for the middle terms.
    pub degree: Option<String>,
    pub value: ParamDim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConicChainReport {
    pub assumption: String,
    /// Pullback degree of `I_Y/I_C^2`.
    pub conormal_quotient_degree: String,
    /// Pullback degree of `det(I_C I_Y / I_C^3)`.
    pub det_degree: String,
    /// The twelve dimensions in the order they are derived.
    pub displayed: Vec<DisplayedDim>,
    pub tangent: ParamDim,
}

fn bundle_of(d: LinForm) -> Result<ConicBundle, CohomError> {
    ConicBundle::from_pullback(d)
        .ok_or_else(|| CohomError::Inconsistent(format!("odd degree {d} is not a conic bundle")))
}

fn side_dims(
    label_prefix: &str,
    left: ConicBundle,
    right: ConicBundle,
    right_first: bool,
    a: &Assumption,
    out: &mut Vec<DisplayedDim>,
) -> Result<CohomPair, CohomError> {
    let hr = h_p1(pullback_degree(&right), a)?;
    let hl = h_p1(pullback_degree(&left), a)?;
    let order = if right_first { [(right, &hr), (left, &hl)] } else { [(left, &hl), (right, &hr)] };
    for (c, h) in order {
        for (i, v) in [&h.h0, &h.h1].into_iter().enumerate() {
            out.push(DisplayedDim {
                label: format!("h{i}({c})"),
                degree: Some(pullback_degree(&c).to_string()),
                value: v.clone(),
            });
        }
    }
    let seq = ExactSeqSpec::new(
        Space::P1,
        vec![SeqTerm::Conic(left), SeqTerm::Unknown, SeqTerm::Conic(right)],
        vec![],
    );
    let mid = CohomPair::from_dims(&solve_exact_sequence(&seq, a)?).expect("two dimensions on P^1");
    for (i, v) in [&mid.h0, &mid.h1].into_iter().enumerate() {
        out.push(DisplayedDim { label: format!("h{i}({label_prefix})"), degree: None, value: v.clone() });
    }
    Ok(mid)
}

/// Runs the full chain and returns every intermediate value. The final
/// sequence needs the connecting map `H^0` of the right term to `H^1` of the
/// left term (arrow 2) to be injective, which must be backed by `cert`.
pub fn double_conic_chain(
    a: &Assumption,
    cert: Option<&InjectivityCertificate>,
) -> Result<ConicChainReport, CohomError> {
    let cert = cert.ok_or_else(|| {
        CohomError::MissingCertificate("the connecting map is not known to be injective".into())
    })?;
    cert.covers(a)?;

    let l = ConicBundle::l();
    let omega = ConicBundle::omega_restricted();
    let deg = |c: ConicBundle| pullback_degree(&c);

    // 0 -> I_Y/I_C^2 -> O_C(-1) + O_C(-2) -> L -> 0
    let quotient = det_degree_solve(
        None,
        Some(&[deg(ConicBundle::o(-1)), deg(ConicBundle::o(-2))]),
        Some(deg(l)),
    )?;
    let i_y_mod = bundle_of(quotient)?;
    // 0 -> I_C I_Y/I_C^3 -> O_C(-2) + O_C(-3) + O_C(-4) -> L^2 -> 0
    let det = det_degree_solve(
        None,
        Some(&[deg(ConicBundle::o(-2)), deg(ConicBundle::o(-3)), deg(ConicBundle::o(-4))]),
        Some(deg(l.power(2))),
    )?;
    // 0 -> (I_Y^2 + I_C^3)/I_C^3 -> I_C I_Y/I_C^3 -> I_C I_Y/(I_Y^2 + I_C^3) -> 0,
    // with the sub a square of I_Y/I_C^2.
    let top_piece = bundle_of(det_degree_solve(Some(deg(i_y_mod.power(2))), Some(&[det]), None)?)?;

    let mut displayed = Vec::new();
    // 0 -> L^2 ⊗ ω -> (I_Y/I_C I_Y) ⊗ ω -> (I_Y/I_C^2) ⊗ ω -> 0
    let first = side_dims(
        "(I_Y/I_C I_Y)⊗ω",
        l.power(2).tensor(&omega),
        i_y_mod.tensor(&omega),
        true,
        a,
        &mut displayed,
    )?;
    // 0 -> L^3 ⊗ ω -> (I_C I_Y/I_Y^2) ⊗ ω -> (I_C I_Y/(I_Y^2 + I_C^3)) ⊗ ω -> 0
    let second = side_dims(
        "(I_C I_Y/I_Y^2)⊗ω",
        l.power(3).tensor(&omega),
        top_piece.tensor(&omega),
        false,
        a,
        &mut displayed,
    )?;
    // 0 -> (I_C I_Y/I_Y^2) ⊗ ω -> (I_Y/I_Y^2) ⊗ ω -> (I_Y/I_C I_Y) ⊗ ω -> 0
    let last = ExactSeqSpec::new(
        Space::P1,
        vec![SeqTerm::Dims(second.dims()), SeqTerm::Unknown, SeqTerm::Dims(first.dims())],
        vec![MapFact::Injective(2)],
    );
    let normal = solve_exact_sequence(&last, a)?;
    Ok(ConicChainReport {
        assumption: a.to_string(),
        conormal_quotient_degree: quotient.to_string(),
        det_degree: det.to_string(),
        displayed,
        tangent: normal[1].clone(),
    })
}

/// `h^1((I_Y/I_Y^2) ⊗ ω_Y)`, the tangent-space dimension by Serre duality.
pub fn tangent_dimension_double_conic(
    a: &Assumption,
    cert: Option<&InjectivityCertificate>,
) -> Result<ParamDim, CohomError> {
    Ok(double_conic_chain(a, cert)?.tangent)
}

/// Conics in P^3 (8 parameters) plus a pair of sections of `O(r+2)` and
/// `O(r+4)` on P^1 up to a common scalar.
pub fn family_dimension(a: &Assumption) -> Result<ParamDim, CohomError> {
    let sa = h_p1(LinForm::new(1, 2), a)?.h0;
    let sb = h_p1(LinForm::new(1, 4), a)?.h0;
    let both = &sa + &sb;
    Ok(&(&both + &ParamDim::constant(8)) - &ParamDim::constant(1))
}

/// `H^1(G^∨(2r)) = 0` on P^2, from the dual sequence
/// `0 -> O(r) -> O(2r+1)^3 -> G^∨(2r) -> 0`.
pub fn ext_vanishing_claim(a: &Assumption) -> Result<bool, CohomError> {
    let seq = ExactSeqSpec::new(
        Space::P2,
        vec![
            SeqTerm::LineP2 { degree: LinForm::new(1, 0), mult: 1 },
            SeqTerm::LineP2 { degree: LinForm::new(2, 1), mult: 3 },
            SeqTerm::Unknown,
        ],
        vec![],
    );
    let inputs_vanish = h_p2(LinForm::new(2, 1), a)?[1].vanishes(a) && h_p2(LinForm::new(1, 0), a)?[2].vanishes(a);
    let dims = solve_exact_sequence(&seq, a)?;
    Ok(inputs_vanish && dims[1].vanishes(a))
}
