//! Rigidity of monomial ideals.
//!
//! Over a Gorenstein ambient,
//! `λ(Ext¹(I,I)) = λ(End(I)/R) + λ((I/I²) ⊗ ω_{R/I}) − λ(R/I)`,
//! and `I` is rigid iff `I ⊗ I*` is torsionfree. Both routes are computed
//! from independent primitives and compared.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{self, ShiftModule};
use crate::ideal::{for_each_closed_extension, RelativeIdeal};
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    Length,
    Torsion,
    Both,
}

impl std::str::FromStr for OracleMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "length" => Ok(OracleMode::Length),
            "torsion" => Ok(OracleMode::Torsion),
            "both" => Ok(OracleMode::Both),
            other => Err(format!("unknown oracle mode `{other}` (length|torsion|both)")),
        }
    }
}

fn require_integral(ideal: &RelativeIdeal) -> Result<()> {
    if ideal.is_integral() {
        Ok(())
    } else {
        Err(Error::NotProperIdeal)
    }
}

fn require_gorenstein(ideal: &RelativeIdeal) -> Result<()> {
    if ideal.ambient().is_symmetric() {
        Ok(())
    } else {
        Err(Error::NotGorensteinAmbient)
    }
}

/// `λ(End(I)/R)`.
pub fn end_colength(ideal: &RelativeIdeal) -> usize {
    ideal.ambient().genus() - ideal.end_ring().genus()
}

/// `λ(c(R,I))` with `c(R,I) = (I/I²) ⊗ ω_{R/I}`.
pub fn twisted_conormal_length(ideal: &RelativeIdeal) -> Result<usize> {
    require_integral(ideal)?;
    let conormal = graded::conormal_module(ideal)?;
    let omega = graded::canonical_module(ideal)?;
    graded::tensor_length(&conormal, &omega)
}

/// `λ(Ext¹(I, I))` via the length formula. Needs a symmetric ambient.
pub fn ext1_length(ideal: &RelativeIdeal) -> Result<usize> {
    require_gorenstein(ideal)?;
    require_integral(ideal)?;
    let colength = ideal.ambient().unit_ideal().quotient_length(ideal)?;
    let value = (end_colength(ideal) + twisted_conormal_length(ideal)?) as i64 - colength as i64;
    if value < 0 {
        return Err(Error::Invariant(format!(
            "negative Ext length {value} for {ideal:?}"
        )));
    }
    Ok(value as usize)
}

/// Length of the torsion submodule of `I ⊗ I*`.
pub fn self_dual_torsion(ideal: &RelativeIdeal) -> Result<usize> {
    Ok(graded::ideal_tensor_torsion(ideal, &ideal.dual())?.torsion_length)
}

pub fn is_rigid(ideal: &RelativeIdeal, mode: OracleMode) -> Result<bool> {
    match mode {
        OracleMode::Length => Ok(ext1_length(ideal)? == 0),
        OracleMode::Torsion => Ok(self_dual_torsion(ideal)? == 0),
        OracleMode::Both => {
            let ext1 = ext1_length(ideal)?;
            let torsion = self_dual_torsion(ideal)?;
            if (ext1 == 0) != (torsion == 0) {
                return Err(Error::OracleDisagreement { ext1, torsion });
            }
            Ok(ext1 == 0)
        }
    }
}

/// Rigidity test for `(t^a, t^b)`: `((a):b) ∩ ((b):a) = ((a):b)·((b):a)`,
/// colons taken inside the ring.
pub fn colon_criterion(semigroup: &std::sync::Arc<NumericalSemigroup>, a: i64, b: i64) -> Result<bool> {
    let (ca, cb) = two_generated_colons(semigroup, a, b)?;
    Ok(ca.intersect(&cb)? == ca.product(&cb)?)
}

/// `((a):_R b)` and `((b):_R a)` for a two-generated `(t^a, t^b)`.
pub fn two_generated_colons(
    semigroup: &std::sync::Arc<NumericalSemigroup>,
    a: i64,
    b: i64,
) -> Result<(RelativeIdeal, RelativeIdeal)> {
    if a == b
        || !semigroup.contains(a)
        || !semigroup.contains(b)
        || semigroup.contains(b - a)
        || semigroup.contains(a - b)
    {
        return Err(Error::NotTwoGenerated(a, b));
    }
    let ring = semigroup.unit_ideal();
    let pa = RelativeIdeal::new(semigroup, &[a])?;
    let pb = RelativeIdeal::new(semigroup, &[b])?;
    let a_colon_b = pa.colon(&pb)?.intersect(&ring)?;
    let b_colon_a = pb.colon(&pa)?.intersect(&ring)?;
    Ok((a_colon_b, b_colon_a))
}

/// `λ(c(R,I)) − λ(R/I)` (the ring has dimension one).
pub fn conormal_defect(ideal: &RelativeIdeal) -> Result<i64> {
    let colength = ideal.ambient().unit_ideal().quotient_length(ideal)?;
    Ok(twisted_conormal_length(ideal)? as i64 - colength as i64)
}

/// `max{ν(J) : J monomial, tr(I) ⊆ J ⊆ R}`.
pub fn max_nu_over_trace(ideal: &RelativeIdeal) -> usize {
    let s = ideal.ambient();
    let trace = ideal.trace();
    let e = s.multiplicity() as usize;
    let candidates: Vec<i64> = (0..trace.conductor())
        .filter(|&z| s.contains(z) && !trace.contains(z))
        .collect();
    let mut best = trace.nu();
    for_each_closed_extension(s, |z| trace.contains(z), &candidates, |extra| {
        let gens: Vec<i64> = trace.generators().iter().chain(extra).copied().collect();
        let nu = RelativeIdeal::new(s, &gens).expect("nonempty").nu();
        best = best.max(nu);
        best < e
    });
    best
}

/// `e(R) − max{ν(J) : J monomial, tr(I) ⊆ J ⊆ R}`. Restricting to monomial
/// `J` can only shrink the maximum, so this is an upper bound for `δ`.
pub fn delta_mono(ideal: &RelativeIdeal) -> i64 {
    ideal.ambient().multiplicity() - max_nu_over_trace(ideal) as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    /// Hypotheses hold for this ideal.
    pub applicable: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub multiplicity: i64,
    pub nu: usize,
    pub nu_dual: usize,
    pub nu_trace: usize,
    pub max_nu_over_trace: usize,
    pub delta_mono: i64,
    /// δ here ranges over monomial ideals only.
    pub monomial_caveat: bool,
    pub torsionfree: bool,
    pub checks: Vec<InequalityCheck>,
    /// `ν(I)ν(I*) = ν(tr I)`.
    pub trace_product_equality: bool,
}

impl BoundsReport {
    /// Every applicable inequality holds, and the trace product equality holds
    /// whenever `I ⊗ I*` is torsionfree.
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.holds)
            && (!self.torsionfree || self.trace_product_equality)
    }
}

pub fn bounds_report(ideal: &RelativeIdeal) -> Result<BoundsReport> {
    let s = ideal.ambient();
    let e = s.multiplicity();
    let nu = ideal.nu() as i64;
    let xi = ideal.dual().nu() as i64;
    let nu_trace = ideal.trace().nu();
    let max_nu = max_nu_over_trace(ideal);
    let delta = e - max_nu as i64;
    let torsionfree = self_dual_torsion(ideal)? == 0;
    let nonprincipal = !ideal.is_principal();
    let gorenstein = s.is_symmetric();

    let mut checks = Vec::new();
    let mut push = |name: &str, applicable: bool, holds: bool| {
        checks.push(InequalityCheck {
            name: name.to_string(),
            applicable,
            holds,
        })
    };
    // Multiplicity bound with M = I of rank one, J the monomial maximizer:
    // ν(J) ≤ e(1 − 1/ν) + νξ/ν² ≤ e(1 − 1/ν + 1/ν²).
    push(
        "nu(J) <= e(1-rho) + nu(I (x) I*)/nu^2",
        torsionfree,
        nu * nu * max_nu as i64 <= e * (nu * nu - nu) + nu * xi,
    );
    push("e(1-rho) + nu xi/nu^2 <= e(1-rho+rho^2)", torsionfree, nu * xi <= e);
    push("nu(J) <= e - 1", torsionfree && nonprincipal, delta >= 1);
    push("nu(I) nu(I*) <= e", torsionfree, nu * xi <= e);
    let gor = torsionfree && nonprincipal && gorenstein;
    push("delta >= nu(I)", gor, delta >= nu);
    push("delta >= nu(I*)", gor, delta >= xi);
    push("delta * nu(I) >= e - nu(I*)", gor, delta * nu >= e - xi);
    push("delta^2 >= e - delta", gor, delta * delta >= e - delta);
    push("e - delta >= nu(I) nu(I*)", gor, e - delta >= nu * xi);
    push("nu(I) nu(I*) >= 6", gor, nu * xi >= 6);
    // The trace is itself a candidate J.
    push("e - delta >= nu(tr I)", true, e - delta >= nu_trace as i64);

    Ok(BoundsReport {
        multiplicity: e,
        nu: nu as usize,
        nu_dual: xi as usize,
        nu_trace,
        max_nu_over_trace: max_nu,
        delta_mono: delta,
        monomial_caveat: true,
        torsionfree,
        checks,
        trace_product_equality: (nu * xi) as usize == nu_trace,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndRingChecks {
    pub end_generators: Vec<i64>,
    pub end_equals_ring: bool,
    pub end_symmetric: bool,
    pub principal: bool,
    pub rigid: bool,
    /// Over a Gorenstein ambient: `End = R ⇒ principal` and
    /// `rigid ∧ End Gorenstein ⇒ principal`.
    pub consistent: bool,
}

pub fn end_ring_checks(ideal: &RelativeIdeal) -> Result<EndRingChecks> {
    let end = ideal.end_ring();
    let end_equals_ring = &end == ideal.ambient().as_ref();
    let end_symmetric = end.is_symmetric();
    let principal = ideal.is_principal();
    let rigid = self_dual_torsion(ideal)? == 0;
    let gorenstein = ideal.ambient().is_symmetric();
    let consistent = !gorenstein
        || ((!end_equals_ring || principal) && (!(rigid && end_symmetric) || principal));
    Ok(EndRingChecks {
        end_generators: end.generators().to_vec(),
        end_equals_ring,
        end_symmetric,
        principal,
        rigid,
        consistent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub ideal: Vec<i64>,
    pub nu: usize,
    pub nu_dual: usize,
    pub colength: usize,
    pub end_colength: usize,
    pub twisted_conormal_length: usize,
    pub trace_colength: usize,
    /// `None` when the ambient is not symmetric (the formula needs Gorenstein).
    pub ext1_length: Option<usize>,
    pub rigid_by_length: Option<bool>,
    pub torsion_length: usize,
    pub rigid_by_torsion: bool,
    pub end_ring_generators: Vec<i64>,
    pub end_symmetric: bool,
    pub conormal_defect: i64,
    pub delta_mono: i64,
}

impl RigidityReport {
    pub fn rigid(&self) -> bool {
        self.rigid_by_torsion
    }
}

/// Full report for an ideal of the ring. Raises on oracle disagreement.
pub fn rigidity_report(ideal: &RelativeIdeal) -> Result<RigidityReport> {
    require_integral(ideal)?;
    let s = ideal.ambient();
    let ring = s.unit_ideal();
    let colength = ring.quotient_length(ideal)?;
    let end = ideal.end_ring();
    let twisted = twisted_conormal_length(ideal)?;
    let trace_colength = ideal.trace().quotient_length(ideal)?;
    let ext1 = if s.is_symmetric() {
        Some(ext1_length(ideal)?)
    } else {
        None
    };
    let torsion = self_dual_torsion(ideal)?;
    if let Some(ext1) = ext1 {
        if (ext1 == 0) != (torsion == 0) {
            return Err(Error::OracleDisagreement { ext1, torsion });
        }
    }
    Ok(RigidityReport {
        ideal: ideal.generators().to_vec(),
        nu: ideal.nu(),
        nu_dual: ideal.dual().nu(),
        colength,
        end_colength: s.genus() - end.genus(),
        twisted_conormal_length: twisted,
        trace_colength,
        ext1_length: ext1,
        rigid_by_length: ext1.map(|x| x == 0),
        torsion_length: torsion,
        rigid_by_torsion: torsion == 0,
        end_ring_generators: end.generators().to_vec(),
        end_symmetric: end.is_symmetric(),
        conormal_defect: twisted as i64 - colength as i64,
        delta_mono: delta_mono(ideal),
    })
}

/// `λ(ω_{R/I}) = λ(R/I)` and `λ(Hom(I/I², R/I)) = λ((I/I²) ⊗ ω_{R/I})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatlisChecks {
    pub omega_length: usize,
    pub colength: usize,
    pub hom_length: usize,
    pub tensor_length: usize,
}

impl MatlisChecks {
    pub fn holds(&self) -> bool {
        self.omega_length == self.colength && self.hom_length == self.tensor_length
    }
}

pub fn matlis_checks(ideal: &RelativeIdeal) -> Result<MatlisChecks> {
    let residue = graded::residue_ring(ideal)?;
    let omega = graded::canonical_module(ideal)?;
    let conormal: ShiftModule = graded::conormal_module(ideal)?;
    Ok(MatlisChecks {
        omega_length: omega.length(),
        colength: residue.length(),
        hom_length: graded::hom_length(&conormal, &residue)?,
        tensor_length: graded::tensor_length(&conormal, &omega)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn ring(g: &[i64]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::new(g).unwrap())
    }

    fn id(s: &Arc<NumericalSemigroup>, g: &[i64]) -> RelativeIdeal {
        RelativeIdeal::new(s, g).unwrap()
    }

    #[test]
    fn ext1_examples() {
        let s = ring(&[4, 5, 6]);
        assert_eq!(ext1_length(&id(&s, &[4, 5])).unwrap(), 2);
        assert_eq!(ext1_length(&id(&s, &[4, 6])).unwrap(), 4);
        assert_eq!(ext1_length(&id(&s, &[4])).unwrap(), 0);
        assert_eq!(ext1_length(&s.unit_ideal()).unwrap(), 0);
    }

    #[test]
    fn ext1_errors() {
        let t = ring(&[3, 4, 5]);
        assert_eq!(ext1_length(&id(&t, &[3, 4])), Err(Error::NotGorensteinAmbient));
        let s = ring(&[4, 5, 6]);
        assert_eq!(ext1_length(&id(&s, &[0, 1])), Err(Error::NotProperIdeal));
    }

    #[test]
    fn rigidity_modes() {
        let s = ring(&[4, 5, 6]);
        for mode in [OracleMode::Length, OracleMode::Torsion, OracleMode::Both] {
            assert!(is_rigid(&id(&s, &[9]), mode).unwrap());
            assert!(!is_rigid(&id(&s, &[4, 5]), mode).unwrap());
            assert!(!is_rigid(&id(&s, &[4, 6]), mode).unwrap());
        }
        // Torsion mode also works over non-Gorenstein ambients.
        let t = ring(&[3, 4, 5]);
        assert!(is_rigid(&id(&t, &[3]), OracleMode::Torsion).unwrap());
    }

    #[test]
    fn colon_criterion_examples() {
        let s = ring(&[2, 3]);
        let (ca, cb) = two_generated_colons(&s, 2, 3).unwrap();
        assert_eq!(ca.intersect(&cb).unwrap().elements_upto(6), vec![3, 4, 5, 6]);
        assert_eq!(ca.product(&cb).unwrap().elements_upto(6), vec![5, 6]);
        assert!(!colon_criterion(&s, 2, 3).unwrap());

        let s = ring(&[4, 5, 6]);
        assert!(!colon_criterion(&s, 4, 5).unwrap());
        assert_eq!(colon_criterion(&s, 4, 8), Err(Error::NotTwoGenerated(4, 8)));
        assert_eq!(colon_criterion(&s, 4, 7), Err(Error::NotTwoGenerated(4, 7)));
    }

    #[test]
    fn defects() {
        let s = ring(&[4, 5, 6]);
        assert_eq!(conormal_defect(&id(&s, &[4, 5])).unwrap(), 1);
        assert_eq!(conormal_defect(&id(&s, &[4])).unwrap(), 0);
        assert_eq!(conormal_defect(&id(&s, &[4, 6])).unwrap(), 2);
    }

    #[test]
    fn delta_examples() {
        let s = ring(&[4, 5, 6]);
        assert_eq!(delta_mono(&id(&s, &[4, 5])), 1);
        assert_eq!(delta_mono(&id(&s, &[4, 6])), 1);
        assert_eq!(delta_mono(&id(&s, &[5])), 3);
        let b = bounds_report(&id(&s, &[4, 5])).unwrap();
        assert!(!b.torsionfree);
        assert!(!b.trace_product_equality);
        assert!(b.consistent());
        let b = bounds_report(&id(&s, &[6])).unwrap();
        assert!(b.torsionfree && b.trace_product_equality && b.consistent());
    }

    #[test]
    fn end_ring_examples() {
        let s = ring(&[4, 5, 6]);
        let c = end_ring_checks(&id(&s, &[4, 5])).unwrap();
        assert_eq!(c.end_generators, vec![4, 5, 6, 7]);
        assert!(!c.end_equals_ring && c.consistent);
        let c = end_ring_checks(&id(&s, &[4])).unwrap();
        assert!(c.end_equals_ring && c.principal && c.consistent);
        let c = end_ring_checks(&id(&s, &[4, 6])).unwrap();
        assert_eq!(c.end_generators, vec![2, 5]);
        assert!(c.end_symmetric && !c.rigid && c.consistent);
    }

    #[test]
    fn report_fields() {
        let s = ring(&[4, 5, 6]);
        let r = rigidity_report(&id(&s, &[4, 5])).unwrap();
        assert_eq!(r.colength, 2);
        assert_eq!(r.end_colength, 1);
        assert_eq!(r.twisted_conormal_length, 3);
        assert_eq!(r.trace_colength, 1);
        assert_eq!(r.ext1_length, Some(2));
        assert_eq!(r.rigid_by_length, Some(false));
        assert!(!r.rigid_by_torsion);
        // ext1 = λ(c) − λ(tr I / I) over a Gorenstein ambient.
        assert_eq!(r.ext1_length.unwrap(), r.twisted_conormal_length - r.trace_colength);
    }

    #[test]
    fn matlis_example() {
        let s = ring(&[4, 5, 6]);
        let m = matlis_checks(&id(&s, &[4, 5])).unwrap();
        assert_eq!(m, MatlisChecks { omega_length: 2, colength: 2, hom_length: 3, tensor_length: 3 });
        assert!(m.holds());
    }
}
