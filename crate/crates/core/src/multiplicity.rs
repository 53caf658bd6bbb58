//! Algebraic multiplicities and the end-to-end equality verifier.
//!
//! For a connected k-uniform hypergraph the four quantities
//!
//! * multiplicity of the spectral radius in the adjacency charpoly,
//! * multiplicity of zero in the Laplacian charpoly,
//! * eigenvariety cardinality from the mod-k Smith normal form,
//! * kernel dimension of the Laplacian Macaulay matrix,
//!
//! are equal. `verify_main_theorem` computes whichever of them fit the
//! size guards and reports the comparison; guard skips are recorded, not
//! raised.

use crate::eigenvariety::{
    cardinality, cartesian_cardinality, coalescence_cardinality, enumerate_phases,
    family_cardinality, FamilyDescriptor,
};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::macaulay::{basis_size, laplacian_macaulay_nullity, tensor_charpoly};
use crate::poly::SturmChain;
use crate::tensor::{adjacency_tensor, laplacian_tensor};
use crate::{Int, Limits, Rat, RatTensor};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::time::Instant;

/// Multiplicity of zero as a root of the Laplacian characteristic
/// polynomial: the number of trailing zero coefficients, exact.
pub fn zero_laplacian_multiplicity(h: &Hypergraph, cap: usize) -> Result<u64> {
    if !h.is_connected() {
        return Err(Error::Disconnected("Laplacian zero multiplicity"));
    }
    let l: RatTensor = laplacian_tensor(h);
    let phi = tensor_charpoly(&l, cap)?;
    Ok(phi.trailing_zero_count() as u64)
}

/// Multiplicity of the spectral radius as a root of the adjacency
/// characteristic polynomial. The radius is located by Sturm isolation on
/// the square-free part; the returned exponent belongs to the unique
/// square-free factor vanishing on the isolating interval. Two factors
/// claiming the interval is impossible mathematically and fails loudly.
pub fn spectral_radius_multiplicity(h: &Hypergraph, cap: usize) -> Result<u64> {
    if !h.is_connected() {
        return Err(Error::Disconnected("spectral radius multiplicity"));
    }
    let a: RatTensor = adjacency_tensor(h);
    let phi = tensor_charpoly(&a, cap)?;
    let (_, factors) = phi.squarefree_decompose()?;
    let precision = Rat::new(Int::from(1), Int::from(1024));
    let (lo, hi) = phi.isolate_largest_real_root(&precision)?;

    let mut hits: Vec<u32> = Vec::new();
    for (factor, mult) in &factors {
        let vanishes = if lo == hi {
            factor.eval(&lo).is_zero()
        } else {
            match SturmChain::new(factor) {
                Ok(chain) => chain.count_roots_in(&lo, &hi) > 0,
                Err(Error::NoRealRoot) => false,
                Err(e) => return Err(e),
            }
        };
        if vanishes {
            hits.push(*mult);
        }
    }
    match hits.as_slice() {
        [m] => Ok(*m as u64),
        _ => Err(Error::ConsistencyCheck(format!(
            "{} square-free factors vanish on the isolating interval",
            hits.len()
        ))),
    }
}

/// Isolating interval for the spectral radius, width at most `precision`.
pub fn spectral_radius_interval(
    h: &Hypergraph,
    cap: usize,
    precision: &Rat,
) -> Result<(Rat, Rat)> {
    if !h.is_connected() {
        return Err(Error::Disconnected("spectral radius isolation"));
    }
    let a: RatTensor = adjacency_tensor(h);
    let phi = tensor_charpoly(&a, cap)?;
    phi.isolate_largest_real_root(precision)
}

/// Everything `verify_main_theorem` measures for one hypergraph.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub name: Option<String>,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    /// Eigenvariety cardinality (SNF route), decimal.
    pub ev_cardinality: String,
    /// Number of enumerated phase vectors, when enumeration fit the cap.
    pub phase_count: Option<u64>,
    /// Multiplicity of rho in the adjacency charpoly, when within guard.
    pub am_rho: Option<u64>,
    /// Multiplicity of 0 in the Laplacian charpoly, when within guard.
    pub am_zero_laplacian: Option<u64>,
    /// Laplacian Macaulay nullity, when within guard.
    pub macaulay_nullity: Option<u64>,
    /// True when every computed quantity agrees with the cardinality.
    pub all_equal: bool,
    /// Which checks the size guards skipped.
    pub skipped: Vec<String>,
    /// Wall-clock cost; not serialized so that identical inputs produce
    /// byte-identical reports.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Compute all four quantities that fit the guards and compare them.
pub fn verify_main_theorem(
    h: &Hypergraph,
    name: Option<&str>,
    limits: &Limits,
) -> Result<VerificationReport> {
    if !h.is_connected() {
        return Err(Error::Disconnected("the main-theorem verifier"));
    }
    let start = Instant::now();
    let mut skipped = Vec::new();

    let card = cardinality(h)?;

    let phase_count = match enumerate_phases(h, limits) {
        Ok(phases) => Some(phases.len() as u64),
        Err(Error::EnumerationGuard { .. }) => {
            skipped.push("phase-enumeration".to_string());
            None
        }
        Err(e) => return Err(e),
    };

    let within_guard = matches!(
        basis_size(h.n(), h.k()),
        Some(s) if s <= limits.monomial_cap as u128
    );
    let (am_rho, am_zero, nullity) = if within_guard {
        (
            Some(spectral_radius_multiplicity(h, limits.monomial_cap)?),
            Some(zero_laplacian_multiplicity(h, limits.monomial_cap)?),
            Some(laplacian_macaulay_nullity(h, limits.monomial_cap)? as u64),
        )
    } else {
        skipped.push("adjacency-charpoly".to_string());
        skipped.push("laplacian-charpoly".to_string());
        skipped.push("macaulay-nullity".to_string());
        (None, None, None)
    };

    let card_u64 = card.to_u64();
    let mut all_equal = true;
    for value in [phase_count, am_rho, am_zero, nullity].into_iter().flatten() {
        if card_u64 != Some(value) {
            all_equal = false;
        }
    }

    Ok(VerificationReport {
        name: name.map(str::to_string),
        k: h.k(),
        n: h.n(),
        m: h.m(),
        ev_cardinality: card.to_string(),
        phase_count,
        am_rho,
        am_zero_laplacian: am_zero,
        macaulay_nullity: nullity,
        all_equal,
        skipped,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Closed-form multiplicity for a named family (equal to the cardinality).
pub fn family_multiplicity(d: &FamilyDescriptor) -> Result<Int> {
    family_cardinality(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositeOp {
    Coalesce,
    Cartesian,
}

/// Predicted multiplicity of a composite from its parts' SNF data.
pub fn composite_multiplicity(
    h1: &Hypergraph,
    h2: &Hypergraph,
    op: CompositeOp,
) -> Result<Int> {
    if !h1.is_connected() || !h2.is_connected() {
        return Err(Error::Disconnected("composite multiplicity"));
    }
    match op {
        CompositeOp::Coalesce => coalescence_cardinality(h1, h2),
        CompositeOp::Cartesian => cartesian_cardinality(h1, h2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge3() -> Hypergraph {
        Hypergraph::from_one_based(3, 3, vec![vec![1, 2, 3]]).unwrap()
    }

    fn loose_path() -> Hypergraph {
        Hypergraph::from_one_based(3, 5, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap()
    }

    const CAP: usize = 1500;

    #[test]
    fn zero_multiplicities() {
        assert_eq!(zero_laplacian_multiplicity(&edge3(), CAP).unwrap(), 3);
        assert_eq!(
            zero_laplacian_multiplicity(&Hypergraph::complete(4, 3).unwrap(), CAP).unwrap(),
            1
        );
    }

    #[test]
    fn radius_multiplicities() {
        assert_eq!(spectral_radius_multiplicity(&edge3(), CAP).unwrap(), 3);
        assert_eq!(
            spectral_radius_multiplicity(&Hypergraph::complete(4, 3).unwrap(), CAP).unwrap(),
            1
        );
    }

    #[test]
    fn k4_radius_is_three() {
        let k4 = Hypergraph::complete(4, 3).unwrap();
        let precision = Rat::new(Int::from(1), Int::from(1_000_000));
        let (lo, hi) = spectral_radius_interval(&k4, CAP, &precision).unwrap();
        let three = Rat::from_integer(Int::from(3));
        assert!(lo <= three && three <= hi);
    }

    #[test]
    fn verify_single_edge_report() {
        let report = verify_main_theorem(&edge3(), Some("edge3"), &Limits::default()).unwrap();
        assert_eq!(report.ev_cardinality, "3");
        assert_eq!(report.phase_count, Some(3));
        assert_eq!(report.am_rho, Some(3));
        assert_eq!(report.am_zero_laplacian, Some(3));
        assert_eq!(report.macaulay_nullity, Some(3));
        assert!(report.all_equal);
        assert!(report.skipped.is_empty());
    }

    #[test]
    fn verify_guarded_squid() {
        let squid = Hypergraph::squid(3, 3).unwrap();
        let report = verify_main_theorem(&squid, Some("squid33"), &Limits::default()).unwrap();
        assert_eq!(report.ev_cardinality, "81");
        assert_eq!(report.phase_count, Some(81));
        assert!(report.am_rho.is_none());
        assert!(report
            .skipped
            .iter()
            .any(|s| s.contains("charpoly")));
        assert!(report.all_equal);
    }

    #[test]
    fn verify_skips_enumeration_past_the_cap() {
        // 3^31 states and a 3^16 kernel both exceed a tight cap
        let big = Hypergraph::sunflower(3, 1, 15).unwrap();
        let tight = Limits::new(Limits::DEFAULT_MONOMIAL_CAP, 1000);
        let report = verify_main_theorem(&big, Some("wide-sunflower"), &tight).unwrap();
        assert_eq!(report.ev_cardinality, Int::from(3u64).pow(15).to_string());
        assert!(report.phase_count.is_none());
        assert!(report.skipped.iter().any(|s| s == "phase-enumeration"));
        assert!(report.all_equal, "nothing computed may disagree");
    }

    #[test]
    fn verify_rejects_disconnected() {
        let split = Hypergraph::from_one_based(3, 6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert!(matches!(
            verify_main_theorem(&split, None, &Limits::default()),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn composite_predictions() {
        let e = edge3();
        assert_eq!(
            composite_multiplicity(&e, &e, CompositeOp::Coalesce).unwrap(),
            Int::from(9)
        );
        assert_eq!(
            composite_multiplicity(&e, &e, CompositeOp::Cartesian).unwrap(),
            Int::from(27)
        );
        assert_eq!(
            composite_multiplicity(&loose_path(), &e, CompositeOp::Coalesce).unwrap(),
            Int::from(27)
        );
    }

    #[test]
    fn family_multiplicity_examples() {
        assert_eq!(
            family_multiplicity(&FamilyDescriptor::PowerGraph {
                k: 3,
                graph_n: 3,
                graph_m: 3
            })
            .unwrap(),
            Int::from(9)
        );
        assert_eq!(
            family_multiplicity(&FamilyDescriptor::Cored { k: 3, n: 7, m: 3 }).unwrap(),
            Int::from(27)
        );
        assert_eq!(
            family_multiplicity(&FamilyDescriptor::Squid { k: 4, t: 2 }).unwrap(),
            Int::from(4096)
        );
    }
}
