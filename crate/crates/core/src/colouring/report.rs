//! Chromatic-number bound reports: pigeonhole lower bounds from exact
//! independence numbers, upper bounds from constructed-and-verified
//! colourings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::baton::Baton;
use crate::colouring::{periodic_colouring_for_baton, simplex_colouring, ColouringError};
use crate::density::{alpha_tr, group_embedding, pattern_of_baton, FormalValue, Pattern};
use crate::products::{bkm_alpha_formula, ProductSpace};
use crate::rat::Rat;

/// Space a report is about.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiSpace {
    Baton(Baton),
    /// `B_k^m`: the m-th power of the k-step unit progression.
    Power { k: u32, m: u32 },
    Product(ProductSpace),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChiBounds {
    pub n: u32,
    pub lower: Rat,
    /// Colour count of a verified construction; absent when no construction
    /// is available for the space.
    pub upper: Option<Rat>,
    pub notes: Vec<String>,
}

impl ChiBounds {
    fn check(&self) {
        if let Some(u) = &self.upper {
            assert!(self.lower <= *u, "lower bound exceeds a verified upper bound");
        }
    }
}

pub fn chi_report(
    space: &ChiSpace,
    n: u32,
    m_list: &[u32],
    seed: u64,
) -> Result<ChiBounds, ColouringError> {
    let bounds = match space {
        ChiSpace::Baton(b) => baton_report(b, n, m_list, seed)?,
        ChiSpace::Power { k, m } => power_report(*k, *m, n, m_list, seed)?,
        ChiSpace::Product(p) => product_report(p, n, m_list, seed)?,
    };
    bounds.check();
    Ok(bounds)
}

fn pigeonhole_lower(pattern: &Pattern, n: u32, m_list: &[u32]) -> Result<Rat, ColouringError> {
    let t = pattern.rank() as i32;
    let mut best = Rat::one();
    for &m in m_list {
        let alpha = alpha_tr(m, pattern, crate::density::DEFAULT_BUDGET)?;
        if !alpha.optimal {
            continue;
        }
        let ratio = (Rat::int(m as i64).pow(t) / Rat::int(alpha.size as i64)).pow(n as i32);
        best = best.max(ratio);
    }
    Ok(best)
}

fn baton_report(
    baton: &Baton,
    n: u32,
    m_list: &[u32],
    seed: u64,
) -> Result<ChiBounds, ColouringError> {
    if baton.is_integer() {
        let pattern = Pattern::of_integer_baton(baton).expect("integer baton");
        let lower = pigeonhole_lower(&pattern, n, m_list)?;
        let mut upper: Option<Rat> = None;
        let mut notes = vec!["lower: box pigeonhole over the modulus sweep".into()];
        for &m in m_list {
            match periodic_colouring_for_baton(baton, m, n as usize, seed, 100) {
                Ok((colouring, _)) => {
                    let count = Rat::int(colouring.colour_count() as i64);
                    if upper.as_ref().is_none_or(|u| count < *u) {
                        upper = Some(count);
                    }
                }
                Err(ColouringError::NoFreeSet) => {}
                Err(e) => return Err(e),
            }
        }
        if upper.is_some() {
            notes.push("upper: verified cover colouring".into());
        }
        Ok(ChiBounds {
            n,
            lower,
            upper,
            notes,
        })
    } else {
        // Map through the lattice embedding for the lower bound; no verified
        // construction is emitted for non-integer batons.
        let gaps: Vec<FormalValue> = baton
            .gaps()
            .iter()
            .map(|g| FormalValue::rational(g.clone()))
            .collect();
        let emb = group_embedding(&gaps)?;
        let pattern = pattern_of_baton(baton, &emb).expect("embedding built from these gaps");
        let lower = pigeonhole_lower(&pattern, n, m_list)?;
        Ok(ChiBounds {
            n,
            lower,
            upper: None,
            notes: vec![
                format!("lower: lattice-embedded pattern of rank {}", pattern.rank()),
                "upper: no verified construction for non-integer gaps".into(),
            ],
        })
    }
}

fn power_report(
    k: u32,
    m: u32,
    n: u32,
    m_list: &[u32],
    seed: u64,
) -> Result<ChiBounds, ColouringError> {
    if k == 1 {
        // Exact: ceil(2^n / (2^m - 1)) colours, both bounds.
        let lower = Rat::from_bigint(BigInt::from(2).pow(n))
            / Rat::from_bigint(BigInt::from(2).pow(m) - 1);
        let colouring = simplex_colouring(n as usize, m)?;
        return Ok(ChiBounds {
            n,
            lower,
            upper: Some(Rat::int(colouring.colour_count() as i64)),
            notes: vec!["exact: parity-class batching, verified".into()],
        });
    }
    let alpha = bkm_alpha_formula(k, m, n)?;
    let lower = Rat::from_bigint(BigInt::from(k + 1).pow(n)) / Rat::from_bigint(alpha.into());
    // Inherited upper bound: colour against one factor.
    let factor = baton_report(&Baton::unit(k as usize), n, m_list, seed)?;
    Ok(ChiBounds {
        n,
        lower,
        upper: factor.upper,
        notes: vec![
            "lower: exact power independence number".into(),
            "upper: inherited from a factor colouring".into(),
        ],
    })
}

fn product_report(
    product: &ProductSpace,
    n: u32,
    m_list: &[u32],
    seed: u64,
) -> Result<ChiBounds, ColouringError> {
    let mut upper: Option<Rat> = None;
    for factor in product.factors() {
        if !factor.is_integer() {
            continue;
        }
        let report = baton_report(factor, n, m_list, seed)?;
        if let Some(u) = report.upper {
            if upper.as_ref().is_none_or(|cur| u < *cur) {
                upper = Some(u);
            }
        }
    }
    Ok(ChiBounds {
        n,
        lower: Rat::one(),
        upper,
        notes: vec![
            "lower: trivial (no product-specific bound for mixed factors)".into(),
            "upper: minimum over integral factor colourings".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_space_is_exact_at_dimension_three() {
        let b = chi_report(&ChiSpace::Baton(Baton::unit(1)), 3, &[2], 0).unwrap();
        assert_eq!(b.lower, Rat::int(8));
        assert_eq!(b.upper, Some(Rat::int(8)));
    }

    #[test]
    fn simplex_power_report() {
        let b = chi_report(&ChiSpace::Power { k: 1, m: 2 }, 3, &[], 0).unwrap();
        assert_eq!(b.lower, Rat::new(8, 3));
        assert_eq!(b.upper, Some(Rat::int(3)));
    }

    #[test]
    fn unit_progression_plane_lower() {
        let b = chi_report(&ChiSpace::Baton(Baton::unit(2)), 2, &[3], 0).unwrap();
        assert_eq!(b.lower, Rat::new(9, 4));
        let upper = b.upper.unwrap();
        assert!(upper >= Rat::int(3) && upper <= Rat::int(6));
    }

    #[test]
    fn power_report_with_factor_upper() {
        let b = chi_report(&ChiSpace::Power { k: 2, m: 2 }, 2, &[3], 0).unwrap();
        // (k+1)^n / (sum) = 9/8.
        assert_eq!(b.lower, Rat::new(9, 8));
        assert!(b.upper.is_some());
    }

    #[test]
    fn non_integer_baton_reports_lower_only() {
        let b = Baton::from_gaps(vec![Rat::one(), Rat::new(1, 2)]).unwrap();
        let report = chi_report(&ChiSpace::Baton(b), 2, &[4], 0).unwrap();
        assert!(report.upper.is_none());
        assert!(report.lower >= Rat::one());
    }

    #[test]
    fn product_report_inherits_factor_upper() {
        let p = ProductSpace::new(vec![Baton::unit(1), Baton::unit(2)]).unwrap();
        let report = chi_report(&ChiSpace::Product(p), 2, &[2, 3], 0).unwrap();
        assert!(report.upper.is_some());
        assert_eq!(report.lower, Rat::one());
    }
}
