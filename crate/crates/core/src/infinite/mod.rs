//! Infinite forbidden sets: geometric-progression prefixes, detection of
//! proper copies (some axis carries the reflected, decreasing progression),
//! the nested-cube two-colouring for unbounded spaces, and the constructive
//! finder that extracts a monochromatic proper prefix from any few-coloured
//! grid oracle on a cube.

mod finder;
mod oracle;

pub use finder::{
    geo_chi_lower_report, standard_oracle_suite, thminf1_find, Event, FindConfig, FindError,
    FindOutcome, GeoReport, KnownStatements, OracleRun, Transcript,
};
pub use oracle::{GridOracle, OracleError};

use serde::{Deserialize, Serialize};

use crate::baton::{Baton, Point};
use crate::geometry::{all_pairs_isometric, linf_distance};
use crate::rat::Rat;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InfiniteError {
    #[error("q must lie strictly between 0 and 1")]
    QOutOfRange,
    #[error("a prefix needs at least one gap")]
    PrefixTooShort,
    #[error("scan budget exhausted before a far enough element appeared; the space looks bounded")]
    SearchExhausted,
    #[error("depth must be at least 1")]
    ZeroDepth,
}

/// Prefix of the geometric-progression set `{0, 1, 1+q, 1+q+q^2, ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoProgression {
    pub q: Rat,
    pub prefix_len: usize,
    /// `prefix_len + 1` points starting at 0.
    pub points: Vec<Rat>,
    /// Tail gaps `t_i = q^i / (1 - q)` for `i = 0..=prefix_len`.
    pub tails: Vec<Rat>,
}

/// Exact prefix with `len + 1` points; gap i is `q^(i-1)`.
pub fn gq_prefix(q: &Rat, len: usize) -> Result<GeoProgression, InfiniteError> {
    if !q.is_positive() || *q >= Rat::one() {
        return Err(InfiniteError::QOutOfRange);
    }
    if len == 0 {
        return Err(InfiniteError::PrefixTooShort);
    }
    let mut points = vec![Rat::zero()];
    let mut gap = Rat::one();
    for _ in 0..len {
        let last = points.last().unwrap().clone();
        points.push(last + &gap);
        gap = gap * q;
    }
    let one_minus_q = Rat::one() - q;
    let tails = (0..=len)
        .map(|i| q.pow(i as i32) / &one_minus_q)
        .collect();
    Ok(GeoProgression {
        q: q.clone(),
        prefix_len: len,
        points,
        tails,
    })
}

/// Gaps of the prefix: `1, q, q^2, ...`, scaled.
pub fn prefix_gaps(q: &Rat, len: usize, scale: &Rat) -> Vec<Rat> {
    let mut gaps = Vec::with_capacity(len);
    let mut g = scale.clone();
    for _ in 0..len {
        gaps.push(g.clone());
        g = g * q;
    }
    gaps
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProperCopyOutcome {
    /// The ordered points are an isometric copy of the prefix and the stated
    /// axis carries the reflected (strictly decreasing) progression.
    Proper { direction: usize },
    NotProper { reason: String },
}

impl ProperCopyOutcome {
    pub fn is_proper(&self) -> bool {
        matches!(self, ProperCopyOutcome::Proper { .. })
    }
}

/// Classify an ordered point sequence as a proper copy of the matching
/// prefix of the geometric progression. Distances are re-derived from raw
/// coordinates; the direction axis must decrease toward the limit side.
pub fn detect_proper_copy(points: &[Point], q: &Rat) -> Result<ProperCopyOutcome, InfiniteError> {
    detect_proper_copy_scaled(points, q, &Rat::one())
}

pub fn detect_proper_copy_scaled(
    points: &[Point],
    q: &Rat,
    scale: &Rat,
) -> Result<ProperCopyOutcome, InfiniteError> {
    if !q.is_positive() || *q >= Rat::one() {
        return Err(InfiniteError::QOutOfRange);
    }
    if points.len() < 2 {
        return Err(InfiniteError::PrefixTooShort);
    }
    let len = points.len() - 1;
    let gaps = prefix_gaps(q, len, scale);
    let baton = Baton::from_gaps(gaps.clone()).expect("positive gaps");

    // Independent all-pairs distance check against the prefix metric.
    if !all_pairs_isometric(points, &baton).map_err(|_| InfiniteError::PrefixTooShort)? {
        for l in 0..=len {
            for r in (l + 1)..=len {
                let want = baton.points()[r].clone() - &baton.points()[l];
                let got = linf_distance(&points[l], &points[r])
                    .map_err(|_| InfiniteError::PrefixTooShort)?;
                if got != want {
                    return Ok(ProperCopyOutcome::NotProper {
                        reason: format!(
                            "distance between points {l} and {r} is {got}, prefix needs {want}"
                        ),
                    });
                }
            }
        }
        unreachable!("a mismatch exists");
    }

    // A proper copy needs a strictly decreasing witness axis.
    let n = points[0].dim();
    for axis in 0..n {
        let decreasing = (1..=len).all(|r| {
            points[r - 1].coord(axis).clone() - points[r].coord(axis) == gaps[r - 1]
        });
        if decreasing {
            return Ok(ProperCopyOutcome::Proper { direction: axis });
        }
    }
    Ok(ProperCopyOutcome::NotProper {
        reason: "isometric copy, but no axis carries the decreasing progression".into(),
    })
}

/// Alternating-ring two-colouring data for an unbounded space: radii grow by
/// the distance of each witness element, which exceeds the previous cube
/// diameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingColouring {
    /// `h_1 < h_2 < ...`.
    pub radii: Vec<Rat>,
    /// `(enumeration index, distance to the anchor)` per accepted witness.
    pub witnesses: Vec<(usize, Rat)>,
}

impl RingColouring {
    /// Ring-parity colour of a point at the given distance from the anchor,
    /// when the computed radii reach it.
    pub fn colour_for_distance(&self, d: &Rat) -> Option<u8> {
        let ring = self.radii.iter().position(|h| d <= h)?;
        Some((ring % 2) as u8)
    }

    /// The growth invariants: each witness distance exceeds twice the
    /// previous radius, and radii advance by exactly that distance.
    pub fn verify(&self) -> bool {
        if self.radii.first() != Some(&Rat::one()) {
            return false;
        }
        if self.witnesses.len() + 1 != self.radii.len() {
            return false;
        }
        for (i, (_, d)) in self.witnesses.iter().enumerate() {
            let h = &self.radii[i];
            if *d <= Rat::int(2) * h {
                return false;
            }
            if self.radii[i + 1] != h.clone() + d {
                return false;
            }
        }
        true
    }
}

/// Build the nested-cube radii from an enumeration of distances to a fixed
/// anchor. Scans forward for the first element beyond twice the current
/// radius; gives up after `scan_budget` elements without one.
pub fn nested_cube_colouring(
    distances: impl IntoIterator<Item = Rat>,
    depth: usize,
    scan_budget: usize,
) -> Result<RingColouring, InfiniteError> {
    if depth == 0 {
        return Err(InfiniteError::ZeroDepth);
    }
    let mut radii = vec![Rat::one()];
    let mut witnesses = Vec::new();
    let mut it = distances.into_iter().enumerate();
    while radii.len() < depth {
        let need = Rat::int(2) * radii.last().unwrap();
        let mut scanned = 0usize;
        let mut found = None;
        for (idx, d) in it.by_ref() {
            scanned += 1;
            if d > need {
                found = Some((idx, d));
                break;
            }
            if scanned >= scan_budget {
                break;
            }
        }
        match found {
            Some((idx, d)) => {
                let h = radii.last().unwrap().clone() + &d;
                radii.push(h);
                witnesses.push((idx, d));
            }
            None => return Err(InfiniteError::SearchExhausted),
        }
    }
    let out = RingColouring { radii, witnesses };
    debug_assert!(out.verify());
    Ok(out)
}
