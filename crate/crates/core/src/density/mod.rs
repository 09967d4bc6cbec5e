//! Avoidance densities of finite patterns in the integers and integer
//! lattices: exact values on the line via the shift automaton and its maximum
//! mean cycle, two-sided bounds in higher rank via box and torus independence
//! numbers, and the lattice embedding that transfers general batons to
//! integer patterns.

mod automaton;
mod embedding;
mod karp;
mod lattice;
mod line;

pub use automaton::ShiftAutomaton;
pub use embedding::{
    group_embedding, pattern_of_baton, pattern_of_embedding, EmbeddingError, FormalValue,
    GroupEmbedding,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::geometry::{Domain, GridSet};
use crate::rat::Rat;

/// Default ceiling on the rank-1 automaton window (states are `2^window`).
pub const DEFAULT_WINDOW_CEILING: usize = 20;
/// Default ceiling on `m^t` for box/torus solves in rank >= 2.
pub const DEFAULT_LATTICE_CEILING: u64 = 4096;
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DensityError {
    #[error("pattern must be nonempty")]
    EmptyPattern,
    #[error("pattern points have mixed ranks")]
    RankMismatch,
    #[error("operation requires rank {expected}, pattern has rank {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("pattern window {window} exceeds the ceiling {ceiling}")]
    WindowTooLarge { window: usize, ceiling: usize },
    #[error("torus of modulus {m} is too large for the cyclic solver")]
    TorusTooLarge { m: u32 },
    #[error("lattice instance of {points} points exceeds the ceiling {ceiling}")]
    LatticeTooLarge { points: u64, ceiling: u64 },
    #[error("m must be at least 1")]
    ZeroModulus,
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// Finite subset of `Z^t`, normalized so the minimum on each axis is 0.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "PatternRepr", into = "PatternRepr")]
pub struct Pattern {
    rank: usize,
    points: BTreeSet<Vec<i64>>,
    diameter: Vec<i64>,
}

#[derive(Serialize, Deserialize, Clone)]
struct PatternRepr {
    rank: usize,
    points: Vec<Vec<i64>>,
}

impl TryFrom<PatternRepr> for Pattern {
    type Error = DensityError;
    fn try_from(repr: PatternRepr) -> Result<Self, Self::Error> {
        let p = Pattern::new(repr.points)?;
        if p.rank != repr.rank {
            return Err(DensityError::RankMismatch);
        }
        Ok(p)
    }
}

impl From<Pattern> for PatternRepr {
    fn from(p: Pattern) -> Self {
        PatternRepr {
            rank: p.rank,
            points: p.points.into_iter().collect(),
        }
    }
}

impl Pattern {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self, DensityError> {
        if points.is_empty() {
            return Err(DensityError::EmptyPattern);
        }
        let rank = points[0].len();
        if rank == 0 || points.iter().any(|p| p.len() != rank) {
            return Err(DensityError::RankMismatch);
        }
        let mins: Vec<i64> = (0..rank)
            .map(|j| points.iter().map(|p| p[j]).min().unwrap())
            .collect();
        let normalized: BTreeSet<Vec<i64>> = points
            .iter()
            .map(|p| p.iter().zip(&mins).map(|(x, m)| x - m).collect())
            .collect();
        let diameter: Vec<i64> = (0..rank)
            .map(|j| normalized.iter().map(|p| p[j]).max().unwrap())
            .collect();
        Ok(Pattern {
            rank,
            points: normalized,
            diameter,
        })
    }

    pub fn line(points: &[i64]) -> Result<Self, DensityError> {
        Pattern::new(points.iter().map(|&p| vec![p]).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.points.iter()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.contains(p)
    }

    /// Per-axis maximum coordinate after normalization.
    pub fn diameter(&self) -> &[i64] {
        &self.diameter
    }

    /// Mirror image `{diameter - p}`, normalized.
    pub fn reflect(&self) -> Pattern {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().zip(&self.diameter).map(|(x, d)| d - x).collect())
            .collect();
        Pattern::new(points).expect("reflection preserves validity")
    }

    /// Sorted point list for rank-1 patterns.
    pub fn line_points(&self) -> Option<Vec<i64>> {
        (self.rank == 1).then(|| self.points.iter().map(|p| p[0]).collect())
    }

    /// The pattern of an integer baton's point set.
    pub fn of_integer_baton(baton: &crate::baton::Baton) -> Option<Self> {
        let pts = baton.integer_points()?;
        Some(Pattern::line(&pts).expect("baton points nonempty"))
    }
}

/// Is `members + period*Z` free of translates and reflections of the rank-1
/// pattern? Exactly the cyclic residue-containment check.
pub fn cyclic_tr_free(members: &BTreeSet<i64>, period: i64, s: &Pattern) -> bool {
    assert_eq!(s.rank(), 1);
    let pts = s.line_points().unwrap();
    let refl: Vec<i64> = {
        let d = s.diameter()[0];
        pts.iter().map(|&p| d - p).collect()
    };
    for x in 0..period {
        for shape in [&pts, &refl] {
            if shape
                .iter()
                .all(|&p| members.contains(&((x + p).rem_euclid(period))))
            {
                return false;
            }
        }
    }
    true
}

/// Two-sided density information with attaining certificates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityResult {
    pub lower: Rat,
    pub upper: Rat,
    pub exact: Option<Rat>,
    /// Torus set whose periodic extension attains `lower`.
    pub witness: Option<GridSet>,
    /// Modulus that produced the box upper bound, when one did.
    pub upper_m: Option<u32>,
    /// False when some underlying solve stopped on budget.
    pub all_optimal: bool,
}

impl DensityResult {
    fn check_invariants(&self) {
        assert!(self.lower <= self.upper, "lower exceeds upper");
        if let Some(e) = &self.exact {
            assert!(*e == self.lower && *e == self.upper);
        }
    }
}

/// Box/torus independence solve outcome.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountOutcome {
    pub size: u64,
    pub witness: GridSet,
    pub optimal: bool,
    pub upper_bound: u64,
    pub nodes: u64,
}

/// Maximum size of a tr-free subset of the box `{0..m-1}^t`, with witness.
pub fn alpha_tr(m: u32, s: &Pattern, budget: u64) -> Result<CountOutcome, DensityError> {
    if m == 0 {
        return Err(DensityError::ZeroModulus);
    }
    if s.rank() == 1 {
        let (size, members) = line::alpha_line(m, s, DEFAULT_WINDOW_CEILING)?;
        let witness = GridSet::new(
            Domain::Box(vec![m]),
            members.iter().map(|&x| vec![x as i64]),
        )?;
        Ok(CountOutcome {
            size,
            witness,
            optimal: true,
            upper_bound: size,
            nodes: 0,
        })
    } else {
        lattice::alpha_box(m, s, budget)
    }
}

/// Maximum size of `Y` in `(Z_m)^t` whose periodic extension is tr-free.
pub fn beta_tr(m: u32, s: &Pattern, budget: u64) -> Result<CountOutcome, DensityError> {
    if m == 0 {
        return Err(DensityError::ZeroModulus);
    }
    if s.rank() == 1 {
        let (size, members) = line::beta_line(m, s, DEFAULT_WINDOW_CEILING)?;
        let witness = GridSet::new(
            Domain::Torus(vec![m]),
            members.iter().map(|&x| vec![x as i64]),
        )?;
        Ok(CountOutcome {
            size,
            witness,
            optimal: true,
            upper_bound: size,
            nodes: 0,
        })
    } else {
        lattice::beta_torus(m, s, budget)
    }
}

/// Exact avoidance density of a rank-1 pattern: maximum mean cycle of the
/// shift automaton, with an attaining periodic witness.
pub fn exact_density_line(s: &Pattern) -> Result<DensityResult, DensityError> {
    exact_density_line_with_ceiling(s, DEFAULT_WINDOW_CEILING)
}

pub fn exact_density_line_with_ceiling(
    s: &Pattern,
    ceiling: usize,
) -> Result<DensityResult, DensityError> {
    if s.rank() != 1 {
        return Err(DensityError::WrongRank {
            expected: 1,
            got: s.rank(),
        });
    }
    if s.len() == 1 {
        // A single point forbids every nonempty set.
        let witness = GridSet::new(Domain::Torus(vec![1]), Vec::<Vec<i64>>::new())?;
        let result = DensityResult {
            lower: Rat::zero(),
            upper: Rat::zero(),
            exact: Some(Rat::zero()),
            witness: Some(witness),
            upper_m: None,
            all_optimal: true,
        };
        result.check_invariants();
        return Ok(result);
    }

    let aut = ShiftAutomaton::new(s, ceiling)?;
    let cycle = karp::max_mean_cycle(&aut);

    // The cycle must really walk the automaton.
    let len = cycle.states.len();
    for i in 0..len {
        let to = cycle.states[(i + 1) % len];
        assert_eq!(
            aut.step(cycle.states[i], cycle.bits[i] as u64),
            Some(to),
            "witness cycle must follow automaton transitions"
        );
    }

    // Read the periodic witness off the optimal cycle and re-check it.
    let period = cycle.bits.len() as i64;
    let members: BTreeSet<i64> = cycle
        .bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as i64)
        .collect();
    assert!(cyclic_tr_free(&members, period, s), "optimal cycle witness must be tr-free");
    let density = Rat::new(members.len() as i64, period);
    assert_eq!(density, cycle.mean, "cycle mean must equal witness density");

    let witness = GridSet::new(
        Domain::Torus(vec![period as u32]),
        members.iter().map(|&x| vec![x]),
    )?;
    let result = DensityResult {
        lower: cycle.mean.clone(),
        upper: cycle.mean.clone(),
        exact: Some(cycle.mean),
        witness: Some(witness),
        upper_m: None,
        all_optimal: true,
    };
    result.check_invariants();
    Ok(result)
}

/// Sandwich bounds from a sweep of moduli, intersected with the universal
/// `k/(k+1)` upper bound for a `(k+1)`-point pattern.
pub fn density_bounds(
    s: &Pattern,
    m_list: &[u32],
    budget: u64,
) -> Result<DensityResult, DensityError> {
    let t = s.rank() as i32;
    let mut lower = Rat::zero();
    let mut witness = None;
    let universal = Rat::new(s.len() as i64 - 1, s.len() as i64);
    let mut sweep_upper: Option<(Rat, u32)> = None;
    let mut all_optimal = true;

    for &m in m_list {
        let beta = beta_tr(m, s, budget)?;
        all_optimal &= beta.optimal;
        let beta_ratio = Rat::int(beta.size as i64) / Rat::int(m as i64).pow(t);
        if beta_ratio > lower {
            lower = beta_ratio;
            witness = Some(beta.witness);
        }
        let alpha = alpha_tr(m, s, budget)?;
        all_optimal &= alpha.optimal;
        // A non-optimal alpha solve only certifies an upper bound through its
        // own bound field.
        let alpha_cert = if alpha.optimal {
            alpha.size
        } else {
            alpha.upper_bound
        };
        let alpha_ratio = Rat::int(alpha_cert as i64) / Rat::int(m as i64).pow(t);
        if sweep_upper.as_ref().is_none_or(|(u, _)| alpha_ratio < *u) {
            sweep_upper = Some((alpha_ratio, m));
        }
    }

    let (upper, upper_m) = match sweep_upper {
        Some((u, m)) if u <= universal => (u, Some(m)),
        _ => (universal, None),
    };

    let exact = (lower == upper).then(|| lower.clone());
    let result = DensityResult {
        lower,
        upper,
        exact,
        witness,
        upper_m,
        all_optimal,
    };
    result.check_invariants();
    Ok(result)
}

#[cfg(test)]
mod tests;
