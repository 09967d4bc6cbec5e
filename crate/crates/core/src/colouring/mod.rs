//! Periodic colourings of the integer lattice (hence, by flooring, of the
//! whole space) with machine-checked properness: exhaustive monochromatic
//! copy search over one period plus the forbidden diameter.

mod construct;
pub(crate) mod cover;
mod partition;
mod report;

pub use construct::{periodic_colouring_for_baton, simplex_colouring};
pub use cover::{random_cover, seeded_rng, CoverResult};
pub use partition::{
    colouring_from_partition, partition_search, PartitionCertificate, PartitionSearchError,
};
pub use report::{chi_report, ChiBounds, ChiSpace};

use serde::{Deserialize, Serialize};

use crate::baton::{Baton, Point};
use crate::exec;
use crate::products::ProductSpace;
use crate::rat::Rat;
use crate::search::{for_each_embedding, DistMatrix};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ColouringError {
    #[error("colour map must cover the full period grid ({expected} cells, got {got})")]
    BadColourMap { expected: u64, got: u64 },
    #[error("colour ids must be contiguous from 0")]
    NonContiguousColours,
    #[error("point dimension {got} does not match colouring dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("forbidden space must be integral for lattice verification")]
    NonIntegralForbidden,
    #[error("no nonempty tr-free residue set exists at this modulus")]
    NoFreeSet,
    #[error("instance of {points} lattice points is too large ({ceiling} max)")]
    TooLarge { points: u64, ceiling: u64 },
    #[error("base set must be a nonempty subset of the matching torus")]
    DomainMismatch,
    #[error("constructed object failed its own verification: {0}")]
    VerificationFailed(String),
    #[error("{0} parts cannot colour dimension {1}: need at least one unused part per point")]
    TooFewParts(u32, usize),
    #[error(transparent)]
    Density(#[from] crate::density::DensityError),
    #[error(transparent)]
    Embedding(#[from] crate::density::EmbeddingError),
    #[error(transparent)]
    Products(#[from] crate::products::ProductsError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// How a colouring was built; enough to reproduce it bit for bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Cover {
        seed: u64,
        base: Vec<u32>,
        translates: Vec<Vec<u32>>,
    },
    Simplex {
        group_size: u32,
    },
    Partition {
        seed: u64,
    },
    Adhoc {
        note: String,
    },
}

/// Colour assignment on the period grid, extended to the whole space by
/// colouring every point by its coordinatewise floor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColouringRepr", into = "ColouringRepr")]
pub struct PeriodicColouring {
    n: usize,
    period: u32,
    colours: Vec<u32>,
    colour_count: u32,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize, Clone)]
struct ColouringRepr {
    n: usize,
    m: u32,
    colours: Vec<u32>,
    count: u32,
    provenance: Provenance,
}

impl TryFrom<ColouringRepr> for PeriodicColouring {
    type Error = ColouringError;
    fn try_from(r: ColouringRepr) -> Result<Self, Self::Error> {
        let c = PeriodicColouring::new(r.n, r.m, r.colours, r.provenance)?;
        if c.colour_count != r.count {
            return Err(ColouringError::NonContiguousColours);
        }
        Ok(c)
    }
}

impl From<PeriodicColouring> for ColouringRepr {
    fn from(c: PeriodicColouring) -> Self {
        ColouringRepr {
            n: c.n,
            m: c.period,
            colours: c.colours,
            count: c.colour_count,
            provenance: c.provenance,
        }
    }
}

impl PeriodicColouring {
    pub fn new(
        n: usize,
        period: u32,
        colours: Vec<u32>,
        provenance: Provenance,
    ) -> Result<Self, ColouringError> {
        let expected = (period as u64)
            .checked_pow(n as u32)
            .filter(|&p| p <= 1 << 24)
            .ok_or(ColouringError::TooLarge {
                points: u64::MAX,
                ceiling: 1 << 24,
            })?;
        if colours.len() as u64 != expected || n == 0 || period == 0 {
            return Err(ColouringError::BadColourMap {
                expected,
                got: colours.len() as u64,
            });
        }
        let colour_count = colours.iter().copied().max().map_or(0, |m| m + 1);
        let mut seen = vec![false; colour_count as usize];
        for &c in &colours {
            seen[c as usize] = true;
        }
        if !seen.iter().all(|&b| b) {
            return Err(ColouringError::NonContiguousColours);
        }
        Ok(PeriodicColouring {
            n,
            period,
            colours,
            colour_count,
            provenance,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn colour_count(&self) -> u32 {
        self.colour_count
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Colour of an integer point (reduced modulo the period).
    pub fn colour_at(&self, z: &[i64]) -> u32 {
        debug_assert_eq!(z.len(), self.n);
        let m = self.period as i64;
        let mut idx = 0u64;
        for &c in z {
            idx = idx * self.period as u64 + c.rem_euclid(m) as u64;
        }
        self.colours[idx as usize]
    }

    /// Colour of a rational point: the colour of its coordinatewise floor.
    pub fn colour_real_point(&self, x: &Point) -> Result<u32, ColouringError> {
        if x.dim() != self.n {
            return Err(ColouringError::DimensionMismatch {
                expected: self.n,
                got: x.dim(),
            });
        }
        let floors: Vec<i64> = x
            .coords()
            .iter()
            .map(|c| i64::try_from(c.floor_int()).expect("coordinate fits i64"))
            .collect();
        Ok(self.colour_at(&floors))
    }
}

/// Space whose monochromatic copies a colouring must avoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForbiddenSpace {
    Baton(Baton),
    Product(ProductSpace),
}

impl ForbiddenSpace {
    pub fn is_integer(&self) -> bool {
        match self {
            ForbiddenSpace::Baton(b) => b.is_integer(),
            ForbiddenSpace::Product(p) => p.is_integer(),
        }
    }

    pub fn diameter(&self) -> Rat {
        match self {
            ForbiddenSpace::Baton(b) => b.diameter().clone(),
            ForbiddenSpace::Product(p) => p.diameter(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Proper,
    Violation { points: Vec<Vec<i64>>, colour: u32 },
}

impl Verdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, Verdict::Proper)
    }
}

const VERIFY_WINDOW_CEILING: u64 = 4_000_000;

/// Exhaustively search for a monochromatic isometric copy inside the window
/// `[0, period + diam)^n`; by periodicity this decides properness over the
/// whole lattice, hence over the space for integral forbidden sets.
pub fn verify_colouring(
    colouring: &PeriodicColouring,
    forbidden: &ForbiddenSpace,
) -> Result<Verdict, ColouringError> {
    if !forbidden.is_integer() {
        return Err(ColouringError::NonIntegralForbidden);
    }
    let diam = i64::try_from(forbidden.diameter().ceil_int()).expect("diameter fits i64");
    let window = colouring.period as i64 + diam;
    let n = colouring.n;
    let window_points = (window as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if window_points > VERIFY_WINDOW_CEILING {
        return Err(ColouringError::TooLarge {
            points: window_points,
            ceiling: VERIFY_WINDOW_CEILING,
        });
    }

    match forbidden {
        ForbiddenSpace::Baton(b) => verify_against_baton(colouring, b, window),
        ForbiddenSpace::Product(p) => verify_against_product(colouring, p, window),
    }
}

fn unindex(mut idx: u64, window: i64, n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n];
    for j in (0..n).rev() {
        p[j] = (idx % window as u64) as i64;
        idx /= window as u64;
    }
    p
}

fn verify_against_baton(
    colouring: &PeriodicColouring,
    baton: &Baton,
    window: i64,
) -> Result<Verdict, ColouringError> {
    let gaps = baton.integer_gaps().expect("checked integral");
    let n = colouring.n;
    let anchor_count = (window as u64).pow(n as u32) as usize;

    let hit = exec::find_first(anchor_count, |ai| {
        let anchor = unindex(ai as u64, window, n);
        let colour = colouring.colour_at(&anchor);
        let mut seq = vec![anchor];
        let alive: Vec<(usize, i8)> = (0..n).flat_map(|a| [(a, 1i8), (a, -1)]).collect();
        extend_mono_copy(colouring, &gaps, window, colour, &mut seq, &alive)
            .map(|points| (points, colour))
    });

    Ok(match hit {
        None => Verdict::Proper,
        Some((points, colour)) => Verdict::Violation { points, colour },
    })
}

/// Depth-first extension of a monochromatic copy: the witness axis carries
/// exact signed gaps, every axis stays within the gap, every point stays in
/// the window and on the anchor's colour.
fn extend_mono_copy(
    colouring: &PeriodicColouring,
    gaps: &[i64],
    window: i64,
    colour: u32,
    seq: &mut Vec<Vec<i64>>,
    alive: &[(usize, i8)],
) -> Option<Vec<Vec<i64>>> {
    let r = seq.len() - 1;
    if r == gaps.len() {
        return Some(seq.clone());
    }
    let gap = gaps[r];
    let n = seq[0].len();
    let cur = seq.last().unwrap().clone();

    // Odometer over per-axis offsets in [-gap, gap].
    let mut delta = vec![-gap; n];
    loop {
        let next: Vec<i64> = cur.iter().zip(&delta).map(|(c, d)| c + d).collect();
        if next.iter().all(|&c| c >= 0 && c < window) {
            let next_alive: Vec<(usize, i8)> = alive
                .iter()
                .copied()
                .filter(|&(a, s)| delta[a] == s as i64 * gap)
                .collect();
            if !next_alive.is_empty() && colouring.colour_at(&next) == colour {
                seq.push(next);
                if let Some(found) =
                    extend_mono_copy(colouring, gaps, window, colour, seq, &next_alive)
                {
                    return Some(found);
                }
                seq.pop();
            }
        }
        let mut j = n;
        loop {
            if j == 0 {
                return None;
            }
            j -= 1;
            delta[j] += 1;
            if delta[j] <= gap {
                break;
            }
            delta[j] = -gap;
        }
    }
}

fn verify_against_product(
    colouring: &PeriodicColouring,
    product: &ProductSpace,
    window: i64,
) -> Result<Verdict, ColouringError> {
    let n = colouring.n;
    let total = (window as u64).pow(n as u32);
    let target = DistMatrix::from_points(&product.points());

    for colour in 0..colouring.colour_count {
        let class: Vec<Vec<i64>> = (0..total)
            .map(|i| unindex(i, window, n))
            .filter(|p| colouring.colour_at(p) == colour)
            .collect();
        if (class.len() as u64) < target.len() as u64 {
            continue;
        }
        let class_points: Vec<Point> = class.iter().map(|p| Point::ints(p)).collect();
        let domain = DistMatrix::from_points(&class_points);
        let mut violation = None;
        for_each_embedding(&target, &domain, |image| {
            violation = Some(
                image
                    .iter()
                    .map(|&i| class[i as usize].clone())
                    .collect::<Vec<_>>(),
            );
            false
        });
        if let Some(points) = violation {
            return Ok(Verdict::Violation { points, colour });
        }
    }
    Ok(Verdict::Proper)
}

#[cfg(test)]
mod tests;
