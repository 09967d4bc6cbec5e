//! Batons (finite arithmetic-like point sets on the line, given by their
//! positive gaps) and rational points of the ambient max-norm space.

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

/// One-dimensional finite metric space `{p_0 < p_1 < ... < p_k}` described by
/// its gap sequence; `p_0 = 0` and `p_i - p_{i-1} = gaps[i-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BatonRepr", into = "BatonRepr")]
pub struct Baton {
    gaps: Vec<Rat>,
    points: Vec<Rat>,
    is_integer: bool,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BatonError {
    #[error("baton needs at least one gap")]
    EmptyGaps,
    #[error("gap {index} is not strictly positive: {value}")]
    NonPositiveGap { index: usize, value: Rat },
}

impl Baton {
    pub fn from_gaps(gaps: Vec<Rat>) -> Result<Self, BatonError> {
        if gaps.is_empty() {
            return Err(BatonError::EmptyGaps);
        }
        for (index, g) in gaps.iter().enumerate() {
            if !g.is_positive() {
                return Err(BatonError::NonPositiveGap {
                    index,
                    value: g.clone(),
                });
            }
        }
        let mut points = Vec::with_capacity(gaps.len() + 1);
        let mut acc = Rat::zero();
        points.push(acc.clone());
        for g in &gaps {
            acc += g;
            points.push(acc.clone());
        }
        let is_integer = gaps.iter().all(Rat::is_integer);
        Ok(Baton {
            gaps,
            points,
            is_integer,
        })
    }

    /// Arithmetic progression with `k` equal gaps.
    pub fn uniform(k: usize, lambda: Rat) -> Result<Self, BatonError> {
        if k == 0 {
            return Err(BatonError::EmptyGaps);
        }
        Self::from_gaps(vec![lambda; k])
    }

    /// `{0, 1, ..., k}`.
    pub fn unit(k: usize) -> Self {
        Self::uniform(k, Rat::one()).expect("k >= 1")
    }

    pub fn gaps(&self) -> &[Rat] {
        &self.gaps
    }

    pub fn points(&self) -> &[Rat] {
        &self.points
    }

    /// Number of gaps; the baton has `k + 1` points.
    pub fn k(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_integer(&self) -> bool {
        self.is_integer
    }

    pub fn diameter(&self) -> &Rat {
        self.points.last().expect("nonempty")
    }

    /// Integer gaps, when the baton is integral.
    pub fn integer_gaps(&self) -> Option<Vec<i64>> {
        self.is_integer
            .then(|| {
                self.gaps
                    .iter()
                    .map(|g| i64::try_from(g.as_integer().unwrap()).ok())
                    .collect()
            })
            .flatten()
    }

    pub fn integer_points(&self) -> Option<Vec<i64>> {
        self.is_integer
            .then(|| {
                self.points
                    .iter()
                    .map(|p| i64::try_from(p.as_integer().unwrap()).ok())
                    .collect()
            })
            .flatten()
    }
}

impl std::fmt::Debug for Baton {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "B(")?;
        for (i, g) in self.gaps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize, Clone)]
struct BatonRepr {
    gaps: Vec<Rat>,
}

impl TryFrom<BatonRepr> for Baton {
    type Error = BatonError;
    fn try_from(repr: BatonRepr) -> Result<Self, Self::Error> {
        Baton::from_gaps(repr.gaps)
    }
}

impl From<Baton> for BatonRepr {
    fn from(b: Baton) -> Self {
        BatonRepr { gaps: b.gaps }
    }
}

/// Point of the ambient space with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<Rat>,
}

impl Point {
    pub fn new(coords: Vec<Rat>) -> Self {
        Point { coords }
    }

    pub fn ints(coords: &[i64]) -> Self {
        Point {
            coords: coords.iter().map(|&c| Rat::int(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, axis: usize) -> &Rat {
        &self.coords[axis]
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
