//! Grid-piecewise-constant colourings of the cube `[-eps, 1+eps]^n`: the
//! adversaries the finder runs against. Cells are the product of per-axis
//! slabs cut by rational breakpoints (left-closed, the last slab closed);
//! every query is counted.

use std::sync::atomic::{AtomicU64, Ordering};

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::baton::Point;
use crate::colouring::cover::seeded_rng;
use crate::rat::Rat;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("epsilon must be positive")]
    BadEpsilon,
    #[error("breakpoints must be strictly increasing inside the cube")]
    BadBreakpoints,
    #[error("cell grid has {got} entries, expected {expected}")]
    BadGrid { expected: usize, got: usize },
    #[error("cell colour {0} outside the declared palette")]
    BadColour(u32),
    #[error("query outside the oracle's cube: axis {axis}")]
    OutOfDomain { axis: usize },
    #[error("query dimension {got}, oracle dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(try_from = "OracleRepr", into = "OracleRepr")]
pub struct GridOracle {
    n: usize,
    epsilon: Rat,
    colour_count: u32,
    /// Interior breakpoints per axis, strictly increasing.
    breaks: Vec<Vec<Rat>>,
    /// Row-major cell colours; axis 0 slab index is the most significant.
    grid: Vec<u32>,
    #[serde(skip)]
    queries: AtomicU64,
}

impl Clone for GridOracle {
    fn clone(&self) -> Self {
        GridOracle {
            n: self.n,
            epsilon: self.epsilon.clone(),
            colour_count: self.colour_count,
            breaks: self.breaks.clone(),
            grid: self.grid.clone(),
            queries: AtomicU64::new(self.queries.load(Ordering::Relaxed)),
        }
    }
}

#[derive(Serialize, Deserialize, Clone)]
struct OracleRepr {
    n: usize,
    epsilon: Rat,
    colours: u32,
    cells: CellsRepr,
}

#[derive(Serialize, Deserialize, Clone)]
struct CellsRepr {
    breakpoints: Vec<Vec<Rat>>,
    grid: Vec<u32>,
}

impl TryFrom<OracleRepr> for GridOracle {
    type Error = OracleError;
    fn try_from(r: OracleRepr) -> Result<Self, Self::Error> {
        GridOracle::new(r.n, r.epsilon, r.colours, r.cells.breakpoints, r.cells.grid)
    }
}

impl From<GridOracle> for OracleRepr {
    fn from(o: GridOracle) -> Self {
        OracleRepr {
            n: o.n,
            epsilon: o.epsilon,
            colours: o.colour_count,
            cells: CellsRepr {
                breakpoints: o.breaks,
                grid: o.grid,
            },
        }
    }
}

impl GridOracle {
    pub fn new(
        n: usize,
        epsilon: Rat,
        colour_count: u32,
        breaks: Vec<Vec<Rat>>,
        grid: Vec<u32>,
    ) -> Result<Self, OracleError> {
        if !epsilon.is_positive() {
            return Err(OracleError::BadEpsilon);
        }
        if breaks.len() != n || n == 0 {
            return Err(OracleError::BadBreakpoints);
        }
        let lo = -epsilon.clone();
        let hi = Rat::one() + &epsilon;
        for axis in &breaks {
            for w in axis.windows(2) {
                if w[0] >= w[1] {
                    return Err(OracleError::BadBreakpoints);
                }
            }
            if axis.iter().any(|b| *b <= lo || *b >= hi) {
                return Err(OracleError::BadBreakpoints);
            }
        }
        let expected: usize = breaks.iter().map(|a| a.len() + 1).product();
        if grid.len() != expected {
            return Err(OracleError::BadGrid {
                expected,
                got: grid.len(),
            });
        }
        if let Some(&bad) = grid.iter().find(|&&c| c >= colour_count) {
            return Err(OracleError::BadColour(bad));
        }
        Ok(GridOracle {
            n,
            epsilon,
            colour_count,
            breaks,
            grid,
            queries: AtomicU64::new(0),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> &Rat {
        &self.epsilon
    }

    pub fn colour_count(&self) -> u32 {
        self.colour_count
    }

    pub fn lo(&self) -> Rat {
        -self.epsilon.clone()
    }

    pub fn hi(&self) -> Rat {
        Rat::one() + &self.epsilon
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// Slab index of a coordinate: breakpoints are left-closed boundaries of
    /// the upper slab.
    fn slab(&self, axis: usize, coord: &Rat) -> usize {
        self.breaks[axis].partition_point(|b| b <= coord)
    }

    /// Per-axis slab boundaries clipped to an interval, as
    /// `(slab index, slab lo, slab hi)` covering `[lo, hi]`.
    pub(crate) fn slabs_over(&self, axis: usize, lo: &Rat, hi: &Rat) -> Vec<(usize, Rat, Rat)> {
        let first = self.slab(axis, lo);
        let last = self.slab(axis, hi);
        (first..=last)
            .map(|s| {
                let s_lo = if s == 0 {
                    self.lo()
                } else {
                    self.breaks[axis][s - 1].clone()
                };
                let s_hi = if s == self.breaks[axis].len() {
                    self.hi()
                } else {
                    self.breaks[axis][s].clone()
                };
                (s, s_lo.max(lo.clone()), s_hi.min(hi.clone()))
            })
            .collect()
    }

    pub fn query(&self, p: &Point) -> Result<u32, OracleError> {
        if p.dim() != self.n {
            return Err(OracleError::DimensionMismatch {
                expected: self.n,
                got: p.dim(),
            });
        }
        let lo = self.lo();
        let hi = self.hi();
        let mut idx = 0usize;
        for axis in 0..self.n {
            let c = p.coord(axis);
            if *c < lo || *c > hi {
                return Err(OracleError::OutOfDomain { axis });
            }
            idx = idx * (self.breaks[axis].len() + 1) + self.slab(axis, c);
        }
        self.queries.fetch_add(1, Ordering::Relaxed);
        Ok(self.grid[idx])
    }

    /// Vertical stripes along one axis with the given width, colours
    /// cycling.
    pub fn stripes(
        n: usize,
        epsilon: Rat,
        colours: u32,
        axis: usize,
        width: Rat,
    ) -> Result<Self, OracleError> {
        if !width.is_positive() || colours == 0 || axis >= n {
            return Err(OracleError::BadBreakpoints);
        }
        let lo = -epsilon.clone();
        let hi = Rat::one() + &epsilon;
        let mut breaks = vec![Vec::new(); n];
        let mut b = lo.clone() + &width;
        while b < hi {
            breaks[axis].push(b.clone());
            b = b + &width;
        }
        let slabs = breaks[axis].len() + 1;
        let grid: Vec<u32> = (0..slabs).map(|s| (s as u32) % colours).collect();
        GridOracle::new(n, epsilon, colours, breaks, grid)
    }

    /// Checkerboard with the given cell size on every axis.
    pub fn checkerboard(
        n: usize,
        epsilon: Rat,
        colours: u32,
        cell: Rat,
    ) -> Result<Self, OracleError> {
        if !cell.is_positive() || colours == 0 {
            return Err(OracleError::BadBreakpoints);
        }
        let lo = -epsilon.clone();
        let hi = Rat::one() + &epsilon;
        let mut axis_breaks = Vec::new();
        let mut b = lo.clone() + &cell;
        while b < hi {
            axis_breaks.push(b.clone());
            b = b + &cell;
        }
        let slabs = axis_breaks.len() + 1;
        let breaks = vec![axis_breaks; n];
        let total = slabs.pow(n as u32);
        let grid: Vec<u32> = (0..total)
            .map(|mut idx| {
                let mut sum = 0u32;
                for _ in 0..n {
                    sum += (idx % slabs) as u32;
                    idx /= slabs;
                }
                sum % colours
            })
            .collect();
        GridOracle::new(n, epsilon, colours, breaks, grid)
    }

    /// Random axis cuts on a 1/64 lattice with random cell colours.
    pub fn random_boxes(
        n: usize,
        epsilon: Rat,
        colours: u32,
        cuts_per_axis: usize,
        seed: u64,
    ) -> Result<Self, OracleError> {
        if colours == 0 {
            return Err(OracleError::BadBreakpoints);
        }
        let mut rng = seeded_rng(seed);
        let lo = -epsilon.clone();
        let span = Rat::one() + Rat::int(2) * &epsilon;
        let mut breaks = Vec::with_capacity(n);
        for _ in 0..n {
            let mut cuts: Vec<Rat> = (0..cuts_per_axis)
                .map(|_| {
                    let tick = 1 + (rng.next_u64() % 63) as i64;
                    lo.clone() + span.clone() * Rat::new(tick, 64)
                })
                .collect();
            cuts.sort();
            cuts.dedup();
            breaks.push(cuts);
        }
        let total: usize = breaks.iter().map(|a| a.len() + 1).product();
        let grid: Vec<u32> = (0..total)
            .map(|_| (rng.next_u64() % colours as u64) as u32)
            .collect();
        GridOracle::new(n, epsilon, colours, breaks, grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[(i64, i64)]) -> Point {
        Point::new(coords.iter().map(|&(a, b)| Rat::new(a, b)).collect())
    }

    #[test]
    fn stripes_cycle() {
        let o = GridOracle::stripes(2, Rat::new(1, 2), 2, 0, Rat::new(1, 4)).unwrap();
        assert_eq!(o.query(&pt(&[(-1, 2), (0, 1)])).unwrap(), 0);
        assert_eq!(o.query(&pt(&[(-1, 8), (0, 1)])).unwrap(), 1);
        assert_eq!(o.query(&pt(&[(1, 8), (0, 1)])).unwrap(), 2 % 2);
        assert_eq!(o.queries(), 3);
    }

    #[test]
    fn boundary_goes_to_upper_slab() {
        let o = GridOracle::stripes(1, Rat::new(1, 2), 2, 0, Rat::new(1, 4)).unwrap();
        // Breakpoint at -1/4: querying it exactly lands in slab 1.
        assert_eq!(o.query(&pt(&[(-1, 4)])).unwrap(), 1);
    }

    #[test]
    fn out_of_domain_rejected() {
        let o = GridOracle::stripes(1, Rat::new(1, 2), 2, 0, Rat::new(1, 4)).unwrap();
        assert!(matches!(
            o.query(&pt(&[(2, 1)])),
            Err(OracleError::OutOfDomain { axis: 0 })
        ));
    }

    #[test]
    fn checkerboard_alternates() {
        let o = GridOracle::checkerboard(2, Rat::new(1, 2), 2, Rat::new(1, 4)).unwrap();
        let a = o.query(&pt(&[(-3, 8), (-3, 8)])).unwrap();
        let b = o.query(&pt(&[(-1, 8), (-3, 8)])).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn random_boxes_reproducible() {
        let a = GridOracle::random_boxes(2, Rat::new(1, 2), 2, 5, 42).unwrap();
        let b = GridOracle::random_boxes(2, Rat::new(1, 2), 2, 5, 42).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn serde_shape_and_validation() {
        let o = GridOracle::stripes(2, Rat::new(1, 2), 2, 0, Rat::new(3, 4)).unwrap();
        let json = serde_json::to_string(&o).unwrap();
        assert!(json.contains("\"breakpoints\""));
        let back: GridOracle = serde_json::from_str(&json).unwrap();
        assert_eq!(back.colour_count(), 2);
        let bad = json.replace("\"colours\":2", "\"colours\":1");
        assert!(serde_json::from_str::<GridOracle>(&bad).is_err());
    }

    #[test]
    fn slabs_over_interval() {
        let o = GridOracle::stripes(1, Rat::new(1, 2), 2, 0, Rat::new(1, 2)).unwrap();
        // Breaks at 0, 1/2, 1; interval [1/4, 3/4] meets slabs 1 and 2.
        let slabs = o.slabs_over(0, &Rat::new(1, 4), &Rat::new(3, 4));
        assert_eq!(slabs.len(), 2);
        assert_eq!(slabs[0].0, 1);
        assert_eq!(slabs[0].1, Rat::new(1, 4));
        assert_eq!(slabs[1].2, Rat::new(3, 4));
    }
}
