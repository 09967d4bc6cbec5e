//! Constructive monochromatic-copy finder: given a grid oracle that colours
//! the cube `[-eps, 1+eps]^n` with at most n colours and a small enough ratio
//! q, extract a monochromatic proper prefix of the geometric progression.
//!
//! The driver follows the inductive argument behind the statement. Probe the
//! anchor and try to walk the chain through the shrinking slices I_i; when a
//! slice misses the anchor colour it yields a lower-dimensional cube short of
//! one colour, which seeds a scaled recursion. Climbing back up, each rung is
//! a cube around the current chain head that either supplies the next chain
//! point of the right colour or itself misses that colour — in which case the
//! recursion descends one rung with one colour fewer (a lazy realization of
//! the minimal-index search; indices strictly decrease, so it terminates).
//! The final rung either completes the chain or hands the whole problem to a
//! lower dimension with halved slack. Every returned point has been queried,
//! and callers re-verify the chain's distances and colours from scratch.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::baton::Point;
use crate::infinite::oracle::{GridOracle, OracleError};
use crate::infinite::{detect_proper_copy, ProperCopyOutcome};
use crate::rat::Rat;

#[derive(Debug, thiserror::Error)]
pub enum FindError {
    #[error("oracle declares {declared} colours; at most {allowed} usable here")]
    OracleTooManyColours { declared: u32, allowed: usize },
    #[error("config epsilon {config} differs from the oracle's {oracle}")]
    EpsilonMismatch { config: Rat, oracle: Rat },
    #[error("q = {q} exceeds the admissible epsilon/2^(n+1) = {bound}")]
    QTooLarge { q: Rat, bound: Rat },
    #[error("q must lie strictly between 0 and 1")]
    QOutOfRange,
    #[error("prefix length must be at least 1")]
    PrefixTooShort,
    #[error("query budget exhausted after {queries} queries")]
    BudgetExceeded { queries: u64, transcript: Box<Transcript> },
    #[error("internal invariant broke: {0}")]
    Internal(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FindConfig {
    pub n: usize,
    pub epsilon: Rat,
    pub q: Rat,
    /// Number of gaps; the finder returns `prefix_len + 1` points.
    pub prefix_len: usize,
    pub query_budget: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    Query {
        point: Vec<Rat>,
        colour: u32,
    },
    Anchor {
        depth: usize,
        colour: u32,
    },
    SliceHit {
        depth: usize,
        index: usize,
    },
    SliceMiss {
        depth: usize,
        index: usize,
        missing: u32,
    },
    Recurse {
        depth: usize,
        scale: Rat,
        free_axes: Vec<usize>,
        allowed: Vec<u32>,
        need: usize,
    },
    ClimbHit {
        depth: usize,
        index: usize,
    },
    Descend {
        depth: usize,
        index: usize,
        missing: u32,
    },
    FinalRungHit {
        depth: usize,
    },
    FinalRungMiss {
        depth: usize,
        missing: u32,
    },
    Return {
        depth: usize,
        points: usize,
        colour: u32,
        direction: usize,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Transcript {
    pub events: Vec<Event>,
    pub queries: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FindOutcome {
    pub points: Vec<Point>,
    pub colour: u32,
    pub direction: usize,
    pub transcript: Transcript,
}

/// Axis of the working region: pinned to a coordinate or free over
/// `[lo, lo + side]`.
#[derive(Clone, Debug)]
enum Axis {
    Fixed(Rat),
    Free(Rat),
}

#[derive(Clone, Debug)]
struct Region {
    axes: Vec<Axis>,
    side: Rat,
}

impl Region {
    fn free_axes(&self) -> Vec<usize> {
        self.axes
            .iter()
            .enumerate()
            .filter(|(_, a)| matches!(a, Axis::Free(_)))
            .map(|(i, _)| i)
            .collect()
    }

    fn lo(&self, axis: usize) -> &Rat {
        match &self.axes[axis] {
            Axis::Free(lo) => lo,
            Axis::Fixed(_) => panic!("axis {axis} is fixed"),
        }
    }

    fn contains(&self, p: &Point) -> bool {
        self.axes.iter().enumerate().all(|(i, a)| match a {
            Axis::Fixed(c) => p.coord(i) == c,
            Axis::Free(lo) => {
                *p.coord(i) >= *lo && *p.coord(i) <= lo.clone() + &self.side
            }
        })
    }
}

struct Chain {
    points: Vec<Point>,
    colour: u32,
    direction: usize,
}

struct Finder<'a> {
    oracle: &'a GridOracle,
    q: Rat,
    budget: u64,
    transcript: Transcript,
}

impl<'a> Finder<'a> {
    fn query(&mut self, p: &Point) -> Result<u32, FindError> {
        if self.transcript.queries >= self.budget {
            return Err(FindError::BudgetExceeded {
                queries: self.transcript.queries,
                transcript: Box::new(std::mem::take(&mut self.transcript)),
            });
        }
        let colour = self.oracle.query(p)?;
        self.transcript.queries += 1;
        self.transcript.events.push(Event::Query {
            point: p.coords().to_vec(),
            colour,
        });
        Ok(colour)
    }

    /// Query one representative per oracle cell meeting the region slice
    /// (fixed axes pinned, free axes over given intervals); first point of
    /// the wanted colour, scanning cells lexicographically.
    fn scan(
        &mut self,
        fixed: &[(usize, Rat)],
        free: &[(usize, Rat, Rat)],
        want: u32,
    ) -> Result<Option<Point>, FindError> {
        let n = self.oracle.n();
        let mut axis_choices: Vec<(usize, Vec<Rat>)> = Vec::with_capacity(n);
        for &(axis, ref coord) in fixed {
            axis_choices.push((axis, vec![coord.clone()]));
        }
        for &(axis, ref lo, ref hi) in free {
            let mids: Vec<Rat> = self
                .oracle
                .slabs_over(axis, lo, hi)
                .into_iter()
                .map(|(_, a, b)| (a + b) / Rat::int(2))
                .collect();
            axis_choices.push((axis, mids));
        }
        axis_choices.sort_by_key(|(axis, _)| *axis);
        debug_assert_eq!(axis_choices.len(), n);

        let mut cursor = vec![0usize; n];
        'cells: loop {
            let coords: Vec<Rat> = (0..n)
                .map(|i| axis_choices[i].1[cursor[i]].clone())
                .collect();
            let p = Point::new(coords);
            if self.query(&p)? == want {
                return Ok(Some(p));
            }
            for i in (0..n).rev() {
                cursor[i] += 1;
                if cursor[i] < axis_choices[i].1.len() {
                    continue 'cells;
                }
                cursor[i] = 0;
            }
            return Ok(None);
        }
    }

    /// Monochromatic proper chain of at least `need` points of `scale * G(q)`
    /// inside the region (side `(1 + 2 eps) * scale`), whose points all carry
    /// colours from `allowed`.
    fn find_chain(
        &mut self,
        region: &Region,
        scale: &Rat,
        eps: &Rat,
        allowed: &BTreeSet<u32>,
        need: usize,
        depth: usize,
    ) -> Result<Chain, FindError> {
        let free = region.free_axes();
        let d = free.len();
        if d == 0 {
            return Err(FindError::Internal("no free axes left".into()));
        }
        if allowed.len() > d {
            return Err(FindError::Internal(format!(
                "{} colours in a {d}-dimensional cube",
                allowed.len()
            )));
        }
        self.transcript.events.push(Event::Recurse {
            depth,
            scale: scale.clone(),
            free_axes: free.clone(),
            allowed: allowed.iter().copied().collect(),
            need,
        });

        // Virtual coordinates: x = lo + scale * (eps + v), v in [-eps, 1+eps].
        let virt = |axis: usize, v: Rat| -> Rat {
            region.lo(axis).clone() + scale.clone() * (eps.clone() + v)
        };
        let tails: Vec<Rat> = {
            let one_minus_q = Rat::one() - &self.q;
            (0..=(need + 2))
                .map(|i| self.q.pow(i as i32) / &one_minus_q)
                .collect()
        };
        let half_eps = eps.clone() / Rat::int(2);

        // Anchor at virtual (t_0 + eps/2, eps/2, ..., eps/2).
        let dir0 = free[0];
        let anchor = Point::new(
            region
                .axes
                .iter()
                .enumerate()
                .map(|(i, a)| match a {
                    Axis::Fixed(c) => c.clone(),
                    Axis::Free(_) => {
                        if i == dir0 {
                            virt(i, tails[0].clone() + &half_eps)
                        } else {
                            virt(i, half_eps.clone())
                        }
                    }
                })
                .collect(),
        );
        if !region.contains(&anchor) {
            return Err(FindError::Internal("anchor left the region".into()));
        }
        let colour = self.query(&anchor)?;
        if !allowed.contains(&colour) {
            return Err(FindError::Internal(format!(
                "colour {colour} outside the allowed set at depth {depth}"
            )));
        }
        self.transcript.events.push(Event::Anchor { depth, colour });

        // Walk the slices I_i; a full walk is the chain.
        let mut chain = vec![anchor];
        let mut failed_slice = None;
        for i in 1..need {
            let fixed: Vec<(usize, Rat)> = region
                .axes
                .iter()
                .enumerate()
                .filter_map(|(ax, a)| match a {
                    Axis::Fixed(c) => Some((ax, c.clone())),
                    Axis::Free(_) => (ax == dir0)
                        .then(|| (ax, virt(ax, tails[i].clone() + &half_eps))),
                })
                .collect();
            let free_ivs: Vec<(usize, Rat, Rat)> = free
                .iter()
                .filter(|&&ax| ax != dir0)
                .map(|&ax| {
                    (
                        ax,
                        virt(ax, half_eps.clone()),
                        virt(ax, tails[i + 1].clone() + &half_eps),
                    )
                })
                .collect();
            match self.scan(&fixed, &free_ivs, colour)? {
                Some(p) => {
                    self.transcript.events.push(Event::SliceHit { depth, index: i });
                    chain.push(p);
                }
                None => {
                    self.transcript.events.push(Event::SliceMiss {
                        depth,
                        index: i,
                        missing: colour,
                    });
                    failed_slice = Some(i);
                    break;
                }
            }
        }

        let Some(i) = failed_slice else {
            self.transcript.events.push(Event::Return {
                depth,
                points: chain.len(),
                colour,
                direction: dir0,
            });
            return Ok(Chain {
                points: chain,
                colour,
                direction: dir0,
            });
        };

        // Ladder seed inside the failed slice: index i+2, missing `colour`.
        let mut rung = i + 2;
        let seed_region = Region {
            axes: region
                .axes
                .iter()
                .enumerate()
                .map(|(ax, a)| match a {
                    Axis::Fixed(c) => Axis::Fixed(c.clone()),
                    Axis::Free(_) => {
                        if ax == dir0 {
                            Axis::Fixed(virt(ax, tails[i].clone() + &half_eps))
                        } else {
                            Axis::Free(virt(ax, half_eps.clone()))
                        }
                    }
                })
                .collect(),
            side: (Rat::one() + Rat::int(2) * eps) * scale.clone() * self.q.pow(rung as i32),
        };
        let mut allowed_sub: BTreeSet<u32> = allowed.iter().copied().collect();
        allowed_sub.remove(&colour);
        let sub_need = need.saturating_sub(rung).max(1);
        let mut sub = self.find_chain(&seed_region, &(scale.clone() * self.q.pow(rung as i32)), eps, &allowed_sub, sub_need, depth + 1)?;

        // Climb: each rung adds one chain point or descends one index.
        while rung >= 2 {
            let step = scale.clone() * self.q.pow((rung - 1) as i32);
            let head = sub.points[0].clone();
            let rung_plane = head.coord(sub.direction).clone() + &step;
            let rung_axes: Vec<Axis> = region
                .axes
                .iter()
                .enumerate()
                .map(|(ax, a)| match a {
                    Axis::Fixed(c) => Axis::Fixed(c.clone()),
                    Axis::Free(_) => {
                        if ax == sub.direction {
                            Axis::Fixed(rung_plane.clone())
                        } else {
                            Axis::Free(head.coord(ax).clone() - &step)
                        }
                    }
                })
                .collect();
            let rung_region = Region {
                axes: rung_axes,
                side: Rat::int(2) * &step,
            };
            let fixed: Vec<(usize, Rat)> = rung_region
                .axes
                .iter()
                .enumerate()
                .filter_map(|(ax, a)| match a {
                    Axis::Fixed(c) => Some((ax, c.clone())),
                    Axis::Free(_) => None,
                })
                .collect();
            let free_ivs: Vec<(usize, Rat, Rat)> = rung_region
                .axes
                .iter()
                .enumerate()
                .filter_map(|(ax, a)| match a {
                    Axis::Free(lo) => {
                        Some((ax, lo.clone(), lo.clone() + &rung_region.side))
                    }
                    Axis::Fixed(_) => None,
                })
                .collect();
            match self.scan(&fixed, &free_ivs, sub.colour)? {
                Some(p) => {
                    self.transcript.events.push(Event::ClimbHit {
                        depth,
                        index: rung - 1,
                    });
                    sub.points.insert(0, p);
                    rung -= 1;
                }
                None => {
                    // The rung misses the chain colour: it is the smaller
                    // missing-colour cube; descend.
                    self.transcript.events.push(Event::Descend {
                        depth,
                        index: rung - 1,
                        missing: sub.colour,
                    });
                    let mut allowed_desc: BTreeSet<u32> = allowed.iter().copied().collect();
                    allowed_desc.remove(&sub.colour);
                    rung -= 1;
                    let sub_scale = scale.clone() * self.q.pow(rung as i32);
                    let sub_side = (Rat::one() + Rat::int(2) * eps) * &sub_scale;
                    let sub_region = Region {
                        axes: rung_region.axes.clone(),
                        side: sub_side,
                    };
                    let sub_need = need.saturating_sub(rung).max(1);
                    sub = self.find_chain(
                        &sub_region,
                        &sub_scale,
                        eps,
                        &allowed_desc,
                        sub_need,
                        depth + 1,
                    )?;
                }
            }
        }

        // Final rung: one full-scale step from the chain head.
        let head = sub.points[0].clone();
        let plane = head.coord(sub.direction).clone() + scale;
        let fixed: Vec<(usize, Rat)> = region
            .axes
            .iter()
            .enumerate()
            .filter_map(|(ax, a)| match a {
                Axis::Fixed(c) => Some((ax, c.clone())),
                Axis::Free(_) => (ax == sub.direction).then(|| (ax, plane.clone())),
            })
            .collect();
        let free_ivs: Vec<(usize, Rat, Rat)> = free
            .iter()
            .filter(|&&ax| ax != sub.direction)
            .map(|&ax| {
                (
                    ax,
                    region.lo(ax).clone(),
                    region.lo(ax).clone() + (Rat::one() + eps) * scale.clone(),
                )
            })
            .collect();
        match self.scan(&fixed, &free_ivs, sub.colour)? {
            Some(p) => {
                self.transcript.events.push(Event::FinalRungHit { depth });
                sub.points.insert(0, p);
                self.transcript.events.push(Event::Return {
                    depth,
                    points: sub.points.len(),
                    colour: sub.colour,
                    direction: sub.direction,
                });
                Ok(sub)
            }
            None => {
                // The final rung misses the chain colour entirely: solve the
                // whole problem inside it, one dimension and one colour down,
                // with halved slack.
                self.transcript.events.push(Event::FinalRungMiss {
                    depth,
                    missing: sub.colour,
                });
                let mut allowed_last: BTreeSet<u32> = allowed.iter().copied().collect();
                allowed_last.remove(&sub.colour);
                let axes: Vec<Axis> = region
                    .axes
                    .iter()
                    .enumerate()
                    .map(|(ax, a)| match a {
                        Axis::Fixed(c) => Axis::Fixed(c.clone()),
                        Axis::Free(lo) => {
                            if ax == sub.direction {
                                Axis::Fixed(plane.clone())
                            } else {
                                Axis::Free(lo.clone())
                            }
                        }
                    })
                    .collect();
                let last_region = Region {
                    axes,
                    side: (Rat::one() + eps) * scale.clone(),
                };
                let half = eps.clone() / Rat::int(2);
                let chain = self.find_chain(
                    &last_region,
                    scale,
                    &half,
                    &allowed_last,
                    need,
                    depth + 1,
                )?;
                self.transcript.events.push(Event::Return {
                    depth,
                    points: chain.points.len(),
                    colour: chain.colour,
                    direction: chain.direction,
                });
                Ok(chain)
            }
        }
    }
}

/// Run the finder against an oracle. The outcome is re-verified before
/// return: distances re-derived from coordinates, every point re-queried.
pub fn thminf1_find(oracle: &GridOracle, cfg: &FindConfig) -> Result<FindOutcome, FindError> {
    if cfg.prefix_len == 0 {
        return Err(FindError::PrefixTooShort);
    }
    if !cfg.q.is_positive() || cfg.q >= Rat::one() {
        return Err(FindError::QOutOfRange);
    }
    if cfg.epsilon != *oracle.epsilon() || cfg.n != oracle.n() {
        return Err(FindError::EpsilonMismatch {
            config: cfg.epsilon.clone(),
            oracle: oracle.epsilon().clone(),
        });
    }
    let bound = cfg.epsilon.clone() / Rat::int(2).pow(cfg.n as i32 + 1);
    if cfg.q > bound {
        return Err(FindError::QTooLarge {
            q: cfg.q.clone(),
            bound,
        });
    }
    if oracle.colour_count() as usize > cfg.n {
        return Err(FindError::OracleTooManyColours {
            declared: oracle.colour_count(),
            allowed: cfg.n,
        });
    }

    let region = Region {
        axes: (0..cfg.n).map(|_| Axis::Free(-cfg.epsilon.clone())).collect(),
        side: Rat::one() + Rat::int(2) * &cfg.epsilon,
    };
    let allowed: BTreeSet<u32> = (0..oracle.colour_count()).collect();
    let mut finder = Finder {
        oracle,
        q: cfg.q.clone(),
        budget: cfg.query_budget,
        transcript: Transcript::default(),
    };
    let chain = finder.find_chain(
        &region,
        &Rat::one(),
        &cfg.epsilon,
        &allowed,
        cfg.prefix_len + 1,
        0,
    )?;

    let points: Vec<Point> = chain.points[..=cfg.prefix_len].to_vec();
    // Independent re-verification.
    let outcome = detect_proper_copy(&points, &cfg.q)
        .map_err(|e| FindError::Internal(format!("proper-copy check failed: {e}")))?;
    let direction = match outcome {
        ProperCopyOutcome::Proper { direction } => direction,
        ProperCopyOutcome::NotProper { reason } => {
            return Err(FindError::Internal(format!("chain is not proper: {reason}")))
        }
    };
    for p in &points {
        if finder.query(p)? != chain.colour {
            return Err(FindError::Internal("chain is not monochromatic".into()));
        }
    }

    Ok(FindOutcome {
        points,
        colour: chain.colour,
        direction,
        transcript: finder.transcript,
    })
}

/// Stripes, a checkerboard, and seeded random box oracles.
pub fn standard_oracle_suite(
    n: usize,
    epsilon: &Rat,
    colours: u32,
    count: usize,
    seed: u64,
) -> Vec<GridOracle> {
    let mut suite = Vec::with_capacity(count);
    if count >= 1 {
        suite.push(
            GridOracle::stripes(n, epsilon.clone(), colours, 0, Rat::new(1, 4))
                .expect("valid stripe oracle"),
        );
    }
    if count >= 2 {
        suite.push(
            GridOracle::checkerboard(n, epsilon.clone(), colours, Rat::new(1, 4))
                .expect("valid checkerboard oracle"),
        );
    }
    for i in suite.len()..count {
        suite.push(
            GridOracle::random_boxes(n, epsilon.clone(), colours, 6, seed.wrapping_add(i as u64))
                .expect("valid random oracle"),
        );
    }
    suite
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleRun {
    pub oracle_index: usize,
    pub found: bool,
    pub queries: u64,
    pub points: usize,
    pub colour: Option<u32>,
    pub direction: Option<usize>,
}

/// Established statements about these chromatic numbers, carried as data so
/// reports never imply the search proved them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KnownStatements {
    /// For every dimension there is a positive threshold below which the
    /// chromatic number equals n+1 exactly.
    pub chi_equals_n_plus_one_below_threshold: bool,
    /// A single small ratio already forces growth of order log base 3 of n.
    pub chi_exceeds_log3_n_for_single_small_q: bool,
    /// Ratios below this value give sets whose chromatic number grows
    /// without bound.
    pub ramsey_for_q_below: Rat,
    /// Equality n+1 for every dimension at once is conjectural.
    pub exact_n_plus_one_for_all_n_is_conjecture: bool,
}

impl Default for KnownStatements {
    fn default() -> Self {
        KnownStatements {
            chi_equals_n_plus_one_below_threshold: true,
            chi_exceeds_log3_n_for_single_small_q: true,
            ramsey_for_q_below: Rat::new(1, 32),
            exact_n_plus_one_for_all_n_is_conjecture: true,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeoReport {
    pub n: usize,
    pub epsilon: Rat,
    pub q: Rat,
    pub prefix_len: usize,
    pub runs: Vec<OracleRun>,
    pub all_found: bool,
    /// What the runs show: every tested n-colour grid oracle admitted a
    /// monochromatic proper prefix. Instance evidence, never a proof.
    pub evidence_scope: String,
    pub known: KnownStatements,
}

/// Run the finder across an oracle suite and collect instance evidence.
pub fn geo_chi_lower_report(
    cfg: &FindConfig,
    suite: &[GridOracle],
) -> Result<GeoReport, FindError> {
    let mut runs = Vec::with_capacity(suite.len());
    for (i, oracle) in suite.iter().enumerate() {
        match thminf1_find(oracle, cfg) {
            Ok(out) => runs.push(OracleRun {
                oracle_index: i,
                found: true,
                queries: out.transcript.queries,
                points: out.points.len(),
                colour: Some(out.colour),
                direction: Some(out.direction),
            }),
            Err(FindError::BudgetExceeded { queries, .. }) => runs.push(OracleRun {
                oracle_index: i,
                found: false,
                queries,
                points: 0,
                colour: None,
                direction: None,
            }),
            Err(e) => return Err(e),
        }
    }
    let all_found = runs.iter().all(|r| r.found);
    Ok(GeoReport {
        n: cfg.n,
        epsilon: cfg.epsilon.clone(),
        q: cfg.q.clone(),
        prefix_len: cfg.prefix_len,
        runs,
        all_found,
        evidence_scope: "grid-piecewise-constant oracles on the cube; per-instance transcripts"
            .into(),
        known: KnownStatements::default(),
    })
}
