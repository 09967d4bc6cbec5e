//! Rank >= 2 independence numbers: every translate (and reflection translate)
//! of the pattern that fits the box, or wraps the torus, becomes one
//! hyperedge; branch and bound does the rest.

use std::collections::BTreeSet;

use super::{CountOutcome, DensityError, Pattern, DEFAULT_LATTICE_CEILING};
use crate::geometry::{box_points, Domain, GridSet};
use crate::search;

fn point_index(p: &[i64], m: u32, t: usize) -> u32 {
    let mut idx = 0u64;
    for j in 0..t {
        idx = idx * m as u64 + p[j] as u64;
    }
    idx as u32
}

fn guard_size(m: u32, t: usize) -> Result<u64, DensityError> {
    let points = (m as u64)
        .checked_pow(t as u32)
        .unwrap_or(u64::MAX);
    if points > DEFAULT_LATTICE_CEILING {
        return Err(DensityError::LatticeTooLarge {
            points,
            ceiling: DEFAULT_LATTICE_CEILING,
        });
    }
    Ok(points)
}

pub fn alpha_box(m: u32, s: &Pattern, budget: u64) -> Result<CountOutcome, DensityError> {
    let t = s.rank();
    guard_size(m, t)?;
    let sides = vec![m; t];
    let mut edges: BTreeSet<Vec<u32>> = BTreeSet::new();
    for shape in [s.clone(), s.reflect()] {
        // Anchor ranges keeping the whole translate inside the box.
        let ranges: Vec<i64> = shape.diameter().iter().map(|&d| m as i64 - d).collect();
        if ranges.iter().any(|&r| r <= 0) {
            continue;
        }
        let mut anchor = vec![0i64; t];
        loop {
            let edge: Vec<u32> = shape
                .points()
                .map(|p| {
                    let q: Vec<i64> = p.iter().zip(&anchor).map(|(a, b)| a + b).collect();
                    point_index(&q, m, t)
                })
                .collect();
            edges.insert(sorted(edge));
            if !advance(&mut anchor, &ranges) {
                break;
            }
        }
    }
    solve(m, t, Domain::Box(sides), edges, budget)
}

pub fn beta_torus(m: u32, s: &Pattern, budget: u64) -> Result<CountOutcome, DensityError> {
    let t = s.rank();
    guard_size(m, t)?;
    let moduli = vec![m; t];
    let mut edges: BTreeSet<Vec<u32>> = BTreeSet::new();
    for shape in [s.clone(), s.reflect()] {
        let ranges: Vec<i64> = vec![m as i64; t];
        let mut anchor = vec![0i64; t];
        loop {
            // Residue image of the translate; collisions just shrink the edge.
            let edge: Vec<u32> = shape
                .points()
                .map(|p| {
                    let q: Vec<i64> = p
                        .iter()
                        .zip(&anchor)
                        .map(|(a, b)| (a + b).rem_euclid(m as i64))
                        .collect();
                    point_index(&q, m, t)
                })
                .collect();
            edges.insert(sorted(edge));
            if !advance(&mut anchor, &ranges) {
                break;
            }
        }
    }
    solve(m, t, Domain::Torus(moduli), edges, budget)
}

fn sorted(mut edge: Vec<u32>) -> Vec<u32> {
    edge.sort_unstable();
    edge.dedup();
    edge
}

fn advance(anchor: &mut [i64], ranges: &[i64]) -> bool {
    for j in (0..anchor.len()).rev() {
        anchor[j] += 1;
        if anchor[j] < ranges[j] {
            return true;
        }
        anchor[j] = 0;
    }
    false
}

fn solve(
    m: u32,
    t: usize,
    domain: Domain,
    edges: BTreeSet<Vec<u32>>,
    budget: u64,
) -> Result<CountOutcome, DensityError> {
    let pts = box_points(&vec![m; t]);
    let mis = search::max_free_subset(pts.len(), edges.into_iter().collect(), budget);
    let members: Vec<Vec<i64>> = mis
        .witness
        .iter()
        .map(|&v| pts[v as usize].clone())
        .collect();
    Ok(CountOutcome {
        size: mis.size,
        witness: GridSet::new(domain, members)?,
        optimal: mis.optimal,
        upper_bound: mis.upper_bound,
        nodes: mis.nodes,
    })
}
