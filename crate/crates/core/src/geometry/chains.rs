//! Chain decomposition of rational point sets under the partial order
//! `x <= y iff |y - x|_inf = y_n - x_n`, with an antichain witnessing
//! optimality of the chain count.

use crate::baton::Point;
use crate::geometry::{linf_distance, GeometryError};

#[derive(Clone, Debug)]
pub struct ChainDecomposition {
    /// Partition of input indices into chains, each sorted along the order.
    pub chains: Vec<Vec<usize>>,
    /// Antichain of the same size as the number of chains.
    pub antichain: Vec<usize>,
}

/// Strict comparability; equal points are ordered by index so duplicates sit
/// on one chain.
fn precedes(points: &[Point], i: usize, j: usize) -> Result<bool, GeometryError> {
    if points[i] == points[j] {
        return Ok(i < j);
    }
    let n = points[i].dim();
    let last = points[j].coord(n - 1) - points[i].coord(n - 1);
    Ok(linf_distance(&points[i], &points[j])? == last)
}

pub fn chain_decompose(points: &[Point]) -> Result<ChainDecomposition, GeometryError> {
    let n = points.len();
    if n == 0 {
        return Ok(ChainDecomposition {
            chains: vec![],
            antichain: vec![],
        });
    }
    if points.iter().any(|p| p.dim() != points[0].dim()) {
        return Err(GeometryError::DimensionMismatch);
    }

    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && precedes(points, i, j)? {
                adj[i].push(j);
            }
        }
    }

    // Kuhn's augmenting paths on the comparability bipartite graph.
    let mut pair_right: Vec<Option<usize>> = vec![None; n];
    let mut pair_left: Vec<Option<usize>> = vec![None; n];
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        pair_right: &mut [Option<usize>],
        pair_left: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if pair_right[v].is_none()
                || augment(pair_right[v].unwrap(), adj, pair_right, pair_left, seen)
            {
                pair_right[v] = Some(u);
                pair_left[u] = Some(v);
                return true;
            }
        }
        false
    }
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(u, &adj, &mut pair_right, &mut pair_left, &mut seen);
    }

    // Chains follow matched successor edges.
    let mut chains = Vec::new();
    let mut on_chain = vec![false; n];
    for start in 0..n {
        if pair_right[start].is_some() || on_chain[start] {
            continue;
        }
        let mut chain = vec![start];
        on_chain[start] = true;
        let mut cur = start;
        while let Some(next) = pair_left[cur] {
            chain.push(next);
            on_chain[next] = true;
            cur = next;
        }
        chains.push(chain);
    }
    debug_assert!(on_chain.iter().all(|&b| b));

    // Koenig: alternating reachability from unmatched left vertices; the
    // antichain is { v : v reachable on the left, not reachable on the right }.
    let mut z_left = vec![false; n];
    let mut z_right = vec![false; n];
    let mut queue: Vec<usize> = (0..n).filter(|&u| pair_left[u].is_none()).collect();
    for &u in &queue {
        z_left[u] = true;
    }
    while let Some(u) = queue.pop() {
        for &v in &adj[u] {
            if !z_right[v] {
                z_right[v] = true;
                if let Some(w) = pair_right[v] {
                    if !z_left[w] {
                        z_left[w] = true;
                        queue.push(w);
                    }
                }
            }
        }
    }
    let antichain: Vec<usize> = (0..n).filter(|&v| z_left[v] && !z_right[v]).collect();

    debug_assert_eq!(antichain.len(), chains.len());
    Ok(ChainDecomposition { chains, antichain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn pt(coords: &[i64]) -> Point {
        Point::ints(coords)
    }

    fn check(points: &[Point], expect_chains: usize) {
        let d = chain_decompose(points).unwrap();
        assert_eq!(d.chains.len(), expect_chains);
        assert_eq!(d.antichain.len(), expect_chains);
        // Every chain totally ordered.
        for chain in &d.chains {
            for w in chain.windows(2) {
                assert!(precedes(points, w[0], w[1]).unwrap());
            }
        }
        // Antichain pairwise incomparable.
        for (a, &i) in d.antichain.iter().enumerate() {
            for &j in &d.antichain[a + 1..] {
                assert!(!precedes(points, i, j).unwrap());
                assert!(!precedes(points, j, i).unwrap());
            }
        }
        // Partition check.
        let mut all: Vec<usize> = d.chains.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..points.len()).collect::<Vec<_>>());
    }

    #[test]
    fn vertical_line_is_one_chain() {
        let points: Vec<Point> = (0..4).map(|i| pt(&[2, 5, i])).collect();
        check(&points, 1);
    }

    #[test]
    fn mutually_incomparable_points_need_three_chains() {
        // Pairwise distance realized off the last axis.
        let points = vec![pt(&[0, 0]), pt(&[5, 1]), pt(&[10, 2])];
        check(&points, 3);
    }

    #[test]
    fn grid_three_by_three_has_width_three() {
        let points: Vec<Point> = crate::geometry::box_points(&[3, 3])
            .iter()
            .map(|p| Point::ints(p))
            .collect();
        check(&points, 3);
    }

    #[test]
    fn rational_coordinates() {
        let points = vec![
            Point::new(vec![Rat::new(1, 2), Rat::zero()]),
            Point::new(vec![Rat::new(1, 2), Rat::one()]),
            Point::new(vec![Rat::new(7, 2), Rat::new(1, 3)]),
        ];
        check(&points, 2);
    }
}
