//! Backtracking enumeration of distance-preserving injections between finite
//! point sets, checked against exact pairwise distances.

use crate::baton::Point;
use crate::geometry::linf_distance;
use crate::rat::Rat;

/// Dense symmetric distance matrix.
#[derive(Clone)]
pub struct DistMatrix {
    n: usize,
    d: Vec<Rat>,
}

impl DistMatrix {
    pub fn from_points(points: &[Point]) -> Self {
        let n = points.len();
        let mut d = vec![Rat::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let dist = linf_distance(&points[i], &points[j]).expect("equal dimensions");
                d[i * n + j] = dist.clone();
                d[j * n + i] = dist;
            }
        }
        DistMatrix { n, d }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        let mut d = vec![Rat::zero(); n * n];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "square matrix");
            for (j, v) in row.iter().enumerate() {
                d[i * n + j] = v.clone();
            }
        }
        DistMatrix { n, d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.d[i * self.n + j]
    }
}

/// Calls `on_found` for every injection `target -> domain` preserving all
/// pairwise distances, in lexicographic order of the image tuple. Return
/// `false` from the callback to stop early. Returns the number of embeddings
/// visited.
pub fn for_each_embedding<F>(target: &DistMatrix, domain: &DistMatrix, mut on_found: F) -> u64
where
    F: FnMut(&[u32]) -> bool,
{
    let t = target.len();
    if t == 0 {
        return 0;
    }
    let mut image: Vec<u32> = Vec::with_capacity(t);
    let mut used = vec![false; domain.len()];
    let mut count = 0u64;
    let mut stop = false;
    extend(
        target,
        domain,
        &mut image,
        &mut used,
        &mut count,
        &mut stop,
        &mut on_found,
    );
    count
}

fn extend<F>(
    target: &DistMatrix,
    domain: &DistMatrix,
    image: &mut Vec<u32>,
    used: &mut [bool],
    count: &mut u64,
    stop: &mut bool,
    on_found: &mut F,
) where
    F: FnMut(&[u32]) -> bool,
{
    if *stop {
        return;
    }
    let pos = image.len();
    if pos == target.len() {
        *count += 1;
        if !on_found(image) {
            *stop = true;
        }
        return;
    }
    'cands: for c in 0..domain.len() {
        if used[c] {
            continue;
        }
        for (prev, &img) in image.iter().enumerate() {
            if domain.get(img as usize, c) != target.get(prev, pos) {
                continue 'cands;
            }
        }
        used[c] = true;
        image.push(c as u32);
        extend(target, domain, image, used, count, stop, on_found);
        image.pop();
        used[c] = false;
        if *stop {
            return;
        }
    }
}

/// Distinct unordered images of `target` inside `domain`, each as a sorted
/// index set.
pub fn unordered_copies(target: &DistMatrix, domain: &DistMatrix) -> Vec<Vec<u32>> {
    let mut seen = std::collections::BTreeSet::new();
    for_each_embedding(target, domain, |image| {
        let mut key = image.to_vec();
        key.sort_unstable();
        seen.insert(key);
        true
    });
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(coords: &[&[i64]]) -> Vec<Point> {
        coords.iter().map(|c| Point::ints(c)).collect()
    }

    #[test]
    fn segment_into_line() {
        // Target: two points at distance 2. Domain: {0,1,2,3} on a line.
        let target = DistMatrix::from_points(&pts(&[&[0], &[2]]));
        let domain = DistMatrix::from_points(&pts(&[&[0], &[1], &[2], &[3]]));
        let mut images = Vec::new();
        for_each_embedding(&target, &domain, |im| {
            images.push(im.to_vec());
            true
        });
        assert_eq!(images, vec![vec![0, 2], vec![1, 3], vec![2, 0], vec![3, 1]]);
        assert_eq!(unordered_copies(&target, &domain).len(), 2);
    }

    #[test]
    fn unit_square_has_no_copy_in_line() {
        // Four points pairwise at distance 1 cannot sit on a line.
        let rows = vec![
            vec![Rat::zero(), Rat::one(), Rat::one(), Rat::one()],
            vec![Rat::one(), Rat::zero(), Rat::one(), Rat::one()],
            vec![Rat::one(), Rat::one(), Rat::zero(), Rat::one()],
            vec![Rat::one(), Rat::one(), Rat::one(), Rat::zero()],
        ];
        let target = DistMatrix::from_rows(rows);
        let domain = DistMatrix::from_points(&pts(&[&[0], &[1], &[2], &[3], &[4]]));
        assert_eq!(for_each_embedding(&target, &domain, |_| true), 0);
    }

    #[test]
    fn early_stop() {
        let target = DistMatrix::from_points(&pts(&[&[0], &[1]]));
        let domain = DistMatrix::from_points(&pts(&[&[0], &[1], &[2]]));
        let mut hits = 0;
        for_each_embedding(&target, &domain, |_| {
            hits += 1;
            false
        });
        assert_eq!(hits, 1);
    }
}
