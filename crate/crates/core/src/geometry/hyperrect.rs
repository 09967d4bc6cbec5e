//! Non-embeddability certificates for hyperrectangle vertex sets: the 2^n
//! vertices contain no 3-point baton yet exceed the 2^d capacity of any
//! baton-free set in a d-dimensional max-norm space, so no isometric embedding
//! into dimension d < n exists. An optional exhaustive search over a declared
//! finite grid refutes embeddings computationally as well.

use serde::{Deserialize, Serialize};

use crate::baton::Point;
use crate::geometry::{linf_distance, GeometryError};
use crate::rat::Rat;
use crate::search::{for_each_embedding, DistMatrix};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    pub resolution: Rat,
    pub lo: Rat,
    pub hi: Rat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridRefutation {
    pub resolution: Rat,
    pub lo: Rat,
    pub hi: Rat,
    pub grid_points: u64,
    pub embeddings_found: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NotEmbeddableCertificate {
    pub vertex_count: u64,
    pub target_dimension: usize,
    /// Capacity bound: a set with no 3-point batons in dimension d has at
    /// most 2^d points.
    pub capacity: u64,
    pub triples_checked: u64,
    pub three_point_baton_free: bool,
    pub grid_refutation: Option<GridRefutation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum EmbedSearchOutcome {
    Embeddable { images: Vec<Point> },
    NotEmbeddable(NotEmbeddableCertificate),
}

const MAX_SIDES: usize = 8;
const MAX_GRID_POINTS: u64 = 500_000;

/// Vertices of the axis-parallel box with the given side lengths.
pub fn box_vertices(sides: &[Rat]) -> Vec<Point> {
    let mut out = vec![vec![]];
    for s in sides {
        let mut next = Vec::with_capacity(out.len() * 2);
        for v in &out {
            let mut a = v.clone();
            a.push(Rat::zero());
            next.push(a);
            let mut b = v.clone();
            b.push(s.clone());
            next.push(b);
        }
        out = next;
    }
    out.into_iter().map(Point::new).collect()
}

pub fn hyperrectangle_embed_search(
    sides: &[Rat],
    target_dim: usize,
    grid: Option<GridSpec>,
) -> Result<EmbedSearchOutcome, GeometryError> {
    if sides.is_empty() || sides.iter().any(|s| !s.is_positive()) {
        return Err(GeometryError::EmptyInput);
    }
    if sides.len() > MAX_SIDES {
        return Err(GeometryError::BoxTooLarge {
            points: 1u64 << sides.len(),
            ceiling: 1u64 << MAX_SIDES,
        });
    }
    let n = sides.len();
    let vertices = box_vertices(sides);

    if target_dim >= n {
        let images = vertices
            .iter()
            .map(|v| {
                let mut coords = v.coords().to_vec();
                coords.resize(target_dim, Rat::zero());
                Point::new(coords)
            })
            .collect();
        return Ok(EmbedSearchOutcome::Embeddable { images });
    }

    // Structural certificate: no triple of vertices is additive.
    let m = vertices.len();
    let mut triples = 0u64;
    let mut free = true;
    'outer: for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                triples += 1;
                if triple_is_linear(&vertices[a], &vertices[b], &vertices[c])? {
                    free = false;
                    break 'outer;
                }
            }
        }
    }

    let grid_refutation = match grid {
        None => None,
        Some(spec) => {
            let (refutation, images) = run_grid_refutation(&vertices, sides, target_dim, spec)?;
            if let Some(images) = images {
                // Would contradict the capacity bound; report what was found.
                return Ok(EmbedSearchOutcome::Embeddable { images });
            }
            Some(refutation)
        }
    };

    Ok(EmbedSearchOutcome::NotEmbeddable(NotEmbeddableCertificate {
        vertex_count: m as u64,
        target_dimension: target_dim,
        capacity: 1u64 << target_dim,
        triples_checked: triples,
        three_point_baton_free: free,
        grid_refutation,
    }))
}

fn triple_is_linear(a: &Point, b: &Point, c: &Point) -> Result<bool, GeometryError> {
    let ab = linf_distance(a, b)?;
    let bc = linf_distance(b, c)?;
    let ac = linf_distance(a, c)?;
    Ok(ac == ab.clone() + &bc || ab == ac.clone() + &bc || bc == ab + &ac)
}

fn run_grid_refutation(
    vertices: &[Point],
    sides: &[Rat],
    target_dim: usize,
    spec: GridSpec,
) -> Result<(GridRefutation, Option<Vec<Point>>), GeometryError> {
    if !spec.resolution.is_positive() || spec.hi <= spec.lo {
        return Err(GeometryError::EmptyInput);
    }
    // Every pairwise distance is a side length; all must land on the grid.
    for s in sides {
        if !(s / &spec.resolution).is_integer() {
            return Err(GeometryError::ResolutionTooCoarse);
        }
    }
    let steps_big = ((spec.hi.clone() - &spec.lo) / &spec.resolution).floor_int();
    let steps = u64::try_from(steps_big).map_err(|_| GeometryError::EmptyInput)?;
    let axis_values: Vec<Rat> = (0..=steps)
        .map(|i| spec.lo.clone() + Rat::from_bigint(i.into()) * &spec.resolution)
        .collect();
    let total = (axis_values.len() as u64)
        .checked_pow(target_dim as u32)
        .unwrap_or(u64::MAX);
    if total > MAX_GRID_POINTS {
        return Err(GeometryError::BoxTooLarge {
            points: total,
            ceiling: MAX_GRID_POINTS,
        });
    }

    let mut grid_pts = vec![vec![]];
    for _ in 0..target_dim {
        let mut next = Vec::with_capacity(grid_pts.len() * axis_values.len());
        for p in &grid_pts {
            for v in &axis_values {
                let mut q: Vec<Rat> = p.clone();
                q.push(v.clone());
                next.push(q);
            }
        }
        grid_pts = next;
    }
    let domain_points: Vec<Point> = grid_pts.into_iter().map(Point::new).collect();
    let domain = DistMatrix::from_points(&domain_points);
    let target = DistMatrix::from_points(vertices);

    let mut found = 0u64;
    let mut images = None;
    for_each_embedding(&target, &domain, |image| {
        found += 1;
        images = Some(
            image
                .iter()
                .map(|&i| domain_points[i as usize].clone())
                .collect::<Vec<_>>(),
        );
        false
    });

    Ok((
        GridRefutation {
            resolution: spec.resolution,
            lo: spec.lo,
            hi: spec.hi,
            grid_points: total,
            embeddings_found: found,
        },
        images,
    ))
}
