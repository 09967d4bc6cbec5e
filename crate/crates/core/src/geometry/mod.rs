//! Max-norm geometry: distances, grid sets, detection and enumeration of
//! isometric baton copies, maximum baton-free subsets, chain decompositions
//! and hyperrectangle embedding certificates.

mod chains;
mod hyperrect;

pub use chains::{chain_decompose, ChainDecomposition};
pub use hyperrect::{
    hyperrectangle_embed_search, EmbedSearchOutcome, GridRefutation, GridSpec,
    NotEmbeddableCertificate,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::baton::{Baton, Point};
use crate::rat::Rat;
use crate::search;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("points have mismatched dimensions")]
    DimensionMismatch,
    #[error("expected {expected} points, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("baton has non-integer points on an integer domain; scale it first")]
    ScaleError,
    #[error("member {0:?} lies outside the declared domain")]
    MemberOutsideDomain(Vec<i64>),
    #[error("domain of {points} points exceeds the brute-force ceiling {ceiling}")]
    BoxTooLarge { points: u64, ceiling: u64 },
    #[error("grid resolution cannot represent the pairwise distances")]
    ResolutionTooCoarse,
    #[error("empty input")]
    EmptyInput,
}

/// Exact max-norm distance.
pub fn linf_distance(p: &Point, q: &Point) -> Result<Rat, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch);
    }
    let mut best = Rat::zero();
    for (a, b) in p.coords().iter().zip(q.coords()) {
        let d = (a - b).abs();
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Integer lattice domain: a box with given side lengths (coordinates
/// `0..side` per axis) or a torus with given moduli.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Box(Vec<u32>),
    Torus(Vec<u32>),
}

impl Domain {
    pub fn dimension(&self) -> usize {
        match self {
            Domain::Box(s) | Domain::Torus(s) => s.len(),
        }
    }

    pub fn sides(&self) -> &[u32] {
        match self {
            Domain::Box(s) | Domain::Torus(s) => s,
        }
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.dimension()
            && p.iter()
                .zip(self.sides())
                .all(|(&x, &s)| x >= 0 && x < s as i64)
    }

    pub fn point_count(&self) -> u64 {
        self.sides().iter().map(|&s| s as u64).product()
    }
}

/// Finite set of integer points inside a declared domain.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "GridSetRepr", into = "GridSetRepr")]
pub struct GridSet {
    domain: Domain,
    members: BTreeSet<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Clone)]
struct GridSetRepr {
    domain: Domain,
    members: Vec<Vec<i64>>,
}

impl TryFrom<GridSetRepr> for GridSet {
    type Error = GeometryError;
    fn try_from(repr: GridSetRepr) -> Result<Self, Self::Error> {
        GridSet::new(repr.domain, repr.members)
    }
}

impl From<GridSet> for GridSetRepr {
    fn from(g: GridSet) -> Self {
        GridSetRepr {
            domain: g.domain,
            members: g.members.into_iter().collect(),
        }
    }
}

impl GridSet {
    pub fn new(
        domain: Domain,
        members: impl IntoIterator<Item = Vec<i64>>,
    ) -> Result<Self, GeometryError> {
        let mut set = BTreeSet::new();
        for m in members {
            if !domain.contains(&m) {
                return Err(GeometryError::MemberOutsideDomain(m));
            }
            set.insert(m);
        }
        Ok(GridSet {
            domain,
            members: set,
        })
    }

    /// Every lattice point of a box domain.
    pub fn full_box(sides: Vec<u32>) -> Self {
        let members = box_points(&sides);
        GridSet {
            domain: Domain::Box(sides),
            members: members.into_iter().collect(),
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn dimension(&self) -> usize {
        self.domain.dimension()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.members.contains(p)
    }

    pub fn members(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.members.iter()
    }

    pub fn member_vec(&self) -> Vec<Vec<i64>> {
        self.members.iter().cloned().collect()
    }

    pub fn points(&self) -> Vec<Point> {
        self.members.iter().map(|m| Point::ints(m)).collect()
    }
}

/// All lattice points of the box `0..sides[0] x ... x 0..sides[n-1]`, in
/// lexicographic order.
pub fn box_points(sides: &[u32]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &s in sides {
        let mut next = Vec::with_capacity(out.len() * s as usize);
        for p in &out {
            for x in 0..s as i64 {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Witnessed isometric baton copy: the stated axis carries a translation
/// (+1) or reflection (-1) of the baton, and every step is dominated by the
/// corresponding gap on every axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyCertificate {
    pub points: Vec<Point>,
    /// 0-based coordinate axis realizing every consecutive distance.
    pub witness_axis: usize,
    /// +1 for a translation of the baton along the witness axis, -1 for a
    /// reflection.
    pub orientation: i8,
}

impl CopyCertificate {
    /// Re-derive both conditions from the raw coordinates.
    pub fn verify(&self, baton: &Baton) -> Result<(), String> {
        let k = baton.k();
        if self.points.len() != k + 1 {
            return Err(format!(
                "certificate has {} points for a {}-gap baton",
                self.points.len(),
                k
            ));
        }
        if self.orientation != 1 && self.orientation != -1 {
            return Err(format!("orientation must be +1 or -1: {}", self.orientation));
        }
        let n = self.points[0].dim();
        if self.witness_axis >= n {
            return Err("witness axis out of range".into());
        }
        for r in 1..=k {
            let gap = &baton.gaps()[r - 1];
            let prev = &self.points[r - 1];
            let cur = &self.points[r];
            if prev.dim() != n || cur.dim() != n {
                return Err("mixed dimensions".into());
            }
            let step = cur.coord(self.witness_axis) - prev.coord(self.witness_axis);
            let want = if self.orientation == 1 {
                gap.clone()
            } else {
                -gap
            };
            if step != want {
                return Err(format!("witness axis breaks at step {r}"));
            }
            for j in 0..n {
                if (cur.coord(j) - prev.coord(j)).abs() > *gap {
                    return Err(format!("axis {j} exceeds gap at step {r}"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotACopyReason {
    /// No axis carries a translation or reflection of the baton.
    NoWitnessAxis,
    /// Some step exceeds its gap on the named axis.
    StepExceedsGap { axis: usize, step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CopyOutcome {
    Copy(CopyCertificate),
    NotACopy(NotACopyReason),
}

impl CopyOutcome {
    pub fn is_copy(&self) -> bool {
        matches!(self, CopyOutcome::Copy(_))
    }

    pub fn certificate(self) -> Option<CopyCertificate> {
        match self {
            CopyOutcome::Copy(c) => Some(c),
            CopyOutcome::NotACopy(_) => None,
        }
    }
}

/// Decide whether the ordered sequence is an isometric copy of the baton, by
/// the two witness-axis conditions. Lowest witness axis wins ties, translation
/// before reflection.
pub fn check_baton_copy(points: &[Point], baton: &Baton) -> Result<CopyOutcome, GeometryError> {
    let k = baton.k();
    if points.len() != k + 1 {
        return Err(GeometryError::LengthMismatch {
            expected: k + 1,
            got: points.len(),
        });
    }
    let n = points[0].dim();
    if points.iter().any(|p| p.dim() != n) {
        return Err(GeometryError::DimensionMismatch);
    }

    let mut witness = None;
    'axes: for axis in 0..n {
        for sign in [1i8, -1] {
            let ok = (1..=k).all(|r| {
                let gap = &baton.gaps()[r - 1];
                let want = if sign == 1 { gap.clone() } else { -gap };
                points[r].coord(axis) - points[r - 1].coord(axis) == want
            });
            if ok {
                witness = Some((axis, sign));
                break 'axes;
            }
        }
    }
    let Some((axis, sign)) = witness else {
        return Ok(CopyOutcome::NotACopy(NotACopyReason::NoWitnessAxis));
    };

    for r in 1..=k {
        let gap = &baton.gaps()[r - 1];
        for j in 0..n {
            if (points[r].coord(j) - points[r - 1].coord(j)).abs() > *gap {
                return Ok(CopyOutcome::NotACopy(NotACopyReason::StepExceedsGap {
                    axis: j,
                    step: r,
                }));
            }
        }
    }

    Ok(CopyOutcome::Copy(CopyCertificate {
        points: points.to_vec(),
        witness_axis: axis,
        orientation: sign,
    }))
}

/// Direct definition of isometry: every pairwise distance equals the
/// corresponding difference of baton points. Independent of
/// [`check_baton_copy`]; the two must always agree.
pub fn all_pairs_isometric(points: &[Point], baton: &Baton) -> Result<bool, GeometryError> {
    let k = baton.k();
    if points.len() != k + 1 {
        return Err(GeometryError::LengthMismatch {
            expected: k + 1,
            got: points.len(),
        });
    }
    for l in 0..=k {
        for r in (l + 1)..=k {
            let want = baton.points()[r].clone() - &baton.points()[l];
            if linf_distance(&points[l], &points[r])? != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Complete list of ordered isometric baton copies inside the set, in
/// lexicographic order of the point tuple. Empty exactly when the set is
/// baton-free. Torus members are lifted to the integers over one period plus
/// the baton diameter; the first point of each copy stays in the base period.
pub fn enumerate_baton_copies(
    set: &GridSet,
    baton: &Baton,
) -> Result<Vec<CopyCertificate>, GeometryError> {
    let gaps = baton.integer_gaps().ok_or(GeometryError::ScaleError)?;
    let n = set.dimension();
    let anchors: Vec<Vec<i64>> = set.member_vec();

    let candidates: Vec<Vec<i64>> = match set.domain() {
        Domain::Box(_) => anchors.clone(),
        Domain::Torus(moduli) => {
            let diam: i64 = gaps.iter().sum();
            let mut lifted = BTreeSet::new();
            for m in set.members() {
                lift_rec(m, moduli, diam, 0, &mut vec![], &mut lifted);
            }
            lifted.into_iter().collect()
        }
    };

    let per_anchor = crate::exec::map_indexed(anchors.len(), |ai| {
        let mut found = Vec::new();
        let mut seq = vec![anchors[ai].clone()];
        // Candidate (axis, sign) pairs as a bitmask: bit 2a is +, 2a+1 is -.
        let alive: u64 = (1u64 << (2 * n)) - 1;
        extend_copy(&candidates, &gaps, &mut seq, alive, &mut found);
        found
    });

    let mut out = Vec::new();
    for group in per_anchor {
        for (seq, alive) in group {
            let bit = alive.trailing_zeros() as usize;
            out.push(CopyCertificate {
                points: seq.iter().map(|p| Point::ints(p)).collect(),
                witness_axis: bit / 2,
                orientation: if bit % 2 == 0 { 1 } else { -1 },
            });
        }
    }
    Ok(out)
}

fn lift_rec(
    member: &[i64],
    moduli: &[u32],
    diam: i64,
    axis: usize,
    acc: &mut Vec<i64>,
    out: &mut BTreeSet<Vec<i64>>,
) {
    if axis == member.len() {
        out.insert(acc.clone());
        return;
    }
    let m = moduli[axis] as i64;
    let c = member[axis];
    let mut shift = -((diam + c) / m + 1);
    while c + shift * m < -diam {
        shift += 1;
    }
    while c + shift * m <= m - 1 + diam {
        acc.push(c + shift * m);
        lift_rec(member, moduli, diam, axis + 1, acc, out);
        acc.pop();
        shift += 1;
    }
}

type FoundCopy = (Vec<Vec<i64>>, usize, i8);

fn extend_copy(
    candidates: &[Vec<i64>],
    gaps: &[i64],
    seq: &mut Vec<Vec<i64>>,
    alive: &[(usize, i8)],
    found: &mut Vec<FoundCopy>,
) {
    let r = seq.len() - 1;
    if r == gaps.len() {
        let &(axis, sign) = alive.first().expect("nonempty by construction");
        found.push((seq.clone(), axis, sign));
        return;
    }
    let gap = gaps[r];
    let cur = seq.last().unwrap().clone();
    'cands: for cand in candidates {
        for j in 0..cur.len() {
            if (cand[j] - cur[j]).abs() > gap {
                continue 'cands;
            }
        }
        let next_alive: Vec<(usize, i8)> = alive
            .iter()
            .copied()
            .filter(|&(a, s)| cand[a] - cur[a] == s as i64 * gap)
            .collect();
        if next_alive.is_empty() {
            continue;
        }
        seq.push(cand.clone());
        extend_copy(candidates, gaps, seq, &next_alive, found);
        seq.pop();
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreeSubsetOutcome {
    pub size: u64,
    pub witness: GridSet,
    pub optimal: bool,
    pub upper_bound: u64,
    pub nodes: u64,
}

const BOX_POINT_CEILING: u64 = 64;

/// Exact maximum subset of the box containing no isometric copy of any
/// `(k+1)`-point baton, with attaining witness.
pub fn max_baton_free_subset(
    sides: &[u32],
    k: usize,
    budget: u64,
) -> Result<FreeSubsetOutcome, GeometryError> {
    if sides.is_empty() || k == 0 {
        return Err(GeometryError::EmptyInput);
    }
    let count = sides.iter().map(|&s| s as u64).product::<u64>();
    if count > BOX_POINT_CEILING {
        return Err(GeometryError::BoxTooLarge {
            points: count,
            ceiling: BOX_POINT_CEILING,
        });
    }
    let pts = box_points(sides);
    let dist = |a: usize, b: usize| -> i64 {
        pts[a]
            .iter()
            .zip(&pts[b])
            .map(|(x, y)| (x - y).abs())
            .max()
            .unwrap()
    };

    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut subset = Vec::with_capacity(k + 1);
    collect_linear_subsets(pts.len(), k + 1, 0, &mut subset, &dist, &mut edges);

    let mis = search::max_free_subset(pts.len(), edges, budget);
    let members: Vec<Vec<i64>> = mis.witness.iter().map(|&v| pts[v as usize].clone()).collect();
    Ok(FreeSubsetOutcome {
        size: mis.size,
        witness: GridSet::new(Domain::Box(sides.to_vec()), members)?,
        optimal: mis.optimal,
        upper_bound: mis.upper_bound,
        nodes: mis.nodes,
    })
}

/// Does some ordering of the subset realize all-pairs additive distances,
/// i.e. an isometric copy of a baton with those consecutive gaps?
pub(crate) fn subset_is_linear(subset: &[usize], dist: &dyn Fn(usize, usize) -> i64) -> bool {
    let mut perm: Vec<usize> = Vec::with_capacity(subset.len());
    let mut used = vec![false; subset.len()];
    linear_perm(subset, dist, &mut perm, &mut used)
}

fn linear_perm(
    subset: &[usize],
    dist: &dyn Fn(usize, usize) -> i64,
    perm: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    if perm.len() == subset.len() {
        return true;
    }
    for i in 0..subset.len() {
        if used[i] {
            continue;
        }
        let ok = match perm.len() {
            0 => true,
            1 => dist(perm[0], subset[i]) > 0,
            _ => {
                let prev = *perm.last().unwrap();
                let step = dist(prev, subset[i]);
                step > 0
                    && perm[..perm.len() - 1]
                        .iter()
                        .all(|&l| dist(l, subset[i]) == dist(l, prev) + step)
            }
        };
        if ok {
            used[i] = true;
            perm.push(subset[i]);
            if linear_perm(subset, dist, perm, used) {
                return true;
            }
            perm.pop();
            used[i] = false;
        }
    }
    false
}

fn collect_linear_subsets(
    n: usize,
    size: usize,
    start: usize,
    subset: &mut Vec<usize>,
    dist: &dyn Fn(usize, usize) -> i64,
    edges: &mut Vec<Vec<u32>>,
) {
    if subset.len() == size {
        if subset_is_linear(subset, dist) {
            edges.push(subset.iter().map(|&v| v as u32).collect());
        }
        return;
    }
    for v in start..n {
        subset.push(v);
        collect_linear_subsets(n, size, v + 1, subset, dist, edges);
        subset.pop();
    }
}
