//! Cartesian products of batons under the max metric: the exact independence
//! formula for powers of arithmetic progressions with its brute-force oracle,
//! the degenerate simplex case, the centre-coordinate lemma check, and the
//! tessellation machinery for products of progressions with distinct common
//! differences.

mod tessellation;

pub use tessellation::{product_alpha_bound, tessellatable_set, Tessellation};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::baton::{Baton, Point};
use crate::geometry::{box_points, GridSet};
use crate::rat::Rat;
use crate::search::{self, DistMatrix};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ProductsError {
    #[error("k = 1 is degenerate; use the min(2^n, 2^m - 1) formula")]
    KTooSmall,
    #[error("parameters must be at least 1 (and m <= n where applicable)")]
    ZeroParameter,
    #[error("product needs at least one factor")]
    EmptyFactors,
    #[error("base set of {0} points exceeds the exhaustive ceiling")]
    XTooLarge(usize),
    #[error("domain of {points} points exceeds the brute-force ceiling {ceiling}")]
    DomainTooLarge { points: u64, ceiling: u64 },
    #[error("enumeration of {points} grid points is too large")]
    EnumerationTooLarge { points: u64 },
    #[error("t must satisfy 1/4 < t/k < 3/4; got t={t}, k={k}")]
    InvalidT { t: u32, k: u32 },
    #[error("epsilon must lie in (0,1) unless a full tessellation path applies")]
    InvalidEpsilon,
    #[error("tessellation invalid: {0}")]
    TessellationInvalid(String),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error(transparent)]
    Embedding(#[from] crate::density::EmbeddingError),
}

/// Product of batons with the max metric over factor distances. Its point
/// set is the Cartesian product of the factor point sets, one coordinate per
/// factor, so the ambient max-norm distance is exactly the product metric.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ProductRepr", into = "ProductRepr")]
pub struct ProductSpace {
    factors: Vec<Baton>,
}

#[derive(Serialize, Deserialize, Clone)]
struct ProductRepr {
    factors: Vec<Baton>,
}

impl TryFrom<ProductRepr> for ProductSpace {
    type Error = ProductsError;
    fn try_from(r: ProductRepr) -> Result<Self, Self::Error> {
        ProductSpace::new(r.factors)
    }
}

impl From<ProductSpace> for ProductRepr {
    fn from(p: ProductSpace) -> Self {
        ProductRepr { factors: p.factors }
    }
}

impl ProductSpace {
    pub fn new(factors: Vec<Baton>) -> Result<Self, ProductsError> {
        if factors.is_empty() {
            return Err(ProductsError::EmptyFactors);
        }
        Ok(ProductSpace { factors })
    }

    pub fn single(baton: Baton) -> Self {
        ProductSpace {
            factors: vec![baton],
        }
    }

    /// `baton^m`.
    pub fn power(baton: Baton, m: usize) -> Result<Self, ProductsError> {
        if m == 0 {
            return Err(ProductsError::EmptyFactors);
        }
        Ok(ProductSpace {
            factors: vec![baton; m],
        })
    }

    pub fn factors(&self) -> &[Baton] {
        &self.factors
    }

    pub fn is_integer(&self) -> bool {
        self.factors.iter().all(Baton::is_integer)
    }

    pub fn point_count(&self) -> u64 {
        self.factors.iter().map(|b| b.k() as u64 + 1).product()
    }

    pub fn diameter(&self) -> Rat {
        self.factors
            .iter()
            .map(|b| b.diameter().clone())
            .max()
            .expect("nonempty")
    }

    /// All points of the product, one coordinate per factor.
    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![vec![]];
        for b in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (b.k() + 1));
            for p in &out {
                for c in b.points() {
                    let mut q: Vec<Rat> = p.clone();
                    q.push(c.clone());
                    next.push(q);
                }
            }
            out = next;
        }
        out.into_iter().map(Point::new).collect()
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let mut acc = BigUint::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact maximum size of a subset of `[k]_0^n` with no isometric copy of the
/// m-th power of the k-step unit progression: the closed-form sum
/// `sum_{i<m} C(n,i) k^{n-i}`.
pub fn bkm_alpha_formula(k: u32, m: u32, n: u32) -> Result<BigUint, ProductsError> {
    if m == 0 || n == 0 || k == 0 {
        return Err(ProductsError::ZeroParameter);
    }
    if k < 2 {
        return Err(ProductsError::KTooSmall);
    }
    let mut sum = BigUint::ZERO;
    for i in 0..m.min(n + 1) {
        sum += binomial(n as u64, i as u64) * BigUint::from(k as u64).pow(n - i);
    }
    Ok(sum)
}

/// Degenerate simplex case: `min(2^n, 2^m - 1)`.
pub fn bkm_alpha_degenerate(m: u32, n: u32) -> Result<BigUint, ProductsError> {
    if m == 0 || n == 0 {
        return Err(ProductsError::ZeroParameter);
    }
    let full = BigUint::from(2u32).pow(n);
    let cap = BigUint::from(2u32).pow(m) - BigUint::one();
    Ok(full.min(cap))
}

/// The extremal set: points with fewer than `m` coordinates equal to
/// `floor(k/2)`. Size matches the closed form; freeness is a consequence of
/// the centre-coordinate lemma and is re-checked by tests via the oracle.
pub fn bkm_witness(k: u32, m: u32, n: u32) -> Result<GridSet, ProductsError> {
    if m == 0 || n == 0 {
        return Err(ProductsError::ZeroParameter);
    }
    if k < 2 {
        return Err(ProductsError::KTooSmall);
    }
    let t = (k / 2) as i64;
    let sides = vec![k + 1; n as usize];
    let members: Vec<Vec<i64>> = box_points(&sides)
        .into_iter()
        .filter(|p| (p.iter().filter(|&&x| x == t).count() as u32) < m)
        .collect();
    Ok(GridSet::new(crate::geometry::Domain::Box(sides), members)?)
}

/// Domain for the brute-force oracle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum BruteDomain {
    Product(ProductSpace),
    Grid(GridSet),
}

impl BruteDomain {
    pub fn points(&self) -> Vec<Point> {
        match self {
            BruteDomain::Product(p) => p.points(),
            BruteDomain::Grid(g) => g.points(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BruteAlphaOutcome {
    pub size: u64,
    pub witness: Vec<Point>,
    pub copies: u64,
    pub optimal: bool,
    pub upper_bound: u64,
    pub nodes: u64,
}

const BRUTE_POINT_CEILING: u64 = 64;

/// Exact maximum forbidden-copy-free subset of the domain, by exhaustive
/// isometry search for the copies followed by branch and bound. Fully
/// independent of the closed-form results it is used to check.
pub fn brute_alpha(
    domain: &BruteDomain,
    forbidden: &ProductSpace,
    budget: u64,
) -> Result<BruteAlphaOutcome, ProductsError> {
    let pts = domain.points();
    if pts.len() as u64 > BRUTE_POINT_CEILING {
        return Err(ProductsError::DomainTooLarge {
            points: pts.len() as u64,
            ceiling: BRUTE_POINT_CEILING,
        });
    }
    let domain_dist = DistMatrix::from_points(&pts);
    let target_dist = DistMatrix::from_points(&forbidden.points());
    let copies = search::embed::unordered_copies(&target_dist, &domain_dist);
    let copy_count = copies.len() as u64;
    let mis = search::max_free_subset(pts.len(), copies, budget);
    Ok(BruteAlphaOutcome {
        size: mis.size,
        witness: mis
            .witness
            .iter()
            .map(|&v| pts[v as usize].clone())
            .collect(),
        copies: copy_count,
        optimal: mis.optimal,
        upper_bound: mis.upper_bound,
        nodes: mis.nodes,
    })
}

const ALPHA_POWER_CEILING: usize = 25;

/// `alpha(X^n, B) = alpha_tr(X, B)^n`: the one-dimensional independence
/// number raised to the power.
pub fn alpha_power(x: &[Rat], baton: &Baton, n: u32) -> Result<BigUint, ProductsError> {
    if x.is_empty() || n == 0 {
        return Err(ProductsError::ZeroParameter);
    }
    let mut xs: Vec<Rat> = x.to_vec();
    xs.sort();
    xs.dedup();
    if xs.len() > ALPHA_POWER_CEILING {
        return Err(ProductsError::XTooLarge(xs.len()));
    }
    let alpha = alpha_tr_of_set(&xs, baton);
    Ok(BigUint::from(alpha).pow(n))
}

/// Maximum tr-free subset of an arbitrary finite rational set.
pub fn alpha_tr_of_set(xs: &[Rat], baton: &Baton) -> u64 {
    // Integer interval fast path: the layered DP.
    if baton.is_integer() && is_integer_interval(xs) {
        let pattern = crate::density::Pattern::of_integer_baton(baton).expect("integer baton");
        return crate::density::alpha_tr(xs.len() as u32, &pattern, u64::MAX)
            .expect("interval within ceilings")
            .size;
    }
    let index = |v: &Rat| xs.binary_search(v).ok();
    let mut edges: Vec<Vec<u32>> = Vec::new();
    for anchor in xs {
        for refl in [false, true] {
            let placement: Option<Vec<u32>> = baton
                .points()
                .iter()
                .map(|p| {
                    let q = if refl {
                        anchor.clone() - p
                    } else {
                        anchor.clone() + p
                    };
                    index(&q).map(|i| i as u32)
                })
                .collect();
            if let Some(edge) = placement {
                edges.push(edge);
            }
        }
    }
    search::max_free_subset(xs.len(), edges, u64::MAX).size
}

fn is_integer_interval(xs: &[Rat]) -> bool {
    xs.iter().all(Rat::is_integer) && xs.windows(2).all(|w| w[1].clone() - &w[0] == Rat::one())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct K2tReport {
    pub k: u32,
    pub m: u32,
    pub n: u32,
    pub t: u32,
    pub isometries_checked: u64,
    pub violations: u64,
    pub first_violation: Option<Vec<Vec<i64>>>,
}

impl K2tReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

const K2T_CEILING: u64 = 4096;

/// Enumerate every isometry of `[k]_0^m` into `[k]_0^n` and confirm each
/// image has a point with at least `m` coordinates equal to `t`.
pub fn check_k2t(
    k: u32,
    m: u32,
    n: u32,
    t_choice: Option<u32>,
) -> Result<K2tReport, ProductsError> {
    if m == 0 || n == 0 || k == 0 || m > n {
        return Err(ProductsError::ZeroParameter);
    }
    if k < 2 {
        return Err(ProductsError::KTooSmall);
    }
    let domain_count = (k as u64 + 1).checked_pow(n).unwrap_or(u64::MAX);
    if domain_count > K2T_CEILING {
        return Err(ProductsError::EnumerationTooLarge {
            points: domain_count,
        });
    }
    let t = t_choice.unwrap_or(k / 2);
    // The statement fails at the extremes; require 1/4 < t/k < 3/4.
    let ratio = Rat::new(t as i64, k as i64);
    if ratio <= Rat::new(1, 4) || ratio >= Rat::new(3, 4) {
        return Err(ProductsError::InvalidT { t, k });
    }

    let target_pts = box_points(&vec![k + 1; m as usize]);
    let domain_pts = box_points(&vec![k + 1; n as usize]);
    let target: Vec<Point> = target_pts.iter().map(|p| Point::ints(p)).collect();
    let domain: Vec<Point> = domain_pts.iter().map(|p| Point::ints(p)).collect();
    let target_dist = DistMatrix::from_points(&target);
    let domain_dist = DistMatrix::from_points(&domain);

    let mut checked = 0u64;
    let mut violations = 0u64;
    let mut first_violation = None;
    search::for_each_embedding(&target_dist, &domain_dist, |image| {
        checked += 1;
        let ok = image.iter().any(|&i| {
            domain_pts[i as usize]
                .iter()
                .filter(|&&c| c == t as i64)
                .count() as u32
                >= m
        });
        if !ok {
            violations += 1;
            if first_violation.is_none() {
                first_violation = Some(
                    image
                        .iter()
                        .map(|&i| domain_pts[i as usize].clone())
                        .collect(),
                );
            }
        }
        true
    });

    Ok(K2tReport {
        k,
        m,
        n,
        t,
        isometries_checked: checked,
        violations,
        first_violation,
    })
}

#[cfg(test)]
mod tests;
