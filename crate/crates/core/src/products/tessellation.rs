//! Tessellatable base sets for products of arithmetic progressions, and the
//! independence bound they certify.
//!
//! Three constructions: all-integer common differences tile an explicit
//! interval in full; formally independent differences tile their Minkowski
//! sum in full; the general mix maps through the lattice embedding, tiles the
//! lattice by a coordinate functional, and keeps enough of a growing box to
//! reach any requested coverage fraction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::density::{group_embedding, FormalValue};
use crate::products::{binomial, ProductsError};
use crate::rat::Rat;

/// Partition of `covered` (a subset of `base_set`) into translates of an
/// arithmetic-progression tile, with declared slack: `|covered| >=
/// (1 - epsilon) |base_set|`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tessellation {
    pub base_set: Vec<FormalValue>,
    /// Tile points `0, lambda, ..., k*lambda`.
    pub tile: Vec<FormalValue>,
    pub offsets: Vec<FormalValue>,
    pub covered: Vec<FormalValue>,
    pub epsilon: Rat,
}

impl Tessellation {
    /// Re-check disjointness, coverage and the slack bound from scratch.
    pub fn verify(&self) -> Result<(), ProductsError> {
        let base: BTreeSet<&FormalValue> = self.base_set.iter().collect();
        let covered: BTreeSet<&FormalValue> = self.covered.iter().collect();
        if self.tile.is_empty() {
            return Err(ProductsError::TessellationInvalid("empty tile".into()));
        }
        if !covered.iter().all(|c| base.contains(*c)) {
            return Err(ProductsError::TessellationInvalid(
                "covered set leaves the base set".into(),
            ));
        }
        let mut seen: BTreeSet<FormalValue> = BTreeSet::new();
        for off in &self.offsets {
            for p in &self.tile {
                let q = off.add(p);
                if !seen.insert(q.clone()) {
                    return Err(ProductsError::TessellationInvalid(format!(
                        "tiles overlap at {q}"
                    )));
                }
            }
        }
        let union: BTreeSet<&FormalValue> = seen.iter().collect();
        if union.len() != covered.len() || !seen.iter().all(|q| covered.contains(q)) {
            return Err(ProductsError::TessellationInvalid(
                "tile union differs from the covered set".into(),
            ));
        }
        // |covered| >= (1 - eps) |base|, exactly.
        let lhs = Rat::int(self.covered.len() as i64);
        let rhs = (Rat::one() - &self.epsilon) * Rat::int(self.base_set.len() as i64);
        if lhs < rhs {
            return Err(ProductsError::TessellationInvalid(format!(
                "coverage {}/{} below 1 - {}",
                self.covered.len(),
                self.base_set.len(),
                self.epsilon
            )));
        }
        Ok(())
    }

    /// The tile's common difference, if the tile is an arithmetic
    /// progression.
    pub fn tile_gap(&self) -> Option<FormalValue> {
        if self.tile.len() < 2 {
            return None;
        }
        let gap = self.tile[1].sub(&self.tile[0]);
        self.tile
            .windows(2)
            .all(|w| w[1].sub(&w[0]) == gap)
            .then_some(gap)
    }
}

/// A base set that is epsilon-almost tessellatable by `B_k(lambda_i)` for
/// every i, with the explicit verified tessellations.
pub fn tessellatable_set(
    k: u32,
    lambdas: &[FormalValue],
    epsilon: &Rat,
) -> Result<(Vec<FormalValue>, Vec<Tessellation>), ProductsError> {
    if k == 0 || lambdas.is_empty() {
        return Err(ProductsError::ZeroParameter);
    }
    if epsilon.is_negative() || *epsilon >= Rat::one() {
        return Err(ProductsError::InvalidEpsilon);
    }

    let outcome = if let Some(ints) = all_positive_integers(lambdas) {
        integer_path(k, &ints)
    } else if disjoint_supports(lambdas) {
        minkowski_path(k, lambdas)
    } else if epsilon.is_zero() {
        return Err(ProductsError::InvalidEpsilon);
    } else {
        lattice_path(k, lambdas, epsilon)?
    };

    for t in &outcome.1 {
        t.verify()?;
    }
    Ok(outcome)
}

fn all_positive_integers(lambdas: &[FormalValue]) -> Option<Vec<u64>> {
    lambdas
        .iter()
        .map(|l| {
            let r = l.as_rational()?;
            (r.is_positive() && r.is_integer())
                .then(|| u64::try_from(r.as_integer().unwrap()).ok())
                .flatten()
        })
        .collect()
}

fn disjoint_supports(lambdas: &[FormalValue]) -> bool {
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for l in lambdas {
        if l.is_zero() {
            return false;
        }
        for s in l.symbols() {
            if !seen.insert(s) {
                return false;
            }
        }
    }
    true
}

/// `X = {1 .. (k+1) lcm(lambdas)}`, tiled in blocks of `(k+1) lambda`.
fn integer_path(k: u32, lambdas: &[u64]) -> (Vec<FormalValue>, Vec<Tessellation>) {
    let lcm = lambdas
        .iter()
        .fold(1u64, |acc, &l| num_integer::lcm(acc, l));
    let n = (k as u64 + 1) * lcm;
    let x: Vec<FormalValue> = (1..=n)
        .map(|v| FormalValue::rational(Rat::int(v as i64)))
        .collect();

    let tessellations = lambdas
        .iter()
        .map(|&lambda| {
            let tile: Vec<FormalValue> = (0..=k as u64)
                .map(|j| FormalValue::rational(Rat::int((j * lambda) as i64)))
                .collect();
            let block = (k as u64 + 1) * lambda;
            let mut offsets = Vec::new();
            for j in 0..n / block {
                for c in 1..=lambda {
                    offsets.push(FormalValue::rational(Rat::int((c + j * block) as i64)));
                }
            }
            Tessellation {
                base_set: x.clone(),
                tile,
                offsets,
                covered: x.clone(),
                epsilon: Rat::zero(),
            }
        })
        .collect();
    (x, tessellations)
}

/// Minkowski sum of the progressions; each factor tiles it in full.
fn minkowski_path(k: u32, lambdas: &[FormalValue]) -> (Vec<FormalValue>, Vec<Tessellation>) {
    let m = lambdas.len();
    let mut sums = vec![FormalValue::zero()];
    for l in lambdas {
        let mut next = Vec::with_capacity(sums.len() * (k as usize + 1));
        for s in &sums {
            for j in 0..=k as i64 {
                next.push(s.add(&l.scale(&Rat::int(j))));
            }
        }
        sums = next;
    }
    let x: Vec<FormalValue> = {
        let set: BTreeSet<FormalValue> = sums.into_iter().collect();
        set.into_iter().collect()
    };

    let tessellations = (0..m)
        .map(|i| {
            let tile: Vec<FormalValue> = (0..=k as i64)
                .map(|j| lambdas[i].scale(&Rat::int(j)))
                .collect();
            let mut offsets = vec![FormalValue::zero()];
            for (i2, l) in lambdas.iter().enumerate() {
                if i2 == i {
                    continue;
                }
                let mut next = Vec::with_capacity(offsets.len() * (k as usize + 1));
                for s in &offsets {
                    for j in 0..=k as i64 {
                        next.push(s.add(&l.scale(&Rat::int(j))));
                    }
                }
                offsets = next;
            }
            Tessellation {
                base_set: x.clone(),
                tile,
                offsets,
                covered: x.clone(),
                epsilon: Rat::zero(),
            }
        })
        .collect();
    (x, tessellations)
}

const LATTICE_POINT_GUARD: u64 = 1_000_000;

/// Map through the lattice embedding, tile `Z^t` by a coordinate functional
/// per factor, and keep the tiles inside a growing box until every factor
/// covers a `(1 - eps)` fraction.
fn lattice_path(
    k: u32,
    lambdas: &[FormalValue],
    epsilon: &Rat,
) -> Result<(Vec<FormalValue>, Vec<Tessellation>), ProductsError> {
    let emb = group_embedding(lambdas)?;
    let t = emb.rank;
    let gens: Vec<Vec<i64>> = emb
        .images
        .iter()
        .map(|img| {
            img.iter()
                .map(|b| i64::try_from(&b.0).expect("generator images fit i64"))
                .collect()
        })
        .collect();

    // One tiling functional per factor: the first axis with a nonzero entry.
    let functionals: Vec<(usize, i64)> = gens
        .iter()
        .map(|g| {
            let axis = g.iter().position(|&c| c != 0).expect("nonzero generator");
            (axis, g[axis])
        })
        .collect();

    for r in 1u64.. {
        let point_count = r.checked_pow(t as u32);
        if point_count.is_none_or(|p| p > LATTICE_POINT_GUARD) {
            return Err(ProductsError::EnumerationTooLarge {
                points: point_count.unwrap_or(u64::MAX),
            });
        }
        let box_pts = crate::geometry::box_points(&vec![r as u32; t]);
        let total = box_pts.len() as i64;
        let inside = |p: &[i64]| p.iter().all(|&c| c >= 0 && c < r as i64);

        let mut all_heads: Vec<Vec<Vec<i64>>> = Vec::with_capacity(lambdas.len());
        let mut ok = true;
        for (i, g) in gens.iter().enumerate() {
            let (axis, coeff) = functionals[i];
            let d = coeff.unsigned_abs() as i64;
            let sign = coeff.signum();
            let block = (k as i64 + 1) * d;
            let heads: Vec<Vec<i64>> = box_pts
                .iter()
                .filter(|p| {
                    (sign * p[axis]).rem_euclid(block) < d
                        && (1..=k as i64).all(|j| {
                            let q: Vec<i64> =
                                p.iter().zip(g).map(|(a, b)| a + j * b).collect();
                            inside(&q)
                        })
                })
                .cloned()
                .collect();
            let covered = heads.len() as i64 * (k as i64 + 1);
            if Rat::int(covered) < (Rat::one() - epsilon) * Rat::int(total) {
                ok = false;
                break;
            }
            all_heads.push(heads);
        }
        if !ok {
            continue;
        }

        let x: Vec<FormalValue> = box_pts
            .iter()
            .map(|p| emb.invert(&to_bigints(p)))
            .collect();
        let tessellations = lambdas
            .iter()
            .enumerate()
            .map(|(i, lambda)| {
                let tile: Vec<FormalValue> = (0..=k as i64)
                    .map(|j| lambda.scale(&Rat::int(j)))
                    .collect();
                let offsets: Vec<FormalValue> = all_heads[i]
                    .iter()
                    .map(|p| emb.invert(&to_bigints(p)))
                    .collect();
                let covered: Vec<FormalValue> = {
                    let mut set = BTreeSet::new();
                    for off in &offsets {
                        for tp in &tile {
                            set.insert(off.add(tp));
                        }
                    }
                    set.into_iter().collect()
                };
                Tessellation {
                    base_set: x.clone(),
                    tile,
                    offsets,
                    covered,
                    epsilon: epsilon.clone(),
                }
            })
            .collect();
        return Ok((x, tessellations));
    }
    unreachable!("loop returns or errors")
}

fn to_bigints(p: &[i64]) -> Vec<BigInt> {
    p.iter().map(|&c| BigInt::from(c)).collect()
}

/// Independence bound for `X^n` against the product of `B_k(lambda_i)`:
/// `(|X|/(k+1))^n * sum_{i<m} C(n,i) (k+eps)^{n-i}`, after re-verifying every
/// tessellation against `X`.
pub fn product_alpha_bound(
    x: &[FormalValue],
    k: u32,
    lambdas: &[FormalValue],
    n: u32,
    tessellations: &[Tessellation],
) -> Result<Rat, ProductsError> {
    if k == 0 || n == 0 || lambdas.is_empty() || lambdas.len() != tessellations.len() {
        return Err(ProductsError::ZeroParameter);
    }
    let x_set: BTreeSet<&FormalValue> = x.iter().collect();
    let rational_lambdas: Option<Vec<Rat>> =
        lambdas.iter().map(FormalValue::as_rational).collect();
    if let Some(ls) = rational_lambdas {
        if ls.windows(2).any(|w| w[0] > w[1]) {
            return Err(ProductsError::TessellationInvalid(
                "lambdas must be sorted ascending".into(),
            ));
        }
    }

    let mut eps = Rat::zero();
    for (tess, lambda) in tessellations.iter().zip(lambdas) {
        tess.verify()?;
        if tess.base_set.len() != x_set.len()
            || !tess.base_set.iter().all(|v| x_set.contains(v))
        {
            return Err(ProductsError::TessellationInvalid(
                "tessellation base differs from X".into(),
            ));
        }
        let gap = tess.tile_gap().ok_or_else(|| {
            ProductsError::TessellationInvalid("tile is not an arithmetic progression".into())
        })?;
        if gap != *lambda || tess.tile.len() != k as usize + 1 {
            return Err(ProductsError::TessellationInvalid(
                "tile does not match B_k(lambda)".into(),
            ));
        }
        eps = eps.max(tess.epsilon.clone());
    }

    let m = lambdas.len() as u32;
    let scale = (Rat::int(x.len() as i64) / Rat::int(k as i64 + 1)).pow(n as i32);
    let mut sum = Rat::zero();
    let k_eps = Rat::int(k as i64) + &eps;
    for i in 0..m.min(n + 1) {
        let c = Rat::from_bigint(binomial(n as u64, i as u64).into());
        sum = sum + c * k_eps.pow((n - i) as i32);
    }
    Ok(scale * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> FormalValue {
        FormalValue::rational(Rat::int(v))
    }

    #[test]
    fn interval_twelve_for_gaps_two_three() {
        let (x, tess) = tessellatable_set(1, &[rat(2), rat(3)], &Rat::zero()).unwrap();
        assert_eq!(x.len(), 12);
        assert_eq!(tess.len(), 2);
        for t in &tess {
            assert_eq!(t.epsilon, Rat::zero());
            assert_eq!(t.covered.len(), 12);
            t.verify().unwrap();
        }
        assert_eq!(tess[0].offsets.len(), 6);
        assert_eq!(tess[1].offsets.len(), 6);
    }

    #[test]
    fn unit_progression_three_points() {
        let (x, tess) = tessellatable_set(2, &[rat(1)], &Rat::zero()).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(tess[0].offsets.len(), 1);
    }

    #[test]
    fn minkowski_sum_for_independent_gaps() {
        let gaps = vec![rat(1), FormalValue::symbol("r2")];
        let (x, tess) = tessellatable_set(1, &gaps, &Rat::zero()).unwrap();
        assert_eq!(x.len(), 4);
        for t in &tess {
            assert_eq!(t.covered.len(), 4);
            t.verify().unwrap();
        }
    }

    #[test]
    fn general_path_meets_epsilon() {
        // 2 and 1+r share no full tessellation path here: lattice route.
        let gaps = vec![
            rat(2),
            FormalValue::from_coeffs(
                [
                    ("1".to_owned(), Rat::int(1)),
                    ("r".to_owned(), Rat::int(1)),
                ]
                .into(),
            ),
        ];
        let eps = Rat::new(1, 2);
        let (x, tess) = tessellatable_set(1, &gaps, &eps).unwrap();
        assert_eq!(tess.len(), 2);
        for t in &tess {
            t.verify().unwrap();
            assert!(
                Rat::int(t.covered.len() as i64)
                    >= (Rat::one() - &eps) * Rat::int(x.len() as i64)
            );
        }
    }

    #[test]
    fn zero_epsilon_outside_fast_paths_rejected() {
        let gaps = vec![
            rat(2),
            FormalValue::from_coeffs(
                [
                    ("1".to_owned(), Rat::int(1)),
                    ("r".to_owned(), Rat::int(1)),
                ]
                .into(),
            ),
        ];
        assert!(matches!(
            tessellatable_set(1, &gaps, &Rat::zero()),
            Err(ProductsError::InvalidEpsilon)
        ));
    }

    #[test]
    fn bound_for_interval_twelve() {
        let lambdas = vec![rat(2), rat(3)];
        let (x, tess) = tessellatable_set(1, &lambdas, &Rat::zero()).unwrap();
        let bound = product_alpha_bound(&x, 1, &lambdas, 2, &tess).unwrap();
        // (12/2)^2 * (C(2,0) + C(2,1)) = 36 * 3.
        assert_eq!(bound, Rat::int(108));
    }

    #[test]
    fn single_factor_bound_collapses() {
        let lambdas = vec![rat(1)];
        let (x, tess) = tessellatable_set(2, &lambdas, &Rat::zero()).unwrap();
        let bound = product_alpha_bound(&x, 2, &lambdas, 3, &tess).unwrap();
        // (3/3)^3 * 2^3.
        assert_eq!(bound, Rat::int(8));
    }

    #[test]
    fn full_epsilon_degenerates_to_cardinality_scale() {
        // eps = 1 tessellation (cover nothing) is syntactically expressible;
        // the bound becomes (|X|/(k+1))^n (k+1)^n = |X|^n for m = 1.
        let lambdas = vec![rat(1)];
        let (x, mut tess) = tessellatable_set(1, &lambdas, &Rat::zero()).unwrap();
        tess[0].covered.clear();
        tess[0].offsets.clear();
        tess[0].epsilon = Rat::one();
        let bound = product_alpha_bound(&x, 1, &lambdas, 2, &tess).unwrap();
        assert_eq!(bound, Rat::int((x.len() * x.len()) as i64));
    }

    #[test]
    fn tampered_tessellation_rejected() {
        let lambdas = vec![rat(2), rat(3)];
        let (x, mut tess) = tessellatable_set(1, &lambdas, &Rat::zero()).unwrap();
        let dup = tess[0].offsets[0].clone();
        tess[0].offsets.push(dup);
        assert!(matches!(
            product_alpha_bound(&x, 1, &lambdas, 2, &tess),
            Err(ProductsError::TessellationInvalid(_))
        ));
    }
}
