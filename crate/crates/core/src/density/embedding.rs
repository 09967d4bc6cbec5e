//! Lattice embedding of the group generated by a gap sequence.
//!
//! Gaps are rationals or formal rational combinations of declared basis
//! symbols (assumed independent over the rationals; the declaration is
//! trusted and recorded, never verified). Clearing denominators turns the
//! gaps into integer vectors; a column Hermite form of that matrix yields a
//! basis of the generated lattice, hence an isomorphism onto `Z^t` whose
//! images carry the pattern the density machinery consumes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::baton::Baton;
use crate::density::Pattern;
use crate::rat::Rat;

/// Symbol name of the rational unit.
pub const UNIT: &str = "1";

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("gap list is empty")]
    EmptyGaps,
    #[error("gap {0} is not strictly positive")]
    NonPositiveGap(usize),
    #[error("gap {0} is the zero combination")]
    ZeroGap(usize),
    #[error("embedding was not built from these gaps")]
    EmbeddingMismatch,
    #[error("image does not lie in the generated lattice")]
    OutsideLattice,
}

/// Rational combination of named basis symbols; `{"1": r}` is the plain
/// rational `r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormalValue {
    coeffs: BTreeMap<String, Rat>,
}

impl FormalValue {
    pub fn rational(r: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(UNIT.to_owned(), r);
        }
        FormalValue { coeffs }
    }

    pub fn symbol(name: &str) -> Self {
        Self::scaled_symbol(name, Rat::one())
    }

    pub fn scaled_symbol(name: &str, coeff: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(name.to_owned(), coeff);
        }
        FormalValue { coeffs }
    }

    pub fn from_coeffs(coeffs: BTreeMap<String, Rat>) -> Self {
        FormalValue {
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn zero() -> Self {
        FormalValue {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<String, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, symbol: &str) -> Rat {
        self.coeffs.get(symbol).cloned().unwrap_or_else(Rat::zero)
    }

    /// The rational value, when no other symbol appears.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.is_empty() {
            return Some(Rat::zero());
        }
        if self.coeffs.len() == 1 {
            return self.coeffs.get(UNIT).cloned();
        }
        None
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn add(&self, other: &FormalValue) -> FormalValue {
        let mut coeffs = self.coeffs.clone();
        for (s, c) in &other.coeffs {
            let entry = coeffs.entry(s.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        FormalValue::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &FormalValue) -> FormalValue {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, by: &Rat) -> FormalValue {
        FormalValue::from_coeffs(
            self.coeffs
                .iter()
                .map(|(s, c)| (s.clone(), c * by))
                .collect(),
        )
    }
}

impl std::fmt::Display for FormalValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if s == UNIT {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{s}")?;
            }
        }
        Ok(())
    }
}

/// Isomorphism from the group generated by the gaps onto `Z^t`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupEmbedding {
    pub generators: Vec<FormalValue>,
    pub basis_symbols: Vec<String>,
    pub rank: usize,
    /// Image of each generator in `Z^t`.
    pub images: Vec<Vec<BigIntStr>>,
    /// Columns of the lattice basis, per symbol row, over the common
    /// denominator: enough to map lattice points back to formal values.
    pub lattice_basis: Vec<Vec<BigIntStr>>,
    pub denominator: BigIntStr,
    /// Invariant factors of the image matrix (all 1 exactly when the images
    /// generate `Z^t`).
    pub invariant_factors: Vec<BigIntStr>,
}

/// Big integers on the wire as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntStr(pub BigInt);

impl Serialize for BigIntStr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigIntStr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigInt>()
            .map(BigIntStr)
            .map_err(serde::de::Error::custom)
    }
}

impl GroupEmbedding {
    /// phi of an arbitrary element of the generated group.
    pub fn map_value(&self, v: &FormalValue) -> Result<Vec<BigInt>, EmbeddingError> {
        let d = &self.denominator.0;
        // Integer vector of v over the symbol rows, after clearing d.
        let mut target: Vec<BigInt> = Vec::with_capacity(self.basis_symbols.len());
        for s in &self.basis_symbols {
            let scaled = v.coeff(s) * Rat::from_bigint(d.clone());
            let int = scaled.as_integer().ok_or(EmbeddingError::OutsideLattice)?;
            target.push(int);
        }
        if v.symbols().any(|s| !self.basis_symbols.iter().any(|b| b == s)) {
            return Err(EmbeddingError::OutsideLattice);
        }
        solve_lower_triangular(&self.basis_columns(), &target)
            .ok_or(EmbeddingError::OutsideLattice)
    }

    /// phi^{-1} of a lattice point.
    pub fn invert(&self, z: &[BigInt]) -> FormalValue {
        assert_eq!(z.len(), self.rank);
        let cols = self.basis_columns();
        let d = Rat::from_bigint(self.denominator.0.clone());
        let mut coeffs = BTreeMap::new();
        for (row, symbol) in self.basis_symbols.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (col, zc) in z.iter().enumerate() {
                acc += &cols[col][row] * zc;
            }
            let c = Rat::from_bigint(acc) / &d;
            if !c.is_zero() {
                coeffs.insert(symbol.clone(), c);
            }
        }
        FormalValue::from_coeffs(coeffs)
    }

    fn basis_columns(&self) -> Vec<Vec<BigInt>> {
        self.lattice_basis
            .iter()
            .map(|col| col.iter().map(|x| x.0.clone()).collect())
            .collect()
    }
}

/// Build the isomorphism for a gap list.
pub fn group_embedding(gaps: &[FormalValue]) -> Result<GroupEmbedding, EmbeddingError> {
    if gaps.is_empty() {
        return Err(EmbeddingError::EmptyGaps);
    }
    for (i, g) in gaps.iter().enumerate() {
        if g.is_zero() {
            return Err(EmbeddingError::ZeroGap(i));
        }
        if let Some(r) = g.as_rational() {
            if !r.is_positive() {
                return Err(EmbeddingError::NonPositiveGap(i));
            }
        }
    }

    let symbols: Vec<String> = {
        let mut set = BTreeSet::new();
        for g in gaps {
            for s in g.symbols() {
                set.insert(s.to_owned());
            }
        }
        set.into_iter().collect()
    };

    // Common denominator across all coefficients.
    let mut denom = BigInt::one();
    for g in gaps {
        for (_, c) in g.coeffs() {
            denom = denom.lcm(c.denom());
        }
    }

    // Integer matrix: one row per symbol, one column per gap.
    let cols: Vec<Vec<BigInt>> = gaps
        .iter()
        .map(|g| {
            symbols
                .iter()
                .map(|s| {
                    (g.coeff(s) * Rat::from_bigint(denom.clone()))
                        .as_integer()
                        .expect("denominator cleared")
                })
                .collect()
        })
        .collect();

    let basis = column_hermite_basis(&cols);
    let rank = basis.len();

    let images: Vec<Vec<BigInt>> = cols
        .iter()
        .map(|c| solve_lower_triangular(&basis, c).expect("generators lie in their own lattice"))
        .collect();

    // Images must generate Z^t: all t invariant factors equal 1.
    let image_matrix: Vec<Vec<BigInt>> = images.clone();
    let factors = smith_invariant_factors(rank, &image_matrix);
    assert_eq!(factors.len(), rank);
    assert!(
        factors.iter().all(|f| f.is_one()),
        "lattice basis must make generator images surjective"
    );

    Ok(GroupEmbedding {
        generators: gaps.to_vec(),
        basis_symbols: symbols,
        rank,
        images: images
            .into_iter()
            .map(|v| v.into_iter().map(BigIntStr).collect())
            .collect(),
        lattice_basis: basis
            .into_iter()
            .map(|v| v.into_iter().map(BigIntStr).collect())
            .collect(),
        denominator: BigIntStr(denom),
        invariant_factors: factors.into_iter().map(BigIntStr).collect(),
    })
}

/// Basis of the lattice spanned by the columns, as columns in echelon form
/// (pivot rows strictly increasing).
fn column_hermite_basis(cols: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = cols.first().map_or(0, Vec::len);
    let mut work: Vec<Vec<BigInt>> = cols.to_vec();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut col_start = 0usize;

    for row in 0..rows {
        // Reduce all columns from col_start so at most one has a nonzero in
        // this row, by repeated column gcd steps.
        loop {
            let mut nonzero: Vec<usize> = (col_start..work.len())
                .filter(|&c| !work[c][row].is_zero())
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            // Pick the column with smallest |entry| as the pivot and reduce
            // the others by it.
            nonzero.sort_by_key(|&c| work[c][row].abs());
            let pivot = nonzero[0];
            for &c in &nonzero[1..] {
                let q = div_round(&work[c][row], &work[pivot][row]);
                for r in 0..rows {
                    let sub = &work[pivot][r] * &q;
                    work[c][r] -= sub;
                }
            }
        }
        if let Some(pivot) = (col_start..work.len()).find(|&c| !work[c][row].is_zero()) {
            work.swap(col_start, pivot);
            if work[col_start][row].is_negative() {
                for r in 0..rows {
                    let neg = -work[col_start][r].clone();
                    work[col_start][r] = neg;
                }
            }
            basis.push(work[col_start].clone());
            col_start += 1;
        }
    }
    basis
}

/// Round-to-nearest quotient keeps the Euclid steps shrinking.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let r2 = r.abs() * 2;
    if r2 > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Solve `B y = target` where B's columns are in echelon form.
fn solve_lower_triangular(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = target.len();
    let mut residual = target.to_vec();
    let mut y = Vec::with_capacity(basis.len());
    for col in basis {
        let pivot_row = col.iter().position(|x| !x.is_zero())?;
        let (q, r) = residual[pivot_row].div_rem(&col[pivot_row]);
        if !r.is_zero() {
            return None;
        }
        for row in 0..rows {
            let sub = &col[row] * &q;
            residual[row] -= sub;
        }
        y.push(q);
    }
    residual.iter().all(BigInt::is_zero).then_some(y)
}

/// Invariant factors of the `rank x cols` integer matrix whose columns are
/// the given vectors.
fn smith_invariant_factors(rank: usize, cols: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = (0..rank)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let rows = rank;
    let ncols = cols.len();
    let mut factors = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;

    while top < rows && left < ncols {
        // Find the smallest nonzero entry in the active block.
        let mut pivot: Option<(usize, usize)> = None;
        for r in top..rows {
            for c in left..ncols {
                if m[r][c].is_zero() {
                    continue;
                }
                match &pivot {
                    None => pivot = Some((r, c)),
                    Some((pr, pc)) => {
                        if m[r][c].abs() < m[*pr][*pc].abs() {
                            pivot = Some((r, c));
                        }
                    }
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap(top, pr);
        for row in m.iter_mut() {
            row.swap(left, pc);
        }

        // Clear row and column by Euclid steps; restart if remainders appear.
        let mut clean = true;
        for r in (top + 1)..rows {
            if m[r][left].is_zero() {
                continue;
            }
            let q = div_round(&m[r][left].clone(), &m[top][left].clone());
            for c in left..ncols {
                let sub = &m[top][c] * &q;
                m[r][c] -= sub;
            }
            if !m[r][left].is_zero() {
                clean = false;
            }
        }
        for c in (left + 1)..ncols {
            if m[top][c].is_zero() {
                continue;
            }
            let q = div_round(&m[top][c].clone(), &m[top][left].clone());
            for r in top..rows {
                let sub = &m[r][left] * &q;
                m[r][c] -= sub;
            }
            if !m[top][c].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let mut d = m[top][left].clone();
        if d.is_negative() {
            d = -d;
        }
        factors.push(d);
        top += 1;
        left += 1;
    }

    // Normalize the diagonal into the divisibility chain d1 | d2 | ...
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..factors.len() {
            for j in (i + 1)..factors.len() {
                if !factors[j].is_multiple_of(&factors[i]) {
                    let g = factors[i].gcd(&factors[j]);
                    let l = (&factors[i] * &factors[j]) / &g;
                    factors[i] = g;
                    factors[j] = l;
                    changed = true;
                }
            }
        }
    }
    factors
}

/// Image pattern of the baton whose gaps are the embedding's generators.
pub fn pattern_of_embedding(emb: &GroupEmbedding) -> Pattern {
    let mut acc = FormalValue::zero();
    let mut points = vec![vec![0i64; emb.rank]];
    for g in &emb.generators {
        acc = acc.add(g);
        let img = emb.map_value(&acc).expect("partial sums lie in the lattice");
        points.push(
            img.iter()
                .map(|x| i64::try_from(x).expect("pattern coordinates fit i64"))
                .collect(),
        );
    }
    Pattern::new(points).expect("baton image is a valid pattern")
}

/// Image pattern of a rational baton, checking the embedding matches it.
pub fn pattern_of_baton(baton: &Baton, emb: &GroupEmbedding) -> Result<Pattern, EmbeddingError> {
    let as_formal: Vec<FormalValue> = baton
        .gaps()
        .iter()
        .map(|g| FormalValue::rational(g.clone()))
        .collect();
    if as_formal != emb.generators {
        return Err(EmbeddingError::EmbeddingMismatch);
    }
    Ok(pattern_of_embedding(emb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> FormalValue {
        FormalValue::rational(Rat::int(v))
    }

    #[test]
    fn integer_gaps_with_unit_gcd_are_identity() {
        let emb = group_embedding(&[rat(1), rat(2)]).unwrap();
        assert_eq!(emb.rank, 1);
        assert_eq!(emb.images[0], vec![BigIntStr(BigInt::from(1))]);
        assert_eq!(emb.images[1], vec![BigIntStr(BigInt::from(2))]);
        let p = pattern_of_embedding(&emb);
        assert_eq!(p.line_points().unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn common_factor_is_divided_out() {
        let emb = group_embedding(&[rat(2), rat(4)]).unwrap();
        assert_eq!(emb.rank, 1);
        let b = Baton::from_gaps(vec![Rat::int(2), Rat::int(4)]).unwrap();
        let p = pattern_of_baton(&b, &emb).unwrap();
        assert_eq!(p.line_points().unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn independent_symbol_gives_rank_two() {
        let gaps = vec![rat(1), FormalValue::symbol("e2")];
        let emb = group_embedding(&gaps).unwrap();
        assert_eq!(emb.rank, 2);
        let p = pattern_of_embedding(&emb);
        let pts: Vec<Vec<i64>> = p.points().cloned().collect();
        assert_eq!(pts, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn rational_mixtures_reduce_rank() {
        // 1 and 1/2 generate (1/2)Z: rank 1, images 2 and 1.
        let emb = group_embedding(&[rat(1), FormalValue::rational(Rat::new(1, 2))]).unwrap();
        assert_eq!(emb.rank, 1);
        let img0 = emb.map_value(&rat(1)).unwrap();
        let img1 = emb
            .map_value(&FormalValue::rational(Rat::new(1, 2)))
            .unwrap();
        assert_eq!(img0, vec![BigInt::from(2)]);
        assert_eq!(img1, vec![BigInt::from(1)]);
    }

    #[test]
    fn mismatched_embedding_rejected() {
        let emb = group_embedding(&[rat(1), rat(2)]).unwrap();
        let other = Baton::from_gaps(vec![Rat::int(1), Rat::int(3)]).unwrap();
        assert_eq!(
            pattern_of_baton(&other, &emb).unwrap_err(),
            EmbeddingError::EmbeddingMismatch
        );
    }

    #[test]
    fn invariant_factors_are_units() {
        let gaps = vec![
            FormalValue::from_coeffs(
                [(UNIT.to_owned(), Rat::int(2)), ("s".to_owned(), Rat::int(1))].into(),
            ),
            FormalValue::from_coeffs(
                [(UNIT.to_owned(), Rat::int(1)), ("s".to_owned(), Rat::int(1))].into(),
            ),
            rat(3),
        ];
        let emb = group_embedding(&gaps).unwrap();
        assert_eq!(emb.rank, 2);
        assert!(emb.invariant_factors.iter().all(|f| f.0.is_one()));
    }

    #[test]
    fn map_and_invert_round_trip() {
        let gaps = vec![
            rat(3),
            FormalValue::scaled_symbol("r", Rat::new(2, 3)),
            FormalValue::rational(Rat::new(5, 2)),
        ];
        let emb = group_embedding(&gaps).unwrap();
        let mut acc = FormalValue::zero();
        for g in &gaps {
            acc = acc.add(g);
            let img = emb.map_value(&acc).unwrap();
            assert_eq!(emb.invert(&img), acc);
        }
    }

    #[test]
    fn phi_is_additive_on_differences() {
        let gaps = vec![rat(2), FormalValue::symbol("e2"), rat(4)];
        let emb = group_embedding(&gaps).unwrap();
        let b0 = FormalValue::zero();
        let b1 = b0.add(&gaps[0]);
        let b2 = b1.add(&gaps[1]);
        let b3 = b2.add(&gaps[2]);
        for a in [&b0, &b1, &b2, &b3] {
            for b in [&b0, &b1, &b2, &b3] {
                let diff = a.sub(b);
                let img = emb.map_value(&diff).unwrap();
                let ia = emb.map_value(a).unwrap();
                let ib = emb.map_value(b).unwrap();
                let sub: Vec<BigInt> = ia.iter().zip(&ib).map(|(x, y)| x - y).collect();
                assert_eq!(img, sub);
            }
        }
    }

    #[test]
    fn zero_and_nonpositive_gaps_rejected() {
        assert_eq!(
            group_embedding(&[FormalValue::zero()]).unwrap_err(),
            EmbeddingError::ZeroGap(0)
        );
        assert_eq!(
            group_embedding(&[rat(-1)]).unwrap_err(),
            EmbeddingError::NonPositiveGap(0)
        );
        assert_eq!(group_embedding(&[]).unwrap_err(), EmbeddingError::EmptyGaps);
    }
}
