//! Colouring constructors. Every constructor runs the exhaustive verifier
//! before returning; an improper construction is a hard error, never a value.

use crate::baton::Baton;
use crate::colouring::{
    random_cover, verify_colouring, ColouringError, CoverResult, ForbiddenSpace,
    PeriodicColouring, Provenance,
};
use crate::density::{beta_tr, Pattern};
use crate::geometry::{Domain, GridSet};
use crate::products::ProductSpace;

/// Colour the lattice by covering the period torus with translates of
/// `A^n`, where `A` is a maximum residue set whose periodic extension avoids
/// the baton; points in several translates take the lowest translate index.
pub fn periodic_colouring_for_baton(
    baton: &Baton,
    m: u32,
    n: usize,
    seed: u64,
    trials: u32,
) -> Result<(PeriodicColouring, CoverResult), ColouringError> {
    if !baton.is_integer() {
        return Err(ColouringError::NonIntegralForbidden);
    }
    let pattern = Pattern::of_integer_baton(baton).expect("integer baton");
    let beta = beta_tr(m, &pattern, u64::MAX)?;
    if beta.size == 0 {
        return Err(ColouringError::NoFreeSet);
    }
    let residues: Vec<u32> = beta.witness.members().map(|p| p[0] as u32).collect();

    // X = A^n inside the torus.
    let mut members = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(members.len() * residues.len());
        for p in &members {
            for &r in &residues {
                let mut q: Vec<i64> = p.clone();
                q.push(r as i64);
                next.push(q);
            }
        }
        members = next;
    }
    let x = GridSet::new(Domain::Torus(vec![m; n]), members)?;
    let cover = random_cover(m, n, &x, seed, trials)?;

    let total = (m as u64).pow(n as u32) as usize;
    let in_base = |c: u32| residues.contains(&c);
    let mut colours_raw = Vec::with_capacity(total);
    for idx in 0..total {
        let point = super::unindex(idx as u64, m as i64, n);
        let colour = cover
            .translates
            .iter()
            .position(|t| {
                point
                    .iter()
                    .zip(t)
                    .all(|(&p, &tc)| in_base(((p as u32) + m - tc % m) % m))
            })
            .expect("cover verified complete") as u32;
        colours_raw.push(colour);
    }

    // Contiguous colour ids, keeping translate order.
    let mut remap = vec![u32::MAX; cover.translates.len()];
    let mut next_id = 0u32;
    let colours: Vec<u32> = colours_raw
        .iter()
        .map(|&c| {
            if remap[c as usize] == u32::MAX {
                remap[c as usize] = next_id;
                next_id += 1;
            }
            remap[c as usize]
        })
        .collect();

    let colouring = PeriodicColouring::new(
        n,
        m,
        colours,
        Provenance::Cover {
            seed,
            base: residues,
            translates: cover.translates.clone(),
        },
    )?;

    match verify_colouring(&colouring, &ForbiddenSpace::Baton(baton.clone()))? {
        super::Verdict::Proper => Ok((colouring, cover)),
        super::Verdict::Violation { points, colour } => Err(ColouringError::VerificationFailed(
            format!("monochromatic copy at {points:?} in colour {colour}"),
        )),
    }
}

/// Colouring proper against the m-th power of the two-point space: group the
/// 2^n parity classes of the floor into batches of size `2^m - 1` and give
/// each batch one colour. Points of one copy occupy pairwise distinct parity
/// classes, so no batch can hold a full copy.
pub fn simplex_colouring(n: usize, m: u32) -> Result<PeriodicColouring, ColouringError> {
    if n == 0 || m == 0 || n >= 24 {
        return Err(ColouringError::TooLarge {
            points: 1 << n.min(63),
            ceiling: 1 << 24,
        });
    }
    let group_size: u64 = (1u64 << m) - 1;
    let total = 1usize << n;
    let colours: Vec<u32> = (0..total)
        .map(|parity| (parity as u64 / group_size) as u32)
        .collect();
    let colouring = PeriodicColouring::new(n, 2, colours, Provenance::Simplex {
        group_size: group_size.min(u32::MAX as u64) as u32,
    })?;

    let forbidden = ForbiddenSpace::Product(ProductSpace::power(Baton::unit(1), m as usize)?);
    match verify_colouring(&colouring, &forbidden)? {
        super::Verdict::Proper => Ok(colouring),
        super::Verdict::Violation { points, colour } => Err(ColouringError::VerificationFailed(
            format!("monochromatic copy at {points:?} in colour {colour}"),
        )),
    }
}
