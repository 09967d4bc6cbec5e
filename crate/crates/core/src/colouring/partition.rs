//! Randomized search for residue partitions in which every translate and
//! reflection of a pattern meets every part, and the colouring such a
//! partition induces through part-complement powers.

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::baton::Baton;
use crate::colouring::cover::seeded_rng;
use crate::colouring::{
    verify_colouring, ColouringError, ForbiddenSpace, PeriodicColouring, Provenance,
};
use crate::density::Pattern;
use crate::rat::Rat;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionSearchError {
    #[error("pattern of {got} points cannot hit {parts} parts")]
    TooFewPoints { got: usize, parts: u32 },
    #[error("pattern must have rank 1")]
    WrongRank,
    #[error("parameters must be at least 1")]
    ZeroParameter,
    #[error("no certificate found within budget; best energy {best_energy}")]
    NotFound { best_energy: u64 },
}

/// Residue partition of `Z_p` such that for every residue x, both the
/// pattern translated by x and its reflection translated by x intersect
/// every part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub period: u32,
    pub n_parts: u32,
    /// Part id of every residue.
    pub parts: Vec<u32>,
    pub pattern: Pattern,
    pub verified: bool,
    pub seed: u64,
}

impl PartitionCertificate {
    /// Exhaustive re-check over all residues and both orientations.
    pub fn verify(&self) -> bool {
        if self.parts.len() != self.period as usize {
            return false;
        }
        energy(&self.parts, self.period, self.n_parts, &shapes(&self.pattern)) == 0
    }
}

fn shapes(pattern: &Pattern) -> [Vec<i64>; 2] {
    let pts = pattern.line_points().expect("rank 1");
    let d = pattern.diameter()[0];
    let refl = pts.iter().map(|&p| d - p).collect();
    [pts, refl]
}

/// Number of (residue, orientation, part) triples left unmet.
fn energy(parts: &[u32], period: u32, n_parts: u32, shapes: &[Vec<i64>; 2]) -> u64 {
    let p = period as i64;
    let mut missing = 0u64;
    for x in 0..p {
        for shape in shapes {
            let mut hit = 0u64;
            for &s in shape {
                hit |= 1 << parts[((x + s).rem_euclid(p)) as usize];
            }
            missing += n_parts as u64 - hit.count_ones() as u64;
        }
    }
    missing
}

/// Simulated annealing over residue-to-part maps. A returned certificate has
/// always been re-verified exhaustively.
pub fn partition_search(
    pattern: &Pattern,
    n_parts: u32,
    period: u32,
    seed: u64,
    budget: u64,
) -> Result<PartitionCertificate, PartitionSearchError> {
    if pattern.rank() != 1 {
        return Err(PartitionSearchError::WrongRank);
    }
    if n_parts == 0 || period == 0 || n_parts > 63 {
        return Err(PartitionSearchError::ZeroParameter);
    }
    if (pattern.len() as u32) < n_parts || period < n_parts {
        return Err(PartitionSearchError::TooFewPoints {
            got: pattern.len(),
            parts: n_parts,
        });
    }
    let shapes = shapes(pattern);
    let certify = |parts: Vec<u32>| {
        let cert = PartitionCertificate {
            period,
            n_parts,
            parts,
            pattern: pattern.clone(),
            verified: false,
            seed,
        };
        let mut cert = cert;
        cert.verified = cert.verify();
        debug_assert!(cert.verified);
        cert
    };

    // Deterministic round-robin start; often already valid.
    let mut parts: Vec<u32> = (0..period).map(|x| x % n_parts).collect();
    let mut cur = energy(&parts, period, n_parts, &shapes);
    if cur == 0 {
        return Ok(certify(parts));
    }

    let mut rng = seeded_rng(seed);
    let mut best = cur;
    let t0 = 3.0f64;
    let t1 = 0.01f64;
    for iter in 0..budget {
        let res = (rng.next_u64() % period as u64) as usize;
        let new_part = (rng.next_u64() % n_parts as u64) as u32;
        let old_part = parts[res];
        if new_part == old_part {
            continue;
        }
        parts[res] = new_part;
        let cand = energy(&parts, period, n_parts, &shapes);
        if cand == 0 {
            return Ok(certify(parts));
        }
        let accept = if cand <= cur {
            true
        } else {
            let temp = t0 * (t1 / t0).powf(iter as f64 / budget as f64);
            let p = (-((cand - cur) as f64) / temp).exp();
            (rng.next_u64() % 1_000_000_000) as f64 / 1e9 < p
        };
        if accept {
            cur = cand;
            best = best.min(cur);
        } else {
            parts[res] = old_part;
        }
    }
    Err(PartitionSearchError::NotFound { best_energy: best })
}

/// The colouring the partition induces on dimension-n space: colour a point
/// by the least part no coordinate's residue belongs to. Needs more parts
/// than coordinates; verified against the baton of the pattern before
/// return.
pub fn colouring_from_partition(
    cert: &PartitionCertificate,
    n: usize,
) -> Result<PeriodicColouring, ColouringError> {
    if !cert.verify() {
        return Err(ColouringError::VerificationFailed(
            "partition certificate fails its residue check".into(),
        ));
    }
    if (cert.n_parts as usize) < n + 1 {
        return Err(ColouringError::TooFewParts(cert.n_parts, n));
    }
    let m = cert.period;
    let total = (m as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or(ColouringError::TooLarge {
            points: u64::MAX,
            ceiling: 1 << 24,
        })? as usize;

    let mut colours_raw = Vec::with_capacity(total);
    for idx in 0..total {
        let point = super::unindex(idx as u64, m as i64, n);
        let mut used = 0u64;
        for &c in &point {
            used |= 1 << cert.parts[c as usize];
        }
        let colour = (0..cert.n_parts)
            .find(|&i| used & (1 << i) == 0)
            .expect("fewer coordinates than parts");
        colours_raw.push(colour);
    }

    // Contiguous ids.
    let mut remap = vec![u32::MAX; cert.n_parts as usize];
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

    let colouring =
        PeriodicColouring::new(n, m, colours, Provenance::Partition { seed: cert.seed })?;

    // The pattern's sorted points form a baton; the induced colouring must
    // avoid it.
    let pts = cert.pattern.line_points().expect("rank 1");
    let gaps: Vec<Rat> = pts.windows(2).map(|w| Rat::int(w[1] - w[0])).collect();
    let baton = Baton::from_gaps(gaps).expect("pattern has at least two points");
    match verify_colouring(&colouring, &ForbiddenSpace::Baton(baton))? {
        super::Verdict::Proper => Ok(colouring),
        super::Verdict::Violation { points, colour } => Err(ColouringError::VerificationFailed(
            format!("monochromatic copy at {points:?} in colour {colour}"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_pattern_round_robin_is_valid() {
        let s = Pattern::line(&[0, 1, 2, 3, 4, 5]).unwrap();
        let cert = partition_search(&s, 3, 6, 0, 10_000).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.parts, vec![0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn two_point_pattern_mod_two() {
        let s = Pattern::line(&[0, 1]).unwrap();
        let cert = partition_search(&s, 2, 2, 0, 10_000).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.parts.len(), 2);
    }

    #[test]
    fn sparse_pattern_search_and_verify() {
        let s = Pattern::line(&[0, 1, 3, 6, 10]).unwrap();
        match partition_search(&s, 3, 12, 1, 200_000) {
            Ok(cert) => assert!(cert.verify()),
            Err(PartitionSearchError::NotFound { .. }) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn too_few_points_rejected() {
        let s = Pattern::line(&[0, 1]).unwrap();
        assert!(matches!(
            partition_search(&s, 3, 6, 0, 100),
            Err(PartitionSearchError::TooFewPoints { .. })
        ));
    }

    #[test]
    fn induced_colouring_verifies() {
        let s = Pattern::line(&[0, 1, 2, 3, 4, 5]).unwrap();
        let cert = partition_search(&s, 3, 6, 0, 10_000).unwrap();
        let colouring = colouring_from_partition(&cert, 2).unwrap();
        assert!(colouring.colour_count() <= 3);
    }

    #[test]
    fn tampered_certificate_rejected() {
        let s = Pattern::line(&[0, 1, 2, 3, 4, 5]).unwrap();
        let mut cert = partition_search(&s, 3, 6, 0, 10_000).unwrap();
        cert.parts = vec![0; 6];
        assert!(!cert.verify());
        assert!(matches!(
            colouring_from_partition(&cert, 2),
            Err(ColouringError::VerificationFailed(_))
        ));
    }

    #[test]
    fn determinism_per_seed() {
        let s = Pattern::line(&[0, 2, 3, 7, 9]).unwrap();
        let a = partition_search(&s, 3, 10, 5, 50_000);
        let b = partition_search(&s, 3, 10, 5, 50_000);
        match (a, b) {
            (Ok(x), Ok(y)) => assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            _ => panic!("same seed diverged"),
        }
    }
}
