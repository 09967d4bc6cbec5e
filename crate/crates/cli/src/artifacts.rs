//! Artifact schemas written by the commands, and the re-checker behind the
//! `verify` subcommand. Every artifact is self-contained: whatever `verify`
//! needs (forbidden space, oracle, pattern) travels inside the file.

use linf_ramsey::baton::{Baton, Point};
use linf_ramsey::colouring::{
    verify_colouring, CoverResult, ForbiddenSpace, PartitionCertificate, PeriodicColouring,
};
use linf_ramsey::density::{cyclic_tr_free, DensityResult, Pattern};
use linf_ramsey::geometry::{Domain, GridSet};
use linf_ramsey::infinite::{detect_proper_copy, FindConfig, FindOutcome, GeoReport, GridOracle};
use linf_ramsey::products::{BruteAlphaOutcome, BruteDomain, ProductSpace};
use linf_ramsey::rat::Rat;
use linf_ramsey::search::{for_each_embedding, DistMatrix};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Artifact {
    DensityExact {
        pattern: Pattern,
        result: DensityResult,
    },
    DensityBounds {
        pattern: Pattern,
        m_list: Vec<u32>,
        result: DensityResult,
    },
    AlphaBox {
        pattern: Pattern,
        m: u32,
        size: u64,
        witness: GridSet,
        optimal: bool,
    },
    AlphaTorus {
        pattern: Pattern,
        m: u32,
        size: u64,
        witness: GridSet,
        optimal: bool,
    },
    BruteAlpha {
        domain: BruteDomain,
        forbidden: ProductSpace,
        outcome: BruteAlphaOutcome,
    },
    AlphaPower {
        x: Vec<Rat>,
        baton: Baton,
        n: u32,
        value: String,
    },
    Bkm {
        k: u32,
        m: u32,
        n: u32,
        value: String,
        degenerate: bool,
        witness: Option<GridSet>,
    },
    ChiReport {
        space: linf_ramsey::colouring::ChiSpace,
        m_list: Vec<u32>,
        bounds: linf_ramsey::colouring::ChiBounds,
    },
    Colouring {
        colouring: PeriodicColouring,
        forbidden: ForbiddenSpace,
        cover: Option<CoverResult>,
    },
    Partition {
        certificate: PartitionCertificate,
    },
    GeoPrefix {
        progression: linf_ramsey::infinite::GeoProgression,
    },
    GeoFind {
        oracle: GridOracle,
        config: FindConfig,
        outcome: FindOutcome,
    },
    GeoReport {
        config: FindConfig,
        suite: Vec<GridOracle>,
        report: GeoReport,
    },
}

/// Re-check a deserialized artifact from scratch. `Ok(())` means every
/// stated certificate survived; the error says what broke.
pub fn verify_artifact(artifact: &Artifact) -> Result<(), String> {
    match artifact {
        Artifact::DensityExact { pattern, result } => {
            let exact = result
                .exact
                .as_ref()
                .ok_or("exact density artifact without an exact value")?;
            if result.lower != *exact || result.upper != *exact {
                return Err("exact value must equal both bounds".into());
            }
            let witness = result.witness.as_ref().ok_or("missing periodic witness")?;
            check_torus_witness_line(witness, pattern, exact)
        }
        Artifact::DensityBounds { pattern, result, .. } => {
            if result.lower > result.upper {
                return Err("lower bound exceeds upper bound".into());
            }
            if let Some(e) = &result.exact {
                if *e != result.lower || *e != result.upper {
                    return Err("exact value must equal both bounds".into());
                }
            }
            if let Some(witness) = &result.witness {
                let density = attained_density(witness);
                if density != result.lower {
                    return Err("witness density does not attain the lower bound".into());
                }
                check_witness_tr_free(witness, pattern)?;
            }
            Ok(())
        }
        Artifact::AlphaBox {
            pattern,
            m,
            size,
            witness,
            ..
        } => {
            if witness.len() as u64 != *size {
                return Err("witness size mismatch".into());
            }
            let expected = Domain::Box(vec![*m; pattern.rank()]);
            if witness.domain() != &expected {
                return Err("witness domain mismatch".into());
            }
            check_witness_tr_free(witness, pattern)
        }
        Artifact::AlphaTorus {
            pattern,
            m,
            size,
            witness,
            ..
        } => {
            if witness.len() as u64 != *size {
                return Err("witness size mismatch".into());
            }
            let expected = Domain::Torus(vec![*m; pattern.rank()]);
            if witness.domain() != &expected {
                return Err("witness domain mismatch".into());
            }
            check_witness_tr_free(witness, pattern)
        }
        Artifact::BruteAlpha {
            forbidden, outcome, ..
        } => {
            if outcome.witness.len() as u64 != outcome.size {
                return Err("witness size mismatch".into());
            }
            let target = DistMatrix::from_points(&forbidden.points());
            let domain = DistMatrix::from_points(&outcome.witness);
            let mut found = false;
            for_each_embedding(&target, &domain, |_| {
                found = true;
                false
            });
            if found {
                return Err("witness contains a forbidden copy".into());
            }
            Ok(())
        }
        Artifact::AlphaPower { x, baton, n, value } => {
            let recomputed = linf_ramsey::products::alpha_power(x, baton, *n)
                .map_err(|e| e.to_string())?;
            if recomputed.to_string() != *value {
                return Err("recomputed value differs".into());
            }
            Ok(())
        }
        Artifact::Bkm {
            k,
            m,
            n,
            value,
            degenerate,
            witness,
        } => {
            let recomputed = if *degenerate {
                linf_ramsey::products::bkm_alpha_degenerate(*m, *n)
            } else {
                linf_ramsey::products::bkm_alpha_formula(*k, *m, *n)
            }
            .map_err(|e| e.to_string())?;
            if recomputed.to_string() != *value {
                return Err("recomputed value differs".into());
            }
            if let Some(w) = witness {
                let again =
                    linf_ramsey::products::bkm_witness(*k, *m, *n).map_err(|e| e.to_string())?;
                if *w != again {
                    return Err("witness differs from the extremal set".into());
                }
            }
            Ok(())
        }
        Artifact::ChiReport { bounds, .. } => {
            if let Some(u) = &bounds.upper {
                if bounds.lower > *u {
                    return Err("lower bound exceeds upper bound".into());
                }
            }
            Ok(())
        }
        Artifact::Colouring {
            colouring,
            forbidden,
            cover,
        } => {
            match verify_colouring(colouring, forbidden).map_err(|e| e.to_string())? {
                linf_ramsey::colouring::Verdict::Proper => {}
                linf_ramsey::colouring::Verdict::Violation { points, colour } => {
                    return Err(format!(
                        "monochromatic copy at {points:?} in colour {colour}"
                    ))
                }
            }
            if let Some(c) = cover {
                check_cover(c)?;
            }
            Ok(())
        }
        Artifact::Partition { certificate } => {
            if !certificate.verified || !certificate.verify() {
                return Err("partition certificate fails its residue check".into());
            }
            Ok(())
        }
        Artifact::GeoPrefix { progression } => {
            let again = linf_ramsey::infinite::gq_prefix(&progression.q, progression.prefix_len)
                .map_err(|e| e.to_string())?;
            if again != *progression {
                return Err("prefix points differ from recomputation".into());
            }
            Ok(())
        }
        Artifact::GeoFind {
            oracle,
            config,
            outcome,
        } => {
            if outcome.points.len() != config.prefix_len + 1 {
                return Err("wrong number of points".into());
            }
            match detect_proper_copy(&outcome.points, &config.q).map_err(|e| e.to_string())? {
                linf_ramsey::infinite::ProperCopyOutcome::Proper { .. } => {}
                linf_ramsey::infinite::ProperCopyOutcome::NotProper { reason } => {
                    return Err(format!("not a proper copy: {reason}"))
                }
            }
            for p in &outcome.points {
                let c = oracle.query(p).map_err(|e| e.to_string())?;
                if c != outcome.colour {
                    return Err("replayed query returns a different colour".into());
                }
            }
            Ok(())
        }
        Artifact::GeoReport {
            config,
            suite,
            report,
        } => {
            let again = linf_ramsey::infinite::geo_chi_lower_report(config, suite)
                .map_err(|e| e.to_string())?;
            let a = serde_json::to_string(&again.runs).map_err(|e| e.to_string())?;
            let b = serde_json::to_string(&report.runs).map_err(|e| e.to_string())?;
            if a != b {
                return Err("re-running the suite gives different runs".into());
            }
            Ok(())
        }
    }
}

fn attained_density(witness: &GridSet) -> Rat {
    let t = witness.dimension() as i32;
    let m = witness.domain().sides()[0] as i64;
    Rat::int(witness.len() as i64) / Rat::int(m).pow(t)
}

fn check_torus_witness_line(
    witness: &GridSet,
    pattern: &Pattern,
    density: &Rat,
) -> Result<(), String> {
    if pattern.rank() != 1 || witness.dimension() != 1 {
        return Err("line witness must have rank 1".into());
    }
    let period = witness.domain().sides()[0] as i64;
    let members: std::collections::BTreeSet<i64> = witness.members().map(|p| p[0]).collect();
    if Rat::new(members.len() as i64, period) != *density {
        return Err("witness density mismatch".into());
    }
    if !cyclic_tr_free(&members, period, pattern) {
        return Err("periodic witness contains the pattern".into());
    }
    Ok(())
}

/// Tr-freeness of a grid witness against every translate and reflection.
fn check_witness_tr_free(witness: &GridSet, pattern: &Pattern) -> Result<(), String> {
    let toroidal = matches!(witness.domain(), Domain::Torus(_));
    let sides = witness.domain().sides().to_vec();
    let t = pattern.rank();
    if witness.dimension() != t {
        return Err("witness dimension mismatch".into());
    }
    for shape in [pattern.clone(), pattern.reflect()] {
        let pts: Vec<Vec<i64>> = shape.points().cloned().collect();
        // Anchor every shape point on every member.
        for member in witness.members() {
            for origin in &pts {
                let inside = pts.iter().all(|p| {
                    let q: Vec<i64> = p
                        .iter()
                        .zip(origin)
                        .zip(member)
                        .zip(&sides)
                        .map(|(((a, o), mem), &s)| {
                            let raw = a - o + mem;
                            if toroidal {
                                raw.rem_euclid(s as i64)
                            } else {
                                raw
                            }
                        })
                        .collect();
                    witness.contains(&q)
                });
                if inside {
                    return Err("witness contains a pattern placement".into());
                }
            }
        }
    }
    Ok(())
}

fn check_cover(cover: &CoverResult) -> Result<(), String> {
    let m = cover.modulus;
    let total = (m as u64).pow(cover.n as u32) as usize;
    let index_of =
        |p: &[u32]| -> usize { p.iter().fold(0usize, |acc, &c| acc * m as usize + c as usize) };
    let mut covered = vec![false; total];
    for t in &cover.translates {
        for member in &cover.base {
            let shifted: Vec<u32> = member.iter().zip(t).map(|(&a, &b)| (a + b) % m).collect();
            covered[index_of(&shifted)] = true;
        }
    }
    if !covered.iter().all(|&c| c) {
        return Err("cover misses a torus point".into());
    }
    if cover.met_target && cover.translates.len() as u64 > cover.size_target {
        return Err("cover exceeds its declared size target".into());
    }
    Ok(())
}

/// Round-trip helper used by commands: witness points of a brute run must
/// actually avoid the forbidden space (checked before writing).
pub fn brute_witness_ok(forbidden: &ProductSpace, witness: &[Point]) -> bool {
    let target = DistMatrix::from_points(&forbidden.points());
    let domain = DistMatrix::from_points(witness);
    let mut found = false;
    for_each_embedding(&target, &domain, |_| {
        found = true;
        false
    });
    !found
}
