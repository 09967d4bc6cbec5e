//! Exact rank-1 independence numbers: layered longest-path DP over the shift
//! automaton for boxes, and the same DP with a fixed first window plus
//! wraparound consistency for tori. Small tori fall back to subset
//! enumeration (the wrap windows overlap themselves below m = 2D).

use std::collections::BTreeSet;

use super::automaton::ShiftAutomaton;
use super::{cyclic_tr_free, DensityError, Pattern};
use crate::exec;

const NEG: i64 = i64::MIN;
const ENUM_CEILING: u32 = 24;

/// Maximum tr-free subset of `{0..m-1}`, as (size, members).
pub fn alpha_line(m: u32, s: &Pattern, ceiling: usize) -> Result<(u64, Vec<u32>), DensityError> {
    require_rank1(s)?;
    if s.len() == 1 {
        return Ok((0, vec![]));
    }
    let d = s.diameter()[0] as u32;
    // A pattern wider than the box cannot be placed at all.
    if d >= m {
        return Ok((m as u64, (0..m).collect()));
    }
    if d as usize > ceiling {
        return Err(DensityError::WindowTooLarge {
            window: d as usize,
            ceiling,
        });
    }

    let aut = ShiftAutomaton::new(s, ceiling)?;
    let v = aut.state_count();

    // layers[i][state]: best weight after deciding positions 0..i, where the
    // state encodes the last D membership bits (positions < 0 are absent).
    let mut layers: Vec<Vec<i64>> = Vec::with_capacity(m as usize + 1);
    let mut cur = vec![NEG; v];
    cur[0] = 0;
    layers.push(cur.clone());
    for _pos in 0..m {
        let next = exec::map_indexed(v, |u| {
            let u64u = u as u64;
            let w = aut.weight_into(u64u);
            let mut best = NEG;
            for p in aut.predecessors(u64u) {
                let val = cur[p as usize];
                if val != NEG && val + w > best {
                    best = val + w;
                }
            }
            best
        });
        layers.push(next.clone());
        cur = next;
    }

    let (best_state, best) = layers[m as usize]
        .iter()
        .enumerate()
        .max_by_key(|&(u, &val)| (val, usize::MAX - u))
        .map(|(u, &val)| (u as u64, val))
        .unwrap();
    assert!(best >= 0, "the empty set is always feasible");

    // Backtrack: the appended bit at each position is the newest bit of the
    // next state.
    let mut members = Vec::new();
    let mut state = best_state;
    for pos in (0..m).rev() {
        if aut.weight_into(state) == 1 {
            members.push(pos);
        }
        let want = layers[pos as usize + 1][state as usize];
        let w = aut.weight_into(state);
        let pred = aut
            .predecessors(state)
            .filter(|&p| {
                let val = layers[pos as usize][p as usize];
                val != NEG && val + w == want
            })
            .min()
            .expect("DP value must be witnessed");
        state = pred;
    }
    members.reverse();
    assert_eq!(members.len() as i64, best);
    Ok((best as u64, members))
}

/// Maximum subset of `Z_m` whose periodic extension is tr-free.
pub fn beta_line(m: u32, s: &Pattern, ceiling: usize) -> Result<(u64, Vec<u32>), DensityError> {
    require_rank1(s)?;
    let d = s.diameter().first().copied().unwrap_or(0) as u32;
    if s.len() == 1 {
        return Ok((0, vec![]));
    }
    if m < 2 * d.max(1) {
        if m > ENUM_CEILING {
            return Err(DensityError::TorusTooLarge { m });
        }
        return Ok(beta_enumerate(m, s));
    }
    if d as usize > ceiling {
        return Err(DensityError::WindowTooLarge {
            window: d as usize,
            ceiling,
        });
    }

    let aut = ShiftAutomaton::new(s, ceiling)?;
    let v = aut.state_count();
    let dd = d as usize;

    // One DP per fixed prefix (the first D bits); wraparound windows are
    // validated at closure from (final state, prefix).
    let per_prefix = exec::map_indexed(v, |prefix| {
        let prefix_bits = prefix as u64;
        let mut layers: Vec<Vec<i64>> = Vec::with_capacity(m as usize - dd + 1);
        let mut cur = vec![NEG; v];
        cur[prefix] = prefix_bits.count_ones() as i64;
        layers.push(cur.clone());
        for _pos in dd..m as usize {
            let next: Vec<i64> = (0..v)
                .map(|u| {
                    let u64u = u as u64;
                    let w = aut.weight_into(u64u);
                    let mut best = NEG;
                    for p in aut.predecessors(u64u) {
                        let val = cur[p as usize];
                        if val != NEG && val + w > best {
                            best = val + w;
                        }
                    }
                    best
                })
                .collect();
            layers.push(next.clone());
            cur = next;
        }

        let mut best: Option<(i64, u64)> = None;
        for (state, &val) in cur.iter().enumerate() {
            if val == NEG {
                continue;
            }
            if !closure_ok(&aut, state as u64, prefix_bits, dd) {
                continue;
            }
            if best.map_or(true, |(bv, bs)| val > bv || (val == bv && (state as u64) < bs)) {
                best = Some((val, state as u64));
            }
        }
        best.map(|(val, state)| {
            // Backtrack inside this prefix's table.
            let mut members: Vec<u32> = (0..dd as u32)
                .filter(|&i| prefix_bits >> i & 1 == 1)
                .collect();
            let mut tail = Vec::new();
            let mut st = state;
            for pos in (dd..m as usize).rev() {
                if aut.weight_into(st) == 1 {
                    tail.push(pos as u32);
                }
                let want = layers[pos - dd + 1][st as usize];
                let w = aut.weight_into(st);
                st = aut
                    .predecessors(st)
                    .filter(|&p| {
                        let val = layers[pos - dd][p as usize];
                        val != NEG && val + w == want
                    })
                    .min()
                    .expect("DP value must be witnessed");
            }
            tail.reverse();
            members.extend(tail);
            (val as u64, members)
        })
    });

    let best = per_prefix
        .into_iter()
        .flatten()
        .max_by(|a, b| (a.0, &b.1).cmp(&(b.0, &a.1)))
        .unwrap_or((0, vec![]));
    Ok(best)
}

/// Check the D wrap windows spanning the seam between the final D bits and
/// the first D bits.
fn closure_ok(aut: &ShiftAutomaton, final_state: u64, prefix: u64, d: usize) -> bool {
    let seam = final_state | (prefix << d); // 2D bits
    for c in 0..d {
        let window = (seam >> c) & ((1u64 << (d + 1)) - 1);
        if !aut.allowed(window) {
            return false;
        }
    }
    true
}

fn beta_enumerate(m: u32, s: &Pattern) -> (u64, Vec<u32>) {
    let mut best: u64 = 0;
    let mut best_members: Vec<u32> = vec![];
    for mask in 0u64..(1u64 << m) {
        let members: BTreeSet<i64> = (0..m).filter(|&i| mask >> i & 1 == 1).map(i64::from).collect();
        if !cyclic_tr_free(&members, m as i64, s) {
            continue;
        }
        let size = mask.count_ones() as u64;
        if size > best {
            best = size;
            best_members = members.iter().map(|&x| x as u32).collect();
        }
    }
    (best, best_members)
}

fn require_rank1(s: &Pattern) -> Result<(), DensityError> {
    if s.rank() != 1 {
        return Err(DensityError::WrongRank {
            expected: 1,
            got: s.rank(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Subset-enumeration oracle for boxes, independent of the DP.
    fn alpha_brute(m: u32, s: &Pattern) -> u64 {
        let pts = s.line_points().unwrap();
        let d = s.diameter()[0];
        let refl: Vec<i64> = pts.iter().map(|&p| d - p).collect();
        let mut best = 0u64;
        for mask in 0u64..(1 << m) {
            let has = |x: i64| x >= 0 && x < m as i64 && mask >> x & 1 == 1;
            let mut ok = true;
            'outer: for x in 0..m as i64 {
                for shape in [&pts, &refl] {
                    if shape.iter().all(|&p| has(x + p)) {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                best = best.max(mask.count_ones() as u64);
            }
        }
        best
    }

    #[test]
    fn alpha_seven_unit_progression() {
        // Frozen from the subset-enumeration oracle below.
        let s = Pattern::line(&[0, 1, 2]).unwrap();
        assert_eq!(alpha_brute(7, &s), 5);
        let (size, members) = alpha_line(7, &s, 20).unwrap();
        assert_eq!(size, 5);
        assert_eq!(members.len(), 5);
        // Witness avoids the pattern inside the box.
        let set: BTreeSet<i64> = members.iter().map(|&x| x as i64).collect();
        for x in 0..7i64 {
            assert!(![0, 1, 2].iter().all(|&p| set.contains(&(x + p))));
        }
    }

    #[test]
    fn alpha_tiny_box() {
        let s = Pattern::line(&[0, 1, 2]).unwrap();
        assert_eq!(alpha_line(1, &s, 20).unwrap().0, 1);
        assert_eq!(alpha_line(2, &s, 20).unwrap().0, 2);
    }

    #[test]
    fn alpha_matches_enumeration() {
        for pts in [vec![0i64, 1], vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3, 7]] {
            let s = Pattern::line(&pts).unwrap();
            for m in 1..=12u32 {
                let (size, members) = alpha_line(m, &s, 20).unwrap();
                assert_eq!(size, alpha_brute(m, &s), "pattern {pts:?} m={m}");
                assert_eq!(members.len() as u64, size);
            }
        }
    }

    #[test]
    fn beta_unit_progression_mod_three() {
        let s = Pattern::line(&[0, 1, 2]).unwrap();
        let (size, members) = beta_line(3, &s, 20).unwrap();
        assert_eq!(size, 2);
        let set: BTreeSet<i64> = members.iter().map(|&x| x as i64).collect();
        assert!(cyclic_tr_free(&set, 3, &s));
    }

    #[test]
    fn beta_one_residue_class_is_everything() {
        // Z_1 collapses to all of Z, which contains the pattern.
        let s = Pattern::line(&[0, 1]).unwrap();
        assert_eq!(beta_line(1, &s, 20).unwrap().0, 0);
    }

    #[test]
    fn beta_dp_agrees_with_enumeration() {
        for pts in [vec![0i64, 1], vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3, 7]] {
            let s = Pattern::line(&pts).unwrap();
            for m in 1..=18u32 {
                let (size, members) = beta_line(m, &s, 20).unwrap();
                let (brute, _) = beta_enumerate(m, &s);
                assert_eq!(size, brute, "pattern {pts:?} m={m}");
                let set: BTreeSet<i64> = members.iter().map(|&x| x as i64).collect();
                assert!(cyclic_tr_free(&set, m as i64, &s));
                assert_eq!(set.len() as u64, size);
            }
        }
    }
}
