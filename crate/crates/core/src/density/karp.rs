//! Maximum mean cycle of the shift automaton via Karp's recurrence, in exact
//! arithmetic.
//!
//! Layer values are streamed twice (once for the final layer, once for the
//! minimizing comparison), so memory stays O(states) while the classic
//! O(states * edges) time bound is kept. The optimal mean is then certified
//! by potentials: edges tight under the reweighting `q*w - p` form a subgraph
//! whose cycles all have mean exactly `p/q`, and a deterministic greedy walk
//! in its smallest cyclic strongly connected component extracts the witness
//! cycle.

use num_integer::Integer;

use super::automaton::ShiftAutomaton;
use crate::exec;
use crate::rat::Rat;

const NEG: i64 = i64::MIN;

#[derive(Clone, Debug)]
pub struct MaxMeanCycle {
    pub mean: Rat,
    /// States around the witness cycle.
    pub states: Vec<u64>,
    /// Appended membership bits around the cycle: one period of the witness.
    pub bits: Vec<bool>,
}

fn next_layer(aut: &ShiftAutomaton, cur: &[i64]) -> Vec<i64> {
    exec::map_indexed(cur.len(), |u| {
        let u64u = u as u64;
        let w = aut.weight_into(u64u);
        let mut best = NEG;
        for p in aut.predecessors(u64u) {
            let v = cur[p as usize];
            if v != NEG && v + w > best {
                best = v + w;
            }
        }
        best
    })
}

/// `a/b < c/d` for nonnegative integer numerators and positive denominators.
fn ratio_lt(a: i64, b: i64, c: i64, d: i64) -> bool {
    (a as i128) * (d as i128) < (c as i128) * (b as i128)
}

pub fn max_mean_cycle(aut: &ShiftAutomaton) -> MaxMeanCycle {
    let v = aut.state_count();
    let n = v; // layer count in Karp's recurrence

    // Pass 1: F_n for every state (walks may start anywhere).
    let mut cur: Vec<i64> = vec![0; v];
    for _ in 0..n {
        cur = next_layer(aut, &cur);
    }
    let f_n = cur;

    // Pass 2: for每 state, min over k < n of (F_n - F_k)/(n - k); the answer
    // is the maximum of those minima over states with finite F_n.
    // (num, den) per state; den 0 marks "no finite k yet".
    let mut best_ratio: Vec<(i64, i64)> = vec![(0, 0); v];
    let mut layer: Vec<i64> = vec![0; v];
    for k in 0..n {
        for u in 0..v {
            if f_n[u] == NEG || layer[u] == NEG {
                continue;
            }
            let num = f_n[u] - layer[u];
            let den = (n - k) as i64;
            let (bn, bd) = best_ratio[u];
            if bd == 0 || ratio_lt(num, den, bn, bd) {
                best_ratio[u] = (num, den);
            }
        }
        if k + 1 < n {
            layer = next_layer(aut, &layer);
        }
    }

    let mut mean: Option<(i64, i64)> = None;
    for &(num, den) in &best_ratio {
        if den == 0 {
            continue;
        }
        match mean {
            None => mean = Some((num, den)),
            Some((bn, bd)) => {
                if ratio_lt(bn, bd, num, den) {
                    mean = Some((num, den));
                }
            }
        }
    }
    let (p_raw, q_raw) = mean.expect("the all-empty cycle always exists");
    let g = p_raw.gcd(&q_raw).max(1);
    let (p, q) = (p_raw / g, q_raw / g);

    // Potentials for the reweighted graph w' = q*w - p: no positive cycles,
    // so the longest-walk fixpoint exists; tight edges carry the optimum.
    let mut h: Vec<i64> = vec![0; v];
    for _round in 0..=n {
        let next: Vec<i64> = exec::map_indexed(v, |u| {
            let u64u = u as u64;
            let w = q * aut.weight_into(u64u) - p;
            let mut best = h[u];
            for pr in aut.predecessors(u64u) {
                let cand = h[pr as usize] + w;
                if cand > best {
                    best = cand;
                }
            }
            best
        });
        if next == h {
            break;
        }
        h = next;
    }

    let tight = |from: u64, to: u64| -> bool {
        let w = q * aut.weight_into(to) - p;
        h[from as usize] + w == h[to as usize]
    };
    let successors = |state: u64| -> Vec<u64> {
        (0..2u64)
            .filter_map(|b| aut.step(state, b))
            .filter(|&t| tight(state, t))
            .collect()
    };

    // Strongly connected components of the tight subgraph (iterative Tarjan).
    let scc = tarjan_scc(v, &successors);
    let mut on_cycle = vec![false; v];
    let mut comp_size = vec![0u32; v];
    for u in 0..v {
        comp_size[scc[u] as usize] += 1;
    }
    for u in 0..v {
        if comp_size[scc[u] as usize] > 1 {
            on_cycle[u] = true;
        } else if successors(u as u64).contains(&(u as u64)) {
            on_cycle[u] = true;
        }
    }

    let start = (0..v)
        .find(|&u| on_cycle[u])
        .expect("an optimal cycle exists") as u64;

    // Greedy smallest-successor walk inside the component until a repeat.
    let mut seen_at = vec![usize::MAX; v];
    let mut walk = vec![start];
    seen_at[start as usize] = 0;
    let cycle = loop {
        let cur_state = *walk.last().unwrap();
        let next = successors(cur_state)
            .into_iter()
            .filter(|&t| scc[t as usize] == scc[cur_state as usize] && on_cycle[t as usize])
            .min()
            .expect("cycle states keep a tight successor in their component");
        if seen_at[next as usize] != usize::MAX {
            break walk[seen_at[next as usize]..].to_vec();
        }
        seen_at[next as usize] = walk.len();
        walk.push(next);
    };

    // Appended bit entering each successive state equals its newest bit.
    let len = cycle.len();
    let bits: Vec<bool> = (0..len)
        .map(|i| aut.weight_into(cycle[(i + 1) % len]) == 1)
        .collect();
    let ones = bits.iter().filter(|&&b| b).count() as i64;
    let mean = Rat::new(p, q);
    assert_eq!(
        Rat::new(ones, len as i64),
        mean,
        "witness cycle must attain the optimal mean"
    );

    MaxMeanCycle {
        mean,
        states: cycle,
        bits,
    }
}

fn tarjan_scc(v: usize, successors: &dyn Fn(u64) -> Vec<u64>) -> Vec<u32> {
    let mut index = vec![u32::MAX; v];
    let mut low = vec![0u32; v];
    let mut comp = vec![u32::MAX; v];
    let mut on_stack = vec![false; v];
    let mut stack: Vec<u64> = Vec::new();
    let mut next_index = 0u32;
    let mut comp_count = 0u32;

    enum Frame {
        Enter(u64),
        Resume(u64, usize),
    }

    for root in 0..v as u64 {
        if index[root as usize] != u32::MAX {
            continue;
        }
        let mut frames = vec![Frame::Enter(root)];
        while let Some(frame) = frames.pop() {
            match frame {
                Frame::Enter(u) => {
                    index[u as usize] = next_index;
                    low[u as usize] = next_index;
                    next_index += 1;
                    stack.push(u);
                    on_stack[u as usize] = true;
                    frames.push(Frame::Resume(u, 0));
                }
                Frame::Resume(u, child) => {
                    let succ = successors(u);
                    if child > 0 {
                        let prev = succ[child - 1] as usize;
                        if low[prev] < low[u as usize] {
                            low[u as usize] = low[prev];
                        }
                    }
                    let mut advanced = false;
                    for (i, &t) in succ.iter().enumerate().skip(child) {
                        let ti = t as usize;
                        if index[ti] == u32::MAX {
                            frames.push(Frame::Resume(u, i + 1));
                            frames.push(Frame::Enter(t));
                            advanced = true;
                            break;
                        } else if on_stack[ti] && index[ti] < low[u as usize] {
                            low[u as usize] = index[ti];
                        }
                    }
                    if advanced {
                        continue;
                    }
                    if low[u as usize] == index[u as usize] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w as usize] = false;
                            comp[w as usize] = comp_count;
                            if w == u {
                                break;
                            }
                        }
                        comp_count += 1;
                    }
                }
            }
        }
    }
    comp
}
