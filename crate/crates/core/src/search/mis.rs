//! Exact maximum independent set in a hypergraph: the largest vertex subset
//! containing no hyperedge in full.
//!
//! Branch and bound over vertices with unit propagation (an otherwise fully
//! included edge forces its last undecided vertex out) and a disjoint-edge
//! packing bound. The search is sequential and visits nodes in a fixed order,
//! so a node budget gives bit-identical results on every run.

#[derive(Debug, Clone)]
pub struct MisOutcome {
    /// Size of the best independent set found.
    pub size: u64,
    /// Vertices of the best set, ascending.
    pub witness: Vec<u32>,
    /// True when the search ran to completion, so `size` is the exact maximum.
    pub optimal: bool,
    /// Upper bound on the maximum (equals `size` when optimal).
    pub upper_bound: u64,
    pub nodes: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VState {
    Undecided,
    In,
    Out,
}

struct Solver {
    edges: Vec<Vec<u32>>,
    incident: Vec<Vec<u32>>,
    state: Vec<VState>,
    in_cnt: Vec<u32>,
    out_cnt: Vec<u32>,
    order: Vec<u32>,
    kept: u64,
    undecided: u64,
    trail: Vec<u32>,
    best: u64,
    best_witness: Vec<u32>,
    nodes: u64,
    budget: u64,
    optimal: bool,
    pack_stamp: Vec<u32>,
    stamp: u32,
}

/// Keep only minimal edges: containing a sub-edge already forbids the superset.
fn minimal_edges(vertex_count: usize, edges: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut cleaned: Vec<Vec<u32>> = edges
        .into_iter()
        .map(|mut e| {
            e.sort_unstable();
            e.dedup();
            e
        })
        .filter(|e| !e.is_empty() && e.iter().all(|&v| (v as usize) < vertex_count))
        .collect();
    cleaned.sort();
    cleaned.dedup();
    cleaned.sort_by_key(|e| e.len());
    let mut keep: Vec<Vec<u32>> = Vec::with_capacity(cleaned.len());
    'outer: for e in cleaned {
        for prev in &keep {
            if prev.iter().all(|v| e.binary_search(v).is_ok()) {
                continue 'outer;
            }
        }
        keep.push(e);
    }
    keep
}

impl Solver {
    fn set_in(&mut self, v: u32) {
        self.state[v as usize] = VState::In;
        self.kept += 1;
        self.undecided -= 1;
        for &e in &self.incident[v as usize] {
            self.in_cnt[e as usize] += 1;
        }
        self.trail.push(v);
    }

    fn set_out(&mut self, v: u32) {
        self.state[v as usize] = VState::Out;
        self.undecided -= 1;
        for &e in &self.incident[v as usize] {
            self.out_cnt[e as usize] += 1;
        }
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            match self.state[v as usize] {
                VState::In => {
                    self.kept -= 1;
                    for &e in &self.incident[v as usize] {
                        self.in_cnt[e as usize] -= 1;
                    }
                }
                VState::Out => {
                    for &e in &self.incident[v as usize] {
                        self.out_cnt[e as usize] -= 1;
                    }
                }
                VState::Undecided => unreachable!(),
            }
            self.state[v as usize] = VState::Undecided;
            self.undecided += 1;
        }
    }

    /// Would including `v` complete a live edge right now?
    fn completes_edge(&self, v: u32) -> bool {
        self.incident[v as usize].iter().any(|&e| {
            self.out_cnt[e as usize] == 0
                && self.in_cnt[e as usize] + 1 == self.edges[e as usize].len() as u32
        })
    }

    /// Force out the last undecided vertex of every otherwise-included edge.
    /// Returns false on a fully included edge (the branch is infeasible).
    fn propagate(&mut self) -> bool {
        loop {
            let mut fired = false;
            for e in 0..self.edges.len() {
                if self.out_cnt[e] > 0 {
                    continue;
                }
                let len = self.edges[e].len() as u32;
                if self.in_cnt[e] == len {
                    return false;
                }
                if self.in_cnt[e] + 1 == len {
                    let v = *self.edges[e]
                        .iter()
                        .find(|&&v| self.state[v as usize] == VState::Undecided)
                        .expect("counts say one undecided member");
                    self.set_out(v);
                    fired = true;
                }
            }
            if !fired {
                return true;
            }
        }
    }

    /// Greedy packing of live edges that are pairwise disjoint on undecided
    /// vertices; each forces at least one exclusion.
    fn packing_bound(&mut self) -> u64 {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.pack_stamp.fill(0);
            self.stamp = 1;
        }
        let mut pack = 0u64;
        'edges: for e in 0..self.edges.len() {
            if self.out_cnt[e] > 0 {
                continue;
            }
            for &v in &self.edges[e] {
                if self.state[v as usize] == VState::Undecided
                    && self.pack_stamp[v as usize] == self.stamp
                {
                    continue 'edges;
                }
            }
            for &v in &self.edges[e] {
                if self.state[v as usize] == VState::Undecided {
                    self.pack_stamp[v as usize] = self.stamp;
                }
            }
            pack += 1;
        }
        pack
    }

    fn record(&mut self) {
        if self.kept > self.best {
            self.best = self.kept;
            self.best_witness = self
                .state
                .iter()
                .enumerate()
                .filter(|(_, s)| **s == VState::In)
                .map(|(v, _)| v as u32)
                .collect();
        }
    }

    fn search(&mut self, mut cursor: usize) {
        if self.nodes >= self.budget {
            self.optimal = false;
            return;
        }
        self.nodes += 1;
        if self.kept + self.undecided <= self.best {
            return;
        }
        if self.kept + self.undecided - self.packing_bound() <= self.best {
            return;
        }
        let v = loop {
            match self.order.get(cursor) {
                None => {
                    self.record();
                    return;
                }
                Some(&v) if self.state[v as usize] == VState::Undecided => break v,
                Some(_) => cursor += 1,
            }
        };

        if !self.completes_edge(v) {
            let mark = self.trail.len();
            self.set_in(v);
            if self.propagate() {
                self.search(cursor + 1);
            }
            self.undo_to(mark);
        }

        let mark = self.trail.len();
        self.set_out(v);
        self.search(cursor + 1);
        self.undo_to(mark);
    }
}

/// Maximum subset of `0..vertex_count` containing no edge in full.
pub fn max_free_subset(vertex_count: usize, edges: Vec<Vec<u32>>, budget: u64) -> MisOutcome {
    let edges = minimal_edges(vertex_count, edges);
    let mut incident = vec![Vec::new(); vertex_count];
    for (e, edge) in edges.iter().enumerate() {
        for &v in edge {
            incident[v as usize].push(e as u32);
        }
    }
    let mut order: Vec<u32> = (0..vertex_count as u32).collect();
    order.sort_by_key(|&v| (usize::MAX - incident[v as usize].len(), v));

    let mut solver = Solver {
        in_cnt: vec![0; edges.len()],
        out_cnt: vec![0; edges.len()],
        edges,
        incident,
        state: vec![VState::Undecided; vertex_count],
        order,
        kept: 0,
        undecided: vertex_count as u64,
        trail: Vec::new(),
        best: 0,
        best_witness: Vec::new(),
        nodes: 0,
        budget: budget.max(1),
        optimal: true,
        pack_stamp: vec![0; vertex_count],
        stamp: 0,
    };

    // Size-1 edges exclude their vertex outright.
    let singles: Vec<u32> = solver
        .edges
        .iter()
        .filter(|e| e.len() == 1)
        .map(|e| e[0])
        .collect();
    for v in singles {
        if solver.state[v as usize] == VState::Undecided {
            solver.set_out(v);
        }
    }

    // Greedy seed so pruning is active from the first node.
    {
        let mark = solver.trail.len();
        let order = solver.order.clone();
        for v in order {
            if solver.state[v as usize] != VState::Undecided {
                continue;
            }
            if solver.completes_edge(v) {
                solver.set_out(v);
            } else {
                solver.set_in(v);
            }
        }
        solver.record();
        solver.undo_to(mark);
    }

    let root_upper = solver.kept + solver.undecided - solver.packing_bound();
    solver.search(0);

    let upper_bound = if solver.optimal {
        solver.best
    } else {
        root_upper
    };
    MisOutcome {
        size: solver.best,
        witness: solver.best_witness,
        optimal: solver.optimal,
        upper_bound,
        nodes: solver.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference oracle: enumerate every subset.
    fn brute(n: usize, edges: &[Vec<u32>]) -> u64 {
        let mut best = 0u64;
        for mask in 0u32..(1 << n) {
            let ok = edges
                .iter()
                .all(|e| !e.iter().all(|&v| mask & (1 << v) != 0));
            if ok {
                best = best.max(mask.count_ones() as u64);
            }
        }
        best
    }

    #[test]
    fn no_edges_keeps_everything() {
        let out = max_free_subset(5, vec![], 1_000);
        assert_eq!(out.size, 5);
        assert!(out.optimal);
        assert_eq!(out.witness, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn graph_triangle() {
        let out = max_free_subset(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]], 1_000);
        assert_eq!(out.size, 1);
        assert!(out.optimal);
    }

    #[test]
    fn hyperedges_allow_partial_overlap() {
        // Forbid the two triples; pairs are fine.
        let out = max_free_subset(4, vec![vec![0, 1, 2], vec![1, 2, 3]], 1_000);
        assert_eq!(out.size, 3);
        let w = &out.witness;
        assert!(!(w.contains(&0) && w.contains(&1) && w.contains(&2)));
    }

    #[test]
    fn superset_edges_are_dropped() {
        let edges = vec![vec![0, 1], vec![0, 1, 2], vec![2, 3, 0, 1]];
        let out = max_free_subset(4, edges, 1_000);
        assert_eq!(out.size, 3);
    }

    #[test]
    fn size_one_edge_excludes_vertex() {
        let out = max_free_subset(3, vec![vec![1]], 1_000);
        assert_eq!(out.size, 2);
        assert_eq!(out.witness, vec![0, 2]);
    }

    #[test]
    fn budget_exhaustion_is_flagged_with_bounds() {
        let edges: Vec<Vec<u32>> = (0..10u32)
            .flat_map(|a| (a + 1..10).map(move |b| vec![a, b, (a + b) % 10]))
            .filter(|e| e.iter().collect::<std::collections::HashSet<_>>().len() == 3)
            .collect();
        let exact = max_free_subset(10, edges.clone(), u64::MAX);
        assert!(exact.optimal);
        let cut = max_free_subset(10, edges, 2);
        assert!(!cut.optimal);
        assert!(cut.size <= exact.size);
        assert!(cut.upper_bound >= exact.size);
    }

    #[test]
    fn matches_subset_enumeration_on_random_instances() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for n in [6usize, 8, 10] {
            for _ in 0..20 {
                let m = (next() % 12 + 1) as usize;
                let edges: Vec<Vec<u32>> = (0..m)
                    .map(|_| {
                        let size = next() % 3 + 2;
                        (0..size).map(|_| (next() % n as u64) as u32).collect()
                    })
                    .collect();
                let cleaned: Vec<Vec<u32>> = edges
                    .iter()
                    .map(|e| {
                        let mut e = e.clone();
                        e.sort_unstable();
                        e.dedup();
                        e
                    })
                    .collect();
                let expect = brute(n, &cleaned);
                let got = max_free_subset(n, edges, u64::MAX);
                assert!(got.optimal);
                assert_eq!(got.size, expect, "n={n} edges={cleaned:?}");
                for e in &cleaned {
                    assert!(
                        !e.iter().all(|v| got.witness.binary_search(v).is_ok()),
                        "witness contains an edge"
                    );
                }
            }
        }
    }
}
