//! Shift automaton of a rank-1 pattern: states are the admissible bit-windows
//! of length D (the pattern diameter); appending a membership bit is allowed
//! exactly when the produced (D+1)-window contains neither the pattern nor
//! its reflection at offset 0. Bi-infinite walks are the tr-free subsets of
//! the integers, and the maximum mean transition weight (the appended bit) is
//! the avoidance density.

use super::{DensityError, Pattern};

#[derive(Clone, Debug)]
pub struct ShiftAutomaton {
    window: usize,
    mask_pattern: u64,
    mask_reflection: u64,
}

impl ShiftAutomaton {
    /// Requires rank 1 and at least two points (diameter >= 1).
    pub fn new(s: &Pattern, ceiling: usize) -> Result<Self, DensityError> {
        if s.rank() != 1 {
            return Err(DensityError::WrongRank {
                expected: 1,
                got: s.rank(),
            });
        }
        let window = s.diameter()[0] as usize;
        if window == 0 || window > ceiling || window >= 63 {
            return Err(DensityError::WindowTooLarge {
                window,
                ceiling: ceiling.min(62),
            });
        }
        let mut mask_pattern = 0u64;
        for p in s.line_points().unwrap() {
            mask_pattern |= 1 << p;
        }
        let mut mask_reflection = 0u64;
        for p in s.reflect().line_points().unwrap() {
            mask_reflection |= 1 << p;
        }
        Ok(ShiftAutomaton {
            window,
            mask_pattern,
            mask_reflection,
        })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Number of states (`2^window`).
    pub fn state_count(&self) -> usize {
        1usize << self.window
    }

    /// May the full `(window+1)`-bit word occur? Bit `i` is membership of the
    /// position `i` steps after the window start.
    pub fn allowed(&self, full: u64) -> bool {
        (full & self.mask_pattern) != self.mask_pattern
            && (full & self.mask_reflection) != self.mask_reflection
    }

    /// Transition `state --append b--> new state`; bit `window-1` of a state
    /// is the newest position.
    pub fn step(&self, state: u64, bit: u64) -> Option<u64> {
        let full = state | (bit << self.window);
        self.allowed(full).then_some(full >> 1)
    }

    /// The two predecessor candidates of `target`, with the appended weight.
    /// Returns `(full_word, predecessor_state)` pairs that are allowed.
    pub fn predecessors(&self, target: u64) -> impl Iterator<Item = u64> + '_ {
        let shifted = target << 1;
        [shifted, shifted | 1]
            .into_iter()
            .filter(|&full| self.allowed(full))
            .map(|full| full & ((1 << self.window) - 1))
    }

    /// Weight of every transition entering `state`: its newest bit.
    pub fn weight_into(&self, state: u64) -> i64 {
        ((state >> (self.window - 1)) & 1) as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_pattern_masks() {
        let s = Pattern::line(&[0, 1]).unwrap();
        let aut = ShiftAutomaton::new(&s, 20).unwrap();
        assert_eq!(aut.window(), 1);
        assert_eq!(aut.state_count(), 2);
        // Word 11 contains {0,1}; anything else is fine.
        assert!(!aut.allowed(0b11));
        assert!(aut.allowed(0b01));
        assert!(aut.allowed(0b10));
        assert!(aut.allowed(0b00));
    }

    #[test]
    fn asymmetric_pattern_checks_reflection() {
        let s = Pattern::line(&[0, 1, 3]).unwrap();
        let aut = ShiftAutomaton::new(&s, 20).unwrap();
        // Pattern mask 0b1011 ({0,1,3}), reflection {0,2,3} = 0b1101.
        assert!(!aut.allowed(0b1011));
        assert!(!aut.allowed(0b1101));
        assert!(!aut.allowed(0b1111));
        assert!(aut.allowed(0b0111));
    }

    #[test]
    fn step_and_predecessors_are_inverse() {
        let s = Pattern::line(&[0, 2, 3]).unwrap();
        let aut = ShiftAutomaton::new(&s, 20).unwrap();
        for state in 0..aut.state_count() as u64 {
            for bit in 0..2u64 {
                if let Some(next) = aut.step(state, bit) {
                    assert!(aut.predecessors(next).any(|p| p == state));
                    assert_eq!(aut.weight_into(next), bit as i64);
                }
            }
        }
    }

    #[test]
    fn ceiling_enforced() {
        let s = Pattern::line(&[0, 25]).unwrap();
        assert!(matches!(
            ShiftAutomaton::new(&s, 20),
            Err(DensityError::WindowTooLarge { window: 25, .. })
        ));
    }
}
