//! Brute-force oracles for the constructions.
//!
//! Universal properties are checked against a bounded, exhaustively
//! generated family of test computads; the bounds travel with every report.

mod generate;
mod pairings;
mod terminal;
mod up;

pub use generate::{generate_computads, generate_computads_with, GeneratorBounds};
pub use pairings::{count_pairings_oracle, PAIRING_ORACLE_BUDGET};
pub use terminal::{find_terminal, find_terminal_among};
pub use up::{
    check_coequalizer_up, check_product_up, FailureReason, OracleConfig, UpFailure, UpReport,
};

/// Rearranges `v` into the next permutation in lexicographic order. On the
/// last permutation, resets `v` to sorted order and returns `false`.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::next_permutation;

    #[test]
    fn permutations_cycle() {
        let mut v = vec![1, 2, 3];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(v, vec![1, 2, 3]);
        assert_eq!(seen[1], vec![1, 3, 2]);
    }
}
