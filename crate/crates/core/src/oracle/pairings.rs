use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::multiset::Multiset;

use super::next_permutation;

/// Default cap on the number of permutations the pairing oracle may walk.
pub const PAIRING_ORACLE_BUDGET: u64 = 10_000_000;

/// Number of distinct pairings of `s` with `t`, by brute force.
///
/// Both multisets are expanded to sorted sequences; every bijection between
/// the positions induces a multiset of pairs, and the distinct ones are
/// counted. This deliberately shares nothing with the margin-reduction
/// enumeration it is used to check.
pub fn count_pairings_oracle<L, R>(s: &Multiset<L>, t: &Multiset<R>, budget: u64) -> Result<usize>
where
    L: Ord,
    R: Ord,
{
    let left: Vec<&L> = s.elements().collect();
    let right: Vec<&R> = t.elements().collect();
    if left.len() != right.len() {
        return Ok(0);
    }
    let n = left.len();
    let needed = (1..=n as u128).product::<u128>();
    if needed > budget as u128 {
        return Err(Error::OracleBudgetExceeded { needed, budget });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<(&L, &R)>> = BTreeSet::new();
    loop {
        let mut pairs: Vec<(&L, &R)> = (0..n).map(|i| (left[i], right[perm[i]])).collect();
        pairs.sort();
        seen.insert(pairs);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::make_multiset;

    #[test]
    fn small_cases() {
        let count = |s: &[&str], t: &[&str]| {
            count_pairings_oracle(
                &make_multiset(s.iter().copied()),
                &make_multiset(t.iter().copied()),
                PAIRING_ORACLE_BUDGET,
            )
            .unwrap()
        };
        assert_eq!(count(&["a1", "a2"], &["b1", "b2"]), 2);
        assert_eq!(count(&["x", "x", "x"], &["y", "y", "y"]), 1);
        assert_eq!(count(&["a"], &["b", "c"]), 0);
        assert_eq!(count(&[], &[]), 1);
    }

    #[test]
    fn budget() {
        let s = make_multiset(["a", "b", "c", "d"]);
        let err = count_pairings_oracle(&s, &s, 23).unwrap_err();
        assert_eq!(
            err,
            Error::OracleBudgetExceeded {
                needed: 24,
                budget: 23
            }
        );
    }
}
