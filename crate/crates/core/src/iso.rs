//! Isomorphism testing by backtracking over 2-cell bijections.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::computad::Computad;
use crate::error::{Error, Result};
use crate::homs::SearchBudget;
use crate::morphism::Morphism;

/// Per-2-cell invariant: for every 3-cell the cell occurs in, its
/// multiplicity in the source and target together with the boundary sizes.
type Signature = Vec<(usize, usize, usize, usize)>;

pub(crate) fn signatures(x: &Computad) -> Vec<Signature> {
    let mut sigs = vec![Vec::new(); x.num_cells2()];
    for e in 0..x.num_cells3() {
        let src = x.src_idx(e);
        let tgt = x.tgt_idx(e);
        let s: usize = src.iter().map(|&(_, n)| n).sum();
        let t: usize = tgt.iter().map(|&(_, n)| n).sum();
        let mut here: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for &(i, n) in src {
            here.entry(i).or_default().0 += n;
        }
        for &(i, n) in tgt {
            here.entry(i).or_default().1 += n;
        }
        for (i, (ns, nt)) in here {
            sigs[i].push((ns, nt, s, t));
        }
    }
    for s in &mut sigs {
        s.sort_unstable();
    }
    sigs
}

/// An isomorphism `x → y` if one exists.
///
/// Counts, boundary-size profiles and the multiset of 2-cell signatures are
/// compared first. The backtracking step visits the 2-cells of `x` in order
/// and tries same-signature 2-cells of `y` in order, so `x` against itself
/// yields the identity. `budget` bounds the number of search nodes.
pub fn find_isomorphism(
    x: &Arc<Computad>,
    y: &Arc<Computad>,
    budget: SearchBudget,
) -> Result<Option<Morphism>> {
    if x.num_cells2() != y.num_cells2()
        || x.num_cells3() != y.num_cells3()
        || x.boundary_size_profile() != y.boundary_size_profile()
    {
        return Ok(None);
    }
    let sx = signatures(x);
    let sy = signatures(y);
    let (mut a, mut b) = (sx.clone(), sy.clone());
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }

    let candidates: Vec<Vec<usize>> = sx
        .iter()
        .map(|s| (0..y.num_cells2()).filter(|&j| sy[j] == *s).collect())
        .collect();
    let mut search = IsoSearch {
        x,
        y,
        candidates,
        map2: vec![usize::MAX; x.num_cells2()],
        used: vec![false; y.num_cells2()],
        nodes: 0,
        budget,
    };
    match search.extend(0)? {
        Some((map2, map3)) => {
            let iso =
                Morphism::checked_from_indices(x.clone(), y.clone(), map2, map3, "isomorphism")?;
            Ok(Some(iso))
        }
        None => Ok(None),
    }
}

struct IsoSearch<'a> {
    x: &'a Computad,
    y: &'a Computad,
    candidates: Vec<Vec<usize>>,
    map2: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: SearchBudget,
}

impl IsoSearch<'_> {
    fn extend(&mut self, i: usize) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
        self.nodes += 1;
        if self.nodes > self.budget.0 {
            return Err(Error::SearchBudgetExceeded {
                needed: self.nodes as u128,
                budget: self.budget.0,
            });
        }
        if i == self.x.num_cells2() {
            return Ok(self.match_three_cells().map(|m3| (self.map2.clone(), m3)));
        }
        for k in 0..self.candidates[i].len() {
            let j = self.candidates[i][k];
            if self.used[j] {
                continue;
            }
            self.used[j] = true;
            self.map2[i] = j;
            if let Some(found) = self.extend(i + 1)? {
                return Ok(Some(found));
            }
            self.used[j] = false;
        }
        self.map2[i] = usize::MAX;
        Ok(None)
    }

    /// Given a 2-cell bijection, pairs up 3-cells with identical boundaries.
    fn match_three_cells(&self) -> Option<Vec<usize>> {
        type Key = (Vec<(usize, usize)>, Vec<(usize, usize)>);
        let push = |b: &[(usize, usize)]| {
            let mut v: Vec<(usize, usize)> = b.iter().map(|&(i, n)| (self.map2[i], n)).collect();
            v.sort_unstable();
            v
        };
        let mut pool: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
        for c in (0..self.y.num_cells3()).rev() {
            pool.entry((self.y.src_idx(c).clone(), self.y.tgt_idx(c).clone()))
                .or_default()
                .push(c);
        }
        let mut map3 = Vec::with_capacity(self.x.num_cells3());
        for e in 0..self.x.num_cells3() {
            let key = (push(self.x.src_idx(e)), push(self.x.tgt_idx(e)));
            map3.push(pool.get_mut(&key)?.pop()?);
        }
        Some(map3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::computad::ThreeCell;

    fn three(name: &str, src: &str, tgt: &str) -> ThreeCell {
        ThreeCell::new(name, src.parse().unwrap(), tgt.parse().unwrap())
    }

    fn a() -> Arc<Computad> {
        Arc::new(Computad::new("A", ["a1", "a2", "a3"], [three("f", "a1 * a2", "a3")]).unwrap())
    }

    fn b() -> Arc<Computad> {
        Arc::new(Computad::new("B", ["b1", "b2", "b3"], [three("g", "b1 * b2", "b3")]).unwrap())
    }

    #[test]
    fn a_is_isomorphic_to_b() {
        let iso = find_isomorphism(&a(), &b(), SearchBudget::DEFAULT)
            .unwrap()
            .unwrap();
        assert_eq!(iso.apply2("a1").unwrap(), "b1");
        assert_eq!(iso.apply2("a2").unwrap(), "b2");
        assert_eq!(iso.apply2("a3").unwrap(), "b3");
        assert_eq!(iso.apply3("f").unwrap(), "g");
        assert!(iso.inverse().is_some());
    }

    #[test]
    fn self_isomorphism_is_the_identity() {
        let iso = find_isomorphism(&a(), &a(), SearchBudget::DEFAULT)
            .unwrap()
            .unwrap();
        assert!(iso.is_identity());
    }

    #[test]
    fn direction_of_a_cell_matters() {
        let flipped = Arc::new(
            Computad::new("F", ["a1", "a2", "a3"], [three("f", "a3", "a1 * a2")]).unwrap(),
        );
        assert!(find_isomorphism(&a(), &flipped, SearchBudget::DEFAULT)
            .unwrap()
            .is_none());
    }

    #[test]
    fn repeated_versus_distinct_source() {
        // c1*c1 -> c3 plus an isolated c2, against c1*c2 -> c3.
        let x = Arc::new(
            Computad::new("X", ["c1", "c2", "c3"], [three("e", "c1 * c1", "c3")]).unwrap(),
        );
        let y = Arc::new(
            Computad::new("Y", ["c1", "c2", "c3"], [three("e", "c1 * c2", "c3")]).unwrap(),
        );
        assert!(find_isomorphism(&x, &y, SearchBudget::DEFAULT)
            .unwrap()
            .is_none());
    }

    #[test]
    fn parallel_cells_are_matched_one_to_one() {
        let x = Arc::new(
            Computad::new(
                "X",
                ["p", "q"],
                [three("e1", "p", "q"), three("e2", "p", "q")],
            )
            .unwrap(),
        );
        let y = Arc::new(
            Computad::new(
                "Y",
                ["r", "s"],
                [three("d1", "r", "s"), three("d2", "r", "s")],
            )
            .unwrap(),
        );
        let iso = find_isomorphism(&x, &y, SearchBudget::DEFAULT)
            .unwrap()
            .unwrap();
        assert!(iso.is_injective3());
    }

    #[test]
    fn node_budget() {
        let x = Arc::new(Computad::new("X", ["c1", "c2", "c3"], []).unwrap());
        let err = find_isomorphism(&x, &x, SearchBudget(2)).unwrap_err();
        assert!(matches!(err, Error::SearchBudgetExceeded { .. }));
    }
}
