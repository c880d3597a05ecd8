//! Exhaustive enumeration of hom-sets.

use std::sync::Arc;

use crate::computad::Computad;
use crate::error::{Error, Result};
use crate::morphism::Morphism;

/// Upper bound on the size of a naive search space, in candidate maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget(pub u64);

impl SearchBudget {
    pub const DEFAULT: SearchBudget = SearchBudget(10_000_000);

    pub fn unlimited() -> Self {
        SearchBudget(u64::MAX)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `|Y₂|^|X₂| · |Y₃|^|X₃|`, saturating.
pub fn naive_search_size(x: &Computad, y: &Computad) -> u128 {
    let pow = |base: usize, exp: usize| -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..exp {
            acc = acc.saturating_mul(base as u128);
        }
        acc
    };
    pow(y.num_cells2(), x.num_cells2()).saturating_mul(pow(y.num_cells3(), x.num_cells3()))
}

fn check_budget(x: &Computad, y: &Computad, budget: SearchBudget) -> Result<()> {
    let needed = naive_search_size(x, y);
    if needed > budget.0 as u128 {
        return Err(Error::SearchBudgetExceeded {
            needed,
            budget: budget.0,
        });
    }
    Ok(())
}

/// Every morphism `x → y`, once each, ordered lexicographically by the
/// 2-cell table and then the 3-cell table.
pub fn enumerate_homs(
    x: &Arc<Computad>,
    y: &Arc<Computad>,
    budget: SearchBudget,
) -> Result<Vec<Morphism>> {
    let mut tables = Vec::new();
    visit_homs(x, y, budget, |m2, m3| {
        tables.push((m2.to_vec(), m3.to_vec()))
    })?;
    tables.sort_unstable();
    Ok(tables
        .into_iter()
        .map(|(m2, m3)| Morphism::from_indices(x.clone(), y.clone(), m2, m3))
        .collect())
}

/// Number of morphisms `x → y`.
pub fn count_homs(x: &Computad, y: &Computad, budget: SearchBudget) -> Result<u64> {
    let mut n = 0u64;
    visit_homs(x, y, budget, |_, _| n += 1)?;
    Ok(n)
}

/// Calls `visit` with the position tables of every morphism `x → y`, in no
/// particular order.
///
/// 2-cells that occur in some boundary are assigned first, pruning as soon as
/// a partially pushed-forward boundary fits no 3-cell of `y`. The remaining
/// 2-cells are unconstrained and the 3-cell images are chosen last among the
/// cells with exactly matching boundaries.
pub(crate) fn visit_homs(
    x: &Computad,
    y: &Computad,
    budget: SearchBudget,
    mut visit: impl FnMut(&[usize], &[usize]),
) -> Result<()> {
    check_budget(x, y, budget)?;
    let Some(mut search) = HomSearch::new(x, y) else {
        return Ok(());
    };
    search.assign(0, &mut visit);
    Ok(())
}

struct HomSearch<'a> {
    x: &'a Computad,
    y: &'a Computad,
    /// Dense boundary counts of each 3-cell of `y`.
    y_src: Vec<Vec<usize>>,
    y_tgt: Vec<Vec<usize>>,
    /// Size-compatible targets for each 3-cell of `x`.
    candidates: Vec<Vec<usize>>,
    /// 2-cells of `x` in assignment order: constrained ones first.
    order: Vec<usize>,
    constrained: usize,
    /// 3-cells of `x` whose boundary mentions each 2-cell.
    occurs: Vec<Vec<usize>>,
    map2: Vec<usize>,
    assigned: Vec<bool>,
    scratch_src: Vec<usize>,
    scratch_tgt: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl<'a> HomSearch<'a> {
    fn new(x: &'a Computad, y: &'a Computad) -> Option<Self> {
        if x.num_cells2() > 0 && y.num_cells2() == 0 {
            return None;
        }
        let dense = |b: &[(usize, usize)]| {
            let mut v = vec![0; y.num_cells2()];
            for &(i, n) in b {
                v[i] = n;
            }
            v
        };
        let y_src: Vec<Vec<usize>> = (0..y.num_cells3()).map(|c| dense(y.src_idx(c))).collect();
        let y_tgt: Vec<Vec<usize>> = (0..y.num_cells3()).map(|c| dense(y.tgt_idx(c))).collect();

        let size = |b: &[(usize, usize)]| b.iter().map(|&(_, n)| n).sum::<usize>();
        let mut candidates = Vec::with_capacity(x.num_cells3());
        for e in 0..x.num_cells3() {
            let (s, t) = (size(x.src_idx(e)), size(x.tgt_idx(e)));
            let fits: Vec<usize> = (0..y.num_cells3())
                .filter(|&c| size(y.src_idx(c)) == s && size(y.tgt_idx(c)) == t)
                .collect();
            if fits.is_empty() {
                return None;
            }
            candidates.push(fits);
        }

        let mut occurs = vec![Vec::new(); x.num_cells2()];
        // Most constrained 3-cells first, so their 2-cells are fixed early.
        let mut cells: Vec<usize> = (0..x.num_cells3()).collect();
        cells.sort_by_key(|&e| candidates[e].len());
        let mut order = Vec::with_capacity(x.num_cells2());
        let mut placed = vec![false; x.num_cells2()];
        for &e in &cells {
            for &(i, _) in x.src_idx(e).iter().chain(x.tgt_idx(e)) {
                if !occurs[i].contains(&e) {
                    occurs[i].push(e);
                }
                if !placed[i] {
                    placed[i] = true;
                    order.push(i);
                }
            }
        }
        let constrained = order.len();
        order.extend((0..x.num_cells2()).filter(|&i| !placed[i]));

        Some(HomSearch {
            x,
            y,
            y_src,
            y_tgt,
            candidates,
            order,
            constrained,
            occurs,
            map2: vec![UNSET; x.num_cells2()],
            assigned: vec![false; x.num_cells2()],
            scratch_src: vec![0; y.num_cells2()],
            scratch_tgt: vec![0; y.num_cells2()],
        })
    }

    /// Whether the assigned part of each boundary of `e` fits inside some
    /// candidate image.
    fn feasible(&mut self, e: usize) -> bool {
        self.scratch_src.iter_mut().for_each(|v| *v = 0);
        self.scratch_tgt.iter_mut().for_each(|v| *v = 0);
        for &(i, n) in self.x.src_idx(e) {
            if self.assigned[i] {
                self.scratch_src[self.map2[i]] += n;
            }
        }
        for &(i, n) in self.x.tgt_idx(e) {
            if self.assigned[i] {
                self.scratch_tgt[self.map2[i]] += n;
            }
        }
        let (src, tgt) = (&self.scratch_src, &self.scratch_tgt);
        self.candidates[e].iter().any(|&c| {
            src.iter().zip(&self.y_src[c]).all(|(a, b)| a <= b)
                && tgt.iter().zip(&self.y_tgt[c]).all(|(a, b)| a <= b)
        })
    }

    fn assign(&mut self, depth: usize, visit: &mut impl FnMut(&[usize], &[usize])) {
        if depth == self.constrained {
            self.finish(visit);
            return;
        }
        let cell = self.order[depth];
        for image in 0..self.y.num_cells2() {
            self.map2[cell] = image;
            self.assigned[cell] = true;
            let ok = (0..self.occurs[cell].len()).all(|k| {
                let e = self.occurs[cell][k];
                self.feasible(e)
            });
            if ok {
                self.assign(depth + 1, visit);
            }
        }
        self.assigned[cell] = false;
        self.map2[cell] = UNSET;
    }

    /// All constrained 2-cells are set: boundaries are now fully determined.
    fn finish(&mut self, visit: &mut impl FnMut(&[usize], &[usize])) {
        let mut matches: Vec<Vec<usize>> = Vec::with_capacity(self.x.num_cells3());
        for e in 0..self.x.num_cells3() {
            // Sizes agree, so containment of the full push means equality.
            self.feasible(e);
            let (src, tgt) = (&self.scratch_src, &self.scratch_tgt);
            let exact: Vec<usize> = self.candidates[e]
                .iter()
                .copied()
                .filter(|&c| *src == self.y_src[c] && *tgt == self.y_tgt[c])
                .collect();
            if exact.is_empty() {
                return;
            }
            matches.push(exact);
        }
        let free: Vec<usize> = self.order[self.constrained..].to_vec();
        let mut map2 = self.map2.clone();
        let n2 = self.y.num_cells2();
        let mut map3 = vec![0; self.x.num_cells3()];
        odometer(&vec![n2; free.len()], |digits| {
            for (&cell, &d) in free.iter().zip(digits) {
                map2[cell] = d;
            }
            let sizes: Vec<usize> = matches.iter().map(Vec::len).collect();
            odometer(&sizes, |choice| {
                for (e, &k) in choice.iter().enumerate() {
                    map3[e] = matches[e][k];
                }
                visit(&map2, &map3);
            });
        });
    }
}

/// Visits every digit vector `d` with `d[i] < radix[i]`; once for the empty
/// vector, never if some radix is zero.
fn odometer(radix: &[usize], mut f: impl FnMut(&[usize])) {
    if radix.contains(&0) {
        return;
    }
    let mut digits = vec![0; radix.len()];
    loop {
        f(&digits);
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < radix[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
