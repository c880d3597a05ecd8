use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::computad::{Computad, ThreeCell};
use crate::multiset::{Label, Multiset};
use crate::par::{self, Strategy};

use super::next_permutation;

/// Size limits for the generated family of test computads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorBounds {
    pub max2cells: usize,
    pub max3cells: usize,
    pub max_boundary_size: usize,
}

impl GeneratorBounds {
    pub const fn new(max2cells: usize, max3cells: usize, max_boundary_size: usize) -> Self {
        GeneratorBounds {
            max2cells,
            max3cells,
            max_boundary_size,
        }
    }
}

impl fmt::Display for GeneratorBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            self.max2cells, self.max3cells, self.max_boundary_size
        )
    }
}

/// Boundary as a count vector over the labels `0..n`.
type Counts = Vec<u8>;
/// A computad up to naming: its 3-cells as sorted `(src, tgt)` count vectors.
type Shape = Vec<(Counts, Counts)>;

/// Every computad within `bounds`, one per isomorphism class.
///
/// 2-cells are named `c1..cn` and 3-cells `e1..em`. Objects are ordered by
/// number of 2-cells, then number of 3-cells, then canonical shape.
pub fn generate_computads(bounds: GeneratorBounds) -> Vec<Arc<Computad>> {
    generate_computads_with(bounds, Strategy::default())
}

pub fn generate_computads_with(bounds: GeneratorBounds, strategy: Strategy) -> Vec<Arc<Computad>> {
    let mut out = Vec::new();
    for n in 0..=bounds.max2cells {
        let boundaries = count_vectors(n, bounds.max_boundary_size);
        let nb = boundaries.len();
        for m in 0..=bounds.max3cells {
            // Non-decreasing sequences of m indices into the nb² boundary pairs.
            let candidates = multisubsets(nb * nb, m);
            let keys = par::map(strategy, &candidates, |choice| {
                let shape: Shape = choice
                    .iter()
                    .map(|&p| (boundaries[p / nb].clone(), boundaries[p % nb].clone()))
                    .collect();
                canonical_shape(n, &shape)
            });
            let unique: BTreeSet<Shape> = keys.into_iter().collect();
            for shape in unique {
                let name = format!("G{}", out.len());
                out.push(Arc::new(realise(name, n, &shape)));
            }
        }
    }
    out
}

fn label(i: usize) -> Label {
    format!("c{}", i + 1)
}

fn realise(name: String, n: usize, shape: &Shape) -> Computad {
    let to_multiset = |counts: &Counts| {
        let mut m = Multiset::new();
        for (i, &k) in counts.iter().enumerate() {
            m.insert(label(i), k as usize);
        }
        m
    };
    let cells3 = shape
        .iter()
        .enumerate()
        .map(|(j, (s, t))| ThreeCell::new(format!("e{}", j + 1), to_multiset(s), to_multiset(t)));
    Computad::new(name, (0..n).map(label), cells3).expect("generated computads are valid")
}

/// All count vectors of length `n` with total at most `max`, in
/// lexicographic order.
fn count_vectors(n: usize, max: usize) -> Vec<Counts> {
    fn go(n: usize, left: usize, cur: &mut Counts, out: &mut Vec<Counts>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k as u8);
            go(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Non-decreasing sequences of length `m` over `0..k`.
fn multisubsets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, m: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in from..k {
            cur.push(i);
            go(k, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, m, 0, &mut Vec::with_capacity(m), &mut out);
    out
}

/// The least relabelling of `shape` among those that order labels by their
/// occurrence signature. Labels with equal signatures are permuted
/// exhaustively; unused labels all share the empty signature and are never
/// permuted, since they do not affect the shape.
pub(crate) fn canonical_shape(n: usize, shape: &Shape) -> Shape {
    let signature = |l: usize| {
        let mut sig: Vec<(u8, u8, usize, usize)> = shape
            .iter()
            .filter(|(s, t)| s[l] + t[l] > 0)
            .map(|(s, t)| {
                let size = |c: &Counts| c.iter().map(|&x| x as usize).sum::<usize>();
                (s[l], t[l], size(s), size(t))
            })
            .collect();
        sig.sort_unstable();
        sig
    };
    let sigs: Vec<_> = (0..n).map(signature).collect();
    let mut labels: Vec<usize> = (0..n).collect();
    // Used labels first; empty signatures sort last.
    labels.sort_by(|&a, &b| (sigs[a].is_empty(), &sigs[a]).cmp(&(sigs[b].is_empty(), &sigs[b])));
    let used = labels.iter().filter(|&&l| !sigs[l].is_empty()).count();

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &l in &labels[..used] {
        match blocks.last_mut() {
            Some(b) if sigs[b[0]] == sigs[l] => b.push(l),
            _ => blocks.push(vec![l]),
        }
    }

    let relabel = |position: &[usize]| -> Shape {
        let mut out: Shape = shape
            .iter()
            .map(|(s, t)| {
                let mut s2 = vec![0; n];
                let mut t2 = vec![0; n];
                for l in 0..n {
                    s2[position[l]] = s[l];
                    t2[position[l]] = t[l];
                }
                (s2, t2)
            })
            .collect();
        out.sort();
        out
    };

    // Each block's labels occupy a fixed run of positions; iterate over all
    // arrangements within every block.
    let mut arrangement: Vec<Vec<usize>> = blocks.clone();
    for b in &mut arrangement {
        b.sort_unstable();
    }
    let mut position = vec![0; n];
    for (p, &l) in labels[used..].iter().enumerate() {
        position[l] = used + p;
    }
    let mut best: Option<Shape> = None;
    loop {
        let mut p = 0;
        for b in &arrangement {
            for &l in b {
                position[l] = p;
                p += 1;
            }
        }
        let candidate = relabel(&position);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
        // Advance the mixed-radix counter of block permutations.
        let mut i = 0;
        loop {
            if i == arrangement.len() {
                return best.expect("at least one arrangement");
            }
            if next_permutation(&mut arrangement[i]) {
                break;
            }
            // Wrapped around to sorted order; carry.
            i += 1;
        }
    }
}
