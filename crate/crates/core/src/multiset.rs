//! Finite multisets, i.e. elements of the free commutative monoid on an
//! alphabet, and pairings: multisets over a product alphabet with prescribed
//! projections.
//!
//! The composite `a.b = b.a` of degenerate 2-cells is commutative, so the
//! boundary of a 3-cell is a multiset of 2-cell labels rather than a word.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cell names are opaque strings.
pub type Label = String;

/// A finitely supported counted collection.
///
/// Absent labels have multiplicity zero and are never stored, so two
/// multisets are equal exactly when their count maps are. Multisets are
/// ordered by comparing their sorted element lists (with repetition)
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multiset<L: Ord> {
    counts: BTreeMap<L, usize>,
}

impl<L: Ord> Default for Multiset<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Ord> Multiset<L> {
    /// The empty multiset, the unit of [`Multiset::sum`].
    pub fn new() -> Self {
        Multiset {
            counts: BTreeMap::new(),
        }
    }

    pub fn singleton(label: L) -> Self {
        let mut m = Self::new();
        m.insert(label, 1);
        m
    }

    /// Adds `n` copies of `label`.
    pub fn insert(&mut self, label: L, n: usize) {
        if n > 0 {
            *self.counts.entry(label).or_insert(0) += n;
        }
    }

    pub fn count(&self, label: &L) -> usize {
        self.counts.get(label).copied().unwrap_or(0)
    }

    /// Total number of elements counted with multiplicity.
    pub fn size(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Distinct labels with their multiplicities, in label order.
    pub fn iter(&self) -> impl Iterator<Item = (&L, usize)> + '_ {
        self.counts.iter().map(|(l, &n)| (l, n))
    }

    pub fn support(&self) -> impl Iterator<Item = &L> + '_ {
        self.counts.keys()
    }

    /// All elements in sorted order, each repeated by its multiplicity.
    pub fn elements(&self) -> impl Iterator<Item = &L> + '_ {
        self.counts
            .iter()
            .flat_map(|(l, &n)| std::iter::repeat_n(l, n))
    }

    /// Pointwise sum of counts: the monoid operation.
    pub fn sum(&self, other: &Self) -> Self
    where
        L: Clone,
    {
        let mut out = self.clone();
        for (l, n) in other.iter() {
            out.insert(l.clone(), n);
        }
        out
    }

    /// `self ⊆ other` as multisets.
    pub fn is_submultiset(&self, other: &Self) -> bool {
        self.iter().all(|(l, n)| other.count(l) >= n)
    }

    /// Image of the multiset along a total function on labels.
    pub fn map<M: Ord>(&self, mut f: impl FnMut(&L) -> M) -> Multiset<M> {
        let mut out = Multiset::new();
        for (l, n) in self.iter() {
            out.insert(f(l), n);
        }
        out
    }

    /// Image of the multiset along a partial function, failing on the first
    /// label `f` does not cover.
    pub fn try_map<M: Ord>(&self, mut f: impl FnMut(&L) -> Option<M>) -> Result<Multiset<M>>
    where
        L: fmt::Display,
    {
        let mut out = Multiset::new();
        for (l, n) in self.iter() {
            let image = f(l).ok_or_else(|| Error::UnmappedLabel(l.to_string()))?;
            out.insert(image, n);
        }
        Ok(out)
    }

    /// The induced monoid map `f^*` applied to `self`: counts of labels with a
    /// common image are added together.
    pub fn push_forward<M: Ord + Clone>(&self, f: &BTreeMap<L, M>) -> Result<Multiset<M>>
    where
        L: fmt::Display,
    {
        self.try_map(|l| f.get(l).cloned())
    }
}

impl<L: Ord> FromIterator<L> for Multiset<L> {
    fn from_iter<I: IntoIterator<Item = L>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for l in iter {
            m.insert(l, 1);
        }
        m
    }
}

impl<L: Ord> Ord for Multiset<L> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

impl<L: Ord> PartialOrd for Multiset<L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: Ord + fmt::Debug> fmt::Debug for Multiset<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.counts.iter()).finish()
    }
}

/// Builds a multiset from a list of labels, counting repetitions.
pub fn make_multiset<L: Ord, I: IntoIterator<Item = L>>(elements: I) -> Multiset<L> {
    elements.into_iter().collect()
}

/// `true` if `label` can be written in the text formats: non-empty, no
/// whitespace, none of the reserved tokens `*`, `:`, `->`, and not the unit
/// symbol `1`.
pub fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && label != "1"
        && !label.contains("->")
        && !label
            .chars()
            .any(|c| c.is_whitespace() || c == '*' || c == ':')
}

/// `a1 * a2 * a2`, labels sorted, `1` for the empty multiset.
impl<L: Ord + fmt::Display> fmt::Display for Multiset<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Multiset<Label> {
    type Err = Error;

    /// Parses `*`-separated labels; `1` factors are units. Errors carry line 0;
    /// file parsers rewrite the line number.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut m = Multiset::new();
        if s.is_empty() {
            return Err(Error::parse(0, "a multiset (use `1` for the empty one)", s));
        }
        for token in s.split('*') {
            let token = token.trim();
            if token == "1" {
                continue;
            }
            if !is_valid_label(token) {
                return Err(Error::parse(0, "a label", token));
            }
            m.insert(token.to_string(), 1);
        }
        Ok(m)
    }
}

/// A multiset over `L × R`, recording one way of matching the elements of a
/// left multiset with those of a right multiset of the same size.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pairing<L: Ord, R: Ord> {
    pairs: Multiset<(L, R)>,
}

impl<L: Ord + Clone, R: Ord + Clone> Pairing<L, R> {
    pub fn new(pairs: Multiset<(L, R)>) -> Self {
        Pairing { pairs }
    }

    pub fn pairs(&self) -> &Multiset<(L, R)> {
        &self.pairs
    }

    pub fn into_pairs(self) -> Multiset<(L, R)> {
        self.pairs
    }

    pub fn size(&self) -> usize {
        self.pairs.size()
    }

    pub fn project_left(&self) -> Multiset<L> {
        project_left(&self.pairs)
    }

    pub fn project_right(&self) -> Multiset<R> {
        project_right(&self.pairs)
    }

    /// The same pairing read over `R × L`.
    pub fn swap(&self) -> Pairing<R, L> {
        Pairing::new(self.pairs.map(|(l, r)| (r.clone(), l.clone())))
    }
}

impl<L: Ord + fmt::Debug, R: Ord + fmt::Debug> fmt::Debug for Pairing<L, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pairs.fmt(f)
    }
}

/// `(a1,b1) * (a2,b2)`.
impl<L: Ord + fmt::Display, R: Ord + fmt::Display> fmt::Display for Pairing<L, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("1");
        }
        for (i, (l, r)) in self.pairs.elements().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "({l},{r})")?;
        }
        Ok(())
    }
}

pub fn project_left<L: Ord + Clone, R: Ord>(pairs: &Multiset<(L, R)>) -> Multiset<L> {
    pairs.map(|(l, _)| l.clone())
}

pub fn project_right<L: Ord, R: Ord + Clone>(pairs: &Multiset<(L, R)>) -> Multiset<R> {
    pairs.map(|(_, r)| r.clone())
}

/// Every multiset over `L × R` whose projections are `left` and `right`.
///
/// Equivalently, every non-negative integer matrix with row sums given by the
/// multiplicities of `left` and column sums by those of `right`. The matrix is
/// filled cell by cell in lexicographic order, choosing each entry and
/// recursing on the reduced margins. The result is sorted, and empty iff the
/// sizes differ.
pub fn enumerate_pairings<L, R>(left: &Multiset<L>, right: &Multiset<R>) -> Vec<Pairing<L, R>>
where
    L: Ord + Clone,
    R: Ord + Clone,
{
    if left.size() != right.size() {
        return Vec::new();
    }
    let rows: Vec<(&L, usize)> = left.iter().collect();
    let cols: Vec<(&R, usize)> = right.iter().collect();
    let mut search = MarginSearch {
        row_rem: rows.iter().map(|&(_, n)| n).collect(),
        col_rem: cols.iter().map(|&(_, n)| n).collect(),
        entries: vec![0; rows.len() * cols.len()],
        found: Vec::new(),
    };
    search.fill(0);

    let width = cols.len();
    let mut out: Vec<Pairing<L, R>> = search
        .found
        .into_iter()
        .map(|entries| {
            let mut pairs = Multiset::new();
            for (cell, n) in entries.into_iter().enumerate() {
                let (l, r) = (rows[cell / width].0, cols[cell % width].0);
                pairs.insert((l.clone(), r.clone()), n);
            }
            Pairing::new(pairs)
        })
        .collect();
    out.sort();
    out
}

struct MarginSearch {
    row_rem: Vec<usize>,
    col_rem: Vec<usize>,
    entries: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl MarginSearch {
    fn fill(&mut self, cell: usize) {
        let width = self.col_rem.len();
        if cell == self.entries.len() {
            // Row sums are exhausted by construction; columns must be too.
            if self.col_rem.iter().all(|&c| c == 0) {
                self.found.push(self.entries.clone());
            }
            return;
        }
        let (i, j) = (cell / width, cell % width);
        let hi = self.row_rem[i].min(self.col_rem[j]);
        // The last cell of a row takes whatever the row still needs.
        let lo = if j + 1 == width { self.row_rem[i] } else { 0 };
        if lo > hi {
            return;
        }
        for n in lo..=hi {
            self.entries[cell] = n;
            self.row_rem[i] -= n;
            self.col_rem[j] -= n;
            self.fill(cell + 1);
            self.row_rem[i] += n;
            self.col_rem[j] += n;
        }
        self.entries[cell] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(s: &str) -> Multiset<Label> {
        s.parse().unwrap()
    }

    fn pairs(list: &[(&str, &str)]) -> Multiset<(Label, Label)> {
        list.iter()
            .map(|&(l, r)| (l.to_string(), r.to_string()))
            .collect()
    }

    #[test]
    fn make_multiset_counts_occurrences() {
        let m = make_multiset(["a1", "a2"]);
        assert_eq!(m.count(&"a1"), 1);
        assert_eq!(m.count(&"a2"), 1);
        assert_eq!(m.size(), 2);

        assert!(make_multiset(Vec::<&str>::new()).is_empty());

        let m = make_multiset(["x", "x", "y"]);
        assert_eq!(m.count(&"x"), 2);
        assert_eq!(m.count(&"y"), 1);
        assert_eq!(m.count(&"z"), 0);
    }

    #[test]
    fn sum_is_pointwise() {
        assert_eq!(ms("a").sum(&ms("b")), ms("a * b"));
        assert_eq!(ms("a * b").sum(&Multiset::new()), ms("a * b"));
        assert_eq!(ms("a").sum(&ms("a * a")), ms("a * a * a"));
    }

    #[test]
    fn push_forward_merges_identified_labels() {
        let f: BTreeMap<Label, Label> = [("a1", "abar"), ("a2", "abar")]
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let image = ms("a1 * a2").push_forward(&f).unwrap();
        assert_eq!(image, ms("abar * abar"));

        let g: BTreeMap<Label, Label> = [("x", "a1"), ("y", "a3")]
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(ms("x").push_forward(&g).unwrap(), ms("a1"));
        assert_eq!(
            ms("z").push_forward(&g),
            Err(Error::UnmappedLabel("z".into()))
        );
    }

    #[test]
    fn projections() {
        let p = pairs(&[("a1", "b1"), ("a2", "b2")]);
        assert_eq!(project_left(&p), ms("a1 * a2"));
        let p = pairs(&[("a1", "b2"), ("a2", "b1")]);
        assert_eq!(project_right(&p), ms("b1 * b2"));
        assert!(project_left(&pairs(&[])).is_empty());
    }

    #[test]
    fn pairings_of_two_distinct_pairs() {
        let found = enumerate_pairings(&ms("a1 * a2"), &ms("b1 * b2"));
        assert_eq!(
            found,
            vec![
                Pairing::new(pairs(&[("a1", "b1"), ("a2", "b2")])),
                Pairing::new(pairs(&[("a1", "b2"), ("a2", "b1")])),
            ]
        );
    }

    #[test]
    fn pairings_of_mismatched_sizes_are_empty() {
        assert!(enumerate_pairings(&ms("a"), &ms("b * c")).is_empty());
    }

    #[test]
    fn repeated_labels_are_indistinguishable() {
        let found = enumerate_pairings(&ms("x * x"), &ms("y * z"));
        assert_eq!(found, vec![Pairing::new(pairs(&[("x", "y"), ("x", "z")]))]);
    }

    #[test]
    fn empty_margins_have_the_empty_pairing() {
        let found = enumerate_pairings(&Multiset::<Label>::new(), &Multiset::<Label>::new());
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].size(), 0);
    }

    #[test]
    fn ordering_compares_expanded_lists() {
        // [(a,b),(a,b)] < [(a,b),(a,c)] even though the count maps compare the
        // other way round.
        let doubled = pairs(&[("a", "b"), ("a", "b")]);
        let mixed = pairs(&[("a", "b"), ("a", "c")]);
        assert!(doubled < mixed);
    }

    #[test]
    fn text_syntax() {
        assert_eq!(ms("a2*a1 *a1").to_string(), "a1 * a1 * a2");
        assert_eq!(ms("1").to_string(), "1");
        assert!(ms("1").is_empty());
        assert!("a * * b".parse::<Multiset<Label>>().is_err());
        assert!("".parse::<Multiset<Label>>().is_err());
        assert!("a -> b".parse::<Multiset<Label>>().is_err());
    }

    #[test]
    fn label_rules() {
        assert!(is_valid_label("(a1,b1)"));
        assert!(is_valid_label("[a1|a2]"));
        assert!(is_valid_label("(f,g)#2"));
        assert!(!is_valid_label("1"));
        assert!(!is_valid_label("a b"));
        assert!(!is_valid_label("a->b"));
        assert!(!is_valid_label("a:b"));
    }
}
