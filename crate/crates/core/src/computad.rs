//! Finite 2-degenerate 3-computads.
//!
//! A 2-degenerate computad has a single 0-cell and no 1-cells, so only the
//! 2-cells and the 3-cells are stored. Every 3-cell has a source and a target
//! in the free commutative monoid on the 2-cells.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiset::{is_valid_label, Label, Multiset};

/// A named 3-cell generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ThreeCell {
    pub name: Label,
    pub src: Multiset<Label>,
    pub tgt: Multiset<Label>,
}

impl ThreeCell {
    pub fn new(name: impl Into<Label>, src: Multiset<Label>, tgt: Multiset<Label>) -> Self {
        ThreeCell {
            name: name.into(),
            src,
            tgt,
        }
    }
}

/// Something wrong with a computad or a morphism, named by the offending cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    BadLabel(Label),
    DuplicateTwoCell(Label),
    DuplicateThreeCell(Label),
    /// A boundary of `cell` mentions a 2-cell that is not declared.
    UndeclaredBoundaryCell {
        cell: Label,
        label: Label,
    },
    /// A map table has no entry for a cell of the domain.
    Unmapped {
        dim: u8,
        label: Label,
    },
    /// A map table has an entry for something that is not a cell of the domain.
    ForeignEntry {
        dim: u8,
        label: Label,
    },
    /// A cell is sent outside the codomain.
    ImageOutsideCodomain {
        dim: u8,
        label: Label,
        image: Label,
    },
    SourceMismatch {
        cell: Label,
        expected: Multiset<Label>,
        found: Multiset<Label>,
    },
    TargetMismatch {
        cell: Label,
        expected: Multiset<Label>,
        found: Multiset<Label>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadLabel(l) => write!(f, "`{l}` is not a valid label"),
            Violation::DuplicateTwoCell(l) => write!(f, "2-cell `{l}` is declared twice"),
            Violation::DuplicateThreeCell(l) => write!(f, "3-cell `{l}` is declared twice"),
            Violation::UndeclaredBoundaryCell { cell, label } => {
                write!(f, "3-cell `{cell}` mentions undeclared 2-cell `{label}`")
            }
            Violation::Unmapped { dim, label } => write!(f, "{dim}-cell `{label}` is not mapped"),
            Violation::ForeignEntry { dim, label } => {
                write!(f, "`{label}` is not a {dim}-cell of the domain")
            }
            Violation::ImageOutsideCodomain { dim, label, image } => write!(
                f,
                "{dim}-cell `{label}` is sent to `{image}`, which is not in the codomain"
            ),
            Violation::SourceMismatch {
                cell,
                expected,
                found,
            } => write!(
                f,
                "source of `{cell}` pushes forward to {found} but its image has source {expected}"
            ),
            Violation::TargetMismatch {
                cell,
                expected,
                found,
            } => write!(
                f,
                "target of `{cell}` pushes forward to {found} but its image has target {expected}"
            ),
        }
    }
}

/// Boundary as sorted `(2-cell index, multiplicity)` entries.
pub(crate) type IndexedBoundary = Vec<(usize, usize)>;

/// A valid finite 2-degenerate 3-computad.
///
/// 2-cells are kept sorted and 3-cells are kept sorted by name, so cells can
/// be addressed by position. Equality compares cells only, not the name.
#[derive(Clone)]
pub struct Computad {
    name: String,
    cells2: Vec<Label>,
    cells3: Vec<ThreeCell>,
    src_idx: Vec<IndexedBoundary>,
    tgt_idx: Vec<IndexedBoundary>,
}

impl Computad {
    /// Builds a computad, rejecting it with every violation found.
    pub fn new<S: Into<Label>>(
        name: impl Into<String>,
        cells2: impl IntoIterator<Item = S>,
        cells3: impl IntoIterator<Item = ThreeCell>,
    ) -> Result<Self> {
        let name = name.into();
        let mut cells2: Vec<Label> = cells2.into_iter().map(Into::into).collect();
        let mut cells3: Vec<ThreeCell> = cells3.into_iter().collect();
        let violations = validate_computad(&cells2, &cells3);
        if !violations.is_empty() {
            return Err(Error::InvalidComputad { name, violations });
        }
        cells2.sort();
        cells3.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(Self::from_sorted(name, cells2, cells3))
    }

    /// The computad with no cells beyond the unique 0-cell.
    pub fn empty(name: impl Into<String>) -> Self {
        Self::from_sorted(name.into(), Vec::new(), Vec::new())
    }

    /// `cells2` sorted and duplicate-free, `cells3` sorted by name, and every
    /// boundary inside `cells2`.
    pub(crate) fn from_sorted(name: String, cells2: Vec<Label>, cells3: Vec<ThreeCell>) -> Self {
        let index = |m: &Multiset<Label>| -> IndexedBoundary {
            m.iter()
                .map(|(l, n)| {
                    let i = cells2
                        .binary_search(l)
                        .expect("boundary label is a declared 2-cell");
                    (i, n)
                })
                .collect()
        };
        let src_idx = cells3.iter().map(|c| index(&c.src)).collect();
        let tgt_idx = cells3.iter().map(|c| index(&c.tgt)).collect();
        Computad {
            name,
            cells2,
            cells3,
            src_idx,
            tgt_idx,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// 2-cell labels in sorted order.
    pub fn cells2(&self) -> &[Label] {
        &self.cells2
    }

    /// 3-cells in name order.
    pub fn cells3(&self) -> &[ThreeCell] {
        &self.cells3
    }

    pub fn num_cells2(&self) -> usize {
        self.cells2.len()
    }

    pub fn num_cells3(&self) -> usize {
        self.cells3.len()
    }

    pub fn index2(&self, label: &str) -> Option<usize> {
        self.cells2.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn index3(&self, name: &str) -> Option<usize> {
        self.cells3
            .binary_search_by(|c| c.name.as_str().cmp(name))
            .ok()
    }

    pub fn three_cell(&self, name: &str) -> Option<&ThreeCell> {
        self.index3(name).map(|i| &self.cells3[i])
    }

    /// Sorted `(|src|, |tgt|)` over all 3-cells; an isomorphism invariant.
    pub fn boundary_size_profile(&self) -> Vec<(usize, usize)> {
        let mut profile: Vec<_> = self
            .cells3
            .iter()
            .map(|c| (c.src.size(), c.tgt.size()))
            .collect();
        profile.sort_unstable();
        profile
    }

    /// Re-checks the invariants; always empty for a constructed value.
    pub fn validate(&self) -> Vec<Violation> {
        validate_computad(&self.cells2, &self.cells3)
    }

    pub(crate) fn src_idx(&self, e: usize) -> &IndexedBoundary {
        &self.src_idx[e]
    }

    pub(crate) fn tgt_idx(&self, e: usize) -> &IndexedBoundary {
        &self.tgt_idx[e]
    }
}

impl PartialEq for Computad {
    fn eq(&self, other: &Self) -> bool {
        self.cells2 == other.cells2 && self.cells3 == other.cells3
    }
}

impl Eq for Computad {}

impl fmt::Debug for Computad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Computad")
            .field("name", &self.name)
            .field("cells2", &self.cells2)
            .field("cells3", &self.cells3)
            .finish()
    }
}

/// Checks the computad invariants on raw data. An empty result means valid.
pub fn validate_computad(cells2: &[Label], cells3: &[ThreeCell]) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut declared = BTreeSet::new();
    for l in cells2 {
        if !is_valid_label(l) {
            violations.push(Violation::BadLabel(l.clone()));
        }
        if !declared.insert(l.as_str()) {
            violations.push(Violation::DuplicateTwoCell(l.clone()));
        }
    }
    let mut names = BTreeSet::new();
    for c in cells3 {
        if !is_valid_label(&c.name) {
            violations.push(Violation::BadLabel(c.name.clone()));
        }
        if !names.insert(c.name.as_str()) {
            violations.push(Violation::DuplicateThreeCell(c.name.clone()));
        }
        let mut undeclared: BTreeSet<&Label> = BTreeSet::new();
        for l in c.src.support().chain(c.tgt.support()) {
            if !declared.contains(l.as_str()) {
                undeclared.insert(l);
            }
        }
        violations.extend(
            undeclared
                .into_iter()
                .map(|l| Violation::UndeclaredBoundaryCell {
                    cell: c.name.clone(),
                    label: l.clone(),
                }),
        );
    }
    violations
}
