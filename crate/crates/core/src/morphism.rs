//! Morphisms of 2-degenerate computads.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::computad::{Computad, Violation};
use crate::error::{Error, Result};
use crate::multiset::{Label, Multiset};

/// A pair of maps on 2-cells and 3-cells commuting serially with source and
/// target: for each 3-cell `e`, `f₂*(src e) = src(f₃ e)` and likewise for the
/// target.
///
/// The maps are stored as position tables over the sorted cells of the
/// domain. Two morphisms are equal when their endpoints are structurally equal
/// and their tables agree.
#[derive(Clone)]
pub struct Morphism {
    dom: Arc<Computad>,
    cod: Arc<Computad>,
    map2: Vec<usize>,
    map3: Vec<usize>,
}

impl Morphism {
    /// Builds a morphism from label tables, rejecting it with every
    /// violation found.
    pub fn new(
        dom: Arc<Computad>,
        cod: Arc<Computad>,
        map2: &BTreeMap<Label, Label>,
        map3: &BTreeMap<Label, Label>,
    ) -> Result<Self> {
        let violations = validate_morphism(&dom, &cod, map2, map3);
        if !violations.is_empty() {
            return Err(Error::InvalidMorphism {
                name: format!("{} -> {}", dom.name(), cod.name()),
                violations,
            });
        }
        let map2 = dom
            .cells2()
            .iter()
            .map(|l| cod.index2(&map2[l]).expect("validated"))
            .collect();
        let map3 = dom
            .cells3()
            .iter()
            .map(|c| cod.index3(&map3[&c.name]).expect("validated"))
            .collect();
        Ok(Morphism {
            dom,
            cod,
            map2,
            map3,
        })
    }

    /// Tables are indexed by position; callers guarantee validity.
    pub(crate) fn from_indices(
        dom: Arc<Computad>,
        cod: Arc<Computad>,
        map2: Vec<usize>,
        map3: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(map2.len(), dom.num_cells2());
        debug_assert_eq!(map3.len(), dom.num_cells3());
        Morphism {
            dom,
            cod,
            map2,
            map3,
        }
    }

    /// Like [`Morphism::from_indices`] but checks the boundary condition,
    /// reporting a failure as an internal error.
    pub(crate) fn checked_from_indices(
        dom: Arc<Computad>,
        cod: Arc<Computad>,
        map2: Vec<usize>,
        map3: Vec<usize>,
        what: &str,
    ) -> Result<Self> {
        let m = Self::from_indices(dom, cod, map2, map3);
        let violations = m.validate();
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(Error::Internal(format!(
                "{what} is not a morphism: {}",
                violations
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            )))
        }
    }

    pub fn identity(obj: Arc<Computad>) -> Self {
        let map2 = (0..obj.num_cells2()).collect();
        let map3 = (0..obj.num_cells3()).collect();
        Morphism {
            dom: obj.clone(),
            cod: obj,
            map2,
            map3,
        }
    }

    pub fn dom(&self) -> &Arc<Computad> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Computad> {
        &self.cod
    }

    pub(crate) fn map2_indices(&self) -> &[usize] {
        &self.map2
    }

    pub(crate) fn map3_indices(&self) -> &[usize] {
        &self.map3
    }

    /// Image of a 2-cell of the domain.
    pub fn apply2(&self, label: &str) -> Option<&Label> {
        let i = self.dom.index2(label)?;
        Some(&self.cod.cells2()[self.map2[i]])
    }

    /// Image of a 3-cell of the domain.
    pub fn apply3(&self, name: &str) -> Option<&Label> {
        let i = self.dom.index3(name)?;
        Some(&self.cod.cells3()[self.map3[i]].name)
    }

    /// `(cell, image)` on 2-cells, in domain order.
    pub fn table2(&self) -> impl Iterator<Item = (&Label, &Label)> + '_ {
        self.dom
            .cells2()
            .iter()
            .zip(&self.map2)
            .map(|(l, &i)| (l, &self.cod.cells2()[i]))
    }

    /// `(cell, image)` on 3-cells, in domain order.
    pub fn table3(&self) -> impl Iterator<Item = (&Label, &Label)> + '_ {
        self.dom
            .cells3()
            .iter()
            .zip(&self.map3)
            .map(|(c, &i)| (&c.name, &self.cod.cells3()[i].name))
    }

    pub fn map2_table(&self) -> BTreeMap<Label, Label> {
        self.table2().map(|(a, b)| (a.clone(), b.clone())).collect()
    }

    pub fn map3_table(&self) -> BTreeMap<Label, Label> {
        self.table3().map(|(a, b)| (a.clone(), b.clone())).collect()
    }

    /// `f₂*` on a multiset of domain 2-cells.
    pub fn push_forward(&self, m: &Multiset<Label>) -> Result<Multiset<Label>> {
        m.try_map(|l| self.apply2(l).cloned())
    }

    /// `self ∘ first`, i.e. `first` followed by `self`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if !same_object(&first.cod, &self.dom) {
            return Err(Error::NonComposable {
                cod: first.cod.name().to_string(),
                dom: self.dom.name().to_string(),
            });
        }
        Ok(Morphism {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            map2: first.map2.iter().map(|&i| self.map2[i]).collect(),
            map3: first.map3.iter().map(|&i| self.map3[i]).collect(),
        })
    }

    /// Checks the serial boundary condition. Tables built by this crate are
    /// total by construction.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        for (e, &image) in self.map3.iter().enumerate() {
            let push = |b: &[(usize, usize)]| -> Multiset<Label> {
                let mut m = Multiset::new();
                for &(i, n) in b {
                    m.insert(self.cod.cells2()[self.map2[i]].clone(), n);
                }
                m
            };
            let cell = &self.dom.cells3()[e];
            let target = &self.cod.cells3()[image];
            let src = push(self.dom.src_idx(e));
            if src != target.src {
                violations.push(Violation::SourceMismatch {
                    cell: cell.name.clone(),
                    expected: target.src.clone(),
                    found: src,
                });
            }
            let tgt = push(self.dom.tgt_idx(e));
            if tgt != target.tgt {
                violations.push(Violation::TargetMismatch {
                    cell: cell.name.clone(),
                    expected: target.tgt.clone(),
                    found: tgt,
                });
            }
        }
        violations
    }

    pub fn is_identity(&self) -> bool {
        same_object(&self.dom, &self.cod)
            && self.map2.iter().enumerate().all(|(i, &j)| i == j)
            && self.map3.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_injective2(&self) -> bool {
        injective(&self.map2)
    }

    pub fn is_injective3(&self) -> bool {
        injective(&self.map3)
    }

    pub fn is_surjective2(&self) -> bool {
        surjective(&self.map2, self.cod.num_cells2())
    }

    pub fn is_surjective3(&self) -> bool {
        surjective(&self.map3, self.cod.num_cells3())
    }

    /// The inverse of a bijective morphism, if it is itself a morphism.
    pub fn inverse(&self) -> Option<Morphism> {
        if !(self.is_injective2()
            && self.is_surjective2()
            && self.is_injective3()
            && self.is_surjective3())
        {
            return None;
        }
        let mut map2 = vec![0; self.map2.len()];
        for (i, &j) in self.map2.iter().enumerate() {
            map2[j] = i;
        }
        let mut map3 = vec![0; self.map3.len()];
        for (i, &j) in self.map3.iter().enumerate() {
            map3[j] = i;
        }
        let inv = Morphism::from_indices(self.cod.clone(), self.dom.clone(), map2, map3);
        inv.validate().is_empty().then_some(inv)
    }
}

pub(crate) fn same_object(a: &Arc<Computad>, b: &Arc<Computad>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn injective(map: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::with_capacity(map.len());
    map.iter().all(|i| seen.insert(*i))
}

fn surjective(map: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n];
    for &i in map {
        hit[i] = true;
    }
    hit.into_iter().all(|h| h)
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.map2 == other.map2
            && self.map3 == other.map3
            && same_object(&self.dom, &other.dom)
            && same_object(&self.cod, &other.cod)
    }
}

impl Eq for Morphism {}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Morphism")
            .field("dom", &self.dom.name())
            .field("cod", &self.cod.name())
            .field("map2", &self.table2().collect::<Vec<_>>())
            .field("map3", &self.table3().collect::<Vec<_>>())
            .finish()
    }
}

/// Checks that label tables define a morphism `dom → cod`: both maps total,
/// images in the codomain, and the boundary condition at every 3-cell.
pub fn validate_morphism(
    dom: &Computad,
    cod: &Computad,
    map2: &BTreeMap<Label, Label>,
    map3: &BTreeMap<Label, Label>,
) -> Vec<Violation> {
    let mut violations = Vec::new();
    for l in dom.cells2() {
        match map2.get(l) {
            None => violations.push(Violation::Unmapped {
                dim: 2,
                label: l.clone(),
            }),
            Some(image) if cod.index2(image).is_none() => {
                violations.push(Violation::ImageOutsideCodomain {
                    dim: 2,
                    label: l.clone(),
                    image: image.clone(),
                })
            }
            Some(_) => {}
        }
    }
    for l in map2.keys().filter(|l| dom.index2(l).is_none()) {
        violations.push(Violation::ForeignEntry {
            dim: 2,
            label: l.clone(),
        });
    }
    for c in dom.cells3() {
        match map3.get(&c.name) {
            None => violations.push(Violation::Unmapped {
                dim: 3,
                label: c.name.clone(),
            }),
            Some(image) if cod.index3(image).is_none() => {
                violations.push(Violation::ImageOutsideCodomain {
                    dim: 3,
                    label: c.name.clone(),
                    image: image.clone(),
                })
            }
            Some(_) => {}
        }
    }
    for l in map3.keys().filter(|l| dom.index3(l).is_none()) {
        violations.push(Violation::ForeignEntry {
            dim: 3,
            label: l.clone(),
        });
    }
    if !violations.is_empty() {
        return violations;
    }

    for c in dom.cells3() {
        let image = cod.three_cell(&map3[&c.name]).expect("checked above");
        let src = c.src.push_forward(map2).expect("map2 is total");
        if src != image.src {
            violations.push(Violation::SourceMismatch {
                cell: c.name.clone(),
                expected: image.src.clone(),
                found: src,
            });
        }
        let tgt = c.tgt.push_forward(map2).expect("map2 is total");
        if tgt != image.tgt {
            violations.push(Violation::TargetMismatch {
                cell: c.name.clone(),
                expected: image.tgt.clone(),
                found: tgt,
            });
        }
    }
    violations
}
