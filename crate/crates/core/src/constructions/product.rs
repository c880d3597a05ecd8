use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::computad::{Computad, ThreeCell};
use crate::error::{Error, Result};
use crate::morphism::{same_object, Morphism};
use crate::multiset::{enumerate_pairings, Label, Multiset, Pairing};

/// Label of the product 2-cell `(a,b)`.
pub fn pair_label(a: &str, b: &str) -> Label {
    format!("({a},{b})")
}

/// Name of the `index`-th (1-based) product 3-cell over `(f, g)`.
pub fn product_cell_name(f: &str, g: &str, index: usize) -> Label {
    format!("({f},{g})#{index}")
}

/// The data a product 3-cell stands for: a 3-cell of each factor together
/// with a pairing of their sources and a pairing of their targets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProductCell {
    pub left: Label,
    pub right: Label,
    pub src: Pairing<Label, Label>,
    pub tgt: Pairing<Label, Label>,
}

impl ProductCell {
    fn boundary(p: &Pairing<Label, Label>) -> Multiset<Label> {
        p.pairs().map(|(a, b)| pair_label(a, b))
    }
}

/// A product object with its projections and the provenance of each 3-cell.
#[derive(Debug, Clone)]
pub struct ProductResult {
    pub object: Arc<Computad>,
    pub proj_left: Morphism,
    pub proj_right: Morphism,
    pub cell_index: BTreeMap<Label, ProductCell>,
    by_cell: HashMap<ProductCell, Label>,
}

impl ProductResult {
    /// Assembles a candidate product from its parts. [`product`] is the
    /// construction; this exists so that other candidates can be checked
    /// against the universal property.
    pub fn from_parts(
        object: Arc<Computad>,
        proj_left: Morphism,
        proj_right: Morphism,
        cell_index: BTreeMap<Label, ProductCell>,
    ) -> Self {
        let mut by_cell = HashMap::new();
        for (name, cell) in &cell_index {
            by_cell.entry(cell.clone()).or_insert_with(|| name.clone());
        }
        ProductResult {
            object,
            proj_left,
            proj_right,
            cell_index,
            by_cell,
        }
    }

    pub fn left_factor(&self) -> &Arc<Computad> {
        self.proj_left.cod()
    }

    pub fn right_factor(&self) -> &Arc<Computad> {
        self.proj_right.cod()
    }

    /// The product 3-cell standing for `cell`, if any.
    pub fn cell_for(&self, cell: &ProductCell) -> Option<&Label> {
        self.by_cell.get(cell)
    }
}

/// The binary product `A × B`.
///
/// 2-cells are all pairs `(a,b)`. Over each pair of 3-cells `(f, g)` there is
/// one 3-cell `(f,g)#i` per choice of a pairing of the sources and a pairing
/// of the targets, numbered in the canonical order of those choices; its
/// boundaries are the pairings themselves. Since the boundaries are
/// commutative, a cone 3-cell only determines such a pairing, and every
/// pairing is hit by some cone.
pub fn product(a: &Arc<Computad>, b: &Arc<Computad>) -> ProductResult {
    let name = format!("{}x{}", a.name(), b.name());
    let mut cells2 = Vec::with_capacity(a.num_cells2() * b.num_cells2());
    let mut left2 = Vec::with_capacity(cells2.capacity());
    let mut right2 = Vec::with_capacity(cells2.capacity());
    for (i, x) in a.cells2().iter().enumerate() {
        for (j, y) in b.cells2().iter().enumerate() {
            cells2.push(pair_label(x, y));
            left2.push(i);
            right2.push(j);
        }
    }

    let mut cells3 = Vec::new();
    let mut provenance = Vec::new();
    let mut cell_index = BTreeMap::new();
    for (i, f) in a.cells3().iter().enumerate() {
        for (j, g) in b.cells3().iter().enumerate() {
            let sources = enumerate_pairings(&f.src, &g.src);
            let targets = enumerate_pairings(&f.tgt, &g.tgt);
            let mut index = 0;
            for ps in &sources {
                for pt in &targets {
                    index += 1;
                    let cell = ProductCell {
                        left: f.name.clone(),
                        right: g.name.clone(),
                        src: ps.clone(),
                        tgt: pt.clone(),
                    };
                    let cname = product_cell_name(&f.name, &g.name, index);
                    cells3.push(ThreeCell::new(
                        cname.clone(),
                        ProductCell::boundary(ps),
                        ProductCell::boundary(pt),
                    ));
                    provenance.push((cname.clone(), i, j));
                    cell_index.insert(cname, cell);
                }
            }
        }
    }

    // Pair labels do not sort like the index pairs, so position tables are
    // rebuilt against the sorted cells.
    let order2: Vec<usize> = {
        let mut idx: Vec<usize> = (0..cells2.len()).collect();
        idx.sort_by(|&p, &q| cells2[p].cmp(&cells2[q]));
        idx
    };
    let sorted2: Vec<Label> = order2.iter().map(|&p| cells2[p].clone()).collect();
    let map_left2: Vec<usize> = order2.iter().map(|&p| left2[p]).collect();
    let map_right2: Vec<usize> = order2.iter().map(|&p| right2[p]).collect();

    provenance.sort_by(|x, y| x.0.cmp(&y.0));
    cells3.sort_by(|x, y| x.name.cmp(&y.name));
    let map_left3: Vec<usize> = provenance.iter().map(|&(_, i, _)| i).collect();
    let map_right3: Vec<usize> = provenance.iter().map(|&(_, _, j)| j).collect();

    let object = Arc::new(Computad::from_sorted(name, sorted2, cells3));
    let proj_left = Morphism::from_indices(object.clone(), a.clone(), map_left2, map_left3);
    let proj_right = Morphism::from_indices(object.clone(), b.clone(), map_right2, map_right3);
    debug_assert!(proj_left.validate().is_empty());
    debug_assert!(proj_right.validate().is_empty());
    ProductResult::from_parts(object, proj_left, proj_right, cell_index)
}

/// The factorisation `k : Y → A × B` of a cone `(u, v)`.
///
/// On 2-cells `k(t) = (u(t), v(t))`. A 3-cell `e` goes to the product cell
/// over `(u(e), v(e))` whose source pairing sends each source element `y` of
/// `e` to `(u(y), v(y))`, and likewise for the target.
pub fn pair_into_product(u: &Morphism, v: &Morphism, prod: &ProductResult) -> Result<Morphism> {
    if !same_object(u.dom(), v.dom()) {
        return Err(Error::Mismatch(format!(
            "cone legs have different domains `{}` and `{}`",
            u.dom().name(),
            v.dom().name()
        )));
    }
    if !same_object(u.cod(), prod.left_factor()) || !same_object(v.cod(), prod.right_factor()) {
        return Err(Error::Mismatch(format!(
            "cone into `{}` and `{}` does not match the factors of `{}`",
            u.cod().name(),
            v.cod().name(),
            prod.object.name()
        )));
    }
    let y = u.dom();
    let (a, b) = (u.cod(), v.cod());
    let target = &prod.object;
    let mut map2 = Vec::with_capacity(y.num_cells2());
    for t in 0..y.num_cells2() {
        let label = pair_label(
            &a.cells2()[u.map2_indices()[t]],
            &b.cells2()[v.map2_indices()[t]],
        );
        let k = target
            .index2(&label)
            .ok_or_else(|| Error::Internal(format!("product has no 2-cell {label}")))?;
        map2.push(k);
    }
    let pairing = |boundary: &[(usize, usize)]| {
        let mut pairs = Multiset::new();
        for &(t, n) in boundary {
            pairs.insert(
                (
                    a.cells2()[u.map2_indices()[t]].clone(),
                    b.cells2()[v.map2_indices()[t]].clone(),
                ),
                n,
            );
        }
        Pairing::new(pairs)
    };
    let mut map3 = Vec::with_capacity(y.num_cells3());
    for e in 0..y.num_cells3() {
        let cell = ProductCell {
            left: a.cells3()[u.map3_indices()[e]].name.clone(),
            right: b.cells3()[v.map3_indices()[e]].name.clone(),
            src: pairing(y.src_idx(e)),
            tgt: pairing(y.tgt_idx(e)),
        };
        let name = prod.cell_for(&cell).ok_or_else(|| {
            Error::Internal(format!(
                "no product 3-cell over ({},{}) with source {} and target {}",
                cell.left, cell.right, cell.src, cell.tgt
            ))
        })?;
        let k = target
            .index3(name)
            .ok_or_else(|| Error::Internal(format!("product has no 3-cell {name}")))?;
        map3.push(k);
    }
    Morphism::checked_from_indices(
        y.clone(),
        target.clone(),
        map2,
        map3,
        "product factorisation",
    )
}

/// `h × 1 : X × B → A × B`.
pub fn product_of_morphisms(
    h: &Morphism,
    prod_xb: &ProductResult,
    prod_ab: &ProductResult,
) -> Result<Morphism> {
    if !same_object(prod_xb.right_factor(), prod_ab.right_factor()) {
        return Err(Error::Mismatch(format!(
            "right factors `{}` and `{}` differ",
            prod_xb.right_factor().name(),
            prod_ab.right_factor().name()
        )));
    }
    let left = h.compose(&prod_xb.proj_left)?;
    pair_into_product(&left, &prod_xb.proj_right, prod_ab)
}
