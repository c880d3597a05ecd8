//! Fixtures shared by the integration tests: hand-written test objects and
//! deliberately broken candidates for the universal-property oracles.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use computads::constructions::{CoequalizerResult, ProductResult};
use computads::{Computad, Label, Morphism, Multiset, ThreeCell};

pub fn ms(s: &str) -> Multiset<Label> {
    s.parse().unwrap()
}

pub fn table(pairs: &[(&str, &str)]) -> BTreeMap<Label, Label> {
    pairs
        .iter()
        .map(|&(x, y)| (x.to_string(), y.to_string()))
        .collect()
}

/// `Y` with 2-cells `y1, y2, y3` and one 3-cell `h : y1.y2 → y3`.
pub fn four_case_y() -> Arc<Computad> {
    Arc::new(
        Computad::new(
            "Y",
            ["y1", "y2", "y3"],
            [ThreeCell::new("h", ms("y1 * y2"), ms("y3"))],
        )
        .unwrap(),
    )
}

/// `x` with its labels renamed through `rename` (and the object renamed).
pub fn relabel(x: &Computad, name: &str, rename: impl Fn(&str) -> String) -> Computad {
    let map: BTreeMap<Label, Label> = x.cells2().iter().map(|l| (l.clone(), rename(l))).collect();
    let cells3 = x.cells3().iter().map(|c| {
        ThreeCell::new(
            format!("{}'", c.name),
            c.src.push_forward(&map).unwrap(),
            c.tgt.push_forward(&map).unwrap(),
        )
    });
    Computad::new(name, x.cells2().iter().map(|l| rename(l)), cells3).unwrap()
}

/// Restricts the projections of `prod` to a new object with the same
/// 2-cells and the given 3-cells. `extra` names 3-cells not in `prod` and the
/// existing 3-cell whose projections and provenance they copy.
fn rebuild_product(
    prod: &ProductResult,
    name: &str,
    keep: impl Fn(&str) -> bool,
    extra: &[(&str, &str)],
) -> ProductResult {
    let original = &prod.object;
    let mut cells3: Vec<ThreeCell> = original
        .cells3()
        .iter()
        .filter(|c| keep(&c.name))
        .cloned()
        .collect();
    for &(new, like) in extra {
        let c = original.three_cell(like).unwrap();
        cells3.push(ThreeCell::new(new, c.src.clone(), c.tgt.clone()));
    }
    let object =
        Arc::new(Computad::new(name, original.cells2().iter().cloned(), cells3.clone()).unwrap());
    let project = |p: &Morphism| {
        let map3: BTreeMap<Label, Label> = cells3
            .iter()
            .map(|c| {
                let source = extra
                    .iter()
                    .find(|(n, _)| *n == c.name)
                    .map_or(c.name.as_str(), |(_, l)| l);
                (c.name.clone(), p.apply3(source).unwrap().clone())
            })
            .collect();
        Morphism::new(object.clone(), p.cod().clone(), &p.map2_table(), &map3).unwrap()
    };
    let mut cell_index: BTreeMap<Label, _> = prod
        .cell_index
        .iter()
        .filter(|(n, _)| keep(n))
        .map(|(n, c)| (n.clone(), c.clone()))
        .collect();
    for &(new, like) in extra {
        cell_index.insert(new.to_string(), prod.cell_index[like].clone());
    }
    let (left, right) = (project(&prod.proj_left), project(&prod.proj_right));
    ProductResult::from_parts(object, left, right, cell_index)
}

/// `A × B` without the 3-cell `(f,g)#2`.
pub fn product_missing_cell(prod: &ProductResult) -> ProductResult {
    rebuild_product(prod, "AxB_missing", |n| n != "(f,g)#2", &[])
}

/// `A × B` with a second copy of `(f,g)#1`.
pub fn product_duplicate_cell(prod: &ProductResult) -> ProductResult {
    rebuild_product(prod, "AxB_duplicate", |_| true, &[("(f,g)#1'", "(f,g)#1")])
}

/// A quotient of `A` that identifies `a3` with `a1` and `a2` as well.
pub fn over_quotient(alpha1: &Morphism, alpha2: &Morphism) -> CoequalizerResult {
    let a = alpha1.cod();
    let all = "[a1|a2|a3]";
    let c = Arc::new(
        Computad::new(
            "C_over",
            [all],
            [ThreeCell::new("f", ms(&format!("{all} * {all}")), ms(all))],
        )
        .unwrap(),
    );
    let map2 = a
        .cells2()
        .iter()
        .map(|l| (l.clone(), all.to_string()))
        .collect();
    let q = Morphism::new(a.clone(), c, &map2, &table(&[("f", "f")])).unwrap();
    CoequalizerResult::from_quotient_map(q, (alpha1.clone(), alpha2.clone()))
}
