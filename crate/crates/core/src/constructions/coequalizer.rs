use std::collections::BTreeMap;
use std::sync::Arc;

use crate::computad::{Computad, ThreeCell};
use crate::error::{Error, Result};
use crate::morphism::{same_object, Morphism};
use crate::multiset::{Label, Multiset};
use crate::union_find::UnionFind;

/// Label of a quotient cell: the member itself for a singleton class,
/// otherwise `[m1|m2|...]` with members sorted.
pub fn class_label(members: &[&Label]) -> Label {
    match members {
        [only] => (*only).clone(),
        _ => {
            let mut sorted: Vec<&Label> = members.to_vec();
            sorted.sort();
            let inner: Vec<&str> = sorted.iter().map(|l| l.as_str()).collect();
            format!("[{}]", inner.join("|"))
        }
    }
}

/// A coequaliser of a parallel pair with its quotient map.
#[derive(Debug, Clone)]
pub struct CoequalizerResult {
    pub object: Arc<Computad>,
    /// The quotient map out of the common codomain of the pair.
    pub q: Morphism,
    /// Each quotient 2-cell with the 2-cells it identifies.
    pub classes2: BTreeMap<Label, Vec<Label>>,
    /// Each quotient 3-cell with the 3-cells it identifies.
    pub classes3: BTreeMap<Label, Vec<Label>>,
    /// The parallel pair that was coequalised.
    pub pair: (Morphism, Morphism),
}

impl CoequalizerResult {
    /// A candidate coequaliser given by an arbitrary map out of the codomain
    /// of the pair; classes are read off as the fibres of `q`.
    pub fn from_quotient_map(q: Morphism, pair: (Morphism, Morphism)) -> Self {
        let fibres = |dom_labels: Vec<&Label>, images: &[usize], cod_labels: Vec<&Label>| {
            let mut classes: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
            for (l, &i) in dom_labels.into_iter().zip(images) {
                classes
                    .entry(cod_labels[i].clone())
                    .or_default()
                    .push(l.clone());
            }
            classes
        };
        let classes2 = fibres(
            q.dom().cells2().iter().collect(),
            q.map2_indices(),
            q.cod().cells2().iter().collect(),
        );
        let classes3 = fibres(
            q.dom().cells3().iter().map(|c| &c.name).collect(),
            q.map3_indices(),
            q.cod().cells3().iter().map(|c| &c.name).collect(),
        );
        CoequalizerResult {
            object: q.cod().clone(),
            q,
            classes2,
            classes3,
            pair,
        }
    }
}

/// The coequaliser of `α1, α2 : E → A`.
///
/// 2-cells of `A` are identified along `α1(x) ~ α2(x)` and 3-cells along
/// `α1(e) ~ α2(e)`, closing under equivalence. Each class is represented by
/// its least member and its boundary is pushed forward along the 2-cell
/// quotient; every member of a class must push forward to the same boundary.
pub fn coequalizer(alpha1: &Morphism, alpha2: &Morphism) -> Result<CoequalizerResult> {
    let name = format!("{}_coeq", alpha1.cod().name());
    coequalizer_named(alpha1, alpha2, &name)
}

/// [`coequalizer`] with a chosen name for the quotient object.
pub fn coequalizer_named(
    alpha1: &Morphism,
    alpha2: &Morphism,
    name: &str,
) -> Result<CoequalizerResult> {
    if !same_object(alpha1.dom(), alpha2.dom()) || !same_object(alpha1.cod(), alpha2.cod()) {
        return Err(Error::IncompatibleParallelPair(format!(
            "{} -> {} against {} -> {}",
            alpha1.dom().name(),
            alpha1.cod().name(),
            alpha2.dom().name(),
            alpha2.cod().name()
        )));
    }
    let a = alpha1.cod();

    let mut uf2 = UnionFind::new(a.num_cells2());
    for (&i, &j) in alpha1.map2_indices().iter().zip(alpha2.map2_indices()) {
        uf2.union(i, j);
    }
    let mut uf3 = UnionFind::new(a.num_cells3());
    for (&i, &j) in alpha1.map3_indices().iter().zip(alpha2.map3_indices()) {
        uf3.union(i, j);
    }
    let groups2 = uf2.classes();
    let groups3 = uf3.classes();

    let mut quotient2 = vec![Label::new(); a.num_cells2()];
    let mut classes2 = BTreeMap::new();
    for group in &groups2 {
        let members: Vec<&Label> = group.iter().map(|&i| &a.cells2()[i]).collect();
        let label = class_label(&members);
        for &i in group {
            quotient2[i] = label.clone();
        }
        classes2.insert(label, members.into_iter().cloned().collect());
    }

    if classes2.len() != groups2.len() {
        return Err(Error::Internal("quotient 2-cell labels collide".into()));
    }

    let push = |b: &[(usize, usize)]| -> Multiset<Label> {
        let mut m = Multiset::new();
        for &(i, n) in b {
            m.insert(quotient2[i].clone(), n);
        }
        m
    };
    let mut cells3 = Vec::with_capacity(groups3.len());
    let mut quotient3 = vec![Label::new(); a.num_cells3()];
    let mut classes3 = BTreeMap::new();
    for group in &groups3 {
        let members: Vec<&Label> = group.iter().map(|&e| &a.cells3()[e].name).collect();
        let label = class_label(&members);
        let rep = group[0];
        let (src, tgt) = (push(a.src_idx(rep)), push(a.tgt_idx(rep)));
        for &e in group {
            if push(a.src_idx(e)) != src || push(a.tgt_idx(e)) != tgt {
                return Err(Error::Internal(format!(
                    "3-cells {} and {} are identified but have different quotient boundaries",
                    a.cells3()[rep].name,
                    a.cells3()[e].name
                )));
            }
            quotient3[e] = label.clone();
        }
        cells3.push(ThreeCell::new(label.clone(), src, tgt));
        classes3.insert(label, members.into_iter().cloned().collect());
    }

    if classes3.len() != groups3.len() {
        return Err(Error::Internal("quotient 3-cell labels collide".into()));
    }
    let mut labels2: Vec<Label> = classes2.keys().cloned().collect();
    labels2.sort();
    cells3.sort_by(|x, y| x.name.cmp(&y.name));
    let object = Arc::new(Computad::from_sorted(name.to_string(), labels2, cells3));
    let map2 = quotient2
        .iter()
        .map(|l| object.index2(l).expect("class label"))
        .collect();
    let map3 = quotient3
        .iter()
        .map(|l| object.index3(l).expect("class label"))
        .collect();
    let q = Morphism::checked_from_indices(a.clone(), object.clone(), map2, map3, "quotient map")?;
    if q.compose(alpha1)? != q.compose(alpha2)? {
        return Err(Error::Internal("quotient map does not coequalise".into()));
    }
    Ok(CoequalizerResult {
        object,
        q,
        classes2,
        classes3,
        pair: (alpha1.clone(), alpha2.clone()),
    })
}

/// The unique `k : C → Y` with `k ∘ q = u`, for `u` coequalising the pair.
pub fn coeq_factor(ce: &CoequalizerResult, u: &Morphism) -> Result<Morphism> {
    if !same_object(u.dom(), ce.q.dom()) {
        return Err(Error::Mismatch(format!(
            "`{}` is not the codomain `{}` of the parallel pair",
            u.dom().name(),
            ce.q.dom().name()
        )));
    }
    let (alpha1, alpha2) = &ce.pair;
    if u.compose(alpha1)? != u.compose(alpha2)? {
        return Err(Error::ConeConditionViolated(format!(
            "u does not coequalise the pair {} -> {}",
            alpha1.dom().name(),
            alpha1.cod().name()
        )));
    }
    let factor =
        |images: &[usize], quotient: &[usize], n: usize, what: &str| -> Result<Vec<usize>> {
            let mut k = vec![usize::MAX; n];
            for (&img, &cls) in images.iter().zip(quotient) {
                if k[cls] == usize::MAX {
                    k[cls] = img;
                } else if k[cls] != img {
                    return Err(Error::ConeConditionViolated(format!(
                        "u is not constant on a {what} class of the quotient"
                    )));
                }
            }
            if k.contains(&usize::MAX) {
                return Err(Error::Mismatch(format!(
                    "quotient map is not surjective on {what}s"
                )));
            }
            Ok(k)
        };
    let map2 = factor(
        u.map2_indices(),
        ce.q.map2_indices(),
        ce.object.num_cells2(),
        "2-cell",
    )?;
    let map3 = factor(
        u.map3_indices(),
        ce.q.map3_indices(),
        ce.object.num_cells3(),
        "3-cell",
    )?;
    Morphism::checked_from_indices(
        ce.object.clone(),
        u.cod().clone(),
        map2,
        map3,
        "coequaliser factorisation",
    )
}
