//! The coequaliser `E ⇉ A → C` that `- × B` fails to preserve.
//!
//! `A` has a single 3-cell `f : a1.a2 → a3`, `B` is a copy of `A`, and the
//! pair `E ⇉ A` identifies `a1` with `a2`. In `A × B` the commutative source
//! `a1.a2` can be paired with `b1.b2` in two ways, giving two 3-cells; the
//! coequaliser `P` of `α1 × 1, α2 × 1` keeps both, while in `C × B` the source
//! `ā.ā` pairs with `b1.b2` in only one way. So `P` and `C × B` differ.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use crate::computad::{Computad, ThreeCell};
use crate::constructions::{
    coequalizer_named, comparison_map, product, product_of_morphisms, CoequalizerResult,
    ProductResult,
};
use crate::error::{Error, Result};
use crate::format::{print_computad, print_morphism};
use crate::homs::SearchBudget;
use crate::iso::find_isomorphism;
use crate::morphism::Morphism;
use crate::multiset::{Label, Multiset};

/// The inputs of the pipeline: the parallel pair `α1, α2 : E → A` and `B`.
#[derive(Debug, Clone)]
pub struct PaperObjects {
    pub e: Arc<Computad>,
    pub a: Arc<Computad>,
    pub b: Arc<Computad>,
    pub alpha1: Morphism,
    pub alpha2: Morphism,
}

fn ms(s: &str) -> Multiset<Label> {
    s.parse().expect("fixture multiset")
}

fn table(pairs: &[(&str, &str)]) -> BTreeMap<Label, Label> {
    pairs
        .iter()
        .map(|&(x, y)| (x.to_string(), y.to_string()))
        .collect()
}

/// `A` with `f : a1.a2 → a3`, `E` with 2-cells `x, y`, `B` with
/// `g : b1.b2 → b3`, and `α1 : x ↦ a1, y ↦ a3`, `α2 : x ↦ a2, y ↦ a3`.
pub fn build_paper_objects() -> PaperObjects {
    let a = Arc::new(
        Computad::new(
            "A",
            ["a1", "a2", "a3"],
            [ThreeCell::new("f", ms("a1 * a2"), ms("a3"))],
        )
        .expect("A"),
    );
    let e = Arc::new(Computad::new("E", ["x", "y"], []).expect("E"));
    let b = Arc::new(
        Computad::new(
            "B",
            ["b1", "b2", "b3"],
            [ThreeCell::new("g", ms("b1 * b2"), ms("b3"))],
        )
        .expect("B"),
    );
    let none = BTreeMap::new();
    let alpha1 = Morphism::new(
        e.clone(),
        a.clone(),
        &table(&[("x", "a1"), ("y", "a3")]),
        &none,
    )
    .expect("alpha1");
    let alpha2 = Morphism::new(
        e.clone(),
        a.clone(),
        &table(&[("x", "a2"), ("y", "a3")]),
        &none,
    )
    .expect("alpha2");
    PaperObjects {
        e,
        a,
        b,
        alpha1,
        alpha2,
    }
}

/// The same construction with empty targets: `f : a1.a2 → 1` and
/// `g : b1.b2 → 1`. `E` keeps only `x`, since there is no `a3` for `y`.
pub fn build_empty_target_objects() -> PaperObjects {
    let a = Arc::new(
        Computad::new(
            "A",
            ["a1", "a2"],
            [ThreeCell::new("f", ms("a1 * a2"), ms("1"))],
        )
        .expect("A"),
    );
    let e = Arc::new(Computad::new("E", ["x"], []).expect("E"));
    let b = Arc::new(
        Computad::new(
            "B",
            ["b1", "b2"],
            [ThreeCell::new("g", ms("b1 * b2"), ms("1"))],
        )
        .expect("B"),
    );
    let none = BTreeMap::new();
    let alpha1 =
        Morphism::new(e.clone(), a.clone(), &table(&[("x", "a1")]), &none).expect("alpha1");
    let alpha2 =
        Morphism::new(e.clone(), a.clone(), &table(&[("x", "a2")]), &none).expect("alpha2");
    PaperObjects {
        e,
        a,
        b,
        alpha1,
        alpha2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl GoldenCheck {
    fn new(what: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        GoldenCheck {
            what: what.into(),
            passed: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: u8,
    pub title: String,
    /// 2-cell and 3-cell counts of the object produced, if the step produces one.
    pub cells: Option<(usize, usize)>,
    pub checks: Vec<GoldenCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Preserved,
    NotPreserved,
}

/// Everything the pipeline built, for dumping to files.
#[derive(Debug, Clone)]
pub struct PipelineArtifacts {
    pub objects: Vec<Arc<Computad>>,
    pub morphisms: Vec<(String, Morphism)>,
    pub product_eb: ProductResult,
    pub product_ab: ProductResult,
    pub product_cb: ProductResult,
    pub coequalizer_c: CoequalizerResult,
    pub coequalizer_p: CoequalizerResult,
    pub comparison: Morphism,
}

impl PipelineArtifacts {
    pub fn object(&self, name: &str) -> Option<&Arc<Computad>> {
        self.objects.iter().find(|o| o.name() == name)
    }

    pub fn morphism(&self, name: &str) -> Option<&Morphism> {
        self.morphisms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
    }

    /// Writes every object to `<name>.cpd` and every morphism to
    /// `<name>.mor` under `dir`.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for o in &self.objects {
            let path = dir.join(format!("{}.cpd", o.name()));
            std::fs::write(&path, print_computad(o))?;
            written.push(path);
        }
        for (name, m) in &self.morphisms {
            let path = dir.join(format!("{name}.mor"));
            std::fs::write(&path, print_morphism(name, m))?;
            written.push(path);
        }
        Ok(written)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub variant: String,
    pub steps: Vec<StepRecord>,
    pub verdict: Verdict,
    /// How the comparison map fails to be an isomorphism; present iff the
    /// verdict is [`Verdict::NotPreserved`].
    pub witness: Option<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub artifacts: PipelineArtifacts,
}

impl PipelineReport {
    pub fn all_checks_passed(&self) -> bool {
        self.steps.iter().all(|s| s.checks.iter().all(|c| c.passed))
    }

    pub fn failed_checks(&self) -> Vec<(u8, &GoldenCheck)> {
        self.steps
            .iter()
            .flat_map(|s| {
                s.checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(move |c| (s.step, c))
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = format!("counterexample: {}\n", self.variant);
        for s in &self.steps {
            let _ = write!(out, "step {} {}", s.step, s.title);
            if let Some((c2, c3)) = s.cells {
                let _ = write!(out, "  2-cells={c2} 3-cells={c3}");
            }
            out.push('\n');
            for c in &s.checks {
                let status = if c.passed { "ok" } else { "FAILED" };
                let _ = writeln!(
                    out,
                    "  [{status}] {}: expected {}, got {}",
                    c.what, c.expected, c.actual
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {w}");
        }
        let _ = writeln!(
            out,
            "checks: {}",
            if self.all_checks_passed() {
                "all passed"
            } else {
                "SOME FAILED"
            }
        );
        match self.verdict {
            Verdict::NotPreserved => out.push_str("VERDICT: coequaliser NOT preserved by - x B\n"),
            Verdict::Preserved => out.push_str("VERDICT: coequaliser preserved by - x B\n"),
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Expected sizes `(2-cells, 3-cells)` for each object in the pipeline.
struct Goldens {
    a: (usize, usize),
    e: (usize, usize),
    c: (usize, usize),
    b: (usize, usize),
    eb: (usize, usize),
    ab: (usize, usize),
    cb: (usize, usize),
    p: (usize, usize),
    /// Sources of the 3-cells of `A × B`, in name order.
    ab_sources: Vec<&'static str>,
    /// Common target of the 3-cells of `A × B`.
    ab_target: &'static str,
    cb_source: &'static str,
}

fn counts(x: &Computad) -> (usize, usize) {
    (x.num_cells2(), x.num_cells3())
}

fn size_checks(x: &Computad, expected: (usize, usize)) -> Vec<GoldenCheck> {
    vec![
        GoldenCheck::new(format!("{} 2-cells", x.name()), expected.0, x.num_cells2()),
        GoldenCheck::new(format!("{} 3-cells", x.name()), expected.1, x.num_cells3()),
    ]
}

fn step<T>(step: u8, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Step {
        step,
        message: e.to_string(),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs the pipeline on the standard fixtures.
pub fn run_counterexample() -> Result<PipelineReport> {
    let goldens = Goldens {
        a: (3, 1),
        e: (2, 0),
        c: (2, 1),
        b: (3, 1),
        eb: (6, 0),
        ab: (9, 2),
        cb: (6, 1),
        p: (6, 2),
        ab_sources: vec!["(a1,b1) * (a2,b2)", "(a1,b2) * (a2,b1)"],
        ab_target: "(a3,b3)",
        cb_source: "([a1|a2],b1) * ([a1|a2],b2)",
    };
    let notes = vec![
        "CxB has 6 2-cells: ([a1|a2],b_j) and (a3,b_j) for j = 1,2,3; \
         only ([a1|a2],b1), ([a1|a2],b2) and (a3,b3) occur in a boundary"
            .to_string(),
    ];
    run_pipeline("standard", build_paper_objects(), &goldens, notes)
}

/// Runs the pipeline on the empty-target fixtures.
pub fn run_counterexample_empty_target_variant() -> Result<PipelineReport> {
    let goldens = Goldens {
        a: (2, 1),
        e: (1, 0),
        c: (1, 1),
        b: (2, 1),
        eb: (2, 0),
        ab: (4, 2),
        cb: (2, 1),
        p: (2, 2),
        ab_sources: vec!["(a1,b1) * (a2,b2)", "(a1,b2) * (a2,b1)"],
        ab_target: "1",
        cb_source: "([a1|a2],b1) * ([a1|a2],b2)",
    };
    run_pipeline(
        "empty-target",
        build_empty_target_objects(),
        &goldens,
        Vec::new(),
    )
}

fn run_pipeline(
    variant: &str,
    objs: PaperObjects,
    goldens: &Goldens,
    notes: Vec<String>,
) -> Result<PipelineReport> {
    let PaperObjects {
        e,
        a,
        b,
        alpha1,
        alpha2,
    } = objs;
    let mut steps = Vec::new();

    let mut a_checks = size_checks(&a, goldens.a);
    for c in a.cells3() {
        a_checks.push(GoldenCheck::new(
            format!("A 3-cell {}", c.name),
            "a1 * a2",
            &c.src,
        ));
    }
    steps.push(StepRecord {
        step: 1,
        title: "A".into(),
        cells: Some(counts(&a)),
        checks: a_checks,
    });
    steps.push(StepRecord {
        step: 2,
        title: "E".into(),
        cells: Some(counts(&e)),
        checks: size_checks(&e, goldens.e),
    });
    steps.push(StepRecord {
        step: 3,
        title: "alpha1, alpha2 : E -> A".into(),
        cells: None,
        checks: vec![
            GoldenCheck::new(
                "alpha1(x)",
                "a1",
                alpha1.apply2("x").map_or("-", |l| l.as_str()),
            ),
            GoldenCheck::new(
                "alpha2(x)",
                "a2",
                alpha2.apply2("x").map_or("-", |l| l.as_str()),
            ),
            GoldenCheck::new(
                "alpha1, alpha2 valid",
                "yes",
                yes_no(alpha1.validate().is_empty() && alpha2.validate().is_empty()),
            ),
        ],
    });

    let ce_c = step(4, coequalizer_named(&alpha1, &alpha2, "C"))?;
    let c = ce_c.object.clone();
    let beta = ce_c.q.clone();
    let mut c_checks = size_checks(&c, goldens.c);
    c_checks.push(GoldenCheck::new(
        "beta∘alpha1 = beta∘alpha2",
        "yes",
        yes_no(step(4, beta.compose(&alpha1))? == step(4, beta.compose(&alpha2))?),
    ));
    steps.push(StepRecord {
        step: 4,
        title: "C = coeq(alpha1, alpha2)".into(),
        cells: Some(counts(&c)),
        checks: c_checks,
    });

    let iso_ab = step(5, find_isomorphism(&a, &b, SearchBudget::DEFAULT))?;
    let mut b_checks = size_checks(&b, goldens.b);
    b_checks.push(GoldenCheck::new(
        "B isomorphic to A",
        "yes",
        yes_no(iso_ab.is_some()),
    ));
    steps.push(StepRecord {
        step: 5,
        title: "B".into(),
        cells: Some(counts(&b)),
        checks: b_checks,
    });

    let prod_eb = product(&e, &b);
    steps.push(StepRecord {
        step: 6,
        title: "ExB".into(),
        cells: Some(counts(&prod_eb.object)),
        checks: size_checks(&prod_eb.object, goldens.eb),
    });

    let prod_ab = product(&a, &b);
    let ab = prod_ab.object.clone();
    let mut ab_checks = size_checks(&ab, goldens.ab);
    for (cell, expected) in ab.cells3().iter().zip(&goldens.ab_sources) {
        ab_checks.push(GoldenCheck::new(
            format!("{} source", cell.name),
            expected,
            &cell.src,
        ));
        ab_checks.push(GoldenCheck::new(
            format!("{} target", cell.name),
            goldens.ab_target,
            &cell.tgt,
        ));
    }
    steps.push(StepRecord {
        step: 7,
        title: "AxB".into(),
        cells: Some(counts(&ab)),
        checks: ab_checks,
    });

    let prod_cb = product(&c, &b);
    let cb = prod_cb.object.clone();
    let mut cb_checks = size_checks(&cb, goldens.cb);
    for cell in cb.cells3() {
        cb_checks.push(GoldenCheck::new(
            format!("{} source", cell.name),
            goldens.cb_source,
            &cell.src,
        ));
    }
    steps.push(StepRecord {
        step: 8,
        title: "CxB".into(),
        cells: Some(counts(&cb)),
        checks: cb_checks,
    });

    let a1x1 = step(9, product_of_morphisms(&alpha1, &prod_eb, &prod_ab))?;
    let a2x1 = step(9, product_of_morphisms(&alpha2, &prod_eb, &prod_ab))?;
    let ce_p = step(9, coequalizer_named(&a1x1, &a2x1, "P"))?;
    let p = ce_p.object.clone();
    let beta_x1 = step(9, product_of_morphisms(&beta, &prod_ab, &prod_cb))?;
    let comparison = step(9, comparison_map(&ce_p, &prod_ab, &prod_cb, &beta))?;
    let iso = step(9, find_isomorphism(&p, &cb, SearchBudget::DEFAULT))?;

    let mut p_checks = size_checks(&p, goldens.p);
    p_checks.extend([
        GoldenCheck::new(
            "alpha1x1 sends (x,b1) to",
            "(a1,b1)",
            a1x1.apply2("(x,b1)").map_or("-", |l| l.as_str()),
        ),
        GoldenCheck::new(
            "comparison valid",
            "yes",
            yes_no(comparison.validate().is_empty()),
        ),
        GoldenCheck::new(
            "comparison∘qP = beta x 1",
            "yes",
            yes_no(step(9, comparison.compose(&ce_p.q))? == beta_x1),
        ),
        GoldenCheck::new(
            "comparison surjective on 2-cells",
            "yes",
            yes_no(comparison.is_surjective2()),
        ),
        GoldenCheck::new(
            "comparison surjective on 3-cells",
            "yes",
            yes_no(comparison.is_surjective3()),
        ),
        GoldenCheck::new(
            "comparison injective on 3-cells",
            "no",
            yes_no(comparison.is_injective3()),
        ),
        GoldenCheck::new(
            "3-cell counts of P and CxB differ",
            "yes",
            yes_no(p.num_cells3() != cb.num_cells3()),
        ),
        GoldenCheck::new("P isomorphic to CxB", "no", yes_no(iso.is_some())),
    ]);
    steps.push(StepRecord {
        step: 9,
        title: "P = coeq(alpha1x1, alpha2x1), comparison P -> CxB".into(),
        cells: Some(counts(&p)),
        checks: p_checks,
    });

    let verdict = if iso.is_some() {
        Verdict::Preserved
    } else {
        Verdict::NotPreserved
    };
    let witness = (verdict == Verdict::NotPreserved).then(|| describe_merge(&comparison));

    let objects = vec![
        e.clone(),
        a.clone(),
        b.clone(),
        c.clone(),
        prod_eb.object.clone(),
        ab.clone(),
        cb.clone(),
        p.clone(),
    ];
    let morphisms = vec![
        ("alpha1".to_string(), alpha1),
        ("alpha2".to_string(), alpha2),
        ("beta".to_string(), beta),
        ("alpha1x1".to_string(), a1x1),
        ("alpha2x1".to_string(), a2x1),
        ("qP".to_string(), ce_p.q.clone()),
        ("betax1".to_string(), beta_x1),
        ("comparison".to_string(), comparison.clone()),
    ];
    Ok(PipelineReport {
        variant: variant.to_string(),
        steps,
        verdict,
        witness,
        notes,
        artifacts: PipelineArtifacts {
            objects,
            morphisms,
            product_eb: prod_eb,
            product_ab: prod_ab,
            product_cb: prod_cb,
            coequalizer_c: ce_c,
            coequalizer_p: ce_p,
            comparison,
        },
    })
}

/// Names the 3-cells the comparison map identifies, or falls back to the
/// cell counts when it identifies none.
fn describe_merge(comparison: &Morphism) -> String {
    let mut fibres: BTreeMap<&Label, Vec<&Label>> = BTreeMap::new();
    for (cell, image) in comparison.table3() {
        fibres.entry(image).or_default().push(cell);
    }
    let merged: Vec<String> = fibres
        .iter()
        .filter(|(_, cells)| cells.len() > 1)
        .map(|(image, cells)| {
            let names: Vec<&str> = cells.iter().map(|c| c.as_str()).collect();
            let quantifier = if names.len() == 2 { "both" } else { "all" };
            format!("{} {quantifier} map to {image}", names.join(" and "))
        })
        .collect();
    let (dom, cod) = (comparison.dom(), comparison.cod());
    if merged.is_empty() {
        format!(
            "{} has {} 3-cells and {} has {}",
            dom.name(),
            dom.num_cells3(),
            cod.name(),
            cod.num_cells3()
        )
    } else {
        format!(
            "comparison {} -> {} identifies 3-cells: {}",
            dom.name(),
            cod.name(),
            merged.join("; ")
        )
    }
}
