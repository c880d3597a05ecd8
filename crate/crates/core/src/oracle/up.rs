use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::Serialize;

use crate::computad::Computad;
use crate::constructions::{coeq_factor, pair_into_product, CoequalizerResult, ProductResult};
use crate::error::{Error, Result};
use crate::homs::{visit_homs, SearchBudget};
use crate::morphism::{same_object, Morphism};
use crate::par::{self, Strategy};

use super::generate::{generate_computads_with, GeneratorBounds};

/// How a universal-property check is run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub bounds: GeneratorBounds,
    /// Budget for each hom-set enumeration.
    pub budget: SearchBudget,
    pub strategy: Strategy,
}

impl OracleConfig {
    pub fn new(bounds: GeneratorBounds) -> Self {
        OracleConfig {
            bounds,
            budget: SearchBudget::DEFAULT,
            strategy: Strategy::default(),
        }
    }

    pub fn with_budget(mut self, budget: SearchBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    /// No candidate factorisation commutes.
    NoFactorisation,
    /// More than one factorisation commutes.
    NonUniqueFactorisation,
    /// A structure map fails its defining equation, or the constructed
    /// factorisation is not the commuting one.
    NonCommuting,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::NoFactorisation => "no-factorisation",
            FailureReason::NonUniqueFactorisation => "non-unique-factorisation",
            FailureReason::NonCommuting => "non-commuting",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpFailure {
    pub test_object: String,
    pub cone: String,
    pub reason: FailureReason,
}

/// Outcome of checking a universal property over a bounded family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpReport {
    pub subject: String,
    pub bounds: GeneratorBounds,
    pub test_objects: usize,
    pub cones_checked: u64,
    pub failures: Vec<UpFailure>,
}

impl UpReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Plain-text summary: a header, one line per failure, then
    /// `PASS cones=<n>` or `FAIL failures=<k>`.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{} bounds={} objects={}\n",
            self.subject, self.bounds, self.test_objects
        );
        for f in &self.failures {
            let _ = writeln!(out, "{} object={} cone={}", f.reason, f.test_object, f.cone);
        }
        if self.passed() {
            let _ = writeln!(out, "PASS cones={}", self.cones_checked);
        } else {
            let _ = writeln!(out, "FAIL failures={}", self.failures.len());
        }
        out
    }
}

type Tables = (Vec<usize>, Vec<usize>);

fn describe(dom: &Computad, cod: &Computad, (m2, m3): (&[usize], &[usize])) -> String {
    let two: Vec<String> = dom
        .cells2()
        .iter()
        .zip(m2)
        .map(|(a, &b)| format!("{a}->{}", cod.cells2()[b]))
        .collect();
    let three: Vec<String> = dom
        .cells3()
        .iter()
        .zip(m3)
        .map(|(a, &b)| format!("{}->{}", a.name, cod.cells3()[b].name))
        .collect();
    format!("{{{};{}}}", two.join(","), three.join(","))
}

fn collect_homs(x: &Computad, y: &Computad, budget: SearchBudget) -> Result<Vec<Tables>> {
    let mut out = Vec::new();
    visit_homs(x, y, budget, |m2, m3| out.push((m2.to_vec(), m3.to_vec())))?;
    Ok(out)
}

fn after(outer: &Morphism, (m2, m3): (&[usize], &[usize])) -> Tables {
    (
        m2.iter().map(|&i| outer.map2_indices()[i]).collect(),
        m3.iter().map(|&i| outer.map3_indices()[i]).collect(),
    )
}

fn merge(
    subject: String,
    bounds: GeneratorBounds,
    test_objects: usize,
    mut failures: Vec<UpFailure>,
    per_object: Vec<Result<(u64, Vec<UpFailure>)>>,
) -> Result<UpReport> {
    let mut cones_checked = 0;
    for r in per_object {
        let (cones, fails) = r?;
        cones_checked += cones;
        failures.extend(fails);
    }
    Ok(UpReport {
        subject,
        bounds,
        test_objects,
        cones_checked,
        failures,
    })
}

/// Checks that `candidate` is a product of `a` and `b` against every test
/// object `Y` in the bounded family: each cone `(u, v)` must have exactly one
/// `k : Y → candidate` with `p ∘ k = u` and `q ∘ k = v`, and it must be the
/// map built by [`pair_into_product`].
///
/// The factorisations are found by enumerating `Hom(Y, candidate)` once per
/// `Y` and grouping by the composite with the projections.
pub fn check_product_up(
    a: &Arc<Computad>,
    b: &Arc<Computad>,
    candidate: &ProductResult,
    config: &OracleConfig,
) -> Result<UpReport> {
    let p = &candidate.proj_left;
    let q = &candidate.proj_right;
    if !same_object(p.dom(), &candidate.object)
        || !same_object(q.dom(), &candidate.object)
        || !same_object(p.cod(), a)
        || !same_object(q.cod(), b)
    {
        return Err(Error::Mismatch(
            "candidate projections do not run from the candidate to the factors".into(),
        ));
    }
    for (name, m) in [("left", p), ("right", q)] {
        if !m.validate().is_empty() {
            return Err(Error::Mismatch(format!(
                "{name} projection is not a morphism"
            )));
        }
    }
    let family = generate_computads_with(config.bounds, config.strategy);
    let object = &candidate.object;

    let per_object = par::map(
        config.strategy,
        &family,
        |y| -> Result<(u64, Vec<UpFailure>)> {
            let mut factorisations: HashMap<(Tables, Tables), (usize, Tables)> = HashMap::new();
            visit_homs(y, object, config.budget, |k2, k3| {
                let key = (after(p, (k2, k3)), after(q, (k2, k3)));
                let entry = factorisations
                    .entry(key)
                    .or_insert_with(|| (0, (k2.to_vec(), k3.to_vec())));
                entry.0 += 1;
            })?;
            let us = collect_homs(y, a, config.budget)?;
            let vs = collect_homs(y, b, config.budget)?;

            let mut cones = 0u64;
            let mut failures = Vec::new();
            for u in &us {
                for v in &vs {
                    cones += 1;
                    let fail = |reason| UpFailure {
                        test_object: y.name().to_string(),
                        cone: format!(
                            "u={} v={}",
                            describe(y, a, (&u.0, &u.1)),
                            describe(y, b, (&v.0, &v.1))
                        ),
                        reason,
                    };
                    match factorisations.get(&(u.clone(), v.clone())) {
                        None => failures.push(fail(FailureReason::NoFactorisation)),
                        Some((n, _)) if *n > 1 => {
                            failures.push(fail(FailureReason::NonUniqueFactorisation))
                        }
                        Some((_, k)) => {
                            let um = Morphism::from_indices(
                                y.clone(),
                                a.clone(),
                                u.0.clone(),
                                u.1.clone(),
                            );
                            let vm = Morphism::from_indices(
                                y.clone(),
                                b.clone(),
                                v.0.clone(),
                                v.1.clone(),
                            );
                            let agrees =
                                pair_into_product(&um, &vm, candidate).is_ok_and(|built| {
                                    built.map2_indices() == k.0 && built.map3_indices() == k.1
                                });
                            if !agrees {
                                failures.push(fail(FailureReason::NonCommuting));
                            }
                        }
                    }
                }
            }
            Ok((cones, failures))
        },
    );
    merge(
        format!("product {} = {} x {}", object.name(), a.name(), b.name()),
        config.bounds,
        family.len(),
        Vec::new(),
        per_object,
    )
}

/// Checks that `candidate` coequalises `α1, α2` and that every cocone
/// `u : A → Y` with `u ∘ α1 = u ∘ α2` factors as `k ∘ q` for exactly one `k`,
/// which must be the map built by [`coeq_factor`].
pub fn check_coequalizer_up(
    alpha1: &Morphism,
    alpha2: &Morphism,
    candidate: &CoequalizerResult,
    config: &OracleConfig,
) -> Result<UpReport> {
    let q = &candidate.q;
    let a = alpha1.cod();
    if !same_object(q.dom(), a)
        || !same_object(alpha1.dom(), alpha2.dom())
        || !same_object(alpha2.cod(), a)
    {
        return Err(Error::Mismatch(
            "candidate quotient map does not start at the codomain of the pair".into(),
        ));
    }
    if !q.validate().is_empty() {
        return Err(Error::Mismatch(
            "candidate quotient map is not a morphism".into(),
        ));
    }
    let object = &candidate.object;
    let mut failures = Vec::new();
    if q.compose(alpha1)? != q.compose(alpha2)? {
        failures.push(UpFailure {
            test_object: "-".into(),
            cone: "q".into(),
            reason: FailureReason::NonCommuting,
        });
    }

    let family = generate_computads_with(config.bounds, config.strategy);
    let (a1, a2) = (alpha1.map2_indices(), alpha2.map2_indices());
    let (e1, e2) = (alpha1.map3_indices(), alpha2.map3_indices());

    let per_object = par::map(
        config.strategy,
        &family,
        |y| -> Result<(u64, Vec<UpFailure>)> {
            let mut factorisations: HashMap<Tables, (usize, Tables)> = HashMap::new();
            visit_homs(object, y, config.budget, |k2, k3| {
                let key = (
                    q.map2_indices().iter().map(|&i| k2[i]).collect(),
                    q.map3_indices().iter().map(|&i| k3[i]).collect(),
                );
                let entry = factorisations
                    .entry(key)
                    .or_insert_with(|| (0, (k2.to_vec(), k3.to_vec())));
                entry.0 += 1;
            })?;

            let mut cones = 0u64;
            let mut failures = Vec::new();
            let mut check = |u2: &[usize], u3: &[usize]| {
                let cocone = a1.iter().zip(a2).all(|(&i, &j)| u2[i] == u2[j])
                    && e1.iter().zip(e2).all(|(&i, &j)| u3[i] == u3[j]);
                if !cocone {
                    return;
                }
                cones += 1;
                let fail = |reason| UpFailure {
                    test_object: y.name().to_string(),
                    cone: format!("u={}", describe(a, y, (u2, u3))),
                    reason,
                };
                match factorisations.get(&(u2.to_vec(), u3.to_vec())) {
                    None => failures.push(fail(FailureReason::NoFactorisation)),
                    Some((n, _)) if *n > 1 => {
                        failures.push(fail(FailureReason::NonUniqueFactorisation))
                    }
                    Some((_, k)) => {
                        let um =
                            Morphism::from_indices(a.clone(), y.clone(), u2.to_vec(), u3.to_vec());
                        let agrees = coeq_factor(candidate, &um).is_ok_and(|built| {
                            built.map2_indices() == k.0 && built.map3_indices() == k.1
                        });
                        if !agrees {
                            failures.push(fail(FailureReason::NonCommuting));
                        }
                    }
                }
            };
            visit_homs(a, y, config.budget, |u2, u3| check(u2, u3))?;
            Ok((cones, failures))
        },
    );
    merge(
        format!(
            "coequaliser {} of {} => {}",
            object.name(),
            alpha1.dom().name(),
            a.name()
        ),
        config.bounds,
        family.len(),
        failures,
        per_object,
    )
}
