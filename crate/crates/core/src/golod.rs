//! The Golod decision pipeline.
//!
//! 1. A nonzero product on Koszul homology rules out Golodness.
//! 2. Combinatorial classes in which trivial products suffice.
//! 3. Arity bounds (regularity, projective dimension, number of variables)
//!    reduce the question to `(B_2)` or `(B_3)`, which are checked exactly.
//! 4. Otherwise, truncated `P` and `Q` are compared.

use serde::Serialize;

use crate::dga::MonomialDga;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{BettiData, HomologyClass, HomologyEngine};
use crate::koszul::StanleyReisnerDga;
use crate::massey::{satisfies_b, BReport};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::series::{p_series, q_series, series_compare};
use crate::simplicial::SimplicialComplex;
use crate::taylor::TaylorDga;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GolodStatus {
    Golod,
    NotGolod,
    Undecided,
}

/// A class in which trivial Koszul products already imply Golodness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Quadratic,
    StronglyGeneric,
    AtMostSevenGenerators,
    AtMostFourVariables,
    SquarefreeAtMostEightVariables,
    RegularityAtMostFour,
    SquarefreeComplexDimensionAtMostThree,
}

impl Criterion {
    pub fn description(self) -> &'static str {
        match self {
            Criterion::Quadratic => "generated in degree 2",
            Criterion::StronglyGeneric => "strongly generic",
            Criterion::AtMostSevenGenerators => "at most seven generators",
            Criterion::AtMostFourVariables => "at most four variables",
            Criterion::SquarefreeAtMostEightVariables => "squarefree in at most eight variables",
            Criterion::RegularityAtMostFour => "reg S/I <= 4",
            Criterion::SquarefreeComplexDimensionAtMostThree => {
                "squarefree with complex of dimension at most 3"
            }
        }
    }
}

/// The ideal with unused variables dropped. Golodness, Betti numbers and
/// Koszul products do not see them.
pub fn essential(ideal: &MonomialIdeal) -> MonomialIdeal {
    let used = ideal.used_variables();
    let keep: Vec<usize> = (0..ideal.nvars()).filter(|&v| used >> v & 1 == 1).collect();
    let vars = keep.iter().map(|&v| ideal.vars()[v].clone()).collect();
    let gens = ideal
        .gens()
        .iter()
        .map(|g| Monomial::new(keep.iter().map(|&v| g.exponents()[v]).collect()))
        .collect();
    MonomialIdeal::new(vars, gens).expect("dropping unused variables keeps minimality")
}

/// No variable occurs with the same positive exponent in two generators.
pub fn is_strongly_generic(ideal: &MonomialIdeal) -> bool {
    let gens = ideal.gens();
    (0..ideal.nvars()).all(|v| {
        let mut seen: Vec<u32> = gens.iter().map(|g| g.exponents()[v]).filter(|&e| e > 0).collect();
        let before = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == before
    })
}

/// Criteria from the list of classes that hold for `ideal`.
pub fn class_criteria(ideal: &MonomialIdeal, betti: &BettiData) -> Vec<Criterion> {
    let core = essential(ideal);
    let n = core.nvars();
    let mut out = Vec::new();
    if !core.gens().is_empty() && core.gens().iter().all(|g| g.total_degree() == 2) {
        out.push(Criterion::Quadratic);
    }
    if is_strongly_generic(&core) {
        out.push(Criterion::StronglyGeneric);
    }
    if core.ngens() <= 7 {
        out.push(Criterion::AtMostSevenGenerators);
    }
    if n <= 4 {
        out.push(Criterion::AtMostFourVariables);
    }
    if core.is_squarefree() && n <= 8 {
        out.push(Criterion::SquarefreeAtMostEightVariables);
    }
    if betti.regularity() <= 4 {
        out.push(Criterion::RegularityAtMostFour);
    }
    if core.is_squarefree() && n <= 24 {
        let small = SimplicialComplex::complex_of(&core)
            .ok()
            .and_then(|c| c.dim())
            .is_some_and(|d| d <= 3);
        if small {
            out.push(Criterion::SquarefreeComplexDimensionAtMostThree);
        }
    }
    out
}

/// A bound `r` such that `(B_r)` implies Golodness, with its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArityBound {
    pub r: usize,
    pub via: String,
}

/// All applicable arity bounds, smallest first.
pub fn arity_bounds(ideal: &MonomialIdeal, betti: &BettiData) -> Vec<ArityBound> {
    let reg = betti.regularity() as usize;
    let p = betti.projective_dimension();
    let mut out = vec![
        ArityBound {
            r: reg.saturating_sub(2).max(2),
            via: format!("reg = {reg}"),
        },
        ArityBound {
            r: p / 2 + 1,
            via: format!("pdim = {p}"),
        },
    ];
    let core = essential(ideal);
    let has_variable = core.gens().iter().any(|g| g.total_degree() == 1);
    if core.is_squarefree() && !has_variable && core.nvars() >= 2 {
        out.push(ArityBound {
            r: (core.nvars() / 2).max(2),
            via: format!("squarefree without variables, n = {}", core.nvars()),
        });
    }
    out.sort_by_key(|b| b.r);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub multidegree: Vec<u32>,
    pub homological_degree: usize,
    pub internal_degree: u32,
    pub representative: String,
}

impl ClassSummary {
    pub fn of<D: MonomialDga, F: Field>(
        engine: &HomologyEngine<D, F>,
        class: &HomologyClass<F>,
    ) -> Result<Self> {
        Ok(ClassSummary {
            multidegree: class.mdeg().exponents().to_vec(),
            homological_degree: class.degree(),
            internal_degree: class.mdeg().total_degree(),
            representative: engine.describe(&class.representative)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Product {
        left: ClassSummary,
        right: ClassSummary,
        product: ClassSummary,
    },
    Massey {
        factors: Vec<ClassSummary>,
        value: ClassSummary,
    },
    Series {
        index: usize,
        p: String,
        q: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesEvidence {
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub divergence: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    NontrivialProduct,
    ClassCriterion,
    ArityBound,
    Series,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GolodVerdict {
    pub status: GolodStatus,
    pub route: Route,
    pub reason: String,
    pub criteria: Vec<Criterion>,
    pub arity_bound: Option<ArityBound>,
    pub witness: Option<Witness>,
    pub evidence: Option<SeriesEvidence>,
    pub regularity: u32,
    pub projective_dimension: usize,
    /// Which model of Koszul homology was used.
    pub backend: String,
}

/// Which DGA computes Koszul homology: Taylor strands while they stay
/// small, the Stanley-Reisner model for larger squarefree ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Taylor,
    StanleyReisner,
}

pub fn choose_backend(ideal: &MonomialIdeal) -> Backend {
    if ideal.ngens() <= TAYLOR_GENERATOR_LIMIT || !ideal.is_squarefree() {
        Backend::Taylor
    } else {
        Backend::StanleyReisner
    }
}

/// Above this many generators squarefree ideals use the Stanley-Reisner
/// model.
pub const TAYLOR_GENERATOR_LIMIT: usize = 16;

fn product_witness<D: MonomialDga, F: Field>(
    engine: &HomologyEngine<D, F>,
    report: &BReport<F>,
) -> Result<Option<Witness>> {
    let Some((a, b, p)) = &report.products.witness else {
        return Ok(None);
    };
    Ok(Some(Witness::Product {
        left: ClassSummary::of(engine, a)?,
        right: ClassSummary::of(engine, b)?,
        product: ClassSummary::of(engine, p)?,
    }))
}

fn massey_witness<D: MonomialDga, F: Field>(
    engine: &HomologyEngine<D, F>,
    report: &BReport<F>,
) -> Result<Option<Witness>> {
    let Some(w) = &report.massey_witness else {
        return Ok(None);
    };
    let factors = w
        .factors
        .iter()
        .map(|c| ClassSummary::of(engine, c))
        .collect::<Result<Vec<_>>>()?;
    let value = match &w.result.value {
        Some(v) => ClassSummary::of(engine, v)?,
        None => {
            return Err(Error::Inapplicable(
                "Massey product undefined although products vanish".into(),
            ))
        }
    };
    Ok(Some(Witness::Massey { factors, value }))
}

fn decide_with<D: MonomialDga, F: Field>(
    engine: &HomologyEngine<D, F>,
    ideal: &MonomialIdeal,
    series_order: Option<usize>,
    backend: &str,
) -> Result<GolodVerdict> {
    let betti = engine.betti()?;
    let mut verdict = GolodVerdict {
        status: GolodStatus::Undecided,
        route: Route::Inconclusive,
        reason: String::new(),
        criteria: Vec::new(),
        arity_bound: None,
        witness: None,
        evidence: None,
        regularity: betti.regularity(),
        projective_dimension: betti.projective_dimension(),
        backend: backend.to_string(),
    };
    let b2 = satisfies_b(engine, 2)?;
    if !b2.holds {
        verdict.status = GolodStatus::NotGolod;
        verdict.route = Route::NontrivialProduct;
        verdict.reason = "nonzero product on Koszul homology".into();
        verdict.witness = product_witness(engine, &b2)?;
        return Ok(verdict);
    }
    verdict.criteria = class_criteria(ideal, &betti);
    if let Some(c) = verdict.criteria.first() {
        verdict.status = GolodStatus::Golod;
        verdict.route = Route::ClassCriterion;
        verdict.reason = format!("products are trivial and the ideal is {}", c.description());
        return Ok(verdict);
    }
    let bound = arity_bounds(ideal, &betti)
        .into_iter()
        .next()
        .expect("the regularity bound always applies");
    if bound.r <= 3 {
        verdict.arity_bound = Some(bound.clone());
        verdict.route = Route::ArityBound;
        if bound.r == 2 {
            verdict.status = GolodStatus::Golod;
            verdict.reason = format!("{} => r = 2; (B_2) holds", bound.via);
            return Ok(verdict);
        }
        let b3 = satisfies_b(engine, 3)?;
        if b3.holds {
            verdict.status = GolodStatus::Golod;
            verdict.reason = format!("{} => r = 3; (B_3) holds", bound.via);
        } else {
            verdict.status = GolodStatus::NotGolod;
            verdict.reason = format!("{} => r = 3; (B_3) fails, μ₃ witness nonzero", bound.via);
            verdict.witness = massey_witness(engine, &b3)?;
        }
        return Ok(verdict);
    }
    let Some(order) = series_order else {
        verdict.reason = format!(
            "products are trivial; arity bound r = {} ({}) exceeds 3 and no series comparison was requested",
            bound.r, bound.via
        );
        return Ok(verdict);
    };
    let q = q_series(&betti, order);
    let (p, _) = p_series(ideal, engine.field(), order, None)?;
    let divergence = series_compare(&p, &q);
    verdict.evidence = Some(SeriesEvidence {
        p: p.to_strings(),
        q: q.to_strings(),
        divergence: divergence.as_ref().map(|d| d.index),
    });
    verdict.route = Route::Series;
    match divergence {
        Some(d) if d.p_less() => {
            verdict.status = GolodStatus::NotGolod;
            verdict.reason = format!("P < Q at t^{}", d.index);
            verdict.witness = Some(Witness::Series {
                index: d.index,
                p: d.p.to_string(),
                q: d.q.to_string(),
            });
        }
        Some(d) => {
            return Err(Error::Series(format!(
                "P exceeds Q at t^{}, contradicting Serre's bound",
                d.index
            )))
        }
        None => {
            verdict.reason = format!("P = Q up to t^{order}; no decisive criterion");
        }
    }
    Ok(verdict)
}

/// Decides the Golod property of `S/I` where the available criteria allow.
pub fn golod_decide<F: Field>(
    ideal: &MonomialIdeal,
    field: F,
    series_order: Option<usize>,
) -> Result<GolodVerdict> {
    match choose_backend(ideal) {
        Backend::Taylor => {
            let engine = HomologyEngine::taylor(ideal, field)?;
            decide_with(&engine, ideal, series_order, "taylor")
        }
        Backend::StanleyReisner => {
            let dga = StanleyReisnerDga::new(SimplicialComplex::complex_of(ideal)?);
            let engine = HomologyEngine::new(dga, field);
            decide_with(&engine, ideal, series_order, "stanley-reisner")
        }
    }
}

/// Variant that labels Taylor basis elements with `labels`.
pub fn golod_decide_labeled<F: Field>(
    ideal: &MonomialIdeal,
    labels: Vec<String>,
    field: F,
    series_order: Option<usize>,
) -> Result<GolodVerdict> {
    let engine = HomologyEngine::new(TaylorDga::new(ideal.clone())?.with_labels(labels), field);
    decide_with(&engine, ideal, series_order, "taylor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::homology::betti;
    use crate::monomial::paper_example;

    fn ideal(text: &str) -> MonomialIdeal {
        MonomialIdeal::parse(text).unwrap()
    }

    #[test]
    fn criteria_examples() {
        let m2 = ideal("vars: x, y\nx^2\nx*y\ny^2");
        let c = class_criteria(&m2, &betti(&m2, Rationals).unwrap());
        assert!(c.contains(&Criterion::AtMostSevenGenerators));
        assert!(c.contains(&Criterion::AtMostFourVariables));
        let path = ideal("vars: x1, x2, x3\nx1*x2\nx2*x3");
        let c = class_criteria(&path, &betti(&path, Rationals).unwrap());
        for k in [
            Criterion::Quadratic,
            Criterion::AtMostSevenGenerators,
            Criterion::AtMostFourVariables,
        ] {
            assert!(c.contains(&k));
        }
        let p = paper_example();
        assert!(class_criteria(&p, &betti(&p, Rationals).unwrap()).is_empty());
        let (pol, _) = p.polarize();
        assert!(class_criteria(&pol, &betti(&pol, Rationals).unwrap()).is_empty());
    }

    #[test]
    fn strongly_generic() {
        assert!(is_strongly_generic(&ideal("vars: x, y\nx^2\nx*y^2")));
        assert!(!is_strongly_generic(&ideal("vars: x, y, z\nx*y\nx*z")));
    }

    #[test]
    fn decide_examples() {
        let v = golod_decide(&ideal("vars: x, y\nx*y"), Rationals, None).unwrap();
        assert_eq!(v.status, GolodStatus::Golod);
        let v = golod_decide(&ideal("vars: x, y\nx^2\ny^2"), Rationals, None).unwrap();
        assert_eq!(v.status, GolodStatus::NotGolod);
        assert_eq!(v.route, Route::NontrivialProduct);
        assert!(matches!(v.witness, Some(Witness::Product { .. })));
    }

    #[test]
    fn paper_example_is_not_golod() {
        for v in [
            golod_decide(&paper_example(), Rationals, None).unwrap(),
            golod_decide(&paper_example(), PrimeField::new(2).unwrap(), None).unwrap(),
        ] {
            assert_eq!(v.status, GolodStatus::NotGolod);
            assert_eq!(v.route, Route::ArityBound);
            assert!(v.reason.starts_with("reg = 5 => r = 3"), "{}", v.reason);
            let Some(Witness::Massey { factors, value }) = v.witness else {
                panic!("expected a Massey witness");
            };
            assert_eq!(factors.len(), 3);
            assert_eq!(value.homological_degree, 4);
        }
    }

    #[test]
    fn backend_choice() {
        assert_eq!(choose_backend(&paper_example()), Backend::Taylor);
    }
}
