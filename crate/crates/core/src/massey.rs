//! Products and ternary Massey products on Koszul homology.

use crate::dga::{Chain, MonomialDga};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{HomologyClass, HomologyEngine};
use crate::monomial::MonomialIdeal;
use crate::taylor::{reduced_boundary, TaylorDga};

/// The class of the product of two representatives.
pub fn homology_product<D: MonomialDga, F: Field>(
    engine: &HomologyEngine<D, F>,
    a: &HomologyClass<F>,
    b: &HomologyClass<F>,
) -> Result<HomologyClass<F>> {
    if a.degree() == 0 || b.degree() == 0 {
        return Err(Error::Grading("products are taken in positive degrees".into()));
    }
    let p = engine.product(&a.representative, &b.representative)?;
    engine.class_of(&p)
}

/// Outcome of the exhaustive product check.
#[derive(Clone, Debug)]
pub struct ProductReport<F: Field> {
    pub trivial: bool,
    /// Ordered pairs of basis classes examined.
    pub pairs: usize,
    /// Pairs whose target homology group was nonzero, so that the product
    /// was actually computed.
    pub computed: usize,
    pub witness: Option<(HomologyClass<F>, HomologyClass<F>, HomologyClass<F>)>,
}

/// Checks `α·β = 0` for every ordered pair of homology basis classes of
/// positive degree. Pairs landing in a zero homology group are counted
/// but need no linear algebra.
pub fn all_products_trivial<D: MonomialDga, F: Field>(
    engine: &HomologyEngine<D, F>,
) -> Result<ProductReport<F>> {
    let basis = engine.positive_basis()?;
    let mut report = ProductReport {
        trivial: true,
        pairs: 0,
        computed: 0,
        witness: None,
    };
    for a in &basis {
        for b in &basis {
            report.pairs += 1;
            let u = a.mdeg().mul(b.mdeg())?;
            if engine.homology_dim(&u, a.degree() + b.degree())? == 0 {
                continue;
            }
            report.computed += 1;
            let p = homology_product(engine, a, b)?;
            if !p.is_zero(engine.field()) {
                report.trivial = false;
                report.witness = Some((a.clone(), b.clone(), p));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// For coprime generators `a`, `b`: whether `[ē_a]·[ē_b] = 0`, decided by
/// the existence of a third generator dividing `lcm(a, b)`.
pub fn pair_criterion(ideal: &MonomialIdeal, a: usize, b: usize) -> Result<bool> {
    let gens = ideal.gens();
    if a >= gens.len() || b >= gens.len() {
        return Err(Error::Inapplicable("generator index out of range".into()));
    }
    if a == b || !gens[a].coprime(&gens[b])? {
        return Err(Error::Inapplicable(format!(
            "{} and {} are not coprime",
            ideal.render_gen(a),
            ideal.render_gen(b)
        )));
    }
    let l = gens[a].lcm(&gens[b])?;
    Ok((0..gens.len())
        .filter(|&c| c != a && c != b)
        .any(|c| gens[c].divides_unchecked(&l)))
}

/// The defining-system data of a ternary Massey product.
#[derive(Clone, Debug)]
pub struct DefiningSystem<F: Field> {
    /// `∂s = ᾱβ`
    pub s: Chain<F>,
    /// `∂t = β̄γ`
    pub t: Chain<F>,
}

#[derive(Clone, Debug)]
pub struct MasseyResult<F: Field> {
    pub defined: bool,
    /// Set when the caller certified `(B_2)`, so the Massey set is a point.
    pub unique: bool,
    pub value: Option<HomologyClass<F>>,
    pub witness: Option<DefiningSystem<F>>,
    /// Why the product is undefined or the construction inapplicable.
    pub note: Option<String>,
}

impl<F: Field> MasseyResult<F> {
    fn undefined(note: String) -> Self {
        MasseyResult {
            defined: false,
            unique: false,
            value: None,
            witness: None,
            note: Some(note),
        }
    }

    pub fn is_nonzero(&self, field: &F) -> bool {
        self.value.as_ref().is_some_and(|v| !v.is_zero(field))
    }
}

/// `μ₃(α, β, γ)` through a defining system: `∂s = ᾱβ`, `∂t = β̄γ`, value
/// `[ᾱt + s̄γ]` with `ā = (-1)^{|a|+1} a`.
pub fn ternary_massey<D: MonomialDga, F: Field>(
    engine: &HomologyEngine<D, F>,
    a: &HomologyClass<F>,
    b: &HomologyClass<F>,
    c: &HomologyClass<F>,
    b2_certified: bool,
) -> Result<MasseyResult<F>> {
    let field = engine.field();
    for x in [a, b, c] {
        if x.degree() == 0 {
            return Err(Error::Grading("Massey factors must have positive degree".into()));
        }
        if x.representative.mdeg.nvars() != engine.dga().nvars() {
            return Err(Error::AmbientMismatch(x.representative.mdeg.nvars(), engine.dga().nvars()));
        }
    }
    let a_bar = a.representative.bar(field);
    let b_bar = b.representative.bar(field);
    let p1 = engine.product(&a_bar, &b.representative)?;
    let p2 = engine.product(&b_bar, &c.representative)?;
    let Some(s) = engine.solve_boundary(&p1)? else {
        return Ok(MasseyResult::undefined("first product is nonzero".into()));
    };
    let Some(t) = engine.solve_boundary(&p2)? else {
        return Ok(MasseyResult::undefined("second product is nonzero".into()));
    };
    let value = engine
        .product(&a_bar, &t)?
        .add(field, &engine.product(&s.bar(field), &c.representative)?)?;
    let class = engine.class_of(&value)?;
    Ok(MasseyResult {
        defined: true,
        unique: b2_certified,
        value: Some(class),
        witness: Some(DefiningSystem { s, t }),
        note: None,
    })
}

/// The combinatorial representative of `μ₃([ē_a],[ē_b],[ē_c])` built from
/// generators `ab | lcm(a,b)` and `bc | lcm(b,c)`. Under the order
/// `a ≺ ab ≺ b ≺ bc ≺ c` it is `-ē{a,ab,b,c} - ē{a,b,bc,c}`; for other
/// orders the signs are recomputed.
pub fn ternary_massey_generators<F: Field>(
    engine: &HomologyEngine<TaylorDga, F>,
    a: usize,
    b: usize,
    c: usize,
    b2_certified: bool,
) -> Result<MasseyResult<F>> {
    let ideal = engine.dga().ideal();
    let gens = ideal.gens();
    let field = engine.field();
    if [a, b, c].iter().any(|&k| k >= gens.len()) {
        return Err(Error::Inapplicable("generator index out of range".into()));
    }
    let coprime = a != b
        && b != c
        && a != c
        && gens[a].coprime(&gens[b])?
        && gens[b].coprime(&gens[c])?
        && gens[a].coprime(&gens[c])?;
    if !coprime {
        return Ok(MasseyResult::undefined("not pairwise coprime".into()));
    }
    let between = |x: usize, y: usize| {
        let l = gens[x].lcm_unchecked(&gens[y]);
        (0..gens.len()).find(|&k| ![a, b, c].contains(&k) && gens[k].divides_unchecked(&l))
    };
    let Some(ab) = between(a, b) else {
        return Ok(MasseyResult::undefined("no generator ab divides lcm(a, b)".into()));
    };
    let Some(bc) = between(b, c) else {
        return Ok(MasseyResult::undefined("no generator bc divides lcm(b, c)".into()));
    };
    // s = ε ē{a,ab,b} with ∂s = ē_a·ē_b, and likewise t
    let lift = |x: usize, y: usize, z: usize| -> Result<Option<Chain<F>>> {
        let pair = TaylorDga::subset(&[x, z]);
        let triple = TaylorDga::subset(&[x, y, z]);
        let d = reduced_boundary(ideal, triple);
        let [(face, neg)] = d.as_slice() else {
            return Ok(None);
        };
        if *face != pair {
            return Ok(None);
        }
        let prod = engine.product(&engine.cell_chain(1 << x)?, &engine.cell_chain(1 << z)?)?;
        let target = engine.cell_chain(pair)?;
        let sign = if prod == target { *neg } else { !*neg };
        engine
            .chain(&[(triple, field.signed(&field.one(), sign))])
            .map(Some)
    };
    let Some(s) = lift(a, ab, b)? else {
        return Ok(MasseyResult::undefined("∂ē{a,ab,b} is not ±ē{a,b}".into()));
    };
    let Some(t) = lift(b, bc, c)? else {
        return Ok(MasseyResult::undefined("∂ē{b,bc,c} is not ±ē{b,c}".into()));
    };
    let ea = engine.cell_chain(1 << a)?;
    let ec = engine.cell_chain(1 << c)?;
    let value = engine
        .product(&ea.bar(field), &t)?
        .add(field, &engine.product(&s.bar(field), &ec)?)?;
    let class = engine.class_of(&value)?;
    Ok(MasseyResult {
        defined: true,
        unique: b2_certified,
        value: Some(class),
        witness: Some(DefiningSystem { s, t }),
        note: None,
    })
}

/// A nonzero ternary Massey product found while checking `(B_3)`.
#[derive(Clone, Debug)]
pub struct MasseyWitness<F: Field> {
    pub factors: [HomologyClass<F>; 3],
    pub result: MasseyResult<F>,
}

#[derive(Clone, Debug)]
pub struct BReport<F: Field> {
    pub holds: bool,
    pub products: ProductReport<F>,
    /// Ordered basis triples examined and those needing a defining system.
    pub triples: usize,
    pub computed: usize,
    pub massey_witness: Option<MasseyWitness<F>>,
}

/// Whether all `k`-ary Massey products vanish for `k ≤ r`, `r ∈ {2, 3}`.
///
/// Once products vanish, `μ₃` is single-valued and trilinear, so basis
/// triples suffice; triples whose value lands in a zero homology group are
/// skipped.
pub fn satisfies_b<D: MonomialDga, F: Field>(
    engine: &HomologyEngine<D, F>,
    r: usize,
) -> Result<BReport<F>> {
    if !(2..=3).contains(&r) {
        return Err(Error::UnsupportedArity(r));
    }
    let products = all_products_trivial(engine)?;
    let mut report = BReport {
        holds: products.trivial,
        products,
        triples: 0,
        computed: 0,
        massey_witness: None,
    };
    if r == 2 || !report.holds {
        return Ok(report);
    }
    let basis = engine.positive_basis()?;
    for a in &basis {
        for b in &basis {
            let ab = a.mdeg().mul(b.mdeg())?;
            for c in &basis {
                report.triples += 1;
                let u = ab.mul(c.mdeg())?;
                let degree = a.degree() + b.degree() + c.degree() + 1;
                if engine.homology_dim(&u, degree)? == 0 {
                    continue;
                }
                report.computed += 1;
                let m = ternary_massey(engine, a, b, c, true)?;
                if !m.defined || m.is_nonzero(engine.field()) {
                    report.holds = false;
                    report.massey_witness = Some(MasseyWitness {
                        factors: [a.clone(), b.clone(), c.clone()],
                        result: m,
                    });
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}
