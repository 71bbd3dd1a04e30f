//! Shared corpus and oracles for the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;

use golod_lab::dga::MonomialDga;
use golod_lab::field::{Field, PrimeField, Rationals};
use golod_lab::homology::{HomologyClass, HomologyEngine};
use golod_lab::massey::{homology_product, pair_criterion};
use golod_lab::monomial::{paper_example, Monomial, MonomialIdeal};
use golod_lab::series::{coefficientwise_le, p_series, q_series};
use golod_lab::koszul::StanleyReisnerDga;
use golod_lab::simplicial::SimplicialComplex;
use golod_lab::taylor::{fiber_complex, generators_below, TaylorDga};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x6f6c_6f64;

/// A random monomial ideal with at most 5 variables, 6 generators and
/// exponents at most 3 (minimalized, so possibly fewer generators).
pub fn random_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=5);
        let g = rng.gen_range(1..=6);
        let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let gens: Vec<Monomial> = (0..g)
            .map(|_| Monomial::new((0..n).map(|_| rng.gen_range(0..=3)).collect()))
            .collect();
        if gens.iter().any(Monomial::is_one) {
            continue;
        }
        if let Ok(ideal) = MonomialIdeal::from_generators(vars, gens) {
            return ideal;
        }
    }
}

/// The built-in example followed by `count` random ideals.
pub fn corpus(count: usize) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut out = vec![paper_example()];
    out.extend((0..count).map(|_| random_ideal(&mut rng)));
    out
}

fn bits(mut s: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            return None;
        }
        let i = s.trailing_zeros() as usize;
        s &= s - 1;
        Some(i)
    })
}

/// Exponent-wise lcm of the generators in `set`, from scratch.
pub fn lcm_oracle(ideal: &MonomialIdeal, set: u64) -> Vec<u32> {
    let mut e = vec![0u32; ideal.nvars()];
    for k in bits(set) {
        for (x, &y) in e.iter_mut().zip(ideal.gens()[k].exponents()) {
            *x = (*x).max(y);
        }
    }
    e
}

/// Reduced Taylor differential with integer coefficients.
pub fn boundary_oracle(ideal: &MonomialIdeal, set: u64) -> HashMap<u64, i64> {
    let l = lcm_oracle(ideal, set);
    let mut out = HashMap::new();
    for (pos, m) in bits(set).enumerate() {
        let face = set & !(1 << m);
        if face != 0 && lcm_oracle(ideal, face) == l {
            *out.entry(face).or_insert(0) += if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Reduced Taylor product of two cells: `None` or a signed cell.
pub fn product_oracle(ideal: &MonomialIdeal, i: u64, j: u64) -> Option<(i64, u64)> {
    if i & j != 0 {
        return None;
    }
    let (li, lj, lij) = (lcm_oracle(ideal, i), lcm_oracle(ideal, j), lcm_oracle(ideal, i | j));
    if li.iter().zip(&lj).map(|(a, b)| a + b).collect::<Vec<_>>() != lij {
        return None;
    }
    let crossings: usize = bits(i).map(|m| bits(j).filter(|&k| k < m).count()).sum();
    Some((if crossings.is_multiple_of(2) { 1 } else { -1 }, i | j))
}

fn dga_terms<D: MonomialDga>(dga: &D, c: D::Cell) -> HashMap<D::Cell, i64> {
    let mut out = HashMap::new();
    for (f, neg) in dga.differential(c) {
        *out.entry(f).or_insert(0) += if neg { -1 } else { 1 };
    }
    out.retain(|_, v| *v != 0);
    out
}

fn apply_d<D: MonomialDga>(dga: &D, chain: &HashMap<D::Cell, i64>) -> HashMap<D::Cell, i64> {
    let mut out = HashMap::new();
    for (&c, &x) in chain {
        for (f, y) in dga_terms(dga, c) {
            *out.entry(f).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn apply_mul<D: MonomialDga>(
    dga: &D,
    a: &HashMap<D::Cell, i64>,
    b: &HashMap<D::Cell, i64>,
) -> HashMap<D::Cell, i64> {
    let mut out = HashMap::new();
    for (&x, &s) in a {
        for (&y, &t) in b {
            if let Some((neg, z)) = dga.product(x, y) {
                *out.entry(z).or_insert(0) += if neg { -s * t } else { s * t };
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// All cells of positive degree in every strand of the homology support.
pub fn all_cells<D: MonomialDga>(dga: &D) -> Vec<D::Cell> {
    let mut out = Vec::new();
    for u in dga.homology_support() {
        out.extend(dga.cells(&u).expect("support strands exist"));
    }
    out.retain(|&c| dga.cell_degree(c) > 0);
    out.sort();
    out.dedup();
    out
}

pub type Check = Result<(), String>;

/// The library differential and product agree with the formulas computed
/// from scratch.
pub fn check_taylor_formulas(ideal: &MonomialIdeal) -> Check {
    let dga = TaylorDga::new(ideal.clone()).map_err(|e| e.to_string())?;
    let cells = all_cells(&dga);
    for &c in &cells {
        if dga_terms(&dga, c) != boundary_oracle(ideal, c) {
            return Err(format!("differential of {c:#b} differs from the oracle"));
        }
    }
    for &a in &cells {
        for &b in &cells {
            let lib = dga.product(a, b).map(|(neg, z)| (if neg { -1 } else { 1 }, z));
            if lib != product_oracle(ideal, a, b) {
                return Err(format!("product {a:#b}*{b:#b} differs from the oracle"));
            }
        }
    }
    Ok(())
}

pub fn check_d_squared<D: MonomialDga>(dga: &D) -> Check {
    for c in all_cells(dga) {
        let dd = apply_d(dga, &dga_terms(dga, c));
        if !dd.is_empty() {
            return Err(format!("d^2 {} != 0", dga.describe(c)));
        }
    }
    Ok(())
}

/// `d(xy) = d(x)y + (-1)^|x| x d(y)` on all pairs of cells.
pub fn check_leibniz<D: MonomialDga>(dga: &D) -> Check {
    let cells = all_cells(dga);
    for &a in &cells {
        for &b in &cells {
            let unit = |c| HashMap::from([(c, 1i64)]);
            let lhs = apply_d(dga, &apply_mul(dga, &unit(a), &unit(b)));
            let mut rhs = apply_mul(dga, &dga_terms(dga, a), &unit(b));
            let sign = if dga.cell_degree(a) % 2 == 0 { 1 } else { -1 };
            for (z, v) in apply_mul(dga, &unit(a), &dga_terms(dga, b)) {
                *rhs.entry(z).or_insert(0) += sign * v;
            }
            rhs.retain(|_, v| *v != 0);
            if lhs != rhs {
                return Err(format!("Leibniz fails on {} * {}", dga.describe(a), dga.describe(b)));
            }
        }
    }
    Ok(())
}

/// `xy = (-1)^{|x||y|} yx` on cells, and on homology basis classes.
pub fn check_commutativity<D: MonomialDga, F: Field>(engine: &HomologyEngine<D, F>) -> Check {
    let dga = engine.dga();
    let cells = all_cells(dga);
    for &a in &cells {
        for &b in &cells {
            let ab = dga.product(a, b);
            let ba = dga.product(b, a);
            let odd = dga.cell_degree(a) * dga.cell_degree(b) % 2 == 1;
            let ok = match (ab, ba) {
                (None, None) => true,
                (Some((n1, z1)), Some((n2, z2))) => z1 == z2 && (n1 != n2) == odd,
                _ => false,
            };
            if !ok {
                return Err(format!("cells {} and {} do not graded-commute", dga.describe(a), dga.describe(b)));
            }
        }
    }
    let field = engine.field();
    let basis = engine.positive_basis().map_err(|e| e.to_string())?;
    for x in &basis {
        for y in &basis {
            let xy = homology_product(engine, x, y).map_err(|e| e.to_string())?;
            let yx = homology_product(engine, y, x).map_err(|e| e.to_string())?;
            let odd = x.degree() * y.degree() % 2 == 1;
            let expected: Vec<F::Elem> = yx.coords.iter().map(|c| field.signed(c, odd)).collect();
            if xy.coords != expected {
                return Err("homology product not graded-commutative".into());
            }
        }
    }
    Ok(())
}

fn generator_class<F: Field>(e: &HomologyEngine<TaylorDga, F>, k: usize) -> HomologyClass<F> {
    e.class_of(&e.cell_chain(1 << k).unwrap()).unwrap()
}

/// For coprime generators, the divisibility criterion matches the linear
/// algebra.
pub fn check_pair_criterion<F: Field>(engine: &HomologyEngine<TaylorDga, F>) -> Check {
    let ideal = engine.dga().ideal();
    let g = ideal.gens();
    for a in 0..g.len() {
        for b in 0..g.len() {
            if a == b || !g[a].coprime(&g[b]).unwrap() {
                continue;
            }
            let combinatorial = pair_criterion(ideal, a, b).map_err(|e| e.to_string())?;
            let p = homology_product(engine, &generator_class(engine, a), &generator_class(engine, b))
                .map_err(|e| e.to_string())?;
            if combinatorial != p.is_zero(engine.field()) {
                return Err(format!("pair ({a}, {b}): criterion {combinatorial}, algebra disagrees"));
            }
        }
    }
    Ok(())
}

/// `dim H_i(strand u) = dim H~^{#G_u - i - 1}(F_u)` on the lcm-lattice.
pub fn check_duality<F: Field>(engine: &HomologyEngine<TaylorDga, F>) -> Check {
    let ideal = engine.dga().ideal();
    for u in engine.dga().lattice().elements() {
        let g = generators_below(ideal, u).count_ones() as i64;
        let fiber = fiber_complex(ideal, u).map_err(|e| e.to_string())?;
        let coh = fiber.reduced_cohomology_dims(engine.field());
        for i in 0..=g {
            let h = engine.homology_dim(u, i as usize).map_err(|e| e.to_string())?;
            let k = g - i - 1;
            let c = usize::try_from(k + 1).ok().and_then(|idx| coh.get(idx)).copied().unwrap_or(0);
            if h != c {
                return Err(format!(
                    "strand {} degree {i}: H = {h}, fiber cohomology = {c}",
                    u.render(ideal.vars())
                ));
            }
        }
    }
    Ok(())
}

/// Serre's inequality `P <= Q` coefficientwise up to `order`.
pub fn check_serre(ideal: &MonomialIdeal, order: usize) -> Check {
    let betti = golod_lab::homology::betti(ideal, Rationals).map_err(|e| e.to_string())?;
    let q = q_series(&betti, order);
    let (p, _) = p_series(ideal, &Rationals, order, None).map_err(|e| e.to_string())?;
    if !coefficientwise_le(&p, &q) {
        return Err(format!("P = {p} exceeds Q = {q}"));
    }
    Ok(())
}

pub fn check_field_independence(ideal: &MonomialIdeal) -> Check {
    let q = golod_lab::homology::betti(ideal, Rationals).map_err(|e| e.to_string())?;
    let f2 = golod_lab::homology::betti(ideal, PrimeField::new(2).unwrap()).map_err(|e| e.to_string())?;
    if q.multigraded != f2.multigraded {
        return Err("multigraded Betti numbers differ over Q and F_2".into());
    }
    Ok(())
}

/// The Stanley-Reisner model of the polarization satisfies `d^2 = 0` and
/// the Leibniz rule and has the Betti numbers of the Taylor strands.
pub fn check_stanley_reisner(ideal: &MonomialIdeal) -> Check {
    let (pol, _) = ideal.polarize();
    let complex = SimplicialComplex::complex_of(&pol).map_err(|e| e.to_string())?;
    let dga = StanleyReisnerDga::new(complex);
    check_d_squared(&dga)?;
    check_leibniz(&dga)?;
    let sr = HomologyEngine::new(dga, Rationals).betti().map_err(|e| e.to_string())?;
    let taylor = golod_lab::homology::betti(&pol, Rationals).map_err(|e| e.to_string())?;
    if sr.multigraded != taylor.multigraded {
        return Err("Stanley-Reisner and Taylor Betti numbers differ".into());
    }
    Ok(())
}

pub struct PropertyOutcome {
    pub name: &'static str,
    /// Ideals on which the property was evaluated.
    pub checked: usize,
    pub failures: Vec<String>,
}

pub const SERRE_ORDER: usize = 3;
/// `P` is computed where the degree caps stay small.
pub const SERRE_MAX_DEGREE: u32 = 6;
pub const SR_MAX_VARIABLES: usize = 8;

/// Runs every property on every ideal of the corpus. A property returns
/// `None` where it was not evaluated.
pub fn property_suite(corpus: &[MonomialIdeal]) -> Vec<PropertyOutcome> {
    type Prop = (&'static str, fn(&MonomialIdeal) -> Option<Check>);
    fn taylor(i: &MonomialIdeal) -> Result<HomologyEngine<TaylorDga, Rationals>, String> {
        HomologyEngine::taylor(i, Rationals).map_err(|e| e.to_string())
    }
    fn dga(i: &MonomialIdeal) -> Result<TaylorDga, String> {
        TaylorDga::new(i.clone()).map_err(|e| e.to_string())
    }
    let props: [Prop; 9] = [
        ("taylor formulas match oracle", |i| Some(check_taylor_formulas(i))),
        ("d^2 = 0", |i| Some(dga(i).and_then(|d| check_d_squared(&d)))),
        ("Leibniz rule", |i| Some(dga(i).and_then(|d| check_leibniz(&d)))),
        ("graded commutativity", |i| Some(taylor(i).and_then(|e| check_commutativity(&e)))),
        ("coprime pair criterion", |i| Some(taylor(i).and_then(|e| check_pair_criterion(&e)))),
        ("strand/fiber duality", |i| Some(taylor(i).and_then(|e| check_duality(&e)))),
        ("Serre P <= Q", |i| {
            (i.max_degree() <= SERRE_MAX_DEGREE).then(|| check_serre(i, SERRE_ORDER))
        }),
        ("Betti numbers Q = F_2", |i| Some(check_field_independence(i))),
        ("Stanley-Reisner model", |i| {
            (i.polarize().0.nvars() <= SR_MAX_VARIABLES).then(|| check_stanley_reisner(i))
        }),
    ];
    props
        .iter()
        .map(|(name, f)| {
            let results: Vec<(usize, Check)> =
                corpus.iter().enumerate().filter_map(|(k, i)| f(i).map(|r| (k, r))).collect();
            let failures = results
                .iter()
                .filter_map(|(k, r)| {
                    r.as_ref()
                        .err()
                        .map(|e| format!("{}: {e}", corpus[*k].render().replace('\n', "; ")))
                })
                .collect();
            PropertyOutcome {
                name,
                checked: results.len(),
                failures,
            }
        })
        .collect()
}
