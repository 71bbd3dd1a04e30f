//! Truncated Poincaré-Betti series.
//!
//! `Q` is Serre's bound computed from Betti numbers; `P` counts the
//! generators of a multigraded minimal free resolution of the residue field
//! over `R = S/I`, built degree by degree from standard monomials.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::BettiData;
use crate::linalg::{kernel_basis, rank, EchelonSpace, Matrix};
use crate::monomial::{Monomial, MonomialIdeal, Multidegree};

/// Coefficients `c_0, …, c_N` of a power series in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTrunc {
    pub coeffs: Vec<BigInt>,
}

impl SeriesTrunc {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        SeriesTrunc {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn truncate(&self, n: usize) -> Self {
        SeriesTrunc {
            coeffs: self.coeffs.iter().take(n + 1).cloned().collect(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for SeriesTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_strings().join(", "))
    }
}

fn poly_from_i64(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

/// `(1 + t)^n` as a coefficient list.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, c) in row.iter().enumerate() {
            next[k] += c;
            next[k + 1] += c;
        }
        row = next;
    }
    row
}

/// Power-series expansion of `numerator / denominator` to order `n`.
/// The quotient must have integer coefficients.
pub fn expand_rational(numerator: &[BigInt], denominator: &[BigInt], n: usize) -> Result<SeriesTrunc> {
    let d0 = denominator
        .first()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| Error::Series("denominator has zero constant term".into()))?;
    let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = numerator.get(k).cloned().unwrap_or_default();
        for (i, d) in denominator.iter().enumerate().skip(1).take(k) {
            acc -= d * &out[k - i];
        }
        let (q, r) = acc.div_rem(d0);
        if !r.is_zero() {
            return Err(Error::Series(format!("coefficient {k} is not integral")));
        }
        out.push(q);
    }
    Ok(SeriesTrunc { coeffs: out })
}

/// Convenience wrapper over [`expand_rational`] for small integer inputs.
pub fn expand_rational_i64(numerator: &[i64], denominator: &[i64], n: usize) -> Result<SeriesTrunc> {
    expand_rational(&poly_from_i64(numerator), &poly_from_i64(denominator), n)
}

/// The denominator `1 - Σ_{j≥1} β_j t^{j+1}` of Serre's bound.
pub fn q_denominator(betti: &BettiData) -> Vec<BigInt> {
    let totals = betti.totals();
    let mut den = vec![BigInt::zero(); totals.len() + 1];
    den[0] = BigInt::one();
    for (j, b) in totals.iter().enumerate().skip(1) {
        den[j + 1] -= BigInt::from(*b);
    }
    den
}

/// `Q = (1+t)^n / (1 - Σ_{j≥1} β_j t^{j+1})` to order `n_terms`.
pub fn q_series(betti: &BettiData, order: usize) -> SeriesTrunc {
    expand_rational(&binomial_row(betti.nvars), &q_denominator(betti), order)
        .expect("denominator has constant term 1")
}

/// First index where two series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
}

impl Divergence {
    pub fn p_less(&self) -> bool {
        self.p < self.q
    }
}

pub fn series_compare(p: &SeriesTrunc, q: &SeriesTrunc) -> Option<Divergence> {
    let len = p.coeffs.len().min(q.coeffs.len());
    (0..len).find(|&i| p.coeffs[i] != q.coeffs[i]).map(|index| Divergence {
        index,
        p: p.coeffs[index].clone(),
        q: q.coeffs[index].clone(),
    })
}

/// Degree caps for the resolution of the residue field.
///
/// At step `j` (the kernel of `F_j → F_{j-1}`, whose minimal generators
/// span `F_{j+1}`) kernels are computed up to total degree
/// `slope·(j+1) + offset` and then through a further window of `window`
/// degrees, in which no new generator may appear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CapPolicy {
    pub slope: u32,
    pub offset: u32,
    pub window: u32,
}

impl CapPolicy {
    /// Slope and window equal to the largest generator degree, offset the
    /// number of variables.
    pub fn default_for(ideal: &MonomialIdeal) -> Self {
        let d = ideal.max_degree().max(1);
        CapPolicy {
            slope: d,
            offset: ideal.nvars() as u32,
            window: d,
        }
    }

    pub fn cap(&self, step: usize) -> u32 {
        self.slope * (step as u32 + 1) + self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    /// Index of the free module whose generators were found.
    pub module: usize,
    pub cap: u32,
    pub window_end: u32,
    pub generators: usize,
    pub max_generator_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapReport {
    pub policy: CapPolicy,
    pub steps: Vec<StepReport>,
}

/// The truncated resolution: multidegrees of the generators of each `F_j`.
#[derive(Clone, Debug)]
pub struct ResidueResolution {
    pub generators: Vec<Vec<Multidegree>>,
    pub report: CapReport,
}

impl ResidueResolution {
    pub fn series(&self) -> SeriesTrunc {
        SeriesTrunc {
            coeffs: self.generators.iter().map(|g| BigInt::from(g.len())).collect(),
        }
    }

    /// `dim Tor_j(k,k)` in total degree `d`.
    pub fn count(&self, j: usize, d: u32) -> usize {
        self.generators
            .get(j)
            .map_or(0, |g| g.iter().filter(|m| m.total_degree() == d).count())
    }
}

struct Ring<'a> {
    ideal: &'a MonomialIdeal,
}

impl Ring<'_> {
    fn standard(&self, e: &[u32]) -> bool {
        !self
            .ideal
            .gens()
            .iter()
            .any(|g| g.exponents().iter().zip(e).all(|(a, b)| a <= b))
    }

    /// For each multidegree of total degree at most `end`, the generators
    /// (by index, increasing) having a standard multiple there.
    fn multiples<'g>(
        &self,
        gens: impl Iterator<Item = &'g Vec<u32>>,
        standard: &[Vec<Vec<u32>>],
        end: u32,
    ) -> HashMap<Vec<u32>, Vec<usize>> {
        let mut index: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        for (k, g) in gens.enumerate() {
            let base: u32 = g.iter().sum();
            for level in standard.iter().take((end.saturating_sub(base) + 1) as usize) {
                for m in level {
                    index.entry(g.iter().zip(m).map(|(a, b)| a + b).collect()).or_default().push(k);
                }
            }
        }
        index
    }

    /// Standard monomials of total degree at most `cap`, by degree.
    fn standard_monomials(&self, cap: u32) -> Vec<Vec<Vec<u32>>> {
        let n = self.ideal.nvars();
        let mut by_degree: Vec<Vec<Vec<u32>>> = vec![vec![vec![0; n]]];
        for d in 1..=cap as usize {
            let mut next: HashSet<Vec<u32>> = HashSet::new();
            for m in &by_degree[d - 1] {
                // standard monomials are closed under division
                for i in 0..n {
                    let mut e = m.clone();
                    e[i] += 1;
                    if self.standard(&e) {
                        next.insert(e);
                    }
                }
            }
            let mut v: Vec<Vec<u32>> = next.into_iter().collect();
            v.sort();
            by_degree.push(v);
        }
        by_degree
    }
}

/// A generator of a free module together with its image, as sparse
/// coefficients on the generators of the previous module.
struct Generator<E> {
    mdeg: Vec<u32>,
    image: Vec<(usize, E)>,
}

/// Builds `F_0, …, F_order` of the minimal multigraded free resolution of
/// `k` over `S/I`.
pub fn resolve_residue_field<F: Field>(
    ideal: &MonomialIdeal,
    field: &F,
    order: usize,
    policy: CapPolicy,
) -> Result<ResidueResolution> {
    let ring = Ring { ideal };
    let n = ideal.nvars();
    let top_cap = policy.cap(order.saturating_sub(1)) + policy.window;
    let standard = ring.standard_monomials(top_cap);
    let mut modules: Vec<Vec<Generator<F::Elem>>> = vec![vec![Generator {
        mdeg: vec![0; n],
        image: Vec::new(),
    }]];
    let mut steps = Vec::new();
    for j in 0..order {
        let cap = policy.cap(j);
        let end = cap + policy.window;
        let current = &modules[j];
        let previous: Option<&Vec<Generator<F::Elem>>> = j.checked_sub(1).map(|p| &modules[p]);
        let col_index = ring.multiples(current.iter().map(|g| &g.mdeg), &standard, end);
        let row_index = previous.map(|prev| ring.multiples(prev.iter().map(|g| &g.mdeg), &standard, end));
        let mut betas: Vec<(u32, &Vec<u32>)> = col_index.keys().map(|b| (b.iter().sum(), b)).collect();
        betas.sort_unstable();
        let mut found: Vec<Generator<F::Elem>> = Vec::new();
        // found generators with a multiple in each multidegree
        let mut found_index: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        for &(total, beta) in &betas {
            if total == 0 {
                continue;
            }
            let cols = &col_index[beta];
            let col_of: HashMap<usize, usize> = cols.iter().enumerate().map(|(c, &k)| (k, c)).collect();
            // the map (F_j)_β → (F_{j-1})_β; for j = 0 the target is k in degree 0
            let kernel = match &row_index {
                None => (0..cols.len())
                    .map(|c| {
                        let mut v = vec![field.zero(); cols.len()];
                        v[c] = field.one();
                        v
                    })
                    .collect(),
                Some(index) => {
                    let rows: &[usize] = index.get(beta).map_or(&[], Vec::as_slice);
                    let row_of: HashMap<usize, usize> =
                        rows.iter().enumerate().map(|(r, &h)| (h, r)).collect();
                    let mut m = Matrix::zeros(field, rows.len(), cols.len());
                    for (c, &k) in cols.iter().enumerate() {
                        for (h, x) in &current[k].image {
                            if let Some(&r) = row_of.get(h) {
                                m.set(r, c, x.clone());
                            }
                        }
                    }
                    kernel_basis(&m)
                }
            };
            if kernel.is_empty() {
                continue;
            }
            let mut span = EchelonSpace::new(field, cols.len());
            for &f in found_index.get(beta).map_or(&[][..], Vec::as_slice) {
                if span.rank() == kernel.len() {
                    break;
                }
                let mut v = vec![field.zero(); cols.len()];
                for (k, x) in &found[f].image {
                    if let Some(&c) = col_of.get(k) {
                        v[c] = x.clone();
                    }
                }
                span.insert(&v);
            }
            if span.rank() == kernel.len() {
                continue;
            }
            if total > cap {
                return Err(Error::CapInsufficient(format!(
                    "new generator of F_{} in degree {total} beyond cap {cap}",
                    j + 1
                )));
            }
            for v in kernel {
                if span.insert(&v) {
                    let base: u32 = beta.iter().sum();
                    for level in standard.iter().take((end.saturating_sub(base) + 1) as usize) {
                        for m in level {
                            let shifted: Vec<u32> = beta.iter().zip(m).map(|(a, b)| a + b).collect();
                            found_index.entry(shifted).or_default().push(found.len());
                        }
                    }
                    found.push(Generator {
                        mdeg: beta.clone(),
                        image: cols
                            .iter()
                            .zip(v)
                            .filter(|(_, x)| !field.is_zero(x))
                            .map(|(&k, x)| (k, x))
                            .collect(),
                    });
                }
            }
        }
        steps.push(StepReport {
            module: j + 1,
            cap,
            window_end: end,
            generators: found.len(),
            max_generator_degree: found.iter().map(|g| g.mdeg.iter().sum()).max().unwrap_or(0),
        });
        modules.push(found);
    }
    Ok(ResidueResolution {
        generators: modules
            .iter()
            .map(|gens| gens.iter().map(|g| Monomial::new(g.mdeg.clone())).collect())
            .collect(),
        report: CapReport { policy, steps },
    })
}

/// `P` to order `order`, with the cap report.
pub fn p_series<F: Field>(
    ideal: &MonomialIdeal,
    field: &F,
    order: usize,
    policy: Option<CapPolicy>,
) -> Result<(SeriesTrunc, CapReport)> {
    let policy = policy.unwrap_or_else(|| CapPolicy::default_for(ideal));
    let res = resolve_residue_field(ideal, field, order, policy)?;
    Ok((res.series(), res.report))
}

/// `dim Tor_j(k,k)` in total degree `d`, from the normalized bar complex
/// `B_j = (R_+)^{⊗j}`. Exponential in `j`; meant as an independent check.
pub fn bar_homology_dim<F: Field>(ideal: &MonomialIdeal, field: &F, j: usize, d: u32) -> Result<usize> {
    if j == 0 {
        return Ok(usize::from(d == 0));
    }
    if (d as usize) < j {
        return Ok(0);
    }
    let ring = Ring { ideal };
    let n = ideal.nvars();
    let mut total = 0;
    for beta in exponent_vectors(n, d) {
        let cells = |k: usize| bar_cells(&ring, &beta, k);
        let cj = cells(j);
        if cj.is_empty() {
            continue;
        }
        let dj = bar_differential(&ring, field, &cj, &cells(j - 1), j);
        let cj1 = cells(j + 1);
        let dj1 = bar_differential(&ring, field, &cj1, &cj, j + 1);
        let ker = cj.len() - if j == 1 { 0 } else { rank(&dj) };
        total += ker - rank(&dj1);
    }
    Ok(total)
}

fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Ordered `k`-tuples of nonconstant standard monomials with sum `beta`.
fn bar_cells(ring: &Ring<'_>, beta: &[u32], k: usize) -> Vec<Vec<Vec<u32>>> {
    if k == 0 {
        return if beta.iter().all(|&b| b == 0) { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in divisors(beta) {
        if first.iter().all(|&e| e == 0) || !ring.standard(&first) {
            continue;
        }
        let rest: Vec<u32> = beta.iter().zip(&first).map(|(b, f)| b - f).collect();
        for mut tail in bar_cells(ring, &rest, k - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

fn divisors(beta: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in beta {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=b).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// `d(m_1|…|m_k) = Σ_{i<k} (-1)^i (m_1|…|m_i m_{i+1}|…|m_k)`.
fn bar_differential<F: Field>(
    ring: &Ring<'_>,
    field: &F,
    source: &[Vec<Vec<u32>>],
    target: &[Vec<Vec<u32>>],
    k: usize,
) -> Matrix<F> {
    let index: HashMap<&Vec<Vec<u32>>, usize> = target.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = Matrix::zeros(field, target.len(), source.len());
    for (c, cell) in source.iter().enumerate() {
        for i in 1..k {
            let merged: Vec<u32> = cell[i - 1].iter().zip(&cell[i]).map(|(a, b)| a + b).collect();
            if !ring.standard(&merged) {
                continue;
            }
            let mut t = cell[..i - 1].to_vec();
            t.push(merged);
            t.extend_from_slice(&cell[i + 1..]);
            let r = index[&t];
            let v = field.add(m.get(r, c), &field.signed(&field.one(), i % 2 == 1));
            m.set(r, c, v);
        }
    }
    m
}

/// Whether every coefficient of `p` is at most the matching one of `q`.
pub fn coefficientwise_le(p: &SeriesTrunc, q: &SeriesTrunc) -> bool {
    p.coeffs.iter().zip(&q.coeffs).all(|(a, b)| a <= b)
}

/// Whether all coefficients are nonnegative.
pub fn is_nonnegative(s: &SeriesTrunc) -> bool {
    !s.coeffs.iter().any(Signed::is_negative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::homology::betti;

    fn ideal(text: &str) -> MonomialIdeal {
        MonomialIdeal::parse(text).unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_rational_i64(&[1], &[1], 3).unwrap(), SeriesTrunc::from_i64(&[1, 0, 0, 0]));
        assert!(expand_rational_i64(&[1], &[0, 1], 3).is_err());
        assert!(expand_rational_i64(&[1], &[2], 1).is_err());
        // (1+t)^5 / (1 - 8t² - 14t³ - 8t⁴ + t⁶)
        let p = expand_rational(&binomial_row(5), &poly_from_i64(&[1, 0, -8, -14, -8, 0, 1]), 5).unwrap();
        assert_eq!(p, SeriesTrunc::from_i64(&[1, 5, 18, 64, 227, 805]));
    }

    #[test]
    fn q_series_examples() {
        let b = betti(&ideal("vars: x, y\nx*y"), Rationals).unwrap();
        assert_eq!(q_series(&b, 3), SeriesTrunc::from_i64(&[1, 2, 2, 2]));
        let b = betti(&ideal("vars: x, y, z"), Rationals).unwrap();
        assert_eq!(q_series(&b, 2), SeriesTrunc::from_i64(&[1, 3, 3]));
    }

    #[test]
    fn polynomial_ring_gives_koszul_numbers() {
        let i = ideal("vars: x, y, z");
        let (p, _) = p_series(&i, &Rationals, 3, None).unwrap();
        assert_eq!(p, SeriesTrunc::from_i64(&[1, 3, 3, 1]));
    }

    #[test]
    fn golod_square_of_maximal_ideal() {
        let i = ideal("vars: x, y\nx^2\nx*y\ny^2");
        let (p, report) = p_series(&i, &PrimeField::new(7).unwrap(), 6, None).unwrap();
        let q = q_series(&betti(&i, Rationals).unwrap(), 6);
        assert_eq!(p, q);
        assert_eq!(p, expand_rational_i64(&[1, 2, 1], &[1, 0, -3, -2], 6).unwrap());
        assert_eq!(report.steps.len(), 6);
    }

    #[test]
    fn bar_oracle_small() {
        let i = ideal("vars: x, y\nx^2\nx*y");
        let q = Rationals;
        assert_eq!(bar_homology_dim(&i, &q, 0, 0).unwrap(), 1);
        assert_eq!(bar_homology_dim(&i, &q, 1, 1).unwrap(), 2);
        let res = resolve_residue_field(&i, &q, 3, CapPolicy::default_for(&i)).unwrap();
        for j in 0..=3 {
            for d in 0..=6 {
                assert_eq!(res.count(j, d), bar_homology_dim(&i, &q, j, d).unwrap(), "j={j} d={d}");
            }
        }
    }

    #[test]
    fn compare() {
        let p = SeriesTrunc::from_i64(&[1, 5, 18, 64, 227, 805]);
        let q = SeriesTrunc::from_i64(&[1, 5, 18, 64, 227, 806]);
        let d = series_compare(&p, &q).unwrap();
        assert_eq!(d.index, 5);
        assert!(d.p_less());
        assert!(series_compare(&p, &p).is_none());
        assert!(coefficientwise_le(&p, &q));
        assert!(is_nonnegative(&p));
    }
}
