//! Strand homology with explicit cycle representatives, and Betti data.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use crate::dga::{Chain, MonomialDga, Strand};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, QuotientBasis, Solver};
use crate::monomial::{Monomial, MonomialIdeal, Multidegree};
use crate::taylor::TaylorDga;

/// A strand together with its homology bases and boundary solvers.
#[derive(Debug)]
pub struct StrandData<C, F: Field> {
    pub strand: Strand<C, F>,
    homology: Vec<QuotientBasis<F>>,
    /// `solvers[i]` solves `∂_i x = b`; `None` for `i = 0`.
    solvers: Vec<Option<Solver<F>>>,
}

impl<C: Copy + Eq + std::hash::Hash + Ord + std::fmt::Debug, F: Field> StrandData<C, F> {
    fn new(strand: Strand<C, F>, field: &F) -> Result<Self> {
        let top = strand.top_degree();
        let mut homology = Vec::with_capacity(top + 1);
        for i in 0..=top {
            let cycles = kernel_basis(&strand.boundary(field, i));
            let next = strand.boundary(field, i + 1);
            let boundaries: Vec<Vec<F::Elem>> = (0..next.cols()).map(|c| next.column(c)).collect();
            homology.push(QuotientBasis::new(field, strand.rank_in(i), &cycles, &boundaries)?);
        }
        let solvers = (0..=top)
            .map(|i| (i > 0).then(|| Solver::new(&strand.boundaries[i])))
            .collect();
        Ok(StrandData {
            strand,
            homology,
            solvers,
        })
    }

    pub fn homology_dim(&self, i: usize) -> usize {
        self.homology.get(i).map_or(0, QuotientBasis::dim)
    }
}

/// An element of `H_i` in multidegree `u`, with a cycle representative and
/// its coordinates in the strand's homology basis.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyClass<F: Field> {
    pub representative: Chain<F>,
    pub coords: Vec<F::Elem>,
}

impl<F: Field> HomologyClass<F> {
    pub fn mdeg(&self) -> &Multidegree {
        &self.representative.mdeg
    }

    pub fn degree(&self) -> usize {
        self.representative.degree
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }
}

/// Homology computations on a [`MonomialDga`], caching one [`StrandData`]
/// per multidegree.
pub struct HomologyEngine<D: MonomialDga, F: Field> {
    dga: D,
    field: F,
    cache: Mutex<HashMap<Multidegree, SharedStrand<D, F>>>,
}

pub type TaylorEngine<F> = HomologyEngine<TaylorDga, F>;

type SharedStrand<D, F> = Arc<StrandData<<D as MonomialDga>::Cell, F>>;

impl<F: Field> HomologyEngine<TaylorDga, F> {
    pub fn taylor(ideal: &MonomialIdeal, field: F) -> Result<Self> {
        Ok(HomologyEngine::new(TaylorDga::new(ideal.clone())?, field))
    }
}

impl<D: MonomialDga, F: Field> HomologyEngine<D, F> {
    pub fn new(dga: D, field: F) -> Self {
        HomologyEngine {
            dga,
            field,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn dga(&self) -> &D {
        &self.dga
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn strand(&self, u: &Multidegree) -> Result<SharedStrand<D, F>> {
        if let Some(s) = self.cache.lock().expect("cache poisoned").get(u) {
            return Ok(Arc::clone(s));
        }
        // built outside the lock; a concurrent duplicate build is harmless
        let data = Arc::new(StrandData::new(
            Strand::build(&self.dga, &self.field, u)?,
            &self.field,
        )?);
        self.cache
            .lock()
            .expect("cache poisoned")
            .entry(u.clone())
            .or_insert_with(|| Arc::clone(&data));
        Ok(data)
    }

    fn strand_opt(&self, u: &Multidegree) -> Result<Option<SharedStrand<D, F>>> {
        if self.dga.has_cells(u) {
            self.strand(u).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn zero_chain(&self, u: &Multidegree, degree: usize) -> Result<Chain<F>> {
        let len = self.strand_opt(u)?.map_or(0, |s| s.strand.rank_in(degree));
        Ok(Chain {
            mdeg: u.clone(),
            degree,
            coeffs: vec![self.field.zero(); len],
        })
    }

    /// The chain `Σ c·cell`; all cells must share one multidegree and degree.
    pub fn chain(&self, terms: &[(D::Cell, F::Elem)]) -> Result<Chain<F>> {
        let Some((first, _)) = terms.first() else {
            return Err(Error::NotHomogeneous("empty term list has no degree".into()));
        };
        let u = self.dga.cell_mdeg(*first);
        let degree = self.dga.cell_degree(*first);
        let mut chain = self.zero_chain(&u, degree)?;
        let strand = self.strand(&u)?;
        for (c, x) in terms {
            if self.dga.cell_mdeg(*c) != u || self.dga.cell_degree(*c) != degree {
                return Err(Error::NotHomogeneous(format!(
                    "{} does not match {}",
                    self.dga.describe(*c),
                    self.dga.describe(*first)
                )));
            }
            let k = strand.strand.position(*c).expect("cell lies in its strand");
            chain.coeffs[k] = self.field.add(&chain.coeffs[k], x);
        }
        Ok(chain)
    }

    pub fn cell_chain(&self, c: D::Cell) -> Result<Chain<F>> {
        self.chain(&[(c, self.field.one())])
    }

    /// Nonzero terms of a chain.
    pub fn terms(&self, chain: &Chain<F>) -> Result<Vec<(D::Cell, F::Elem)>> {
        if chain.is_zero(&self.field) {
            return Ok(Vec::new());
        }
        let strand = self.strand(&chain.mdeg)?;
        let basis = strand
            .strand
            .cells
            .get(chain.degree)
            .filter(|b| b.len() == chain.coeffs.len())
            .ok_or_else(|| Error::Dimension("chain does not match its strand".into()))?;
        Ok(basis
            .iter()
            .zip(&chain.coeffs)
            .filter(|(_, x)| !self.field.is_zero(x))
            .map(|(&c, x)| (c, x.clone()))
            .collect())
    }

    pub fn describe(&self, chain: &Chain<F>) -> Result<String> {
        let terms = self.terms(chain)?;
        if terms.is_empty() {
            return Ok("0".into());
        }
        let mut out = String::new();
        for (k, (c, x)) in terms.iter().enumerate() {
            let neg = !self.field.is_one(x) && x == &self.field.neg(&self.field.one());
            let coeff = if self.field.is_one(x) || neg {
                String::new()
            } else {
                format!("{x}*")
            };
            let sign = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let _ = write!(out, "{sign}{coeff}{}", self.dga.describe(*c));
        }
        Ok(out)
    }

    pub fn boundary(&self, chain: &Chain<F>) -> Result<Chain<F>> {
        if chain.degree == 0 {
            return Err(Error::Grading("boundary of a degree-0 chain".into()));
        }
        let mut out = self.zero_chain(&chain.mdeg, chain.degree - 1)?;
        if chain.is_zero(&self.field) {
            return Ok(out);
        }
        let strand = self.strand(&chain.mdeg)?;
        out.coeffs = strand.strand.boundaries[chain.degree].mul_vec(&chain.coeffs)?;
        Ok(out)
    }

    pub fn is_cycle(&self, chain: &Chain<F>) -> Result<bool> {
        Ok(chain.degree == 0 || self.boundary(chain)?.is_zero(&self.field))
    }

    /// Chain-level product, computed cell by cell.
    pub fn product(&self, a: &Chain<F>, b: &Chain<F>) -> Result<Chain<F>> {
        let u = a.mdeg.mul(&b.mdeg)?;
        let mut out = self.zero_chain(&u, a.degree + b.degree)?;
        let ta = self.terms(a)?;
        let tb = self.terms(b)?;
        if ta.is_empty() || tb.is_empty() {
            return Ok(out);
        }
        let mut target = None;
        for (ca, xa) in &ta {
            for (cb, xb) in &tb {
                if let Some((neg, c)) = self.dga.product(*ca, *cb) {
                    let strand = match &target {
                        Some(s) => s,
                        None => target.insert(self.strand(&u)?),
                    };
                    let k = strand.strand.position(c).expect("product lies in the sum strand");
                    let x = self.field.signed(&self.field.mul(xa, xb), neg);
                    out.coeffs[k] = self.field.add(&out.coeffs[k], &x);
                }
            }
        }
        Ok(out)
    }

    /// Some `s` with `∂s = target`, or `None` when `target` is not a boundary.
    pub fn solve_boundary(&self, target: &Chain<F>) -> Result<Option<Chain<F>>> {
        let degree = target.degree + 1;
        if target.is_zero(&self.field) {
            return self.zero_chain(&target.mdeg, degree).map(Some);
        }
        let strand = self.strand(&target.mdeg)?;
        let Some(Some(solver)) = strand.solvers.get(degree) else {
            return Ok(None);
        };
        Ok(solver.solve(&target.coeffs)?.map(|coeffs| Chain {
            mdeg: target.mdeg.clone(),
            degree,
            coeffs,
        }))
    }

    pub fn homology_dim(&self, u: &Multidegree, i: usize) -> Result<usize> {
        Ok(self.strand_opt(u)?.map_or(0, |s| s.homology_dim(i)))
    }

    /// The homology basis of `H_i` in multidegree `u`.
    pub fn homology_basis(&self, u: &Multidegree, i: usize) -> Result<Vec<HomologyClass<F>>> {
        let Some(strand) = self.strand_opt(u)? else {
            return Ok(Vec::new());
        };
        let Some(q) = strand.homology.get(i) else {
            return Ok(Vec::new());
        };
        Ok(q.representatives()
            .iter()
            .enumerate()
            .map(|(k, rep)| {
                let mut coords = vec![self.field.zero(); q.dim()];
                coords[k] = self.field.one();
                HomologyClass {
                    representative: Chain {
                        mdeg: u.clone(),
                        degree: i,
                        coeffs: rep.clone(),
                    },
                    coords,
                }
            })
            .collect())
    }

    pub fn class_of(&self, chain: &Chain<F>) -> Result<HomologyClass<F>> {
        if !self.is_cycle(chain)? {
            return Err(Error::NotACycle);
        }
        let coords = match self.strand_opt(&chain.mdeg)? {
            Some(strand) => match strand.homology.get(chain.degree) {
                Some(q) if !chain.coeffs.is_empty() => q.coordinates(&self.field, &chain.coeffs)?,
                Some(q) => vec![self.field.zero(); q.dim()],
                None => Vec::new(),
            },
            None => Vec::new(),
        };
        Ok(HomologyClass {
            representative: chain.clone(),
            coords,
        })
    }

    /// Classes of `H_i` over the whole homology support with `i ≥ 1`.
    pub fn positive_basis(&self) -> Result<Vec<HomologyClass<F>>> {
        let mut out = Vec::new();
        for u in self.dga.homology_support() {
            let strand = self.strand(&u)?;
            for i in 1..=strand.strand.top_degree() {
                out.extend(self.homology_basis(&u, i)?);
            }
        }
        Ok(out)
    }

    pub fn betti(&self) -> Result<BettiData> {
        let n = self.dga.nvars();
        let mut multigraded = BTreeMap::new();
        multigraded.insert((0, Monomial::one(n)), 1);
        for u in self.dga.homology_support() {
            let strand = self.strand(&u)?;
            for i in 1..=strand.strand.top_degree() {
                let d = strand.homology_dim(i);
                if d > 0 {
                    multigraded.insert((i, u.clone()), d);
                }
            }
        }
        Ok(BettiData { nvars: n, multigraded })
    }
}

/// Multigraded Betti numbers `β_{i,u}` of `S/I`, including `β_{0,0} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiData {
    pub nvars: usize,
    pub multigraded: BTreeMap<(usize, Multidegree), usize>,
}

impl BettiData {
    /// `β_{i,j}` keyed by `(i, j)` with `j` the total degree.
    pub fn coarse(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for ((i, u), d) in &self.multigraded {
            *out.entry((*i, u.total_degree())).or_insert(0) += d;
        }
        out
    }

    pub fn get(&self, i: usize, j: u32) -> usize {
        self.coarse().get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.projective_dimension() + 1];
        for ((i, _), d) in &self.multigraded {
            out[*i] += d;
        }
        out
    }

    pub fn regularity(&self) -> u32 {
        self.multigraded
            .keys()
            .map(|(i, u)| u.total_degree().saturating_sub(*i as u32))
            .max()
            .unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> usize {
        self.multigraded.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// The table in the usual layout: row `r`, column `i` holds `β_{i,i+r}`.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let coarse = self.coarse();
        (0..=self.regularity())
            .map(|r| {
                (0..=self.projective_dimension())
                    .map(|i| coarse.get(&(i, i as u32 + r)).copied().unwrap_or(0))
                    .collect()
            })
            .collect()
    }

    pub fn render_table(&self) -> String {
        let rows = self.table_rows();
        let totals = self.totals();
        let width = totals
            .iter()
            .map(|t| t.to_string().len())
            .max()
            .unwrap_or(1);
        let cell = |x: usize| {
            let s = if x == 0 { ".".to_string() } else { x.to_string() };
            format!("{s:>width$}")
        };
        let label_width = "total:".len().max(rows.len().to_string().len() + 1);
        let mut out = String::new();
        let header: Vec<String> = (0..totals.len()).map(|i| format!("{i:>width$}")).collect();
        let _ = writeln!(out, "{:>label_width$} {}", "", header.join(" "));
        let tot: Vec<String> = totals.iter().map(|&t| cell(t)).collect();
        let _ = writeln!(out, "{:>label_width$} {}", "total:", tot.join(" "));
        for (r, row) in rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|&x| cell(x)).collect();
            let _ = writeln!(out, "{:>label_width$} {}", format!("{r}:"), cells.join(" "));
        }
        out
    }
}

/// Betti data of `S/I` through the Taylor strands.
pub fn betti<F: Field>(ideal: &MonomialIdeal, field: F) -> Result<BettiData> {
    HomologyEngine::taylor(ideal, field)?.betti()
}
