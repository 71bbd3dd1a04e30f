//! Multigraded DGAs with a monomial basis, and their strands.
//!
//! Both models of Koszul homology used here (the scalar-reduced Taylor
//! complex and the Stanley-Reisner cochain model) have a basis of "cells"
//! such that the differential of a cell is a signed sum of cells and the
//! product of two cells is zero or a signed cell. The homology machinery is
//! written once against [`MonomialDga`].

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::monomial::Multidegree;

pub trait MonomialDga: Send + Sync {
    type Cell: Copy + Eq + Hash + Ord + Debug + Send + Sync;

    fn nvars(&self) -> usize;

    /// Multidegrees outside which homology in positive degree vanishes,
    /// in a deterministic order.
    fn homology_support(&self) -> Vec<Multidegree>;

    /// Whether [`MonomialDga::cells`] accepts `u`.
    fn has_cells(&self, u: &Multidegree) -> bool;

    /// All cells of multidegree `u` (any homological degree).
    fn cells(&self, u: &Multidegree) -> Result<Vec<Self::Cell>>;

    fn cell_degree(&self, c: Self::Cell) -> usize;

    fn cell_mdeg(&self, c: Self::Cell) -> Multidegree;

    /// Differential of a cell as `(cell, negative)` terms.
    fn differential(&self, c: Self::Cell) -> Vec<(Self::Cell, bool)>;

    /// Product of two cells: `None` for zero, else `(negative, cell)`.
    fn product(&self, a: Self::Cell, b: Self::Cell) -> Option<(bool, Self::Cell)>;

    fn describe(&self, c: Self::Cell) -> String;
}

/// The summand of a DGA in one multidegree, as a chain complex of vector
/// spaces with bases ordered by cell order.
#[derive(Clone, Debug)]
pub struct Strand<C, F: Field> {
    pub mdeg: Multidegree,
    /// `cells[i]` is the ordered basis in homological degree `i`.
    pub cells: Vec<Vec<C>>,
    index: HashMap<C, usize>,
    /// `boundaries[i] : C_i -> C_{i-1}`; `boundaries[0]` has zero rows.
    pub boundaries: Vec<Matrix<F>>,
}

impl<C: Copy + Eq + Hash + Ord + Debug, F: Field> Strand<C, F> {
    pub fn build<D: MonomialDga<Cell = C>>(dga: &D, field: &F, u: &Multidegree) -> Result<Self> {
        let mut all = dga.cells(u)?;
        all.sort();
        let top = all.iter().map(|&c| dga.cell_degree(c)).max().unwrap_or(0);
        let mut cells: Vec<Vec<C>> = vec![Vec::new(); top + 1];
        for c in all {
            cells[dga.cell_degree(c)].push(c);
        }
        let mut index = HashMap::new();
        for level in &cells {
            for (k, &c) in level.iter().enumerate() {
                index.insert(c, k);
            }
        }
        let mut boundaries = Vec::with_capacity(top + 1);
        boundaries.push(Matrix::zeros(field, 0, cells[0].len()));
        for i in 1..=top {
            let mut m = Matrix::zeros(field, cells[i - 1].len(), cells[i].len());
            for (col, &c) in cells[i].iter().enumerate() {
                for (t, neg) in dga.differential(c) {
                    let row = *index
                        .get(&t)
                        .ok_or_else(|| Error::Grading(format!("{t:?} escapes its strand")))?;
                    let v = field.add(m.get(row, col), &field.signed(&field.one(), neg));
                    m.set(row, col, v);
                }
            }
            boundaries.push(m);
        }
        Ok(Strand {
            mdeg: u.clone(),
            cells,
            index,
            boundaries,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn rank_in(&self, i: usize) -> usize {
        self.cells.get(i).map_or(0, Vec::len)
    }

    pub fn position(&self, c: C) -> Option<usize> {
        self.index.get(&c).copied()
    }

    /// `∂_i`, or a zero matrix of the right shape outside the strand's range.
    pub fn boundary(&self, field: &F, i: usize) -> Matrix<F> {
        if i < self.boundaries.len() {
            self.boundaries[i].clone()
        } else {
            Matrix::zeros(field, self.rank_in(i.wrapping_sub(1)), self.rank_in(i))
        }
    }
}

/// A homogeneous chain: coefficients on the degree-`degree` basis of the
/// strand in multidegree `mdeg`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain<F: Field> {
    pub mdeg: Multidegree,
    pub degree: usize,
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> Chain<F> {
    pub fn is_zero(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn scale(&self, field: &F, s: &F::Elem) -> Self {
        Chain {
            mdeg: self.mdeg.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| field.mul(c, s)).collect(),
        }
    }

    /// `(-1)^{|a|+1} a`, the sign twist in defining systems.
    pub fn bar(&self, field: &F) -> Self {
        if self.degree % 2 == 1 {
            self.clone()
        } else {
            self.scale(field, &field.from_i64(-1))
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Result<Self> {
        if self.mdeg != other.mdeg || self.degree != other.degree {
            return Err(Error::NotHomogeneous("adding chains of different degrees".into()));
        }
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::Dimension("chains over different strand bases".into()));
        }
        Ok(Chain {
            mdeg: self.mdeg.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        })
    }
}
