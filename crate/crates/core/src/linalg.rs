//! Dense exact linear algebra over a [`Field`].
//!
//! Every homology, coboundary and defining-system computation in the crate
//! reduces to the routines here. Matrices are small (strands of a Taylor
//! complex, graded pieces of a resolution), so storage is dense row-major.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {} but expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, v).expect("rectangular literal")
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.mul_add(&acc, a, b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let v = f.mul_add(out.get(i, j), a, b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &F::Elem) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            if !self.field.is_zero(&self.data[i]) {
                self.data[i] = self.field.mul(&self.data[i], s);
            }
        }
    }

    /// `row[target] -= factor * row[source]`, starting at column `from`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &F::Elem, from: usize) {
        let neg = self.field.neg(factor);
        for c in from..self.cols {
            let s = &self.data[source * self.cols + c];
            if self.field.is_zero(s) {
                continue;
            }
            let i = target * self.cols + c;
            self.data[i] = self.field.mul_add(&self.data[i], &neg, s);
        }
    }

    /// In-place Gauss-Jordan elimination restricted to the first `limit`
    /// columns for pivot search. Returns the pivot columns.
    fn reduce_in_place(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c));
            self.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !f.is_zero(self.get(i, c)) {
                    let factor = self.get(i, c).clone();
                    self.eliminate(i, r, &factor, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: Matrix<F>,
}

pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    let mut reduced = m.clone();
    let pivots = reduced.reduce_in_place(m.cols);
    Rref {
        rank: pivots.len(),
        pivots,
        reduced,
    }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).rank
}

/// A basis of the right kernel `{v : m v = 0}`, one vector per free column,
/// with that free coordinate set to one.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let Rref {
        pivots, reduced, ..
    } = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols()];
            v[free] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(reduced.get(r, free));
            }
            v
        })
        .collect()
}

/// Some `x` with `m x = rhs`, or `None`. Free variables are set to zero.
pub fn solve<F: Field>(m: &Matrix<F>, rhs: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    Solver::new(m).solve(rhs)
}

/// Precomputed elimination for repeated right-hand sides.
///
/// Holds the reduced row echelon form of `m` together with the row
/// transformation `T` such that `T m = rref(m)`.
#[derive(Clone, Debug)]
pub struct Solver<F: Field> {
    field: F,
    cols: usize,
    pivots: Vec<usize>,
    transform: Matrix<F>,
}

impl<F: Field> Solver<F> {
    pub fn new(m: &Matrix<F>) -> Self {
        let f = m.field().clone();
        let (rows, cols) = (m.rows(), m.cols());
        let mut aug = Matrix::zeros(&f, rows, cols + rows);
        for r in 0..rows {
            for c in 0..cols {
                aug.set(r, c, m.get(r, c).clone());
            }
            aug.set(r, cols + r, f.one());
        }
        let pivots = aug.reduce_in_place(cols);
        let mut transform = Matrix::zeros(&f, rows, rows);
        for r in 0..rows {
            for c in 0..rows {
                transform.set(r, c, aug.get(r, cols + c).clone());
            }
        }
        Solver {
            field: f,
            cols,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn solve(&self, rhs: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        let y = self.transform.mul_vec(rhs)?;
        let f = &self.field;
        if y[self.rank()..].iter().any(|x| !f.is_zero(x)) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in self.pivots.iter().enumerate() {
            x[p] = y[r].clone();
        }
        Ok(Some(x))
    }
}

/// Homology-style quotient `span(cycles) / span(boundaries)` with a fixed basis.
///
/// The basis is the set of cycle vectors that become pivots after the
/// boundary vectors, in input order.
#[derive(Clone, Debug)]
pub struct QuotientBasis<F: Field> {
    boundary_rank: usize,
    representatives: Vec<Vec<F::Elem>>,
    solver: Option<Solver<F>>,
    ambient: usize,
}

impl<F: Field> QuotientBasis<F> {
    pub fn new(
        field: &F,
        ambient: usize,
        cycles: &[Vec<F::Elem>],
        boundaries: &[Vec<F::Elem>],
    ) -> Result<Self> {
        let all: Vec<Vec<F::Elem>> = boundaries.iter().chain(cycles).cloned().collect();
        let m = Matrix::from_columns(field, ambient, &all)?;
        let pivots = rref(&m).pivots;
        let nb = boundaries.len();
        let boundary_cols: Vec<usize> = pivots.iter().copied().filter(|&c| c < nb).collect();
        let rep_cols: Vec<usize> = pivots.iter().copied().filter(|&c| c >= nb).collect();
        let representatives: Vec<Vec<F::Elem>> = rep_cols.iter().map(|&c| all[c].clone()).collect();
        let basis: Vec<Vec<F::Elem>> = boundary_cols
            .iter()
            .map(|&c| all[c].clone())
            .chain(representatives.iter().cloned())
            .collect();
        let solver = if basis.is_empty() {
            None
        } else {
            Some(Solver::new(&Matrix::from_columns(field, ambient, &basis)?))
        };
        Ok(QuotientBasis {
            boundary_rank: boundary_cols.len(),
            representatives,
            solver,
            ambient,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<F::Elem>] {
        &self.representatives
    }

    /// Coordinates of `v` in the quotient basis; zero iff `v` is a boundary.
    pub fn coordinates(&self, field: &F, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.ambient {
            return Err(Error::Dimension(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.ambient
            )));
        }
        let Some(solver) = &self.solver else {
            return if v.iter().all(|x| field.is_zero(x)) {
                Ok(Vec::new())
            } else {
                Err(Error::NotInCycleSpan)
            };
        };
        let x = solver.solve(v)?.ok_or(Error::NotInCycleSpan)?;
        Ok(x[self.boundary_rank..].to_vec())
    }
}

/// Coordinates of `v` in a fixed basis of `span(cycles)/span(boundaries)`.
pub fn quotient_coordinates<F: Field>(
    field: &F,
    cycles: &[Vec<F::Elem>],
    boundaries: &[Vec<F::Elem>],
    v: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    QuotientBasis::new(field, v.len(), cycles, boundaries)?.coordinates(field, v)
}

/// Incrementally maintained row-echelon basis of a subspace.
///
/// Used where vectors arrive one at a time and only membership and
/// independence matter (minimal generators of a graded kernel).
#[derive(Clone, Debug)]
pub struct EchelonSpace<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> EchelonSpace<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        EchelonSpace {
            field: field.clone(),
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let factor = f.neg(&v[*p]);
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.mul_add(x, &factor, r);
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field.clone();
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]);
        for x in w.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let factor = f.neg(&row[p]);
            for (x, r) in row.iter_mut().zip(&w) {
                if !f.is_zero(r) {
                    *x = f.mul_add(x, &factor, r);
                }
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rref_duplicate_rows_over_f2() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_i64(&f2, &[&[1, 1], &[1, 1]]);
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_zero_and_identity() {
        let q = Rationals;
        let z = Matrix::zeros(&q, 3, 3);
        let r = rref(&z);
        assert_eq!((r.rank, r.pivots.len()), (0, 0));
        let id = Matrix::identity(&q, 4);
        let r = rref(&id);
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);
        assert_eq!(r.reduced, id);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![q.from_i64(-1), q.from_i64(1)]]);
        assert!(kernel_basis(&Matrix::identity(&q, 3)).is_empty());
    }

    #[test]
    fn kernel_of_all_ones_over_f2_matches_enumeration() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_i64(&f2, &[&[1, 1, 1]]);
        // Brute force: count vectors of F_2^3 in the kernel.
        let count = (0u64..8)
            .filter(|bits| {
                let v: Vec<u64> = (0..3).map(|i| (bits >> i) & 1).collect();
                m.mul_vec(&v).unwrap()[0] == 0
            })
            .count();
        assert_eq!(count, 4);
        let k = kernel_basis(&m);
        assert_eq!(1usize << k.len(), count);
        for v in &k {
            assert_eq!(m.mul_vec(v).unwrap(), vec![0]);
        }
    }

    #[test]
    fn solve_examples() {
        let q = Rationals;
        let id = Matrix::identity(&q, 3);
        let v = vec![q.from_i64(2), q.from_i64(-5), q.from_i64(7)];
        assert_eq!(solve(&id, &v).unwrap(), Some(v.clone()));

        let z = Matrix::zeros(&q, 2, 2);
        assert_eq!(solve(&z, &[q.one(), q.zero()]).unwrap(), None);

        let m = Matrix::from_i64(&q, &[&[1, 1]]);
        assert_eq!(
            solve(&m, &[q.from_i64(2)]).unwrap(),
            Some(vec![q.from_i64(2), q.zero()])
        );
        assert!(solve(&m, &[q.one(), q.one()]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = Rationals;
        let e = |a: i64, b: i64| vec![q.from_i64(a), q.from_i64(b)];
        let cycles = vec![e(1, 0), e(0, 1)];
        let boundaries = vec![e(1, 1)];
        let c = quotient_coordinates(&q, &cycles, &boundaries, &e(1, 0)).unwrap();
        assert_eq!(c.len(), 1);
        assert!(!q.is_zero(&c[0]));
        let z = quotient_coordinates(&q, &cycles, &boundaries, &e(3, 3)).unwrap();
        assert!(z.iter().all(|x| q.is_zero(x)));
        let v = e(4, -2);
        assert_eq!(quotient_coordinates(&q, &cycles, &[], &v).unwrap(), v);
        let narrow = vec![e(1, 0)];
        assert!(matches!(
            quotient_coordinates(&q, &narrow, &[], &e(0, 1)),
            Err(Error::NotInCycleSpan)
        ));
    }

    #[test]
    fn echelon_space_tracks_span() {
        let q = Rationals;
        let mut s = EchelonSpace::new(&q, 3);
        let v = |a: i64, b: i64, c: i64| vec![q.from_i64(a), q.from_i64(b), q.from_i64(c)];
        assert!(s.insert(&v(1, 2, 0)));
        assert!(s.insert(&v(0, 1, 1)));
        assert!(!s.insert(&v(1, 3, 1)));
        assert!(s.contains(&v(2, 5, 1)));
        assert!(!s.contains(&v(0, 0, 1)));
        assert_eq!(s.rank(), 2);
    }
}
