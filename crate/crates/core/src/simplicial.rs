//! Finite simplicial complexes on an explicit vertex set.
//!
//! Vertices are indexed `0..n` (n <= 64) and faces are bit masks. The vertex
//! set is recorded independently of the faces, so ghost vertices (vertices
//! that are not faces) are representable; fiber complexes need them.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, Matrix, Solver};
use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    /// All faces, sorted by cardinality and then by mask value.
    faces: Vec<u64>,
    face_set: HashSet<u64>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.faces == other.faces
    }
}

fn sort_faces(faces: &mut [u64]) {
    faces.sort_unstable_by_key(|&f| (f.count_ones(), f));
}

fn position_in(face: u64, v: usize) -> u32 {
    (face & ((1u64 << v) - 1)).count_ones()
}

impl SimplicialComplex {
    /// The downward closure of `facets`. An empty facet list gives `{∅}`.
    pub fn from_facets(labels: Vec<String>, facets: &[u64]) -> Result<Self> {
        let n = labels.len();
        if n > 64 {
            return Err(Error::TooLarge {
                what: "vertices",
                count: n,
                limit: 64,
            });
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut set: HashSet<u64> = HashSet::new();
        set.insert(0);
        for &f in facets {
            if f & !full != 0 {
                return Err(Error::Complex(format!("facet {f:#b} uses unknown vertices")));
            }
            if set.contains(&f) {
                continue;
            }
            // enumerate all subsets of f
            let mut s = f;
            loop {
                set.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        Ok(Self::from_face_set(labels, set))
    }

    fn from_face_set(labels: Vec<String>, face_set: HashSet<u64>) -> Self {
        let mut faces: Vec<u64> = face_set.iter().copied().collect();
        sort_faces(&mut faces);
        SimplicialComplex {
            labels,
            faces,
            face_set,
        }
    }

    /// The complex with no faces at all, not even the empty one.
    pub fn void(labels: Vec<String>) -> Self {
        SimplicialComplex {
            labels,
            faces: Vec::new(),
            face_set: HashSet::new(),
        }
    }

    /// The full simplex on `n` vertices labelled `1..=n`.
    pub fn simplex(n: usize) -> Self {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self::from_facets(labels, &[full]).expect("n <= 64")
    }

    /// The boundary of the simplex on `n` vertices: all proper subsets.
    pub fn simplex_boundary(n: usize) -> Self {
        let full = (1u64 << n) - 1;
        let facets: Vec<u64> = (0..n).map(|i| full & !(1 << i)).collect();
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Self::from_facets(labels, &facets).expect("n <= 63")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn nvertices(&self) -> usize {
        self.labels.len()
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn contains(&self, face: u64) -> bool {
        self.face_set.contains(&face)
    }

    /// Faces of dimension `k` (cardinality `k + 1`), in sorted order.
    pub fn faces_of_dim(&self, k: i64) -> Vec<u64> {
        if k < -1 {
            return Vec::new();
        }
        let card = (k + 1) as u32;
        self.faces
            .iter()
            .copied()
            .filter(|f| f.count_ones() == card)
            .collect()
    }

    /// Dimension, `-1` for `{∅}`; `None` for the void complex.
    pub fn dim(&self) -> Option<i64> {
        self.faces.last().map(|f| f.count_ones() as i64 - 1)
    }

    pub fn facets(&self) -> Vec<u64> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| {
                (0..self.nvertices()).all(|v| f >> v & 1 == 1 || !self.contains(f | 1 << v))
            })
            .collect()
    }

    pub fn ghost_vertices(&self) -> Vec<usize> {
        (0..self.nvertices())
            .filter(|&v| !self.contains(1 << v))
            .collect()
    }

    /// Minimal subsets of the vertex set that are not faces.
    pub fn minimal_nonfaces(&self) -> Vec<u64> {
        let mut out: HashSet<u64> = HashSet::new();
        for &f in &self.faces {
            for v in 0..self.nvertices() {
                if f >> v & 1 == 1 {
                    continue;
                }
                let m = f | 1 << v;
                if self.contains(m) {
                    continue;
                }
                let minimal = (0..self.nvertices())
                    .filter(|&w| m >> w & 1 == 1)
                    .all(|w| self.contains(m & !(1 << w)));
                if minimal {
                    out.insert(m);
                }
            }
        }
        let mut v: Vec<u64> = out.into_iter().collect();
        sort_faces(&mut v);
        v
    }

    /// Variable name for each vertex: the label itself if it is a valid
    /// identifier, otherwise the label prefixed with `x`.
    pub fn variable_names(&self) -> Vec<String> {
        self.labels
            .iter()
            .map(|l| {
                if l.starts_with(|c: char| c.is_alphabetic() || c == '_') {
                    l.clone()
                } else {
                    format!("x{l}")
                }
            })
            .collect()
    }

    /// The squarefree ideal generated by the minimal non-faces.
    pub fn stanley_reisner_ideal(&self) -> Result<MonomialIdeal> {
        if self.is_void() {
            return Err(Error::Complex("the void complex has no Stanley-Reisner ideal".into()));
        }
        if self.nvertices() == 0 {
            return Err(Error::Complex("complex has no vertex labels".into()));
        }
        let n = self.nvertices();
        let gens = self
            .minimal_nonfaces()
            .into_iter()
            .map(|m| Monomial::from_support(n, m))
            .collect();
        MonomialIdeal::new(self.variable_names(), gens)
    }

    /// The complex whose faces are the supports of squarefree monomials
    /// outside the ideal. Vertices are the ideal's variables.
    pub fn complex_of(ideal: &MonomialIdeal) -> Result<Self> {
        if let Some(g) = ideal.gens().iter().find(|g| !g.is_squarefree()) {
            return Err(Error::NotSquarefree(g.render(ideal.vars())));
        }
        let n = ideal.nvars();
        let nonfaces: Vec<u64> = ideal.gens().iter().map(Monomial::support).collect();
        let mut set = HashSet::new();
        // depth-first growth by adding vertices above the current maximum
        let mut stack = vec![0u64];
        while let Some(f) = stack.pop() {
            set.insert(f);
            let start = if f == 0 { 0 } else { 64 - f.leading_zeros() as usize };
            for v in start..n {
                let g = f | 1 << v;
                if nonfaces.iter().all(|&m| m & g != m) {
                    stack.push(g);
                }
            }
        }
        Ok(Self::from_face_set(ideal.vars().to_vec(), set))
    }

    /// Faces contained in `subset`, on the vertex set `subset` (re-indexed
    /// in increasing order).
    pub fn restriction(&self, subset: u64) -> Result<Self> {
        let n = self.nvertices();
        if n < 64 && subset >> n != 0 {
            return Err(Error::Complex("restriction to a set outside the vertex set".into()));
        }
        let keep: Vec<usize> = (0..n).filter(|&v| subset >> v & 1 == 1).collect();
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let set = self
            .faces
            .iter()
            .filter(|&&f| f & !subset == 0)
            .map(|&f| compress(f, &keep))
            .collect();
        Ok(Self::from_face_set(labels, set))
    }

    /// Faces of dimension at most `k`, on the same vertex set.
    pub fn skeleton(&self, k: i64) -> Self {
        let set = self
            .faces
            .iter()
            .copied()
            .filter(|f| (f.count_ones() as i64) <= k + 1)
            .collect();
        Self::from_face_set(self.labels.clone(), set)
    }

    /// Every two vertices of the vertex set span an edge.
    pub fn is_2_neighborly(&self) -> bool {
        let n = self.nvertices();
        (0..n).all(|v| (v + 1..n).all(|w| self.contains(1 << v | 1 << w)))
    }

    /// Coboundary matrices `δ^k : C^k -> C^{k+1}` of the reduced cochain
    /// complex, for `k = -1, ..., dim - 1`. The basis of `C^k` is
    /// [`faces_of_dim`](Self::faces_of_dim)`(k)`.
    pub fn reduced_cochain_complex<F: Field>(&self, field: &F) -> Vec<Matrix<F>> {
        let Some(top) = self.dim() else {
            return Vec::new();
        };
        (-1..top)
            .map(|k| self.coboundary_matrix(field, k))
            .collect()
    }

    fn coboundary_matrix<F: Field>(&self, field: &F, k: i64) -> Matrix<F> {
        let src = self.faces_of_dim(k);
        let dst = self.faces_of_dim(k + 1);
        let mut m = Matrix::zeros(field, dst.len(), src.len());
        let index: std::collections::HashMap<u64, usize> =
            dst.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for (j, &s) in src.iter().enumerate() {
            for v in 0..self.nvertices() {
                if s >> v & 1 == 1 {
                    continue;
                }
                if let Some(&i) = index.get(&(s | 1 << v)) {
                    let negate = position_in(s, v) % 2 == 1;
                    m.set(i, j, field.signed(&field.one(), negate));
                }
            }
        }
        m
    }

    /// Dimensions of reduced cohomology, starting in degree `-1`.
    pub fn reduced_cohomology_dims<F: Field>(&self, field: &F) -> Vec<usize> {
        let Some(top) = self.dim() else {
            return Vec::new();
        };
        let deltas = self.reduced_cochain_complex(field);
        let ranks: Vec<usize> = deltas.iter().map(rank).collect();
        (-1..=top)
            .map(|k| {
                let idx = (k + 1) as usize;
                let c = self.faces_of_dim(k).len();
                let out = if idx < ranks.len() { ranks[idx] } else { 0 };
                let inc = if idx > 0 { ranks[idx - 1] } else { 0 };
                c - out - inc
            })
            .collect()
    }

    /// Whether the cochain (a list of `(face, coefficient)` pairs, all on
    /// faces of one dimension) is a coboundary.
    pub fn is_coboundary<F: Field>(&self, field: &F, cochain: &[(u64, F::Elem)]) -> Result<bool> {
        let Some(first) = cochain.iter().find(|(_, c)| !field.is_zero(c)) else {
            return Ok(true);
        };
        let k = first.0.count_ones() as i64 - 1;
        let basis = self.faces_of_dim(k);
        let mut v = vec![field.zero(); basis.len()];
        for (face, c) in cochain {
            if field.is_zero(c) {
                continue;
            }
            if face.count_ones() as i64 - 1 != k {
                return Err(Error::Cochain("faces of different dimensions".into()));
            }
            let i = basis
                .iter()
                .position(|f| f == face)
                .ok_or_else(|| Error::Cochain(format!("{face:#b} is not a face")))?;
            v[i] = field.add(&v[i], c);
        }
        if k == -1 {
            return Ok(v.iter().all(|x| field.is_zero(x)));
        }
        let delta = self.coboundary_matrix(field, k - 1);
        Ok(Solver::new(&delta).solve(&v)?.is_some())
    }

    /// Parses the text format: `vertices:` line, optional `ghost:` line,
    /// then one facet per line as space-separated labels.
    pub fn parse(text: &str) -> Result<Self> {
        let mut labels: Option<Vec<String>> = None;
        let mut facet_lines: Vec<Vec<String>> = Vec::new();
        let mut ghosts: Vec<String> = Vec::new();
        let split = |s: &str| -> Vec<String> {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect()
        };
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                if labels.is_some() {
                    return Err(Error::Parse("duplicate `vertices:` line".into()));
                }
                labels = Some(split(rest));
            } else if let Some(rest) = line.strip_prefix("ghost:") {
                ghosts.extend(split(rest));
            } else {
                facet_lines.push(split(line));
            }
        }
        let mut labels = labels.ok_or_else(|| Error::Parse("missing `vertices:` line".into()))?;
        for g in ghosts {
            if !labels.contains(&g) {
                labels.push(g);
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Parse(format!("duplicate vertex `{l}`")));
            }
        }
        let mut facets = Vec::new();
        for line in facet_lines {
            let mut f = 0u64;
            for l in line {
                let v = labels
                    .iter()
                    .position(|x| *x == l)
                    .ok_or_else(|| Error::Parse(format!("unknown vertex `{l}`")))?;
                f |= 1 << v;
            }
            facets.push(f);
        }
        Self::from_facets(labels, &facets)
    }

    pub fn render(&self) -> String {
        let mut s = format!("vertices: {}\n", self.labels.join(" "));
        for f in self.facets() {
            if f == 0 {
                continue;
            }
            s.push_str(&self.face_labels(f).join(" "));
            s.push('\n');
        }
        s
    }

    pub fn face_labels(&self, f: u64) -> Vec<String> {
        (0..self.nvertices())
            .filter(|&v| f >> v & 1 == 1)
            .map(|v| self.labels[v].clone())
            .collect()
    }
}

fn compress(face: u64, keep: &[usize]) -> u64 {
    keep.iter()
        .enumerate()
        .filter(|(_, &v)| face >> v & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}
