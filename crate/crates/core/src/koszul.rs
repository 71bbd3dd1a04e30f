//! A small cochain model of the Koszul DGA of a Stanley-Reisner ring.
//!
//! For a simplicial complex `Δ` on `m` vertices, the algebra
//! `Λ[u_1..u_m] ⊗ k[Δ] / (v_i², u_i v_i)` with `d u_i = v_i` is a quotient of
//! the Koszul complex of `k[Δ]` by an acyclic ideal. Its basis is the set of
//! monomials `u_J v_I` with `I ∈ Δ` and `J ∩ I = ∅`; the homological degree is
//! `|J|` and the multidegree is `J ∪ I`. Strands have at most `2^|U|` cells,
//! which keeps ideals with many generators tractable when Taylor strands are
//! not.

use std::collections::{BTreeSet, HashSet};

use crate::dga::MonomialDga;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, Multidegree};
use crate::simplicial::SimplicialComplex;

/// A basis element `u_J v_I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SrCell {
    pub u: u64,
    pub v: u64,
}

#[derive(Clone, Debug)]
pub struct StanleyReisnerDga {
    complex: SimplicialComplex,
    faces: HashSet<u64>,
    support: Vec<u64>,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn below(k: usize, set: u64) -> u32 {
    (set & ((1u64 << k) - 1)).count_ones()
}

impl StanleyReisnerDga {
    pub fn new(complex: SimplicialComplex) -> Self {
        let faces = complex.faces().iter().copied().collect();
        let nonfaces = complex.minimal_nonfaces();
        let mut seen: BTreeSet<(u32, u64)> = BTreeSet::new();
        let mut frontier: Vec<u64> = nonfaces.clone();
        for &g in &nonfaces {
            seen.insert((g.count_ones(), g));
        }
        while let Some(x) = frontier.pop() {
            for &g in &nonfaces {
                let y = x | g;
                if seen.insert((y.count_ones(), y)) {
                    frontier.push(y);
                }
            }
        }
        StanleyReisnerDga {
            complex,
            faces,
            support: seen.into_iter().map(|(_, m)| m).collect(),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    fn is_face(&self, f: u64) -> bool {
        self.faces.contains(&f)
    }

    /// The degree-one cycle `u_j v_{N \ j}` (`j` the least vertex of `N`)
    /// representing the Koszul class of the minimal non-face `N`, i.e. the
    /// image of the Taylor class of the corresponding generator.
    pub fn generator_cycle(&self, nonface: u64) -> Result<SrCell> {
        let minimal = nonface != 0
            && !self.is_face(nonface)
            && bits(nonface).all(|i| self.is_face(nonface & !(1 << i)));
        if !minimal {
            return Err(Error::Inapplicable(format!(
                "{{{}}} is not a minimal non-face",
                self.complex.face_labels(nonface).join(",")
            )));
        }
        let j = nonface.trailing_zeros();
        Ok(SrCell {
            u: 1 << j,
            v: nonface & !(1 << j),
        })
    }

    fn mask_of(&self, u: &Multidegree) -> Option<u64> {
        (u.nvars() == self.complex.nvertices() && u.is_squarefree()).then(|| u.support())
    }
}

impl MonomialDga for StanleyReisnerDga {
    type Cell = SrCell;

    fn nvars(&self) -> usize {
        self.complex.nvertices()
    }

    fn homology_support(&self) -> Vec<Multidegree> {
        self.support
            .iter()
            .map(|&m| Monomial::from_support(self.nvars(), m))
            .collect()
    }

    fn has_cells(&self, u: &Multidegree) -> bool {
        self.mask_of(u).is_some()
    }

    fn cells(&self, u: &Multidegree) -> Result<Vec<SrCell>> {
        let full = self.mask_of(u).ok_or_else(|| {
            Error::NotSquarefree(u.render(&self.complex.variable_names()))
        })?;
        let mut out = Vec::new();
        // J runs over subsets of the multidegree; I is the complement
        let mut j = full;
        loop {
            if self.is_face(full & !j) {
                out.push(SrCell { u: j, v: full & !j });
            }
            if j == 0 {
                break;
            }
            j = (j - 1) & full;
        }
        out.sort_unstable();
        Ok(out)
    }

    fn cell_degree(&self, c: SrCell) -> usize {
        c.u.count_ones() as usize
    }

    fn cell_mdeg(&self, c: SrCell) -> Multidegree {
        Monomial::from_support(self.nvars(), c.u | c.v)
    }

    fn differential(&self, c: SrCell) -> Vec<(SrCell, bool)> {
        bits(c.u)
            .filter(|&j| self.is_face(c.v | 1 << j))
            .map(|j| {
                (
                    SrCell {
                        u: c.u & !(1 << j),
                        v: c.v | 1 << j,
                    },
                    below(j, c.u) % 2 == 1,
                )
            })
            .collect()
    }

    fn product(&self, a: SrCell, b: SrCell) -> Option<(bool, SrCell)> {
        if (a.u | a.v) & (b.u | b.v) != 0 || !self.is_face(a.v | b.v) {
            return None;
        }
        let crossings: u32 = bits(a.u).map(|j| below(j, b.u)).sum();
        Some((
            crossings % 2 == 1,
            SrCell {
                u: a.u | b.u,
                v: a.v | b.v,
            },
        ))
    }

    fn describe(&self, c: SrCell) -> String {
        format!(
            "u{{{}}}v{{{}}}",
            self.complex.face_labels(c.u).join(","),
            self.complex.face_labels(c.v).join(",")
        )
    }
}
