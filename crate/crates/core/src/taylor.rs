//! The Taylor resolution of a monomial ideal as a DGA, its reduction
//! `T ⊗ k`, the lcm-lattice and the fiber complexes `F_u`.
//!
//! Taylor basis elements are subsets of the generator list, stored as bit
//! masks over generator indices. The generator order of the ideal is the
//! total order used for every sign.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::dga::MonomialDga;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialIdeal, Multidegree};
use crate::simplicial::SimplicialComplex;

/// Subsets of `G_u` are enumerated exhaustively; beyond this many
/// generators below a single multidegree the Taylor strand is refused.
pub const MAX_STRAND_GENERATORS: usize = 22;

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// `#{m' in I : m' < m}` for the generator with index `k`.
fn sigma(k: usize, set: u64) -> u32 {
    (set & ((1u64 << k) - 1)).count_ones()
}

/// `m_I`, the lcm of the generators indexed by `set` (the constant for `∅`).
pub fn lcm_of(ideal: &MonomialIdeal, set: u64) -> Monomial {
    bits(set).fold(Monomial::one(ideal.nvars()), |acc, k| {
        acc.lcm_unchecked(&ideal.gens()[k])
    })
}

/// One term `± coefficient · ⟨subset⟩` of a chain in `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorTerm {
    pub subset: u64,
    pub negative: bool,
    pub coefficient: Monomial,
}

/// Differential of `⟨I⟩` in the Taylor complex over `S`.
pub fn boundary(ideal: &MonomialIdeal, set: u64) -> Vec<TaylorTerm> {
    let top = lcm_of(ideal, set);
    bits(set)
        .map(|k| {
            let rest = set & !(1 << k);
            TaylorTerm {
                subset: rest,
                negative: sigma(k, set) % 2 == 1,
                coefficient: top.div(&lcm_of(ideal, rest)).expect("lcm of a subset divides"),
            }
        })
        .collect()
}

/// Differential of `ē_I` in `T ⊗ k`: the terms of [`boundary`] whose
/// coefficient is the constant monomial.
pub fn reduced_boundary(ideal: &MonomialIdeal, set: u64) -> Vec<(u64, bool)> {
    let top = lcm_of(ideal, set);
    bits(set)
        .filter_map(|k| {
            let rest = set & !(1 << k);
            (lcm_of(ideal, rest) == top).then_some((rest, sigma(k, set) % 2 == 1))
        })
        .collect()
}

/// `⟨I⟩·⟨J⟩ = ± (m_I m_J / m_{I∪J}) ⟨I ∪ J⟩`, or `None` when `I ∩ J ≠ ∅`.
pub fn product(ideal: &MonomialIdeal, i: u64, j: u64) -> Option<TaylorTerm> {
    if i & j != 0 {
        return None;
    }
    let union = i | j;
    let coefficient = lcm_of(ideal, i)
        .mul(&lcm_of(ideal, j))
        .expect("same ambient ring")
        .div(&lcm_of(ideal, union))
        .expect("lcm divides the product");
    let crossings: u32 = bits(i).map(|m| sigma(m, j)).sum();
    Some(TaylorTerm {
        subset: union,
        negative: crossings % 2 == 1,
        coefficient,
    })
}

/// The product in `T ⊗ k`; zero unless `m_I m_J = m_{I∪J}`.
pub fn reduced_product(ideal: &MonomialIdeal, i: u64, j: u64) -> Option<(bool, u64)> {
    product(ideal, i, j)
        .filter(|t| t.coefficient.is_one())
        .map(|t| (t.negative, t.subset))
}

/// The lcm-lattice: multidegrees of lcms of nonempty generator subsets.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    elements: Vec<Multidegree>,
    members: HashSet<Multidegree>,
}

impl LcmLattice {
    /// Closure of the generator multidegrees under joins.
    pub fn new(ideal: &MonomialIdeal) -> Self {
        let mut members: HashSet<Multidegree> = HashSet::new();
        let mut queue: VecDeque<Multidegree> = VecDeque::new();
        for g in ideal.gens() {
            if members.insert(g.clone()) {
                queue.push_back(g.clone());
            }
        }
        while let Some(x) = queue.pop_front() {
            for g in ideal.gens() {
                let y = x.lcm_unchecked(g);
                if !members.contains(&y) {
                    members.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Multidegree> = members.iter().cloned().collect();
        elements.sort_by(|a, b| (a.total_degree(), a).cmp(&(b.total_degree(), b)));
        LcmLattice { elements, members }
    }

    pub fn elements(&self) -> &[Multidegree] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, u: &Multidegree) -> bool {
        self.members.contains(u)
    }
}

/// `G_u`: the generators whose multidegree is below `u`, as a mask.
pub fn generators_below(ideal: &MonomialIdeal, u: &Multidegree) -> u64 {
    ideal
        .gens()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.divides_unchecked(u))
        .fold(0, |acc, (k, _)| acc | 1 << k)
}

/// The scalar-reduced Taylor complex `T ⊗ k` of an ideal.
#[derive(Clone, Debug)]
pub struct TaylorDga {
    ideal: MonomialIdeal,
    labels: Vec<String>,
    lattice: LcmLattice,
}

impl TaylorDga {
    pub fn new(ideal: MonomialIdeal) -> Result<Self> {
        if ideal.ngens() > 63 {
            return Err(Error::TooLarge {
                what: "generators",
                count: ideal.ngens(),
                limit: 63,
            });
        }
        let labels = (0..ideal.ngens()).map(|i| ideal.render_gen(i)).collect();
        let lattice = LcmLattice::new(&ideal);
        Ok(TaylorDga {
            ideal,
            labels,
            lattice,
        })
    }

    /// Uses `labels` (one per generator) when describing basis elements.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.ideal.ngens());
        self.labels = labels;
        self
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn lattice(&self) -> &LcmLattice {
        &self.lattice
    }

    /// Builds a Taylor basis mask from generator indices.
    pub fn subset(indices: &[usize]) -> u64 {
        indices.iter().fold(0, |acc, &i| acc | 1 << i)
    }
}

impl MonomialDga for TaylorDga {
    type Cell = u64;

    fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    fn homology_support(&self) -> Vec<Multidegree> {
        self.lattice.elements().to_vec()
    }

    fn has_cells(&self, u: &Multidegree) -> bool {
        u.nvars() == self.nvars() && (u.is_one() || self.lattice.contains(u))
    }

    fn cells(&self, u: &Multidegree) -> Result<Vec<u64>> {
        if u.nvars() != self.nvars() {
            return Err(Error::AmbientMismatch(u.nvars(), self.nvars()));
        }
        if u.is_one() {
            return Ok(vec![0]);
        }
        if !self.lattice.contains(u) {
            return Err(Error::NotInLattice(u.render(self.ideal.vars())));
        }
        let below: Vec<usize> = bits(generators_below(&self.ideal, u)).collect();
        if below.len() > MAX_STRAND_GENERATORS {
            return Err(Error::TooLarge {
                what: "generators below one multidegree",
                count: below.len(),
                limit: MAX_STRAND_GENERATORS,
            });
        }
        let mut out = Vec::new();
        let gens = self.ideal.gens();
        // depth-first over subsets of G_u, carrying the running lcm
        let mut stack: Vec<(usize, u64, Monomial)> = vec![(0, 0, Monomial::one(self.nvars()))];
        while let Some((next, set, l)) = stack.pop() {
            if set != 0 && &l == u {
                out.push(set);
            }
            for (pos, &k) in below.iter().enumerate().skip(next) {
                stack.push((pos + 1, set | 1 << k, l.lcm_unchecked(&gens[k])));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    fn cell_degree(&self, c: u64) -> usize {
        c.count_ones() as usize
    }

    fn cell_mdeg(&self, c: u64) -> Multidegree {
        lcm_of(&self.ideal, c)
    }

    fn differential(&self, c: u64) -> Vec<(u64, bool)> {
        reduced_boundary(&self.ideal, c)
    }

    fn product(&self, a: u64, b: u64) -> Option<(bool, u64)> {
        reduced_product(&self.ideal, a, b)
    }

    fn describe(&self, c: u64) -> String {
        let names: Vec<&str> = bits(c).map(|k| self.labels[k].as_str()).collect();
        format!("e{{{}}}", names.join(","))
    }
}

/// `F_u = {I ⊆ G_u : lcm(G_u \ I) = u}` on the vertex set `G_u`.
///
/// Vertex `k` of the result is the `k`-th generator of `G_u` in generator
/// order; labels are the rendered generators.
pub fn fiber_complex(ideal: &MonomialIdeal, u: &Multidegree) -> Result<SimplicialComplex> {
    let lattice = LcmLattice::new(ideal);
    if !lattice.contains(u) {
        return Err(Error::NotInLattice(u.render(ideal.vars())));
    }
    let below: Vec<usize> = bits(generators_below(ideal, u)).collect();
    if below.len() > MAX_STRAND_GENERATORS {
        return Err(Error::TooLarge {
            what: "generators below one multidegree",
            count: below.len(),
            limit: MAX_STRAND_GENERATORS,
        });
    }
    let n = below.len();
    let labels = below.iter().map(|&k| ideal.render_gen(k)).collect();
    let full_local = (1u64 << n) - 1;
    let faces: Vec<u64> = (0..=full_local)
        .filter(|&local| {
            let complement = full_local & !local;
            let global = bits(complement).fold(0u64, |acc, i| acc | 1 << below[i]);
            &lcm_of(ideal, global) == u
        })
        .collect();
    // faces are downward closed by construction; pass them all as facets
    SimplicialComplex::from_facets(labels, &faces)
}

/// Sends a homogeneous chain `Σ c_I ē_I` of multidegree `u` to the cochain
/// `Σ ε(I) c_I e*_{G_u \ I}` on `F_u`, where `ε(I) = (-1)^{Σ_{m∈I} pos(m)}`
/// and `pos` is the position of `m` inside `G_u`. With this sign the map
/// commutes with the differentials on the nose.
pub fn chain_to_cochain<F: Field>(
    ideal: &MonomialIdeal,
    field: &F,
    u: &Multidegree,
    chain: &[(u64, F::Elem)],
) -> Result<Vec<(u64, F::Elem)>> {
    let below: Vec<usize> = bits(generators_below(ideal, u)).collect();
    let local: HashMap<usize, usize> = below.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let n = below.len();
    let full_local = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    for (set, c) in chain {
        if field.is_zero(c) {
            continue;
        }
        if &lcm_of(ideal, *set) != u {
            return Err(Error::NotHomogeneous(format!(
                "term {set:#b} has multidegree {}",
                lcm_of(ideal, *set).render(ideal.vars())
            )));
        }
        let mut loc = 0u64;
        let mut parity = 0usize;
        for k in bits(*set) {
            let i = local[&k];
            loc |= 1 << i;
            parity += i;
        }
        out.push((full_local & !loc, field.signed(c, parity % 2 == 1)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::Strand;
    use crate::field::Rationals;
    use crate::monomial::paper_example;

    fn triangle() -> MonomialIdeal {
        // (xy, yz, zx)
        MonomialIdeal::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                Monomial::new(vec![1, 1, 0]),
                Monomial::new(vec![0, 1, 1]),
                Monomial::new(vec![1, 0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn boundary_of_a_pair() {
        // ∂⟨xy, yz⟩ = x⟨yz⟩ - z⟨xy⟩
        let i = triangle();
        let d = boundary(&i, 0b011);
        assert_eq!(
            d,
            vec![
                TaylorTerm {
                    subset: 0b010,
                    negative: false,
                    coefficient: Monomial::new(vec![1, 0, 0]),
                },
                TaylorTerm {
                    subset: 0b001,
                    negative: true,
                    coefficient: Monomial::new(vec![0, 0, 1]),
                },
            ]
        );
        let single = boundary(&i, 0b100);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].subset, 0);
        assert_eq!(single[0].coefficient, i.gens()[2]);
        assert!(boundary(&i, 0).is_empty());
    }

    #[test]
    fn boundary_squares_to_zero_on_paper_example() {
        let p = paper_example();
        for set in 1u64..256 {
            let mut acc: HashMap<u64, (i64, Monomial)> = HashMap::new();
            for t in boundary(&p, set) {
                for s in boundary(&p, t.subset) {
                    let coeff = t.coefficient.mul(&s.coefficient).unwrap();
                    let sign = if t.negative ^ s.negative { -1 } else { 1 };
                    let e = acc.entry(s.subset).or_insert((0, coeff.clone()));
                    assert_eq!(e.1, coeff);
                    e.0 += sign;
                }
            }
            assert!(acc.values().all(|(c, _)| *c == 0), "∂² ≠ 0 on {set:#b}");
        }
    }

    #[test]
    fn reduced_boundary_examples() {
        let i = triangle();
        assert_eq!(reduced_boundary(&i, 0b111).len(), 3);
        assert!(reduced_boundary(&i, 0b011).is_empty());
        // built-in example: ∂ē{a,ab,b} = -ē{a,b}
        let p = paper_example();
        let (a, ab, b) = (0, 1, 3);
        assert_eq!(
            reduced_boundary(&p, TaylorDga::subset(&[a, ab, b])),
            vec![(TaylorDga::subset(&[a, b]), true)]
        );
    }

    #[test]
    fn product_examples() {
        let p = paper_example();
        assert!(product(&p, 0b11, 0b11).is_none());
        // ē_a · ē_b = ē_{a,b}
        assert_eq!(reduced_product(&p, 1 << 0, 1 << 3), Some((false, 0b1001)));
        assert_eq!(reduced_product(&p, 1 << 3, 1 << 0), Some((true, 0b1001)));
        // ē_a · ē_ab vanishes in T ⊗ k
        assert!(product(&p, 1 << 0, 1 << 1).is_some());
        assert_eq!(reduced_product(&p, 1 << 0, 1 << 1), None);
    }

    #[test]
    fn lattice_examples() {
        let l = LcmLattice::new(&triangle());
        let mut got: Vec<Vec<u32>> = l.elements().iter().map(|m| m.exponents().to_vec()).collect();
        got.sort();
        // brute force over all nonempty subsets
        let mut expected: Vec<Vec<u32>> = (1u64..8)
            .map(|s| lcm_of(&triangle(), s).exponents().to_vec())
            .collect();
        expected.sort();
        expected.dedup();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 4);

        let single = MonomialIdeal::new(vec!["x".into()], vec![Monomial::new(vec![3])]).unwrap();
        assert_eq!(LcmLattice::new(&single).len(), 1);
        let p = paper_example();
        assert!(LcmLattice::new(&p).contains(&Monomial::new(vec![1, 2, 1, 2, 3])));
    }

    #[test]
    fn strand_examples() {
        let q = Rationals;
        let dga = TaylorDga::new(triangle()).unwrap();
        let s = Strand::build(&dga, &q, &Monomial::new(vec![1, 1, 1])).unwrap();
        assert_eq!((s.rank_in(1), s.rank_in(2), s.rank_in(3)), (0, 3, 1));
        let s = Strand::build(&dga, &q, &Monomial::new(vec![1, 1, 0])).unwrap();
        assert_eq!((s.rank_in(1), s.top_degree()), (1, 1));
        assert!(Strand::build(&dga, &q, &Monomial::new(vec![2, 0, 0])).is_err());

        let p = paper_example();
        let u = Monomial::new(vec![1, 2, 1, 2, 3]);
        assert_eq!(generators_below(&p, &u), 0xff);
    }

    #[test]
    fn fiber_complex_examples() {
        let i = triangle();
        let f = fiber_complex(&i, &Monomial::new(vec![1, 1, 1])).unwrap();
        assert_eq!(f.faces(), &[0, 0b001, 0b010, 0b100]);

        let single = MonomialIdeal::new(vec!["x".into()], vec![Monomial::new(vec![3])]).unwrap();
        let f = fiber_complex(&single, &Monomial::new(vec![3])).unwrap();
        assert_eq!(f.nvertices(), 1);
        assert_eq!(f.faces(), &[0]);
    }

    #[test]
    fn chain_to_cochain_top_and_zero() {
        let q = Rationals;
        let i = triangle();
        let u = Monomial::new(vec![1, 1, 1]);
        let img = chain_to_cochain(&i, &q, &u, &[(0b111, q.one())]).unwrap();
        // positions 0 + 1 + 2 are odd
        assert_eq!(img, vec![(0, q.from_i64(-1))]);
        assert!(chain_to_cochain(&i, &q, &u, &[]).unwrap().is_empty());
        assert!(chain_to_cochain(&i, &q, &u, &[(0b001, q.one())]).is_err());
    }
}
