//! Monomials, monomial ideals with an ordered minimal generating set, and
//! polarization.

use std::fmt;

use crate::error::{Error, Result};

/// An exponent vector. Also used as the multidegree of homogeneous elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

pub type Multidegree = Monomial;

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_support(nvars: usize, support: u64) -> Self {
        Monomial((0..nvars).map(|i| ((support >> i) & 1) as u32).collect())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Variables with a nonzero exponent, as a bit set.
    pub fn support(&self) -> u64 {
        debug_assert!(self.0.len() <= 64);
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    fn check_ambient(&self, other: &Monomial) -> Result<()> {
        if self.0.len() != other.0.len() {
            return Err(Error::AmbientMismatch(self.0.len(), other.0.len()));
        }
        Ok(())
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        Ok(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.0.len() != other.0.len() || !other.divides_unchecked(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn coprime(&self, other: &Monomial) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.support() & other.support() == 0)
    }

    /// Renders with the given variable names, e.g. `x1*x2^2`; the constant is `1`.
    pub fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{}", vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn parse(s: &str, vars: &[String]) -> Result<Monomial> {
        let mut e = vec![0u32; vars.len()];
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial(e));
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, pow) = match factor.split_once('^') {
                Some((n, p)) => (
                    n.trim(),
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let i = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in `{s}`")))?;
            e[i] += pow;
        }
        Ok(Monomial(e))
    }
}

/// The divisibility-minimal sublist, keeping first occurrences in order.
pub fn minimalize(gens: &[Monomial]) -> Result<Vec<Monomial>> {
    if gens.iter().any(Monomial::is_one) {
        return Err(Error::UnitIdeal);
    }
    let mut out: Vec<Monomial> = Vec::new();
    for (i, m) in gens.iter().enumerate() {
        let redundant = gens.iter().enumerate().any(|(j, other)| {
            j != i && other.divides_unchecked(m) && (other != m || j < i)
        });
        if !redundant {
            out.push(m.clone());
        }
    }
    Ok(out)
}

/// A monomial ideal given by an ordered minimal generating set. The order
/// of the generators is the total order used for all signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Validates that `gens` is a minimal generating set over `vars`.
    pub fn new(vars: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        if vars.len() > 64 {
            return Err(Error::TooLarge {
                what: "variables",
                count: vars.len(),
                limit: 64,
            });
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Parse(format!("duplicate variable `{v}`")));
            }
        }
        for g in &gens {
            if g.nvars() != vars.len() {
                return Err(Error::AmbientMismatch(g.nvars(), vars.len()));
            }
        }
        if gens.iter().any(Monomial::is_one) {
            return Err(Error::UnitIdeal);
        }
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                if i != j && a.divides_unchecked(b) {
                    return Err(Error::NotMinimal(format!(
                        "{} divides {}",
                        a.render(&vars),
                        b.render(&vars)
                    )));
                }
            }
        }
        Ok(MonomialIdeal { vars, gens })
    }

    /// Minimalizes first, keeping first-occurrence order.
    pub fn from_generators(vars: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != vars.len() {
                return Err(Error::AmbientMismatch(g.nvars(), vars.len()));
            }
        }
        let gens = minimalize(&gens)?;
        Self::new(vars, gens)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Whether `m` lies in the ideal.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Variables that occur in some generator.
    pub fn used_variables(&self) -> u64 {
        self.gens.iter().fold(0, |acc, g| acc | g.support())
    }

    /// Index of the generator equal to `m`, if any.
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.gens.iter().position(|g| g == m)
    }

    /// The same ideal with generators listed in a different order.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.ngens()];
        for &i in order {
            if i >= self.ngens() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parse("not a permutation of the generators".into()));
            }
        }
        if order.len() != self.ngens() {
            return Err(Error::Parse("not a permutation of the generators".into()));
        }
        Ok(MonomialIdeal {
            vars: self.vars.clone(),
            gens: order.iter().map(|&i| self.gens[i].clone()).collect(),
        })
    }

    /// Parses the text format: a `vars:` line, then one generator per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vars: Option<Vec<String>> = None;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match &vars {
                None => {
                    let rest = line.strip_prefix("vars:").ok_or_else(|| {
                        Error::Parse(format!("line {}: expected `vars:` header", lineno + 1))
                    })?;
                    let names: Vec<String> = rest
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect();
                    for n in &names {
                        if !is_valid_name(n) {
                            return Err(Error::Parse(format!("invalid variable name `{n}`")));
                        }
                    }
                    vars = Some(names);
                }
                Some(v) => gens.push(
                    Monomial::parse(line, v)
                        .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?,
                ),
            }
        }
        let vars = vars.ok_or_else(|| Error::Parse("missing `vars:` header".into()))?;
        Self::from_generators(vars, gens)
    }

    pub fn render(&self) -> String {
        let mut s = format!("vars: {}\n", self.vars.join(", "));
        for g in &self.gens {
            s.push_str(&g.render(&self.vars));
            s.push('\n');
        }
        s
    }

    pub fn render_gen(&self, i: usize) -> String {
        self.gens[i].render(&self.vars)
    }

    /// Standard polarization: a variable `x` of maximal exponent `e >= 2`
    /// becomes `x_1, ..., x_e`, and `x^k` becomes `x_1 ... x_k`. Variables
    /// of maximal exponent at most one are kept under their own name.
    pub fn polarize(&self) -> (MonomialIdeal, Polarization) {
        let n = self.nvars();
        let maxexp: Vec<u32> = (0..n)
            .map(|i| self.gens.iter().map(|g| g.0[i]).max().unwrap_or(0))
            .collect();
        let mut names: Vec<String> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(n);
        for (i, &e) in maxexp.iter().enumerate() {
            if e <= 1 {
                blocks.push(vec![names.len()]);
                names.push(self.vars[i].clone());
            } else {
                let mut block = Vec::new();
                for k in 1..=e {
                    let mut name = format!("{}_{}", self.vars[i], k);
                    while self.vars.contains(&name) || names.contains(&name) {
                        name.push('_');
                    }
                    block.push(names.len());
                    names.push(name);
                }
                blocks.push(block);
            }
        }
        let total = names.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0u32; total];
                for (i, &k) in g.0.iter().enumerate() {
                    for &j in &blocks[i][..k as usize] {
                        e[j] = 1;
                    }
                }
                Monomial(e)
            })
            .collect();
        let ideal = MonomialIdeal { vars: names, gens };
        (
            ideal,
            Polarization {
                original_vars: self.vars.clone(),
                blocks,
            },
        )
    }
}

fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Variable map produced by [`MonomialIdeal::polarize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    original_vars: Vec<String>,
    /// For each original variable, the polarized variables replacing it.
    pub blocks: Vec<Vec<usize>>,
}

impl Polarization {
    pub fn is_identity(&self) -> bool {
        self.blocks.iter().enumerate().all(|(i, b)| b == &[i])
    }

    /// Substitutes every polarized variable by its original variable.
    pub fn depolarize(&self, m: &Monomial) -> Monomial {
        Monomial(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&j| m.0[j]).sum())
                .collect(),
        )
    }

    pub fn original_vars(&self) -> &[String] {
        &self.original_vars
    }
}

/// Names of the generators of [`paper_example`], in generator order.
pub const PAPER_EXAMPLE_LABELS: [&str; 8] = [
    "m_a", "m_ab", "m_ab#c", "m_b", "m_bc", "m_bc#a", "m_c", "m_ca",
];

/// The ideal in `k[x1,x2,y1,y2,z]` with trivial Koszul product but a nonzero
/// ternary Massey product. Generators are ordered so that
/// `a < ab < b < bc < c`.
pub fn paper_example() -> MonomialIdeal {
    let vars: Vec<String> = ["x1", "x2", "y1", "y2", "z"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let gens = [
        [1, 2, 0, 0, 0], // m_a    = x1 x2^2
        [1, 1, 1, 1, 0], // m_ab   = x1 x2 y1 y2
        [1, 0, 1, 0, 1], // m_ab#c = x1 y1 z
        [0, 0, 1, 2, 0], // m_b    = y1 y2^2
        [0, 0, 0, 2, 2], // m_bc   = y2^2 z^2
        [0, 2, 0, 2, 1], // m_bc#a = x2^2 y2^2 z
        [0, 0, 0, 0, 3], // m_c    = z^3
        [0, 2, 0, 0, 2], // m_ca   = x2^2 z^2
    ]
    .iter()
    .map(|e| Monomial(e.to_vec()))
    .collect();
    MonomialIdeal::new(vars, gens).expect("example generators are minimal")
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = (0..self.ngens()).map(|i| self.render_gen(i)).collect();
        write!(f, "({})", g.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lcm_examples() {
        // x1 x2^2 and y1 y2^2 in k[x1,x2,y1,y2]
        let a = m(&[1, 2, 0, 0]);
        let b = m(&[0, 0, 1, 2]);
        assert_eq!(a.lcm(&b).unwrap(), m(&[1, 2, 1, 2]));
        assert_eq!(a.lcm(&a).unwrap(), a);
        let ab = m(&[1, 1, 1, 1]);
        assert_eq!(a.lcm(&ab).unwrap(), m(&[1, 2, 1, 1]));
        assert!(a.lcm(&m(&[1, 1])).is_err());
    }

    #[test]
    fn coprime_and_divides() {
        let p = paper_example();
        let g = p.gens();
        assert!(g[0].coprime(&g[3]).unwrap());
        assert!(!g[0].coprime(&g[1]).unwrap());
        let top = m(&[1, 2, 1, 2, 3]);
        assert!(g[2].divides(&top).unwrap());
        assert_eq!(g[0].total_degree(), 3);
        assert_eq!(g[5].support(), 0b11010);
    }

    #[test]
    fn minimalize_examples() {
        let x = m(&[1, 0]);
        let xy = m(&[1, 1]);
        assert_eq!(minimalize(&[x.clone(), xy]).unwrap(), vec![x]);
        let x2 = m(&[2, 0]);
        let y = m(&[0, 1]);
        assert_eq!(
            minimalize(&[x2.clone(), x2.clone(), y.clone()]).unwrap(),
            vec![x2, y]
        );
        let p = paper_example();
        assert_eq!(minimalize(p.gens()).unwrap(), p.gens().to_vec());
        assert!(matches!(minimalize(&[m(&[0, 0])]), Err(Error::UnitIdeal)));
    }

    #[test]
    fn paper_example_shape() {
        let p = paper_example();
        assert_eq!(p.ngens(), 8);
        assert_eq!(p.nvars(), 5);
        assert_eq!(p.render_gen(5), "x2^2*y2^2*z");
        assert_eq!(p.max_degree(), 5);
    }

    #[test]
    fn polarize_pure_power() {
        let i = MonomialIdeal::new(names(&["x"]), vec![m(&[2])]).unwrap();
        let (p, map) = i.polarize();
        assert_eq!(p.vars(), &names(&["x_1", "x_2"])[..]);
        assert_eq!(p.gens(), &[m(&[1, 1])]);
        assert_eq!(map.depolarize(&p.gens()[0]), m(&[2]));
    }

    #[test]
    fn polarize_paper_example() {
        let (p, map) = paper_example().polarize();
        assert_eq!(p.nvars(), 9);
        assert_eq!(p.ngens(), 8);
        assert!(p.is_squarefree());
        for (g, orig) in p.gens().iter().zip(paper_example().gens()) {
            assert_eq!(&map.depolarize(g), orig);
        }
        let (pp, map2) = p.polarize();
        assert_eq!(pp, p);
        assert!(map2.is_identity());
    }

    #[test]
    fn parse_and_render_round_trip() {
        let text = "# the example\nvars: x1, x2, y1, y2, z\nx1*x2^2\nx1*x2*y1*y2\nx1*y1*z\ny1*y2^2\ny2^2*z^2\nx2^2*y2^2*z\nz^3\nx2^2*z^2\n";
        let i = MonomialIdeal::parse(text).unwrap();
        assert_eq!(i, paper_example());
        assert_eq!(MonomialIdeal::parse(&i.render()).unwrap(), i);
        assert!(MonomialIdeal::parse("vars: x\n1\n").is_err());
        assert!(MonomialIdeal::parse("x*y\n").is_err());
        assert!(MonomialIdeal::parse("vars: x y\nx*w\n").is_err());
    }

    #[test]
    fn rejects_non_minimal_generators() {
        assert!(matches!(
            MonomialIdeal::new(names(&["x", "y"]), vec![m(&[1, 0]), m(&[1, 1])]),
            Err(Error::NotMinimal(_))
        ));
    }
}
