//! Necessary combinatorial conditions for a trivial-product non-Golod
//! ideal, and a pattern search for squarefree examples.
//!
//! Squarefree monomials are treated as sets of variables (bit masks).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::homology::HomologyEngine;
use crate::massey::{all_products_trivial, pair_criterion, ternary_massey_generators};
use crate::monomial::{Monomial, MonomialIdeal};

/// Role names in the order used for generator lists.
pub const ROLE_NAMES: [&str; 9] = ["a", "ab", "ab#c", "b", "bc", "bc#a", "c", "ca", "ca#b"];

/// Generator indices playing the roles `a, b, c, ab, bc, ca` and the forced
/// generators `ab#c, bc#a, ca#b`. Missing roles are `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoleAssignment {
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub c: Option<usize>,
    pub ab: Option<usize>,
    pub bc: Option<usize>,
    pub ca: Option<usize>,
    pub ab_c: Option<usize>,
    pub bc_a: Option<usize>,
    pub ca_b: Option<usize>,
}

impl RoleAssignment {
    fn slot(&mut self, name: &str) -> Option<&mut Option<usize>> {
        Some(match name {
            "a" => &mut self.a,
            "b" => &mut self.b,
            "c" => &mut self.c,
            "ab" => &mut self.ab,
            "bc" => &mut self.bc,
            "ca" => &mut self.ca,
            "ab#c" => &mut self.ab_c,
            "bc#a" => &mut self.bc_a,
            "ca#b" => &mut self.ca_b,
            _ => return None,
        })
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.clone().slot(name).and_then(|s| *s)
    }

    /// Parses `a=0,ab=1,...` with generator indices or labels from `labels`.
    pub fn parse(text: &str, labels: &[String]) -> Result<Self> {
        let mut out = RoleAssignment::default();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (role, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected role=generator, got `{part}`")))?;
            let index = match value.trim().parse::<usize>() {
                Ok(i) => i,
                Err(_) => labels
                    .iter()
                    .position(|l| l == value.trim())
                    .ok_or_else(|| Error::Parse(format!("unknown generator `{value}`")))?,
            };
            if index >= labels.len() {
                return Err(Error::Parse(format!("generator index {index} out of range")));
            }
            *out.slot(role.trim())
                .ok_or_else(|| Error::Parse(format!("unknown role `{role}`")))? = Some(index);
        }
        Ok(out)
    }

    /// The role naming of the built-in example (and of its polarization):
    /// generators listed as `a, ab, ab#c, b, bc, bc#a, c, ca` with
    /// `ca#b = bc#a`.
    pub fn paper() -> Self {
        RoleAssignment {
            a: Some(0),
            ab: Some(1),
            ab_c: Some(2),
            b: Some(3),
            bc: Some(4),
            bc_a: Some(5),
            c: Some(6),
            ca: Some(7),
            ca_b: Some(5),
        }
    }

    fn core(&self) -> [Option<usize>; 6] {
        [self.a, self.b, self.c, self.ab, self.bc, self.ca]
    }
}

/// Outcome of each condition of the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    /// `a, b, c` pairwise disjoint.
    pub disjoint: bool,
    /// `ab ⊆ a∪b` meeting both; likewise `bc`, `ca`.
    pub ab_between: bool,
    pub bc_between: bool,
    pub ca_between: bool,
    /// `b ⊆ ab ∪ bc`.
    pub eq_b: bool,
    /// `a ⊆ ab ∪ ca` or `c ⊆ bc ∪ ca`.
    pub eq_a: bool,
    /// A generator other than the six core roles divides `lcm(ab, c)`.
    pub ab_c: Option<usize>,
    pub bc_a: Option<usize>,
    pub ca_b: Option<usize>,
    /// The six core roles are distinct generators.
    pub distinct: bool,
    /// `bc#a = ca#b`.
    pub coincidence: bool,
}

impl PatternReport {
    pub fn all_hold(&self) -> bool {
        self.disjoint
            && self.ab_between
            && self.bc_between
            && self.ca_between
            && self.eq_b
            && self.eq_a
            && self.ab_c.is_some()
            && self.bc_a.is_some()
            && self.ca_b.is_some()
            && self.distinct
    }
}

fn subset(x: u64, y: u64) -> bool {
    x & !y == 0
}

fn between(m: u64, x: u64, y: u64) -> bool {
    subset(m, x | y) && m & x != 0 && m & y != 0
}

/// Evaluates the pattern conditions for `assignment` on a squarefree ideal.
pub fn pattern_check(ideal: &MonomialIdeal, assignment: &RoleAssignment) -> Result<PatternReport> {
    if let Some(g) = ideal.gens().iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree(g.render(ideal.vars())));
    }
    let sets: Vec<u64> = ideal.gens().iter().map(Monomial::support).collect();
    let role = |r: Option<usize>| -> Result<Option<u64>> {
        r.map(|i| {
            sets.get(i)
                .copied()
                .ok_or_else(|| Error::Parse(format!("generator index {i} out of range")))
        })
        .transpose()
    };
    let (a, b, c) = (role(assignment.a)?, role(assignment.b)?, role(assignment.c)?);
    let (ab, bc, ca) = (role(assignment.ab)?, role(assignment.bc)?, role(assignment.ca)?);
    let core: Vec<usize> = assignment.core().iter().flatten().copied().collect();
    let mut distinct = core.len() == 6;
    for (i, x) in core.iter().enumerate() {
        distinct &= !core[..i].contains(x);
    }
    let disjoint = match (a, b, c) {
        (Some(a), Some(b), Some(c)) => a & b == 0 && b & c == 0 && a & c == 0,
        _ => false,
    };
    let pair = |m: Option<u64>, x: Option<u64>, y: Option<u64>| match (m, x, y) {
        (Some(m), Some(x), Some(y)) => between(m, x, y),
        _ => false,
    };
    let eq_b = matches!((b, ab, bc), (Some(b), Some(ab), Some(bc)) if subset(b, ab | bc));
    let eq_a = match (ca, ab, bc) {
        (Some(ca), Some(ab), Some(bc)) => {
            a.is_some_and(|a| subset(a, ab | ca)) || c.is_some_and(|c| subset(c, bc | ca))
        }
        _ => false,
    };
    // a forced generator divides the lcm of its two roles, and is neither
    let forced = |given: Option<usize>, x: Option<u64>, y: Option<u64>| -> Option<usize> {
        let (x, y) = (x?, y?);
        let ok = |k: usize| !core.contains(&k) && subset(sets[k], x | y);
        match given {
            Some(k) => ok(k).then_some(k),
            None => (0..sets.len()).find(|&k| ok(k)),
        }
    };
    let ab_c = forced(assignment.ab_c, ab, c);
    let bc_a = forced(assignment.bc_a, bc, a);
    let ca_b = forced(assignment.ca_b, ca, b);
    Ok(PatternReport {
        disjoint,
        ab_between: pair(ab, a, b),
        bc_between: pair(bc, b, c),
        ca_between: pair(ca, c, a),
        eq_b,
        eq_a,
        ab_c,
        bc_a,
        ca_b,
        distinct,
        coincidence: bc_a.is_some() && bc_a == ca_b,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    /// Variables that occur in some generator.
    pub nvars: usize,
    pub ngens: usize,
    /// `n ≥ 5` and at least 8 generators.
    pub meets_bounds: bool,
    /// Exactly 5 variables and 8 generators.
    pub equality: bool,
}

pub fn minimality_report(ideal: &MonomialIdeal) -> MinimalityReport {
    let nvars = ideal.used_variables().count_ones() as usize;
    let ngens = ideal.ngens();
    MinimalityReport {
        nvars,
        ngens,
        meets_bounds: nvars >= 5 && ngens >= 8,
        equality: nvars == 5 && ngens == 8,
    }
}

/// A candidate that passed full verification: all products vanish and
/// `μ₃([ē_a],[ē_b],[ē_c]) ≠ 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Survivor {
    pub serial: usize,
    pub ideal: String,
    pub assignment: RoleAssignment,
    pub nvars: usize,
    pub ngens: usize,
    pub massey_value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    /// Candidate ideals built from role patterns.
    pub examined: usize,
    /// Candidates whose degree-one products vanish and whose combinatorial
    /// Massey class is nonzero.
    pub fast_passes: usize,
    pub survivors: Vec<Survivor>,
    /// The candidate budget ran out before the pattern space was exhausted.
    pub partial: bool,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub nvars: usize,
    pub max_gens: usize,
    /// Maximum number of candidate ideals to examine.
    pub budget: usize,
    /// Role sets tried first: `[a, b, c, ab, bc, ca, ab#c, bc#a, ca#b]`.
    pub seed: Option<[u64; 9]>,
    /// Stop after this many survivors.
    pub max_survivors: usize,
}

/// The role sets of the polarized built-in example, over its nine variables
/// `x1, x2_1, x2_2, y1, y2_1, y2_2, z_1, z_2, z_3`.
pub fn paper_seed() -> [u64; 9] {
    let set = |vs: &[usize]| vs.iter().fold(0u64, |acc, v| acc | 1 << v);
    [
        set(&[0, 1, 2]),       // a
        set(&[3, 4, 5]),       // b
        set(&[6, 7, 8]),       // c
        set(&[0, 1, 3, 4]),    // ab
        set(&[4, 5, 6, 7]),    // bc
        set(&[1, 2, 6, 7]),    // ca
        set(&[0, 3, 6]),       // ab#c
        set(&[1, 2, 4, 5, 6]), // bc#a
        set(&[1, 2, 4, 5, 6]), // ca#b
    ]
}

/// Nonempty subsets of `x ∪ y` meeting both and containing neither.
fn between_sets(x: u64, y: u64) -> Vec<u64> {
    let full = x | y;
    let mut out = Vec::new();
    let mut s = full;
    while s != 0 {
        if s & x != 0 && s & y != 0 && !subset(x, s) && !subset(y, s) {
            out.push(s);
        }
        s = (s - 1) & full;
    }
    out.sort_by_key(|m| (m.count_ones(), *m));
    out
}

/// Moves `first` to the front when present.
fn prefer(mut v: Vec<u64>, first: Option<u64>) -> Vec<u64> {
    if let Some(f) = first {
        if let Some(p) = v.iter().position(|&x| x == f) {
            v.remove(p);
            v.insert(0, f);
        }
    }
    v
}

/// Blocks of at least two variables (a smaller block would be divisible by
/// its neighbours' connecting generators).
fn blocks(n: usize, avoid: u64) -> impl Iterator<Item = u64> {
    let full: u64 = (1u64 << n) - 1;
    (1..=full).filter(move |m| m.count_ones() >= 2 && m & avoid == 0)
}

struct Searcher<'a> {
    config: &'a SearchConfig,
    outcome: SearchOutcome,
}

impl Searcher<'_> {
    fn budget_left(&self) -> bool {
        self.outcome.examined < self.config.budget
            && self.outcome.survivors.len() < self.config.max_survivors
    }

    fn run(&mut self) -> Result<()> {
        let n = self.config.nvars;
        if n > 16 {
            return Err(Error::TooLarge {
                what: "search variables",
                count: n,
                limit: 16,
            });
        }
        let seed = self.config.seed.filter(|s| s.iter().all(|&m| m >> n == 0));
        if let Some(s) = seed {
            self.triple(s[0], s[1], s[2], Some(s))?;
        }
        for a in blocks(n, 0) {
            for b in blocks(n, a) {
                for c in blocks(n, a | b) {
                    if seed.is_some_and(|s| (s[0], s[1], s[2]) == (a, b, c)) {
                        continue;
                    }
                    self.triple(a, b, c, None)?;
                    if !self.budget_left() {
                        self.outcome.partial = self.outcome.examined >= self.config.budget;
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    fn triple(&mut self, a: u64, b: u64, c: u64, seed: Option<[u64; 9]>) -> Result<()> {
        let pick = |k: usize| seed.map(|s| s[k]);
        for ab in prefer(between_sets(a, b), pick(3)) {
            for bc in prefer(between_sets(b, c), pick(4)) {
                if !subset(b, ab | bc) {
                    continue;
                }
                for ca in prefer(between_sets(c, a), pick(5)) {
                    if !(subset(a, ab | ca) || subset(c, bc | ca)) {
                        continue;
                    }
                    let core = [a, ab, b, bc, c, ca];
                    if !antichain(&core) {
                        continue;
                    }
                    self.forced(core, [pick(6), pick(7), pick(8)])?;
                    if !self.budget_left() {
                        self.outcome.partial = self.outcome.examined >= self.config.budget;
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    /// Chooses `ab#c`, `bc#a`, `ca#b` (new sets or existing generators) and
    /// evaluates the resulting ideals.
    fn forced(&mut self, core: [u64; 6], seed: [Option<u64>; 3]) -> Result<()> {
        let [a, ab, b, bc, c, ca] = core;
        let options = |x: u64, y: u64, s: Option<u64>| prefer(between_sets(x, y), s);
        for abc in options(ab, c, seed[0]) {
            if core.contains(&abc) {
                continue;
            }
            let mut gens = core.to_vec();
            gens.push(abc);
            if !antichain(&gens) || gens.len() > self.config.max_gens {
                continue;
            }
            for bca in options(bc, a, seed[1]) {
                if core.contains(&bca) {
                    continue;
                }
                let mut g2 = gens.clone();
                if !g2.contains(&bca) {
                    g2.push(bca);
                }
                if g2.len() > self.config.max_gens || !antichain(&g2) {
                    continue;
                }
                for cab in options(ca, b, seed[2]) {
                    if core.contains(&cab) {
                        continue;
                    }
                    let mut g3 = g2.clone();
                    if !g3.contains(&cab) {
                        g3.push(cab);
                    }
                    if g3.len() > self.config.max_gens || !antichain(&g3) {
                        continue;
                    }
                    if !self.budget_left() {
                        return Ok(());
                    }
                    self.evaluate(&g3, [a, b, c, ab, bc, ca, abc, bca, cab])?;
                }
            }
        }
        Ok(())
    }

    fn evaluate(&mut self, sets: &[u64], roles: [u64; 9]) -> Result<()> {
        self.outcome.examined += 1;
        let n = self.config.nvars;
        let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let gens = sets.iter().map(|&m| Monomial::from_support(n, m)).collect();
        let ideal = MonomialIdeal::new(vars, gens)?;
        let index = |m: u64| sets.iter().position(|&s| s == m);
        let [a, b, c, ab, bc, ca, abc, bca, cab] = roles.map(index);
        let assignment = RoleAssignment {
            a,
            b,
            c,
            ab,
            bc,
            ca,
            ab_c: abc,
            bc_a: bca,
            ca_b: cab,
        };
        // degree-one products: every coprime pair needs a third generator
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i] & sets[j] == 0 && !pair_criterion(&ideal, i, j)? {
                    return Ok(());
                }
            }
        }
        let engine = HomologyEngine::taylor(&ideal, Rationals)?;
        let (a, b, c) = (a.expect("role a"), b.expect("role b"), c.expect("role c"));
        let m = ternary_massey_generators(&engine, a, b, c, false)?;
        if !m.is_nonzero(engine.field()) {
            return Ok(());
        }
        self.outcome.fast_passes += 1;
        // remaining products, in all degrees
        if !all_products_trivial(&engine)?.trivial {
            return Ok(());
        }
        let value = m.value.expect("nonzero value");
        let report = minimality_report(&ideal);
        self.outcome.survivors.push(Survivor {
            serial: self.outcome.examined,
            ideal: ideal.render(),
            assignment,
            nvars: report.nvars,
            ngens: report.ngens,
            massey_value: engine.describe(&value.representative)?,
        });
        Ok(())
    }
}

/// No set contains another.
fn antichain(sets: &[u64]) -> bool {
    sets.iter().enumerate().all(|(i, &x)| {
        sets.iter()
            .enumerate()
            .all(|(j, &y)| i == j || x == y || !subset(x, y))
    })
}

/// Enumerates squarefree role patterns in `config.nvars` variables and
/// verifies each candidate ideal.
pub fn search(config: &SearchConfig) -> Result<SearchOutcome> {
    let mut s = Searcher {
        config,
        outcome: SearchOutcome {
            examined: 0,
            fast_passes: 0,
            survivors: Vec::new(),
            partial: false,
        },
    };
    s.run()?;
    Ok(s.outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::paper_example;

    #[test]
    fn builtin_example_pattern() {
        let (pol, _) = paper_example().polarize();
        let r = pattern_check(&pol, &RoleAssignment::paper()).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert!(r.coincidence);
        assert!(pattern_check(&paper_example(), &RoleAssignment::paper()).is_err());
    }

    #[test]
    fn broken_disjointness() {
        let (pol, _) = paper_example().polarize();
        let mut roles = RoleAssignment::paper();
        roles.b = Some(1);
        assert!(!pattern_check(&pol, &roles).unwrap().disjoint);
    }

    #[test]
    fn role_parsing() {
        let labels: Vec<String> = ["g0", "g1"].map(String::from).to_vec();
        let r = RoleAssignment::parse("a=0, b=g1", &labels).unwrap();
        assert_eq!((r.a, r.b, r.c), (Some(0), Some(1), None));
        assert!(RoleAssignment::parse("q=0", &labels).is_err());
        assert!(RoleAssignment::parse("a=7", &labels).is_err());
    }

    #[test]
    fn seed_is_a_valid_pattern() {
        let s = paper_seed();
        assert!(between(s[3], s[0], s[1]));
        assert!(subset(s[1], s[3] | s[4]));
        assert!(subset(s[0], s[3] | s[5]));
    }

    #[test]
    fn minimality() {
        let r = minimality_report(&paper_example());
        assert!(r.meets_bounds && r.equality);
        let r = minimality_report(&MonomialIdeal::parse("vars: x, y\nx*y").unwrap());
        assert!(!r.meets_bounds);
    }

    #[test]
    fn between_sets_shape() {
        let v = between_sets(0b0011, 0b1100);
        assert!(v.contains(&0b0101));
        assert!(!v.contains(&0b0111));
        assert!(!v.contains(&0b0001));
    }
}
