//! Permutations acting on the right and permutation groups backed by a
//! deterministic Schreier-Sims stabilizer chain.
//!
//! Products read left to right: `p.then(q)` applies `p` first.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use super::GraphError;

const NONE: u32 = u32::MAX;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GraphError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::NotAPermutation);
            }
        }
        Ok(Permutation { images: images.into_iter().map(|v| v as u32).collect() })
    }

    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&v| v as usize)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&v| other.images[v as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &v)| *i as u32 != v).map(|(i, _)| i)
    }

    pub fn fixes(&self, v: usize) -> bool {
        self.images[v] as usize == v
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.apply(start);
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            out.push(cycle);
        }
        out
    }

    /// `other^-1 self other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }
}

/// One level of a stabilizer chain: the orbit of the base point under the
/// level's strong generators, with inverse coset representatives.
#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    gens_inv: Vec<Permutation>,
    orbit: Vec<u32>,
    index_of: Vec<u32>,
    /// `reps_inv[j]` is the inverse of a group element mapping `base` to `orbit[j]`.
    reps_inv: Vec<Permutation>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut index_of = vec![NONE; n];
        index_of[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            gens_inv: Vec::new(),
            orbit: vec![base as u32],
            index_of,
            reps_inv: vec![Permutation::identity(n)],
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.gens_inv.push(g.inverse());
        self.gens.push(g);
        let mut j = 0;
        while j < self.orbit.len() {
            let beta = self.orbit[j] as usize;
            for k in 0..self.gens.len() {
                let gamma = self.gens[k].apply(beta);
                if self.index_of[gamma] == NONE {
                    // u_gamma = u_beta s, so u_gamma^-1 = s^-1 u_beta^-1
                    let rep = self.gens_inv[k].then(&self.reps_inv[j]);
                    self.index_of[gamma] = self.orbit.len() as u32;
                    self.orbit.push(gamma as u32);
                    self.reps_inv.push(rep);
                }
            }
            j += 1;
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Deterministic Schreier-Sims. `base_prefix` fixes the first base points.
    pub fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> StabChain {
        let gens: Vec<Permutation> = {
            let mut seen = HashSet::new();
            gens.iter().filter(|g| !g.is_identity() && seen.insert((*g).clone())).cloned().collect()
        };
        let mut chain = StabChain { degree, levels: Vec::new() };
        for &b in base_prefix {
            if chain.levels.iter().all(|l| l.base != b) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in &gens {
            if chain.levels.iter().all(|l| g.fixes(l.base)) {
                let b = g.first_moved_point().expect("non-identity");
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in &gens {
            for i in 0..chain.levels.len() {
                chain.levels[i].add_generator(g.clone());
                if !g.fixes(chain.levels[i].base) {
                    break;
                }
            }
        }
        let mut checked: Vec<HashSet<(u32, u32)>> = vec![HashSet::new(); chain.levels.len()];
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            match chain.schreier_pass(li, &mut checked) {
                None => i -= 1,
                Some((residue, depth)) => {
                    if depth == chain.levels.len() {
                        let b = residue.first_moved_point().expect("non-identity residue");
                        chain.levels.push(Level::new(degree, b));
                        checked.push(HashSet::new());
                    }
                    for l in li + 1..=depth {
                        chain.levels[l].add_generator(residue.clone());
                    }
                    i = depth as isize;
                }
            }
        }
        chain
    }

    /// Sift every unchecked Schreier generator of level `li`; return the first
    /// non-trivial residue and the level where sifting stopped.
    fn schreier_pass(&self, li: usize, checked: &mut [HashSet<(u32, u32)>]) -> Option<(Permutation, usize)> {
        let level = &self.levels[li];
        for j in 0..level.orbit.len() {
            let mut u_beta: Option<Permutation> = None;
            let beta = level.orbit[j] as usize;
            for (k, s) in level.gens.iter().enumerate() {
                if !checked[li].insert((j as u32, k as u32)) {
                    continue;
                }
                let u = u_beta.get_or_insert_with(|| level.reps_inv[j].inverse());
                let gamma = s.apply(beta);
                let rep_inv = &level.reps_inv[level.index_of[gamma] as usize];
                let h = Permutation::from_raw(
                    u.images.iter().map(|&x| rep_inv.images[s.images[x as usize] as usize]).collect(),
                );
                if h.is_identity() {
                    continue;
                }
                let (residue, depth) = self.sift(h, li + 1);
                if !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
        }
        None
    }

    fn sift(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            let idx = level.index_of[beta];
            if idx == NONE {
                return (h, l);
            }
            h = h.then(&level.reps_inv[idx as usize]);
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of transversal sizes, `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }

    /// Check the chain invariants: each representative moves the base point
    /// to its recorded orbit point, and each level's generators fix all
    /// earlier base points.
    pub fn verify(&self) -> bool {
        self.levels.iter().enumerate().all(|(i, level)| {
            let earlier: Vec<usize> = self.levels[..i].iter().map(|l| l.base).collect();
            level.gens.iter().all(|g| earlier.iter().all(|&b| g.fixes(b)))
                && level.reps_inv.iter().zip(&level.orbit).all(|(r, &pt)| r.apply(pt as usize) == level.base)
                && level.orbit.iter().enumerate().all(|(j, &pt)| level.index_of[pt as usize] == j as u32)
        })
    }

    /// Every element, as products of coset representatives.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<Permutation> = level.reps_inv.iter().map(Permutation::inverse).collect();
            out = out.iter().flat_map(|g| reps.iter().map(move |u| g.then(u))).collect();
        }
        out
    }
}

/// A permutation group given by generators; the stabilizer chain is built on
/// first use.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_prefix: Vec<usize>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            base_prefix: self.base_prefix.clone(),
            chain: self.chain.clone(),
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GraphError> {
        Self::with_base(degree, generators, Vec::new())
    }

    /// Like [`new`](Self::new) with the leading base points fixed.
    pub fn with_base(degree: usize, generators: Vec<Permutation>, base_prefix: Vec<usize>) -> Result<Self, GraphError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GraphError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        if let Some(&b) = base_prefix.iter().find(|&&b| b >= degree) {
            return Err(GraphError::VertexOutOfRange { vertex: b, n: degree });
        }
        Ok(PermGroup { degree, generators, base_prefix, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), base_prefix: Vec::new(), chain: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.generators, &self.base_prefix))
    }

    pub fn order(&self) -> u128 {
        self.chain().order().expect("group order exceeds 128 bits")
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn orbit(&self, seed: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[seed] = true;
        let mut orbit = vec![seed];
        let mut queue = VecDeque::from([seed]);
        while let Some(v) = queue.pop_front() {
            for g in &self.generators {
                let w = g.apply(v);
                if !seen[w] {
                    seen[w] = true;
                    orbit.push(w);
                    queue.push_back(w);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbits ordered by their smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for v in 0..self.degree {
            if !seen[v] {
                let orbit = self.orbit(v);
                for &w in &orbit {
                    seen[w] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Only the identity fixes a point, i.e. every orbit has size `|G|`.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits().iter().all(|o| o.len() as u128 == order)
    }

    /// Whether `self` is a normal subgroup of `group`.
    pub fn is_normal_in(&self, group: &PermGroup) -> Result<bool, GraphError> {
        if self.degree != group.degree {
            return Err(GraphError::DegreeMismatch { expected: group.degree, found: self.degree });
        }
        if !self.generators.iter().all(|n| group.contains(n)) {
            return Err(GraphError::NotASubgroup);
        }
        Ok(group
            .generators
            .iter()
            .all(|g| self.generators.iter().all(|n| self.contains(&n.conjugate_by(g)))))
    }

    /// All elements; only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        self.chain().elements()
    }

    /// Permutations of `self` that normalize `sub`, found by enumerating
    /// every element.
    pub fn normalizer_by_enumeration(&self, sub: &PermGroup) -> PermGroup {
        let members: Vec<Permutation> = self
            .elements()
            .into_iter()
            .filter(|g| sub.generators.iter().all(|n| sub.contains(&n.conjugate_by(g))))
            .collect();
        PermGroup::new(self.degree, members).expect("same degree")
    }
}
