//! Bi-Cayley graphs `BiCay(H, R, L, S)` over `H(p,t,s)` and the family
//! `Sigma(p,t,s,k) = BiCay(H, {}, {}, {1, a, b a^k})`.
//!
//! Vertex `h_i` (`h` in `H`, part `i` in `{0, 1}`) has index `i |H| + rank(h)`.
//! Edges are `{h_0, (x h)_0}` for `x` in `R`, `{h_1, (y h)_1}` for `y` in `L`
//! and `{h_0, (z h)_1}` for `z` in `S`.
//!
//! Permutations built here:
//!
//! * `R(g)`: `h_i -> (h g)_i`
//! * `sigma(alpha, g)`: `h_0 -> (h^alpha)_0`, `h_1 -> (g h^alpha)_1`
//! * `delta(alpha, x, y)`: `h_0 -> (x h^alpha)_1`, `h_1 -> (y h^alpha)_0`
//!
//! With `R = L = {}`, `sigma(alpha, g)` is an automorphism iff
//! `S^alpha = g^-1 S` (the set F) and `delta(alpha, x, y)` iff
//! `S^alpha = y^-1 S^-1 x` (the set I).

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graphalg::{is_edge_transitive, Graph, PermGroup, Permutation};
use crate::pgroup::{GroupAutomorphism, GroupElement, GroupError, GroupParams};
use crate::residue::{solve_k, ResidueError};

/// Largest `|H|` accepted for graph construction (vertex indices stay well
/// inside `u32`).
pub const MAX_GROUP_ORDER: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiCayleyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error("{0} is not closed under inverses")]
    NotSymmetric(&'static str),
    #[error("{0} contains the identity")]
    IdentityIn(&'static str),
    #[error("R, L and S do not generate the group")]
    NotGenerating,
    #[error("S must contain the identity")]
    IdentityNotInS,
    #[error("operation requires R = L = {{}}")]
    NonEmptyRL,
    #[error("expected a connection set of size {expected}, got {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("group order {0} exceeds the construction bound")]
    TooLarge(u64),
    #[error("no admissible k: k^2 - k + 1 has no unit root modulo {p}^{e}")]
    NoAdmissibleK { p: u64, e: u32 },
    #[error("k = {k} is not admissible (admissible: {admissible:?})")]
    InvalidK { k: u64, admissible: Vec<u64> },
    #[error("not edge-transitive candidate: {0}")]
    NotEdgeTransitiveCandidate(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("internal check failed: {0}")]
    Verification(String),
}

/// The connection sets `(R, L, S)`, each sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectionTriple {
    pub r: Vec<GroupElement>,
    pub l: Vec<GroupElement>,
    pub s: Vec<GroupElement>,
}

fn sorted_set(items: impl IntoIterator<Item = GroupElement>) -> Vec<GroupElement> {
    items.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

impl ConnectionTriple {
    pub fn new(
        r: impl IntoIterator<Item = GroupElement>,
        l: impl IntoIterator<Item = GroupElement>,
        s: impl IntoIterator<Item = GroupElement>,
    ) -> Self {
        ConnectionTriple { r: sorted_set(r), l: sorted_set(l), s: sorted_set(s) }
    }

    /// `R = L = {}`.
    pub fn cross(s: impl IntoIterator<Item = GroupElement>) -> Self {
        Self::new([], [], s)
    }

    /// Check everything except generation.
    pub fn validate(&self, params: &GroupParams) -> Result<(), BiCayleyError> {
        for g in self.r.iter().chain(&self.l).chain(&self.s) {
            params.check(g)?;
        }
        for (name, set) in [("R", &self.r), ("L", &self.l)] {
            if set.iter().any(GroupElement::is_identity) {
                return Err(BiCayleyError::IdentityIn(name));
            }
            if set.iter().any(|g| set.binary_search(&params.inverse(g)).is_err()) {
                return Err(BiCayleyError::NotSymmetric(name));
            }
        }
        Ok(())
    }

    pub fn generates(&self, params: &GroupParams) -> bool {
        let all: Vec<_> = self.r.iter().chain(&self.l).chain(&self.s).copied().collect();
        params.generates(&all)
    }
}

/// A bi-Cayley graph together with its labelling.
#[derive(Debug, Clone)]
pub struct BiCayleyGraph {
    params: GroupParams,
    triple: ConnectionTriple,
    k: Option<u64>,
    elements: Vec<GroupElement>,
    graph: Graph,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphHeader {
    pub p: u64,
    pub t: u32,
    pub s: u32,
    pub k: Option<u64>,
    pub vertices: usize,
    pub edges: usize,
    pub connection_set: Vec<String>,
    pub labeling: &'static str,
}

pub const LABELING: &str = "vertex h_i has index i*|H| + rank(h), rank(a^x b^y c^z) = x*p^(s+1) + y*p + z";

impl BiCayleyGraph {
    /// Build `BiCay(H, R, L, S)`; the triple must generate `H`.
    pub fn build(params: GroupParams, triple: ConnectionTriple) -> Result<Self, BiCayleyError> {
        triple.validate(&params)?;
        if !triple.generates(&params) {
            return Err(BiCayleyError::NotGenerating);
        }
        Self::build_unchecked_generation(params, triple)
    }

    /// Like [`build`](Self::build) but allows triples that do not generate
    /// `H` (the result is then disconnected).
    pub fn build_unchecked_generation(params: GroupParams, triple: ConnectionTriple) -> Result<Self, BiCayleyError> {
        triple.validate(&params)?;
        if params.order() > MAX_GROUP_ORDER {
            return Err(BiCayleyError::TooLarge(params.order()));
        }
        let elements: Vec<GroupElement> = params.elements().collect();
        let n = elements.len();
        let idx = |h: &GroupElement| params.rank(h) as usize;
        let mut edges = Vec::with_capacity(n * (triple.r.len() + triple.l.len() + 2 * triple.s.len()) / 2);
        for h in &elements {
            let i = idx(h);
            for x in &triple.r {
                edges.push((i, idx(&params.multiply(x, h))));
            }
            for y in &triple.l {
                edges.push((n + i, n + idx(&params.multiply(y, h))));
            }
            for z in &triple.s {
                edges.push((i, n + idx(&params.multiply(z, h))));
            }
        }
        let graph = Graph::from_edges(2 * n, &edges).map_err(|e| BiCayleyError::Verification(e.to_string()))?;
        Ok(BiCayleyGraph { params, triple, k: None, elements, graph })
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn triple(&self) -> &ConnectionTriple {
        &self.triple
    }

    /// The `k` of `Sigma(p,t,s,k)`, when built by [`build_sigma`].
    pub fn k(&self) -> Option<u64> {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group_order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self, h: &GroupElement, part: u8) -> usize {
        part as usize * self.elements.len() + self.params.rank(h) as usize
    }

    pub fn vertex(&self, index: usize) -> (GroupElement, u8) {
        let n = self.elements.len();
        (self.elements[index % n], (index / n) as u8)
    }

    pub fn has_empty_rl(&self) -> bool {
        self.triple.r.is_empty() && self.triple.l.is_empty()
    }

    pub fn header(&self) -> GraphHeader {
        GraphHeader {
            p: self.params.p(),
            t: self.params.t(),
            s: self.params.s(),
            k: self.k,
            vertices: self.graph.n(),
            edges: self.graph.m(),
            connection_set: self.triple.s.iter().map(ToString::to_string).collect(),
            labeling: LABELING,
        }
    }

    /// Permutation from a map on (element, part) pairs.
    fn vertex_map(&self, f: impl Fn(&GroupElement, u8) -> (GroupElement, u8) + Sync) -> Permutation {
        let images: Vec<usize> = (0..self.graph.n())
            .into_par_iter()
            .map(|i| {
                let (h, part) = self.vertex(i);
                let (g, q) = f(&h, part);
                self.index(&g, q)
            })
            .collect();
        Permutation::from_images(images).expect("vertex map is a bijection")
    }

    /// `R(g): h_i -> (h g)_i`.
    pub fn right_translation(&self, g: &GroupElement) -> Permutation {
        self.vertex_map(|h, i| (self.params.multiply(h, g), i))
    }

    /// `h_0 -> (h^alpha)_0`, `h_1 -> (g h^alpha)_1`.
    pub fn sigma_perm(&self, alpha: &GroupAutomorphism, g: &GroupElement) -> Permutation {
        let table = alpha.table();
        self.perm_from_parts(|i| table[i], |i| self.params.multiply(g, &table[i]), false)
    }

    /// `h_0 -> (x h^alpha)_1`, `h_1 -> (y h^alpha)_0`.
    pub fn delta_perm(&self, alpha: &GroupAutomorphism, x: &GroupElement, y: &GroupElement) -> Permutation {
        let table = alpha.table();
        self.perm_from_parts(|i| self.params.multiply(x, &table[i]), |i| self.params.multiply(y, &table[i]), true)
    }

    /// Vertex `h_0` goes to part-0 image of `rank(h)`, `h_1` to the part-1
    /// image; `swap` sends part 0 to part 1 and back.
    fn perm_from_parts(
        &self,
        part0: impl Fn(usize) -> GroupElement,
        part1: impl Fn(usize) -> GroupElement,
        swap: bool,
    ) -> Permutation {
        let n = self.elements.len();
        let (off0, off1) = if swap { (n, 0) } else { (0, n) };
        let mut images = Vec::with_capacity(2 * n);
        images.extend((0..n).map(|i| off0 + self.params.rank(&part0(i)) as usize));
        images.extend((0..n).map(|i| off1 + self.params.rank(&part1(i)) as usize));
        Permutation::from_images(images).expect("vertex map is a bijection")
    }

    /// The translation group `R(H)`, generated by `R(a)` and `R(b)`.
    pub fn translation_group(&self) -> PermGroup {
        let gens = vec![self.right_translation(&self.params.a()), self.right_translation(&self.params.b())];
        PermGroup::new(self.graph.n(), gens).expect("degree matches")
    }

    fn require_cross(&self) -> Result<(), BiCayleyError> {
        if !self.has_empty_rl() {
            return Err(BiCayleyError::NonEmptyRL);
        }
        if !self.triple.s.contains(&self.params.identity()) {
            return Err(BiCayleyError::IdentityNotInS);
        }
        Ok(())
    }

    /// All `(alpha, g)` with `S^alpha = g^-1 S`, sorted by
    /// `(rank g, rank a^alpha, rank b^alpha)`.
    pub fn compute_f(&self) -> Result<Vec<FEntry>, BiCayleyError> {
        self.require_cross()?;
        let h = &self.params;
        let words = GeneratorWords::new(h, &self.triple.s);
        let mut found: Vec<FEntry> = self
            .triple
            .s
            .par_iter()
            .flat_map_iter(|g| {
                let g_inv = h.inverse(g);
                let target = sorted_set(self.triple.s.iter().map(|s| h.multiply(&g_inv, s)));
                words
                    .solve(h, &self.triple.s, &target)
                    .into_iter()
                    .map(move |alpha| FEntry { alpha, g: *g })
            })
            .collect();
        found.sort_by_key(|e| (h.rank(&e.g), h.rank(&e.alpha.image_a()), h.rank(&e.alpha.image_b())));
        found.dedup_by(|a, b| a.g == b.g && a.alpha == b.alpha);
        if let Some(e) = found.par_iter().find_first(|e| !self.graph.is_automorphism(&self.sigma_perm(&e.alpha, &e.g))) {
            return Err(BiCayleyError::Verification(format!("sigma for g = {} is not an automorphism", e.g)));
        }
        Ok(found)
    }

    /// All `(alpha, x, y)` with `S^alpha = y^-1 S^-1 x`, sorted by
    /// `(rank x, rank y, rank a^alpha, rank b^alpha)`.
    pub fn compute_i(&self) -> Result<Vec<IEntry>, BiCayleyError> {
        self.require_cross()?;
        let h = &self.params;
        let words = GeneratorWords::new(h, &self.triple.s);
        let s_inv: Vec<GroupElement> = self.triple.s.iter().map(|s| h.inverse(s)).collect();
        // 1 in S^alpha forces x = w y for some w in S.
        let mut found: Vec<IEntry> = self
            .elements
            .par_iter()
            .flat_map_iter(|y| {
                let y_inv = h.inverse(y);
                let words = &words;
                let s_inv = &s_inv;
                self.triple.s.iter().flat_map(move |w| {
                    let x = h.multiply(w, y);
                    let target = sorted_set(s_inv.iter().map(|si| h.product([&y_inv, si, &x])));
                    words
                        .solve(h, &self.triple.s, &target)
                        .into_iter()
                        .map(move |alpha| IEntry { alpha, x, y: *y })
                })
            })
            .collect();
        found.sort_by_key(|e| (h.rank(&e.x), h.rank(&e.y), h.rank(&e.alpha.image_a()), h.rank(&e.alpha.image_b())));
        found.dedup_by(|a, b| a.x == b.x && a.y == b.y && a.alpha == b.alpha);
        if let Some(e) =
            found.par_iter().find_first(|e| !self.graph.is_automorphism(&self.delta_perm(&e.alpha, &e.x, &e.y)))
        {
            return Err(BiCayleyError::Verification(format!("delta for ({}, {}) is not an automorphism", e.x, e.y)));
        }
        Ok(found)
    }

    /// `N_Aut(R(H))`, generated by `R(a)`, `R(b)`, every `sigma` from F and
    /// the first `delta` from I (if any).
    pub fn normalizer_of_rh(&self) -> Result<PermGroup, BiCayleyError> {
        let f = self.compute_f()?;
        let i = self.compute_i()?;
        let mut gens = vec![self.right_translation(&self.params.a()), self.right_translation(&self.params.b())];
        gens.extend(f.iter().filter(|e| !(e.alpha.is_identity() && e.g.is_identity())).map(|e| self.sigma_perm(&e.alpha, &e.g)));
        if let Some(e) = i.first() {
            gens.push(self.delta_perm(&e.alpha, &e.x, &e.y));
        }
        Ok(PermGroup::new(self.graph.n(), gens).expect("degree matches"))
    }

    pub fn is_normal_edge_transitive(&self) -> Result<bool, BiCayleyError> {
        Ok(is_edge_transitive(&self.graph, &self.normalizer_of_rh()?))
    }
}

/// A member `(alpha, g)` of F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FEntry {
    pub alpha: GroupAutomorphism,
    pub g: GroupElement,
}

/// A member `(alpha, x, y)` of I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IEntry {
    pub alpha: GroupAutomorphism,
    pub x: GroupElement,
    pub y: GroupElement,
}

/// Words for `a` and `b` over the non-identity elements of `S` (and their
/// inverses), used to recover an automorphism from the images of `S`.
struct GeneratorWords {
    /// Letters are `(index into S, exponent +-1)`.
    a: Vec<(usize, i64)>,
    b: Vec<(usize, i64)>,
}

impl GeneratorWords {
    /// `S` must generate `H`.
    fn new(h: &GroupParams, s: &[GroupElement]) -> Self {
        let letters: Vec<(usize, i64, GroupElement)> = s
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_identity())
            .flat_map(|(i, g)| [(i, 1, *g), (i, -1, h.inverse(g))])
            .collect();
        // BFS over the Cayley graph: parent[g] = (predecessor, letter).
        let mut parent: HashMap<GroupElement, (GroupElement, usize)> = HashMap::new();
        let start = h.identity();
        let mut queue = VecDeque::from([start]);
        parent.insert(start, (start, usize::MAX));
        let (a, b) = (h.a(), h.b());
        while let Some(g) = queue.pop_front() {
            if parent.contains_key(&a) && parent.contains_key(&b) {
                break;
            }
            for (li, (_, _, x)) in letters.iter().enumerate() {
                let next = h.multiply(&g, x);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert((g, li));
                    queue.push_back(next);
                }
            }
        }
        let word = |target: GroupElement| {
            let mut out = Vec::new();
            let mut g = target;
            while g != start {
                let (prev, li) = parent[&g];
                out.push((letters[li].0, letters[li].1));
                g = prev;
            }
            out.reverse();
            out
        };
        GeneratorWords { a: word(a), b: word(b) }
    }

    fn eval(h: &GroupParams, word: &[(usize, i64)], images: &[GroupElement]) -> GroupElement {
        word.iter().fold(h.identity(), |acc, &(i, e)| h.multiply(&acc, &h.power(&images[i], e)))
    }

    /// Automorphisms mapping the set `s` onto `target` with `1 -> 1`.
    fn solve(&self, h: &GroupParams, s: &[GroupElement], target: &[GroupElement]) -> Vec<GroupAutomorphism> {
        if target.len() != s.len() || !target.contains(&h.identity()) {
            return Vec::new();
        }
        let sources: Vec<usize> = (0..s.len()).filter(|&i| !s[i].is_identity()).collect();
        let dest: Vec<GroupElement> = target.iter().filter(|g| !g.is_identity()).copied().collect();
        let mut out = Vec::new();
        for perm in permutations(dest.len()) {
            let mut images = vec![h.identity(); s.len()];
            for (j, &src) in sources.iter().enumerate() {
                images[src] = dest[perm[j]];
            }
            let u = Self::eval(h, &self.a, &images);
            let v = Self::eval(h, &self.b, &images);
            let Ok(alpha) = GroupAutomorphism::from_images(*h, u, v) else { continue };
            if sorted_set(s.iter().map(|g| alpha.apply(g))) == target {
                out.push(alpha);
            }
        }
        out
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Admissible values of `k`: `{0}` when `t = s`, otherwise the unit roots of
/// `k^2 - k + 1` modulo `p^(t-s)`.
pub fn admissible_k(params: &GroupParams) -> Result<Vec<u64>, BiCayleyError> {
    if params.t() == params.s() {
        return Ok(vec![0]);
    }
    Ok(solve_k(params.p(), params.t() - params.s())?)
}

/// The connection set `{1, a, b a^k}`.
pub fn sigma_connection_set(params: &GroupParams, k: u64) -> Vec<GroupElement> {
    let bak = params.multiply(&params.b(), &params.power(&params.a(), k as i64));
    sorted_set([params.identity(), params.a(), bak])
}

/// `Sigma(p,t,s,k)`; `k` defaults to the smallest admissible root.
pub fn build_sigma(p: u64, t: u32, s: u32, k: Option<u64>) -> Result<BiCayleyGraph, BiCayleyError> {
    let params = GroupParams::new(p, t, s)?;
    let admissible = admissible_k(&params)?;
    let k = match k {
        None => *admissible.first().ok_or(BiCayleyError::NoAdmissibleK { p, e: t - s })?,
        Some(k) if admissible.contains(&k) => k,
        Some(k) => {
            if admissible.is_empty() {
                return Err(BiCayleyError::NoAdmissibleK { p, e: t - s });
            }
            return Err(BiCayleyError::InvalidK { k, admissible });
        }
    };
    if params.order() > MAX_GROUP_ORDER {
        return Err(BiCayleyError::TooLarge(params.order()));
    }
    let mut graph = BiCayleyGraph::build(params, ConnectionTriple::cross(sigma_connection_set(&params, k)))?;
    graph.k = Some(k);
    Ok(graph)
}

/// `alpha: a -> a^-1 b a^k, b -> a^-1 (a^-1 b a^k)^-k`; `sigma(alpha, a)` rotates
/// the neighbours of `1_0`.
pub fn rotation_witness(params: &GroupParams, k: u64) -> Result<GroupAutomorphism, BiCayleyError> {
    let h = params;
    let a_inv = h.inverse(&h.a());
    let u = h.product([&a_inv, &h.b(), &h.power(&h.a(), k as i64)]);
    let v = h.multiply(&a_inv, &h.power(&u, -(k as i64)));
    Ok(GroupAutomorphism::from_images(*h, u, v)?)
}

/// `beta: a -> a^-1, b -> a^-k b^-1 a^k`; `delta(beta, 1, 1)` swaps the parts.
pub fn reflection_witness(params: &GroupParams, k: u64) -> Result<GroupAutomorphism, BiCayleyError> {
    let h = params;
    let ak = h.power(&h.a(), k as i64);
    let v = h.product([&h.inverse(&ak), &h.inverse(&h.b()), &ak]);
    Ok(GroupAutomorphism::from_images(*h, h.inverse(&h.a()), v)?)
}

/// Result of [`canonicalize_connection_set`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `S` was replaced by `shift^-1 S` to bring in the identity.
    pub shift: GroupElement,
    /// `x` and `y` with `shift^-1 S = {1, x, y}`.
    pub x: GroupElement,
    pub y: GroupElement,
    /// `a -> x`, `b -> y x^-k`.
    pub gamma: GroupAutomorphism,
    pub k: u64,
}

impl CanonicalForm {
    /// `S^(gamma^-1) = {1, a, b a^k}`.
    pub fn canonical_set(&self, params: &GroupParams) -> Vec<GroupElement> {
        sigma_connection_set(params, self.k)
    }
}

/// Bring a three-element connection set to the form `{1, a, b a^k}` by an
/// automorphism, following the order conditions `o(x) = o(y) = o(x^-1 y) = p^t`.
pub fn canonicalize_connection_set(params: &GroupParams, set: &[GroupElement]) -> Result<CanonicalForm, BiCayleyError> {
    let h = params;
    for g in set {
        h.check(g)?;
    }
    let set = sorted_set(set.iter().copied());
    if set.len() != 3 {
        return Err(BiCayleyError::WrongSize { expected: 3, found: set.len() });
    }
    let shift = if set.contains(&h.identity()) { h.identity() } else { set[0] };
    let shift_inv = h.inverse(&shift);
    let normalized = sorted_set(set.iter().map(|g| h.multiply(&shift_inv, g)));
    let (x, y) = (normalized[1], normalized[2]);
    if !h.is_generating_pair(&x, &y) {
        return Err(BiCayleyError::NotGenerating);
    }
    let pt = h.a_order();
    for (name, g) in [("x", x), ("y", y), ("x^-1 y", h.multiply(&h.inverse(&x), &y))] {
        let o = h.element_order(&g);
        if o != pt {
            return Err(BiCayleyError::NotEdgeTransitiveCandidate(format!("o({name}) = {o}, expected {pt}")));
        }
    }
    let ps = h.b_order() as i64;
    let k = if h.t() == h.s() {
        0
    } else {
        let m = pt / h.b_order();
        let xp = h.power(&x, ps);
        let yp = h.power(&y, ps);
        (0..m)
            .find(|&k| h.power(&xp, k as i64) == yp)
            .ok_or_else(|| BiCayleyError::NotEdgeTransitiveCandidate("y^(p^s) is not a power of x^(p^s)".into()))?
    };
    let v = h.multiply(&y, &h.power(&x, -(k as i64)));
    let gamma = GroupAutomorphism::from_images(*h, x, v)?;
    Ok(CanonicalForm { shift, x, y, gamma, k })
}

/// The explicit isomorphism `BiCay(H, {}, {}, S) -> BiCay(H, {}, {}, {1, a, b a^k})`
/// given by a canonical form: `h_0 -> (h^(gamma^-1))_0`,
/// `h_1 -> ((shift^-1 h)^(gamma^-1))_1`. Verified edge by edge.
pub fn canonical_isomorphism(
    source: &BiCayleyGraph,
    target: &BiCayleyGraph,
    form: &CanonicalForm,
) -> Result<Permutation, BiCayleyError> {
    let h = *source.params();
    let gamma_inv = form.gamma.inverse();
    let shift_inv = h.inverse(&form.shift);
    let perm = source.vertex_map(|g, i| match i {
        0 => (gamma_inv.apply(g), 0),
        _ => (gamma_inv.apply(&h.multiply(&shift_inv, g)), 1),
    });
    if !source.graph().maps_onto(&perm, target.graph()) {
        return Err(BiCayleyError::Verification("canonical map is not an isomorphism".into()));
    }
    Ok(perm)
}

/// The isomorphism `Sigma(p,t,s,k1) -> Sigma(p,t,s,k2)` induced by
/// `beta: a -> b a^k2, b -> a (b a^k2)^-k1`, verified edge by edge.
pub fn sigma_k_isomorphism(p: u64, t: u32, s: u32, k1: u64, k2: u64) -> Result<SigmaIsomorphism, BiCayleyError> {
    let g1 = build_sigma(p, t, s, Some(k1))?;
    let g2 = build_sigma(p, t, s, Some(k2))?;
    let h = *g1.params();
    let beta = if k1 == k2 {
        GroupAutomorphism::identity(h)
    } else {
        let u = h.multiply(&h.b(), &h.power(&h.a(), k2 as i64));
        let v = h.multiply(&h.a(), &h.power(&u, -(k1 as i64)));
        GroupAutomorphism::from_images(h, u, v)?
    };
    let mapped = sorted_set(g1.triple().s.iter().map(|g| beta.apply(g)));
    if mapped != g2.triple().s {
        return Err(BiCayleyError::Verification("beta does not map T_k1 onto T_k2".into()));
    }
    let perm = g1.vertex_map(|g, i| (beta.apply(g), i));
    if !g1.graph().maps_onto(&perm, g2.graph()) {
        return Err(BiCayleyError::Verification("beta does not induce an isomorphism".into()));
    }
    Ok(SigmaIsomorphism { source: g1, target: g2, beta, perm })
}

#[derive(Debug, Clone)]
pub struct SigmaIsomorphism {
    pub source: BiCayleyGraph,
    pub target: BiCayleyGraph,
    pub beta: GroupAutomorphism,
    pub perm: Permutation,
}

/// `Cay(H x| <alpha>, {(s^alpha, 1) : s in S})` with the isomorphism
/// `h_0 -> (h, 0)`, `h_1 -> (h^alpha, 1)` from the bi-Cayley graph.
///
/// Elements `(h, e)` multiply as `(h1, e1)(h2, e2) = (h1 h2^(alpha^e1), e1 + e2)`
/// and are indexed `e |H| + rank(h)`; edges are `{g, x g}`.
#[derive(Debug, Clone)]
pub struct CayleyRealization {
    pub graph: Graph,
    pub isomorphism: Permutation,
}

pub fn cayley_realization(source: &BiCayleyGraph, alpha: &GroupAutomorphism) -> Result<CayleyRealization, BiCayleyError> {
    source.require_cross()?;
    let h = *source.params();
    if !alpha.compose(alpha).is_identity() {
        return Err(BiCayleyError::InvalidWitness("alpha is not an involution".into()));
    }
    let s = &source.triple().s;
    let s_alpha = sorted_set(s.iter().map(|g| alpha.apply(g)));
    if s_alpha != sorted_set(s.iter().map(|g| h.inverse(g))) {
        return Err(BiCayleyError::InvalidWitness("S^alpha != S^-1, so (alpha, 1, 1) is not in I".into()));
    }
    let n = source.group_order();
    let index = |g: &GroupElement, e: usize| e * n + h.rank(g) as usize;
    let mut edges = Vec::with_capacity(3 * n);
    for (e, elems) in [(0usize, &source.elements), (1, &source.elements)] {
        for g in elems.iter() {
            for x in &s_alpha {
                // (x, 1)(g, e) = (x g^alpha, 1 + e)
                let prod = h.multiply(x, &alpha.apply(g));
                edges.push((index(g, e), index(&prod, 1 - e)));
            }
        }
    }
    let graph = Graph::from_edges(2 * n, &edges).map_err(|e| BiCayleyError::Verification(e.to_string()))?;
    let isomorphism = source.vertex_map(|g, i| match i {
        0 => (*g, 0),
        _ => (alpha.apply(g), 1),
    });
    if !source.graph().maps_onto(&isomorphism, &graph) {
        return Err(BiCayleyError::Verification("Cayley realization is not isomorphic".into()));
    }
    Ok(CayleyRealization { graph, isomorphism })
}
