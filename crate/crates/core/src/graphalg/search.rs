//! Automorphism groups and isomorphism by individualization/refinement.
//!
//! The search descends a "first path" of equitable partitions, individualizing
//! the smallest vertex of the first smallest non-singleton cell at each level.
//! Working from the deepest level up, every other vertex of the target cell is
//! tried as a replacement (skipping those already in a known orbit) and the
//! subtree below it is searched for a leaf that maps onto the first leaf.
//! Each hit is an automorphism fixing the earlier base points, so the group
//! order is the product of the base-point orbit sizes.

use std::collections::VecDeque;

use super::graph::Graph;
use super::perm::{PermGroup, Permutation};

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(FNV_PRIME)
}

/// Ordered partition of `0..n` with contiguous cells.
#[derive(Clone, Debug)]
struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    /// Start index of the cell holding each vertex.
    cell_of: Vec<u32>,
    /// Indexed by cell start: one past the cell's last index.
    cell_end: Vec<u32>,
    cells: usize,
}

impl Partition {
    /// Cells by ascending degree.
    fn by_degree(g: &Graph) -> Partition {
        let n = g.n();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&v| (g.degree(v as usize), v));
        let mut pos = vec![0u32; n];
        let mut cell_of = vec![0u32; n];
        let mut cell_end = vec![0u32; n];
        let mut cells = 0;
        let mut start = 0;
        for i in 0..n {
            let v = elems[i] as usize;
            pos[v] = i as u32;
            if i > start && g.degree(v) != g.degree(elems[start] as usize) {
                cell_end[start] = i as u32;
                cells += 1;
                start = i;
            }
            cell_of[v] = start as u32;
        }
        if n > 0 {
            cell_end[start] = n as u32;
            cells += 1;
        }
        Partition { elems, pos, cell_of, cell_end, cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut i = 0;
        std::iter::from_fn(move || {
            (i < self.elems.len()).then(|| {
                let s = i;
                i = self.cell_end[s] as usize;
                s
            })
        })
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for s in self.cell_starts() {
            let size = self.cell_end[s] as usize - s;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((s, size));
                if size == 2 {
                    break;
                }
            }
        }
        best.map(|(s, _)| s)
    }

    fn cell(&self, start: usize) -> &[u32] {
        &self.elems[start..self.cell_end[start] as usize]
    }

    fn swap(&mut self, i: usize, j: usize) {
        let (a, b) = (self.elems[i], self.elems[j]);
        self.elems[i] = b;
        self.elems[j] = a;
        self.pos[a as usize] = j as u32;
        self.pos[b as usize] = i as u32;
    }

    /// Split `v` off as a singleton at the end of its cell; returns the
    /// singleton's start index.
    fn individualize(&mut self, v: usize) -> usize {
        let c = self.cell_of[v] as usize;
        let e = self.cell_end[c] as usize;
        debug_assert!(e - c > 1);
        self.swap(self.pos[v] as usize, e - 1);
        self.cell_end[c] = (e - 1) as u32;
        self.cell_end[e - 1] = e as u32;
        self.cell_of[v] = (e - 1) as u32;
        self.cells += 1;
        e - 1
    }
}

/// Scratch space for refinement, reused across calls.
struct Refiner<'g> {
    g: &'g Graph,
    count: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
    queue: VecDeque<u32>,
    splitter: Vec<u32>,
}

impl<'g> Refiner<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Refiner {
            g,
            count: vec![0; n],
            touched: Vec::new(),
            in_queue: vec![false; n],
            queue: VecDeque::new(),
            splitter: Vec::new(),
        }
    }

    /// Refine to the coarsest equitable partition finer than `p`, starting
    /// from the given splitter cells. Returns a label-invariant trace hash.
    fn refine(&mut self, p: &mut Partition, seeds: &[usize]) -> u64 {
        let mut trace = FNV_OFFSET;
        for &s in seeds {
            if !self.in_queue[s] {
                self.in_queue[s] = true;
                self.queue.push_back(s as u32);
            }
        }
        while let Some(sc) = self.queue.pop_front() {
            let sc = sc as usize;
            self.in_queue[sc] = false;
            if p.is_discrete() {
                continue;
            }
            self.splitter.clear();
            self.splitter.extend_from_slice(p.cell(sc));
            trace = mix(trace, sc as u64);
            for &v in &self.splitter {
                for &u in self.g.neighbors(v as usize) {
                    if self.count[u] == 0 {
                        self.touched.push(u as u32);
                    }
                    self.count[u] += 1;
                }
            }
            let mut touched = std::mem::take(&mut self.touched);
            touched.sort_unstable_by_key(|&u| (p.cell_of[u as usize], self.count[u as usize], p.pos[u as usize]));
            let mut i = 0;
            while i < touched.len() {
                let c = p.cell_of[touched[i] as usize] as usize;
                let mut j = i;
                while j < touched.len() && p.cell_of[touched[j] as usize] as usize == c {
                    j += 1;
                }
                trace = self.split_cell(p, c, &touched[i..j], trace);
                i = j;
            }
            for &u in &touched {
                self.count[u as usize] = 0;
            }
            touched.clear();
            self.touched = touched;
        }
        mix(trace, p.cells as u64)
    }

    /// Split cell `c` by the counts of its touched vertices (sorted by count).
    fn split_cell(&mut self, p: &mut Partition, c: usize, group: &[u32], mut trace: u64) -> u64 {
        let e = p.cell_end[c] as usize;
        let size = e - c;
        let k = group.len();
        let first = self.count[group[0] as usize];
        let last = self.count[group[k - 1] as usize];
        trace = mix(mix(mix(trace, c as u64), k as u64), (first as u64) << 32 | last as u64);
        if k == size && first == last {
            return trace;
        }
        // Move touched vertices to the tail, ascending by count.
        for (idx, &u) in group.iter().enumerate().rev() {
            let target = e - (k - idx);
            p.swap(p.pos[u as usize] as usize, target);
        }
        // Fragment boundaries: untouched block first, then one per count.
        let mut bounds = Vec::with_capacity(4);
        if k < size {
            bounds.push(c);
        }
        let mut prev = u32::MAX;
        for (idx, &u) in group.iter().enumerate() {
            let cnt = self.count[u as usize];
            if cnt != prev {
                bounds.push(e - k + idx);
                prev = cnt;
            }
        }
        bounds.push(e);
        let frags = bounds.len() - 1;
        let was_queued = self.in_queue[c];
        let mut largest = 0;
        for f in 0..frags {
            let (s, t) = (bounds[f], bounds[f + 1]);
            p.cell_end[s] = t as u32;
            if f > 0 {
                for i in s..t {
                    p.cell_of[p.elems[i] as usize] = s as u32;
                }
            }
            if t - s > bounds[largest + 1] - bounds[largest] {
                largest = f;
            }
            trace = mix(mix(trace, s as u64), (t - s) as u64);
        }
        p.cells += frags - 1;
        for f in 0..frags {
            let s = bounds[f];
            if (was_queued || f != largest) && !self.in_queue[s] {
                self.in_queue[s] = true;
                self.queue.push_back(s as u32);
            }
        }
        trace
    }
}

/// One node of the first path: the equitable partition before
/// individualization, the target cell and the vertex chosen from it.
struct Level {
    partition: Partition,
    target: usize,
    vertex: usize,
    /// Trace after individualizing `vertex` and refining.
    trace: u64,
}

struct FirstPath {
    root_trace: u64,
    levels: Vec<Level>,
    leaf: Vec<u32>,
}

fn first_path(g: &Graph, refiner: &mut Refiner) -> FirstPath {
    let mut p = Partition::by_degree(g);
    let seeds: Vec<usize> = p.cell_starts().collect();
    let root_trace = refiner.refine(&mut p, &seeds);
    let mut levels = Vec::new();
    while let Some(target) = p.target_cell() {
        let vertex = *p.cell(target).iter().min().expect("non-empty cell") as usize;
        let before = p.clone();
        let single = p.individualize(vertex);
        let trace = refiner.refine(&mut p, &[single]);
        levels.push(Level { partition: before, target, vertex, trace });
    }
    FirstPath { root_trace, levels, leaf: p.elems }
}

/// Depth-first search below `p` (sitting at `depth` on a path compatible with
/// the reference) for a leaf accepted by `accept`.
fn search_leaf<F>(
    refiner: &mut Refiner,
    reference: &FirstPath,
    p: Partition,
    depth: usize,
    nodes: &mut u64,
    accept: &mut F,
) -> Option<Permutation>
where
    F: FnMut(&[u32]) -> Option<Permutation>,
{
    *nodes += 1;
    if depth == reference.levels.len() {
        return if p.is_discrete() { accept(&p.elems) } else { None };
    }
    let level = &reference.levels[depth];
    if p.is_discrete() || p.cells != level.partition.cells {
        return None;
    }
    let target = level.target;
    if p.cell_end[target] != level.partition.cell_end[target] {
        return None;
    }
    let mut cell: Vec<u32> = p.cell(target).to_vec();
    cell.sort_unstable();
    for w in cell {
        let mut q = p.clone();
        let single = q.individualize(w as usize);
        if refiner.refine(&mut q, &[single]) != level.trace {
            continue;
        }
        if let Some(found) = search_leaf(refiner, reference, q, depth + 1, nodes, accept) {
            return Some(found);
        }
    }
    None
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] as usize != x {
            let up = self.0[self.0[x] as usize];
            self.0[x] = up;
            x = up as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo as u32;
        }
    }
}

/// Result of the automorphism search.
#[derive(Debug, Clone)]
pub struct AutSearch {
    pub generators: Vec<Permutation>,
    /// Individualized vertices along the first path.
    pub base: Vec<usize>,
    /// Orbit of each base point under the pointwise stabilizer of the earlier ones.
    pub orbit_sizes: Vec<usize>,
    /// Product of `orbit_sizes`.
    pub order: u128,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

impl AutSearch {
    /// The automorphism group with the search base as stabilizer-chain prefix.
    pub fn group(&self, n: usize) -> PermGroup {
        PermGroup::with_base(n, self.generators.clone(), self.base.clone()).expect("generators act on the graph")
    }
}

pub fn search_automorphisms(g: &Graph) -> AutSearch {
    let n = g.n();
    let mut refiner = Refiner::new(g);
    let path = first_path(g, &mut refiner);
    let first_leaf = path.leaf.clone();
    let mut accept = |leaf: &[u32]| {
        let mut images = vec![0u32; n];
        for (i, &v) in leaf.iter().enumerate() {
            images[v as usize] = first_leaf[i];
        }
        let perm = Permutation::from_raw(images);
        g.is_automorphism(&perm).then_some(perm)
    };

    let mut generators: Vec<Permutation> = Vec::new();
    let mut orbit_sizes = vec![1usize; path.levels.len()];
    let mut nodes = 0u64;
    let mut uf = UnionFind::new(n);
    for depth in (0..path.levels.len()).rev() {
        let level = &path.levels[depth];
        let v = level.vertex;
        let mut failed: Vec<usize> = Vec::new();
        let mut cell: Vec<u32> = level.partition.cell(level.target).to_vec();
        cell.sort_unstable();
        for &w in &cell {
            let w = w as usize;
            let root = uf.find(w);
            if root == uf.find(v) || failed.iter().any(|&f| uf.find(f) == root) {
                continue;
            }
            let mut q = level.partition.clone();
            let single = q.individualize(w);
            let hit = if refiner.refine(&mut q, &[single]) == level.trace {
                search_leaf(&mut refiner, &path, q, depth + 1, &mut nodes, &mut accept)
            } else {
                None
            };
            match hit {
                Some(gamma) => {
                    for x in 0..n {
                        uf.union(x, gamma.apply(x));
                    }
                    generators.push(gamma);
                }
                None => failed.push(w),
            }
        }
        let rv = uf.find(v);
        orbit_sizes[depth] = cell.iter().filter(|&&w| uf.find(w as usize) == rv).count();
    }
    let order = orbit_sizes.iter().try_fold(1u128, |acc, &s| acc.checked_mul(s as u128)).expect("order fits in u128");
    AutSearch {
        generators,
        base: path.levels.iter().map(|l| l.vertex).collect(),
        orbit_sizes,
        order,
        nodes,
    }
}

/// Generators of the full automorphism group, with the stabilizer chain
/// based on the search's first path.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    search_automorphisms(g).group(g.n())
}

/// A verified isomorphism `g1 -> g2` (vertex `v` of `g1` goes to `perm(v)`),
/// or `None` when the graphs are not isomorphic.
///
/// `g2`'s search tree is explored for a leaf matching the traces of `g1`'s
/// first path; any isomorphism carries that path onto such a leaf, so the
/// search is complete.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Option<Permutation> {
    if g1.n() != g2.n() || g1.m() != g2.m() || g1.degree_sequence() != g2.degree_sequence() {
        return None;
    }
    let n = g1.n();
    let mut r1 = Refiner::new(g1);
    let path = first_path(g1, &mut r1);
    let mut r2 = Refiner::new(g2);
    let mut p = Partition::by_degree(g2);
    let seeds: Vec<usize> = p.cell_starts().collect();
    if r2.refine(&mut p, &seeds) != path.root_trace {
        return None;
    }
    let leaf1 = path.leaf.clone();
    let mut accept = |leaf2: &[u32]| {
        let mut images = vec![0u32; n];
        for (i, &v) in leaf1.iter().enumerate() {
            images[v as usize] = leaf2[i];
        }
        let perm = Permutation::from_raw(images);
        g1.maps_onto(&perm, g2).then_some(perm)
    };
    let mut nodes = 0;
    search_leaf(&mut r2, &path, p, 0, &mut nodes, &mut accept)
}

/// Count automorphisms of a connected graph by extending partial maps
/// along a BFS order. Exponential in general; an independent check for the
/// refinement search on small instances.
pub fn count_automorphisms_by_extension(g: &Graph) -> u128 {
    let n = g.n();
    if n == 0 {
        return 1;
    }
    assert!(g.is_connected(), "extension counting needs a connected graph");
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                order.push(u);
            }
        }
        i += 1;
    }
    // Earlier neighbours of each vertex in BFS order, for consistency checks.
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    fn rec(g: &Graph, order: &[usize], parent: &[usize], rank: &[usize], depth: usize, image: &mut [usize], used: &mut [bool]) -> u128 {
        if depth == order.len() {
            return 1;
        }
        let v = order[depth];
        let mut total = 0;
        for &w in g.neighbors(image[parent[v]]) {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            let consistent = g.neighbors(v).iter().filter(|&&u| rank[u] < depth).all(|&u| g.has_edge(w, image[u]))
                && g.neighbors(w).iter().filter(|&&x| used[x]).count()
                    == g.neighbors(v).iter().filter(|&&u| rank[u] < depth).count();
            if consistent {
                used[w] = true;
                image[v] = w;
                total += rec(g, order, parent, rank, depth + 1, image, used);
                used[w] = false;
                image[v] = usize::MAX;
            }
        }
        total
    }
    let mut total = 0;
    for w in 0..n {
        if g.degree(w) != g.degree(0) {
            continue;
        }
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        image[0] = w;
        used[w] = true;
        total += rec(g, &order, &parent, &rank, 1, &mut image, &mut used);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    fn brute_force_count(g: &Graph) -> u128 {
        fn rec(g: &Graph, images: &mut Vec<usize>, used: &mut [bool], count: &mut u128) {
            let k = images.len();
            if k == g.n() {
                *count += 1;
                return;
            }
            for w in 0..g.n() {
                if used[w] || g.degree(w) != g.degree(k) {
                    continue;
                }
                let ok = (0..k).all(|u| g.has_edge(k, u) == g.has_edge(w, images[u]));
                if ok {
                    used[w] = true;
                    images.push(w);
                    rec(g, images, used, count);
                    images.pop();
                    used[w] = false;
                }
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.n()], &mut count);
        count
    }

    fn corpus() -> Vec<Graph> {
        vec![
            Graph::cycle(6),
            Graph::cycle(7),
            Graph::path(5),
            Graph::complete_bipartite(3, 3),
            Graph::complete_bipartite(2, 4),
            petersen(),
            Graph::empty(4),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
            Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)]).unwrap(),
            Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap(),
            Graph::from_edges(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (2, 7), (7, 8), (0, 8)]).unwrap(),
        ]
    }

    #[test]
    fn small_orders_match_brute_force() {
        for g in corpus() {
            let search = search_automorphisms(&g);
            let group = search.group(g.n());
            assert_eq!(search.order, brute_force_count(&g), "{:?}", g);
            assert_eq!(group.order(), search.order);
            for gen in group.generators() {
                assert!(g.is_automorphism(gen));
            }
        }
        assert_eq!(automorphism_group(&Graph::complete_bipartite(3, 3)).order(), 72);
        assert_eq!(automorphism_group(&Graph::cycle(6)).order(), 12);
        assert_eq!(automorphism_group(&petersen()).order(), 120);
        assert_eq!(count_automorphisms_by_extension(&petersen()), 120);
        assert_eq!(count_automorphisms_by_extension(&Graph::cycle(7)), 14);
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric() {
        let graphs = corpus();
        for (i, g) in graphs.iter().enumerate() {
            let shuffle: Vec<usize> = (0..g.n()).map(|v| (v * 5 + 3) % g.n()).collect();
            let h = match Permutation::from_images(shuffle) {
                Ok(p) => g.permuted(&p),
                Err(_) => g.clone(),
            };
            let phi = are_isomorphic(g, &h).expect("relabelled copy");
            assert!(g.maps_onto(&phi, &h));
            assert!(are_isomorphic(&h, g).is_some());
            assert!(are_isomorphic(g, g).is_some());
            for (j, other) in graphs.iter().enumerate() {
                if i != j {
                    assert_eq!(are_isomorphic(g, other).is_some(), are_isomorphic(other, g).is_some());
                }
            }
        }
        assert!(are_isomorphic(&Graph::cycle(6), &Graph::complete_bipartite(3, 3)).is_none());
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(are_isomorphic(&Graph::cycle(6), &two_triangles).is_none());
    }
}
