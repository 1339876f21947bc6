use std::collections::BTreeSet;

use super::graph::Graph;
use super::perm::{PermGroup, Permutation};

/// Quotient of a graph by the orbits of a group.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: Graph,
    /// Orbit index of every original vertex.
    pub orbit_of: Vec<usize>,
    /// Orbits, numbered by their smallest vertex.
    pub orbits: Vec<Vec<usize>>,
    /// Some edge joined two vertices of the same orbit.
    pub dropped_loops: bool,
    /// Some pair of orbits was joined by more edges than one vertex sees.
    pub dropped_multi_edges: bool,
}

impl Quotient {
    /// The permutation induced on orbits, if `perm` maps orbits to orbits.
    pub fn induced_permutation(&self, perm: &Permutation) -> Option<Permutation> {
        let mut images = Vec::with_capacity(self.orbits.len());
        for orbit in &self.orbits {
            let target = self.orbit_of[perm.apply(orbit[0])];
            if orbit.iter().any(|&v| self.orbit_of[perm.apply(v)] != target) {
                return None;
            }
            images.push(target);
        }
        Permutation::from_images(images).ok()
    }

    /// The group induced on the quotient by `group` (which must preserve the orbits).
    pub fn induced_group(&self, group: &PermGroup) -> Option<PermGroup> {
        let gens = group
            .generators()
            .iter()
            .map(|g| self.induced_permutation(g))
            .collect::<Option<Vec<_>>>()?;
        PermGroup::new(self.orbits.len(), gens).ok()
    }
}

/// Vertices are the orbits of `group`; two orbits are adjacent when some edge
/// joins them. Loops and parallel edges are dropped and flagged.
///
/// An edge between orbits A and B is "multiple" when a vertex of A has more
/// than one neighbor in B, i.e. the quotient would lose valency there.
pub fn quotient_by_orbits(g: &Graph, group: &PermGroup) -> Quotient {
    let orbits = group.orbits();
    let mut orbit_of = vec![0; g.n()];
    for (i, orbit) in orbits.iter().enumerate() {
        for &v in orbit {
            orbit_of[v] = i;
        }
    }
    let mut dropped_loops = false;
    let mut dropped_multi_edges = false;
    let mut edges = BTreeSet::new();
    for v in 0..g.n() {
        let mut seen = BTreeSet::new();
        for &u in g.neighbors(v) {
            let (a, b) = (orbit_of[v], orbit_of[u]);
            if a == b {
                dropped_loops = true;
                continue;
            }
            if !seen.insert(b) {
                dropped_multi_edges = true;
            }
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let graph = Graph::from_edges(orbits.len(), &edges).expect("orbit indices are in range and loops removed");
    Quotient { graph, orbit_of, orbits, dropped_loops, dropped_multi_edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphalg::search::are_isomorphic;

    #[test]
    fn trivial_group_gives_a_copy() {
        let g = Graph::complete_bipartite(3, 3);
        let q = quotient_by_orbits(&g, &PermGroup::trivial(6));
        assert!(are_isomorphic(&g, &q.graph).is_some());
        assert!(!q.dropped_loops && !q.dropped_multi_edges);
    }

    #[test]
    fn rotation_of_a_cycle() {
        // C_6 modulo the rotation by 3 is a triangle.
        let g = Graph::cycle(6);
        let rot = Permutation::from_images((0..6).map(|i| (i + 3) % 6).collect()).unwrap();
        let group = PermGroup::new(6, vec![rot.clone()]).unwrap();
        let q = quotient_by_orbits(&g, &group);
        assert_eq!((q.graph.n(), q.graph.m()), (3, 3));
        assert!(!q.dropped_multi_edges);
        let rot1 = Permutation::from_images((0..6).map(|i| (i + 1) % 6).collect()).unwrap();
        let induced = q.induced_permutation(&rot1).unwrap();
        assert!(q.graph.is_automorphism(&induced));
        // Modulo the rotation by 2 there are two orbits and one edge.
        let group = PermGroup::new(6, vec![rot1.then(&rot1)]).unwrap();
        let q = quotient_by_orbits(&g, &group);
        assert_eq!((q.graph.n(), q.graph.m()), (2, 1));
        assert!(q.dropped_multi_edges);
    }
}
