use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use super::perm::PermGroup;
use super::search::automorphism_group;
use super::GraphError;

/// Cubic graphs are at most 5-arc-transitive; the classification stops here.
pub const MAX_ARC_LEVEL: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityReport {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub s_regular: Option<u32>,
    pub aut_order: u128,
    pub stabilizer_order: u128,
}

/// Number of s-arcs, by dynamic programming over arcs. A 0-arc is a vertex.
pub fn s_arc_count(g: &Graph, s: usize) -> u128 {
    if s == 0 {
        return g.n() as u128;
    }
    // ways[v][i]: (k)-arcs starting with the arc v -> neighbors(v)[i]
    let mut ways: Vec<Vec<u128>> = (0..g.n()).map(|v| vec![1; g.degree(v)]).collect();
    for _ in 1..s {
        let next: Vec<Vec<u128>> = (0..g.n())
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .map(|&w| {
                        g.neighbors(w)
                            .iter()
                            .enumerate()
                            .filter(|&(_, &x)| x != v)
                            .map(|(i, _)| ways[w][i])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        ways = next;
    }
    ways.iter().flatten().sum()
}

/// Every s-arc in lexicographic order. Intended for small graphs.
pub fn s_arcs(g: &Graph, s: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, s: usize, arc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if arc.len() == s + 1 {
            out.push(arc.clone());
            return;
        }
        let last = arc[arc.len() - 1];
        let back = (arc.len() >= 2).then(|| arc[arc.len() - 2]);
        for &w in g.neighbors(last) {
            if Some(w) != back {
                arc.push(w);
                extend(g, s, arc, out);
                arc.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..g.n() {
        extend(g, s, &mut vec![v], &mut out);
    }
    out
}

/// The lexicographically first s-arc, if any.
pub fn first_s_arc(g: &Graph, s: usize) -> Option<Vec<usize>> {
    fn dfs(g: &Graph, s: usize, arc: &mut Vec<usize>) -> bool {
        if arc.len() == s + 1 {
            return true;
        }
        let last = arc[arc.len() - 1];
        let back = (arc.len() >= 2).then(|| arc[arc.len() - 2]);
        for &w in g.neighbors(last) {
            if Some(w) != back {
                arc.push(w);
                if dfs(g, s, arc) {
                    return true;
                }
                arc.pop();
            }
        }
        false
    }
    (0..g.n()).find_map(|v| {
        let mut arc = vec![v];
        dfs(g, s, &mut arc).then_some(arc)
    })
}

/// Size of the orbit of `arc` (a vertex tuple) under `group`.
fn tuple_orbit_size(group: &PermGroup, arc: &[usize], cap: u128) -> u128 {
    let start: Vec<u32> = arc.iter().map(|&v| v as u32).collect();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for gen in group.generators() {
            let image: Vec<u32> = t.iter().map(|&v| gen.apply(v as usize) as u32).collect();
            if !seen.contains(&image) {
                seen.insert(image.clone());
                queue.push_back(image);
                if seen.len() as u128 > cap {
                    return seen.len() as u128;
                }
            }
        }
    }
    seen.len() as u128
}

/// Whether `group` is transitive on the s-arcs of `g`.
pub fn is_s_arc_transitive(g: &Graph, group: &PermGroup, s: usize) -> bool {
    match first_s_arc(g, s) {
        None => true,
        Some(arc) => {
            let count = s_arc_count(g, s);
            tuple_orbit_size(group, &arc, count) == count
        }
    }
}

pub fn is_edge_transitive(g: &Graph, group: &PermGroup) -> bool {
    match g.edges().next() {
        None => true,
        Some((u, v)) => {
            let mut seen = HashSet::from([(u, v)]);
            let mut queue = VecDeque::from([(u, v)]);
            while let Some((x, y)) = queue.pop_front() {
                for gen in group.generators() {
                    let (a, b) = (gen.apply(x), gen.apply(y));
                    let e = (a.min(b), a.max(b));
                    if seen.insert(e) {
                        queue.push_back(e);
                    }
                }
            }
            seen.len() == g.m()
        }
    }
}

/// Vertex/edge transitivity and orders for any graph; `s_regular` is left empty.
pub fn basic_report(g: &Graph, group: &PermGroup) -> TransitivityReport {
    let aut_order = group.order();
    let orbit0 = if g.n() == 0 { 1 } else { group.orbit(0).len() as u128 };
    TransitivityReport {
        vertex_transitive: group.is_transitive(),
        edge_transitive: is_edge_transitive(g, group),
        s_regular: None,
        aut_order,
        stabilizer_order: aut_order / orbit0,
    }
}

/// Classify a connected cubic graph given its automorphism group: the
/// largest s (capped at [`MAX_ARC_LEVEL`]) with `group` regular on s-arcs.
pub fn classify_with_group(g: &Graph, group: &PermGroup) -> Result<TransitivityReport, GraphError> {
    if !g.is_cubic() {
        return Err(GraphError::NotCubic);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut report = basic_report(g, group);
    let mut level = None;
    for s in 1..=MAX_ARC_LEVEL {
        if !is_s_arc_transitive(g, group, s as usize) {
            break;
        }
        level = Some(s);
    }
    // In the cubic case s-transitivity is s-regularity; confirm by counting.
    report.s_regular = level.filter(|&s| report.aut_order == s_arc_count(g, s as usize));
    Ok(report)
}

pub fn classify_arc_regularity(g: &Graph) -> Result<TransitivityReport, GraphError> {
    if !g.is_cubic() {
        return Err(GraphError::NotCubic);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    classify_with_group(g, &automorphism_group(g))
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

    fn prism(k: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..k {
            edges.push((i, (i + 1) % k));
            edges.push((k + i, k + (i + 1) % k));
            edges.push((i, k + i));
        }
        Graph::from_edges(2 * k, &edges).unwrap()
    }

    #[test]
    fn arc_counts_match_enumeration() {
        for g in [petersen(), Graph::complete_bipartite(3, 3), prism(5)] {
            for s in 0..=4 {
                assert_eq!(s_arc_count(&g, s), s_arcs(&g, s).len() as u128);
                if s >= 1 {
                    assert_eq!(s_arc_count(&g, s), ((g.n() * 3) << (s - 1)) as u128);
                }
            }
        }
        assert_eq!(s_arc_count(&prism(4), 1), 24);
        assert_eq!(first_s_arc(&Graph::path(3), 2), Some(vec![0, 1, 2]));
        assert_eq!(first_s_arc(&Graph::path(3), 3), None);
    }

    #[test]
    fn known_classifications() {
        let r = classify_arc_regularity(&petersen()).unwrap();
        assert_eq!((r.s_regular, r.aut_order, r.stabilizer_order), (Some(3), 120, 12));
        let r = classify_arc_regularity(&Graph::complete_bipartite(3, 3)).unwrap();
        assert_eq!((r.s_regular, r.aut_order), (Some(3), 72));
        // The cube is 2-arc-regular.
        let r = classify_arc_regularity(&prism(4)).unwrap();
        assert_eq!((r.s_regular, r.aut_order), (Some(2), 48));
        // The pentagonal prism is vertex- but not edge-transitive.
        let r = classify_arc_regularity(&prism(5)).unwrap();
        assert!(r.vertex_transitive && !r.edge_transitive);
        assert_eq!(r.s_regular, None);
        assert_eq!(classify_arc_regularity(&Graph::cycle(6)), Err(GraphError::NotCubic));
    }

    #[test]
    fn report_json_has_five_fields() {
        let r = classify_arc_regularity(&petersen()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json.as_object().unwrap().len(), 5);
        assert_eq!(json["s_regular"], 3);
        let basic = basic_report(&Graph::path(4), &automorphism_group(&Graph::path(4)));
        assert!(!basic.vertex_transitive);
        assert_eq!(serde_json::to_value(&basic).unwrap()["s_regular"], serde_json::Value::Null);
    }
}
