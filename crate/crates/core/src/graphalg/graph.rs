use std::collections::VecDeque;
use std::fmt::Write as _;

use super::perm::Permutation;
use super::GraphError;

/// Simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    /// Build from an edge list. Duplicate edges (in either orientation) are
    /// merged; loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut total = 0;
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
            total += nbrs.len();
        }
        Ok(Graph { adj, edges: total / 2 })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], edges: 0 }
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle on n >= 3 vertices")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are in range")
    }

    pub fn complete_bipartite(left: usize, right: usize) -> Graph {
        let edges: Vec<_> = (0..left).flat_map(|u| (0..right).map(move |v| (u, left + v))).collect();
        Graph::from_edges(left + right, &edges).expect("bipartite edges are in range")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|nbrs| nbrs.len() == d).then_some(d)
    }

    pub fn is_cubic(&self) -> bool {
        self.n() > 0 && self.regular_degree() == Some(3)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<_> = self.adj.iter().map(Vec::len).collect();
        seq.sort_unstable();
        seq
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n()
    }

    /// A proper two-colouring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n()];
        for start in 0..self.n() {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        perm.degree() == self.n() && self.maps_onto(perm, self)
    }

    /// Whether `perm` maps every edge of `self` onto an edge of `other`.
    /// Together with equal edge counts this makes `perm` an isomorphism.
    pub fn maps_onto(&self, perm: &Permutation, other: &Graph) -> bool {
        perm.degree() == self.n()
            && other.n() == self.n()
            && other.m() == self.m()
            && self.edges().all(|(u, v)| other.has_edge(perm.apply(u), perm.apply(v)))
    }

    /// Relabel vertex `v` as `perm(v)`.
    pub fn permuted(&self, perm: &Permutation) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (v, nbrs) in self.adj.iter().enumerate() {
            let mut image: Vec<_> = nbrs.iter().map(|&u| perm.apply(u)).collect();
            image.sort_unstable();
            adj[perm.apply(v)] = image;
        }
        Graph { adj, edges: self.edges }
    }

    /// `n m` on the first line, then one `u v` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(12 * (self.m() + 1));
        writeln!(out, "{} {}", self.n(), self.m()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parse the edge-list format. Blank lines and lines starting with `#`
    /// are ignored; line numbers in errors are 1-based.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line, message: String| GraphError::Parse { line, message };
        let (hline, header) = lines.next().ok_or_else(|| err(1, "missing 'n m' header".into()))?;
        let (n, m) = parse_pair(header).map_err(|msg| err(hline, msg))?;
        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines.by_ref() {
            let (u, v) = parse_pair(text).map_err(|msg| err(line, msg))?;
            if u >= n || v >= n {
                return Err(err(line, format!("endpoint out of range for n = {n}")));
            }
            if u == v {
                return Err(err(line, format!("self-loop at vertex {u}")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(err(hline, format!("header declares {m} edges, found {}", edges.len())));
        }
        let g = Graph::from_edges(n, &edges)?;
        if g.m() != m {
            return Err(err(hline, "duplicate edges".into()));
        }
        Ok(g)
    }
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize, String> {
        let tok = it.next().ok_or_else(|| format!("expected two integers, got '{text}'"))?;
        tok.parse().map_err(|_| format!("invalid integer '{tok}'"))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(format!("expected two integers, got '{text}'"));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::complete_bipartite(3, 3);
        let text = g.to_edge_list();
        assert!(text.starts_with("6 9\n0 3\n0 4\n"));
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        let with_header = format!("# {{\"note\":1}}\n{text}");
        assert_eq!(Graph::parse_edge_list(&with_header).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = Graph::parse_edge_list("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 3, .. }), "{e}");
        let e = Graph::parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 1, .. }));
        let e = Graph::parse_edge_list("3 1\n\n2 2\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 3, .. }));
        let e = Graph::parse_edge_list("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 1, .. }));
        assert!(Graph::parse_edge_list("").is_err());
    }

    #[test]
    fn structure_queries() {
        let c6 = Graph::cycle(6);
        assert_eq!(c6.regular_degree(), Some(2));
        assert!(c6.is_connected());
        assert!(c6.bipartition().is_some());
        assert!(Graph::cycle(5).bipartition().is_none());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap().m(), 1);
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }
}
