//! Simple undirected graphs and the invariants the edge-ideal bounds depend
//! on.
//!
//! Vertices are 0-based internally; the JSON form and preset names use the
//! 1-based labels `1..=n` that match the variables `x_1..x_n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{MonomialIdeal, Multidegree};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphWire", into = "GraphWire")]
pub struct Graph {
    n: usize,
    /// Sorted pairs `(i, j)` with `i < j`.
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphWire> for Graph {
    type Error = Error;

    fn try_from(w: GraphWire) -> Result<Self> {
        let mut edges = Vec::with_capacity(w.edges.len());
        for [a, b] in w.edges {
            if a == 0 || b == 0 {
                return Err(Error::Input(format!("vertex labels start at 1, got edge [{a},{b}]")));
            }
            edges.push((a - 1, b - 1));
        }
        Graph::new(w.n, edges)
    }
}

impl From<Graph> for GraphWire {
    fn from(g: Graph) -> Self {
        GraphWire { n: g.n, edges: g.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect() }
    }
}

impl Graph {
    /// Build a graph from 0-based edges. Loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Input(format!("edge ({},{}) outside 1..={n}", a + 1, b + 1)));
            }
            if a == b {
                return Err(Error::Input(format!("loop at vertex {}", a + 1)));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::Input(format!("repeated edge ({},{})", a + 1, b + 1)));
            }
        }
        Ok(Graph { n, edges: set.into_iter().collect() })
    }

    pub fn edgeless(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn path(n: usize) -> Self {
        Graph { n, edges: (1..n).map(|i| (i - 1, i)).collect() }
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Input(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Star with center 1 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph { n: leaves + 1, edges: (1..=leaves).map(|i| (0, i)).collect() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { n, edges }
    }

    /// Disjoint union; the vertices of `other` are relabelled after ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let edges =
            self.edges.iter().copied().chain(other.edges.iter().map(|&(a, b)| (a + self.n, b + self.n))).collect();
        Graph { n: self.n + other.n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edges(&self) -> bool {
        !self.edges.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the subgraph induced on `vertices` admits a proper 2-colouring.
    pub fn is_bipartite_on(&self, vertices: &[usize]) -> bool {
        let adj = self.adjacency();
        let inside: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for &start in vertices {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for &w in adj[v].iter().filter(|w| inside.contains(w)) {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn is_bipartite(&self) -> bool {
        self.is_bipartite_on(&(0..self.n).collect::<Vec<_>>())
    }

    /// The number `p` of bipartite connected components. Isolated vertices
    /// count.
    pub fn bipartite_component_count(&self) -> usize {
        self.components().iter().filter(|c| self.is_bipartite_on(c)).count()
    }

    fn edge_count_on(&self, vertices: &[usize]) -> usize {
        self.edges.iter().filter(|(a, b)| vertices.contains(a) && vertices.contains(b)).count()
    }

    fn is_connected_on(&self, vertices: &[usize]) -> bool {
        let Some(&start) = vertices.first() else {
            return false;
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if vertices.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == vertices.len()
    }

    /// Whether the connected vertex set `component` induces a tree.
    pub fn is_tree(&self, component: &[usize]) -> Result<bool> {
        if !self.is_connected_on(component) {
            return Err(Error::Input("is_tree expects a connected vertex set".into()));
        }
        Ok(self.edge_count_on(component) + 1 == component.len())
    }

    /// Connected with `|E| = |V| - 1`.
    pub fn is_tree_graph(&self) -> bool {
        self.n > 0 && self.edges.len() + 1 == self.n && self.components().len() == 1
    }

    pub fn find_leaf(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.neighbors(v).len() == 1)
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.neighbors(v).len() == 1).collect()
    }

    /// `G \ W`: drop every edge meeting `W`. Labels are kept, so the removed
    /// vertices stay behind as isolated vertices of the same ambient ring.
    pub fn delete_vertices(&self, w: &[usize]) -> Graph {
        let edges = self.edges.iter().copied().filter(|(a, b)| !w.contains(a) && !w.contains(b)).collect();
        Graph { n: self.n, edges }
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// listed order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let pos = |v: usize| vertices.iter().position(|&u| u == v);
        let edges = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (pos(a), pos(b)) {
                (Some(i), Some(j)) => Some((i.min(j), i.max(j))),
                _ => None,
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Graph { n: vertices.len(), edges }
    }

    /// Vertices of degree zero.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        let adj = self.adjacency();
        (0..self.n).filter(|&v| adj[v].is_empty()).collect()
    }

    /// The edge ideal `I(G)` in `n` variables.
    pub fn edge_ideal(&self) -> MonomialIdeal {
        let gens = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let mut e = vec![0; self.n];
                e[a] = 1;
                e[b] = 1;
                Multidegree::new(e)
            })
            .collect();
        MonomialIdeal::minimalize(gens, self.n).expect("edge generators have length n")
    }

    /// All `2^(n choose 2)` labelled graphs on `n` vertices.
    pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        assert!(pairs.len() < 63, "too many vertices to enumerate");
        (0u64..1 << pairs.len()).map(move |mask| Graph {
            n,
            edges: pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect(),
        })
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}-{}", a + 1, b + 1)?;
        }
        write!(f, "}}")
    }
}

/// Parses presets such as `path:3`, `cycle:4`, `star:3`, `complete:4`,
/// `empty:2`, joined by `+` for disjoint unions.
impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut acc: Option<Graph> = None;
        for part in s.split('+') {
            let part = part.trim();
            let (kind, arg) =
                part.split_once(':').ok_or_else(|| Error::Input(format!("expected <kind>:<size>, got `{part}`")))?;
            let k: usize = arg.parse().map_err(|_| Error::Input(format!("bad preset size `{arg}`")))?;
            let g = match kind {
                "path" if k >= 1 => Graph::path(k),
                "cycle" => Graph::cycle(k)?,
                "star" if k >= 1 => Graph::star(k),
                "complete" if k >= 1 => Graph::complete(k),
                "empty" if k >= 1 => Graph::edgeless(k),
                _ => return Err(Error::Input(format!("unknown or degenerate preset `{part}`"))),
            };
            acc = Some(match acc {
                None => g,
                Some(prev) => prev.disjoint_union(&g),
            });
        }
        acc.ok_or_else(|| Error::Input("empty graph specification".into()))
    }
}
