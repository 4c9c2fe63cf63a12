//! Simple undirected graphs, the edge-list text format, family generators,
//! connectivity, shortest-path distances and the combinatorial Laplacian.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::DenseMatrix;

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized as `(u, v)` with `u < v`; self-loops and
/// duplicate edges are rejected at construction.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge iterator. Errors carry the 1-based position
    /// of the offending edge in the `line` field.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (idx, (u, v)) in edges.into_iter().enumerate() {
            g.insert_edge(u, v, idx + 1)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize, line: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    line,
                    v: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line, v: u });
        }
        let key = (u.min(v), u.max(v));
        if !self.edges.insert(key) {
            return Err(Error::DuplicateEdge { line, u, v });
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(min, max)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Copy of this graph with the extra edge `{u, v}`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.insert_edge(u, v, self.edge_count() + 1)?;
        Ok(g)
    }

    /// All vertex pairs `u < v` that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n && is_connected(self)
    }

    /// Serializes to the edge-list text format accepted by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Short content hash of the canonical edge list, `sha256:<16 hex digits>`.
    pub fn edge_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(self.to_edge_list().as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

/// A graph family instance with its size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Complete { n: usize },
    CompleteBipartite { p: usize, q: usize },
    Cycle { n: usize },
    Path { n: usize },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Complete { n } | FamilySpec::Path { n } if n == 0 => Err(
                Error::InvalidFamilyParams(format!("{self} requires n >= 1")),
            ),
            FamilySpec::Cycle { n } if n < 3 => Err(Error::InvalidFamilyParams(format!(
                "{self} requires n >= 3"
            ))),
            FamilySpec::CompleteBipartite { p, q } if p == 0 || q == 0 => Err(
                Error::InvalidFamilyParams(format!("{self} requires p >= 1 and q >= 1")),
            ),
            _ => Ok(()),
        }
    }

    /// Number of vertices of the instance.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Complete { n } | FamilySpec::Cycle { n } | FamilySpec::Path { n } => n,
            FamilySpec::CompleteBipartite { p, q } => p + q,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Complete { n } => write!(f, "complete({n})"),
            FamilySpec::CompleteBipartite { p, q } => write!(f, "bipartite({p},{q})"),
            FamilySpec::Cycle { n } => write!(f, "cycle({n})"),
            FamilySpec::Path { n } => write!(f, "path({n})"),
        }
    }
}

/// Parses the edge-list format: the first non-comment line holds the vertex
/// count, each following line holds one edge `u v`. Lines starting with `#`
/// and blank lines are ignored. LF and CRLF line endings are both accepted.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                if fields.len() != 1 {
                    return Err(Error::MalformedLine {
                        line,
                        reason: format!("expected vertex count, got `{trimmed}`"),
                    });
                }
                let n = parse_index(fields[0], line)?;
                if n == 0 {
                    return Err(Error::MalformedLine {
                        line,
                        reason: "vertex count must be at least 1".into(),
                    });
                }
                graph = Some(Graph::empty(n));
            }
            Some(g) => {
                if fields.len() != 2 {
                    return Err(Error::MalformedLine {
                        line,
                        reason: format!("expected `u v`, got `{trimmed}`"),
                    });
                }
                let u = parse_index(fields[0], line)?;
                let v = parse_index(fields[1], line)?;
                g.insert_edge(u, v, line)?;
            }
        }
    }
    graph.ok_or_else(|| Error::MalformedLine {
        line: 1,
        reason: "missing vertex count".into(),
    })
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::MalformedLine {
        line,
        reason: format!("`{tok}` is not a non-negative integer"),
    })
}

/// Builds the graph of a family instance.
///
/// Complete bipartite graphs use parts `{0..p}` and `{p..p+q}`; cycles use
/// edges `{i, (i+1) mod n}`; paths use `{i, i+1}`.
pub fn generate(spec: FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let edges: Vec<(usize, usize)> = match spec {
        FamilySpec::Complete { n } => (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect(),
        FamilySpec::CompleteBipartite { p, q } => (0..p)
            .flat_map(|u| (p..p + q).map(move |v| (u, v)))
            .collect(),
        FamilySpec::Cycle { n } => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        FamilySpec::Path { n } => (1..n).map(|i| (i - 1, i)).collect(),
    };
    Graph::from_edges(spec.order(), edges)
}

/// True iff a single BFS component covers every vertex. `n = 1` is connected;
/// `n = 0` is treated as connected as well.
pub fn is_connected(g: &Graph) -> bool {
    if g.n == 0 {
        return true;
    }
    bfs_distances(g, 0).iter().all(Option::is_some)
}

pub(crate) fn ensure_connected(g: &Graph) -> Result<()> {
    if is_connected(g) {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap_or(0);
        for &w in &g.adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Combinatorial Laplacian `L = Diag(deg) - A`.
pub fn laplacian(g: &Graph) -> DenseMatrix {
    let mut l = DMatrix::zeros(g.n, g.n);
    for (u, v) in g.edges() {
        l[(u, v)] = -1.0;
        l[(v, u)] = -1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    l
}

/// Shortest-path distance matrix of a connected graph.
pub fn classical_distance_matrix(g: &Graph) -> Result<DenseMatrix> {
    ensure_connected(g)?;
    let mut d = DMatrix::zeros(g.n, g.n);
    for s in 0..g.n {
        for (t, dist) in bfs_distances(g, s).into_iter().enumerate() {
            d[(s, t)] = dist.ok_or(Error::Disconnected)? as f64;
        }
    }
    Ok(d)
}

const MAX_RESAMPLES: usize = 64;

/// Erdős–Rényi `G(n, edge_prob)` draw, resampled until connected.
///
/// After `MAX_RESAMPLES` failed draws a random spanning tree is overlaid on
/// the last draw. The result depends only on `(n, edge_prob, seed)`.
pub fn random_connected_graph(n: usize, edge_prob: f64, seed: u64) -> Graph {
    let p = if edge_prob.is_nan() {
        0.0
    } else {
        edge_prob.clamp(0.0, 1.0)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for _ in 0..MAX_RESAMPLES {
        g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random::<f64>() < p {
                    g.insert_edge(u, v, 0).expect("fresh pair");
                }
            }
        }
        if is_connected(&g) {
            return g;
        }
    }
    overlay_random_tree(&mut g, &mut rng);
    g
}

/// Uniformly labelled random tree built by random attachment.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    overlay_random_tree(&mut g, &mut rng);
    g
}

fn overlay_random_tree(g: &mut Graph, rng: &mut ChaCha8Rng) {
    let mut order: Vec<usize> = (0..g.n).collect();
    order.shuffle(rng);
    for i in 1..order.len() {
        let u = order[i];
        let v = order[rng.random_range(0..i)];
        if !g.has_edge(u, v) {
            g.insert_edge(u, v, 0).expect("checked absent");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g, generate(FamilySpec::Complete { n: 3 }).unwrap());
    }

    #[test]
    fn parses_single_edge_with_comments_and_crlf() {
        let g = parse_edge_list("# header\r\n2\r\n# edge\r\n0 1\r\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert_eq!(
            parse_edge_list("3\n0 0").unwrap_err(),
            Error::SelfLoop { line: 2, v: 0 }
        );
        assert_eq!(
            parse_edge_list("3\n0 1\n# c\n1 0").unwrap_err(),
            Error::DuplicateEdge {
                line: 4,
                u: 1,
                v: 0
            }
        );
        assert_eq!(
            parse_edge_list("3\n0 3").unwrap_err(),
            Error::VertexOutOfRange {
                line: 2,
                v: 3,
                n: 3
            }
        );
        assert!(matches!(
            parse_edge_list("3\n0 1 2").unwrap_err(),
            Error::MalformedLine { line: 2, .. }
        ));
        assert!(matches!(
            parse_edge_list("x\n").unwrap_err(),
            Error::MalformedLine { line: 1, .. }
        ));
        assert!(matches!(
            parse_edge_list("# only a comment\n").unwrap_err(),
            Error::MalformedLine { .. }
        ));
        assert!(matches!(
            parse_edge_list("0\n").unwrap_err(),
            Error::MalformedLine { line: 1, .. }
        ));
    }

    #[test]
    fn edge_list_round_trips() {
        let g = generate(FamilySpec::CompleteBipartite { p: 2, q: 3 }).unwrap();
        assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn family_edge_counts() {
        assert_eq!(
            generate(FamilySpec::Complete { n: 4 })
                .unwrap()
                .edge_count(),
            6
        );
        assert_eq!(
            generate(FamilySpec::CompleteBipartite { p: 2, q: 3 })
                .unwrap()
                .edge_count(),
            6
        );
        assert_eq!(
            generate(FamilySpec::Cycle { n: 5 }).unwrap().edge_count(),
            5
        );
        assert_eq!(generate(FamilySpec::Path { n: 5 }).unwrap().edge_count(), 4);
        assert_eq!(
            generate(FamilySpec::Complete { n: 1 })
                .unwrap()
                .edge_count(),
            0
        );
    }

    #[test]
    fn invalid_family_params() {
        for spec in [
            FamilySpec::Cycle { n: 2 },
            FamilySpec::Complete { n: 0 },
            FamilySpec::Path { n: 0 },
            FamilySpec::CompleteBipartite { p: 0, q: 3 },
        ] {
            assert!(matches!(generate(spec), Err(Error::InvalidFamilyParams(_))));
        }
    }

    #[test]
    fn bipartite_2_2_looks_like_cycle_4() {
        let b = generate(FamilySpec::CompleteBipartite { p: 2, q: 2 }).unwrap();
        let c = generate(FamilySpec::Cycle { n: 4 }).unwrap();
        assert_eq!(b.degree_sequence(), c.degree_sequence());
        // relabel cycle vertices 0,1,2,3 -> bipartite 0,2,1,3
        let perm = [0, 2, 1, 3];
        let mapped = Graph::from_edges(4, c.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        assert_eq!(mapped, b);
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(
            &generate(FamilySpec::Complete { n: 3 }).unwrap()
        ));
        assert!(!is_connected(&Graph::empty(2)));
        assert!(is_connected(&generate(FamilySpec::Path { n: 5 }).unwrap()));
        assert!(is_connected(&Graph::empty(1)));
    }

    #[test]
    fn laplacian_small_cases() {
        let k2 = laplacian(&generate(FamilySpec::Complete { n: 2 }).unwrap());
        assert_eq!(k2, DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]));

        let k3 = laplacian(&generate(FamilySpec::Complete { n: 3 }).unwrap());
        let expected = DMatrix::from_fn(3, 3, |i, j| if i == j { 2.0 } else { -1.0 });
        assert_eq!(k3, expected);

        let p3 = laplacian(&generate(FamilySpec::Path { n: 3 }).unwrap());
        assert_eq!(
            p3,
            DMatrix::from_row_slice(3, 3, &[1.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 1.0])
        );
    }

    #[test]
    fn distances() {
        let p3 = classical_distance_matrix(&generate(FamilySpec::Path { n: 3 }).unwrap()).unwrap();
        assert_eq!(p3[(0, 2)], 2.0);
        let k4 =
            classical_distance_matrix(&generate(FamilySpec::Complete { n: 4 }).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(k4[(i, j)], if i == j { 0.0 } else { 1.0 });
            }
        }
        let c5 = classical_distance_matrix(&generate(FamilySpec::Cycle { n: 5 }).unwrap()).unwrap();
        assert_eq!(c5[(0, 2)], 2.0);
        assert_eq!(c5[(0, 3)], 2.0);
        assert_eq!(
            classical_distance_matrix(&Graph::empty(2)),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn random_graphs() {
        let single = random_connected_graph(1, 0.5, 7);
        assert_eq!(single.vertex_count(), 1);
        assert_eq!(single.edge_count(), 0);

        assert_eq!(
            random_connected_graph(5, 1.0, 0),
            generate(FamilySpec::Complete { n: 5 }).unwrap()
        );

        let a = random_connected_graph(8, 0.4, 42);
        let b = random_connected_graph(8, 0.4, 42);
        assert!(is_connected(&a));
        assert_eq!(a, b);

        let sparse = random_connected_graph(12, 0.0, 3);
        assert!(sparse.is_tree());
        for seed in 0..20 {
            let t = random_tree(9, seed);
            assert!(t.is_tree());
        }
    }
}
