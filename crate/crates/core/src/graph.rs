//! Simple undirected graphs, distance stratification and regularity tests.
//!
//! A [`Graph`] keeps its adjacency twice: sorted neighbour lists drive the
//! breadth-first searches, and a dense 0/1 matrix feeds the brute-force
//! oracle. Both are fixed at construction and the graph is immutable after.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;

use crate::error::{Error, RegularityWitness, Result};

/// Largest graph accepted; the oracle does a dense eigensolve.
pub const MAX_VERTICES: usize = 2000;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    dense: Vec<u8>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

/// Builds a connected simple graph from an edge list. Duplicate edges, in
/// either orientation, are collapsed.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(n, edges)
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!(
                "a walk needs at least 2 vertices, got {n}"
            )));
        }
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut dense = vec![0u8; n * n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidEdge(u, v, n));
            }
            dense[u * n + v] = 1;
            dense[v * n + u] = 1;
        }
        let neighbors = (0..n)
            .map(|u| (0..n).filter(|&v| dense[u * n + v] == 1).collect())
            .collect();
        let g = Graph {
            n,
            neighbors,
            dense,
        };
        let dist = g.distances_from(0);
        if let Some(unreached) = dist.iter().position(Option::is_none) {
            return Err(Error::DisconnectedGraph { unreached });
        }
        Ok(g)
    }

    /// Parses the whitespace-delimited edge-list format: a header line
    /// `n m` followed by `m` lines `u v` with 0-based vertex ids. Text from
    /// `#` to the end of a line is ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
            .filter(|(_, line)| !line.is_empty());

        let parse_pair = |lineno: usize, line: &str| -> Result<(usize, usize)> {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::InvalidEdgeList(format!(
                    "line {lineno}: expected two integers, found {:?}",
                    line
                )));
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| {
                    Error::InvalidEdgeList(format!("line {lineno}: {s:?} is not a vertex id"))
                })
            };
            Ok((parse(fields[0])?, parse(fields[1])?))
        };

        let (lineno, header) = rows
            .next()
            .ok_or_else(|| Error::InvalidEdgeList("empty input".into()))?;
        let (n, m) = parse_pair(lineno, header)?;
        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in rows {
            if edges.len() == m {
                return Err(Error::InvalidEdgeList(format!(
                    "line {lineno}: more than the {m} declared edges"
                )));
            }
            edges.push(parse_pair(lineno, line)?);
        }
        if edges.len() != m {
            return Err(Error::InvalidEdgeList(format!(
                "declared {m} edges but found {}",
                edges.len()
            )));
        }
        Graph::new(n, &edges)
    }

    pub fn from_edge_list_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidEdgeList(format!("{}: {e}", path.display())))?;
        Self::from_edge_list(&text)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.dense[u * self.n + v] == 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.neighbors[u]
                    .iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    /// Row-major dense adjacency matrix.
    pub fn dense_adjacency(&self) -> Vec<f64> {
        self.dense.iter().map(|&x| f64::from(x)).collect()
    }

    /// `A x` using the neighbour lists.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.neighbors
            .iter()
            .map(|nb| nb.iter().map(|&v| x[v]).sum())
            .collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::InvalidOrigin {
                origin: v,
                n: self.n,
            });
        }
        Ok(())
    }

    fn distances_from(&self, origin: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::from([origin]);
        dist[origin] = Some(0);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.neighbors[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Graph distance from `origin` to every vertex.
    pub fn distances(&self, origin: usize) -> Result<Vec<usize>> {
        self.check_vertex(origin)?;
        // connectivity is checked at construction
        Ok(self
            .distances_from(origin)
            .into_iter()
            .map(|d| d.unwrap_or(usize::MAX))
            .collect())
    }

    /// Row-major all-pairs distance table.
    pub fn all_pairs_distances(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for u in 0..self.n {
            out.extend(self.distances_from(u).into_iter().map(|d| d.unwrap_or(usize::MAX)));
        }
        out
    }

    pub fn diameter(&self) -> usize {
        self.all_pairs_distances().into_iter().max().unwrap_or(0)
    }

    /// Breadth-first shells `V_0(o), V_1(o), ...` around `origin`.
    pub fn stratify(&self, origin: usize) -> Result<Stratification> {
        let dist = self.distances(origin)?;
        let depth = dist.iter().copied().max().unwrap_or(0);
        let mut shells = vec![Vec::new(); depth + 1];
        for (v, &d) in dist.iter().enumerate() {
            shells[d].push(v);
        }
        let kappa = shells.iter().map(Vec::len).collect();
        Ok(Stratification {
            origin,
            shells,
            kappa,
            shell_of: dist,
        })
    }

    /// Distance-`i` adjacency matrices `A_0 = I, A_1 = A, ..., A_D`, each
    /// row-major with 0/1 entries.
    pub fn distance_matrices(&self) -> Vec<Vec<u8>> {
        let dist = self.all_pairs_distances();
        let diameter = dist.iter().copied().max().unwrap_or(0);
        let mut mats = vec![vec![0u8; self.n * self.n]; diameter + 1];
        for (idx, &d) in dist.iter().enumerate() {
            mats[d][idx] = 1;
        }
        mats
    }

    /// Intersection array of a distance-regular graph. Fails with a witness
    /// pair when some count `c_i`, `a_i` or `b_i` is not constant.
    pub fn intersection_numbers(&self) -> Result<IntersectionArray> {
        let n = self.n;
        let dist = self.all_pairs_distances();
        let diameter = dist.iter().copied().max().unwrap_or(0);
        // per distance: first pair seen and its (c, a, b)
        let mut seen: Vec<Option<((usize, usize), (usize, usize, usize))>> =
            vec![None; diameter + 1];
        for alpha in 0..n {
            let row = &dist[alpha * n..(alpha + 1) * n];
            for beta in 0..n {
                let i = row[beta];
                let (mut c, mut a, mut b) = (0, 0, 0);
                for &gamma in &self.neighbors[beta] {
                    let j = row[gamma];
                    if j + 1 == i {
                        c += 1;
                    } else if j == i {
                        a += 1;
                    } else {
                        b += 1;
                    }
                }
                match seen[i] {
                    None => seen[i] = Some(((alpha, beta), (c, a, b))),
                    Some((pair, counts)) if counts != (c, a, b) => {
                        return Err(Error::NotDistanceRegular(RegularityWitness {
                            distance: i,
                            first: pair,
                            second: (alpha, beta),
                            counts: [counts, (c, a, b)],
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
        let counts: Vec<(usize, usize, usize)> =
            seen.into_iter().map(|s| s.map(|(_, c)| c).unwrap_or_default()).collect();
        let b = counts[..diameter].iter().map(|&(_, _, b)| b).collect();
        let c = counts[1..].iter().map(|&(c, _, _)| c).collect();
        IntersectionArray::new(b, c)
    }

    /// Tests whether the stratification space is invariant under the
    /// raising, lowering and level parts of the adjacency matrix: every
    /// vertex of a shell must see the same number of neighbours one shell
    /// down, in its own shell, and one shell up.
    pub fn classify_qd(&self, strat: &Stratification) -> QdClass {
        let depth = strat.depth();
        let mut counts = ShellCounts {
            down: vec![0; depth + 1],
            within: vec![0; depth + 1],
            up: vec![0; depth + 1],
        };
        for (k, shell) in strat.shells.iter().enumerate() {
            for (pos, &v) in shell.iter().enumerate() {
                let (mut down, mut within, mut up) = (0, 0, 0);
                for &w in &self.neighbors[v] {
                    match strat.shell_of[w] {
                        s if s + 1 == k => down += 1,
                        s if s == k => within += 1,
                        _ => up += 1,
                    }
                }
                if pos == 0 {
                    counts.down[k] = down;
                    counts.within[k] = within;
                    counts.up[k] = up;
                } else if (counts.down[k], counts.within[k], counts.up[k]) != (down, within, up) {
                    return QdClass::NonQd { shell: k };
                }
            }
        }
        QdClass::Qd(counts)
    }
}

/// Breadth-first shells around an origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    pub origin: usize,
    pub shells: Vec<Vec<usize>>,
    pub kappa: Vec<usize>,
    pub shell_of: Vec<usize>,
}

impl Stratification {
    /// Index of the outermost shell.
    pub fn depth(&self) -> usize {
        self.shells.len() - 1
    }

    /// Normalised uniform superposition over shell `l`.
    pub fn unit_vector(&self, l: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.shell_of.len()];
        let w = 1.0 / (self.kappa[l] as f64).sqrt();
        for &a in &self.shells[l] {
            v[a] = w;
        }
        v
    }
}

/// Per-shell neighbour counts of a QD stratification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellCounts {
    pub down: Vec<usize>,
    pub within: Vec<usize>,
    pub up: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QdClass {
    Qd(ShellCounts),
    NonQd { shell: usize },
}

impl QdClass {
    pub fn is_qd(&self) -> bool {
        matches!(self, QdClass::Qd(_))
    }
}

/// `{b_0, ..., b_{d-1}; c_1, ..., c_d}` of a distance-regular graph, with
/// the derived `a_i` and valency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionArray {
    d: usize,
    valency: usize,
    b: Vec<usize>,
    c: Vec<usize>,
    a: Vec<usize>,
}

impl IntersectionArray {
    /// Validates `a_i = k - b_i - c_i >= 0`, `c_1 = 1`, positive `b_i`, `c_i`
    /// and integral shell sizes.
    pub fn new(b: Vec<usize>, c: Vec<usize>) -> Result<Self> {
        let d = b.len();
        let bad = |msg: String| Err(Error::InvalidIntersectionArray(msg));
        if d == 0 || c.len() != d {
            return bad(format!("need equal non-empty b and c, got {b:?} and {c:?}"));
        }
        if c[0] != 1 {
            return bad(format!("c_1 must be 1, got {}", c[0]));
        }
        if b.contains(&0) || c.contains(&0) {
            return bad("b_i and c_i must be positive".into());
        }
        let valency = b[0];
        let mut a = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let bi = if i < d { b[i] } else { 0 };
            let ci = if i > 0 { c[i - 1] } else { 0 };
            match valency.checked_sub(bi + ci) {
                Some(ai) => a.push(ai),
                None => return bad(format!("b_{i} + c_{i} exceeds the valency {valency}")),
            }
        }
        let mut size: u128 = 1;
        for i in 1..=d {
            let num = size * b[i - 1] as u128;
            if num % c[i - 1] as u128 != 0 {
                return bad(format!("shell size k_{i} = {num}/{} is not integral", c[i - 1]));
            }
            size = num / c[i - 1] as u128;
        }
        Ok(IntersectionArray {
            d,
            valency,
            b,
            c,
            a,
        })
    }

    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn valency(&self) -> usize {
        self.valency
    }

    /// `b_0..b_{d-1}`
    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// `c_1..c_d`
    pub fn c(&self) -> &[usize] {
        &self.c
    }

    /// `a_0..a_d`
    pub fn a(&self) -> &[usize] {
        &self.a
    }

    /// Shell sizes from `k_i c_i = k_{i-1} b_{i-1}`.
    pub fn shell_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![1u64];
        for i in 1..=self.d {
            let prev = sizes[i - 1];
            sizes.push(prev * self.b[i - 1] as u64 / self.c[i - 1] as u64);
        }
        sizes
    }

    pub fn vertex_count(&self) -> u64 {
        self.shell_sizes().iter().sum()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}
