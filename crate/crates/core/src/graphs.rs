//! Finite simplicial graphs, induced L₃/C₄ detection, decomposition into
//! cones and disjoint unions, and the graph bilinear map.
//!
//! Vertices are 0-based in the API and 1-based in every text format.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bilform::AugBilinearMap;
use crate::fpla::{FplaError, PrimeField};

/// Largest vertex count accepted by the bitmask representation.
pub const MAX_VERTICES: usize = 64;
/// Largest vertex count for [`enumerate_graphs`].
pub const MAX_ENUM_VERTICES: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0} vertices exceeds the supported maximum of {1}")]
    TooLarge(usize, usize),
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error(transparent)]
    Linear(#[from] FplaError),
}

/// An undirected graph without loops or multiple edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimplicialGraph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n, MAX_VERTICES));
        }
        Ok(SimplicialGraph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 0-based edge pairs; loops, repeats and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            if a == b || a >= n || b >= n || g.has_edge(a, b) {
                return Err(GraphError::InvalidEdge(a, b));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// `n` vertices forming a line (L_{n-1}).
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    /// `n ≥ 3` vertices forming a circle (C_n).
    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n).expect("size checked by caller");
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    /// Neighbour bitmask of `v`.
    #[inline]
    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Edges `(a, b)` with `a < b`, sorted lexicographically. This order fixes
    /// the W-basis of [`graph_bilinear`].
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    fn all_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// The graph with vertex `i` renamed to `sigma[i]`.
    pub fn relabel(&self, sigma: &[usize]) -> SimplicialGraph {
        let edges: Vec<_> = self.edges().into_iter().map(|(a, b)| (sigma[a], sigma[b])).collect();
        SimplicialGraph::from_edges(self.n, &edges).expect("sigma is a permutation")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (a, b) in self.edges() {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }
}

impl FromStr for SimplicialGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s)
    }
}

/// Parses the GRAPH format: a vertex count, then one `i j` line per edge
/// (1-based). Lines starting with `#` are comments.
pub fn parse_graph(text: &str) -> Result<SimplicialGraph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let perr = |line, msg: String| GraphError::Parse { line, msg };
    let (ln, first) = lines.next().ok_or_else(|| perr(1, "missing vertex count".into()))?;
    let n: usize = first.parse().map_err(|_| perr(ln, format!("bad vertex count `{first}`")))?;
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n, MAX_VERTICES));
    }
    let mut g = SimplicialGraph::empty(n)?;
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [a, b] = toks[..] else {
            return Err(perr(ln, format!("expected `i j`, found `{l}`")));
        };
        let parse = |t: &str| -> Result<usize, GraphError> {
            let v: usize = t.parse().map_err(|_| perr(ln, format!("bad vertex `{t}`")))?;
            if v == 0 || v > n {
                return Err(perr(ln, format!("vertex {v} out of range 1..={n}")));
            }
            Ok(v - 1)
        };
        let (a, b) = (parse(a)?, parse(b)?);
        if a == b {
            return Err(perr(ln, format!("loop at vertex {}", a + 1)));
        }
        if g.has_edge(a, b) {
            return Err(perr(ln, format!("duplicate edge {} {}", a + 1, b + 1)));
        }
        g.add_edge(a, b);
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForbiddenKind {
    L3,
    C4,
}

/// Four vertices inducing a path (in path order) or a 4-cycle (in cycle
/// order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForbiddenWitness {
    pub kind: ForbiddenKind,
    pub vertices: [usize; 4],
}

impl ForbiddenWitness {
    /// Whether the induced edge set on the four vertices is exactly the
    /// path / cycle pattern.
    pub fn verify(&self, g: &SimplicialGraph) -> bool {
        let v = self.vertices;
        let mut distinct = v.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 4 || v.iter().any(|&x| x >= g.n()) {
            return false;
        }
        let mut expected = [[false; 4]; 4];
        for i in 0..3 {
            expected[i][i + 1] = true;
        }
        if self.kind == ForbiddenKind::C4 {
            expected[0][3] = true;
        }
        (0..4).all(|i| (i + 1..4).all(|j| g.has_edge(v[i], v[j]) == expected[i][j]))
    }
}

impl fmt::Display for ForbiddenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ForbiddenKind::L3 => "L3",
            ForbiddenKind::C4 => "C4",
        };
        let [a, b, c, d] = self.vertices;
        write!(f, "{kind} [{} {} {} {}]", a + 1, b + 1, c + 1, d + 1)
    }
}

/// Examines every 4-subset in lexicographic order and returns the first one
/// inducing L₃ or C₄.
pub fn find_forbidden(g: &SimplicialGraph) -> Option<ForbiddenWitness> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if let Some(w) = classify_quad(g, [a, b, c, d]) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn classify_quad(g: &SimplicialGraph, q: [usize; 4]) -> Option<ForbiddenWitness> {
    let mut deg = [0usize; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(q[i], q[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    let walk = |start: usize| -> [usize; 4] {
        // follow the unique unvisited neighbour, preferring the smaller one
        let mut order = [start; 4];
        let mut visited = [false; 4];
        visited[start] = true;
        for k in 1..4 {
            let prev = order[k - 1];
            let next = (0..4)
                .filter(|&j| !visited[j] && g.has_edge(q[prev], q[j]))
                .min_by_key(|&j| q[j])
                .expect("degree pattern guarantees a continuation");
            visited[next] = true;
            order[k] = next;
        }
        order.map(|i| q[i])
    };
    match edges {
        3 if { let mut d = deg; d.sort_unstable(); d == [1, 1, 2, 2] } => {
            // start at the endpoint with the smaller index
            let start = (0..4).find(|&i| deg[i] == 1).expect("path has endpoints");
            Some(ForbiddenWitness { kind: ForbiddenKind::L3, vertices: walk(start) })
        }
        4 if deg == [2, 2, 2, 2] => {
            Some(ForbiddenWitness { kind: ForbiddenKind::C4, vertices: walk(0) })
        }
        _ => None,
    }
}

/// A witness that a graph is built from single vertices by disjoint unions
/// (free products) and adjoining a universal vertex (direct product with Z_p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstructionTree {
    Leaf(usize),
    /// A subtree joined to a new apex vertex adjacent to all of it.
    Cone(Box<ConstructionTree>, usize),
    Free(Vec<ConstructionTree>),
}

impl ConstructionTree {
    /// Vertex labels in basis order: leaves and apexes in the order the tree
    /// evaluation introduces them (children first, apex last).
    pub fn vertex_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vertices(&mut out);
        out
    }

    fn collect_vertices(&self, out: &mut Vec<usize>) {
        match self {
            ConstructionTree::Leaf(v) => out.push(*v),
            ConstructionTree::Cone(child, apex) => {
                child.collect_vertices(out);
                out.push(*apex);
            }
            ConstructionTree::Free(children) => {
                for c in children {
                    c.collect_vertices(out);
                }
            }
        }
    }

    /// The graph this tree describes on vertices `0..n`.
    pub fn to_graph(&self, n: usize) -> Result<SimplicialGraph, GraphError> {
        let order = self.vertex_order();
        if let Some(&bad) = order.iter().find(|&&v| v >= n) {
            return Err(GraphError::InvalidEdge(bad, bad));
        }
        let mut g = SimplicialGraph::empty(n)?;
        self.add_edges(&mut g);
        Ok(g)
    }

    fn add_edges(&self, g: &mut SimplicialGraph) {
        match self {
            ConstructionTree::Leaf(_) => {}
            ConstructionTree::Cone(child, apex) => {
                child.add_edges(g);
                for v in child.vertex_order() {
                    g.add_edge(v, *apex);
                }
            }
            ConstructionTree::Free(children) => {
                for c in children {
                    c.add_edges(g);
                }
            }
        }
    }

    /// Parses the TREE s-expression format: `(v <label>)`, `(* <tree> <label>)`,
    /// `(+ <tree> <tree> ...)`, labels being 1-based vertex numbers.
    pub fn parse(text: &str) -> Result<ConstructionTree, GraphError> {
        let tokens = tokenize_sexpr(text);
        let mut pos = 0;
        let tree = parse_tree_at(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(GraphError::Parse { line: 1, msg: format!("trailing input `{}`", tokens[pos]) });
        }
        let mut labels = tree.vertex_order();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::Parse { line: 1, msg: "repeated vertex label".into() });
        }
        Ok(tree)
    }
}

impl fmt::Display for ConstructionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionTree::Leaf(v) => write!(f, "(v {})", v + 1),
            ConstructionTree::Cone(child, apex) => write!(f, "(* {child} {})", apex + 1),
            ConstructionTree::Free(children) => {
                write!(f, "(+")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for ConstructionTree {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConstructionTree::parse(s)
    }
}

fn tokenize_sexpr(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for ch in line.chars() {
            match ch {
                '(' | ')' => {
                    if !cur.is_empty() {
                        out.push(std::mem::take(&mut cur));
                    }
                    out.push(ch.to_string());
                }
                c if c.is_whitespace() => {
                    if !cur.is_empty() {
                        out.push(std::mem::take(&mut cur));
                    }
                }
                c => cur.push(c),
            }
        }
        if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    out
}

fn parse_tree_at(tokens: &[String], pos: &mut usize) -> Result<ConstructionTree, GraphError> {
    let err = |msg: String| GraphError::Parse { line: 1, msg };
    let next = |pos: &mut usize| -> Result<String, GraphError> {
        let t = tokens.get(*pos).cloned().ok_or_else(|| err("unexpected end of tree".into()))?;
        *pos += 1;
        Ok(t)
    };
    let label = |t: &str| -> Result<usize, GraphError> {
        match t.parse::<usize>() {
            Ok(v) if v >= 1 && v <= MAX_VERTICES => Ok(v - 1),
            _ => Err(err(format!("bad vertex label `{t}`"))),
        }
    };
    let open = next(pos)?;
    if open != "(" {
        return Err(err(format!("expected `(`, found `{open}`")));
    }
    let head = next(pos)?;
    let tree = match head.as_str() {
        "v" => ConstructionTree::Leaf(label(&next(pos)?)?),
        "*" => {
            let child = parse_tree_at(tokens, pos)?;
            ConstructionTree::Cone(Box::new(child), label(&next(pos)?)?)
        }
        "+" => {
            let mut children = Vec::new();
            while tokens.get(*pos).map(String::as_str) == Some("(") {
                children.push(parse_tree_at(tokens, pos)?);
            }
            if children.len() < 2 {
                return Err(err("free product needs at least two children".into()));
            }
            ConstructionTree::Free(children)
        }
        other => return Err(err(format!("unknown node `{other}`"))),
    };
    let close = next(pos)?;
    if close != ")" {
        return Err(err(format!("expected `)`, found `{close}`")));
    }
    Ok(tree)
}

/// Result of [`decompose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Tree(ConstructionTree),
    Forbidden(ForbiddenWitness),
}

/// Splits disconnected graphs into components and connected graphs at their
/// smallest universal vertex. A connected induced subgraph without a
/// universal vertex means the graph is not trivially perfect; the L₃/C₄
/// witness is then returned instead.
pub fn decompose(g: &SimplicialGraph) -> Decomposition {
    if g.n() == 0 {
        // nothing to build; no 4-subsets either
        return Decomposition::Tree(ConstructionTree::Free(Vec::new()));
    }
    match decompose_mask(g, g.all_mask()) {
        Some(t) => Decomposition::Tree(t),
        None => Decomposition::Forbidden(
            find_forbidden(g).expect("a connected induced subgraph without universal vertex contains L3 or C4"),
        ),
    }
}

fn decompose_mask(g: &SimplicialGraph, mask: u64) -> Option<ConstructionTree> {
    if mask.count_ones() == 1 {
        return Some(ConstructionTree::Leaf(mask.trailing_zeros() as usize));
    }
    let comps = components(g, mask);
    if comps.len() > 1 {
        let children = comps.into_iter().map(|c| decompose_mask(g, c)).collect::<Option<Vec<_>>>()?;
        return Some(ConstructionTree::Free(children));
    }
    let universal = bits(mask).find(|&v| (mask & !(1 << v)) & !g.neighbours(v) == 0)?;
    let child = decompose_mask(g, mask & !(1 << universal))?;
    Some(ConstructionTree::Cone(Box::new(child), universal))
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

/// Connected components of the induced subgraph on `mask`, ordered by their
/// smallest vertex.
fn components(g: &SimplicialGraph, mask: u64) -> Vec<u64> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = g.neighbours(v) & mask & !comp;
            comp |= new;
            frontier |= new;
        }
        rest &= !comp;
        out.push(comp);
    }
    out
}

/// The augmented bilinear map of Γ: V on the vertices, W on the edges in
/// lexicographic order, `b(v_k, v_l) = e` and `b(v_l, v_k) = -e` for each
/// edge `e = {k, l}` with `k < l`, every other product zero, `ε = 0`.
pub fn graph_bilinear(g: &SimplicialGraph, p: u8) -> Result<AugBilinearMap, GraphError> {
    let field = PrimeField::new(p as u64)?;
    let edges = g.edges();
    let (n, m) = (g.n(), edges.len());
    let mut map = AugBilinearMap::zero(p, n, m);
    for (e, &(k, l)) in edges.iter().enumerate() {
        map.entry_mut(k, l)[e] = 1;
        map.entry_mut(l, k)[e] = field.neg(1);
    }
    let vlabels = (0..n).map(|i| format!("v{}", i + 1)).collect();
    let wlabels = edges.iter().map(|(a, b)| format!("(v{},v{})", a + 1, b + 1)).collect();
    Ok(map.with_labels(Some(vlabels), Some(wlabels)))
}

/// Colex position of the pair `(a, b)`, `a < b`.
#[inline]
fn pair_bit(a: usize, b: usize) -> usize {
    b * (b - 1) / 2 + a
}

fn from_code(n: usize, code: u64) -> SimplicialGraph {
    let mut g = SimplicialGraph::empty(n).expect("n <= MAX_ENUM_VERTICES");
    for b in 1..n {
        for a in 0..b {
            if code >> pair_bit(a, b) & 1 == 1 {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// All labeled graphs on `n` vertices, or one representative per
/// isomorphism class when `up_to_iso` is set.
///
/// A labeled graph is encoded by its adjacency bits over the pairs in colex
/// order `(0,1), (0,2), (1,2), (0,3), ...`; the class representative is the
/// member whose bit string is lexicographically smallest.
pub fn enumerate_graphs(
    n: usize,
    up_to_iso: bool,
) -> Result<Box<dyn Iterator<Item = SimplicialGraph> + Send>, GraphError> {
    if n > MAX_ENUM_VERTICES {
        return Err(GraphError::TooLarge(n, MAX_ENUM_VERTICES));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let all = (0..1u64 << pairs).map(move |code| from_code(n, code));
    if up_to_iso {
        Ok(Box::new(all.filter(is_canonical)))
    } else {
        Ok(Box::new(all))
    }
}

/// Whether no relabeling of `g` yields a lexicographically smaller adjacency
/// bit string. Relabelings are built one position at a time; position `k`
/// fixes exactly the bits of column `k`, so prefixes can be compared early.
pub fn is_canonical(g: &SimplicialGraph) -> bool {
    fn search(g: &SimplicialGraph, perm: &mut Vec<usize>, used: u64) -> bool {
        let k = perm.len();
        if k == g.n() {
            return true;
        }
        for cand in 0..g.n() {
            if used >> cand & 1 == 1 {
                continue;
            }
            let mut cmp = std::cmp::Ordering::Equal;
            for i in 0..k {
                let permuted = g.has_edge(perm[i], cand);
                let original = g.has_edge(i, k);
                if permuted != original {
                    cmp = permuted.cmp(&original);
                    break;
                }
            }
            match cmp {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Equal => {
                    perm.push(cand);
                    let ok = search(g, perm, used | 1 << cand);
                    perm.pop();
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
    search(g, &mut Vec::with_capacity(g.n()), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpla::FpVec;

    #[test]
    fn parse_examples() {
        let l3 = parse_graph("4\n1 2\n2 3\n3 4").unwrap();
        assert_eq!(l3, SimplicialGraph::path(4));
        let single = parse_graph("1").unwrap();
        assert_eq!((single.n(), single.edge_count()), (1, 0));
        let err = parse_graph("3\n1 1").unwrap_err();
        assert_eq!(err, GraphError::Parse { line: 2, msg: "loop at vertex 1".into() });
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_graph("# c\n3\n1 2\n2 1"), Err(GraphError::Parse { line: 4, .. })));
        assert!(matches!(parse_graph("3\n1 4"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3\n1 2 3"), Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn forbidden_examples() {
        let l3 = find_forbidden(&SimplicialGraph::path(4)).unwrap();
        assert_eq!(l3, ForbiddenWitness { kind: ForbiddenKind::L3, vertices: [0, 1, 2, 3] });
        let c4 = find_forbidden(&SimplicialGraph::cycle(4)).unwrap();
        assert_eq!(c4, ForbiddenWitness { kind: ForbiddenKind::C4, vertices: [0, 1, 2, 3] });
        assert_eq!(find_forbidden(&SimplicialGraph::complete(4)), None);
        assert_eq!(l3.to_string(), "L3 [1 2 3 4]");
    }

    #[test]
    fn witness_orders_scrambled_path() {
        // path 3 - 1 - 4 - 2
        let g = SimplicialGraph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let w = find_forbidden(&g).unwrap();
        assert_eq!(w.vertices, [1, 3, 0, 2]);
        assert!(w.verify(&g));
    }

    #[test]
    fn decompose_examples() {
        let single = SimplicialGraph::empty(1).unwrap();
        assert_eq!(decompose(&single), Decomposition::Tree(ConstructionTree::Leaf(0)));
        let p3 = SimplicialGraph::path(3);
        let expected = ConstructionTree::Cone(
            Box::new(ConstructionTree::Free(vec![ConstructionTree::Leaf(0), ConstructionTree::Leaf(2)])),
            1,
        );
        assert_eq!(decompose(&p3), Decomposition::Tree(expected.clone()));
        assert_eq!(expected.to_string(), "(* (+ (v 1) (v 3)) 2)");
        assert_eq!(expected.vertex_order(), vec![0, 2, 1]);
        assert_eq!(
            decompose(&SimplicialGraph::path(4)),
            Decomposition::Forbidden(ForbiddenWitness { kind: ForbiddenKind::L3, vertices: [0, 1, 2, 3] })
        );
    }

    #[test]
    fn tree_text_round_trip() {
        let t: ConstructionTree = "(* (+ (v 1) (v 3)) 2)".parse().unwrap();
        assert_eq!(t.to_string(), "(* (+ (v 1) (v 3)) 2)");
        assert_eq!(t.to_graph(3).unwrap(), SimplicialGraph::path(3));
        assert!("(+ (v 1))".parse::<ConstructionTree>().is_err());
        assert!("(+ (v 1) (v 1))".parse::<ConstructionTree>().is_err());
        assert!("(* (v 1) 0)".parse::<ConstructionTree>().is_err());
        assert!("(v 1) (v 2)".parse::<ConstructionTree>().is_err());
    }

    #[test]
    fn graph_bilinear_on_path() {
        let b = graph_bilinear(&SimplicialGraph::path(4), 2).unwrap();
        assert_eq!((b.n(), b.m()), (4, 3));
        for i in 0..4 {
            for j in 0..4 {
                let mut expected = vec![0u8; 3];
                if i + 1 == j {
                    expected[i] = 1;
                } else if j + 1 == i {
                    expected[j] = 1;
                }
                assert_eq!(b.product(i, j).coords(), &expected[..], "({i},{j})");
            }
        }
        let v = FpVec::new(2, vec![0, 1, 1, 0]).unwrap();
        let u = FpVec::new(2, vec![1, 1, 0, 0]).unwrap();
        assert_eq!(b.eval(&v, &u).coords(), &[1, 1, 0]);
        assert!(b.validate().is_empty());
        assert!(b.is_surjective());
    }

    #[test]
    fn edgeless_graph_map_is_zero() {
        let b = graph_bilinear(&SimplicialGraph::empty(2).unwrap(), 3).unwrap();
        assert_eq!((b.n(), b.m()), (2, 0));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(4, false).unwrap().count(), 64);
        assert_eq!(enumerate_graphs(5, false).unwrap().count(), 1024);
        assert_eq!(enumerate_graphs(4, true).unwrap().count(), 11);
        assert!(enumerate_graphs(8, false).is_err());
    }

    #[test]
    fn canonical_representatives_are_canonical() {
        assert!(is_canonical(&SimplicialGraph::empty(3).unwrap()));
        // the single-edge graph on 3 vertices is smallest with the edge last
        assert!(!is_canonical(&SimplicialGraph::from_edges(3, &[(0, 1)]).unwrap()));
        assert!(is_canonical(&SimplicialGraph::from_edges(3, &[(1, 2)]).unwrap()));
    }
}
