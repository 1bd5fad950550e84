//! Incidence graphs of CNF formulas, path decompositions, width
//! verification, and decomposition-derived variable orders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::cnf::{CnfFormula, Var};

/// An undirected graph over `u32` vertex ids.
///
/// For the primal graph of a formula, vertices are variable ids. For the
/// bipartite variable-clause incidence graph, variables keep their ids and
/// clause `j` becomes vertex `num_vars + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<u32>,
    adj: BTreeMap<u32, BTreeSet<u32>>,
}

impl Graph {
    pub fn new() -> Graph {
        Graph { vertices: BTreeSet::new(), adj: BTreeMap::new() }
    }

    pub fn add_vertex(&mut self, v: u32) {
        self.vertices.insert(v);
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        if u == v {
            return;
        }
        self.add_vertex(u);
        self.add_vertex(v);
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertices.iter().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        self.vertices.contains(&v)
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.iter().copied().map(move |v| (u, v)))
            .filter(|&(u, v)| u < v)
    }

    pub fn num_edges(&self) -> usize {
        self.edges().count()
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new()
    }
}

/// Primal graph: one vertex per occurring variable, an edge wherever two
/// variables share a clause.
pub fn build_primal_graph(f: &CnfFormula) -> Graph {
    let mut g = Graph::new();
    for v in f.occurring_vars() {
        g.add_vertex(v.0);
    }
    for c in f.clauses() {
        let vars: Vec<Var> = c.vars().collect();
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                g.add_edge(vars[i].0, vars[j].0);
            }
        }
    }
    g
}

/// Bipartite variable-clause incidence graph on `X ∪ C`: variable vertices
/// keep their ids, clause `j` becomes vertex `f.num_vars() + j`, with an edge
/// `(x, C)` iff `x ∈ C`.
pub fn build_bipartite_incidence(f: &CnfFormula) -> Graph {
    let mut g = Graph::new();
    for v in f.occurring_vars() {
        g.add_vertex(v.0);
    }
    for (id, c) in f.iter() {
        let cv = clause_vertex(f, id);
        g.add_vertex(cv);
        for v in c.vars() {
            g.add_edge(v.0, cv);
        }
    }
    g
}

/// The vertex id representing clause `id` in the bipartite incidence graph.
pub fn clause_vertex(f: &CnfFormula, id: u32) -> u32 {
    f.num_vars() + id
}

/// A path decomposition: an ordered sequence of vertex bags.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PathDecomposition {
    pub bags: Vec<BTreeSet<u32>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<BTreeSet<u32>>) -> PathDecomposition {
        PathDecomposition { bags }
    }

    /// Width = max bag size − 1 (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Serializes to the decomposition file format:
    /// `p pd <num_vertices> <num_bags>` then one zero-terminated line per bag.
    pub fn to_file_format(&self) -> String {
        let verts: BTreeSet<u32> = self.bags.iter().flatten().copied().collect();
        let mut out = format!("p pd {} {}\n", verts.len(), self.bags.len());
        for bag in &self.bags {
            for v in bag {
                out.push_str(&format!("{v} "));
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn from_file_format(text: &str) -> Result<PathDecomposition, String> {
        let mut bags = Vec::new();
        let mut declared: Option<usize> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[0] != "p" || parts[1] != "pd" {
                    return Err(format!("malformed decomposition header: {line}"));
                }
                declared = Some(parts[3].parse().map_err(|_| "bad bag count".to_string())?);
                continue;
            }
            let mut bag = BTreeSet::new();
            let mut terminated = false;
            for tok in line.split_whitespace() {
                let v: u32 = tok.parse().map_err(|_| format!("bad vertex id {tok}"))?;
                if v == 0 {
                    terminated = true;
                    break;
                }
                bag.insert(v);
            }
            if !terminated {
                return Err("bag line not terminated by 0".to_string());
            }
            bags.push(bag);
        }
        if let Some(d) = declared {
            if d != bags.len() {
                return Err(format!("bag count mismatch: declared {d}, found {}", bags.len()));
            }
        } else {
            return Err("missing `p pd` header".to_string());
        }
        Ok(PathDecomposition { bags })
    }
}

/// First violated path-decomposition condition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionViolation {
    #[error("vertex {0} not covered by any bag")]
    UncoveredVertex(u32),
    #[error("edge {{{0}, {1}}} not contained in any bag")]
    UncoveredEdge(u32, u32),
    #[error("bags containing vertex {0} do not form a contiguous interval")]
    NonContiguousVertex(u32),
}

/// Verifies the three path-decomposition conditions against `g` and returns
/// the width, or the first violated condition with a witness.
///
/// Extra vertices in bags are allowed (they only increase the width), but
/// contiguity is enforced for every vertex appearing in any bag.
pub fn verify_path_decomposition(
    g: &Graph,
    d: &PathDecomposition,
) -> Result<usize, DecompositionViolation> {
    let mut first: BTreeMap<u32, usize> = BTreeMap::new();
    let mut last: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            first.entry(v).or_insert(i);
            last.insert(v, i);
        }
    }
    for v in g.vertices() {
        if !first.contains_key(&v) {
            return Err(DecompositionViolation::UncoveredVertex(v));
        }
    }
    for (u, v) in g.edges() {
        if !d.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(DecompositionViolation::UncoveredEdge(u, v));
        }
    }
    for (&v, &fi) in &first {
        let li = last[&v];
        for i in fi..=li {
            if !d.bags[i].contains(&v) {
                return Err(DecompositionViolation::NonContiguousVertex(v));
            }
        }
    }
    Ok(d.width())
}

/// A total order over variables (a permutation of the formula's variables).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarOrder {
    pub vars: Vec<Var>,
}

impl VarOrder {
    pub fn new(vars: Vec<Var>) -> VarOrder {
        VarOrder { vars }
    }

    /// Ascending variable ids `1..=num_vars`.
    pub fn identity(num_vars: u32) -> VarOrder {
        VarOrder { vars: (1..=num_vars).map(Var).collect() }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Position of each variable in the order, indexed by variable id.
    pub fn positions(&self, num_vars: u32) -> Vec<Option<usize>> {
        let mut pos = vec![None; num_vars as usize + 1];
        for (i, v) in self.vars.iter().enumerate() {
            pos[v.index()] = Some(i);
        }
        pos
    }

    /// One line of space-separated variable ids.
    pub fn to_file_format(&self) -> String {
        let ids: Vec<String> = self.vars.iter().map(|v| v.0.to_string()).collect();
        format!("{}\n", ids.join(" "))
    }

    pub fn from_file_format(text: &str) -> Result<VarOrder, String> {
        let mut vars = Vec::new();
        for tok in text.split_whitespace() {
            let v: u32 = tok.parse().map_err(|_| format!("bad variable id {tok}"))?;
            if v == 0 {
                return Err("variable ids are 1-based".to_string());
            }
            vars.push(Var(v));
        }
        Ok(VarOrder { vars })
    }
}

impl fmt::Display for VarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_file_format().trim_end())
    }
}

/// Derives the branching order from a decomposition: variables sorted by
/// ascending `r(v) = max { i : v ∈ B_i }`, ties broken by ascending id.
pub fn order_from_decomposition(d: &PathDecomposition) -> VarOrder {
    let mut r: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            r.insert(v, i + 1);
        }
    }
    let mut vars: Vec<(usize, u32)> = r.into_iter().map(|(v, i)| (i, v)).collect();
    vars.sort();
    VarOrder { vars: vars.into_iter().map(|(_, v)| Var(v)).collect() }
}

/// A two-layer partial order `before ≺ after` over variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOrder {
    pub before: BTreeSet<Var>,
    pub after: BTreeSet<Var>,
}

impl PartialOrder {
    pub fn new(before: BTreeSet<Var>, after: BTreeSet<Var>) -> PartialOrder {
        let po = PartialOrder { before, after };
        debug_assert!(po.before.is_disjoint(&po.after), "before and after must be disjoint");
        po
    }

    /// `x <ids> 0` line for the before-set, `y <ids> 0` line for the after-set.
    pub fn to_file_format(&self) -> String {
        let fmt_set = |tag: &str, s: &BTreeSet<Var>| {
            let ids: Vec<String> = s.iter().map(|v| v.0.to_string()).collect();
            if ids.is_empty() {
                format!("{tag} 0\n")
            } else {
                format!("{tag} {} 0\n", ids.join(" "))
            }
        };
        format!("{}{}", fmt_set("x", &self.before), fmt_set("y", &self.after))
    }

    pub fn from_file_format(text: &str) -> Result<PartialOrder, String> {
        let mut before = BTreeSet::new();
        let mut after = BTreeSet::new();
        let mut seen_x = false;
        let mut seen_y = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let tag = toks.next().unwrap();
            let target = match tag {
                "x" => {
                    seen_x = true;
                    &mut before
                }
                "y" => {
                    seen_y = true;
                    &mut after
                }
                _ => return Err(format!("unknown partial-order line tag {tag}")),
            };
            for tok in toks {
                let v: u32 = tok.parse().map_err(|_| format!("bad variable id {tok}"))?;
                if v == 0 {
                    break;
                }
                target.insert(Var(v));
            }
        }
        if !seen_x || !seen_y {
            return Err("partial-order file needs one `x` line and one `y` line".to_string());
        }
        if !before.is_disjoint(&after) {
            return Err("before and after sets overlap".to_string());
        }
        Ok(PartialOrder { before, after })
    }
}

/// A deterministic greedy path decomposition via vertex separation: place
/// vertices one by one, always choosing the vertex that minimizes the
/// resulting boundary (ties by ascending id), then convert the linear order
/// to bags. Always valid; no optimality guarantee.
pub fn heuristic_path_decomposition(g: &Graph) -> PathDecomposition {
    let verts: Vec<u32> = g.vertices().collect();
    if verts.is_empty() {
        return PathDecomposition::new(Vec::new());
    }
    let mut placed: BTreeSet<u32> = BTreeSet::new();
    let mut order: Vec<u32> = Vec::with_capacity(verts.len());

    let boundary_after = |placed: &BTreeSet<u32>, cand: u32| -> usize {
        let mut boundary = 0;
        for &u in placed.iter().chain(std::iter::once(&cand)) {
            if g.neighbors(u).any(|w| w != cand && !placed.contains(&w)) {
                boundary += 1;
            }
        }
        boundary
    };

    while order.len() < verts.len() {
        let mut best: Option<(usize, u32)> = None;
        for &v in &verts {
            if placed.contains(&v) {
                continue;
            }
            let b = boundary_after(&placed, v);
            if best.map_or(true, |(bb, bv)| (b, v) < (bb, bv)) {
                best = Some((b, v));
            }
        }
        let (_, v) = best.unwrap();
        placed.insert(v);
        order.push(v);
    }

    decomposition_from_order(g, &order)
}

/// Converts a vertex order to a path decomposition: bag `i` holds vertex
/// `order[i]` plus every earlier vertex with a neighbor at position ≥ `i`.
pub fn decomposition_from_order(g: &Graph, order: &[u32]) -> PathDecomposition {
    let pos: BTreeMap<u32, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut bags = Vec::with_capacity(order.len());
    for (i, &v) in order.iter().enumerate() {
        let mut bag = BTreeSet::new();
        bag.insert(v);
        for (&u, &pu) in &pos {
            if pu < i && g.neighbors(u).any(|w| pos[&w] >= i) {
                bag.insert(u);
            }
        }
        bags.push(bag);
    }
    PathDecomposition::new(bags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::CnfFormula;

    fn path_graph(n: u32) -> Graph {
        let mut g = Graph::new();
        for v in 1..=n {
            g.add_vertex(v);
        }
        for v in 1..n {
            g.add_edge(v, v + 1);
        }
        g
    }

    fn complete_graph(n: u32) -> Graph {
        let mut g = Graph::new();
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn bag(vs: &[u32]) -> BTreeSet<u32> {
        vs.iter().copied().collect()
    }

    #[test]
    fn primal_graph_examples() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2], &[2, 3]]);
        let g = build_primal_graph(&f);
        assert_eq!(g.num_vertices(), 3);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(1, 2), (2, 3)]);

        let f = CnfFormula::from_dimacs_clauses(1, &[&[1]]);
        let g = build_primal_graph(&f);
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));

        // a clause induces a clique
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]);
        assert_eq!(build_primal_graph(&f).num_edges(), 3);
    }

    #[test]
    fn bipartite_incidence_examples() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        let g = build_bipartite_incidence(&f);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(1, 3), (2, 3)]);

        let f = CnfFormula::new(2);
        assert_eq!(build_bipartite_incidence(&f).num_edges(), 0);

        let f = CnfFormula::from_dimacs_clauses(2, &[&[1], &[1, 2]]);
        let g = build_bipartite_incidence(&f);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(1, 3), (1, 4), (2, 4)]);
    }

    #[test]
    fn verify_decomposition_examples() {
        let g = path_graph(3);
        let d = PathDecomposition::new(vec![bag(&[1, 2]), bag(&[2, 3])]);
        assert_eq!(verify_path_decomposition(&g, &d), Ok(1));

        let d = PathDecomposition::new(vec![bag(&[1, 2]), bag(&[3])]);
        assert_eq!(
            verify_path_decomposition(&g, &d),
            Err(DecompositionViolation::UncoveredEdge(2, 3))
        );

        let mut g = Graph::new();
        g.add_edge(1, 3);
        g.add_vertex(2);
        let d = PathDecomposition::new(vec![bag(&[1]), bag(&[2]), bag(&[1, 3])]);
        assert_eq!(
            verify_path_decomposition(&g, &d),
            Err(DecompositionViolation::NonContiguousVertex(1))
        );
    }

    #[test]
    fn order_from_decomposition_examples() {
        let d = PathDecomposition::new(vec![bag(&[1, 2]), bag(&[2, 3])]);
        assert_eq!(order_from_decomposition(&d), VarOrder::new(vec![Var(1), Var(2), Var(3)]));

        let d = PathDecomposition::new(vec![bag(&[1, 2, 3])]);
        assert_eq!(order_from_decomposition(&d), VarOrder::new(vec![Var(1), Var(2), Var(3)]));

        let d = PathDecomposition::new(vec![bag(&[3]), bag(&[1]), bag(&[2])]);
        assert_eq!(order_from_decomposition(&d), VarOrder::new(vec![Var(3), Var(1), Var(2)]));
    }

    #[test]
    fn heuristic_on_small_graphs() {
        let g = path_graph(5);
        let d = heuristic_path_decomposition(&g);
        let w = verify_path_decomposition(&g, &d).unwrap();
        assert!(w <= 2, "P5 heuristic width {w} too large");

        let g = complete_graph(4);
        let d = heuristic_path_decomposition(&g);
        assert_eq!(verify_path_decomposition(&g, &d), Ok(3));

        let mut g = Graph::new();
        for v in 1..=3 {
            g.add_vertex(v);
        }
        let d = heuristic_path_decomposition(&g);
        assert_eq!(verify_path_decomposition(&g, &d), Ok(0));
    }

    #[test]
    fn decomposition_file_round_trip() {
        let d = PathDecomposition::new(vec![bag(&[1, 2]), bag(&[2, 3])]);
        let text = d.to_file_format();
        assert!(text.starts_with("p pd 3 2\n"));
        assert_eq!(PathDecomposition::from_file_format(&text).unwrap(), d);
    }

    #[test]
    fn partial_order_file_round_trip() {
        let po = PartialOrder::new(bag(&[1, 2]).into_iter().map(Var).collect(), [Var(3)].into());
        let text = po.to_file_format();
        assert_eq!(text, "x 1 2 0\ny 3 0\n");
        assert_eq!(PartialOrder::from_file_format(&text).unwrap(), po);
    }

    #[test]
    fn var_order_file_round_trip() {
        let o = VarOrder::new(vec![Var(3), Var(1), Var(2)]);
        assert_eq!(VarOrder::from_file_format(&o.to_file_format()).unwrap(), o);
    }
}
