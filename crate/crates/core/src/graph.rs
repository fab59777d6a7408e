//! Simple graphs of zero-diagonal symmetric matrices, and the graph facts that
//! can be read off an epr-sequence.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::epr::{EprSequence, Letter};
use crate::error::{precondition, Error, Result};
use crate::matrix::IntMatrix;
use crate::pattern::fixed;

/// Undirected simple graph on vertices `1..=order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    order: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Dimension("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > order {
                    return Err(Error::IndexOutOfRange { index: w, order });
                }
            }
            if u == v {
                return Err(Error::Dimension(format!("loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::Dimension(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(Self { order, edges: set })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// 0-based adjacency lists.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order];
        for &(u, v) in &self.edges {
            adj[u - 1].push(v - 1);
            adj[v - 1].push(u - 1);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.order];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Two-colouring test.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; self.order];
        for start in 0..self.order {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &w in &adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Connected, 2-regular and of odd order: exactly the odd cycles.
    pub fn is_odd_cycle(&self) -> bool {
        self.order % 2 == 1
            && self.order >= 3
            && (1..=self.order).all(|v| self.degree(v) == 2)
            && self.is_connected()
    }

    /// Connected and 2-regular on all `order` vertices.
    pub fn is_cycle(&self) -> bool {
        self.order >= 3 && (1..=self.order).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.order);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, message: String| Error::Parse { line: line + 1, message };
        let (first, header) = lines.next().ok_or_else(|| bad(0, "missing order line".into()))?;
        let order: usize = header.trim().parse().map_err(|e| bad(first, format!("bad order: {e}")))?;
        let mut edges = Vec::new();
        for (no, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(bad(no, format!("expected `i j`, found `{}`", line.trim())));
            }
            let p = |t: &str| t.parse::<usize>().map_err(|e| bad(no, format!("bad vertex `{t}`: {e}")));
            edges.push((p(parts[0])?, p(parts[1])?));
        }
        Self::new(order, edges)
    }
}

/// Length of a shortest odd cycle, or infinity when there is none.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OddGirth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for OddGirth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(g) => write!(f, "{g}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for OddGirth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(g) => s.serialize_u64(*g as u64),
            Self::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for OddGirth {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(usize),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(g) => Ok(Self::Finite(g)),
            Raw::S(s) if s == "inf" => Ok(Self::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad odd girth `{s}`"))),
        }
    }
}

/// Edges at the nonzero off-diagonal entries of a symmetric zero-diagonal matrix.
pub fn graph_of(m: &IntMatrix) -> Result<Graph> {
    m.require_symmetric()?;
    let n = m.order();
    if let Some(i) = (1..=n).find(|&i| m.get(i, i) != 0) {
        return Err(Error::NonZeroDiagonal(i));
    }
    let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|&(i, j)| m.get(i, j) != 0);
    Graph::new(n, edges)
}

/// Breadth-first search from every vertex: an edge joining two vertices at the
/// same depth `d` closes an odd walk of length `2d + 1`, and the minimum of these
/// over all roots is the odd girth.
pub fn odd_girth_search(g: &Graph) -> OddGirth {
    let adj = g.adjacency();
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                } else if dist[w] == dist[u] {
                    best = best.min(2 * dist[u] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        OddGirth::Infinite
    } else {
        OddGirth::Finite(best)
    }
}

fn require_leading_n(seq: &EprSequence) -> Result<()> {
    if seq.letters()[0] != Letter::N {
        return Err(precondition("epr-sequence does not start with N (nonzero diagonal)"));
    }
    Ok(())
}

/// Smallest odd `j` with letter `j` different from `N`.
pub fn odd_girth_from_epr(seq: &EprSequence) -> Result<OddGirth> {
    require_leading_n(seq)?;
    Ok((1..=seq.len())
        .step_by(2)
        .find(|&j| seq.letter(j) != Letter::N)
        .map_or(OddGirth::Infinite, OddGirth::Finite))
}

pub const BIPARTITE_FORMS: [&str; 3] = ["NN(N)*", "(NS)*NA", "NS(NS)*N(N)*"];
pub const ODD_CYCLE_FORM: &str = "(NS)*NAA";

/// The sequence has one of the shapes possible for a bipartite graph.
///
/// None of these shapes has length 1, so a lone `N` reads as not bipartite.
pub fn bipartite_from_epr(seq: &EprSequence) -> Result<bool> {
    require_leading_n(seq)?;
    Ok(BIPARTITE_FORMS.iter().any(|p| fixed(p).matches(seq)))
}

pub fn odd_cycle_from_epr(seq: &EprSequence) -> Result<bool> {
    require_leading_n(seq)?;
    Ok(fixed(ODD_CYCLE_FORM).matches(seq))
}

/// Graph facts for a zero-diagonal symmetric matrix, computed both ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphFacts {
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
    pub odd_girth_search: OddGirth,
    pub odd_girth_from_epr: OddGirth,
    pub bipartite: bool,
    pub bipartite_from_epr: bool,
    pub odd_cycle: bool,
    pub odd_cycle_from_epr: bool,
}

pub fn graph_facts(m: &IntMatrix, seq: &EprSequence) -> Result<GraphFacts> {
    let g = graph_of(m)?;
    Ok(GraphFacts {
        order: g.order(),
        edges: g.edges().collect(),
        odd_girth_search: odd_girth_search(&g),
        odd_girth_from_epr: odd_girth_from_epr(seq)?,
        bipartite: g.is_bipartite(),
        bipartite_from_epr: bipartite_from_epr(seq)?,
        odd_cycle: g.is_odd_cycle(),
        odd_cycle_from_epr: odd_cycle_from_epr(seq)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct, cycle, Construction};
    use crate::epr::epr;
    use crate::linalg::kronecker;

    fn seq(w: &str) -> EprSequence {
        EprSequence::from_word(w).unwrap()
    }

    #[test]
    fn graph_of_examples() {
        let g = graph_of(&cycle(5).unwrap()).unwrap();
        assert!(g.is_odd_cycle());
        assert_eq!(g.edge_count(), 5);
        assert_eq!(graph_of(&construct(Construction::Zero, 4).unwrap()).unwrap().edge_count(), 0);
        let k3 = graph_of(&construct(Construction::Complete, 3).unwrap()).unwrap();
        assert_eq!(k3.edges().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 3)]);
        assert!(matches!(graph_of(&construct(Construction::Identity, 2).unwrap()), Err(Error::NonZeroDiagonal(1))));
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(1, 2), (2, 1)]).is_err());
        assert!(Graph::new(3, [(1, 4)]).is_err());
    }

    #[test]
    fn odd_girths() {
        assert_eq!(odd_girth_search(&graph_of(&cycle(5).unwrap()).unwrap()), OddGirth::Finite(5));
        assert_eq!(odd_girth_search(&graph_of(&cycle(6).unwrap()).unwrap()), OddGirth::Infinite);
        let c3 = cycle(3).unwrap();
        let k = kronecker(&c3, &c3);
        assert_eq!(odd_girth_search(&graph_of(&k).unwrap()), OddGirth::Finite(3));
        assert_eq!(odd_girth_from_epr(&seq("NSNAA")).unwrap(), OddGirth::Finite(5));
        assert_eq!(odd_girth_from_epr(&seq("NNNN")).unwrap(), OddGirth::Infinite);
        assert_eq!(odd_girth_from_epr(&seq("NSSSSSNAA")).unwrap(), OddGirth::Finite(3));
        assert!(odd_girth_from_epr(&seq("ANA")).is_err());
    }

    #[test]
    fn forms_from_epr() {
        assert!(odd_cycle_from_epr(&seq("NSNAA")).unwrap());
        assert!(bipartite_from_epr(&seq("NNN")).unwrap());
        assert!(!bipartite_from_epr(&seq("NSSSSSNAA")).unwrap());
        assert!(!odd_cycle_from_epr(&seq("NSSSSSNAA")).unwrap());
        assert!(bipartite_from_epr(&seq("NSNA")).unwrap());
        assert!(bipartite_from_epr(&seq("NSNSNNN")).unwrap());
    }

    #[test]
    fn two_routes_agree_on_cycles() {
        for n in 3..=10 {
            let m = cycle(n).unwrap();
            let g = graph_of(&m).unwrap();
            let s = epr(&m).unwrap();
            assert_eq!(odd_girth_search(&g), odd_girth_from_epr(&s).unwrap(), "C{n}");
            assert_eq!(g.is_bipartite(), bipartite_from_epr(&s).unwrap(), "C{n}");
            assert_eq!(g.is_odd_cycle(), odd_cycle_from_epr(&s).unwrap(), "C{n}");
        }
    }

    #[test]
    fn text_round_trip_and_json() {
        let g = graph_of(&cycle(4).unwrap()).unwrap();
        assert_eq!(g.to_text().parse::<Graph>().unwrap(), g);
        assert!("3\n1 2 3\n".parse::<Graph>().is_err());
        assert_eq!(serde_json::to_string(&OddGirth::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<OddGirth>("7").unwrap(), OddGirth::Finite(7));
    }
}
