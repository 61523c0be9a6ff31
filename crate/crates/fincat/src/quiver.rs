//! Directed multigraphs, the free category of chains, the underlying-graph
//! construction, and bounded verification of the free/forgetful adjunction
//! between multigraphs and categories.
//!
//! Cyclic graphs have infinitely many chains, so the free category is only
//! materialized for acyclic inputs; every law is otherwise verified on the
//! bounded chain enumeration, each law instance mentioning chains of bounded
//! length only.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{CategoryError, ComposeEntry, FinCategory, Morphism, RawCategory};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("edge `{0}` has an endpoint that does not resolve")]
    UnknownEndpoint(String),
    #[error("graph has a directed cycle through edges {0:?}")]
    CyclicGraph(Vec<String>),
    #[error("incidence not preserved at edge `{0}`")]
    IncidenceViolation(String),
    #[error("map is not total at `{0}`")]
    NotTotal(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A directed multigraph: named vertices and named edges with endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

impl MultiGraph {
    pub fn new(mut vertices: Vec<String>, mut edges: Vec<Edge>) -> Result<MultiGraph, QuiverError> {
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(QuiverError::DuplicateName(w[0].clone()));
            }
        }
        edges.sort_by(|a, b| a.name.cmp(&b.name));
        for w in edges.windows(2) {
            if w[0].name == w[1].name {
                return Err(QuiverError::DuplicateName(w[0].name.clone()));
            }
        }
        for e in &edges {
            if !vertices.contains(&e.src) || !vertices.contains(&e.tgt) {
                return Err(QuiverError::UnknownEndpoint(e.name.clone()));
            }
        }
        Ok(MultiGraph { vertices, edges })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, name: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.name == name)
    }

    /// The chain graph x0 -e0-> x1 -e1-> ... with `n` edges.
    pub fn path(n: usize) -> MultiGraph {
        let vertices = (0..=n).map(|i| format!("x{i}")).collect();
        let edges = (0..n)
            .map(|i| Edge {
                name: format!("e{i}"),
                src: format!("x{i}"),
                tgt: format!("x{}", i + 1),
            })
            .collect();
        MultiGraph::new(vertices, edges).expect("path graph is well formed")
    }

    /// Finds a directed cycle, returned as its edge names, if one exists.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        let mut mark: BTreeMap<&str, Mark> = self
            .vertices
            .iter()
            .map(|v| (v.as_str(), Mark::White))
            .collect();
        fn dfs<'a>(
            g: &'a MultiGraph,
            v: &'a str,
            mark: &mut BTreeMap<&'a str, Mark>,
            stack: &mut Vec<&'a Edge>,
        ) -> Option<Vec<String>> {
            mark.insert(v, Mark::Grey);
            for e in g.edges.iter().filter(|e| e.src == v) {
                match mark[e.tgt.as_str()] {
                    Mark::Grey => {
                        // Close the cycle: keep the suffix of the stack from
                        // the first visit of e.tgt.
                        let mut cycle: Vec<String> = Vec::new();
                        let mut collecting = false;
                        for s in stack.iter() {
                            if s.src == e.tgt {
                                collecting = true;
                            }
                            if collecting {
                                cycle.push(s.name.clone());
                            }
                        }
                        cycle.push(e.name.clone());
                        return Some(cycle);
                    }
                    Mark::White => {
                        stack.push(e);
                        if let Some(c) = dfs(g, &e.tgt, mark, stack) {
                            return Some(c);
                        }
                        stack.pop();
                    }
                    Mark::Black => {}
                }
            }
            mark.insert(v, Mark::Black);
            None
        }
        for v in &self.vertices {
            if mark[v.as_str()] == Mark::White {
                let mut stack = Vec::new();
                if let Some(c) = dfs(self, v, &mut mark, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }
}

/// A chain in a multigraph: either the trivial walk at a vertex, or a
/// nonempty head-to-tail edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    base: String,
    edges: Vec<String>,
}

impl Chain {
    pub fn trivial(vertex: &str) -> Chain {
        Chain {
            base: vertex.to_string(),
            edges: vec![],
        }
    }

    pub fn from_edges(g: &MultiGraph, edges: Vec<String>) -> Result<Chain, QuiverError> {
        let mut cur: Option<String> = None;
        let mut base = None;
        for name in &edges {
            let e = g
                .edge(name)
                .ok_or_else(|| QuiverError::UnknownEndpoint(name.clone()))?;
            if let Some(c) = &cur {
                if c != &e.src {
                    return Err(QuiverError::IncidenceViolation(name.clone()));
                }
            } else {
                base = Some(e.src.clone());
            }
            cur = Some(e.tgt.clone());
        }
        Ok(Chain {
            base: base.expect("nonempty"),
            edges,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn src(&self, g: &MultiGraph) -> String {
        if self.edges.is_empty() {
            self.base.clone()
        } else {
            g.edge(&self.edges[0]).expect("validated").src.clone()
        }
    }

    pub fn tgt(&self, g: &MultiGraph) -> String {
        if self.edges.is_empty() {
            self.base.clone()
        } else {
            g.edge(self.edges.last().unwrap()).expect("validated").tgt.clone()
        }
    }

    /// Canonical morphism name in the free category: `p0(x)` for the trivial
    /// chain at x, `p(e1,e2)` otherwise.
    pub fn name(&self) -> String {
        if self.edges.is_empty() {
            format!("p0({})", self.base)
        } else {
            format!("p({})", self.edges.join(","))
        }
    }

    /// Concatenation, defined when head meets tail.
    pub fn concat(&self, other: &Chain, g: &MultiGraph) -> Option<Chain> {
        if self.tgt(g) != other.src(g) {
            return None;
        }
        if self.edges.is_empty() {
            return Some(other.clone());
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().cloned());
        Some(Chain {
            base: self.base.clone(),
            edges,
        })
    }
}

/// Enumerates every chain of length at most `max_len`, in canonical
/// (length, lexicographic) order, together with per-length counts.
pub fn chains_up_to(g: &MultiGraph, max_len: usize) -> (Vec<Chain>, Vec<u64>) {
    let mut by_len: Vec<Vec<Chain>> = vec![g.vertices().iter().map(|v| Chain::trivial(v)).collect()];
    for l in 1..=max_len {
        let mut next = Vec::new();
        for c in &by_len[l - 1] {
            for e in g.edges() {
                if c.is_empty() {
                    if e.src == c.base {
                        next.push(Chain {
                            base: c.base.clone(),
                            edges: vec![e.name.clone()],
                        });
                    }
                } else if g.edge(c.edges.last().unwrap()).unwrap().tgt == e.src {
                    let mut edges = c.edges.clone();
                    edges.push(e.name.clone());
                    next.push(Chain {
                        base: c.base.clone(),
                        edges,
                    });
                }
            }
        }
        next.sort();
        by_len.push(next);
    }
    let counts: Vec<u64> = by_len.iter().map(|v| v.len() as u64).collect();
    (by_len.into_iter().flatten().collect(), counts)
}

/// The free category on an acyclic multigraph: objects are vertices,
/// morphisms are all chains, composition is concatenation.
pub fn free_category(g: &MultiGraph) -> Result<FinCategory, QuiverError> {
    if let Some(cycle) = g.find_cycle() {
        return Err(QuiverError::CyclicGraph(cycle));
    }
    // Acyclic: every chain is simple in the vertex sequence, so enumeration
    // up to |vertices| - 1 edges is complete.
    let bound = g.vertices().len().saturating_sub(1);
    let (chains, _) = chains_up_to(g, bound);
    let morphisms: Vec<Morphism> = chains
        .iter()
        .map(|c| Morphism {
            name: c.name(),
            src: c.src(g),
            tgt: c.tgt(g),
        })
        .collect();
    let identities: BTreeMap<String, String> = g
        .vertices()
        .iter()
        .map(|v| (v.clone(), Chain::trivial(v).name()))
        .collect();
    let mut compose = Vec::new();
    for a in &chains {
        for b in &chains {
            if let Some(c) = a.concat(b, g) {
                compose.push(ComposeEntry {
                    first: a.name(),
                    then: b.name(),
                    equals: c.name(),
                });
            }
        }
    }
    Ok(FinCategory::validate(&RawCategory {
        objects: g.vertices().to_vec(),
        morphisms,
        identities,
        compose,
    })?)
}

/// The underlying multigraph of a category: vertices are objects, edges are
/// all morphisms including identities.
pub fn underlying_graph(c: &FinCategory) -> MultiGraph {
    MultiGraph::new(
        c.objects().to_vec(),
        c.morphisms()
            .iter()
            .map(|m| Edge {
                name: m.name.clone(),
                src: m.src.clone(),
                tgt: m.tgt.clone(),
            })
            .collect(),
    )
    .expect("a validated category has a well-formed underlying graph")
}

/// A morphism of multigraphs: vertex and edge maps preserving incidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMorphism {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
}

impl GraphMorphism {
    pub fn new(
        source: &MultiGraph,
        target: &MultiGraph,
        vertex_map: BTreeMap<String, String>,
        edge_map: BTreeMap<String, String>,
    ) -> Result<GraphMorphism, QuiverError> {
        for v in source.vertices() {
            let w = vertex_map
                .get(v)
                .ok_or_else(|| QuiverError::NotTotal(v.clone()))?;
            if !target.vertices().contains(w) {
                return Err(QuiverError::UnknownEndpoint(w.clone()));
            }
        }
        for e in source.edges() {
            let f = edge_map
                .get(&e.name)
                .ok_or_else(|| QuiverError::NotTotal(e.name.clone()))?;
            let fe = target
                .edge(f)
                .ok_or_else(|| QuiverError::UnknownEndpoint(f.clone()))?;
            if fe.src != vertex_map[&e.src] || fe.tgt != vertex_map[&e.tgt] {
                return Err(QuiverError::IncidenceViolation(e.name.clone()));
            }
        }
        Ok(GraphMorphism { vertex_map, edge_map })
    }

    /// The induced map on chains: apply the edge map pointwise.
    pub fn on_chain(&self, chain: &Chain) -> Chain {
        if chain.is_empty() {
            Chain::trivial(&self.vertex_map[&chain.base])
        } else {
            Chain {
                base: self.vertex_map[&chain.base].clone(),
                edges: chain.edges.iter().map(|e| self.edge_map[e].clone()).collect(),
            }
        }
    }
}

/// Composes a chain of morphisms of `c` (given base object for the empty
/// chain); this is the counit's action.
pub fn compose_chain(c: &FinCategory, base: &str, morphisms: &[String]) -> Option<String> {
    c.compose_seq(base, morphisms)
}

/// Chains of composable morphisms of a category, up to the given length.
fn morphism_chains(c: &FinCategory, max_len: usize) -> Vec<(String, Vec<String>)> {
    let g = underlying_graph(c);
    let (chains, _) = chains_up_to(&g, max_len);
    chains
        .into_iter()
        .map(|ch| (ch.src(&g), ch.edges().to_vec()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleSide {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PuViolation {
    /// The unit inclusion fails to be a graph morphism at this edge.
    UnitNotGraphMorphism(String),
    /// The counit fails to respect concatenation on this pair of chains.
    CounitNotFunctorial {
        first: Vec<String>,
        second: Vec<String>,
    },
    /// A triangle identity fails on the witness chain.
    Triangle {
        side: TriangleSide,
        witness: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuVerdict {
    pub holds: bool,
    pub violation: Option<PuViolation>,
    pub chains_checked: u64,
    /// Bounded sweeps are an under-approximation for cyclic graphs; the
    /// bound used is recorded here.
    pub max_len: usize,
}

/// Verifies the free/forgetful adjunction laws on bounded chain data:
/// the unit embeds the graph into the chains, the counit composes chains of
/// morphisms and is functorial, and both triangle identities hold on all
/// chains up to `max_len`.
pub fn verify_pu_adjunction(g: &MultiGraph, c: &FinCategory, max_len: usize) -> PuVerdict {
    verify_pu_with_counit(g, c, max_len, &|cat, base, mors| {
        compose_chain(cat, base, mors)
    })
}

/// Evaluates a chain of morphisms (given its base object) to a composite.
pub type CounitEval = dyn Fn(&FinCategory, &str, &[String]) -> Option<String>;

/// Same checks with a pluggable counit evaluation; used to confirm that a
/// broken counit is caught.
pub fn verify_pu_with_counit(
    g: &MultiGraph,
    c: &FinCategory,
    max_len: usize,
    eps: &CounitEval,
) -> PuVerdict {
    let mut checked = 0u64;
    // Unit: e -> the 1-chain (e) respects incidence. The chain's endpoints
    // are the edge's by construction; re-derive and compare.
    for e in g.edges() {
        checked += 1;
        let chain = Chain::from_edges(g, vec![e.name.clone()]);
        let ok = chain
            .map(|ch| ch.src(g) == e.src && ch.tgt(g) == e.tgt && ch.len() == 1)
            .unwrap_or(false);
        if !ok {
            return PuVerdict {
                holds: false,
                violation: Some(PuViolation::UnitNotGraphMorphism(e.name.clone())),
                chains_checked: checked,
                max_len,
            };
        }
    }
    // Counit on chains of morphisms of C: functoriality over concatenation.
    let chains_c = morphism_chains(c, max_len);
    for (base_a, a) in &chains_c {
        for (base_b, b) in &chains_c {
            if a.len() + b.len() > max_len {
                continue;
            }
            let end_a = if a.is_empty() {
                base_a.clone()
            } else {
                c.morphism(a.last().unwrap()).expect("validated").tgt.clone()
            };
            if &end_a != base_b {
                continue;
            }
            checked += 1;
            let joined: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
            let lhs = eps(c, base_a, &joined);
            let rhs = match (eps(c, base_a, a), eps(c, base_b, b)) {
                (Some(fa), Some(fb)) => c.compose(&fa, &fb).map(|s| s.to_string()),
                _ => None,
            };
            if lhs.is_none() || lhs != rhs {
                return PuVerdict {
                    holds: false,
                    violation: Some(PuViolation::CounitNotFunctorial {
                        first: a.clone(),
                        second: b.clone(),
                    }),
                    chains_checked: checked,
                    max_len,
                };
            }
        }
    }
    // First triangle: on each chain of G, wrapping every edge as a 1-chain
    // and concatenating in the free category returns the original chain.
    let (chains_g, _) = chains_up_to(g, max_len);
    for ch in &chains_g {
        checked += 1;
        let mut acc = Chain::trivial(&ch.src(g));
        let mut ok = true;
        for e in ch.edges() {
            let one = Chain::from_edges(g, vec![e.clone()]).expect("edge exists");
            match acc.concat(&one, g) {
                Some(next) => acc = next,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || acc != *ch {
            return PuVerdict {
                holds: false,
                violation: Some(PuViolation::Triangle {
                    side: TriangleSide::First,
                    witness: ch.edges().to_vec(),
                }),
                chains_checked: checked,
                max_len,
            };
        }
    }
    // Second triangle: every edge of U(C) (morphism of C, identities
    // included), wrapped as a 1-chain and composed by the counit, returns
    // itself; trivial chains go to identities.
    for m in c.morphisms() {
        checked += 1;
        if eps(c, &m.src, std::slice::from_ref(&m.name)) != Some(m.name.clone()) {
            return PuVerdict {
                holds: false,
                violation: Some(PuViolation::Triangle {
                    side: TriangleSide::Second,
                    witness: vec![m.name.clone()],
                }),
                chains_checked: checked,
                max_len,
            };
        }
    }
    for x in c.objects() {
        checked += 1;
        if eps(c, x, &[]) != c.identity_of(x).map(|s| s.to_string()) {
            return PuVerdict {
                holds: false,
                violation: Some(PuViolation::Triangle {
                    side: TriangleSide::Second,
                    witness: vec![format!("p0({x})")],
                }),
                chains_checked: checked,
                max_len,
            };
        }
    }
    PuVerdict {
        holds: true,
        violation: None,
        chains_checked: checked,
        max_len,
    }
}
