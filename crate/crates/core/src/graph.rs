//! Immutable directed acyclic graphs keyed by opaque string ids.
//!
//! Edges point from a citing node to a cited node, so in a citation network
//! they point backward in time. Node ids are kept verbatim; the dense indices
//! used internally are an implementation detail.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node index into a [`Dag`].
pub type NodeIx = usize;
/// Dense edge index into a [`Dag`].
pub type EdgeIx = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<i32>,
}

impl NodeRecord {
    pub fn new(id: impl Into<String>) -> Self {
        NodeRecord {
            id: id.into(),
            label: None,
            year: None,
        }
    }
}

/// A validated directed acyclic graph.
///
/// Adjacency is stored in compressed form in both directions. Edge indices
/// follow insertion order, and out/in lists are ordered by edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    nodes: Vec<NodeRecord>,
    index: HashMap<String, NodeIx>,
    edges: Vec<(NodeIx, NodeIx)>,
    out_offsets: Vec<usize>,
    out_edges: Vec<EdgeIx>,
    in_offsets: Vec<usize>,
    in_edges: Vec<EdgeIx>,
    topo: Vec<NodeIx>,
}

impl Dag {
    /// Builds a DAG from node records and `(tail, head)` id pairs.
    ///
    /// Edge endpoints that were not declared become bare nodes, appended in
    /// order of first appearance. Duplicate edges, self-loops and cycles are
    /// rejected.
    pub fn build<I, S>(records: Vec<NodeRecord>, edge_pairs: I) -> Result<Dag>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut nodes = records;
        let mut index = HashMap::with_capacity(nodes.len());
        for (ix, rec) in nodes.iter().enumerate() {
            if index.insert(rec.id.clone(), ix).is_some() {
                return Err(Error::DuplicateNode(rec.id.clone()));
            }
        }

        let mut intern = |id: &str, nodes: &mut Vec<NodeRecord>| -> NodeIx {
            if let Some(&ix) = index.get(id) {
                return ix;
            }
            let ix = nodes.len();
            nodes.push(NodeRecord::new(id));
            index.insert(id.to_owned(), ix);
            ix
        };

        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (tail, head) in edge_pairs {
            let (tail, head) = (tail.as_ref(), head.as_ref());
            if tail == head {
                return Err(Error::SelfLoop(tail.to_owned()));
            }
            let a = intern(tail, &mut nodes);
            let b = intern(head, &mut nodes);
            if !seen.insert((a, b)) {
                return Err(Error::DuplicateEdge {
                    tail: tail.to_owned(),
                    head: head.to_owned(),
                });
            }
            edges.push((a, b));
        }

        Self::from_parts(nodes, index, edges)
    }

    /// Convenience constructor for bare node ids.
    pub fn from_edges<S: AsRef<str>>(edge_pairs: &[(S, S)]) -> Result<Dag> {
        Self::build(
            Vec::new(),
            edge_pairs.iter().map(|(a, b)| (a.as_ref(), b.as_ref())),
        )
    }

    /// Builds from already-interned parts. Edges must be free of duplicates
    /// and self-loops; acyclicity is still verified.
    pub(crate) fn from_indexed(nodes: Vec<NodeRecord>, edges: Vec<(NodeIx, NodeIx)>) -> Result<Dag> {
        let index = nodes
            .iter()
            .enumerate()
            .map(|(ix, rec)| (rec.id.clone(), ix))
            .collect();
        Self::from_parts(nodes, index, edges)
    }

    fn from_parts(
        nodes: Vec<NodeRecord>,
        index: HashMap<String, NodeIx>,
        edges: Vec<(NodeIx, NodeIx)>,
    ) -> Result<Dag> {
        let n = nodes.len();
        let (out_offsets, out_edges) = compress(n, edges.iter().map(|&(a, _)| a));
        let (in_offsets, in_edges) = compress(n, edges.iter().map(|&(_, b)| b));
        let mut dag = Dag {
            nodes,
            index,
            edges,
            out_offsets,
            out_edges,
            in_offsets,
            in_edges,
            topo: Vec::new(),
        };
        dag.topo = dag.topological_order()?;
        Ok(dag)
    }

    /// Kahn's algorithm, always releasing the smallest ready index first so the
    /// order is a deterministic function of the input.
    fn topological_order(&self) -> Result<Vec<NodeIx>> {
        let n = self.node_count();
        let mut indegree: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut ready: BinaryHeap<Reverse<NodeIx>> =
            (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for w in self.successors(v) {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        let (tail, head) = self.find_back_edge(&indegree);
        Err(Error::CycleDetected {
            tail: self.nodes[tail].id.clone(),
            head: self.nodes[head].id.clone(),
        })
    }

    /// Locates an edge closing a cycle among the nodes Kahn's algorithm could
    /// not release (those with residual in-degree).
    fn find_back_edge(&self, residual: &[usize]) -> (NodeIx, NodeIx) {
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let n = self.node_count();
        let mut color = vec![WHITE; n];
        for root in (0..n).filter(|&v| residual[v] > 0) {
            if color[root] != WHITE {
                continue;
            }
            let mut stack = vec![(root, self.out_offsets[root])];
            color[root] = GRAY;
            while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
                if *cursor == self.out_offsets[v + 1] {
                    color[v] = BLACK;
                    stack.pop();
                    continue;
                }
                let w = self.edges[self.out_edges[*cursor]].1;
                *cursor += 1;
                match color[w] {
                    GRAY => return (v, w),
                    WHITE => {
                        color[w] = GRAY;
                        stack.push((w, self.out_offsets[w]));
                    }
                    _ => {}
                }
            }
        }
        unreachable!("Kahn's algorithm stalled without a cycle")
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Mean number of links per node counting both directions, `2m / n`.
    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edge_count() as f64 / self.node_count() as f64
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    pub fn node(&self, v: NodeIx) -> &NodeRecord {
        &self.nodes[v]
    }

    pub fn id(&self, v: NodeIx) -> &str {
        &self.nodes[v].id
    }

    pub fn lookup(&self, id: &str) -> Option<NodeIx> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<NodeIx> {
        self.lookup(id).ok_or_else(|| Error::UnknownNode(id.to_owned()))
    }

    pub fn edges(&self) -> &[(NodeIx, NodeIx)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIx) -> (NodeIx, NodeIx) {
        self.edges[e]
    }

    /// Edges as `(tail id, head id)` pairs, in edge-index order.
    pub fn edge_ids(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges.iter().map(|&(a, b)| (self.id(a), self.id(b)))
    }

    pub fn topo_order(&self) -> &[NodeIx] {
        &self.topo
    }

    pub fn out_edges(&self, v: NodeIx) -> &[EdgeIx] {
        &self.out_edges[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    pub fn in_edges(&self, v: NodeIx) -> &[EdgeIx] {
        &self.in_edges[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    pub fn successors(&self, v: NodeIx) -> impl Iterator<Item = NodeIx> + '_ {
        self.out_edges(v).iter().map(move |&e| self.edges[e].1)
    }

    pub fn predecessors(&self, v: NodeIx) -> impl Iterator<Item = NodeIx> + '_ {
        self.in_edges(v).iter().map(move |&e| self.edges[e].0)
    }

    pub fn out_degree(&self, v: NodeIx) -> usize {
        self.out_offsets[v + 1] - self.out_offsets[v]
    }

    pub fn in_degree(&self, v: NodeIx) -> usize {
        self.in_offsets[v + 1] - self.in_offsets[v]
    }

    pub fn has_edge(&self, a: NodeIx, b: NodeIx) -> bool {
        self.successors(a).any(|w| w == b)
    }

    /// Nodes reachable from `start` (inclusive) following edge direction.
    pub fn descendants(&self, start: NodeIx) -> Vec<bool> {
        self.sweep(start, |v| self.successors(v).collect())
    }

    /// Nodes that reach `start` (inclusive).
    pub fn ancestors(&self, start: NodeIx) -> Vec<bool> {
        self.sweep(start, |v| self.predecessors(v).collect())
    }

    pub fn reaches(&self, from: NodeIx, to: NodeIx) -> bool {
        self.descendants(from)[to]
    }

    fn sweep<F>(&self, start: NodeIx, next: F) -> Vec<bool>
    where
        F: Fn(NodeIx) -> Vec<NodeIx>,
    {
        let mut seen = vec![false; self.node_count()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in next(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Induced subgraph on the nodes flagged in `keep`, preserving node and
    /// edge order.
    pub fn induced(&self, keep: &[bool]) -> Dag {
        let mut remap = vec![usize::MAX; self.node_count()];
        let mut nodes = Vec::new();
        for (v, rec) in self.nodes.iter().enumerate() {
            if keep[v] {
                remap[v] = nodes.len();
                nodes.push(rec.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| keep[a] && keep[b])
            .map(|&(a, b)| (remap[a], remap[b]))
            .collect();
        Self::from_indexed(nodes, edges).expect("subgraph of a DAG is a DAG")
    }

    /// Returns an id not yet used in this graph, derived from `base`.
    pub fn fresh_id(&self, base: &str) -> String {
        if self.lookup(base).is_none() {
            return base.to_owned();
        }
        (1..)
            .map(|k| format!("{base}#{k}"))
            .find(|cand| self.lookup(cand).is_none())
            .expect("unbounded search")
    }
}

fn compress(n: usize, keys: impl Iterator<Item = NodeIx> + Clone) -> (Vec<usize>, Vec<EdgeIx>) {
    let mut offsets = vec![0; n + 1];
    for k in keys.clone() {
        offsets[k + 1] += 1;
    }
    for v in 0..n {
        offsets[v + 1] += offsets[v];
    }
    let mut cursor = offsets.clone();
    let mut slots = vec![0; offsets[n]];
    for (e, k) in keys.enumerate() {
        slots[cursor[k]] = e;
        cursor[k] += 1;
    }
    (offsets, slots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_has_topological_order() {
        let dag = Dag::from_edges(&[("a", "b"), ("b", "c")]).unwrap();
        let order: Vec<_> = dag.topo_order().iter().map(|&v| dag.id(v)).collect();
        assert_eq!(order, ["a", "b", "c"]);
        assert_eq!(dag.edge_count(), 2);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Dag::from_edges(&[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::CycleDetected { .. }), "{err}");
    }

    #[test]
    fn cycle_report_names_an_edge_on_the_cycle() {
        let dag = Dag::from_edges(&[("x", "a"), ("a", "b"), ("b", "c"), ("c", "a"), ("c", "y")]);
        match dag.unwrap_err() {
            Error::CycleDetected { tail, head } => {
                let cycle = [("a", "b"), ("b", "c"), ("c", "a")];
                assert!(cycle.contains(&(tail.as_str(), head.as_str())));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn duplicates_and_self_loops() {
        assert!(matches!(
            Dag::from_edges(&[("a", "b"), ("a", "b")]),
            Err(Error::DuplicateEdge { .. })
        ));
        assert!(matches!(Dag::from_edges(&[("a", "a")]), Err(Error::SelfLoop(_))));
        let recs = vec![NodeRecord::new("a"), NodeRecord::new("a")];
        assert!(matches!(
            Dag::build(recs, Vec::<(&str, &str)>::new()),
            Err(Error::DuplicateNode(_))
        ));
    }

    #[test]
    fn declared_nodes_keep_their_order_and_metadata() {
        let recs = vec![
            NodeRecord {
                id: "z".into(),
                label: Some("Zed".into()),
                year: Some(2001),
            },
            NodeRecord::new("iso"),
        ];
        let dag = Dag::build(recs, [("a", "z")]).unwrap();
        assert_eq!(dag.id(0), "z");
        assert_eq!(dag.id(1), "iso");
        assert_eq!(dag.id(2), "a");
        assert_eq!(dag.node(0).label.as_deref(), Some("Zed"));
        assert_eq!(dag.in_degree(0), 1);
        assert_eq!(dag.out_degree(2), 1);
    }

    #[test]
    fn construction_is_deterministic() {
        let edges = [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t"), ("c", "b")];
        assert_eq!(Dag::from_edges(&edges).unwrap(), Dag::from_edges(&edges).unwrap());
    }

    #[test]
    fn fresh_ids_do_not_collide() {
        let dag = Dag::from_edges(&[("r", "r#1")]).unwrap();
        assert_eq!(dag.fresh_id("r"), "r#2");
        assert_eq!(dag.fresh_id("q"), "q");
    }
}
