use crate::error::{Error, Result};
use crate::graph::{Dag, NodeIx};

/// A DAG restricted to the nodes lying on at least one source-target path.
///
/// Every computation in this crate runs on a closure. Node indices refer to
/// the closure's own [`Dag`], not to the graph it was extracted from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StContext {
    dag: Dag,
    source: NodeIx,
    target: NodeIx,
    citation_count: Vec<usize>,
    reference_count: Vec<usize>,
}

/// Extracts the source-target closure of `dag`: the subgraph induced by the
/// nodes reachable from `source` that also reach `target`.
pub fn st_closure(dag: &Dag, source: &str, target: &str) -> Result<StContext> {
    let s = dag.require(source)?;
    let t = dag.require(target)?;
    if s == t {
        return Err(Error::DegenerateSourceTarget(source.to_owned()));
    }
    let forward = dag.descendants(s);
    if !forward[t] {
        return Err(Error::NoSourceTargetPath {
            source_id: source.to_owned(),
            target_id: target.to_owned(),
        });
    }
    let backward = dag.ancestors(t);
    let keep: Vec<bool> = forward.iter().zip(&backward).map(|(&f, &b)| f && b).collect();
    let closure = dag.induced(&keep);
    Ok(StContext::from_closure(closure, source, target))
}

impl StContext {
    fn from_closure(dag: Dag, source: &str, target: &str) -> StContext {
        let source = dag.lookup(source).expect("source kept");
        let target = dag.lookup(target).expect("target kept");
        let n = dag.node_count();
        let citation_count = (0..n).map(|v| dag.in_degree(v)).collect();
        let reference_count = (0..n).map(|v| dag.out_degree(v)).collect();
        StContext {
            dag,
            source,
            target,
            citation_count,
            reference_count,
        }
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn source(&self) -> NodeIx {
        self.source
    }

    pub fn target(&self) -> NodeIx {
        self.target
    }

    pub fn source_id(&self) -> &str {
        self.dag.id(self.source)
    }

    pub fn target_id(&self) -> &str {
        self.dag.id(self.target)
    }

    pub fn node_count(&self) -> usize {
        self.dag.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.dag.edge_count()
    }

    /// Incoming links within the closure.
    pub fn citation_count(&self, v: NodeIx) -> usize {
        self.citation_count[v]
    }

    /// Outgoing links within the closure.
    pub fn reference_count(&self, v: NodeIx) -> usize {
        self.reference_count[v]
    }

    pub fn citation_counts(&self) -> &[usize] {
        &self.citation_count
    }

    pub fn reference_counts(&self) -> &[usize] {
        &self.reference_count
    }

    pub fn id(&self, v: NodeIx) -> &str {
        self.dag.id(v)
    }

    pub fn require(&self, id: &str) -> Result<NodeIx> {
        self.dag.require(id)
    }
}
