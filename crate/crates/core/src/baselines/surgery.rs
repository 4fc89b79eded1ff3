//! Path addition and path contraction.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Dag, NodeIx, NodeRecord};

/// Adds a fresh path of `len` edges from `u` to `v`, creating `len - 1` new
/// intermediate nodes. Fails if `v` already reaches `u`.
pub fn add_path(dag: &Dag, u: &str, v: &str, len: usize) -> Result<Dag> {
    let ui = dag.require(u)?;
    let vi = dag.require(v)?;
    if len == 0 {
        return Err(Error::InvalidInput("path length must be at least 1".into()));
    }
    if dag.reaches(vi, ui) {
        return Err(Error::WouldCreateCycle {
            u: u.to_owned(),
            v: v.to_owned(),
        });
    }
    let mut records = dag.nodes().to_vec();
    let mut hops = vec![u.to_owned()];
    for i in 1..len {
        let id = dag.fresh_id(&format!("{u}~{v}.{i}"));
        records.push(NodeRecord::new(id.clone()));
        hops.push(id);
    }
    hops.push(v.to_owned());
    let edges = dag
        .edge_ids()
        .map(|(a, b)| (a.to_owned(), b.to_owned()))
        .chain(hops.windows(2).map(|w| (w[0].clone(), w[1].clone())));
    Dag::build(records, edges)
}

#[derive(Debug, Clone)]
pub struct Contracted {
    pub dag: Dag,
    /// Id of the node replacing all nodes on `u -> v` paths.
    pub replacement: String,
}

/// Replaces every node on a `u -> v` path by a single new node.
///
/// Requires that those nodes have no neighbors outside the contracted set
/// other than in-neighbors of `u` and out-neighbors of `v`. Boundary edges
/// that collapse onto the same pair are merged into one.
pub fn contract_paths(dag: &Dag, u: &str, v: &str) -> Result<Contracted> {
    let ui = dag.require(u)?;
    let vi = dag.require(v)?;
    let from_u = dag.descendants(ui);
    if !from_u[vi] {
        return Err(Error::NoPath {
            from: u.to_owned(),
            to: v.to_owned(),
        });
    }
    let to_v = dag.ancestors(vi);
    let inside: Vec<bool> = from_u.iter().zip(&to_v).map(|(a, b)| *a && *b).collect();

    for x in (0..dag.node_count()).filter(|&x| inside[x]) {
        let violation = dag
            .predecessors(x)
            .find(|&y| !inside[y] && x != ui)
            .or_else(|| dag.successors(x).find(|&y| !inside[y] && x != vi));
        if let Some(y) = violation {
            return Err(Error::PreconditionViolated {
                node: dag.id(x).to_owned(),
                neighbor: dag.id(y).to_owned(),
            });
        }
    }

    let replacement = dag.fresh_id(&format!("{u}..{v}"));
    let mut remap = vec![usize::MAX; dag.node_count()];
    let mut records = Vec::new();
    let mut r = usize::MAX;
    for x in 0..dag.node_count() {
        if inside[x] {
            if x == ui {
                r = records.len();
                records.push(NodeRecord::new(replacement.clone()));
            }
        } else {
            remap[x] = records.len();
            records.push(dag.node(x).clone());
        }
    }
    let to_new = |x: NodeIx| if inside[x] { r } else { remap[x] };
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for &(a, b) in dag.edges() {
        if inside[a] && inside[b] {
            continue;
        }
        let pair = (to_new(a), to_new(b));
        if seen.insert(pair) {
            edges.push(pair);
        }
    }
    Ok(Contracted {
        dag: Dag::from_indexed(records, edges)?,
        replacement,
    })
}
