use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::closure::StContext;
use crate::graph::NodeIx;

/// Above this many nodes the grounded Laplacian is solved iteratively.
const DENSE_LIMIT: usize = 2000;
const CG_TOLERANCE: f64 = 1e-10;

/// Effective resistance between the source and the target when only the
/// source-target paths through `v` are kept, with every edge a unit resistor
/// and orientation ignored.
pub fn resistance_through(ctx: &StContext, v: NodeIx) -> f64 {
    let dag = ctx.dag();
    // edges on s -> v paths end at an ancestor of v; edges on v -> t paths
    // start at a descendant of v
    let up = dag.ancestors(v);
    let down = dag.descendants(v);
    let edges: Vec<(NodeIx, NodeIx)> = dag
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| up[b] || down[a])
        .collect();
    let mut local = vec![usize::MAX; ctx.node_count()];
    let mut n = 0;
    for x in 0..ctx.node_count() {
        if up[x] || down[x] {
            local[x] = n;
            n += 1;
        }
    }
    let edges: Vec<_> = edges.iter().map(|&(a, b)| (local[a], local[b])).collect();
    effective_resistance(n, &edges, local[ctx.source()], local[ctx.target()])
}

/// Through-node resistance of every closure node.
pub fn resistance_all(ctx: &StContext) -> Vec<f64> {
    (0..ctx.node_count())
        .into_par_iter()
        .map(|v| resistance_through(ctx, v))
        .collect()
}

/// Effective resistance between `a` and `b` in a connected network of unit
/// resistors on `n` nodes. Node `b` is grounded and a unit current injected
/// at `a`; the potential at `a` is the resistance.
pub fn effective_resistance(n: usize, edges: &[(usize, usize)], a: usize, b: usize) -> f64 {
    if a == b {
        return 0.0;
    }
    // reduced index: drop the grounded node
    let reduce = |x: usize| if x < b { x } else { x - 1 };
    let dim = n - 1;
    if n <= DENSE_LIMIT {
        let mut lap = DMatrix::<f64>::zeros(dim, dim);
        for &(x, y) in edges {
            if x != b {
                lap[(reduce(x), reduce(x))] += 1.0;
            }
            if y != b {
                lap[(reduce(y), reduce(y))] += 1.0;
            }
            if x != b && y != b {
                lap[(reduce(x), reduce(y))] -= 1.0;
                lap[(reduce(y), reduce(x))] -= 1.0;
            }
        }
        let mut rhs = DVector::<f64>::zeros(dim);
        rhs[reduce(a)] = 1.0;
        let chol = lap
            .cholesky()
            .expect("grounded Laplacian of a connected network is positive definite");
        chol.solve(&rhs)[reduce(a)]
    } else {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); dim];
        let mut diag = vec![0.0; dim];
        for &(x, y) in edges {
            if x != b {
                diag[reduce(x)] += 1.0;
            }
            if y != b {
                diag[reduce(y)] += 1.0;
            }
            if x != b && y != b {
                adj[reduce(x)].push(reduce(y));
                adj[reduce(y)].push(reduce(x));
            }
        }
        let mut rhs = vec![0.0; dim];
        rhs[reduce(a)] = 1.0;
        conjugate_gradient(&diag, &adj, &rhs)[reduce(a)]
    }
}

/// Jacobi-preconditioned conjugate gradient for `(D - A) x = rhs`.
fn conjugate_gradient(diag: &[f64], adj: &[Vec<usize>], rhs: &[f64]) -> Vec<f64> {
    let dim = rhs.len();
    let apply = |x: &[f64], out: &mut [f64]| {
        for i in 0..dim {
            out[i] = diag[i] * x[i] - adj[i].iter().map(|&j| x[j]).sum::<f64>();
        }
    };
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let rhs_norm = dot(rhs, rhs).sqrt();
    let mut x = vec![0.0; dim];
    let mut r = rhs.to_vec();
    let mut z: Vec<f64> = r.iter().zip(diag).map(|(r, d)| r / d).collect();
    let mut dir = z.clone();
    let mut rz = dot(&r, &z);
    let mut q = vec![0.0; dim];
    for _ in 0..10 * dim.max(100) {
        if dot(&r, &r).sqrt() <= CG_TOLERANCE * rhs_norm {
            break;
        }
        apply(&dir, &mut q);
        let alpha = rz / dot(&dir, &q);
        for i in 0..dim {
            x[i] += alpha * dir[i];
            r[i] -= alpha * q[i];
        }
        for i in 0..dim {
            z[i] = r[i] / diag[i];
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..dim {
            dir[i] = z[i] + beta * dir[i];
        }
    }
    x
}
