use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationKind {
    Spearman,
    Pearson,
}

/// Pearson correlation, or `None` when either vector has zero variance.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// 1-based ranks, tied values sharing the mean of their positions.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && x[order[j + 1]] == x[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman correlation: Pearson over average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Symmetric matrix of pairwise correlations. Undefined entries (a
/// zero-variance vector is involved) are `None`, including on the diagonal.
pub fn correlation_matrix(vectors: &[Vec<f64>], kind: CorrelationKind) -> Result<Vec<Vec<Option<f64>>>> {
    let len = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != len) {
        return Err(Error::InvalidInput("correlated vectors differ in length".into()));
    }
    if len < 3 {
        return Err(Error::InvalidInput(format!(
            "correlations need at least 3 observations, got {len}"
        )));
    }
    let prepared: Vec<Vec<f64>> = match kind {
        CorrelationKind::Pearson => vectors.to_vec(),
        CorrelationKind::Spearman => vectors.iter().map(|v| average_ranks(v)).collect(),
    };
    let k = prepared.len();
    let mut out = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let r = if i == j {
                pearson(&prepared[i], &prepared[i]).map(|_| 1.0)
            } else {
                pearson(&prepared[i], &prepared[j])
            };
            out[i][j] = r;
            out[j][i] = r;
        }
    }
    Ok(out)
}
