use intermediacy::analysis::{
    correlation_matrix, default_grid, p_sweep, ranking_table, score_cdf, CorrelationKind, RowRole, TABLE_GRID,
};
use intermediacy::baselines::{
    expected_path_count, global_main_path, local_main_path, path_weights, resistance_all, MainPathVariant,
};
use intermediacy::exact::exact_intermediacy;
use intermediacy::generate::random_closure;
use intermediacy::paths::search_path_counts;
use intermediacy::{
    estimate_intermediacy, io, st_closure, Estimator, IntermediacyScores, Method, Probability, ReliabilityQuery,
    SamplerConfig, StContext,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{
    CorrelateArgs, DistributionArgs, ExactCheckArgs, Format, GraphInput, MainPathArgs, PlainArgs, PointArgs,
    ScoreArgs, SweepArgs,
};
use crate::output::{json, opt, tsv, Rendered};
use crate::{CliError, CliResult};

fn load(input: &GraphInput) -> CliResult<StContext> {
    let dag = io::load_dag(&input.edges, input.nodes.as_deref())?;
    let ctx = st_closure(&dag, &input.source, &input.target)?;
    log::info!(
        "closure of {} -> {}: {} nodes, {} edges (input {} nodes, {} edges)",
        input.source,
        input.target,
        ctx.node_count(),
        ctx.edge_count(),
        dag.node_count(),
        dag.edge_count()
    );
    Ok(ctx)
}

fn grid_or(grid: &[f64], default: &[f64]) -> CliResult<Vec<f64>> {
    let grid = if grid.is_empty() { default.to_vec() } else { grid.to_vec() };
    for &p in &grid {
        Probability::new(p)?;
    }
    Ok(grid)
}

fn scores_over(ctx: &StContext, est: &Estimator, ps: &[f64]) -> CliResult<Vec<IntermediacyScores>> {
    log::info!("scoring with {} at {} value(s) of p", est.method_for(ctx), ps.len());
    ps.iter()
        .enumerate()
        .map(|(i, &p)| est.scores(ctx, p, i as u64).map_err(CliError::from))
        .collect()
}

#[derive(Serialize)]
struct ScoreRow<'a> {
    rank: String,
    id: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    year: Option<i32>,
    phi: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    stderr: Option<Vec<f64>>,
    citation_count: usize,
    reference_count: usize,
}

#[derive(Serialize)]
struct ScoreReport<'a> {
    method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    reference_p: f64,
    ps: &'a [f64],
    rows: Vec<ScoreRow<'a>>,
}

fn rank_label(role: RowRole) -> String {
    match role {
        RowRole::Target => "target".to_owned(),
        RowRole::Source => "source".to_owned(),
        RowRole::Ranked(i) => i.to_string(),
    }
}

pub fn score(a: &ScoreArgs) -> CliResult<Rendered> {
    let ctx = load(&a.input)?;
    let est = a.sampling.estimator();
    let mut ps = a.p_grid.clone();
    if !ps.contains(&a.p) {
        ps.insert(0, a.p);
    }
    let ps = grid_or(&ps, &[])?;
    let scores = scores_over(&ctx, &est, &ps)?;
    let table = ranking_table(&ctx, &scores, a.p, a.top)?;
    let sampled = scores[0].method == Method::MonteCarlo;
    let rows: Vec<ScoreRow> = table
        .rows
        .iter()
        .map(|row| ScoreRow {
            rank: rank_label(row.role),
            id: &row.id,
            label: row.label.as_deref(),
            year: row.year,
            phi: &row.phi,
            stderr: sampled.then(|| scores.iter().map(|s| s.stderr(row.node).unwrap_or(0.0)).collect()),
            citation_count: row.citation_count,
            reference_count: row.reference_count,
        })
        .collect();

    let body = match a.output.format {
        Format::Json => json(&ScoreReport {
            method: scores[0].method,
            samples: scores[0].samples,
            reference_p: a.p,
            ps: &table.ps,
            rows,
        })?,
        Format::Tsv => {
            let mut header: Vec<String> = ["rank", "id", "label", "year"].map(String::from).to_vec();
            header.extend(ps.iter().map(|p| format!("phi@{p}")));
            if sampled {
                header.extend(ps.iter().map(|p| format!("stderr@{p}")));
            }
            header.extend(["citations", "references"].map(String::from));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            tsv(
                &header,
                rows.into_iter().map(|r| {
                    let mut cells = vec![
                        r.rank,
                        r.id.to_owned(),
                        r.label.unwrap_or("").to_owned(),
                        r.year.map(|y| y.to_string()).unwrap_or_default(),
                    ];
                    cells.extend(r.phi.iter().map(f64::to_string));
                    cells.extend(r.stderr.iter().flatten().map(f64::to_string));
                    cells.push(r.citation_count.to_string());
                    cells.push(r.reference_count.to_string());
                    cells
                }),
            )
        }
    };

    let mut rendered = Rendered::new("score", body);
    if let Some(k) = a.subnet {
        let reference = &scores[ps.iter().position(|&p| p == a.p).expect("reference p scored")];
        rendered.extra.push(("subnet.tsv".into(), subnet(&ctx, reference, k)));
    }
    Ok(rendered)
}

/// Edge list induced by the `k` most intermediate nodes plus the source and
/// target, in the input edge-list format.
fn subnet(ctx: &StContext, scores: &IntermediacyScores, k: usize) -> String {
    let mut keep = vec![false; ctx.node_count()];
    keep[ctx.source()] = true;
    keep[ctx.target()] = true;
    for v in scores
        .ranking(ctx)
        .into_iter()
        .filter(|&v| v != ctx.source() && v != ctx.target())
        .take(k)
    {
        keep[v] = true;
    }
    let mut out = String::from("# citing\tcited\n");
    for &(a, b) in ctx.dag().edges() {
        if keep[a] && keep[b] {
            out.push_str(&format!("{}\t{}\n", ctx.id(a), ctx.id(b)));
        }
    }
    out
}

pub fn sweep(a: &SweepArgs) -> CliResult<Rendered> {
    let ctx = load(&a.input)?;
    let grid = grid_or(&a.p_grid, &default_grid())?;
    let result = p_sweep(&ctx, &grid, &a.sampling.estimator())?;
    let body = match a.output.format {
        Format::Json => json(&result)?,
        Format::Tsv => tsv(
            &["p", "st_probability", "stderr", "method"],
            result.points.iter().map(|pt| {
                vec![
                    pt.p.to_string(),
                    pt.st_probability.to_string(),
                    opt(pt.stderr),
                    pt.method.to_string(),
                ]
            }),
        ),
    };
    Ok(Rendered::new("sweep", body))
}

#[derive(Serialize)]
struct Suggestion {
    nodes: usize,
    edges: usize,
    mean_degree: f64,
    p: f64,
}

pub fn suggest_p(a: &PlainArgs) -> CliResult<Rendered> {
    let ctx = load(&a.input)?;
    let s = Suggestion {
        nodes: ctx.node_count(),
        edges: ctx.edge_count(),
        mean_degree: 2.0 * ctx.edge_count() as f64 / ctx.node_count() as f64,
        p: intermediacy::analysis::suggest_p(&ctx),
    };
    if !(s.p > 0.0 && s.p < 1.0) {
        log::warn!("suggested p = {} lies outside (0, 1); the closure is too sparse for the heuristic", s.p);
    }
    let body = match a.output.format {
        Format::Json => json(&s)?,
        Format::Tsv => tsv(
            &["nodes", "edges", "mean_degree", "p"],
            [vec![s.nodes.to_string(), s.edges.to_string(), s.mean_degree.to_string(), s.p.to_string()]],
        ),
    };
    Ok(Rendered::new("suggest-p", body))
}

#[derive(Serialize)]
struct CorrelationReport {
    kind: CorrelationKind,
    labels: Vec<String>,
    /// `null` where a vector is constant.
    matrix: Vec<Vec<Option<f64>>>,
}

pub fn correlate(a: &CorrelateArgs) -> CliResult<Rendered> {
    let ctx = load(&a.input)?;
    let grid = grid_or(&a.p_grid, &TABLE_GRID)?;
    let scores = scores_over(&ctx, &a.sampling.estimator(), &grid)?;
    let mut labels: Vec<String> = grid.iter().map(|p| format!("phi@{p}")).collect();
    labels.extend(["citations", "references"].map(String::from));
    let mut vectors: Vec<Vec<f64>> = scores.into_iter().map(|s| s.phi).collect();
    vectors.push(ctx.citation_counts().iter().map(|&c| c as f64).collect());
    vectors.push(ctx.reference_counts().iter().map(|&c| c as f64).collect());
    let report = CorrelationReport {
        kind: a.kind.into(),
        matrix: correlation_matrix(&vectors, a.kind.into())?,
        labels,
    };
    let body = match a.output.format {
        Format::Json => json(&report)?,
        Format::Tsv => {
            let header: Vec<&str> = std::iter::once("").chain(report.labels.iter().map(String::as_str)).collect();
            tsv(
                &header,
                report.labels.iter().zip(&report.matrix).map(|(label, row)| {
                    std::iter::once(label.clone()).chain(row.iter().map(|&c| opt(c))).collect()
                }),
            )
        }
    };
    Ok(Rendered::new("correlate", body))
}

#[derive(Serialize)]
struct Distribution {
    p: f64,
    /// (threshold, fraction of nodes scoring at most the threshold)
    cdf: Vec<(f64, f64)>,
}

pub fn cdf(a: &DistributionArgs) -> CliResult<Rendered> {
    let ctx = load(&a.input)?;
    let grid = grid_or(&a.p_grid, &TABLE_GRID)?;
    let scores = scores_over(&ctx, &a.sampling.estimator(), &grid)?;
    let dists: Vec<Distribution> = scores
        .iter()
        .map(|s| Distribution {
            p: s.p,
            cdf: score_cdf(&s.phi),
        })
        .collect();
    let body = match a.output.format {
        Format::Json => json(&dists)?,
        Format::Tsv => tsv(
            &["p", "threshold", "fraction"],
            dists.iter().flat_map(|d| {
                d.cdf
                    .iter()
                    .map(move |(x, f)| vec![d.p.to_string(), x.to_string(), f.to_string()])
            }),
        ),
    };
    Ok(Rendered::new("cdf", body))
}

#[derive(Serialize)]
struct PathEdge<'a> {
    tail: &'a str,
    head: &'a str,
    /// Decimal string; counts can exceed 64 bits.
    spc: String,
}

#[derive(Serialize)]
struct MainPathReport<'a> {
    variant: MainPathVariant,
    nodes: Vec<&'a str>,
    edges: Vec<PathEdge<'a>>,
    spc_total: String,
}

pub fn mainpath(a: &MainPathArgs) -> CliResult<Rendered> {
    let ctx = load(&a.input)?;
    let result = match MainPathVariant::from(a.variant) {
        MainPathVariant::Local => local_main_path(&ctx),
        MainPathVariant::Global => global_main_path(&ctx),
    };
    let spc = search_path_counts(&ctx);
    let edges: Vec<PathEdge> = result
        .edges
        .iter()
        .map(|&e| {
            let (x, y) = ctx.dag().edge(e);
            PathEdge {
                tail: ctx.id(x),
                head: ctx.id(y),
                spc: spc[e].to_string(),
            }
        })
        .collect();
    let body = match a.output.format {
        Format::Json => json(&MainPathReport {
            variant: result.variant,
            nodes: result.nodes(&ctx).into_iter().map(|v| ctx.id(v)).collect(),
            spc_total: result.spc_total.to_string(),
            edges,
        })?,
        Format::Tsv => tsv(
            &["step", "citing", "cited", "spc"],
            edges
                .into_iter()
                .enumerate()
                .map(|(i, e)| vec![(i + 1).to_string(), e.tail.to_owned(), e.head.to_owned(), e.spc]),
        ),
    };
    Ok(Rendered::new("mainpath", body))
}

#[derive(Serialize)]
struct EpcRow<'a> {
    id: &'a str,
    epc: f64,
    weight_from_source: f64,
    weight_to_target: f64,
}

pub fn epc(a: &PointArgs) -> CliResult<Rendered> {
    let ctx = load(&a.input)?;
    let values = expected_path_count(&ctx, a.p)?;
    let (from_s, to_t) = path_weights(&ctx, a.p)?;
    let mut order: Vec<usize> = (0..ctx.node_count()).collect();
    order.sort_by(|&x, &y| values[y].total_cmp(&values[x]).then_with(|| ctx.id(x).cmp(ctx.id(y))));
    let rows: Vec<EpcRow> = order
        .into_iter()
        .map(|v| EpcRow {
            id: ctx.id(v),
            epc: values[v],
            weight_from_source: from_s[v],
            weight_to_target: to_t[v],
        })
        .collect();
    let body = match a.output.format {
        Format::Json => json(&rows)?,
        Format::Tsv => tsv(
            &["id", "epc", "weight_from_source", "weight_to_target"],
            rows.iter().map(|r| {
                vec![
                    r.id.to_owned(),
                    r.epc.to_string(),
                    r.weight_from_source.to_string(),
                    r.weight_to_target.to_string(),
                ]
            }),
        ),
    };
    Ok(Rendered::new("epc", body))
}

#[derive(Serialize)]
struct ResistanceRow<'a> {
    id: &'a str,
    resistance: f64,
}

pub fn resistance(a: &PlainArgs) -> CliResult<Rendered> {
    let ctx = load(&a.input)?;
    let values = resistance_all(&ctx);
    let mut order: Vec<usize> = (0..ctx.node_count()).collect();
    order.sort_by(|&x, &y| values[x].total_cmp(&values[y]).then_with(|| ctx.id(x).cmp(ctx.id(y))));
    let rows: Vec<ResistanceRow> = order
        .into_iter()
        .map(|v| ResistanceRow {
            id: ctx.id(v),
            resistance: values[v],
        })
        .collect();
    let body = match a.output.format {
        Format::Json => json(&rows)?,
        Format::Tsv => tsv(
            &["id", "resistance"],
            rows.iter().map(|r| vec![r.id.to_owned(), r.resistance.to_string()]),
        ),
    };
    Ok(Rendered::new("resistance", body))
}

#[derive(Serialize)]
struct CheckRow<'a> {
    id: &'a str,
    exact: f64,
    estimate: f64,
    stderr: f64,
    /// Absolute error in units of the estimate's standard error.
    deviation: f64,
}

#[derive(Serialize)]
struct CheckReport<'a> {
    p: f64,
    samples: u64,
    seed: u64,
    edges: usize,
    max_deviation: f64,
    nodes: Vec<CheckRow<'a>>,
}

/// Largest closure `--random` will generate.
const RANDOM_MAX_EDGES: usize = 25;

pub fn exact_check(a: &ExactCheckArgs) -> CliResult<Rendered> {
    let ctx = match (&a.edges, a.random) {
        (Some(edges), _) => load(&GraphInput {
            edges: edges.clone(),
            nodes: a.nodes.clone(),
            source: a.source.clone().unwrap_or_default(),
            target: a.target.clone().unwrap_or_default(),
        })?,
        (None, Some(m)) if (2..=RANDOM_MAX_EDGES).contains(&m) => {
            random_closure(m, m, &mut ChaCha8Rng::seed_from_u64(a.sampling.seed))
        }
        (None, Some(m)) => {
            return Err(CliError::Usage(format!(
                "--random takes an edge count between 2 and {RANDOM_MAX_EDGES}, got {m}"
            )))
        }
        (None, None) => return Err(CliError::Usage("either --edges or --random is required".into())),
    };
    let query = ReliabilityQuery::new(a.p)?.with_max_edges(a.sampling.max_edges)?;
    let exact = exact_intermediacy(&ctx, &query)?;
    let config = SamplerConfig::new(a.p, a.sampling.samples, a.sampling.seed)?.with_workers(a.sampling.workers())?;
    let est = estimate_intermediacy(&ctx, &config);
    let rows: Vec<CheckRow> = (0..ctx.node_count())
        .map(|v| {
            let (x, y, se) = (exact.phi(v), est.phi(v), est.stderr(v).unwrap_or(0.0));
            let diff = (y - x).abs();
            CheckRow {
                id: ctx.id(v),
                exact: x,
                estimate: y,
                stderr: se,
                deviation: if se > 0.0 { diff / se } else if diff == 0.0 { 0.0 } else { f64::INFINITY },
            }
        })
        .collect();
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    eprintln!(
        "max deviation {max_deviation:.3} stderr over {} nodes ({} edges, p = {}, N = {})",
        rows.len(),
        ctx.edge_count(),
        a.p,
        a.sampling.samples
    );
    let body = match a.output.format {
        Format::Json => json(&CheckReport {
            p: a.p,
            samples: a.sampling.samples,
            seed: a.sampling.seed,
            edges: ctx.edge_count(),
            max_deviation,
            nodes: rows,
        })?,
        Format::Tsv => tsv(
            &["id", "exact", "estimate", "stderr", "deviation"],
            rows.iter().map(|r| {
                vec![
                    r.id.to_owned(),
                    r.exact.to_string(),
                    r.estimate.to_string(),
                    r.stderr.to_string(),
                    r.deviation.to_string(),
                ]
            }),
        ),
    };
    Ok(Rendered::new("exact-check", body))
}
