//! Verification campaigns: each case pairs an asymptotic prediction with an
//! independent oracle and writes a `{case_id}_{method}.csv` / `.json` report.

use std::fs;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use tailasym::asymptotics;
use tailasym::numeric::special::log_bessel_k0_tail;
use tailasym::oracle::{
    conditional_mc_tail, gmda_ratio, product_tail_quadrature, tail_equivalence_check,
    QuadratureConfig, VerificationReport,
};
use tailasym::risk::{auxiliary_function, TailModel, TailModelSpec};

use crate::{derive_seed, resolve_seed, RunArgs, RunOutcome};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CampaignFile {
    #[serde(default)]
    seed: Option<u64>,
    cases: Vec<CaseEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseEntry {
    case_id: String,
    method: String,
    params: serde_json::Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductTailParams {
    y1: TailModelSpec,
    y2: TailModelSpec,
    /// Models used on the oracle side when the exact law differs from the
    /// Weibullian completion (defaults to `y1`/`y2`).
    #[serde(default)]
    oracle_y1: Option<TailModelSpec>,
    #[serde(default)]
    oracle_y2: Option<TailModelSpec>,
    u_grid: Vec<f64>,
    #[serde(default)]
    tolerance: Option<f64>,
    /// Per-row tolerances aligned with `u_grid`; overrides `tolerance`.
    #[serde(default)]
    tolerances: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BesselAnchorParams {
    u_grid: Vec<f64>,
    /// Tolerance on |ratio - 1| between the quadrature and the Bessel form.
    tolerance: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GmdaRatioParams {
    y1: TailModelSpec,
    scaler: TailModelSpec,
    u: f64,
    t_grid: Vec<f64>,
    #[serde(default)]
    tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConditionalMcParams {
    y1: TailModelSpec,
    y2: TailModelSpec,
    u_grid: Vec<f64>,
    samples: usize,
    #[serde(default)]
    tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TailEquivalenceParams {
    scaler: TailModelSpec,
    y: TailModelSpec,
    w: f64,
    u_grid: Vec<f64>,
    #[serde(default)]
    tolerance: Option<f64>,
}

fn check_u_grid(grid: &[f64]) -> Result<(), String> {
    if grid.is_empty() {
        return Err("u_grid must be nonempty".into());
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err("u_grid must be strictly increasing".into());
    }
    Ok(())
}

fn model(spec: &TailModelSpec) -> Result<TailModel, String> {
    TailModel::try_from(spec).map_err(|e| e.to_string())
}

fn need_tol(case: &str, tol: Option<f64>, fallback: Option<f64>) -> Result<f64, String> {
    tol.or(fallback)
        .ok_or_else(|| format!("case {case}: no tolerance given and no --tolerance fallback"))
}

fn run_case(
    entry: &CaseEntry,
    seed: u64,
    fallback_tol: Option<f64>,
) -> Result<VerificationReport, String> {
    let cfg = QuadratureConfig::default();
    let err = |e: tailasym::Error| format!("case {}: {e}", entry.case_id);
    match entry.method.as_str() {
        "product_tail" => {
            let p: ProductTailParams =
                serde_json::from_value(entry.params.clone()).map_err(|e| e.to_string())?;
            check_u_grid(&p.u_grid)?;
            let y1 = model(&p.y1)?;
            let y2 = model(&p.y2)?;
            let w1 = y1.as_weibullian().ok_or("product_tail: y1 must be weibullian")?;
            let w2 = y2.as_weibullian().ok_or("product_tail: y2 must be weibullian")?;
            let oy1 = p.oracle_y1.as_ref().map(model).transpose()?.unwrap_or_else(|| y1.clone());
            let oy2 = p.oracle_y2.as_ref().map(model).transpose()?.unwrap_or_else(|| y2.clone());
            let tols: Vec<f64> = match (&p.tolerances, p.tolerance) {
                (Some(ts), _) => {
                    if ts.len() != p.u_grid.len() {
                        return Err(format!(
                            "case {}: tolerances length {} != u_grid length {}",
                            entry.case_id,
                            ts.len(),
                            p.u_grid.len()
                        ));
                    }
                    ts.clone()
                }
                (None, t) => {
                    let t = need_tol(&entry.case_id, t, fallback_tol)?;
                    vec![t; p.u_grid.len()]
                }
            };
            let max_tol = tols.iter().cloned().fold(0.0f64, f64::max);
            let mut rep = VerificationReport::new(&entry.case_id, "product_tail", max_tol)
                .with_seed(seed)
                .with_params(entry.params.clone());
            for (&u, &tol) in p.u_grid.iter().zip(&tols) {
                let pred = asymptotics::product_tail_weibullian_log(u, w1, w2).map_err(err)?;
                let orc = product_tail_quadrature(u, &oy1, &oy2, &cfg).map_err(err)?;
                rep.push_with_tolerance(u, pred, orc.log_value, tol);
            }
            Ok(rep)
        }
        "bessel_anchor" => {
            let p: BesselAnchorParams =
                serde_json::from_value(entry.params.clone()).map_err(|e| e.to_string())?;
            check_u_grid(&p.u_grid)?;
            let halfnormal =
                TailModel::try_from(&TailModelSpec::Halfnormal).map_err(|e| e.to_string())?;
            let mut rep = VerificationReport::new(&entry.case_id, "bessel_anchor", p.tolerance)
                .with_seed(seed)
                .with_params(entry.params.clone());
            for &u in &p.u_grid {
                let quad = product_tail_quadrature(u, &halfnormal, &halfnormal, &cfg).map_err(err)?;
                let bessel = (2.0 / std::f64::consts::PI).ln()
                    + log_bessel_k0_tail(u).map_err(err)?;
                rep.push(u, quad.log_value, bessel);
            }
            Ok(rep)
        }
        "gmda_ratio" => {
            let p: GmdaRatioParams =
                serde_json::from_value(entry.params.clone()).map_err(|e| e.to_string())?;
            if p.t_grid.is_empty() {
                return Err(format!("case {}: t_grid must be nonempty", entry.case_id));
            }
            let tol = need_tol(&entry.case_id, p.tolerance, fallback_tol)?;
            let y1 = model(&p.y1)?;
            let scaler = model(&p.scaler)?;
            let aux = auxiliary_function(&y1).map_err(err)?;
            let mut rep = VerificationReport::new(&entry.case_id, "gmda_ratio", tol)
                .with_seed(seed)
                .with_params(entry.params.clone());
            for &t in &p.t_grid {
                let ratio = gmda_ratio(&y1, &scaler, p.u, t, &aux, &cfg).map_err(err)?;
                // row key: the shifted threshold; prediction: exp(-t)
                rep.push(p.u + aux.eval(p.u) * t, -t, ratio.ln());
            }
            Ok(rep)
        }
        "conditional_mc" => {
            let p: ConditionalMcParams =
                serde_json::from_value(entry.params.clone()).map_err(|e| e.to_string())?;
            check_u_grid(&p.u_grid)?;
            let tol = need_tol(&entry.case_id, p.tolerance, fallback_tol)?;
            let y1 = model(&p.y1)?;
            let y2 = model(&p.y2)?;
            let mut rep = VerificationReport::new(&entry.case_id, "conditional_mc", tol)
                .with_seed(seed)
                .with_params(entry.params.clone());
            for &u in &p.u_grid {
                let quad = product_tail_quadrature(u, &y1, &y2, &cfg).map_err(err)?;
                let mc = conditional_mc_tail(u, &y1, &y2, p.samples, seed).map_err(err)?;
                rep.push(u, quad.log_value, mc.log_estimate);
            }
            Ok(rep)
        }
        "tail_equivalence" => {
            let p: TailEquivalenceParams =
                serde_json::from_value(entry.params.clone()).map_err(|e| e.to_string())?;
            check_u_grid(&p.u_grid)?;
            let tol = need_tol(&entry.case_id, p.tolerance, fallback_tol)?;
            let scaler = model(&p.scaler)?;
            let y = model(&p.y)?;
            let mut rep = VerificationReport::new(&entry.case_id, "tail_equivalence", tol)
                .with_seed(seed)
                .with_params(entry.params.clone());
            for &u in &p.u_grid {
                let ratio = tail_equivalence_check(&scaler, &y, u, p.w, &cfg).map_err(err)?;
                rep.push(u, 0.0, ratio.ln());
            }
            Ok(rep)
        }
        other => Err(format!("case {}: unknown method '{other}'", entry.case_id)),
    }
}

pub(crate) fn run(args: &RunArgs) -> Result<RunOutcome, String> {
    let text = fs::read_to_string(&args.file)
        .map_err(|e| format!("reading {}: {e}", args.file.display()))?;
    let campaign: CampaignFile =
        serde_json::from_str(&text).map_err(|e| format!("parsing {}: {e}", args.file.display()))?;
    if campaign.cases.is_empty() {
        return Err("campaign has no cases".into());
    }
    let mut seen = std::collections::HashSet::new();
    for c in &campaign.cases {
        if c.case_id.is_empty() {
            return Err("case_id must be nonempty".into());
        }
        if !seen.insert(&c.case_id) {
            return Err(format!("duplicate case_id '{}'", c.case_id));
        }
    }
    let root_seed = resolve_seed(args.seed, campaign.seed);

    let reports: Vec<Result<VerificationReport, String>> = campaign
        .cases
        .par_iter()
        .enumerate()
        .map(|(i, entry)| run_case(entry, derive_seed(root_seed, i as u64), args.tolerance))
        .collect();

    let mut all_pass = true;
    for rep in reports {
        let rep = rep?;
        rep.write_files(&args.out_dir).map_err(|e| e.to_string())?;
        let failed = rep.rows.iter().filter(|r| !r.pass).count();
        if rep.all_pass() {
            println!("case {} [{}]: PASS ({} rows)", rep.case_id, rep.method, rep.rows.len());
        } else {
            println!(
                "case {} [{}]: FAIL ({failed}/{} rows failed)",
                rep.case_id,
                rep.method,
                rep.rows.len()
            );
            all_pass = false;
        }
    }

    // campaign-level summary, auditable together with the per-case files
    let summary = json!({
        "campaign": args.file.file_name().and_then(|s| s.to_str()),
        "seed": root_seed,
        "cases": seen.len(),
        "all_pass": all_pass,
    });
    let mut bytes = serde_json::to_string_pretty(&summary).expect("serializable");
    bytes.push('\n');
    tailasym::oracle::report::write_atomic(&args.out_dir.join("campaign_summary.json"), bytes.as_bytes())
        .map_err(|e| e.to_string())?;

    Ok(if all_pass { RunOutcome::AllPass } else { RunOutcome::SomeFailed })
}
