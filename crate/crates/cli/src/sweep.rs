//! Detuning sweeps of the susceptibility and group-velocity statistics.

use eit_core::group_velocity::vg_stats_with_weights;
use eit_core::susceptibility::{chi_stats_with_weights, CaseWeights};
use eit_core::{chi_stats, vg_mean_field, Case, CoherentPair, EitError, SystemParams};
use rayon::prelude::*;

use crate::config::{Quantity, RunConfig};
use crate::error::Result;
use crate::output::{tool_header, Cell, Table};

pub const SWEEP_COLUMNS: [&str; 11] = [
    "delta1",
    "chi1_mean",
    "chi2_mean",
    "chi1_std",
    "chi2_std",
    "p1",
    "p2",
    "vg_over_c_mean",
    "vg_over_c_std",
    "vg_rel_fluct",
    "regime_flag",
];

/// Column appended when a speed-of-light scale is configured.
pub const VG_MPS_COLUMN: &str = "vg_mps_derived";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiPart {
    pub chi1_mean: f64,
    pub chi2_mean: f64,
    pub chi1_std: f64,
    pub chi2_std: f64,
    pub p1: Option<f64>,
    pub p2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VgPart {
    pub mean: f64,
    pub std: f64,
    pub rel_fluct: f64,
    pub regime: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub delta1: f64,
    pub chi: Result<ChiPart, EitError>,
    /// `None` where the group velocity is not defined (case c).
    pub vg: Option<Result<VgPart, EitError>>,
}

impl SweepRow {
    pub fn errors(&self) -> impl Iterator<Item = &EitError> {
        self.chi
            .as_ref()
            .err()
            .into_iter()
            .chain(self.vg.as_ref().and_then(|v| v.as_ref().err()))
    }

    /// Cells in [`SWEEP_COLUMNS`] order. Quantities outside `only` are null.
    pub fn cells(&self, only: Option<Quantity>, c_scale: Option<f64>) -> Vec<Cell> {
        let want = |q: Quantity| {
            only.is_none_or(|o| o == q || (o == Quantity::ChiFluct && q == Quantity::ChiMean))
        };
        let chi = self.chi.as_ref().ok();
        let mean =
            |f: fn(&ChiPart) -> f64| Cell::opt(chi.filter(|_| want(Quantity::ChiMean)).map(f));
        let fluct = |f: fn(&ChiPart) -> Option<f64>| {
            Cell::opt(chi.filter(|_| want(Quantity::ChiFluct)).and_then(f))
        };
        let vg = self.vg.as_ref().filter(|_| want(Quantity::Vg));
        let vg_ok = vg.and_then(|v| v.as_ref().ok());
        let regime = match vg {
            Some(Ok(v)) => Cell::Text(v.regime),
            Some(Err(EitError::Singular { .. })) => Cell::Text("singular"),
            _ => Cell::Null,
        };
        let mut out = vec![
            Cell::Num(self.delta1),
            mean(|c| c.chi1_mean),
            mean(|c| c.chi2_mean),
            fluct(|c| Some(c.chi1_std)),
            fluct(|c| Some(c.chi2_std)),
            fluct(|c| c.p1),
            fluct(|c| c.p2),
            Cell::opt(vg_ok.map(|v| v.mean)),
            Cell::opt(vg_ok.map(|v| v.std)),
            Cell::opt(vg_ok.map(|v| v.rel_fluct)),
            regime,
        ];
        if let Some(c) = c_scale {
            out.push(Cell::opt(vg_ok.map(|v| v.mean * c)));
        }
        out
    }
}

/// Builds a thread pool with `jobs` workers, or the rayon default for 0.
pub fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

fn chi_row(
    case: Case,
    params: &SystemParams,
    fields: &CoherentPair,
    tail_eps: f64,
    weights: Option<&CaseWeights>,
    d: f64,
) -> Result<ChiPart, EitError> {
    let st = match weights {
        Some(w) => chi_stats_with_weights(case, params, w, d)?,
        None => chi_stats(case, params, fields, d, tail_eps)?,
    };
    Ok(ChiPart {
        chi1_mean: st.chi1_mean,
        chi2_mean: st.chi2_mean,
        chi1_std: st.chi1_std,
        chi2_std: st.chi2_std,
        p1: st.p1,
        p2: st.p2,
    })
}

fn vg_row(
    case: Case,
    params: &SystemParams,
    n_alpha: f64,
    weights: Option<&CaseWeights>,
    d: f64,
) -> Option<Result<VgPart, EitError>> {
    match (case, weights) {
        (Case::A, _) => Some(vg_mean_field(params, n_alpha, d).map(|v| VgPart {
            mean: v.vg_over_c,
            std: 0.0,
            rel_fluct: 0.0,
            regime: v.regime.as_str(),
        })),
        (Case::B, Some(w)) => Some(vg_stats_with_weights(params, &w.coupling, n_alpha, d).map(
            |s| VgPart {
                mean: s.vg_mean,
                std: s.vg_std,
                rel_fluct: s.rel_fluct,
                regime: s.regime.as_str(),
            },
        )),
        _ => None,
    }
}

/// Evaluates every grid point. Rows come back in grid order whatever the
/// worker count, and each row is computed by the same sequential code, so
/// the output is bit-identical across `jobs`.
pub fn run_sweep(cfg: &RunConfig, jobs: usize) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let params = cfg.system_params();
    let fields = cfg.fields()?;
    let weights = match cfg.case {
        Case::A => None,
        case => Some(CaseWeights::new(case, &fields, cfg.tail_eps)?),
    };
    let grid = cfg.delta_grid();
    let rows = pool(jobs).install(|| {
        grid.par_iter()
            .map(|&d| SweepRow {
                delta1: d,
                chi: chi_row(
                    cfg.case,
                    &params,
                    &fields,
                    cfg.tail_eps,
                    weights.as_ref(),
                    d,
                ),
                vg: vg_row(cfg.case, &params, cfg.alpha2, weights.as_ref(), d),
            })
            .collect()
    });
    Ok(rows)
}

/// One manifest line per failed row.
pub fn failure_manifest(rows: &[SweepRow]) -> Vec<String> {
    rows.iter()
        .enumerate()
        .flat_map(|(i, r)| {
            r.errors()
                .map(move |e| format!("row {i} (delta1 = {}): {e}", r.delta1))
        })
        .collect()
}

pub fn sweep_table(cfg: &RunConfig, rows: &[SweepRow], only: Option<Quantity>) -> Table {
    let mut meta = tool_header("sweep");
    meta.push(("quantity", only.map_or("all", |q| q.as_str()).into()));
    meta.extend(cfg.metadata());
    let mut columns = SWEEP_COLUMNS.to_vec();
    if let Some(c) = cfg.c_scale {
        meta.push(("c_scale", c.into()));
        columns.push(VG_MPS_COLUMN);
    }
    let mut t = Table::new(meta, columns);
    for r in rows {
        t.push(r.cells(only, cfg.c_scale));
    }
    t
}
