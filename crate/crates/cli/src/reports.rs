//! Transient, uncertainty and semiclassical tables.

use eit_core::dynamics::dark_state_initial;
use eit_core::{
    build_sector_default, dispersion_turning_point, evolve, semiclassical_chi, steady_state,
    uncertainty_bound, Complex64, EitError, Order,
};
use rayon::prelude::*;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{tool_header, Cell, Table};
use crate::sweep::pool;

/// A table plus one manifest line per row that failed numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub failures: Vec<String>,
}

fn metadata(cfg: &RunConfig, command: &'static str) -> Vec<(&'static str, Value)> {
    let mut m = tool_header(command);
    m.extend(cfg.metadata());
    m
}

pub const TRANSIENT_COLUMNS: [&str; 8] = [
    "t",
    "rho_ab_re",
    "rho_ab_im",
    "rho_cb_re",
    "rho_cb_im",
    "rho_ca_re",
    "rho_ca_im",
    "dist_to_steady",
];

/// Coherences of one sector over the configured time grid, starting from
/// the dark state.
pub fn run_transient(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let p = cfg.system_params();
    let tr = &cfg.transient;
    let order = Order::try_from(tr.order)?;
    let sector = build_sector_default(&p, cfg.case, tr.n1, tr.n2, tr.delta1)?;
    let r0 = dark_state_initial(&p, tr.n1, tr.n2, tr.delta1, order)?;
    let ss = steady_state(&sector.drift, &sector.drive)?;

    let mut meta = metadata(cfg, "transient");
    meta.extend([
        ("n1", tr.n1.into()),
        ("n2", tr.n2.into()),
        ("transient_delta1", tr.delta1.into()),
        ("order", tr.order.into()),
    ]);
    let mut table = Table::new(meta, TRANSIENT_COLUMNS.to_vec());
    let mut failures = Vec::new();
    for (i, t) in tr.times().into_iter().enumerate() {
        match evolve(&sector.drift, &sector.drive, &r0, t) {
            Ok(r) => table.push(vec![
                Cell::Num(t),
                Cell::Num(r.rho_ab.re),
                Cell::Num(r.rho_ab.im),
                Cell::Num(r.rho_cb.re),
                Cell::Num(r.rho_cb.im),
                Cell::Num(r.rho_ca.re),
                Cell::Num(r.rho_ca.im),
                Cell::Num(r.distance(&ss)),
            ]),
            Err(e) => {
                failures.push(format!("row {i} (t = {t}): {e}"));
                let mut row = vec![Cell::Num(t)];
                row.extend(std::iter::repeat_n(Cell::Null, TRANSIENT_COLUMNS.len() - 1));
                table.push(row);
            }
        }
    }
    Ok(Report { table, failures })
}

pub const UNCERTAINTY_COLUMNS: [&str; 9] = [
    "delta1",
    "lhs",
    "rhs",
    "satisfied",
    "lhs_exact",
    "satisfied_exact",
    "slope_f",
    "cos_std",
    "sin_mean",
];

/// Both sides of the group-velocity / phase uncertainty relation over the
/// detuning grid.
pub fn run_uncertainty(cfg: &RunConfig, jobs: usize) -> Result<Report> {
    cfg.validate()?;
    let p = cfg.system_params();
    let alpha = Complex64::from_polar(cfg.alpha2.sqrt(), cfg.alpha_phase);
    let grid = cfg.delta_grid();
    let results: Vec<Result<_, EitError>> = pool(jobs).install(|| {
        grid.par_iter()
            .map(|&d| uncertainty_bound(&p, alpha, d, cfg.tail_eps))
            .collect()
    });
    let mut table = Table::new(metadata(cfg, "uncertainty"), UNCERTAINTY_COLUMNS.to_vec());
    let mut failures = Vec::new();
    for (i, (d, r)) in grid.iter().zip(results).enumerate() {
        match r {
            Ok(u) => table.push(vec![
                Cell::Num(*d),
                Cell::Num(u.lhs),
                Cell::Num(u.rhs),
                Cell::Bool(u.satisfied),
                Cell::Num(u.lhs_exact),
                Cell::Bool(u.satisfied_exact),
                Cell::Num(u.slope_f),
                Cell::Num(u.cos_std),
                Cell::Num(u.sin_mean),
            ]),
            Err(e) => {
                failures.push(format!("row {i} (delta1 = {d}): {e}"));
                let mut row = vec![Cell::Num(*d)];
                row.extend(std::iter::repeat_n(
                    Cell::Null,
                    UNCERTAINTY_COLUMNS.len() - 1,
                ));
                table.push(row);
            }
        }
    }
    Ok(Report { table, failures })
}

pub const SEMICLASSICAL_COLUMNS: [&str; 3] = ["delta1", "chi", "dchi_domega"];

/// Small-detuning lossless susceptibility from mean photon numbers, with
/// Rabi frequencies `2 g1 sqrt(beta2)` and `2 g2 sqrt(alpha2 + 1)`.
pub fn run_semiclassical(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let p = cfg.system_params();
    let o1 = 2.0 * p.g1 * cfg.beta2.sqrt();
    let o2 = 2.0 * p.g2 * (cfg.alpha2 + 1.0).sqrt();
    let mut meta = metadata(cfg, "semiclassical");
    meta.extend([
        ("rabi1", o1.into()),
        ("rabi2", o2.into()),
        (
            "turning_point",
            dispersion_turning_point(o1, o2).map_or(Value::Null, Value::from),
        ),
    ]);
    let mut table = Table::new(meta, SEMICLASSICAL_COLUMNS.to_vec());
    for d in cfg.delta_grid() {
        let s = semiclassical_chi(&p, o1, o2, d)?;
        table.push(vec![
            Cell::Num(d),
            Cell::Num(s.chi),
            Cell::Num(s.dchi_domega),
        ]);
    }
    Ok(Report {
        table,
        failures: Vec::new(),
    })
}
