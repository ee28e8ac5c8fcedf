//! Subcommand implementations. Each returns a [`ResultTable`] whose rows are
//! ordered by `N` even though dimensions are evaluated in parallel.

use std::f64::consts::PI;

use finphase::dynamics::propagator;
use finphase::uncertainty::{coherent_table_means, s_u_closed, sincos_operators};
use finphase::{
    evolve_wigner, gup_expansion, harper_hamiltonian, kernel_defects, massar_spindel, rs_qp, sincos_suite,
    wigner, wigner_marginals, wigner_overlap, Dimension, GupReport, UncertaintyReport,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::config::{Command, Family, RunConfig};
use crate::error::{usage, CliResult};
use crate::table::{Cell, ColumnKind, ResultTable};

use ColumnKind::{Complex as C, Int as I, Real as R};

type Rows = Vec<Vec<Cell>>;

fn sweep(cfg: &RunConfig, f: impl Fn(Dimension) -> CliResult<Rows> + Sync) -> CliResult<Rows> {
    let dims = cfg.dims()?;
    let per_n: Vec<Rows> = dims.par_iter().map(|&d| f(d)).collect::<CliResult<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

fn table(cfg: &RunConfig, columns: &[(&str, ColumnKind)], rows: Rows) -> ResultTable {
    let meta = json!({
        "tool": "finphase",
        "version": env!("CARGO_PKG_VERSION"),
        "config": cfg.to_json(),
    });
    let mut t = ResultTable::new(columns, meta);
    t.extend(rows);
    t
}

/// Dispatches on `cfg.command`.
pub fn run(cfg: &RunConfig) -> CliResult<ResultTable> {
    match cfg.command {
        Command::Kernel => kernel_cmd(cfg),
        Command::Wigner | Command::FigA1 => wigner_cmd(cfg),
        Command::Marginals => marginals_cmd(cfg),
        Command::Evolve => evolve_cmd(cfg),
        Command::Bound => match cfg.family {
            Some(f) => bound_cmd(cfg, f),
            None => Err(usage("bound requires --family")),
        },
        Command::Table1 => table1_cmd(cfg),
        Command::Fig1 | Command::Fig2 => bound_cmd(cfg, Family::MassarSpindel),
        Command::FigB1 => bound_cmd(cfg, Family::SinCos),
    }
}

fn kernel_cmd(cfg: &RunConfig) -> CliResult<ResultTable> {
    let cols = [
        ("n", I),
        ("trace_dev", R),
        ("hermiticity_dev", R),
        ("orthonormality_dev", R),
        ("resolution_dev", R),
        ("triple_product_dev", R),
    ];
    let rows = sweep(cfg, |d| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(d.n() as u64));
        let k = kernel_defects(d, cfg.samples, &mut rng);
        Ok(vec![vec![
            d.n().into(),
            k.trace.into(),
            k.hermiticity.into(),
            k.orthonormality.into(),
            k.resolution.into(),
            k.triple_product.into(),
        ]])
    })?;
    Ok(table(cfg, &cols, rows))
}

fn wigner_cmd(cfg: &RunConfig) -> CliResult<ResultTable> {
    let cols = [("n", I), ("mu", I), ("nu", I), ("w", R), ("marginal_product", R)];
    let rows = sweep(cfg, |d| {
        let w = wigner(&cfg.state.density(d, cfg.seed)?)?;
        let (q, p) = wigner_marginals(&w)?;
        let mut rows = Vec::with_capacity(d.n() * d.n());
        for mu in d.labels() {
            for nu in d.labels() {
                rows.push(vec![
                    d.n().into(),
                    mu.into(),
                    nu.into(),
                    w.get(mu, nu).re.into(),
                    (p.get(mu) * q.get(nu)).into(),
                ]);
            }
        }
        Ok(rows)
    })?;
    Ok(table(cfg, &cols, rows))
}

fn marginals_cmd(cfg: &RunConfig) -> CliResult<ResultTable> {
    let cols = [("n", I), ("label", I), ("coordinate", R), ("momentum", R)];
    let rows = sweep(cfg, |d| {
        let w = wigner(&cfg.state.density(d, cfg.seed)?)?;
        let (q, p) = wigner_marginals(&w)?;
        Ok(d.labels()
            .map(|l| vec![d.n().into(), l.into(), q.get(l).into(), p.get(l).into()])
            .collect())
    })?;
    Ok(table(cfg, &cols, rows))
}

fn evolve_cmd(cfg: &RunConfig) -> CliResult<ResultTable> {
    let cols = [("n", I), ("step", I), ("t", R), ("norm", R), ("purity", R), ("w_min", R)];
    let dt = cfg.t / cfg.steps as f64;
    let rows = sweep(cfg, |d| {
        let h = harper_hamiltonian(d);
        let step = propagator(d, &h, dt, 0.0, cfg.mode, cfg.hbar_config())?;
        let mut w = wigner(&cfg.state.density(d, cfg.seed)?)?;
        let mut rows = Vec::with_capacity(cfg.steps + 1);
        for k in 0..=cfg.steps {
            if k > 0 {
                w = evolve_wigner(&w, &step)?;
            }
            rows.push(vec![
                d.n().into(),
                k.into(),
                (dt * k as f64).into(),
                w.mean().re.into(),
                wigner_overlap(&w, &w)?.re.into(),
                w.min_real().into(),
            ]);
        }
        Ok(rows)
    })?;
    Ok(table(cfg, &cols, rows))
}

fn report_cells(r: &UncertaintyReport, names: &[&str]) -> Vec<Cell> {
    names.iter().map(|n| r.get(n).unwrap_or(f64::NAN).into()).collect()
}

fn bound_cmd(cfg: &RunConfig, family: Family) -> CliResult<ResultTable> {
    match family {
        Family::RsQp => {
            let names = ["mean_q", "mean_p", "var_q", "var_p", "cov_qp", "u_qp", "bound"];
            let mut cols = vec![("n", I)];
            cols.extend(names.iter().map(|&n| (n, R)));
            cols.push(("slack", R));
            let rows = sweep(cfg, |d| {
                let r = rs_qp(&cfg.state.density(d, cfg.seed)?, &cfg.scale(d)?)?;
                let mut row = vec![d.n().into()];
                row.extend(report_cells(&r, &names));
                row.push(r.slack().into());
                Ok(vec![row])
            })?;
            Ok(table(cfg, &cols, rows))
        }
        Family::MassarSpindel => {
            let cols = [("n", I), ("var_u", R), ("var_v", R), ("a", R), ("u_uv", R), ("n_var_u_over_pi", R)];
            let rows = sweep(cfg, |d| {
                let r = massar_spindel(&cfg.state.density(d, cfg.seed)?)?;
                let mut row = vec![d.n().into()];
                row.extend(report_cells(&r, &["var_u", "var_v", "a", "u_uv"]));
                row.push((d.n() as f64 * r.get("var_u").unwrap_or(f64::NAN) / PI).into());
                Ok(vec![row])
            })?;
            Ok(table(cfg, &cols, rows))
        }
        Family::SinCos => {
            let cols = [
                ("n", I),
                ("mean_cu", R),
                ("mean_su", R),
                ("mean_cv", R),
                ("mean_sv", R),
                ("slack_cu_cv", R),
                ("slack_cu_sv", R),
                ("slack_su_cv", R),
                ("slack_su_sv", R),
                ("sum_u", R),
                ("sum_slack", R),
                ("s_u_closed", R),
            ];
            let rows = sweep(cfg, |d| {
                let s = sincos_suite(&cfg.state.density(d, cfg.seed)?)?;
                let mut row: Vec<Cell> = vec![d.n().into()];
                row.extend(s.means.iter().map(|&m| Cell::from(m)));
                row.extend(s.pairs.iter().map(|p| Cell::from(p.slack())));
                row.push(s.sum_u().into());
                row.push(s.sum_slack().into());
                row.push(s_u_closed(d)?.into());
                Ok(vec![row])
            })?;
            Ok(table(cfg, &cols, rows))
        }
        Family::Gup => {
            let cols = [
                ("n", I),
                ("order", I),
                ("coeff_q", R),
                ("coeff_p", R),
                ("var_q", R),
                ("var_p", R),
                ("var_u", R),
                ("var_u_series", R),
                ("error_u", R),
                ("var_v", R),
                ("var_v_series", R),
                ("error_v", R),
                ("lhs", R),
                ("rhs", R),
                ("slack", R),
            ];
            let rows = sweep(cfg, |d| {
                let g: GupReport = gup_expansion(&cfg.state.density(d, cfg.seed)?, &cfg.scale(d)?, cfg.order)?;
                Ok(vec![vec![
                    d.n().into(),
                    (g.order.value() as i64).into(),
                    g.coeff_q.into(),
                    g.coeff_p.into(),
                    g.var_q.into(),
                    g.var_p.into(),
                    g.var_u.into(),
                    g.var_u_series.into(),
                    g.error_u().into(),
                    g.var_v.into(),
                    g.var_v_series.into(),
                    g.error_v().into(),
                    g.lhs().into(),
                    g.rhs.into(),
                    g.slack().into(),
                ]])
            })?;
            Ok(table(cfg, &cols, rows))
        }
    }
}

const TABLE1_ENTRIES: [&str; 12] = [
    "cu",
    "su",
    "cv",
    "sv",
    "cu2",
    "su2",
    "cv2",
    "sv2",
    "comm_cu_cv",
    "comm_cu_sv",
    "comm_su_cv",
    "comm_su_sv",
];

fn table1_cmd(cfg: &RunConfig) -> CliResult<ResultTable> {
    let (kappa, tau) = cfg
        .state
        .coherent_labels()
        .ok_or_else(|| usage("table1 requires --state vacuum or coherent:κ,τ"))?;
    let mut cols = vec![("n", I), ("kappa", I), ("tau", I)];
    cols.extend(TABLE1_ENTRIES.iter().map(|&n| (n, C)));
    cols.push(("max_trace_diff", R));
    let rows = sweep(cfg, |d| {
        let tm = coherent_table_means(d, kappa, tau, &cfg.scale(d)?)?;
        let rho = cfg.state.density(d, cfg.seed)?;
        let o = sincos_operators(d);
        let direct = [
            o.cu.trace_product(&rho),
            o.su.trace_product(&rho),
            o.cv.trace_product(&rho),
            o.sv.trace_product(&rho),
            (&o.cu * &o.cu).trace_product(&rho),
            (&o.su * &o.su).trace_product(&rho),
            (&o.cv * &o.cv).trace_product(&rho),
            (&o.sv * &o.sv).trace_product(&rho),
            o.cu.commutator(&o.cv).trace_product(&rho),
            o.cu.commutator(&o.sv).trace_product(&rho),
            o.su.commutator(&o.cv).trace_product(&rho),
            o.su.commutator(&o.sv).trace_product(&rho),
        ];
        let entries = tm.entries();
        let diff = entries
            .iter()
            .zip(direct)
            .map(|((_, c), t)| (c - t).norm())
            .fold(0.0, f64::max);
        let mut row: Vec<Cell> = vec![d.n().into(), kappa.into(), tau.into()];
        row.extend(entries.iter().map(|&(_, z)| Cell::from(z)));
        row.push(diff.into());
        Ok(vec![row])
    })?;
    Ok(table(cfg, &cols, rows))
}
