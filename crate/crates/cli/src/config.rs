//! Run configuration: parsing of flag values, JSON config files and
//! validation against every dimension in the sweep.

use std::path::PathBuf;

use finphase::dynamics::PropagatorMode;
use finphase::uncertainty::{planck_preset, GupOrder, PlanckPreset, ScaleParams};
use finphase::{coherent_state, maximally_mixed, vacuum, Dimension, HbarConfig, Operator, StateVector};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{usage, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Kernel,
    Wigner,
    Marginals,
    Evolve,
    Bound,
    Table1,
    Fig1,
    Fig2,
    FigA1,
    FigB1,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Kernel => "kernel",
            Command::Wigner => "wigner",
            Command::Marginals => "marginals",
            Command::Evolve => "evolve",
            Command::Bound => "bound",
            Command::Table1 => "table1",
            Command::Fig1 => "fig1",
            Command::Fig2 => "fig2",
            Command::FigA1 => "figA1",
            Command::FigB1 => "figB1",
        }
    }

    fn default_range(self) -> NRange {
        let (start, stop, step) = match self {
            Command::Fig1 => (3, 57, 2),
            Command::Fig2 => (5, 25, 2),
            Command::FigA1 => (21, 21, 2),
            Command::FigB1 => (3, 21, 2),
            _ => (5, 5, 2),
        };
        NRange { start, stop, step }
    }
}

/// Inclusive odd range `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub stop: usize,
    pub step: usize,
}

impl NRange {
    pub fn parse(s: &str) -> CliResult<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let num = |p: &str| {
            p.parse::<usize>()
                .map_err(|_| usage(format!("--n: '{p}' is not a non-negative integer")))
        };
        let (start, stop, step) = match parts.as_slice() {
            [a] => (num(a)?, num(a)?, 2),
            [a, b] => (num(a)?, num(b)?, 2),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(usage(format!("--n: expected N, a:b or a:b:c, got '{s}'"))),
        };
        let r = NRange { start, stop, step };
        r.dims()?;
        Ok(r)
    }

    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.stop).step_by(self.step.max(1)).collect()
    }

    /// Every `N` in the range, each validated as odd and at least 3.
    pub fn dims(&self) -> CliResult<Vec<Dimension>> {
        if self.step == 0 {
            return Err(usage("--n: step must be positive"));
        }
        if self.start > self.stop {
            return Err(usage(format!("--n: empty range {}:{}", self.start, self.stop)));
        }
        self.values()
            .into_iter()
            .map(|n| Dimension::new(n).map_err(|_| usage(format!("--n: {n} is not an odd integer >= 3"))))
            .collect()
    }

    pub fn describe(&self) -> String {
        format!("{}:{}:{}", self.start, self.stop, self.step)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateSpec {
    Vacuum,
    Coherent { kappa: i64, tau: i64 },
    BasisU(i64),
    BasisV(i64),
    Mixed,
    /// Random pure state; `None` uses `--seed`.
    Random(Option<u64>),
}

impl StateSpec {
    /// Accepts `vacuum`, `coherent:κ,τ`, `basis-u:α`, `basis-v:β`, `mixed`,
    /// `random` and `random:seed`; `name(args)` spelling is also accepted.
    pub fn parse(s: &str) -> CliResult<Self> {
        let norm = s.trim().replace('(', ":").replace(')', "").replace('_', "-").to_lowercase();
        let (head, args) = match norm.split_once(':') {
            Some((h, a)) => (h.to_string(), Some(a.to_string())),
            None => (norm.clone(), None),
        };
        let ints = |a: &str| -> CliResult<Vec<i64>> {
            a.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| usage(format!("--state: '{x}' is not an integer")))
                })
                .collect()
        };
        let bad = || usage(format!("--state: cannot parse '{s}'"));
        match (head.as_str(), args.as_deref()) {
            ("vacuum", None) => Ok(StateSpec::Vacuum),
            ("mixed", None) => Ok(StateSpec::Mixed),
            ("random", None) => Ok(StateSpec::Random(None)),
            ("random", Some(a)) => a
                .trim()
                .parse::<u64>()
                .map(|v| StateSpec::Random(Some(v)))
                .map_err(|_| bad()),
            ("coherent", Some(a)) => match ints(a)?.as_slice() {
                [k, t] => Ok(StateSpec::Coherent { kappa: *k, tau: *t }),
                _ => Err(bad()),
            },
            ("basis-u", Some(a)) => match ints(a)?.as_slice() {
                [x] => Ok(StateSpec::BasisU(*x)),
                _ => Err(bad()),
            },
            ("basis-v", Some(a)) => match ints(a)?.as_slice() {
                [x] => Ok(StateSpec::BasisV(*x)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }

    fn labels(&self) -> Vec<i64> {
        match *self {
            StateSpec::Coherent { kappa, tau } => vec![kappa, tau],
            StateSpec::BasisU(a) | StateSpec::BasisV(a) => vec![a],
            _ => vec![],
        }
    }

    pub fn validate(&self, dim: Dimension) -> CliResult<()> {
        let ell = dim.ell();
        match self.labels().into_iter().find(|l| l.abs() > ell) {
            Some(l) => Err(usage(format!("--state: label {l} lies outside [-{ell}, {ell}] for N={}", dim.n()))),
            None => Ok(()),
        }
    }

    /// `(κ, τ)` when the state is a coherent state.
    pub fn coherent_labels(&self) -> Option<(i64, i64)> {
        match *self {
            StateSpec::Vacuum => Some((0, 0)),
            StateSpec::Coherent { kappa, tau } => Some((kappa, tau)),
            _ => None,
        }
    }

    pub fn density(&self, dim: Dimension, seed: u64) -> CliResult<Operator> {
        self.validate(dim)?;
        Ok(match *self {
            StateSpec::Vacuum => vacuum(dim)?.projector(),
            StateSpec::Coherent { kappa, tau } => coherent_state(dim, kappa, tau)?.projector(),
            StateSpec::BasisU(a) => StateVector::basis_u(dim, a).projector(),
            StateSpec::BasisV(b) => StateVector::basis_v(dim, b).projector(),
            StateSpec::Mixed => maximally_mixed(dim),
            StateSpec::Random(s) => StateVector::random(dim, s.unwrap_or(seed)).projector(),
        })
    }

    pub fn describe(&self) -> String {
        match *self {
            StateSpec::Vacuum => "vacuum".into(),
            StateSpec::Coherent { kappa, tau } => format!("coherent:{kappa},{tau}"),
            StateSpec::BasisU(a) => format!("basis-u:{a}"),
            StateSpec::BasisV(b) => format!("basis-v:{b}"),
            StateSpec::Mixed => "mixed".into(),
            StateSpec::Random(None) => "random".into(),
            StateSpec::Random(Some(s)) => format!("random:{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    PlanckD0,
    PlanckD1,
    PlanckD2,
}

impl Preset {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s.trim() {
            "planck-d0" => Ok(Preset::PlanckD0),
            "planck-d1" => Ok(Preset::PlanckD1),
            "planck-d2" => Ok(Preset::PlanckD2),
            other => Err(usage(format!("--preset: expected planck-d0|planck-d1|planck-d2, got '{other}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::PlanckD0 => "planck-d0",
            Preset::PlanckD1 => "planck-d1",
            Preset::PlanckD2 => "planck-d2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s.trim() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(usage(format!("--format: expected csv|json, got '{other}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    RsQp,
    MassarSpindel,
    SinCos,
    Gup,
}

impl Family {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s.trim() {
            "rs-qp" => Ok(Family::RsQp),
            "massar-spindel" => Ok(Family::MassarSpindel),
            "sincos" => Ok(Family::SinCos),
            "gup" => Ok(Family::Gup),
            other => Err(usage(format!(
                "--family: expected rs-qp|massar-spindel|sincos|gup, got '{other}'"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::RsQp => "rs-qp",
            Family::MassarSpindel => "massar-spindel",
            Family::SinCos => "sincos",
            Family::Gup => "gup",
        }
    }
}

fn parse_mode(s: &str) -> CliResult<PropagatorMode> {
    let s = s.trim();
    if s == "exact" {
        return Ok(PropagatorMode::Exact);
    }
    s.strip_prefix("series:")
        .and_then(|k| k.parse::<u32>().ok())
        .map(PropagatorMode::Series)
        .ok_or_else(|| usage(format!("--mode: expected exact or series:K, got '{s}'")))
}

fn mode_name(m: PropagatorMode) -> String {
    match m {
        PropagatorMode::Exact => "exact".into(),
        PropagatorMode::Series(k) => format!("series:{k}"),
    }
}

/// Optional settings shared by flags and the `--config` JSON file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Overrides {
    pub n: Option<String>,
    pub state: Option<String>,
    pub hbar: Option<f64>,
    pub delta: Option<f64>,
    pub preset: Option<String>,
    pub scale_s: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub family: Option<String>,
    pub order: Option<u32>,
    pub t: Option<f64>,
    pub steps: Option<usize>,
    pub mode: Option<String>,
    pub samples: Option<usize>,
}

impl Overrides {
    pub fn from_json_file(path: &std::path::Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("--config: cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| usage(format!("--config: {}: {e}", path.display())))
    }

    /// Values set in `self` win over those in `base`.
    pub fn over(self, base: Overrides) -> Overrides {
        Overrides {
            n: self.n.or(base.n),
            state: self.state.or(base.state),
            hbar: self.hbar.or(base.hbar),
            delta: self.delta.or(base.delta),
            preset: self.preset.or(base.preset),
            scale_s: self.scale_s.or(base.scale_s),
            seed: self.seed.or(base.seed),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            family: self.family.or(base.family),
            order: self.order.or(base.order),
            t: self.t.or(base.t),
            steps: self.steps.or(base.steps),
            mode: self.mode.or(base.mode),
            samples: self.samples.or(base.samples),
        }
    }
}

/// A fully resolved and validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n_range: NRange,
    pub state: StateSpec,
    pub delta: f64,
    pub preset: Option<Preset>,
    pub scale_s: Option<f64>,
    pub hbar: f64,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub family: Option<Family>,
    pub order: GupOrder,
    pub t: f64,
    pub steps: usize,
    pub mode: PropagatorMode,
    pub samples: usize,
}

impl RunConfig {
    pub fn resolve(command: Command, o: Overrides) -> CliResult<Self> {
        let n_range = match &o.n {
            Some(s) => NRange::parse(s)?,
            None => command.default_range(),
        };
        let state = match &o.state {
            Some(s) => StateSpec::parse(s)?,
            None => StateSpec::Vacuum,
        };
        let preset = o.preset.as_deref().map(Preset::parse).transpose()?;
        let family = match (command, &o.family) {
            (Command::Bound, Some(f)) => Some(Family::parse(f)?),
            (Command::Bound, None) => return Err(usage("bound requires --family")),
            (_, Some(_)) => return Err(usage(format!("--family is only valid for bound, not {}", command.name()))),
            (_, None) => None,
        };
        let order = match o.order.unwrap_or(4) {
            2 => GupOrder::Two,
            4 => GupOrder::Four,
            k => return Err(usage(format!("--order: expected 2 or 4, got {k}"))),
        };
        let cfg = RunConfig {
            command,
            n_range,
            state,
            delta: o.delta.unwrap_or(1.0),
            preset,
            scale_s: o.scale_s,
            hbar: o.hbar.unwrap_or(1.0),
            seed: o.seed.unwrap_or(0),
            format: o.format.as_deref().map(Format::parse).transpose()?.unwrap_or(Format::Csv),
            out: o.out,
            family,
            order,
            t: o.t.unwrap_or(1.0),
            steps: o.steps.unwrap_or(10),
            mode: o.mode.as_deref().map(parse_mode).transpose()?.unwrap_or(PropagatorMode::Exact),
            samples: o.samples.unwrap_or(64),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> CliResult<()> {
        HbarConfig::new(self.hbar).map_err(|e| usage(format!("--hbar: {e}")))?;
        if !self.t.is_finite() {
            return Err(usage("--t must be finite"));
        }
        if self.steps == 0 {
            return Err(usage("--steps must be positive"));
        }
        if self.preset.is_some() && self.scale_s.is_some() {
            return Err(usage("--preset and --scale-s are mutually exclusive"));
        }
        if (self.preset.is_some() || self.scale_s.is_some()) && self.hbar != 1.0 {
            return Err(usage("Planck presets work in units with hbar = 1"));
        }
        for dim in self.n_range.dims()? {
            self.state.validate(dim)?;
            self.scale(dim).map_err(|e| match e {
                CliError::Numerical(inner) => usage(inner.to_string()),
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn dims(&self) -> CliResult<Vec<Dimension>> {
        self.n_range.dims()
    }

    pub fn hbar_config(&self) -> HbarConfig {
        HbarConfig::new(self.hbar).unwrap_or_default()
    }

    /// Scale parameters at `dim`; `q₀ = 1` unless a preset or `--scale-s` is set.
    pub fn scale(&self, dim: Dimension) -> CliResult<ScaleParams> {
        let sp = match (self.preset, self.scale_s) {
            (Some(Preset::PlanckD0), _) => planck_preset(PlanckPreset::Delta0, dim)?,
            (Some(Preset::PlanckD1), _) => planck_preset(PlanckPreset::Delta1, dim)?,
            (Some(Preset::PlanckD2), _) => planck_preset(PlanckPreset::Delta2, dim)?,
            (None, Some(s)) => planck_preset(PlanckPreset::Scaled { s, delta: self.delta }, dim)?,
            (None, None) => ScaleParams::from_q0(dim, self.delta, 1.0, self.hbar)?,
        };
        Ok(sp)
    }

    /// Echo of every setting, for the table metadata.
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command.name(),
            "n": self.n_range.describe(),
            "state": self.state.describe(),
            "delta": self.delta,
            "preset": self.preset.map(Preset::name),
            "scale-s": self.scale_s,
            "hbar": self.hbar,
            "seed": self.seed,
            "format": self.format.name(),
            "family": self.family.map(Family::name),
            "order": match self.order { GupOrder::Two => 2, GupOrder::Four => 4 },
            "t": self.t,
            "steps": self.steps,
            "mode": mode_name(self.mode),
            "samples": self.samples,
        })
    }
}
