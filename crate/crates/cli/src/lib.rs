//! Figure datasets and single-value queries behind the `unruh` binary.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use unruh_core::bogoliubov::{self, BoundaryTerm};
use unruh_core::coords::proper_acceleration;
use unruh_core::counting::{self, DetectorBand, RatePrefactor};
use unruh_core::curve::fmt_f64;
use unruh_core::localized::{self, PlaneOptions, TransformOptions};
use unruh_core::{AccelerationParam, Complex64, QuadratureSpec, Table, Wedge};

/// Failure classes of a command, mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config keys or parameter values.
    Usage(String),
    /// Some quadrature did not reach its tolerance.
    NotConverged(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotConverged(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::NotConverged(m) => write!(f, "not converged: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<unruh_core::Error> for CliError {
    fn from(e: unruh_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Fig3,
    Fig4,
    Fig5,
    Eval,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Fig3 => "fig3",
            Command::Fig4 => "fig4",
            Command::Fig5 => "fig5",
            Command::Eval => "eval",
        }
    }

    /// Default abscissa grid `(min, max, step)` in the command's own units.
    fn default_grid(self) -> (f64, f64, f64) {
        match self {
            Command::Fig3 => (-10.0, 10.0, 0.05),
            Command::Fig4 => (-4.0, 4.0, 0.05),
            Command::Fig5 | Command::Eval => (-20.0, 20.0, 0.1),
        }
    }
}

/// Settings as given on the command line. `None` (or an empty list, or a
/// `false` switch) defers to the config file and then to the defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub a: Option<f64>,
    pub epsilon: Option<f64>,
    pub x0: Option<f64>,
    pub omega0: Vec<f64>,
    pub grid_min: Option<f64>,
    pub grid_max: Option<f64>,
    pub grid_step: Option<f64>,
    pub out: Option<PathBuf>,
    pub allow_flags: bool,
    pub paper_prefactor: bool,
    pub include_f_term: bool,
    pub ax: Option<f64>,
    pub xi: Option<f64>,
}

const CONFIG_KEYS: [&str; 13] = [
    "a",
    "epsilon",
    "x0",
    "omega0",
    "grid_min",
    "grid_max",
    "grid_step",
    "out",
    "allow_flags",
    "paper_prefactor",
    "include_f_term",
    "ax",
    "xi",
];

impl Overrides {
    /// Parses a flat `key = value` file. Blank lines and lines starting with
    /// `#` are skipped; `omega0` takes a comma-separated list.
    pub fn parse_config(text: &str) -> CliResult<Self> {
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
            let k = k.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&k.as_str()) {
                return Err(CliError::Usage(format!("config line {}: unknown key '{k}'", n + 1)));
            }
            map.insert(k, v.trim().to_string());
        }
        let num = |k: &str| -> CliResult<Option<f64>> {
            map.get(k)
                .map(|v| v.parse::<f64>().map_err(|_| CliError::Usage(format!("config key {k}: bad number '{v}'"))))
                .transpose()
        };
        let flag = |k: &str| -> CliResult<bool> {
            match map.get(k).map(String::as_str) {
                None | Some("false") => Ok(false),
                Some("true") => Ok(true),
                Some(v) => Err(CliError::Usage(format!("config key {k}: expected true or false, got '{v}'"))),
            }
        };
        let omega0 = match map.get("omega0") {
            None => Vec::new(),
            Some(v) => v
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("config key omega0: bad number '{s}'"))))
                .collect::<CliResult<_>>()?,
        };
        Ok(Self {
            a: num("a")?,
            epsilon: num("epsilon")?,
            x0: num("x0")?,
            omega0,
            grid_min: num("grid_min")?,
            grid_max: num("grid_max")?,
            grid_step: num("grid_step")?,
            out: map.get("out").map(PathBuf::from),
            allow_flags: flag("allow_flags")?,
            paper_prefactor: flag("paper_prefactor")?,
            include_f_term: flag("include_f_term")?,
            ax: num("ax")?,
            xi: num("xi")?,
        })
    }

    pub fn from_config_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_config(&text)
    }

    /// `self` wins wherever it is set.
    pub fn over(self, base: Overrides) -> Overrides {
        Overrides {
            a: self.a.or(base.a),
            epsilon: self.epsilon.or(base.epsilon),
            x0: self.x0.or(base.x0),
            omega0: if self.omega0.is_empty() { base.omega0 } else { self.omega0 },
            grid_min: self.grid_min.or(base.grid_min),
            grid_max: self.grid_max.or(base.grid_max),
            grid_step: self.grid_step.or(base.grid_step),
            out: self.out.or(base.out),
            allow_flags: self.allow_flags || base.allow_flags,
            paper_prefactor: self.paper_prefactor || base.paper_prefactor,
            include_f_term: self.include_f_term || base.include_f_term,
            ax: self.ax.or(base.ax),
            xi: self.xi.or(base.xi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(min: f64, max: f64, step: f64) -> CliResult<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(CliError::Usage(format!("grid step must be positive, got {step}")));
        }
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(CliError::Usage(format!("grid range [{min}, {max}] is empty")));
        }
        Ok(Self { min, max, step })
    }

    /// `min + i·step` for `i = 0..=n`, computed by index so that the points
    /// do not depend on accumulated rounding.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.min + self.step * i as f64).collect()
    }
}

/// Fully resolved settings of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub a: AccelerationParam,
    pub spec: QuadratureSpec,
    pub grid: Grid,
    /// Cutoff frequencies Ω₀ in natural units.
    pub omega0: Vec<f64>,
    pub out: Option<PathBuf>,
    pub allow_flags: bool,
    pub paper_prefactor: bool,
    pub include_f_term: bool,
    /// `ax` of the localized Minkowski position used by fig3 and fig4.
    pub ax: f64,
    /// Rindler position of the absorbing surfaces.
    pub xi: f64,
}

/// Default cutoffs in units of `a`.
pub const DEFAULT_OMEGA0_OVER_A: [f64; 4] = [0.01, 0.02, 0.05, 0.13];

impl RunConfig {
    /// Applies the defaults under `o`.
    pub fn resolve(command: Command, o: Overrides) -> CliResult<Self> {
        let a = AccelerationParam::new(o.a.unwrap_or(1.0))?;
        let av = a.get();
        let mut spec = QuadratureSpec::for_acceleration(a);
        if let Some(e) = o.epsilon {
            spec = spec.with_epsilon(e);
        }
        if let Some(x0) = o.x0 {
            spec = spec.with_x0(x0);
        }
        let omega0 = if !o.omega0.is_empty() {
            o.omega0
        } else if command == Command::Fig5 {
            DEFAULT_OMEGA0_OVER_A.iter().map(|w| w * av).collect()
        } else {
            vec![spec.omega0_cutoff]
        };
        if let Some(w) = omega0.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(CliError::Usage(format!("omega0 must be positive, got {w}")));
        }
        spec = spec.with_omega0(omega0[0]);
        spec.validate()?;
        let (gmin, gmax, gstep) = command.default_grid();
        let grid = Grid::new(o.grid_min.unwrap_or(gmin), o.grid_max.unwrap_or(gmax), o.grid_step.unwrap_or(gstep))?;
        let ax = o.ax.unwrap_or(1.0);
        if !(ax != 0.0 && ax.is_finite()) {
            return Err(CliError::Usage(format!("ax must be nonzero, got {ax}")));
        }
        Ok(Self {
            command,
            a,
            spec,
            grid,
            omega0,
            out: o.out,
            allow_flags: o.allow_flags,
            paper_prefactor: o.paper_prefactor,
            include_f_term: o.include_f_term,
            ax,
            xi: o.xi.unwrap_or(0.0),
        })
    }

    fn prefactor(&self) -> RatePrefactor {
        if self.paper_prefactor {
            RatePrefactor::Doubled
        } else {
            RatePrefactor::Integral
        }
    }

    fn boundary(&self) -> BoundaryTerm {
        if self.include_f_term {
            BoundaryTerm::At(self.spec.x0)
        } else {
            BoundaryTerm::Excluded
        }
    }

    /// The metadata line: every setting that affects the numbers. The output
    /// path is left out so that runs differing only in destination agree.
    fn stamp(&self, table: &mut Table) {
        let omega: Vec<String> = self.omega0.iter().map(|w| w.to_string()).collect();
        table
            .meta("command", self.command.name())
            .meta("a", self.a.get())
            .meta("epsilon", self.spec.epsilon_reg)
            .meta("x0", self.spec.x0)
            .meta("omega0", omega.join(","))
            .meta("grid_min", self.grid.min)
            .meta("grid_max", self.grid.max)
            .meta("grid_step", self.grid.step)
            .meta("ax", self.ax)
            .meta("xi", self.xi)
            .meta("allow_flags", self.allow_flags)
            .meta("paper_prefactor", self.paper_prefactor)
            .meta("include_f_term", self.include_f_term);
    }
}

/// A CSV dataset and whether every row converged.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub table: Table,
    pub unconverged_rows: usize,
}

impl Dataset {
    /// `Err(NotConverged)` when rows are flagged and flags are not allowed.
    pub fn check(&self, allow_flags: bool) -> CliResult<()> {
        if self.unconverged_rows > 0 && !allow_flags {
            Err(CliError::NotConverged(format!(
                "{} row(s) flagged converged=false; rerun with --allow-flags to accept them",
                self.unconverged_rows
            )))
        } else {
            Ok(())
        }
    }
}

fn phase(z: Complex64) -> f64 {
    // Complex::arg lies in [-π, π]; fold -π onto π.
    let p = z.arg();
    if p <= -PI {
        PI
    } else {
        p
    }
}

fn finite(zs: &[Complex64]) -> bool {
    zs.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Plane-wave amplitudes in the Minkowski localized basis at `x = ax/a`
/// against `K/a`: `|(u_x, u_K)|`, `|(u*_x, u_K)|` and their phases.
pub fn cmd_fig3(cfg: &RunConfig) -> CliResult<Dataset> {
    let a = cfg.a;
    let x = cfg.ax / a.get();
    let mut opts = PlaneOptions::unregulated();
    if cfg.include_f_term {
        opts = opts.with_f_term(cfg.spec.x0);
    }
    let mut table = Table::new(["K_over_a", "abs_pos", "abs_neg", "arg_pos", "arg_neg", "converged"]);
    cfg.stamp(&mut table);
    let mut flagged = 0;
    // K = 0 is the |K|^{-1/2} singularity and is skipped.
    let tiny = 1e-9 * cfg.grid.step;
    for nu in cfg.grid.points().into_iter().filter(|nu| nu.abs() > tiny) {
        let k = nu * a.get();
        let pos = localized::plane_in_localized_basis(x, k, a, false, &opts)?;
        let neg = localized::plane_in_localized_basis(x, k, a, true, &opts)?;
        let ok = finite(&[pos, neg]);
        flagged += usize::from(!ok);
        table.push_row(vec![
            fmt_f64(nu),
            fmt_f64(pos.norm()),
            fmt_f64(neg.norm()),
            fmt_f64(phase(pos)),
            fmt_f64(phase(neg)),
            ok.to_string(),
        ]);
    }
    Ok(Dataset {
        table,
        unconverged_rows: flagged,
    })
}

/// Localized-to-localized coefficients `|ax|^{1/2} α_xξ / a` and
/// `|ax|^{1/2} β_xξ / a` against `aξ - ln|ax|`. Wedge I uses `x = |ax|/a`,
/// wedge II uses `x = -|ax|/a` and is reported negated.
pub fn cmd_fig4(cfg: &RunConfig) -> CliResult<Dataset> {
    let a = cfg.a;
    let av = a.get();
    let x = cfg.ax.abs() / av;
    let mut opts = TransformOptions::new(cfg.spec, a);
    if cfg.include_f_term {
        opts.plane = opts.plane.with_f_term(cfg.spec.x0);
    }
    let scale = cfg.ax.abs().sqrt() / av;
    let grid = cfg.grid.points();
    let rows: Vec<_> = grid
        .par_iter()
        .map(|&s| {
            let xi = (s + cfg.ax.abs().ln()) / av;
            let one = localized::localized_transform(x, xi, a, Wedge::I, &opts)?;
            let two = localized::localized_transform(-x, xi, a, Wedge::II, &opts)?;
            Ok((one, two))
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new([
        "a_xi_minus_ln_ax",
        "alpha_I_re",
        "alpha_I_im",
        "beta_I_re",
        "beta_I_im",
        "neg_alpha_II_re",
        "neg_alpha_II_im",
        "neg_beta_II_re",
        "neg_beta_II_im",
        "converged",
    ]);
    cfg.stamp(&mut table);
    let mut flagged = 0;
    for (&s, (one, two)) in grid.iter().zip(rows) {
        let vals = [one.alpha * scale, one.beta * scale, -two.alpha * scale, -two.beta * scale];
        let ok = one.converged && two.converged && finite(&vals);
        flagged += usize::from(!ok);
        let mut row = vec![fmt_f64(s)];
        for v in vals {
            row.push(fmt_f64(v.re));
            row.push(fmt_f64(v.im));
        }
        row.push(ok.to_string());
        table.push_row(row);
    }
    Ok(Dataset {
        table,
        unconverged_rows: flagged,
    })
}

/// Column label of a cutoff, e.g. `0.01` for `Ω₀ = 0.01a`.
fn omega_label(w: f64, a: f64) -> String {
    format!("{}", w / a)
}

/// Coincidence densities against `aΔv`: the one-pair term and the
/// correlated density for each cutoff, per unit Rindler time and per unit
/// proper time at the surfaces' position `ξ`.
pub fn cmd_fig5(cfg: &RunConfig) -> CliResult<Dataset> {
    let a = cfg.a;
    let av = a.get();
    let spec = cfg.spec;
    let bands: Vec<DetectorBand> = cfg
        .omega0
        .iter()
        .map(|&w| DetectorBand::new(w, cfg.xi, Wedge::I))
        .collect::<unruh_core::Result<_>>()?;
    // Δτ = (a/α) Δv, and a density per dv' dv'' scales by (α/a)².
    let ratio = proper_acceleration(a, cfg.xi) / av;
    let grid = cfg.grid.points();
    let rows: Vec<_> = grid
        .par_iter()
        .map(|&s| {
            let dv = s / av;
            let one = counting::coincidence_one_pair(dv, a, &spec)?;
            let corr = bands
                .iter()
                .map(|b| counting::coincidence_correlated(dv, b, a, &spec))
                .collect::<unruh_core::Result<Vec<_>>>()?;
            Ok((one, corr))
        })
        .collect::<CliResult<_>>()?;
    let mut header = vec!["a_dv".to_string(), "a_dtau".to_string(), "one_pair".into(), "one_pair_proper".into()];
    for w in &cfg.omega0 {
        let l = omega_label(*w, av);
        header.push(format!("r_{l}"));
        header.push(format!("r_{l}_proper"));
    }
    header.push("converged".into());
    let mut table = Table::new(header);
    cfg.stamp(&mut table);
    let mut flagged = 0;
    for (&s, (one, corr)) in grid.iter().zip(rows) {
        let mut ok = one.converged && one.value.re.is_finite();
        let mut row = vec![
            fmt_f64(s),
            fmt_f64(s / ratio),
            fmt_f64(one.value.re),
            fmt_f64(one.value.re * ratio * ratio),
        ];
        for r in corr {
            ok &= r.converged && r.value.re.is_finite();
            row.push(fmt_f64(r.value.re));
            row.push(fmt_f64(r.value.re * ratio * ratio));
        }
        flagged += usize::from(!ok);
        row.push(ok.to_string());
        table.push_row(row);
    }
    Ok(Dataset {
        table,
        unconverged_rows: flagged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Beta2,
    G2,
    UnruhTemp,
    OneDetectorRate,
    SingleRate,
    Coincidence,
    ProperAccel,
    SiConvert,
}

impl Quantity {
    pub const ALL: [Quantity; 8] = [
        Quantity::Beta2,
        Quantity::G2,
        Quantity::UnruhTemp,
        Quantity::OneDetectorRate,
        Quantity::SingleRate,
        Quantity::Coincidence,
        Quantity::ProperAccel,
        Quantity::SiConvert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Beta2 => "beta2",
            Quantity::G2 => "g2",
            Quantity::UnruhTemp => "unruh_temp",
            Quantity::OneDetectorRate => "one_detector_rate",
            Quantity::SingleRate => "single_rate",
            Quantity::Coincidence => "coincidence",
            Quantity::ProperAccel => "proper_accel",
            Quantity::SiConvert => "si_convert",
        }
    }

    pub fn parse(name: &str) -> CliResult<Self> {
        Self::ALL
            .into_iter()
            .find(|q| q.name() == name)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|q| q.name()).collect();
                CliError::Usage(format!("unknown quantity '{name}', expected one of {}", names.join(", ")))
            })
    }
}

/// Per-quantity inputs of `eval`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EvalParams {
    pub k: Option<f64>,
    pub big_k: Option<f64>,
    pub dv: Option<f64>,
    pub temp_kelvin: Option<f64>,
    pub accel_si: Option<f64>,
}

/// Result of `eval`: the headline value plus labelled diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub quantity: Quantity,
    pub value: f64,
    pub details: Vec<(&'static str, f64)>,
    pub converged: bool,
}

impl Evaluation {
    fn exact(quantity: Quantity, value: f64) -> Self {
        Self {
            quantity,
            value,
            details: Vec::new(),
            converged: true,
        }
    }

    /// `name=value` on the first line, one `key=value` line per detail.
    pub fn render(&self) -> String {
        let mut s = format!("{}={}\n", self.quantity.name(), fmt_value(self.value));
        for (k, v) in &self.details {
            s.push_str(&format!("{k}={}\n", fmt_value(*v)));
        }
        if !self.converged {
            s.push_str("converged=false\n");
        }
        s
    }
}

/// Plain decimals for moderate magnitudes, exponent form otherwise.
fn fmt_value(v: f64) -> String {
    if v == 0.0 || (1e-4..1e7).contains(&v.abs()) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn need(v: Option<f64>, flag: &str, q: Quantity) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Usage(format!("{} needs --{flag}", q.name())))
}

pub fn cmd_eval(cfg: &RunConfig, quantity: Quantity, p: &EvalParams) -> CliResult<Evaluation> {
    let a = cfg.a;
    let av = a.get();
    let spec = cfg.spec;
    let band = DetectorBand::new(cfg.omega0[0], cfg.xi, Wedge::I)?;
    Ok(match quantity {
        Quantity::Beta2 => {
            let k = need(p.k, "k", quantity)?;
            let big_k = need(p.big_k, "K", quantity)?;
            let closed = bogoliubov::beta_closed(k, big_k, a, cfg.boundary())?.norm_sqr();
            let num = bogoliubov::bogoliubov_numeric(k, big_k, a, Wedge::I, &spec)?;
            let numeric = if cfg.include_f_term { num.beta } else { num.without_f().1 }.norm_sqr();
            Evaluation {
                quantity,
                value: closed,
                details: vec![("numeric", numeric), ("residual", (numeric - closed).abs())],
                converged: num.converged,
            }
        }
        Quantity::G2 => {
            let big_k = need(p.big_k, "K", quantity)?;
            let g2 = localized::g_factor(big_k, a)?.norm_sqr();
            let bose = 1.0 / (4.0 * PI * big_k.abs() / av).exp_m1();
            Evaluation {
                quantity,
                value: g2,
                details: vec![("closed", bose), ("residual", (g2 - bose).abs())],
                converged: true,
            }
        }
        Quantity::UnruhTemp => Evaluation::exact(quantity, bogoliubov::unruh_temperature(a)),
        Quantity::OneDetectorRate => {
            let closed = counting::one_detector_rate(a);
            let num = counting::one_detector_rate_numeric(a, &spec)?;
            Evaluation {
                quantity,
                value: closed,
                details: vec![
                    ("numeric", num.value.re),
                    ("residual", (num.value.re - closed).abs()),
                    ("proper", counting::proper_rate(a, cfg.xi)),
                ],
                converged: num.converged,
            }
        }
        Quantity::SingleRate => {
            let closed = counting::single_rate_cutoff(&band, a, cfg.prefactor())?;
            let integral = counting::single_rate_cutoff(&band, a, RatePrefactor::Integral)?;
            let num = counting::single_rate_numeric(&band, a, &spec)?;
            Evaluation {
                quantity,
                value: closed,
                details: vec![
                    ("numeric", num.value.re),
                    ("residual", (num.value.re - integral).abs()),
                    ("proper", counting::to_proper_rate(closed, a, cfg.xi)),
                ],
                converged: num.converged,
            }
        }
        Quantity::Coincidence => {
            let dv = p.dv.unwrap_or(0.0);
            let total = counting::coincidence_total(dv, &band, a, cfg.prefactor(), &spec)?;
            let corr = counting::coincidence_correlated(dv, &band, a, &spec)?;
            let mut details = vec![("correlated", corr.value.re)];
            if dv == 0.0 {
                let peak = counting::coincidence_peak_closed(&band, a)?;
                details.push(("correlated_closed", peak));
                details.push(("residual", (corr.value.re - peak).abs()));
            }
            let ratio = proper_acceleration(a, cfg.xi) / av;
            details.push(("proper", total.value.re * ratio * ratio));
            Evaluation {
                quantity,
                value: total.value.re,
                details,
                converged: total.converged && corr.converged,
            }
        }
        Quantity::ProperAccel => Evaluation::exact(quantity, proper_acceleration(a, cfg.xi)),
        Quantity::SiConvert => {
            let si = match (p.temp_kelvin, p.accel_si) {
                (Some(t), None) => bogoliubov::si_from_temperature(t)?,
                (None, Some(g)) => bogoliubov::si_conversions(g)?,
                _ => return Err(CliError::Usage("si_convert needs exactly one of --temp-kelvin, --accel-si".into())),
            };
            Evaluation {
                quantity,
                value: si.acceleration,
                details: vec![
                    ("temperature_kelvin", si.temperature_kelvin),
                    ("acceleration_frequency", si.acceleration_frequency),
                ],
                converged: true,
            }
        }
    })
}

/// Runs a figure command and writes its CSV to `cfg.out` or `sink`. The
/// table is written even when rows are flagged.
pub fn run_figure(cfg: &RunConfig, sink: &mut dyn std::io::Write) -> CliResult<Dataset> {
    let data = match cfg.command {
        Command::Fig3 => cmd_fig3(cfg)?,
        Command::Fig4 => cmd_fig4(cfg)?,
        Command::Fig5 => cmd_fig5(cfg)?,
        Command::Eval => return Err(CliError::Usage("eval is not a figure command".into())),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, data.table.to_csv())?,
        None => data.table.write_to(sink)?,
    }
    data.check(cfg.allow_flags)?;
    Ok(data)
}
