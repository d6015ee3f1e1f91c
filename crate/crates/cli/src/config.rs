//! Run configuration from command-line flags and flat `key=value` files.
//!
//! Every command owns a fixed key set. A file given with `--config` may set
//! any of them; flags override file values. Keys outside the set are
//! rejected, and all physical parameters are validated before anything
//! runs.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Arg, Command};
use qthermo::dynamics::MAX_STEP_RATE;
use qthermo::{
    BathSpec, BathTemperature, CarnotSpec, CycleKind, FiniteTimeParams, OttoMode, OttoSpec,
    QubitHamiltonian, SweepGrid,
};

use crate::CliError;

pub struct CommandDoc {
    pub name: &'static str,
    pub about: &'static str,
    pub keys: &'static [(&'static str, &'static str)],
    /// Accepts `--dump-trajectory`.
    pub dumps: bool,
}

const CYCLE_KEYS: [(&str, &str); 4] = [
    ("tc", "cold bath temperature [default 1]"),
    ("th", "hot bath temperature [default 2]"),
    ("wc", "gap in contact with the cold bath [default 1]"),
    ("wh", "gap in contact with the hot bath [default 1.5]"),
];

pub const COMMANDS: &[CommandDoc] = &[
    CommandDoc {
        name: "otto",
        about: "Run one quantum Otto cycle",
        keys: &[
            CYCLE_KEYS[0],
            CYCLE_KEYS[1],
            CYCLE_KEYS[2],
            CYCLE_KEYS[3],
            ("mode", "exact | rk4 [default exact]"),
            ("gamma", "bath rate γ₀ (rk4 only) [default 1]"),
            (
                "duration",
                "thermal stroke duration (rk4 only) [default 40/Γ]",
            ),
            ("dt", "integrator step (rk4 only) [default 0.05/Γ]"),
        ],
        dumps: true,
    },
    CommandDoc {
        name: "carnot",
        about: "Run one quantum Carnot cycle with discretized isotherms",
        keys: &[
            CYCLE_KEYS[0],
            CYCLE_KEYS[1],
            CYCLE_KEYS[2],
            CYCLE_KEYS[3],
            ("steps", "steps per isotherm [default 400]"),
        ],
        dumps: true,
    },
    CommandDoc {
        name: "deficit",
        about: "Compare Otto work with the matched reversible cycle",
        keys: &[CYCLE_KEYS[0], CYCLE_KEYS[1], CYCLE_KEYS[2], CYCLE_KEYS[3]],
        dumps: false,
    },
    CommandDoc {
        name: "jarzynski",
        about: "Two-point-measurement work statistics of a gap change",
        keys: &[
            (
                "beta",
                "inverse temperature of the initial state [default 1]",
            ),
            ("wi", "initial gap [default 1]"),
            ("wf", "final gap [default 2]"),
            ("delta", "transverse field, held fixed [default 0]"),
            (
                "duration",
                "linear ramp duration; 0 is a sudden quench [default 0]",
            ),
            ("dt", "propagator step [default 0.01]"),
        ],
        dumps: true,
    },
    CommandDoc {
        name: "relax",
        about: "Thermalize a qubit at fixed Hamiltonian",
        keys: &[
            ("omega", "gap [default 1]"),
            ("delta", "transverse field [default 0]"),
            ("temp", "bath temperature [default 1]"),
            ("gamma", "bath rate γ₀ [default 1]"),
            ("p0", "initial excited population [default 1]"),
            ("mode", "exact | rk4 [default rk4]"),
            ("duration", "stroke duration [default 5/Γ]"),
            ("dt", "sample and integrator step [default 0.05/Γ]"),
        ],
        dumps: true,
    },
    CommandDoc {
        name: "sweep",
        about: "Evaluate a cycle over a parameter grid",
        keys: &[
            ("cycle", "otto | carnot [default otto]"),
            ("tc", "cold temperatures, `a:b:n` or comma list [default 1]"),
            ("th", "hot temperatures [default 2]"),
            ("wc", "cold gaps [default 1]"),
            ("wh", "hot gaps [default 1.5]"),
            (
                "steps",
                "isotherm steps, comma list (carnot only) [default 400]",
            ),
            ("mode", "exact | rk4 (otto only) [default exact]"),
            ("gamma", "bath rate γ₀ (otto rk4 only) [default 1]"),
            ("duration", "thermal stroke duration (otto rk4 only)"),
            ("dt", "integrator step (otto rk4 only)"),
            ("jobs", "worker threads; does not affect output [default 1]"),
        ],
        dumps: false,
    },
];

const IO_KEYS: [(&str, &str); 3] = [
    ("format", "json | csv [default json]"),
    ("output", "report path; stdout when absent"),
    (
        "dump-trajectory",
        "write the sampled trajectory as CSV to this path",
    ),
];

fn doc(name: &str) -> &'static CommandDoc {
    COMMANDS
        .iter()
        .find(|c| c.name == name)
        .expect("subcommand comes from COMMANDS")
}

fn accepts(c: &CommandDoc, key: &str) -> bool {
    c.keys.iter().any(|(k, _)| *k == key)
        || key == "format"
        || key == "output"
        || (key == "dump-trajectory" && c.dumps)
}

pub fn cli() -> Command {
    let mut root = Command::new("qthermo")
        .about("Qubit heat engines: Otto and Carnot cycles, thermalization and work statistics")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true);
    for c in COMMANDS {
        let mut sub = Command::new(c.name).about(c.about).arg(
            Arg::new("config")
                .long("config")
                .value_name("FILE")
                .help("flat key=value file"),
        );
        let io = IO_KEYS.iter().filter(|(k, _)| accepts(c, k));
        for (key, help) in c.keys.iter().chain(io) {
            sub = sub.arg(Arg::new(*key).long(*key).value_name("VALUE").help(*help));
        }
        root = root.subcommand(sub);
    }
    root
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Where and how results are written.
#[derive(Debug, Clone, PartialEq)]
pub struct IoSpec {
    pub format: Format,
    pub output: Option<PathBuf>,
    pub dump_trajectory: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleParams {
    pub tc: f64,
    pub th: f64,
    pub wc: f64,
    pub wh: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integration {
    Exact,
    Rk4 {
        gamma: f64,
        duration: Option<f64>,
        dt: Option<f64>,
    },
}

impl Integration {
    pub fn otto_mode(&self) -> OttoMode {
        match *self {
            Integration::Exact => OttoMode::Exact,
            Integration::Rk4 {
                gamma,
                duration,
                dt,
            } => OttoMode::FiniteTime(FiniteTimeParams {
                base_rate: gamma,
                hot_duration: duration,
                cold_duration: duration,
                dt,
            }),
        }
    }

    /// Closure and state-return tolerances of an Otto run. The state-return
    /// check only applies when both strokes run to full thermalization.
    pub fn tolerances(&self) -> (f64, f64) {
        match self {
            Integration::Exact => (1e-9, 1e-8),
            Integration::Rk4 { duration: None, .. } => (1e-5, 1e-4),
            Integration::Rk4 { .. } => (1e-5, f64::INFINITY),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OttoConfig {
    pub params: CycleParams,
    pub integration: Integration,
}

impl OttoConfig {
    pub fn spec(&self) -> OttoSpec {
        let p = self.params;
        OttoSpec::new(p.tc, p.th, p.wc, p.wh, self.integration.otto_mode())
            .expect("validated at parse time")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarnotConfig {
    pub params: CycleParams,
    pub steps: usize,
}

impl CarnotConfig {
    pub fn spec(&self) -> CarnotSpec {
        let p = self.params;
        CarnotSpec::new(p.tc, p.th, p.wc, p.wh, self.steps).expect("validated at parse time")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JarzynskiConfig {
    pub beta: f64,
    pub wi: f64,
    pub wf: f64,
    pub delta: f64,
    /// Zero for a sudden quench.
    pub duration: f64,
    pub dt: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxConfig {
    pub omega: f64,
    pub delta: f64,
    pub temp: f64,
    pub gamma: f64,
    pub p0: f64,
    pub exact: bool,
    pub duration: Option<f64>,
    pub dt: Option<f64>,
}

impl RelaxConfig {
    pub fn hamiltonian(&self) -> QubitHamiltonian {
        QubitHamiltonian::new(self.omega, self.delta).expect("validated at parse time")
    }

    pub fn bath(&self) -> BathSpec {
        BathSpec::new(
            BathTemperature::new(self.temp).expect("validated"),
            self.gamma,
        )
        .expect("validated at parse time")
    }

    pub fn relaxation_rate(&self) -> f64 {
        self.bath()
            .relaxation_rate(self.hamiltonian().level_spacing())
    }

    pub fn effective_duration(&self) -> f64 {
        self.duration.unwrap_or(5.0 / self.relaxation_rate())
    }

    pub fn effective_dt(&self) -> f64 {
        self.dt
            .unwrap_or(0.05 / self.relaxation_rate())
            .min(self.effective_duration())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub grid: SweepGrid,
    /// Otto integration; `None` for Carnot sweeps.
    pub integration: Option<Integration>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Otto(OttoConfig),
    Carnot(CarnotConfig),
    Deficit(CycleParams),
    Jarzynski(JarzynskiConfig),
    Relax(RelaxConfig),
    Sweep(SweepConfig),
}

/// A parsed command line.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub config: RunConfig,
    pub io: IoSpec,
    /// Sweep worker threads. Not part of the echo: it never changes output.
    pub jobs: usize,
}

impl RunConfig {
    pub fn command(&self) -> &'static str {
        match self {
            RunConfig::Otto(_) => "otto",
            RunConfig::Carnot(_) => "carnot",
            RunConfig::Deficit(_) => "deficit",
            RunConfig::Jarzynski(_) => "jarzynski",
            RunConfig::Relax(_) => "relax",
            RunConfig::Sweep(_) => "sweep",
        }
    }

    /// Normalized effective configuration. Written as `key=value` lines it
    /// parses back to an equal config.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let n = |x: f64| format!("{x}");
        let cycle = |p: &CycleParams| {
            vec![
                ("tc", n(p.tc)),
                ("th", n(p.th)),
                ("wc", n(p.wc)),
                ("wh", n(p.wh)),
            ]
        };
        let integration = |i: &Integration, out: &mut Vec<(&'static str, String)>| match i {
            Integration::Exact => out.push(("mode", "exact".into())),
            Integration::Rk4 {
                gamma,
                duration,
                dt,
            } => {
                out.push(("mode", "rk4".into()));
                out.push(("gamma", n(*gamma)));
                out.extend(duration.map(|d| ("duration", n(d))));
                out.extend(dt.map(|d| ("dt", n(d))));
            }
        };
        match self {
            RunConfig::Otto(c) => {
                let mut out = cycle(&c.params);
                integration(&c.integration, &mut out);
                out
            }
            RunConfig::Carnot(c) => {
                let mut out = cycle(&c.params);
                out.push(("steps", c.steps.to_string()));
                out
            }
            RunConfig::Deficit(p) => cycle(p),
            RunConfig::Jarzynski(c) => vec![
                ("beta", n(c.beta)),
                ("wi", n(c.wi)),
                ("wf", n(c.wf)),
                ("delta", n(c.delta)),
                ("duration", n(c.duration)),
                ("dt", n(c.dt)),
            ],
            RunConfig::Relax(c) => {
                let mut out = vec![
                    ("omega", n(c.omega)),
                    ("delta", n(c.delta)),
                    ("temp", n(c.temp)),
                    ("gamma", n(c.gamma)),
                    ("p0", n(c.p0)),
                    ("mode", if c.exact { "exact" } else { "rk4" }.into()),
                ];
                out.extend(c.duration.map(|d| ("duration", n(d))));
                out.extend(c.dt.map(|d| ("dt", n(d))));
                out
            }
            RunConfig::Sweep(c) => {
                let list = |v: &[f64]| v.iter().map(|&x| n(x)).collect::<Vec<_>>().join(",");
                let g = &c.grid;
                let mut out = vec![
                    (
                        "cycle",
                        if c.integration.is_some() {
                            "otto"
                        } else {
                            "carnot"
                        }
                        .into(),
                    ),
                    ("tc", list(&g.t_cold)),
                    ("th", list(&g.t_hot)),
                    ("wc", list(&g.omega_c)),
                    ("wh", list(&g.omega_h)),
                ];
                match &c.integration {
                    Some(i) => integration(i, &mut out),
                    None => out.push((
                        "steps",
                        g.isotherm_steps
                            .iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join(","),
                    )),
                }
                out
            }
        }
    }
}

pub fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

/// Merged key/value pairs of one command.
struct Values {
    map: BTreeMap<String, String>,
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl Values {
    fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.trim())
    }

    fn has(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    fn number(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.raw(key)
            .map(|s| match s.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(config_error(format!(
                    "{key}: expected a finite number, got '{s}'"
                ))),
            })
            .transpose()
    }

    fn num(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.number(key)?.unwrap_or(default))
    }

    fn positive(&self, key: &str, default: f64) -> Result<f64, CliError> {
        let x = self.num(key, default)?;
        if x <= 0.0 {
            return Err(config_error(format!("{key}: must be positive, got {x}")));
        }
        Ok(x)
    }

    fn positive_opt(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.number(key)? {
            Some(x) if x <= 0.0 => Err(config_error(format!("{key}: must be positive, got {x}"))),
            other => Ok(other),
        }
    }

    fn count(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s.parse::<usize>().map_err(|_| {
                config_error(format!("{key}: expected a non-negative integer, got '{s}'"))
            }),
        }
    }

    fn choice(
        &self,
        key: &str,
        default: &'static str,
        options: &[(&str, &'static str)],
    ) -> Result<&'static str, CliError> {
        let Some(s) = self.raw(key) else {
            return Ok(default);
        };
        options
            .iter()
            .find(|(alias, _)| *alias == s)
            .map(|(_, v)| *v)
            .ok_or_else(|| {
                let names: Vec<&str> = options.iter().map(|(a, _)| *a).collect();
                config_error(format!(
                    "{key}: expected one of {}, got '{s}'",
                    names.join(" | ")
                ))
            })
    }

    fn reject(&self, key: &str, why: &str) -> Result<(), CliError> {
        if self.has(key) {
            return Err(config_error(format!("{key}: {why}")));
        }
        Ok(())
    }

    /// Grid axis: `a:b:n` (n evenly spaced points, endpoints included) or a
    /// comma-separated list.
    fn axis(&self, key: &str, default: f64) -> Result<Vec<f64>, CliError> {
        let Some(s) = self.raw(key) else {
            return Ok(vec![default]);
        };
        let bad = || {
            config_error(format!(
                "{key}: expected `a:b:n` or a comma list of numbers, got '{s}'"
            ))
        };
        let parse = |t: &str| t.trim().parse::<f64>().ok().filter(|x| x.is_finite());
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [a, b, n] = parts[..] else {
                return Err(bad());
            };
            let (a, b) = (parse(a).ok_or_else(bad)?, parse(b).ok_or_else(bad)?);
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            return Ok(match n {
                0 => vec![],
                1 => vec![a],
                _ => (0..n)
                    .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
                    .collect(),
            });
        }
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| parse(t).ok_or_else(bad))
            .collect()
    }

    fn counts(&self, key: &str, default: usize) -> Result<Vec<usize>, CliError> {
        let Some(s) = self.raw(key) else {
            return Ok(vec![default]);
        };
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| {
                    config_error(format!(
                        "{key}: expected a comma list of integers, got '{s}'"
                    ))
                })
            })
            .collect()
    }
}

fn parse_file(path: &PathBuf, doc: &CommandDoc) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config file {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(config_error(format!(
                "{}:{}: expected key=value",
                path.display(),
                i + 1
            )));
        };
        let key = key.trim();
        if !accepts(doc, key) {
            return Err(config_error(format!(
                "{key}: unknown key for command '{}'",
                doc.name
            )));
        }
        if map
            .insert(key.to_string(), value.trim().to_string())
            .is_some()
        {
            return Err(config_error(format!(
                "{key}: set twice in {}",
                path.display()
            )));
        }
    }
    Ok(map)
}

/// Parses a full command line (program name first).
pub fn parse_config<I, T>(args: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = cli().try_get_matches_from(args).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
            ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                CliError::Config("missing command; see `qthermo --help`".into())
            }
            _ => {
                let text = e.to_string();
                let first = text.lines().next().unwrap_or("invalid arguments");
                CliError::Config(first.trim_start_matches("error: ").to_string())
            }
        }
    })?;
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let doc = doc(name);

    let mut map = match sub.get_one::<String>("config") {
        Some(path) => parse_file(&PathBuf::from(path), doc)?,
        None => BTreeMap::new(),
    };
    for id in sub.ids() {
        let id = id.as_str();
        if id == "config" {
            continue;
        }
        if let Some(v) = sub.get_one::<String>(id) {
            map.insert(id.to_string(), v.clone());
        }
    }
    build(name, Values { map })
}

fn build(name: &str, v: Values) -> Result<Invocation, CliError> {
    let format = match v.choice("format", "json", &[("json", "json"), ("csv", "csv")])? {
        "csv" => Format::Csv,
        _ => Format::Json,
    };
    let path = |key: &str| v.raw(key).filter(|s| !s.is_empty()).map(PathBuf::from);
    let io = IoSpec {
        format,
        output: path("output"),
        dump_trajectory: path("dump-trajectory"),
    };
    let mut jobs = 1;
    let config = match name {
        "otto" => {
            let params = cycle_params(&v)?;
            let integration = integration(&v, "exact")?;
            let c = OttoConfig {
                params,
                integration,
            };
            OttoSpec::new(
                params.tc,
                params.th,
                params.wc,
                params.wh,
                integration.otto_mode(),
            )
            .map_err(|e| config_error(format!("tc/th/wc/wh: {e}")))?;
            check_otto_step(&c)?;
            RunConfig::Otto(c)
        }
        "carnot" => {
            let params = cycle_params(&v)?;
            let steps = v.count("steps", 400)?;
            if steps == 0 {
                return Err(config_error("steps: must be at least 1"));
            }
            check_carnot_gaps(&params)?;
            RunConfig::Carnot(CarnotConfig { params, steps })
        }
        "deficit" => {
            let params = cycle_params(&v)?;
            OttoSpec::new(params.tc, params.th, params.wc, params.wh, OttoMode::Exact)
                .map_err(|e| config_error(format!("tc/th/wc/wh: {e}")))?;
            RunConfig::Deficit(params)
        }
        "jarzynski" => {
            let c = JarzynskiConfig {
                beta: v.positive("beta", 1.0)?,
                wi: non_negative(&v, "wi", 1.0)?,
                wf: non_negative(&v, "wf", 2.0)?,
                delta: v.num("delta", 0.0)?,
                duration: non_negative(&v, "duration", 0.0)?,
                dt: v.positive("dt", 0.01)?,
            };
            RunConfig::Jarzynski(c)
        }
        "relax" => {
            let c = RelaxConfig {
                omega: non_negative(&v, "omega", 1.0)?,
                delta: v.num("delta", 0.0)?,
                temp: v.positive("temp", 1.0)?,
                gamma: v.positive("gamma", 1.0)?,
                p0: v.num("p0", 1.0)?,
                exact: v.choice("mode", "rk4", MODES)? == "exact",
                duration: v.positive_opt("duration")?,
                dt: v.positive_opt("dt")?,
            };
            if !(0.0..=1.0).contains(&c.p0) {
                return Err(config_error(format!(
                    "p0: must lie in [0, 1], got {}",
                    c.p0
                )));
            }
            if c.omega.hypot(c.delta) < qthermo::dynamics::MIN_THERMAL_SPACING {
                return Err(config_error("omega: level spacing must be positive"));
            }
            if !c.exact {
                let rate = c.relaxation_rate();
                check_step("dt", c.effective_dt(), rate)?;
            }
            RunConfig::Relax(c)
        }
        "sweep" => {
            jobs = v.count("jobs", 1)?.max(1);
            let is_otto =
                v.choice("cycle", "otto", &[("otto", "otto"), ("carnot", "carnot")])? == "otto";
            let (cycle, integration, steps) = if is_otto {
                v.reject("steps", "only used with cycle=carnot")?;
                let i = integration(&v, "exact")?;
                (
                    CycleKind::Otto {
                        mode: i.otto_mode(),
                    },
                    Some(i),
                    vec![],
                )
            } else {
                for key in ["mode", "gamma", "duration", "dt"] {
                    v.reject(key, "only used with cycle=otto")?;
                }
                let steps = v.counts("steps", 400)?;
                if steps.contains(&0) {
                    return Err(config_error("steps: every entry must be at least 1"));
                }
                (CycleKind::Carnot, None, steps)
            };
            let grid = SweepGrid {
                cycle,
                t_cold: v.axis("tc", 1.0)?,
                t_hot: v.axis("th", 2.0)?,
                omega_c: v.axis("wc", 1.0)?,
                omega_h: v.axis("wh", 1.5)?,
                isotherm_steps: steps,
            };
            if grid.point_count().is_err() {
                return Err(config_error("tc/th/wc/wh/steps: sweep grid is empty"));
            }
            RunConfig::Sweep(SweepConfig { grid, integration })
        }
        other => unreachable!("unknown subcommand {other}"),
    };
    Ok(Invocation { config, io, jobs })
}

const MODES: &[(&str, &str)] = &[("exact", "exact"), ("rk4", "rk4"), ("finite-time", "rk4")];

fn non_negative(v: &Values, key: &str, default: f64) -> Result<f64, CliError> {
    let x = v.num(key, default)?;
    if x < 0.0 {
        return Err(config_error(format!(
            "{key}: must be non-negative, got {x}"
        )));
    }
    Ok(x)
}

fn cycle_params(v: &Values) -> Result<CycleParams, CliError> {
    let p = CycleParams {
        tc: v.positive("tc", 1.0)?,
        th: v.positive("th", 2.0)?,
        wc: v.positive("wc", 1.0)?,
        wh: v.positive("wh", 1.5)?,
    };
    if p.tc >= p.th {
        return Err(config_error(format!(
            "tc: T_c < T_h violated (tc = {}, th = {})",
            p.tc, p.th
        )));
    }
    if p.wc > p.wh {
        return Err(config_error(format!(
            "wc: ω_c ≤ ω_h violated (wc = {}, wh = {})",
            p.wc, p.wh
        )));
    }
    Ok(p)
}

fn integration(v: &Values, default: &'static str) -> Result<Integration, CliError> {
    if v.choice("mode", default, MODES)? == "exact" {
        for key in ["gamma", "duration", "dt"] {
            v.reject(key, "only used with mode=rk4")?;
        }
        return Ok(Integration::Exact);
    }
    Ok(Integration::Rk4 {
        gamma: v.positive("gamma", 1.0)?,
        duration: v.positive_opt("duration")?,
        dt: v.positive_opt("dt")?,
    })
}

fn check_step(key: &str, dt: f64, rate: f64) -> Result<(), CliError> {
    if dt * rate > MAX_STEP_RATE {
        return Err(config_error(format!(
            "{key}: dt·Γ = {:.4} exceeds {MAX_STEP_RATE} (Γ = {rate:.6}); use dt ≤ {:.6e}",
            dt * rate,
            MAX_STEP_RATE / rate
        )));
    }
    Ok(())
}

fn check_otto_step(c: &OttoConfig) -> Result<(), CliError> {
    let Integration::Rk4 {
        gamma,
        dt: Some(dt),
        ..
    } = c.integration
    else {
        return Ok(());
    };
    let p = c.params;
    for (t, w) in [(p.th, p.wh), (p.tc, p.wc)] {
        let bath =
            BathSpec::new(BathTemperature::new(t).expect("checked"), gamma).expect("checked");
        check_step("dt", dt, bath.relaxation_rate(w))?;
    }
    Ok(())
}

fn check_carnot_gaps(p: &CycleParams) -> Result<(), CliError> {
    if !qthermo::extraction_condition(p.tc, p.th, p.wc, p.wh) {
        return Err(config_error(format!(
            "wh: Carnot gap ordering needs wc/wh ≥ tc/th (wc = {}, wh = {}, tc = {}, th = {})",
            p.wc, p.wh, p.tc, p.th
        )));
    }
    Ok(())
}
