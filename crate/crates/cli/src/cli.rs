//! Argument parsing and command dispatch.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qpendulum::classical::{separatrix_trajectory, trajectory, ArgConvention, ClassicalParams};
use qpendulum::symmetry::{classify_region_with, GapCriterion};
use qpendulum::torsion::{torsion_to_mathieu, TorsionRotor, PRESETS};
use qpendulum::{Error, StateFamily, Truncation};
use serde_json::{json, Value};

use crate::output::{emit, json_f64, write_file, Format, Table, SCHEMA_VERSION};
use crate::report;
use crate::tables::{
    boundary_table, calibration_json, characteristics, density_table, jump_rows, jump_series,
    table3, table4, table5, table6, ur_rows, BoundaryKind, EvalPoints, Settings,
    FLUCTUATION_HEADER,
};

#[derive(Debug, Parser)]
#[command(
    name = "qpendulum",
    version,
    about = "Regenerates the quantum pendulum tables and figure data"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output file, or output directory for commands that write several files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest matrix size of the adaptive truncation.
    #[arg(long, global = true, default_value_t = 512)]
    pub truncation_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// How level gaps are compared with ε.
    #[arg(long, global = true, value_enum, default_value_t = CriterionArg::Relative)]
    pub criterion: CriterionArg,
    /// Use this ε for both boundaries instead of calibrating.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Argument convention of the classical trajectory.
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::AsPrinted)]
    pub arg_convention: ConventionArg,
    /// Barrier values for the jump and uncertainty tables.
    #[arg(long, global = true, value_enum, default_value_t = EvalPoints::Splitting)]
    pub eval_points: EvalPoints,
}

impl GlobalArgs {
    pub fn settings(&self) -> Settings {
        Settings {
            truncation: Truncation::with_cap(self.truncation_cap),
            criterion: self.criterion.into(),
            epsilon: self.epsilon,
            eval_points: self.eval_points,
        }
    }

    fn out_dir(&self) -> &Path {
        self.out.as_deref().unwrap_or(Path::new("."))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Relative,
    Absolute,
}

impl From<CriterionArg> for GapCriterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Relative => Self::Relative,
            CriterionArg::Absolute => Self::Absolute,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    AsPrinted,
    Dimensional,
    Consistent,
}

impl From<ConventionArg> for ArgConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::AsPrinted => Self::AsPrinted,
            ConventionArg::Dimensional => Self::Dimensional,
            ConventionArg::Consistent => Self::Consistent,
        }
    }
}

fn parse_family(s: &str) -> Result<StateFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Characteristic values of every class on a barrier grid.
    Characteristics {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 0.0)]
        l_min: f64,
        #[arg(long, default_value_t = 55.0)]
        l_max: f64,
        #[arg(long, default_value_t = 551)]
        steps: usize,
    },
    /// Splitting and merging points with the calibrated thresholds.
    Regions {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Velocity jump tables and the fluctuation radicands.
    Observables,
    /// Uncertainty product tables.
    Uncertainty,
    /// Probability density of one state.
    Density {
        /// phi+, phi-, xi, eta, psi+ or psi-.
        #[arg(long, value_parser = parse_family)]
        family: StateFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        l: f64,
        #[arg(long, default_value_t = 256)]
        points: usize,
    },
    /// Closed-form classical trajectory ΔI(t).
    Classical {
        /// Total energy E.
        #[arg(long, allow_hyphen_values = true)]
        energy: f64,
        /// Barrier amplitude U.
        #[arg(long, default_value_t = 1.0)]
        u: f64,
        #[arg(long, default_value_t = 1.0)]
        omega_prime: f64,
        /// Trajectory is sampled on [0, t_max].
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 501)]
        steps: usize,
        /// Separatrix solution, for E = U.
        #[arg(long)]
        sech: bool,
    },
    /// Mathieu barrier and level regions of a torsional rotor.
    Torsion {
        /// Named molecule, e.g. ethane.
        #[arg(long, conflicts_with_all = ["i1", "i2", "v0", "n_fold"])]
        preset: Option<String>,
        /// Moment of inertia of the first top, kg·m².
        #[arg(long)]
        i1: Option<f64>,
        #[arg(long)]
        i2: Option<f64>,
        /// Barrier height, J.
        #[arg(long)]
        v0: Option<f64>,
        /// Number of equilibrium orientations.
        #[arg(long)]
        n_fold: Option<u32>,
    },
    /// Every table and figure, metadata and a summary.
    Report,
}

/// Failures that are not solver errors.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Report written, but these gates failed.
    Gates(Vec<String>),
    /// Calibration left rows without a crossing.
    Calibration(usize),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gates(names) => write!(f, "residual gates failed: {}", names.join(", ")),
            Self::Calibration(n) => write!(f, "{n} boundary rows have no threshold crossing"),
        }
    }
}

impl std::error::Error for Failure {}

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_CONVERGENCE: u8 = 3;
pub const EXIT_GATES: u8 = 4;

/// Process exit code for an error.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(f) = cause.downcast_ref::<Failure>() {
            return match f {
                Failure::Gates(_) => EXIT_GATES,
                Failure::Calibration(_) => EXIT_CONVERGENCE,
            };
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Convergence { .. } | Error::NotFound { .. } => EXIT_CONVERGENCE,
                _ => EXIT_VALIDATION,
            };
        }
    }
    EXIT_VALIDATION
}

pub fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    let settings = g.settings();
    settings.validate()?;
    let trunc = &settings.truncation;
    match &cli.command {
        &Command::Characteristics {
            n_max,
            l_min,
            l_max,
            steps,
        } => {
            let t = characteristics(n_max, l_min, l_max, steps, trunc)?;
            emit(g.out.as_deref(), &t.render(g.format)?)
        }
        &Command::Regions { n_max } => {
            let split = boundary_table(BoundaryKind::Splitting, n_max, &settings)?;
            let merge = boundary_table(BoundaryKind::Merging, n_max, &settings)?;
            let dir = g.out_dir();
            write_tables(dir, g.format, &[split.table(), merge.table()])?;
            write_json(
                &dir.join("calibration.json"),
                &calibration_json(&[&split, &merge]),
            )?;
            match split.not_found() + merge.not_found() {
                0 => Ok(()),
                missing => Err(Failure::Calibration(missing).into()),
            }
        }
        Command::Observables => {
            let rows = jump_rows(&g.eval_points.values(), trunc)?;
            write_tables(
                g.out_dir(),
                g.format,
                &[
                    table3(&rows),
                    table4(&rows),
                    jump_series("fluctuations", &FLUCTUATION_HEADER, &rows),
                ],
            )
        }
        Command::Uncertainty => {
            let rows = ur_rows(&g.eval_points.values(), trunc)?;
            write_tables(g.out_dir(), g.format, &[table5(&rows), table6(&rows)])
        }
        &Command::Density {
            family,
            n,
            l,
            points,
        } => {
            let t = density_table(family, n, l, points, trunc)?;
            emit(g.out.as_deref(), &t.render(g.format)?)
        }
        &Command::Classical {
            energy,
            u,
            omega_prime,
            t_max,
            steps,
            sech,
        } => {
            let t = classical(
                energy,
                u,
                omega_prime,
                t_max,
                steps,
                sech,
                g.arg_convention.into(),
            )?;
            emit(g.out.as_deref(), &t.render(g.format)?)
        }
        Command::Torsion {
            preset,
            i1,
            i2,
            v0,
            n_fold,
        } => {
            let rotor = match (preset, i1, i2, v0, n_fold) {
                (Some(name), ..) => qpendulum::torsion::preset(name)?,
                (None, Some(i1), Some(i2), Some(v0), Some(n)) => {
                    TorsionRotor::new(*i1, *i2, *v0, *n)?
                }
                _ => {
                    return Err(Error::Domain(format!(
                        "give --preset or all of --i1, --i2, --v0, --n-fold; presets: {}",
                        preset_names()
                    ))
                    .into())
                }
            };
            let value = torsion(&rotor, &settings)?;
            emit(
                g.out.as_deref(),
                &(serde_json::to_string_pretty(&value)? + "\n"),
            )
        }
        Command::Report => {
            let bundle = report::build(&settings, g.format)?;
            report::write(&bundle, g.out_dir(), g.format)?;
            if bundle.passed() {
                Ok(())
            } else {
                Err(Failure::Gates(bundle.failed_gates()).into())
            }
        }
    }
}

fn preset_names() -> String {
    PRESETS
        .iter()
        .map(|(n, _)| *n)
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_tables(dir: &Path, format: Format, tables: &[Table]) -> Result<()> {
    for t in tables {
        write_file(&dir.join(t.file_name(format)), &t.render(format)?)?;
    }
    Ok(())
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    write_file(path, &(serde_json::to_string_pretty(value)? + "\n"))
}

/// `ΔI(t)` on `steps` points of `[0, t_max]`.
pub fn classical(
    energy: f64,
    u: f64,
    omega_prime: f64,
    t_max: f64,
    steps: usize,
    sech: bool,
    conv: ArgConvention,
) -> Result<Table> {
    if !(t_max > 0.0 && t_max.is_finite()) || steps < 2 {
        return Err(Error::Domain("need t_max > 0 and at least 2 steps".into()).into());
    }
    let params = ClassicalParams::new(omega_prime, u, energy)?;
    let t_grid: Vec<f64> = (0..steps)
        .map(|i| t_max * i as f64 / (steps - 1) as f64)
        .collect();
    let (values, motion) = if sech {
        if energy != u {
            return Err(Error::Domain("--sech needs E = U".into()).into());
        }
        (
            separatrix_trajectory(&params, &t_grid, conv),
            "separatrix".to_owned(),
        )
    } else {
        let motion = params
            .motion()
            .context("pass --sech for the separatrix solution")?;
        (
            trajectory(&params, &t_grid, conv)?,
            format!("{motion:?}").to_lowercase(),
        )
    };
    let mut t = Table::new("classical", &["t", "delta_I"]);
    for (ti, v) in t_grid.into_iter().zip(values) {
        t.push(vec![ti.into(), v.into()]);
    }
    t.footer.push(format!("arg_convention={conv}"));
    t.footer.push(format!("motion={motion}"));
    Ok(t)
}

/// Barrier, energy scale and regions of levels 1..=8 for a rotor.
pub fn torsion(rotor: &TorsionRotor<f64>, settings: &Settings) -> Result<Value> {
    let p = torsion_to_mathieu(rotor)?;
    let thresholds = settings.thresholds()?;
    let mut levels = Vec::new();
    for n in 1..=8 {
        let tag = match classify_region_with(n, p.l, &thresholds, &settings.truncation) {
            Ok(tag) => tag.to_string(),
            Err(Error::Ambiguity { .. }) => "ambiguous".into(),
            Err(e) => return Err(e).with_context(|| format!("region of level {n}")),
        };
        levels.push(json!({"n": n, "region": tag}));
    }
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "rotor": {
            "i1": json_f64(rotor.i1),
            "i2": json_f64(rotor.i2),
            "v0": json_f64(rotor.v0),
            "n_fold": rotor.n_fold,
        },
        "l": json_f64(p.l),
        "energy_scale": json_f64(p.energy_scale),
        "energy_offset": json_f64(p.energy_offset),
        "omega_prime": json_f64(p.omega_prime),
        "u_amp": json_f64(p.u_amp),
        "phase_shift": json_f64(p.phase_shift),
        "thresholds": {
            "rotor": {"criterion": thresholds.rotor.criterion.to_string(), "epsilon": json_f64(thresholds.rotor.epsilon)},
            "well": {"criterion": thresholds.well.criterion.to_string(), "epsilon": json_f64(thresholds.well.epsilon)},
        },
        "levels": levels,
    }))
}
