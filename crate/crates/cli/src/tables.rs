//! Computed tables next to their published counterparts.

use anyhow::{Context, Result};
use clap::ValueEnum;
use qpendulum::fixtures::{
    self, Provenance, JUMP_COLUMNS, LEVELS, MERGING_POINTS, SPLITTING_POINTS, UR_A, UR_B,
    UR_COLUMNS, VELOCITY_JUMPS, VELOCITY_SQ_JUMPS,
};
use qpendulum::states::{angle_grid, build_state_with, jump_with, periodic_trapezoid};
use qpendulum::symmetry::{
    calibrate_with, evaluate_threshold_with, find_boundary_with, sweep_characteristics_with,
    BoundarySearch, BoundaryTarget, GapCriterion, GapThreshold, PairingKind, RegionThresholds,
};
use qpendulum::{
    angular_moments, density, Error, Jump, StateFamily, StateSpec, Truncation, Uncertainty,
};
use serde_json::{json, Value};

use crate::output::{json_f64, Cell, Table};

/// Search range for ε, per criterion.
pub const RELATIVE_RANGE: (f64, f64) = (1e-5, 1.0);
pub const ABSOLUTE_RANGE: (f64, f64) = (1e-5, 10.0);

/// Largest level accepted by the regions command.
pub const MAX_REGION_LEVEL: usize = 12;

pub const CHARACTERISTICS_HEADER: [&str; 4] = ["class", "n", "l", "value"];
pub const BOUNDARY_HEADER: [&str; 9] = [
    "n",
    "pairing",
    "pair_index",
    "l_c",
    "epsilon",
    "criterion",
    "published",
    "residual",
    "found",
];
pub const DENSITY_HEADER: [&str; 2] = ["phi", "density"];
pub const FIG4_HEADER: [&str; 5] = ["family", "n", "l", "phi", "density"];
pub const FIG2_HEADER: [&str; 4] = ["n", "transition", "l_eval", "delta_v"];
pub const FIG3_HEADER: [&str; 6] = [
    "n",
    "transition",
    "l_eval",
    "delta_v2",
    "radicand",
    "defined",
];
pub const FLUCTUATION_HEADER: [&str; 7] = [
    "n",
    "transition",
    "l_eval",
    "delta_v",
    "delta_v2",
    "radicand",
    "defined",
];

fn domain(msg: impl Into<String>) -> anyhow::Error {
    Error::Domain(msg.into()).into()
}

/// Barrier values at which the jump and uncertainty tables are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum EvalPoints {
    /// Published splitting points.
    #[default]
    Splitting,
    /// Published merging points.
    Merging,
    /// Points at which the published velocity jumps are reproduced.
    Inferred,
}

impl EvalPoints {
    pub fn values(self) -> [f64; 8] {
        match self {
            Self::Splitting => SPLITTING_POINTS,
            Self::Merging => MERGING_POINTS,
            Self::Inferred => fixtures::INFERRED_JUMP_POINTS,
        }
    }

    pub fn provenance(self) -> Provenance {
        match self {
            Self::Inferred => Provenance::Inferred,
            _ => Provenance::Published,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Splitting => "splitting",
            Self::Merging => "merging",
            Self::Inferred => "inferred",
        }
    }

    pub fn to_json(self) -> Value {
        json!({
            "name": self.name(),
            "provenance": self.provenance().label(),
            "values": self.values().to_vec(),
        })
    }
}

/// Numerical settings shared by every command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub truncation: Truncation,
    pub criterion: GapCriterion,
    /// Replaces the fitted ε for both boundaries.
    pub epsilon: Option<f64>,
    pub eval_points: EvalPoints,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            truncation: Truncation::default(),
            criterion: GapCriterion::Relative,
            epsilon: None,
            eval_points: EvalPoints::default(),
        }
    }
}

impl Settings {
    pub fn validate(&self) -> Result<()> {
        if self.truncation.cap < 16 {
            return Err(domain("truncation cap must be at least 16"));
        }
        if let Some(eps) = self.epsilon {
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(domain("epsilon must be positive and finite"));
            }
        }
        Ok(())
    }

    pub fn search(&self) -> BoundarySearch {
        BoundarySearch {
            truncation: self.truncation,
            ..BoundarySearch::default()
        }
    }

    pub fn range(&self) -> (f64, f64) {
        match self.criterion {
            GapCriterion::Relative => RELATIVE_RANGE,
            GapCriterion::Absolute => ABSOLUTE_RANGE,
        }
    }

    /// Thresholds for region classification: the override, the shipped
    /// relative fit, or a fresh absolute fit.
    pub fn thresholds(&self) -> Result<RegionThresholds<f64>> {
        if let Some(eps) = self.epsilon {
            let t = GapThreshold::new(self.criterion, eps);
            return Ok(RegionThresholds { rotor: t, well: t });
        }
        match self.criterion {
            GapCriterion::Relative => Ok(fixtures::calibrated_thresholds()),
            GapCriterion::Absolute => Ok(RegionThresholds {
                rotor: fit(BoundaryKind::Splitting, self)?.threshold,
                well: fit(BoundaryKind::Merging, self)?.threshold,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    Splitting,
    Merging,
}

impl BoundaryKind {
    pub fn pairing(self) -> PairingKind {
        match self {
            Self::Splitting => PairingKind::Rotor,
            Self::Merging => PairingKind::Well,
        }
    }

    pub fn pair_index(self, n: usize) -> usize {
        match self {
            Self::Splitting => n,
            Self::Merging => n - 1,
        }
    }

    pub fn published(self) -> [f64; 8] {
        match self {
            Self::Splitting => SPLITTING_POINTS,
            Self::Merging => MERGING_POINTS,
        }
    }

    pub fn targets(self) -> Vec<BoundaryTarget<f64>> {
        match self {
            Self::Splitting => fixtures::splitting_targets(),
            Self::Merging => fixtures::merging_targets(),
        }
    }

    pub fn table_name(self) -> &'static str {
        match self {
            Self::Splitting => "table1",
            Self::Merging => "table2",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Splitting => "splitting",
            Self::Merging => "merging",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitSummary {
    pub kind: BoundaryKind,
    pub threshold: GapThreshold<f64>,
    /// Search range when ε was fitted, `None` when overridden.
    pub range: Option<(f64, f64)>,
    pub rows: Vec<Option<f64>>,
    pub sum_sq: f64,
    pub max_abs_residual: Option<f64>,
    pub not_found: usize,
}

impl FitSummary {
    pub fn source(&self) -> &'static str {
        if self.range.is_some() {
            "fitted"
        } else {
            "override"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.threshold.criterion.to_string(),
            "epsilon": json_f64(self.threshold.epsilon),
            "source": self.source(),
            "search_range": self.range.map(|(lo, hi)| vec![lo, hi]),
            "targets": Provenance::Published.label(),
            "sum_sq": json_f64(self.sum_sq),
            "max_abs_residual": self.max_abs_residual.map(json_f64),
            "not_found": self.not_found,
        })
    }
}

/// Fits (or, with an override, just evaluates) ε against a published boundary table.
pub fn fit(kind: BoundaryKind, settings: &Settings) -> Result<FitSummary> {
    let targets = kind.targets();
    let search = settings.search();
    let (cal, range) = match settings.epsilon {
        Some(eps) => (
            evaluate_threshold_with(
                &targets,
                GapThreshold::new(settings.criterion, eps),
                &search,
            )?,
            None,
        ),
        None => {
            let (lo, hi) = settings.range();
            (
                calibrate_with(&targets, settings.criterion, lo, hi, &search)
                    .with_context(|| format!("calibrating {} thresholds", kind.label()))?,
                Some((lo, hi)),
            )
        }
    };
    Ok(FitSummary {
        kind,
        threshold: cal.threshold,
        range,
        rows: cal.rows.iter().map(|r| r.computed).collect(),
        sum_sq: cal.sum_sq,
        max_abs_residual: cal.max_abs_residual(),
        not_found: cal.not_found,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryRow {
    pub n: usize,
    pub computed: Option<f64>,
    pub published: Option<f64>,
}

impl BoundaryRow {
    pub fn residual(&self) -> Option<f64> {
        Some(self.computed? - self.published?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTable {
    pub fit: FitSummary,
    pub rows: Vec<BoundaryRow>,
}

impl BoundaryTable {
    pub fn kind(&self) -> BoundaryKind {
        self.fit.kind
    }

    pub fn not_found(&self) -> usize {
        self.rows.iter().filter(|r| r.computed.is_none()).count()
    }

    pub fn table(&self) -> Table {
        let kind = self.kind();
        let mut t = Table::new(kind.table_name(), &BOUNDARY_HEADER);
        for r in &self.rows {
            t.push(vec![
                r.n.into(),
                kind.pairing().to_string().into(),
                kind.pair_index(r.n).into(),
                Cell::opt(r.computed),
                self.fit.threshold.epsilon.into(),
                self.fit.threshold.criterion.to_string().into(),
                Cell::opt(r.published),
                Cell::opt(r.residual()),
                r.computed.is_some().into(),
            ]);
        }
        t
    }
}

/// Splitting or merging points for levels `1..=n_max`, with ε fitted to the
/// published rows.
pub fn boundary_table(
    kind: BoundaryKind,
    n_max: usize,
    settings: &Settings,
) -> Result<BoundaryTable> {
    if n_max == 0 || n_max > MAX_REGION_LEVEL {
        return Err(domain(format!("n_max must lie in 1..={MAX_REGION_LEVEL}")));
    }
    let fit = fit(kind, settings)?;
    let published = kind.published();
    let search = settings.search();
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let computed = match fit.rows.get(n - 1) {
            Some(&c) => c,
            None => {
                match find_boundary_with(kind.pair_index(n), kind.pairing(), fit.threshold, &search)
                {
                    Ok(b) => Some(b.l_c),
                    Err(Error::NotFound { .. } | Error::Ambiguity { .. }) => None,
                    Err(e) => {
                        return Err(e)
                            .with_context(|| format!("{} point of level {n}", kind.label()))
                    }
                }
            }
        };
        rows.push(BoundaryRow {
            n,
            computed,
            published: published.get(n - 1).copied(),
        });
    }
    Ok(BoundaryTable { fit, rows })
}

/// `JSON` record of both fits.
pub fn calibration_json(tables: &[&BoundaryTable]) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert(
        "schema_version".into(),
        json!(crate::output::SCHEMA_VERSION),
    );
    for t in tables {
        obj.insert(t.kind().label().into(), t.fit.to_json());
    }
    Value::Object(obj)
}

/// Characteristic values of every class and order `≤ n_max` on a uniform grid.
pub fn characteristics(
    n_max: usize,
    l_min: f64,
    l_max: f64,
    steps: usize,
    truncation: &Truncation,
) -> Result<Table> {
    if !(l_min.is_finite() && l_max.is_finite() && 0.0 <= l_min && l_min <= l_max) {
        return Err(domain("barrier range must satisfy 0 ≤ l_min ≤ l_max"));
    }
    if steps == 0 || (steps < 2 && l_min < l_max) {
        return Err(domain("a barrier range needs at least 2 steps"));
    }
    let mut t = Table::new("fig1_characteristics", &CHARACTERISTICS_HEADER);
    for i in 0..steps {
        let l = if steps == 1 {
            l_min
        } else {
            l_min + (l_max - l_min) * i as f64 / (steps - 1) as f64
        };
        let rows = sweep_characteristics_with(n_max, &[l], truncation)
            .with_context(|| format!("characteristic values at l={l}"))?;
        for r in rows {
            t.push(vec![
                r.class.to_string().into(),
                r.n.into(),
                r.l.into(),
                r.value.into(),
            ]);
        }
    }
    Ok(t)
}

/// `|s(φ)|²` on `points` angles, with the periodic-trapezoid integral in the footer.
pub fn density_table(
    family: StateFamily,
    n: usize,
    l: f64,
    points: usize,
    truncation: &Truncation,
) -> Result<Table> {
    if points < 16 {
        return Err(domain("density needs at least 16 points"));
    }
    let state = build_state_with(StateSpec::new(family, n, l), truncation)?;
    let values = density(&state, &angle_grid(points));
    let integral = periodic_trapezoid(&values.iter().map(|&(_, d)| d).collect::<Vec<_>>());
    let mut t = Table::new("density", &DENSITY_HEADER);
    for (phi, d) in values {
        t.push(vec![phi.into(), d.into()]);
    }
    t.footer
        .push(format!("integral={}", crate::output::fmt_f64(integral)));
    Ok(t)
}

/// Density panels: `φ⁺`, `ξ` and `η` of levels 1..=8 at the splitting points.
pub fn fig4_densities(truncation: &Truncation) -> Result<Table> {
    let mut t = Table::new("fig4_densities", &FIG4_HEADER);
    let grid = angle_grid::<f64>(256);
    for (&n, &l) in LEVELS.iter().zip(&SPLITTING_POINTS) {
        for family in [StateFamily::PhiPlus, StateFamily::Xi, StateFamily::Eta] {
            let state = build_state_with(StateSpec::new(family, n, l), truncation)?;
            for (phi, d) in density(&state, &grid) {
                t.push(vec![
                    family.to_string().into(),
                    n.into(),
                    l.into(),
                    phi.into(),
                    d.into(),
                ]);
            }
        }
    }
    Ok(t)
}

fn column_name((from, to): (StateFamily, StateFamily)) -> String {
    format!("{from}_{to}")
}

fn transition_label((from, to): (StateFamily, StateFamily)) -> String {
    format!("{from}->{to}")
}

fn valued_header(first: &[&str], columns: &[String]) -> Vec<String> {
    let mut h: Vec<String> = first.iter().map(|s| (*s).to_owned()).collect();
    for c in columns {
        h.push(c.clone());
        h.push(format!("{c}_published"));
        h.push(format!("{c}_residual"));
    }
    h
}

fn valued_table(
    name: &str,
    columns: &[String],
    rows: impl Iterator<Item = (usize, f64, [(f64, f64); 4])>,
) -> Table {
    let header = valued_header(&["n", "l_eval"], columns);
    let mut t = Table {
        name: name.to_owned(),
        header,
        rows: Vec::new(),
        footer: Vec::new(),
    };
    for (n, l, cells) in rows {
        let mut row = vec![Cell::from(n), Cell::from(l)];
        for (computed, published) in cells {
            row.extend([
                computed.into(),
                published.into(),
                (computed - published).into(),
            ]);
        }
        t.push(row);
    }
    t
}

/// Four jumps of one level, in the published column order.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpRow {
    pub n: usize,
    pub l_eval: f64,
    pub jumps: [Jump; 4],
}

impl JumpRow {
    /// `⟨v⟩(from) − ⟨v⟩(to)`, the published orientation.
    pub fn velocity(&self) -> [f64; 4] {
        self.jumps.clone().map(|j| -j.delta_v)
    }

    pub fn velocity_sq(&self) -> [f64; 4] {
        self.jumps.clone().map(|j| -j.delta_v2)
    }
}

pub fn jump_rows(points: &[f64; 8], truncation: &Truncation) -> Result<Vec<JumpRow>> {
    LEVELS
        .iter()
        .zip(points)
        .map(|(&n, &l)| {
            let mut jumps = Vec::with_capacity(4);
            for (from, to) in JUMP_COLUMNS {
                jumps.push(
                    jump_with(n, from, to, l, 0.0, truncation)
                        .with_context(|| format!("jump {from}->{to} of level {n} at l={l}"))?,
                );
            }
            Ok(JumpRow {
                n,
                l_eval: l,
                jumps: jumps.try_into().expect("four columns"),
            })
        })
        .collect()
}

fn jump_columns() -> Vec<String> {
    JUMP_COLUMNS.iter().map(|&c| column_name(c)).collect()
}

/// Velocity jumps, quoted as `from − to`.
pub fn table3(rows: &[JumpRow]) -> Table {
    valued_table(
        "table3",
        &jump_columns(),
        rows.iter().map(|r| {
            let c = r.velocity();
            (
                r.n,
                r.l_eval,
                std::array::from_fn(|i| (c[i], VELOCITY_JUMPS[r.n - 1][i])),
            )
        }),
    )
}

/// Jumps of the squared velocity, quoted as `from − to`.
pub fn table4(rows: &[JumpRow]) -> Table {
    valued_table(
        "table4",
        &jump_columns(),
        rows.iter().map(|r| {
            let c = r.velocity_sq();
            (
                r.n,
                r.l_eval,
                std::array::from_fn(|i| (c[i], VELOCITY_SQ_JUMPS[r.n - 1][i])),
            )
        }),
    )
}

/// Per-transition jumps `to − from`, with the fluctuation radicand.
pub fn jump_series(name: &str, header: &[&str], rows: &[JumpRow]) -> Table {
    let mut t = Table::new(name, header);
    for r in rows {
        for j in &r.jumps {
            let mut row = vec![
                r.n.into(),
                transition_label(j.transition).into(),
                r.l_eval.into(),
            ];
            for h in &header[3..] {
                row.push(match *h {
                    "delta_v" => j.delta_v.into(),
                    "delta_v2" => j.delta_v2.into(),
                    "radicand" => j.fluct_radicand.into(),
                    "defined" => j.fluct_defined.into(),
                    other => unreachable!("unknown jump column {other}"),
                });
            }
            t.push(row);
        }
    }
    t
}

/// Uncertainty products of the four states of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct UrRow {
    pub n: usize,
    pub l_eval: f64,
    pub reports: [Uncertainty; 4],
}

impl UrRow {
    pub fn ur_a(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.reports[i].ur_a)
    }

    pub fn ur_b(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.reports[i].ur_b)
    }
}

pub fn ur_rows(points: &[f64; 8], truncation: &Truncation) -> Result<Vec<UrRow>> {
    LEVELS
        .iter()
        .zip(points)
        .map(|(&n, &l)| {
            let mut reports = Vec::with_capacity(4);
            for family in UR_COLUMNS {
                let state = build_state_with(StateSpec::new(family, n, l), truncation)
                    .with_context(|| format!("{family} of level {n} at l={l}"))?;
                reports.push(angular_moments(&state));
            }
            Ok(UrRow {
                n,
                l_eval: l,
                reports: reports.try_into().expect("four columns"),
            })
        })
        .collect()
}

fn ur_columns() -> Vec<String> {
    UR_COLUMNS.iter().map(|f| f.to_string()).collect()
}

pub fn table5(rows: &[UrRow]) -> Table {
    valued_table(
        "table5",
        &ur_columns(),
        rows.iter().map(|r| {
            let c = r.ur_a();
            (
                r.n,
                r.l_eval,
                std::array::from_fn(|i| (c[i], UR_A[r.n - 1][i])),
            )
        }),
    )
}

pub fn table6(rows: &[UrRow]) -> Table {
    valued_table(
        "table6",
        &ur_columns(),
        rows.iter().map(|r| {
            let c = r.ur_b();
            (
                r.n,
                r.l_eval,
                std::array::from_fn(|i| (c[i], UR_B[r.n - 1][i])),
            )
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_orientation_flips_sign() {
        let rows = jump_rows(&SPLITTING_POINTS, &Truncation::default()).unwrap();
        let first = &rows[0];
        assert!((first.velocity()[0] - 2.0).abs() < 1e-9);
        assert!((first.jumps[0].delta_v + 2.0).abs() < 1e-9);
        let t = table3(&rows);
        assert_eq!(
            t.header[2..5],
            ["phi+_xi", "phi+_xi_published", "phi+_xi_residual"]
        );
        assert_eq!(t.rows.len(), 8);
    }

    #[test]
    fn merging_rows_use_the_well_pair() {
        assert_eq!(BoundaryKind::Merging.pair_index(1), 0);
        assert_eq!(BoundaryKind::Splitting.pair_index(1), 1);
        assert!(boundary_table(BoundaryKind::Splitting, 13, &Settings::default()).is_err());
    }
}
