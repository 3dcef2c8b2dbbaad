//! Degeneracy gaps, splitting/merging points and the G₋/G₀/G₊ partition of
//! the barrier axis.
//!
//! A level `n` (tracked through `se_n`) is rotor-like while `b_n` is still
//! degenerate with `a_n`, non-degenerate in between, and well-like once `b_n`
//! has joined `a_{n−1}` in a tunnelling doublet. "Degenerate" is decided by a
//! gap threshold; the threshold is either absolute or relative to the energy
//! of the cosine member (see [`relative_gap`]).

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::mathieu::{characteristic_value_with, MathieuClass, Truncation};
use crate::scalar::Real;

/// Which pair of levels a gap refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairingKind {
    /// `(ce_n, se_n)`, degenerate for small barriers. Requires `n ≥ 1`.
    Rotor,
    /// `(ce_n, se_{n+1})`, degenerate deep in the wells.
    Well,
}

impl PairingKind {
    /// Orders `(ce, se)` of the pair at index `n`.
    pub fn members(self, n: usize) -> Result<(usize, usize)> {
        match self {
            Self::Rotor if n == 0 => Err(domain("rotor pairing needs n ≥ 1")),
            Self::Rotor => Ok((n, n)),
            Self::Well => Ok((n, n + 1)),
        }
    }
}

impl fmt::Display for PairingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rotor => "rotor",
            Self::Well => "well",
        })
    }
}

/// How a gap is compared with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GapCriterion {
    /// `|a − b| < ε`
    Absolute,
    /// Gap over the cosine member's energy below `ε`; see [`relative_gap`].
    Relative,
}

impl fmt::Display for GapCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Absolute => "absolute",
            Self::Relative => "relative",
        })
    }
}

impl std::str::FromStr for GapCriterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "absolute" => Ok(Self::Absolute),
            "relative" => Ok(Self::Relative),
            _ => Err(domain(format!("unknown gap criterion {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapThreshold<T> {
    pub criterion: GapCriterion,
    pub epsilon: T,
}

impl<T: Real> GapThreshold<T> {
    pub fn new(criterion: GapCriterion, epsilon: T) -> Self {
        Self { criterion, epsilon }
    }

    pub fn absolute(epsilon: T) -> Self {
        Self::new(GapCriterion::Absolute, epsilon)
    }

    pub fn relative(epsilon: T) -> Self {
        Self::new(GapCriterion::Relative, epsilon)
    }
}

/// Thresholds for the two boundaries of a level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionThresholds<T> {
    pub rotor: GapThreshold<T>,
    pub well: GapThreshold<T>,
}

/// Absolute gap `|a_n − b_n|` (rotor) or `|a_n − b_{n+1}|` (well).
pub fn pair_gap<T: Real>(n: usize, pairing: PairingKind, l: T) -> Result<T> {
    gap_measure(n, pairing, l, GapCriterion::Absolute)
}

/// Gap divided by the cosine member's energy above its regime's reference:
/// `|a|` for rotor pairs, `a + 2l` (height above the potential minimum) for
/// well pairs. Infinite where that vanishes.
pub fn relative_gap<T: Real>(n: usize, pairing: PairingKind, l: T) -> Result<T> {
    gap_measure(n, pairing, l, GapCriterion::Relative)
}

/// Gap measured the way `criterion` compares it.
pub fn gap_measure<T: Real>(
    n: usize,
    pairing: PairingKind,
    l: T,
    criterion: GapCriterion,
) -> Result<T> {
    gap_measure_with(n, pairing, l, criterion, &Truncation::default())
}

pub fn gap_measure_with<T: Real>(
    n: usize,
    pairing: PairingKind,
    l: T,
    criterion: GapCriterion,
    policy: &Truncation,
) -> Result<T> {
    let (c, s) = pairing.members(n)?;
    let a = characteristic_value_with(MathieuClass::ce(c), c, l, policy)?;
    let b = characteristic_value_with(MathieuClass::se(s)?, s, l, policy)?;
    let gap = (a - b).abs();
    if criterion == GapCriterion::Absolute {
        return Ok(gap);
    }
    let height = match pairing {
        PairingKind::Rotor => a.abs(),
        PairingKind::Well => a + T::lit(2.0) * l,
    };
    Ok(if height <= T::zero() {
        T::infinity()
    } else {
        gap / height
    })
}

/// A located splitting (rotor) or merging (well) point.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionBoundary<T> {
    pub n: usize,
    pub pairing: PairingKind,
    pub l_c: T,
    pub threshold: GapThreshold<T>,
    /// Final bisection bracket; the measure straddles ε across it.
    pub bracket: (T, T),
}

/// Search settings for [`find_boundary_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySearch {
    /// Probe used to decide whether a rotor pair splits immediately.
    pub probe: f64,
    /// Coarse scan step.
    pub step: f64,
    /// Bisection stops once the bracket is narrower than this.
    pub l_tol: f64,
    /// Upper end of the search range.
    pub ceiling: f64,
    /// Lower end of the search (the probe is used when smaller).
    pub start: f64,
    /// Samples taken across the coarse bracket for the monotonicity check.
    pub monotone_samples: usize,
    /// Truncation policy for every characteristic value.
    pub truncation: Truncation,
}

impl Default for BoundarySearch {
    fn default() -> Self {
        Self {
            probe: 1e-6,
            step: 0.25,
            l_tol: 1e-4,
            ceiling: 200.0,
            start: 0.0,
            monotone_samples: 8,
            truncation: Truncation::default(),
        }
    }
}

/// Locates the splitting (rotor) or merging (well) point with default search settings.
///
/// Rotor: the largest `l` at which the measure is still below ε, searching
/// upward. Well: the smallest `l` at which it has dropped below ε.
pub fn find_boundary<T: Real>(
    n: usize,
    pairing: PairingKind,
    threshold: GapThreshold<T>,
) -> Result<RegionBoundary<T>> {
    find_boundary_with(n, pairing, threshold, &BoundarySearch::default())
}

pub fn find_boundary_with<T: Real>(
    n: usize,
    pairing: PairingKind,
    threshold: GapThreshold<T>,
    search: &BoundarySearch,
) -> Result<RegionBoundary<T>> {
    GapCurve::new(n, pairing, threshold.criterion, *search)?.boundary(threshold.epsilon)
}

/// Gap measure of one pair, sampled lazily on the coarse scan grid and kept,
/// so that boundaries for many thresholds share the scan.
#[derive(Debug, Clone)]
pub struct GapCurve<T> {
    n: usize,
    pairing: PairingKind,
    criterion: GapCriterion,
    search: BoundarySearch,
    samples: Vec<T>,
}

impl<T: Real> GapCurve<T> {
    pub fn new(
        n: usize,
        pairing: PairingKind,
        criterion: GapCriterion,
        search: BoundarySearch,
    ) -> Result<Self> {
        pairing.members(n)?;
        if !(search.step > 0.0
            && search.l_tol > 0.0
            && search.ceiling > search.probe.max(search.start))
        {
            return Err(domain("invalid boundary search settings"));
        }
        Ok(Self {
            n,
            pairing,
            criterion,
            search,
            samples: Vec::new(),
        })
    }

    pub fn measure(&self, l: T) -> Result<T> {
        gap_measure_with(
            self.n,
            self.pairing,
            l,
            self.criterion,
            &self.search.truncation,
        )
    }

    fn grid(&self, i: usize) -> T {
        let first = self.search.probe.max(self.search.start);
        T::lit((first + self.search.step * i as f64).min(self.search.ceiling))
    }

    fn sample(&mut self, i: usize) -> Result<T> {
        while self.samples.len() <= i {
            let m = self.measure(self.grid(self.samples.len()))?;
            self.samples.push(m);
        }
        Ok(self.samples[i])
    }

    /// Rotor: the largest `l` at which the measure is still below `eps`.
    /// Well: the smallest `l` at which it has dropped below `eps`.
    pub fn boundary(&mut self, eps: T) -> Result<RegionBoundary<T>> {
        if !(eps > T::zero()) {
            return Err(domain("gap threshold must be positive"));
        }
        let (n, pairing) = (self.n, self.pairing);
        let threshold = GapThreshold::new(self.criterion, eps);
        let past = |m: T| match pairing {
            PairingKind::Rotor => m >= eps,
            PairingKind::Well => m < eps,
        };
        let context = || format!("{pairing} n={n} eps={eps}");

        if past(self.sample(0)?) {
            let start = T::lit(self.search.start);
            return Ok(RegionBoundary {
                n,
                pairing,
                l_c: start,
                threshold,
                bracket: (start, self.grid(0)),
            });
        }
        let ceiling = T::lit(self.search.ceiling);
        let mut i = 1;
        while !past(self.sample(i)?) {
            if self.grid(i) >= ceiling {
                return Err(Error::NotFound {
                    context: context(),
                    lo: self.search.start,
                    hi: self.search.ceiling,
                });
            }
            i += 1;
        }
        let (mut lo, mut hi) = (self.grid(i - 1), self.grid(i));
        let measure = |l: T| self.measure(l);
        check_monotone(
            &measure,
            pairing,
            lo,
            hi,
            self.search.monotone_samples,
            &context,
        )?;

        let l_tol = T::lit(self.search.l_tol);
        let two = T::lit(2.0);
        while hi - lo >= l_tol {
            let mid = (lo + hi) / two;
            if past(measure(mid)?) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(RegionBoundary {
            n,
            pairing,
            l_c: (lo + hi) / two,
            threshold,
            bracket: (lo, hi),
        })
    }
}

fn check_monotone<T: Real>(
    measure: &impl Fn(T) -> Result<T>,
    pairing: PairingKind,
    lo: T,
    hi: T,
    samples: usize,
    context: &impl Fn() -> String,
) -> Result<()> {
    if samples == 0 {
        return Ok(());
    }
    let pts: Vec<(T, T)> = (0..=samples + 1)
        .map(|i| {
            let l = lo + (hi - lo) * T::from_usize_lossy(i) / T::from_usize_lossy(samples + 1);
            measure(l).map(|m| (l, m))
        })
        .collect::<Result<_>>()?;
    let slack = T::tol(1e-12, 64.0);
    let monotone = pts.windows(2).all(|w| {
        let (a, b) = (w[0].1, w[1].1);
        let scale = slack * a.abs().max(b.abs()).max(T::one());
        match pairing {
            PairingKind::Rotor => b >= a - scale,
            PairingKind::Well => b <= a + scale,
        }
    });
    if monotone {
        Ok(())
    } else {
        Err(Error::Ambiguity {
            context: format!("non-monotone gap for {}", context()),
            samples: pts
                .iter()
                .map(|&(l, m)| (l.to_f64_lossy(), m.to_f64_lossy()))
                .collect(),
        })
    }
}

/// Symmetry region of a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionTag {
    GMinus,
    GZero,
    GPlus,
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::GMinus => "G-",
            Self::GZero => "G0",
            Self::GPlus => "G+",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryRegion<T> {
    pub tag: RegionTag,
    pub n: usize,
    pub l_range: (T, T),
}

/// Region of level `n ≥ 1` at barrier `l`.
///
/// G₋ while `(ce_n, se_n)` is degenerate, G₊ once `(ce_{n−1}, se_n)` is,
/// G₀ otherwise.
pub fn classify_region<T: Real>(
    n: usize,
    l: T,
    thresholds: &RegionThresholds<T>,
) -> Result<RegionTag> {
    classify_region_with(n, l, thresholds, &Truncation::default())
}

pub fn classify_region_with<T: Real>(
    n: usize,
    l: T,
    thresholds: &RegionThresholds<T>,
    policy: &Truncation,
) -> Result<RegionTag> {
    if n == 0 {
        return Err(domain("regions are defined for levels n ≥ 1"));
    }
    let rotor = gap_measure_with(n, PairingKind::Rotor, l, thresholds.rotor.criterion, policy)?;
    let well = gap_measure_with(
        n - 1,
        PairingKind::Well,
        l,
        thresholds.well.criterion,
        policy,
    )?;
    let in_rotor = rotor < thresholds.rotor.epsilon;
    let in_well = well < thresholds.well.epsilon;
    match (in_rotor, in_well) {
        (true, true) => Err(Error::Ambiguity {
            context: format!("level {n} is degenerate with both neighbours at l={l}"),
            samples: vec![
                (l.to_f64_lossy(), rotor.to_f64_lossy()),
                (l.to_f64_lossy(), well.to_f64_lossy()),
            ],
        }),
        (true, false) => Ok(RegionTag::GMinus),
        (false, true) => Ok(RegionTag::GPlus),
        (false, false) => Ok(RegionTag::GZero),
    }
}

/// Splitting point of level `n` (its G₋/G₀ boundary).
pub fn splitting_point<T: Real>(n: usize, threshold: GapThreshold<T>) -> Result<RegionBoundary<T>> {
    find_boundary(n, PairingKind::Rotor, threshold)
}

/// Merging point of level `n ≥ 1` (its G₀/G₊ boundary), where `se_n` joins `ce_{n−1}`.
pub fn merging_point<T: Real>(n: usize, threshold: GapThreshold<T>) -> Result<RegionBoundary<T>> {
    if n == 0 {
        return Err(domain("merging points are defined for levels n ≥ 1"));
    }
    find_boundary(n - 1, PairingKind::Well, threshold)
}

/// The three intervals of `[0, ceiling]` occupied by level `n`.
pub fn region_intervals<T: Real>(
    n: usize,
    thresholds: &RegionThresholds<T>,
) -> Result<[SymmetryRegion<T>; 3]> {
    let split = splitting_point(n, thresholds.rotor)?.l_c;
    let merge = merging_point(n, thresholds.well)?.l_c;
    if merge <= split {
        return Err(Error::Ambiguity {
            context: format!("merging point precedes splitting point for level {n}"),
            samples: vec![(split.to_f64_lossy(), 0.0), (merge.to_f64_lossy(), 0.0)],
        });
    }
    let ceiling = T::lit(BoundarySearch::default().ceiling);
    Ok([
        SymmetryRegion {
            tag: RegionTag::GMinus,
            n,
            l_range: (T::zero(), split),
        },
        SymmetryRegion {
            tag: RegionTag::GZero,
            n,
            l_range: (split, merge),
        },
        SymmetryRegion {
            tag: RegionTag::GPlus,
            n,
            l_range: (merge, ceiling),
        },
    ])
}

/// One row of a characteristic-value sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicRow<T> {
    pub class: MathieuClass,
    pub n: usize,
    pub l: T,
    pub value: T,
}

/// Characteristic values of every class and order `≤ n_max` on `l_grid`,
/// ordered by `(l, class, n)`.
pub fn sweep_characteristics<T: Real>(
    n_max: usize,
    l_grid: &[T],
) -> Result<Vec<CharacteristicRow<T>>> {
    sweep_characteristics_with(n_max, l_grid, &Truncation::default())
}

pub fn sweep_characteristics_with<T: Real>(
    n_max: usize,
    l_grid: &[T],
    policy: &Truncation,
) -> Result<Vec<CharacteristicRow<T>>> {
    if l_grid.is_empty() {
        return Err(domain("empty barrier grid"));
    }
    if l_grid.iter().any(|&l| !(l >= T::zero()) || !l.is_finite()) {
        return Err(domain("barrier grid must be finite and nonnegative"));
    }
    if l_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(domain("barrier grid must be ascending"));
    }
    let mut rows = Vec::new();
    for &l in l_grid {
        for class in MathieuClass::ALL {
            for n in class.orders(n_max) {
                let value = characteristic_value_with(class, n, l, policy)?;
                rows.push(CharacteristicRow { class, n, l, value });
            }
        }
    }
    Ok(rows)
}

/// Tabulated boundary used as a calibration target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryTarget<T> {
    /// Index passed to [`find_boundary`].
    pub n: usize,
    pub pairing: PairingKind,
    pub l_c: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationRow<T> {
    pub target: BoundaryTarget<T>,
    /// `None` when no crossing was found.
    pub computed: Option<T>,
    pub residual: Option<T>,
}

/// Least-squares fit of a single ε to a table of boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration<T> {
    pub threshold: GapThreshold<T>,
    pub rows: Vec<CalibrationRow<T>>,
    pub sum_sq: T,
    pub not_found: usize,
}

impl<T: Real> Calibration<T> {
    pub fn max_abs_residual(&self) -> Option<T> {
        self.rows
            .iter()
            .map(|r| r.residual.map(|x| x.abs()))
            .try_fold(T::zero(), |m, r| r.map(|r| m.max(r)))
    }
}

/// Evaluates every target at threshold `threshold`.
pub fn evaluate_threshold<T: Real>(
    targets: &[BoundaryTarget<T>],
    threshold: GapThreshold<T>,
) -> Result<Calibration<T>> {
    evaluate_threshold_with(targets, threshold, &BoundarySearch::default())
}

pub fn evaluate_threshold_with<T: Real>(
    targets: &[BoundaryTarget<T>],
    threshold: GapThreshold<T>,
    search: &BoundarySearch,
) -> Result<Calibration<T>> {
    let mut curves = curves_for(targets, threshold.criterion, search)?;
    evaluate_curves(targets, &mut curves, threshold)
}

fn curves_for<T: Real>(
    targets: &[BoundaryTarget<T>],
    criterion: GapCriterion,
    search: &BoundarySearch,
) -> Result<Vec<GapCurve<T>>> {
    targets
        .iter()
        .map(|t| GapCurve::new(t.n, t.pairing, criterion, *search))
        .collect()
}

fn evaluate_curves<T: Real>(
    targets: &[BoundaryTarget<T>],
    curves: &mut [GapCurve<T>],
    threshold: GapThreshold<T>,
) -> Result<Calibration<T>> {
    let mut rows = Vec::with_capacity(targets.len());
    let mut sum_sq = T::zero();
    let mut not_found = 0;
    for (&target, curve) in targets.iter().zip(curves.iter_mut()) {
        let computed = match curve.boundary(threshold.epsilon) {
            Ok(b) => Some(b.l_c),
            Err(Error::NotFound { .. }) | Err(Error::Ambiguity { .. }) => None,
            Err(e) => return Err(e),
        };
        let residual = computed.map(|c| c - target.l_c);
        match residual {
            Some(r) => sum_sq += r * r,
            None => not_found += 1,
        }
        rows.push(CalibrationRow {
            target,
            computed,
            residual,
        });
    }
    Ok(Calibration {
        threshold,
        rows,
        sum_sq,
        not_found,
    })
}

/// Fits ε for `criterion` over `[eps_lo, eps_hi]` (log scale): coarse scan
/// followed by golden-section refinement. Rows with no crossing are counted
/// first, squared residuals second.
pub fn calibrate<T: Real>(
    targets: &[BoundaryTarget<T>],
    criterion: GapCriterion,
    eps_lo: T,
    eps_hi: T,
) -> Result<Calibration<T>> {
    calibrate_with(
        targets,
        criterion,
        eps_lo,
        eps_hi,
        &BoundarySearch::default(),
    )
}

pub fn calibrate_with<T: Real>(
    targets: &[BoundaryTarget<T>],
    criterion: GapCriterion,
    eps_lo: T,
    eps_hi: T,
    search: &BoundarySearch,
) -> Result<Calibration<T>> {
    if !(eps_lo > T::zero() && eps_hi > eps_lo) {
        return Err(domain("calibration range must satisfy 0 < lo < hi"));
    }
    let mut curves = curves_for(targets, criterion, search)?;
    let mut eval = |log_eps: T| {
        evaluate_curves(
            targets,
            &mut curves,
            GapThreshold::new(criterion, log_eps.exp()),
        )
    };
    let better =
        |a: &Calibration<T>, b: &Calibration<T>| (a.not_found, a.sum_sq) < (b.not_found, b.sum_sq);

    let (x_lo, x_hi) = (eps_lo.ln(), eps_hi.ln());
    let coarse = 48;
    let grid: Vec<T> = (0..=coarse)
        .map(|i| x_lo + (x_hi - x_lo) * T::from_usize_lossy(i) / T::from_usize_lossy(coarse))
        .collect();
    let mut best_i = 0;
    let mut best = eval(grid[0])?;
    for (i, &x) in grid.iter().enumerate().skip(1) {
        let c = eval(x)?;
        if better(&c, &best) {
            best = c;
            best_i = i;
        }
    }

    let mut a = grid[best_i.saturating_sub(1)];
    let mut b = grid[(best_i + 1).min(coarse)];
    let inv_phi = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let mut x1 = b - (b - a) * inv_phi;
    let mut x2 = a + (b - a) * inv_phi;
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    for _ in 0..40 {
        if better(&f1, &f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - (b - a) * inv_phi;
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + (b - a) * inv_phi;
            f2 = eval(x2)?;
        }
    }
    for c in [f1, f2] {
        if better(&c, &best) {
            best = c;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_members() {
        assert_eq!(PairingKind::Rotor.members(3).unwrap(), (3, 3));
        assert_eq!(PairingKind::Well.members(0).unwrap(), (0, 1));
        assert!(PairingKind::Rotor.members(0).is_err());
    }

    #[test]
    fn rotor_gap_vanishes_at_zero_barrier() {
        for n in 1..=8 {
            assert_eq!(pair_gap(n, PairingKind::Rotor, 0.0_f64).unwrap(), 0.0);
        }
    }

    #[test]
    fn first_rotor_gap_is_twice_the_barrier() {
        let q = 0.2_f64;
        let gap = pair_gap(1, PairingKind::Rotor, q).unwrap();
        // a_1 − b_1 = 2q − q³/32 + …
        assert!((gap - 2.0 * q).abs() < 1e-3);
    }

    #[test]
    fn immediate_split_returns_zero() {
        let b = find_boundary(1, PairingKind::Rotor, GapThreshold::absolute(1e-9_f64)).unwrap();
        assert_eq!(b.l_c, 0.0);
    }

    #[test]
    fn boundary_bracket_straddles_threshold() {
        let th = GapThreshold::absolute(0.05_f64);
        let b = find_boundary(2, PairingKind::Rotor, th).unwrap();
        let (lo, hi) = b.bracket;
        assert!(lo <= b.l_c && b.l_c <= hi && hi - lo < 1e-4);
        assert!(pair_gap(2, PairingKind::Rotor, lo).unwrap() < 0.05);
        assert!(pair_gap(2, PairingKind::Rotor, hi).unwrap() >= 0.05);
        // a_2 − b_2 ≈ q²/2 at small q
        assert!((b.l_c - 0.1_f64.sqrt()).abs() < 0.01);
    }

    #[test]
    fn unreachable_threshold_is_not_found() {
        let search = BoundarySearch {
            ceiling: 5.0,
            ..BoundarySearch::default()
        };
        let err = find_boundary_with(
            1,
            PairingKind::Well,
            GapThreshold::absolute(1e-6_f64),
            &search,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotFound { .. }));
    }

    #[test]
    fn bad_threshold_rejected() {
        assert!(find_boundary(1, PairingKind::Rotor, GapThreshold::absolute(0.0_f64)).is_err());
    }

    #[test]
    fn sweep_at_zero_barrier() {
        let rows = sweep_characteristics(2, &[0.0_f64]).unwrap();
        let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
        assert_eq!(values, vec![0.0, 4.0, 1.0, 1.0, 4.0]);
        assert_eq!(rows[0].class, MathieuClass::CeEven);
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        assert!(sweep_characteristics::<f64>(2, &[]).is_err());
        assert!(sweep_characteristics(2, &[1.0_f64, 0.5]).is_err());
        assert!(sweep_characteristics(2, &[-1.0_f64]).is_err());
    }

    #[test]
    fn classify_needs_level_one() {
        let th = RegionThresholds {
            rotor: GapThreshold::relative(0.005_f64),
            well: GapThreshold::relative(0.01),
        };
        assert!(classify_region(0, 1.0, &th).is_err());
    }
}
