//! Critical temperatures of thermal states, Table-style grids, J₂ sweeps of
//! the four-site cluster and bound-entanglement windows.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::criteria::{self, InequalityId, DETECTION_TOL};
use crate::error::{Error, Result};
use crate::models::{ModelFamily, ModelSpec, ThermalModel};
use crate::separability::{self, NPT_TOL};
use crate::spin::{self, Axis};
use crate::state::DensityMatrix;

/// Entanglement test applied to a thermal state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// The eight spin-squeezing inequalities.
    Eqs2,
    /// Standard spin squeezing, best squeezed axis.
    Eq1,
    /// Dicke-state criterion, best axis pair.
    Case2,
    /// Partial transposition over every bipartition.
    Ppt,
    /// Realignment over every bipartition.
    Ccnr,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::Eqs2,
        Criterion::Eq1,
        Criterion::Case2,
        Criterion::Ppt,
        Criterion::Ccnr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Eqs2 => "eqs2",
            Criterion::Eq1 => "eq1",
            Criterion::Case2 => "case2",
            Criterion::Ppt => "ppt",
            Criterion::Ccnr => "ccnr",
        }
    }

    /// Margins above this value count as a detection.
    pub fn tolerance(self) -> f64 {
        match self {
            Criterion::Ppt => NPT_TOL,
            _ => DETECTION_TOL,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Domain(format!("unknown criterion '{s}'")))
    }
}

/// Grid and bisection settings for [`critical_temperature`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub grid_points: usize,
    /// Final bracket width.
    pub t_tol: f64,
    /// Optimize measurement directions for [`Criterion::Eqs2`].
    pub optimize_directions: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            t_min: 0.02,
            t_max: 10.0,
            grid_points: 200,
            t_tol: 1e-4,
            optimize_directions: false,
        }
    }
}

impl SearchConfig {
    pub fn with_t_max(self, t_max: f64) -> Self {
        SearchConfig { t_max, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min > 0.0 && self.t_max > self.t_min && self.t_max.is_finite()) {
            return Err(Error::Domain(format!(
                "need 0 < t_min < t_max, got [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        if self.grid_points < 2 {
            return Err(Error::Domain("grid needs at least 2 points".into()));
        }
        if !(self.t_tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", self.t_tol)));
        }
        Ok(())
    }

    /// Log-spaced temperatures, ascending.
    pub fn grid(&self) -> Vec<f64> {
        let (a, b) = (self.t_min.ln(), self.t_max.ln());
        let last = self.grid_points - 1;
        (0..self.grid_points)
            .map(|i| match i {
                0 => self.t_min,
                i if i == last => self.t_max,
                i => (a + (b - a) * i as f64 / last as f64).exp(),
            })
            .collect()
    }
}

fn best<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// Margin of a criterion on a given state; positive means entangled.
///
/// `eq1` is `−∞` when the mean spin vanishes in every plane, since the
/// inequality then says nothing.
pub fn state_margin(rho: &DensityMatrix, criterion: Criterion, optimize_directions: bool) -> Result<f64> {
    match criterion {
        Criterion::Eqs2 => {
            let m = spin::moments_from_state(rho);
            let canonical = criteria::eval_observation1(&m)?.max_margin;
            if !optimize_directions {
                return Ok(canonical);
            }
            let opt = criteria::optimal_directions(&m)?;
            Ok(best([canonical, opt.report.max_margin, opt.eq2c_best_margin, opt.eq2d_best_margin]))
        }
        Criterion::Eq1 => {
            let m = spin::moments_from_state(rho);
            Ok(best(
                Axis::ALL.iter().filter_map(|&a| criteria::eval_standard_squeezing(&m, a).ok()),
            ))
        }
        Criterion::Case2 => {
            let m = spin::moments_from_state(rho);
            let report = criteria::eval_full(&m)?;
            Ok(best(Axis::ALL.iter().filter_map(|&a| report.margin(InequalityId::Case2(a)))))
        }
        Criterion::Ppt => {
            let v = separability::ppt_all(rho)?;
            Ok(-v.min_pt_eigenvalue().expect("at least one bipartition"))
        }
        Criterion::Ccnr => Ok(separability::ccnr_all(rho)?
            .max_ccnr_margin()
            .expect("at least one bipartition")),
    }
}

/// Margin of a criterion on the thermal state of `model` at temperature `t`.
pub fn detection_margin(model: &ThermalModel, t: f64, criterion: Criterion, optimize_directions: bool) -> Result<f64> {
    state_margin(&model.state(t)?, criterion, optimize_directions)
}

/// Bracketed critical temperature: detected at `t_lo`, not at `t_hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalTemperature {
    pub model: ModelSpec,
    pub criterion: Criterion,
    pub t_c: f64,
    pub t_lo: f64,
    pub t_hi: f64,
    pub detected_below: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalOutcome {
    Found(CriticalTemperature),
    /// No grid temperature is detected.
    NeverDetected,
}

impl CriticalOutcome {
    pub fn t_c(&self) -> Option<f64> {
        match self {
            CriticalOutcome::Found(c) => Some(c.t_c),
            CriticalOutcome::NeverDetected => None,
        }
    }

    pub fn found(&self) -> Option<&CriticalTemperature> {
        match self {
            CriticalOutcome::Found(c) => Some(c),
            CriticalOutcome::NeverDetected => None,
        }
    }
}

/// Highest temperature at which `criterion` stops detecting the thermal state.
///
/// Scans the grid downwards from `t_max`, takes the first detected point and
/// bisects between it and its upper neighbour.
pub fn critical_temperature(model: &ThermalModel, criterion: Criterion, cfg: &SearchConfig) -> Result<CriticalOutcome> {
    cfg.validate()?;
    let tol = criterion.tolerance();
    let detected = |t: f64| -> Result<bool> {
        Ok(detection_margin(model, t, criterion, cfg.optimize_directions)? > tol)
    };
    let grid = cfg.grid();
    if detected(cfg.t_max)? {
        return Err(Error::BracketExceeded { t_max: cfg.t_max });
    }
    let mut hi = cfg.t_max;
    let mut lo = None;
    for &t in grid.iter().rev().skip(1) {
        if detected(t)? {
            lo = Some(t);
            break;
        }
        hi = t;
    }
    let Some(mut lo) = lo else {
        return Ok(CriticalOutcome::NeverDetected);
    };
    while hi - lo > cfg.t_tol {
        let mid = 0.5 * (lo + hi);
        if detected(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalOutcome::Found(CriticalTemperature {
        model: *model.spec(),
        criterion,
        t_c: 0.5 * (lo + hi),
        t_lo: lo,
        t_hi: hi,
        detected_below: true,
    }))
}

/// One cell of a critical-temperature table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableCell {
    pub model: ModelSpec,
    pub criterion: Criterion,
    pub outcome: CriticalOutcome,
}

/// Critical temperatures for every `(family, n, criterion)` combination, in
/// that nesting order. Cells are computed in parallel.
pub fn critical_table(
    families: &[ModelFamily],
    sizes: &[usize],
    criteria: &[Criterion],
    cfg: &SearchConfig,
) -> Result<Vec<TableCell>> {
    cfg.validate()?;
    let specs: Vec<ModelSpec> = families
        .iter()
        .flat_map(|&f| sizes.iter().map(move |&n| ModelSpec::new(f, n, 0.0)))
        .collect::<Result<_>>()?;
    let models: Vec<ThermalModel> = specs
        .into_par_iter()
        .map(ThermalModel::new)
        .collect::<Result<_>>()?;
    let jobs: Vec<(&ThermalModel, Criterion)> = models
        .iter()
        .flat_map(|m| criteria.iter().map(move |&c| (m, c)))
        .collect();
    jobs.into_par_iter()
        .map(|(model, criterion)| {
            Ok(TableCell {
                model: *model.spec(),
                criterion,
                outcome: critical_temperature(model, criterion, cfg)?,
            })
        })
        .collect()
}

/// Heisenberg and XY rings, both criteria of the bound-entanglement
/// comparison, for the given sizes.
pub fn table1(sizes: &[usize], cfg: &SearchConfig) -> Result<Vec<TableCell>> {
    critical_table(
        &[ModelFamily::HeisenbergRing, ModelFamily::XyRing],
        sizes,
        &[Criterion::Eqs2, Criterion::Ppt],
        cfg,
    )
}

/// Diagnostics at the middle of a bound-entanglement window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MidpointCheck {
    pub temperature: f64,
    pub min_pt_eigenvalue: f64,
    pub eqs2_margin: f64,
    pub max_ccnr_margin: f64,
    /// PPT margin of the pair-averaged two-qubit state.
    pub rho_av2_ppt_margin: f64,
}

impl MidpointCheck {
    /// PPT on every cut, detected by the inequalities, missed by CCNR, and
    /// with a separable averaged pair.
    pub fn is_bound_entangled(&self) -> bool {
        self.min_pt_eigenvalue >= -NPT_TOL
            && self.eqs2_margin > 1e-6
            && self.max_ccnr_margin <= DETECTION_TOL
            && self.rho_av2_ppt_margin <= 0.0
    }
}

/// Temperatures where the state is PPT for all bipartitions but still
/// detected by the spin-squeezing inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundWindow {
    pub t_ppt: f64,
    pub t_eqs2: f64,
    pub midpoint: MidpointCheck,
}

impl BoundWindow {
    pub fn width(&self) -> f64 {
        self.t_eqs2 - self.t_ppt
    }
}

pub fn midpoint_check(model: &ThermalModel, t: f64, optimize_directions: bool) -> Result<MidpointCheck> {
    let rho = model.state(t)?;
    let verdicts = separability::separability_all(&rho)?;
    let pair = spin::avg_two_qubit_state(&rho)?;
    Ok(MidpointCheck {
        temperature: t,
        min_pt_eigenvalue: verdicts.min_pt_eigenvalue().expect("at least one bipartition"),
        eqs2_margin: state_margin(&rho, Criterion::Eqs2, optimize_directions)?,
        max_ccnr_margin: verdicts.max_ccnr_margin().expect("at least one bipartition"),
        rho_av2_ppt_margin: separability::two_qubit_ppt_margin(&pair)?,
    })
}

/// Window from already computed critical temperatures. A missing PPT
/// temperature or `t_eqs2 ≤ t_ppt + tol` gives `None`.
pub fn window_from(
    model: &ThermalModel,
    t_eqs2: Option<f64>,
    t_ppt: Option<f64>,
    cfg: &SearchConfig,
) -> Result<Option<BoundWindow>> {
    let (Some(t_eqs2), Some(t_ppt)) = (t_eqs2, t_ppt) else {
        return Ok(None);
    };
    if t_eqs2 <= t_ppt + cfg.t_tol {
        return Ok(None);
    }
    let midpoint = midpoint_check(model, 0.5 * (t_ppt + t_eqs2), cfg.optimize_directions)?;
    Ok(Some(BoundWindow { t_ppt, t_eqs2, midpoint }))
}

pub fn bound_window(model: &ThermalModel, cfg: &SearchConfig) -> Result<Option<BoundWindow>> {
    let (eqs2, ppt) = rayon::join(
        || critical_temperature(model, Criterion::Eqs2, cfg),
        || critical_temperature(model, Criterion::Ppt, cfg),
    );
    window_from(model, eqs2?.t_c(), ppt?.t_c(), cfg)
}

/// Critical temperatures of the four-site cluster at one J₂.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub j2: f64,
    /// `None` when the criterion never fires on the grid.
    pub t_c: BTreeMap<Criterion, Option<f64>>,
    /// Present only when both eqs2 and ppt were requested.
    pub window: Option<BoundWindow>,
}

/// Evenly spaced J₂ values; a single step gives just `j2_min`.
pub fn j2_values(j2_min: f64, j2_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::Domain("need at least one step".into()));
    }
    if !j2_min.is_finite() || !j2_max.is_finite() {
        return Err(Error::Domain("J2 range must be finite".into()));
    }
    if steps == 1 {
        return Ok(vec![j2_min]);
    }
    let h = (j2_max - j2_min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i == steps - 1 { j2_max } else { j2_min + h * i as f64 })
        .collect())
}

pub fn j2_sweep(
    j2_min: f64,
    j2_max: f64,
    steps: usize,
    criteria: &[Criterion],
    cfg: &SearchConfig,
) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let values = j2_values(j2_min, j2_max, steps)?;
    values
        .into_par_iter()
        .map(|j2| {
            let model = ThermalModel::new(ModelSpec::cluster4(j2)?)?;
            let t_c = criteria
                .par_iter()
                .map(|&c| Ok((c, critical_temperature(&model, c, cfg)?.t_c())))
                .collect::<Result<BTreeMap<_, _>>>()?;
            let window = match (t_c.get(&Criterion::Eqs2), t_c.get(&Criterion::Ppt)) {
                (Some(&eqs2), Some(&ppt)) => window_from(&model, eqs2, ppt, cfg)?,
                _ => None,
            };
            Ok(SweepRow { j2, t_c, window })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> ThermalModel {
        ThermalModel::new(ModelSpec::heisenberg_ring(n).unwrap()).unwrap()
    }

    #[test]
    fn criterion_names_round_trip() {
        for c in Criterion::ALL {
            assert_eq!(c.name().parse::<Criterion>().unwrap(), c);
        }
        assert!("pt".parse::<Criterion>().is_err());
    }

    #[test]
    fn grid_is_log_spaced() {
        let cfg = SearchConfig::default();
        let g = cfg.grid();
        assert_eq!(g.len(), 200);
        assert_eq!((g[0], g[199]), (0.02, 10.0));
        let r0 = g[1] / g[0];
        assert!(g.windows(2).all(|w| (w[1] / w[0] - r0).abs() < 1e-12));
        assert!(SearchConfig { grid_points: 1, ..cfg }.validate().is_err());
        assert!(cfg.with_t_max(0.01).validate().is_err());
    }

    #[test]
    fn margins_straddle_the_critical_point() {
        let model = ring(4);
        assert!(detection_margin(&model, 5.0, Criterion::Eqs2, false).unwrap() > 0.0);
        assert!(detection_margin(&model, 6.0, Criterion::Eqs2, false).unwrap() <= 0.0);
    }

    #[test]
    fn infinite_temperature_detects_nothing() {
        let model = ring(3);
        for c in Criterion::ALL {
            let m = detection_margin(&model, f64::INFINITY, c, false).unwrap();
            assert!(m <= c.tolerance(), "{c}: {m}");
        }
        assert_eq!(
            detection_margin(&model, f64::INFINITY, Criterion::Eq1, false).unwrap(),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn three_site_ring_critical_temperatures() {
        let model = ring(3);
        let cfg = SearchConfig::default();
        let eqs2 = critical_temperature(&model, Criterion::Eqs2, &cfg).unwrap();
        let ppt = critical_temperature(&model, Criterion::Ppt, &cfg).unwrap();
        let (eqs2, ppt) = (eqs2.found().unwrap(), ppt.found().unwrap());
        assert!((eqs2.t_c - 5.46).abs() < 0.02, "{}", eqs2.t_c);
        assert!((ppt.t_c - 4.33).abs() < 0.02, "{}", ppt.t_c);
        for c in [eqs2, ppt] {
            assert!(c.t_hi - c.t_lo <= cfg.t_tol);
            assert!(detection_margin(&model, c.t_lo, c.criterion, false).unwrap() > c.criterion.tolerance());
            assert!(detection_margin(&model, c.t_hi, c.criterion, false).unwrap() <= c.criterion.tolerance());
        }
    }

    #[test]
    fn bracket_exceeded_and_never_detected() {
        let model = ring(3);
        let low = SearchConfig::default().with_t_max(3.0);
        assert_eq!(
            critical_temperature(&model, Criterion::Eqs2, &low),
            Err(Error::BracketExceeded { t_max: 3.0 })
        );
        // the ring's mean spin vanishes, so standard squeezing never applies
        assert_eq!(
            critical_temperature(&model, Criterion::Eq1, &SearchConfig::default()).unwrap(),
            CriticalOutcome::NeverDetected
        );
    }

    #[test]
    fn four_site_ring_window() {
        let w = bound_window(&ring(4), &SearchConfig::default()).unwrap().unwrap();
        assert!((w.t_ppt - 5.47).abs() < 0.02);
        assert!((w.t_eqs2 - 5.77).abs() < 0.02);
        assert!(w.midpoint.is_bound_entangled(), "{:?}", w.midpoint);
    }

    #[test]
    fn sweep_values() {
        assert_eq!(j2_values(0.0, 1.0, 3).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(j2_values(0.3, 1.0, 1).unwrap(), vec![0.3]);
        assert!(j2_values(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn sweep_without_ppt_has_no_window() {
        let rows = j2_sweep(0.0, 1.0, 2, &[Criterion::Eqs2], &SearchConfig::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.window.is_none() && r.t_c.len() == 1));
        assert!((rows[0].t_c[&Criterion::Eqs2].unwrap() - 5.77).abs() < 0.02);
    }
}
