use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use spinsq::analysis::{self, CriticalOutcome, SearchConfig};
use spinsq::criteria::{self, CriterionReport, InequalityId};
use spinsq::io::{self, fmt_num};
use spinsq::models::{self, ModelFamily, ModelSpec, ThermalModel};
use spinsq::spin::{self, Axis, ReferenceState};
use spinsq::{CollectiveMoments, Criterion, Error};

use crate::{CheckArgs, DirectionsArgs, Failure, Fig2Args, GenStateArgs, SearchArgs, Table1Args, TcArgs};

fn compute(e: Error) -> Failure {
    match e {
        Error::Parse { .. } => Failure::Input(e.to_string()),
        _ => Failure::Compute(e.to_string()),
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn search_config(s: &SearchArgs, default_t_max: f64) -> Result<SearchConfig, Failure> {
    let cfg = SearchConfig {
        t_min: s.t_min,
        t_max: s.t_max.unwrap_or(default_t_max),
        grid_points: s.grid_points,
        t_tol: s.tol,
        optimize_directions: s.optimize_directions,
    };
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

/// Parses a criterion list into canonical order without duplicates.
fn criteria_list(names: &[String]) -> Result<Vec<Criterion>, Failure> {
    let set: BTreeSet<Criterion> = names
        .iter()
        .map(|s| s.parse::<Criterion>().map_err(usage))
        .collect::<Result<_, _>>()?;
    if set.is_empty() {
        return Err(Failure::Usage("no criteria requested".into()));
    }
    Ok(set.into_iter().collect())
}

fn opt_num(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

fn outcome_fields(outcome: &CriticalOutcome) -> String {
    match outcome.found() {
        Some(c) => format!("{},{},{}", fmt_num(c.t_c), fmt_num(c.t_lo), fmt_num(c.t_hi)),
        None => ",,".to_string(),
    }
}

pub fn table1(a: &Table1Args) -> Result<String, Failure> {
    let families = match a.family.to_ascii_lowercase().as_str() {
        "both" => vec![ModelFamily::HeisenbergRing, ModelFamily::XyRing],
        "heisenberg" => vec![ModelFamily::HeisenbergRing],
        "xy" => vec![ModelFamily::XyRing],
        other => return Err(Failure::Usage(format!("--family must be heisenberg, xy or both, got '{other}'"))),
    };
    if let Some(&bad) = a.n.iter().find(|&&n| !(3..=spin::MAX_QUBITS).contains(&n)) {
        return Err(Failure::Usage(format!(
            "--n {bad} is invalid: rings need 3 to {} sites",
            spin::MAX_QUBITS
        )));
    }
    let criteria = criteria_list(&a.criterion)?;
    let cfg = search_config(&a.search, 10.0)?;
    let cells = analysis::critical_table(&families, &a.n, &criteria, &cfg).map_err(compute)?;
    let mut out = String::from("family,n,criterion,t_c,t_lo,t_hi\n");
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            c.model.family,
            c.model.n,
            c.criterion,
            outcome_fields(&c.outcome)
        );
    }
    Ok(out)
}

pub fn fig2(a: &Fig2Args) -> Result<String, Failure> {
    let criteria = criteria_list(&a.criteria)?;
    let cfg = search_config(&a.search, 20.0)?;
    let values = analysis::j2_values(a.j2_min, a.j2_max, a.steps).map_err(usage)?;
    let with_window = criteria.contains(&Criterion::Eqs2) && criteria.contains(&Criterion::Ppt);
    let rows = analysis::j2_sweep(a.j2_min, a.j2_max, a.steps, &criteria, &cfg).map_err(compute)?;
    debug_assert_eq!(rows.len(), values.len());
    let mut header = vec!["j2".to_string()];
    header.extend(criteria.iter().map(|c| format!("t_{c}")));
    if with_window {
        header.extend(["window_lo".to_string(), "window_hi".to_string()]);
    }
    let mut out = header.join(",") + "\n";
    for row in rows {
        let mut fields = vec![fmt_num(row.j2)];
        fields.extend(criteria.iter().map(|c| opt_num(row.t_c[c])));
        if with_window {
            fields.push(opt_num(row.window.map(|w| w.t_ppt)));
            fields.push(opt_num(row.window.map(|w| w.t_eqs2)));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

fn load_moments(path: &Path) -> Result<CollectiveMoments, Failure> {
    io::parse_moments(&read_file(path)?).map_err(in_file(path))
}

fn push_margins(out: &mut String, report: &CriterionReport, ids: &[InequalityId]) {
    for id in ids {
        let value = report.margin(*id).map_or("n/a".to_string(), fmt_num);
        let _ = writeln!(out, "{:<8} {value}", id.to_string());
    }
}

fn observation1_ids() -> Vec<InequalityId> {
    let mut ids = vec![InequalityId::Eq2a, InequalityId::Eq2b];
    ids.extend(Axis::ALL.map(InequalityId::Eq2c));
    ids.extend(Axis::ALL.map(InequalityId::Eq2d));
    ids
}

fn push_frame(out: &mut String, opt: &criteria::DirectionOptimization) {
    let _ = writeln!(out, "optimal frame (rows are x', y', z'):");
    for r in 0..3 {
        let row: Vec<String> = (0..3).map(|c| fmt_num(opt.o[(r, c)])).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
    let eig: Vec<String> = opt.x_eigenvalues.iter().map(|v| fmt_num(*v)).collect();
    let _ = writeln!(out, "X eigenvalues: {}", eig.join(" "));
}

pub fn check(a: &CheckArgs) -> Result<String, Failure> {
    let m = match (&a.state, &a.moments) {
        (Some(path), None) => {
            let rho = io::parse_state(&read_file(path)?).map_err(in_file(path))?;
            if rho.n_qubits() < 2 {
                return Err(Failure::Input(format!("{}: criteria need at least two qubits", path.display())));
            }
            spin::moments_from_state(&rho)
        }
        (None, Some(path)) => load_moments(path)?,
        _ => return Err(Failure::Usage("give exactly one of --state or --moments".into())),
    };
    let report = criteria::eval_full(&m).map_err(|e| Failure::Input(e.to_string()))?;
    let mut out = String::new();
    let _ = writeln!(out, "N = {}", m.n);
    let mut ids = observation1_ids();
    ids.extend(Axis::ALL.map(InequalityId::Eq1));
    ids.extend(Axis::ALL.map(InequalityId::Case2));
    push_margins(&mut out, &report, &ids);
    let mut detected = report.detected;
    let mut best = (report.max_margin, report.argmax_id.to_string());
    if a.optimize_directions {
        if !m.off_diagonal_known {
            return Err(Failure::Input(
                "--optimize-directions needs Cxy, Cxz and Cyz in the moments file".into(),
            ));
        }
        let opt = criteria::optimal_directions(&m).map_err(compute)?;
        out.push('\n');
        push_frame(&mut out, &opt);
        let _ = writeln!(out, "margins in the optimal frame:");
        push_margins(&mut out, &opt.report, &observation1_ids());
        detected |= opt.report.detected;
        if opt.report.max_margin > best.0 {
            best = (opt.report.max_margin, format!("{}'", opt.report.argmax_id));
        }
    }
    out.push('\n');
    if detected {
        let _ = writeln!(out, "verdict: ENTANGLED ({} margin {})", best.1, fmt_num(best.0));
    } else {
        let _ = writeln!(out, "verdict: not detected (largest margin {} from {})", fmt_num(best.0), best.1);
    }
    Ok(out)
}

fn violation_line(out: &mut String, name: &str, margin: f64, direction: &str) {
    let verdict = if margin > criteria::DETECTION_TOL {
        format!("violated along {direction}")
    } else {
        "not violated in any direction".to_string()
    };
    let _ = writeln!(out, "{name}: {verdict} (best margin {})", fmt_num(margin));
}

pub fn directions(a: &DirectionsArgs) -> Result<String, Failure> {
    let m = load_moments(&a.moments)?;
    if !m.off_diagonal_known {
        return Err(Failure::Input(format!(
            "{}: directions need the full correlation matrix (Cxy, Cxz, Cyz)",
            a.moments.display()
        )));
    }
    let opt = criteria::optimal_directions(&m).map_err(|e| Failure::Input(e.to_string()))?;
    let mut out = String::new();
    push_frame(&mut out, &opt);
    violation_line(&mut out, "eq2c", opt.eq2c_best_margin, "x'");
    violation_line(&mut out, "eq2d", opt.eq2d_best_margin, "z'");
    for id in [InequalityId::Eq2a, InequalityId::Eq2b] {
        let margin = opt.report.margin(id).expect("observation-1 margin");
        let state = if margin > criteria::DETECTION_TOL { "violated" } else { "not violated" };
        let _ = writeln!(out, "{id}: {state} (rotation-invariant, margin {})", fmt_num(margin));
    }
    let _ = writeln!(out, "margins in the optimal frame:");
    push_margins(&mut out, &opt.report, &observation1_ids());
    Ok(out)
}

pub fn tc(a: &TcArgs) -> Result<String, Failure> {
    let family: ModelFamily = a.family.parse().map_err(usage)?;
    let spec = ModelSpec::new(family, a.n, a.j2).map_err(usage)?;
    let criterion: Criterion = a.criterion.parse().map_err(usage)?;
    let cfg = search_config(&a.search, 10.0)?;
    let model = ThermalModel::new(spec).map_err(compute)?;
    let outcome = analysis::critical_temperature(&model, criterion, &cfg).map_err(compute)?;
    Ok(format!(
        "family,n,j2,criterion,t_c,t_lo,t_hi\n{},{},{},{},{}\n",
        family,
        a.n,
        fmt_num(a.j2),
        criterion,
        outcome_fields(&outcome)
    ))
}

pub fn gen_state(a: &GenStateArgs) -> Result<String, Failure> {
    let rho = match (&a.reference, &a.thermal) {
        (Some(name), None) => {
            let name: ReferenceState = name.parse().map_err(usage)?;
            spin::reference_state(name, a.n).map_err(usage)?
        }
        (None, Some(family)) => {
            let family: ModelFamily = family.parse().map_err(usage)?;
            let spec = ModelSpec::new(family, a.n, a.j2).map_err(usage)?;
            let t = a.t.ok_or_else(|| Failure::Usage("--thermal needs --t".into()))?;
            models::thermal_state(&spec, t).map_err(usage)?.state
        }
        _ => return Err(Failure::Usage("give exactly one of --reference or --thermal".into())),
    };
    let text = if a.moments {
        io::write_moments(&spin::moments_from_state(&rho))
    } else {
        io::write_state(rho.matrix())
    };
    match &a.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
