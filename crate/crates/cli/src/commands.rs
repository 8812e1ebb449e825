//! The five commands. Each returns the report as pretty-printed JSON.

use serde::Serialize;
use tomoportrait::bell::{
    chsh_matrix, maximize_bell, portrait_bell_number, separability_verdict, smolin_bell_closed, ParityPortraitFamily,
    PortraitSettings, SearchOptions, GOLDEN_TOL, MAX_SWEEPS, MIN_SWEEP_GAIN, SCAN_POINTS, VIOLATION_MARGIN,
};
use tomoportrait::ppt::{ppt_check, CutSpec};
use tomoportrait::states::{smolin_pauli, DensityMatrix};
use tomoportrait::tomography::{tomogram_raw, tomogram_vector, Outcome, TomogramVector};
use tomoportrait::{bell, Direction, NORM_TOL, PSD_TOL};

use crate::format::{to_pretty_json, DensityMatrixDoc, INPUT_UNIT_TOL, QUBIT_ORDER};
use crate::{CliError, TOOL, VERSION};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_RESTARTS: usize = 32;
/// Agreement required between the closed form and the dense pipeline.
pub const CLOSED_VS_DENSE_TOL: f64 = 1e-10;
/// Distance from the Smolin state under which the closed form applies.
pub const SMOLIN_MATCH_TOL: f64 = 1e-12;

#[derive(Serialize)]
struct Header {
    kind: &'static str,
    tool: &'static str,
    version: &'static str,
    seed: u64,
}

impl Header {
    fn new(kind: &'static str, seed: u64) -> Self {
        Self { kind, tool: TOOL, version: VERSION, seed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Closed,
    Dense,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Closed => "closed_form",
            Objective::Dense => "dense_pipeline",
        }
    }
}

#[derive(Serialize)]
struct SettingsDoc {
    a: [f64; 3],
    d: [f64; 3],
    #[serde(rename = "bB")]
    b_b: [f64; 3],
    #[serde(rename = "bC")]
    b_c: [f64; 3],
    #[serde(rename = "bD")]
    b_d: [f64; 3],
    #[serde(rename = "cB")]
    c_b: [f64; 3],
    #[serde(rename = "cC")]
    c_c: [f64; 3],
    #[serde(rename = "cD")]
    c_d: [f64; 3],
}

impl From<&PortraitSettings> for SettingsDoc {
    fn from(s: &PortraitSettings) -> Self {
        Self {
            a: s.a.to_array(),
            d: s.d.to_array(),
            b_b: s.b[0].to_array(),
            b_c: s.b[1].to_array(),
            b_d: s.b[2].to_array(),
            c_b: s.c[0].to_array(),
            c_c: s.c[1].to_array(),
            c_d: s.c[2].to_array(),
        }
    }
}

pub fn is_smolin(rho: &DensityMatrix) -> bool {
    rho.n_qubits() == 4 && rho.op().max_abs_diff(smolin_pauli().op()) <= SMOLIN_MATCH_TOL
}

pub fn cmd_state(rho: &DensityMatrix, name: &str) -> String {
    to_pretty_json(&DensityMatrixDoc::from_state(rho, Some(name)))
}

#[derive(Serialize)]
struct TomogramReport<'a> {
    #[serde(flatten)]
    header: Header,
    state: &'a str,
    qubit_order: &'static str,
    outcome_order: &'static str,
    directions: Vec<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outcome: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    probability: Option<f64>,
    outcomes: Vec<String>,
    probs: Vec<f64>,
    /// Largest difference between the rotation route and the projector route.
    route_deviation: f64,
    tolerances: TomogramTolerances,
}

#[derive(Serialize)]
struct TomogramTolerances {
    direction_unit: f64,
    normalization: f64,
}

pub fn cmd_tomogram(
    rho: &DensityMatrix,
    state: &str,
    dirs: &[Direction],
    outcome: Option<&str>,
    seed: u64,
) -> Result<String, CliError> {
    if dirs.len() != rho.n_qubits() {
        return Err(CliError::input(format!(
            "{} directions given for a {}-qubit state",
            dirs.len(),
            rho.n_qubits()
        )));
    }
    let t: TomogramVector = tomogram_vector(rho, dirs)?;
    let mut route_deviation = 0.0f64;
    for m in t.outcomes() {
        route_deviation = route_deviation.max((tomogram_raw(rho, dirs, &m)? - t.get(&m)).abs());
    }
    let picked = match outcome {
        Some(text) => {
            let m = Outcome::parse(text)
                .filter(|m| m.len() == dirs.len())
                .ok_or_else(|| CliError::input(format!("outcome {text:?} must be {} symbols from '+' and '-'", dirs.len())))?;
            Some((m.to_string(), t.get(&m)))
        }
        None => None,
    };
    Ok(to_pretty_json(&TomogramReport {
        header: Header::new("tomogram_report", seed),
        state,
        qubit_order: QUBIT_ORDER,
        outcome_order: TomogramVector::OUTCOME_ORDER,
        directions: dirs.iter().map(Direction::to_array).collect(),
        outcome: picked.as_ref().map(|p| p.0.clone()),
        probability: picked.map(|p| p.1),
        outcomes: t.outcomes().map(|m| m.to_string()).collect(),
        probs: t.probs().to_vec(),
        route_deviation,
        tolerances: TomogramTolerances { direction_unit: INPUT_UNIT_TOL, normalization: NORM_TOL },
    }))
}

#[derive(Serialize)]
struct ChshDoc {
    columns: [&'static str; 4],
    rows: [&'static str; 4],
    entries: [[f64; 4]; 4],
}

#[derive(Serialize)]
struct BellReport<'a> {
    #[serde(flatten)]
    header: Header,
    state: &'a str,
    cut: &'static str,
    settings: SettingsDoc,
    /// Only available for the Smolin state.
    closed_form: Option<f64>,
    dense_pipeline: f64,
    abs_difference: Option<f64>,
    verdict: &'static str,
    chsh_matrix: ChshDoc,
    tolerances: BellTolerances,
}

#[derive(Serialize)]
struct BellTolerances {
    violation_margin: f64,
    closed_vs_dense: f64,
    direction_unit: f64,
}

pub fn cmd_bell(rho: &DensityMatrix, state: &str, settings: &PortraitSettings, seed: u64) -> Result<String, CliError> {
    let fam = ParityPortraitFamily::new(rho.clone())?;
    let m = chsh_matrix(&fam, settings.a, settings.b, settings.d, settings.c)?;
    let dense = bell::bell_number(&m);
    let closed = is_smolin(rho).then(|| smolin_bell_closed(settings));
    let difference = closed.map(|c| (c - dense).abs());
    if let Some(diff) = difference {
        if diff > CLOSED_VS_DENSE_TOL {
            return Err(CliError::Numerical(format!(
                "closed form and dense pipeline disagree by {diff:e}"
            )));
        }
    }
    Ok(to_pretty_json(&BellReport {
        header: Header::new("bell_report", seed),
        state,
        cut: "A:BCD",
        settings: settings.into(),
        closed_form: closed,
        dense_pipeline: dense,
        abs_difference: difference,
        verdict: separability_verdict(dense).as_str(),
        chsh_matrix: ChshDoc {
            columns: ["(a,b)", "(a,c)", "(d,b)", "(d,c)"],
            rows: ["++", "+-", "-+", "--"],
            entries: m.entries,
        },
        tolerances: BellTolerances {
            violation_margin: VIOLATION_MARGIN,
            closed_vs_dense: CLOSED_VS_DENSE_TOL,
            direction_unit: INPUT_UNIT_TOL,
        },
    }))
}

#[derive(Serialize)]
struct MaximizeReport<'a> {
    #[serde(flatten)]
    header: Header,
    state: &'a str,
    objective: &'static str,
    restarts: usize,
    start: Option<SettingsDoc>,
    best_value: f64,
    best_settings: SettingsDoc,
    best_restart: usize,
    evaluations: u64,
    /// The best settings re-evaluated through the dense pipeline.
    dense_check: f64,
    verdict: &'static str,
    tolerances: SearchTolerances,
}

#[derive(Serialize)]
struct SearchTolerances {
    golden_section: f64,
    min_sweep_gain: f64,
    max_sweeps: usize,
    scan_points: usize,
    violation_margin: f64,
}

pub fn cmd_bell_maximize(
    rho: &DensityMatrix,
    state: &str,
    objective: Objective,
    start: Option<PortraitSettings>,
    restarts: usize,
    seed: u64,
) -> Result<String, CliError> {
    if restarts == 0 {
        return Err(CliError::input("restarts must be at least 1"));
    }
    let fam = ParityPortraitFamily::new(rho.clone())?;
    if objective == Objective::Closed && !is_smolin(rho) {
        return Err(CliError::input("the closed-form objective applies only to the Smolin state; use --objective dense"));
    }
    let mut opts = SearchOptions::new(restarts, seed);
    if let Some(s) = start {
        opts = opts.with_start(s);
    }
    let failure = std::cell::RefCell::new(None);
    let result = match objective {
        Objective::Closed => maximize_bell(&smolin_bell_closed, &opts),
        Objective::Dense => maximize_bell(
            &|s: &PortraitSettings| {
                portrait_bell_number(&fam, s).unwrap_or_else(|e| {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NEG_INFINITY
                })
            },
            &opts,
        ),
    };
    if let Some(e) = failure.into_inner() {
        return Err(e.into());
    }
    let dense_check = portrait_bell_number(&fam, &result.best_settings)?;
    Ok(to_pretty_json(&MaximizeReport {
        header: Header::new("bell_search_report", result.seed),
        state,
        objective: objective.as_str(),
        restarts: result.restarts,
        start: start.as_ref().map(SettingsDoc::from),
        best_value: result.best_value,
        best_settings: (&result.best_settings).into(),
        best_restart: result.best_restart,
        evaluations: result.evaluations,
        dense_check,
        verdict: separability_verdict(result.best_value).as_str(),
        tolerances: SearchTolerances {
            golden_section: GOLDEN_TOL,
            min_sweep_gain: MIN_SWEEP_GAIN,
            max_sweeps: MAX_SWEEPS,
            scan_points: SCAN_POINTS,
            violation_margin: VIOLATION_MARGIN,
        },
    }))
}

#[derive(Serialize)]
struct PptReportDoc<'a> {
    #[serde(flatten)]
    header: Header,
    state: &'a str,
    cut: String,
    min_eigenvalue: f64,
    verdict: &'static str,
    note: &'static str,
    tolerances: PptTolerances,
}

#[derive(Serialize)]
struct PptTolerances {
    negativity: f64,
}

pub fn cmd_ppt(rho: &DensityMatrix, state: &str, cut: &CutSpec, seed: u64) -> Result<String, CliError> {
    if cut.n_qubits() != rho.n_qubits() {
        return Err(CliError::input(format!("cut {cut} names {} qubits but the state has {}", cut.n_qubits(), rho.n_qubits())));
    }
    let report = ppt_check(rho, cut)?;
    Ok(to_pretty_json(&PptReportDoc {
        header: Header::new("ppt_report", seed),
        state,
        cut: cut.to_string(),
        min_eigenvalue: report.min_eigenvalue,
        verdict: report.verdict.as_str(),
        note: report.verdict.note(),
        tolerances: PptTolerances { negativity: PSD_TOL },
    }))
}

/// `A:BC...` for an `n`-qubit state.
pub fn default_cut(n_qubits: usize) -> Result<CutSpec, CliError> {
    Ok(CutSpec::new(&[0], n_qubits)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tomoportrait::states::smolin_mixture;

    #[test]
    fn smolin_forms_are_recognized() {
        assert!(is_smolin(&smolin_pauli()));
        assert!(is_smolin(&smolin_mixture()));
        assert!(!is_smolin(&DensityMatrix::maximally_mixed(4)));
    }

    #[test]
    fn closed_objective_needs_smolin() {
        let err = cmd_bell_maximize(&DensityMatrix::maximally_mixed(4), "mixed:4", Objective::Closed, None, 1, 1);
        assert!(matches!(err, Err(CliError::Input(_))));
        assert!(cmd_bell_maximize(&smolin_pauli(), "smolin", Objective::Closed, None, 0, 1).is_err());
    }

    #[test]
    fn tomogram_dimension_mismatch() {
        let err = cmd_tomogram(&smolin_pauli(), "smolin", &[Direction::Z; 3], None, 1).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
