//! Setup files and the textual forms of states and directions.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tomoportrait::bell::PortraitSettings;
use tomoportrait::states::{bell_state, smolin_mixture, smolin_pauli, BellKind, DensityMatrix};
use tomoportrait::Direction;

use crate::format::{parse_vector, DensityMatrixDoc};
use crate::CliError;

/// A state given by name or inline as a density matrix document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Name(String),
    Matrix(DensityMatrixDoc),
}

impl StateSpec {
    pub fn build(&self) -> Result<DensityMatrix, CliError> {
        match self {
            StateSpec::Name(name) => named_state(name),
            StateSpec::Matrix(doc) => doc.to_state(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            StateSpec::Name(name) => name.clone(),
            StateSpec::Matrix(doc) => doc.name.clone().unwrap_or_else(|| "inline".into()),
        }
    }
}

/// A direction as `[x, y, z]` or as a signed axis name such as `"z"` or `"-x"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DirectionSpec {
    Vector([f64; 3]),
    Axis(String),
}

impl DirectionSpec {
    pub fn resolve(&self, label: &str) -> Result<Direction, CliError> {
        match self {
            DirectionSpec::Vector(v) => parse_vector(v, label),
            DirectionSpec::Axis(s) => parse_direction(s, label),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupFile {
    #[serde(default)]
    pub state: Option<StateSpec>,
    #[serde(default)]
    pub cut: Option<String>,
    /// Bell directions keyed by `a`, `d`, `bB`, `bC`, `bD`, `cB`, `cC`, `cD`.
    #[serde(default)]
    pub directions: Option<BTreeMap<String, DirectionSpec>>,
    /// One measurement direction per qubit for `tomogram`.
    #[serde(default)]
    pub tomogram_directions: Option<Vec<DirectionSpec>>,
    #[serde(default)]
    pub outcome: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub restarts: Option<usize>,
}

impl SetupFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }

    /// The eight Bell directions, or `None` if the file has no `directions` table.
    pub fn portrait_settings(&self) -> Result<Option<PortraitSettings>, CliError> {
        let Some(map) = &self.directions else { return Ok(None) };
        if let Some(extra) = map.keys().find(|k| !PortraitSettings::NAMES.contains(&k.as_str())) {
            return Err(CliError::input(format!(
                "unknown direction name {extra:?}; expected {}",
                PortraitSettings::NAMES.join(", ")
            )));
        }
        let missing: Vec<&str> = PortraitSettings::NAMES.iter().copied().filter(|n| !map.contains_key(*n)).collect();
        if !missing.is_empty() {
            return Err(CliError::input(format!("missing directions: {}", missing.join(", "))));
        }
        let mut dirs = [Direction::Z; 8];
        for (slot, name) in dirs.iter_mut().zip(PortraitSettings::NAMES) {
            *slot = map[name].resolve(name)?;
        }
        Ok(Some(PortraitSettings::from_array(dirs)))
    }

    pub fn tomogram_directions(&self) -> Result<Option<Vec<Direction>>, CliError> {
        let Some(list) = &self.tomogram_directions else { return Ok(None) };
        list.iter()
            .enumerate()
            .map(|(i, d)| d.resolve(&format!("tomogram_directions[{i}]")))
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}

/// Named states: `smolin`, `smolin-mixture`, `bell:<kind>` with kind one of
/// `Φ+ Φ− Ψ+ Ψ−` (or `phi+`, `psi-`, ...), and `mixed:<n>` for `I/2^n`.
pub fn named_state(name: &str) -> Result<DensityMatrix, CliError> {
    let name = name.trim();
    if name.eq_ignore_ascii_case("smolin") {
        return Ok(smolin_pauli());
    }
    if name.eq_ignore_ascii_case("smolin-mixture") {
        return Ok(smolin_mixture());
    }
    if let Some(kind) = name.strip_prefix("bell:") {
        return bell_kind(kind).map(|k| bell_state(k).density());
    }
    if let Some(n) = name.strip_prefix("mixed:") {
        return match n.parse::<usize>() {
            Ok(n @ 1..=6) => Ok(DensityMatrix::maximally_mixed(n)),
            _ => Err(CliError::input(format!("mixed:{n} needs a qubit count from 1 to 6"))),
        };
    }
    Err(CliError::input(format!(
        "unknown state {name:?}; expected smolin, smolin-mixture, bell:Φ+|Φ−|Ψ+|Ψ−, mixed:<n> or an inline matrix"
    )))
}

fn bell_kind(text: &str) -> Result<BellKind, CliError> {
    let norm = text.trim().to_lowercase().replace('\u{2212}', "-").replace('φ', "phi").replace('ψ', "psi");
    match norm.as_str() {
        "phi+" => Ok(BellKind::PhiPlus),
        "phi-" => Ok(BellKind::PhiMinus),
        "psi+" => Ok(BellKind::PsiPlus),
        "psi-" => Ok(BellKind::PsiMinus),
        _ => Err(CliError::input(format!("unknown Bell state {text:?}; expected Φ+, Φ−, Ψ+ or Ψ−"))),
    }
}

/// Parses `x`, `-z`, `+y` or `x,y,z` components.
pub fn parse_direction(text: &str, label: &str) -> Result<Direction, CliError> {
    let t = text.trim();
    let (sign, axis) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.strip_prefix('+').unwrap_or(t)),
    };
    let unit = match axis.to_ascii_lowercase().as_str() {
        "x" => Some(Direction::X),
        "y" => Some(Direction::Y),
        "z" => Some(Direction::Z),
        _ => None,
    };
    if let Some(d) = unit {
        return Ok(if sign < 0.0 { -d } else { d });
    }
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    let parsed: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    match parsed {
        Ok(v) if v.len() == 3 => parse_vector(&[v[0], v[1], v[2]], label),
        _ => Err(CliError::input(format!("{label} = {text:?} is neither an axis name nor three comma-separated reals"))),
    }
}

/// Semicolon-separated directions, one per qubit: `"z;x;0.6,0,0.8;-y"`.
pub fn parse_direction_list(text: &str) -> Result<Vec<Direction>, CliError> {
    text.split(';').enumerate().map(|(i, s)| parse_direction(s, &format!("direction {i}"))).collect()
}
