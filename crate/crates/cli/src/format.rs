//! JSON documents for density matrices, tomograms, portrait matrices and
//! reports.
//!
//! Complex numbers are `[re, im]` pairs, matrices are row-major arrays of
//! rows, and floats are written in shortest round-trip form (at most 17
//! significant digits), so parsing a written document reproduces every
//! value bit for bit.

use serde::{Deserialize, Serialize};
use tomoportrait::portrait::PortraitMatrix;
use tomoportrait::states::DensityMatrix;
use tomoportrait::tomography::TomogramVector;
use tomoportrait::{Direction, Operator, C64};

use crate::CliError;

pub const QUBIT_ORDER: &str = "qubit A is the most significant bit of the basis index";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrixDoc {
    #[serde(default = "density_kind")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tool: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub n_qubits: Option<usize>,
    #[serde(default = "qubit_order")]
    pub qubit_order: String,
    pub entries: Vec<Vec<[f64; 2]>>,
}

fn density_kind() -> String {
    "density_matrix".into()
}

fn qubit_order() -> String {
    QUBIT_ORDER.into()
}

impl DensityMatrixDoc {
    pub fn from_state(rho: &DensityMatrix, name: Option<&str>) -> Self {
        Self {
            kind: density_kind(),
            tool: Some(crate::TOOL.into()),
            version: Some(crate::VERSION.into()),
            name: name.map(str::to_owned),
            n_qubits: Some(rho.n_qubits()),
            qubit_order: qubit_order(),
            entries: rho.op().rows().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect(),
        }
    }

    pub fn to_operator(&self) -> Result<Operator, CliError> {
        let dim = self.entries.len();
        if let Some(bad) = self.entries.iter().position(|row| row.len() != dim) {
            return Err(CliError::input(format!("density matrix row {bad} does not have {dim} entries")));
        }
        let data: Vec<C64> = self.entries.iter().flatten().map(|[re, im]| C64::new(*re, *im)).collect();
        let op = Operator::from_entries(dim, data)?;
        if let Some(n) = self.n_qubits {
            if n != op.n_qubits() {
                return Err(CliError::input(format!("n_qubits = {n} but the matrix is {dim}x{dim}")));
            }
        }
        Ok(op)
    }

    pub fn to_state(&self) -> Result<DensityMatrix, CliError> {
        Ok(DensityMatrix::new(self.to_operator()?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomogramDoc {
    pub kind: String,
    pub qubit_order: String,
    pub outcome_order: String,
    pub directions: Vec<[f64; 3]>,
    pub outcomes: Vec<String>,
    pub probs: Vec<f64>,
}

impl TomogramDoc {
    pub fn from_tomogram(t: &TomogramVector) -> Self {
        Self {
            kind: "tomogram".into(),
            qubit_order: qubit_order(),
            outcome_order: TomogramVector::OUTCOME_ORDER.into(),
            directions: t.directions().iter().map(Direction::to_array).collect(),
            outcomes: t.outcomes().map(|o| o.to_string()).collect(),
            probs: t.probs().to_vec(),
        }
    }

    pub fn to_tomogram(&self) -> Result<TomogramVector, CliError> {
        let dirs = self
            .directions
            .iter()
            .enumerate()
            .map(|(i, v)| parse_vector(v, &format!("direction {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TomogramVector::new(dirs, self.probs.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PortraitMatrixDoc {
    #[serde(default = "portrait_kind")]
    pub kind: String,
    /// Two rows of `k` entries.
    pub entries: [Vec<f64>; 2],
}

fn portrait_kind() -> String {
    "portrait_matrix".into()
}

impl PortraitMatrixDoc {
    pub fn from_matrix(pi: &PortraitMatrix) -> Self {
        let k = pi.k();
        Self { kind: portrait_kind(), entries: [pi.entries()[..k].to_vec(), pi.entries()[k..].to_vec()] }
    }

    pub fn to_matrix(&self) -> Result<PortraitMatrix, CliError> {
        let k = self.entries[0].len();
        if self.entries[1].len() != k {
            return Err(CliError::input("portrait matrix rows differ in length"));
        }
        Ok(PortraitMatrix::new(k, self.entries.concat())?)
    }
}

/// Tolerance on `|n|² - 1` for directions read from files or flags.
pub const INPUT_UNIT_TOL: f64 = 1e-9;

pub fn parse_vector(v: &[f64; 3], label: &str) -> Result<Direction, CliError> {
    Direction::with_tolerance(v[0], v[1], v[2], INPUT_UNIT_TOL).map_err(|_| {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        CliError::input(format!("{label} = {v:?} is not a unit vector (norm {norm})"))
    })
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}
