//! JSON code description: `{header, name, n, z_cells, x_cells, colors,
//! geometry, logicals}`.

use csscluster_core::codes::{CssCode, LogicalBasis};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header {
    pub seed: u64,
    pub logical_qubits: usize,
    pub degeneracy: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Colors {
    pub z: Option<Vec<u8>>,
    pub x: Option<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Logicals {
    pub z: Vec<Vec<usize>>,
    pub x: Vec<Vec<usize>>,
    pub partner: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub header: Header,
    pub name: String,
    pub n: usize,
    pub z_cells: Vec<Vec<usize>>,
    pub x_cells: Vec<Vec<usize>>,
    #[serde(default)]
    pub colors: Option<Colors>,
    #[serde(default)]
    pub geometry: Option<Vec<[f64; 3]>>,
    #[serde(default)]
    pub logicals: Option<Logicals>,
}

impl CodeFile {
    pub fn from_code(code: &CssCode, seed: u64) -> Self {
        let colors = match (&code.z_colors, &code.x_colors) {
            (None, None) => None,
            (z, x) => Some(Colors { z: z.clone(), x: x.clone() }),
        };
        CodeFile {
            header: Header { seed, logical_qubits: code.logical_qubits(), degeneracy: code.degeneracy() },
            name: code.name.clone(),
            n: code.n,
            z_cells: code.z_cells.clone(),
            x_cells: code.x_cells.clone(),
            colors,
            geometry: code.geometry.clone(),
            logicals: code.logicals.as_ref().map(|l| Logicals { z: l.z.clone(), x: l.x.clone(), partner: l.partner.clone() }),
        }
    }

    /// The code, after checking that it is a valid CSS code whose header
    /// matches.
    pub fn to_code(&self) -> CliResult<CssCode> {
        let mut code = CssCode::new(self.name.clone(), self.n, self.z_cells.clone(), self.x_cells.clone());
        if let Some(c) = &self.colors {
            code.z_colors = c.z.clone();
            code.x_colors = c.x.clone();
        }
        code.geometry = self.geometry.clone();
        code.logicals =
            self.logicals.as_ref().map(|l| LogicalBasis { z: l.z.clone(), x: l.x.clone(), partner: l.partner.clone() });
        let report = code.validate();
        if !report.is_ok() {
            return Err(CliError::Invalid(format!("{}: not a valid CSS code: {report:?}", self.name)));
        }
        let sized = |what: &str, len: Option<usize>, want: usize| match len {
            Some(l) if l != want => Err(CliError::Invalid(format!("{what} has {l} entries, expected {want}"))),
            _ => Ok(()),
        };
        sized("colors.z", code.z_colors.as_ref().map(Vec::len), code.z_cells.len())?;
        sized("colors.x", code.x_colors.as_ref().map(Vec::len), code.x_cells.len())?;
        sized("geometry", code.geometry.as_ref().map(Vec::len), code.n)?;
        if code.logical_qubits() != self.header.logical_qubits {
            return Err(CliError::Invalid(format!(
                "header says {} logical qubits, cells give {}",
                self.header.logical_qubits,
                code.logical_qubits()
            )));
        }
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
