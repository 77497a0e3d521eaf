//! JSON grid files: an object of explicit arrays.
//!
//! ```json
//! {"k_values": [1], "nu_values": [0.5, {"fixed": 0.1, "per_k": -0.5}],
//!  "c_values": [1], "alpha_values": [1], "x_values": [0.5, 1],
//!  "shifts": [0.5], "weights": [0.5]}
//! ```
//!
//! An order given as an object is `fixed + per_k · k`.

use std::path::Path;

use kbessel::verify::{Check, GridSpec, Order};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OrderEntry {
    Absolute(f64),
    Relative {
        #[serde(default)]
        fixed: f64,
        #[serde(default)]
        per_k: f64,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    k_values: Vec<f64>,
    nu_values: Vec<OrderEntry>,
    c_values: Vec<f64>,
    alpha_values: Vec<f64>,
    x_values: Vec<f64>,
    shifts: Vec<f64>,
    weights: Vec<f64>,
}

impl From<GridFile> for GridSpec {
    fn from(g: GridFile) -> Self {
        GridSpec {
            k_values: g.k_values,
            nu_values: g
                .nu_values
                .into_iter()
                .map(|o| match o {
                    OrderEntry::Absolute(nu) => Order::absolute(nu),
                    OrderEntry::Relative { fixed, per_k } => Order { fixed, per_k },
                })
                .collect(),
            c_values: g.c_values,
            alpha_values: g.alpha_values,
            x_values: g.x_values,
            shifts: g.shifts,
            weights: g.weights,
        }
    }
}

/// Where grid points come from.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSource {
    /// Each check on its own default grid.
    Default,
    /// One grid shared by every check.
    Custom(GridSpec),
}

impl GridSource {
    pub fn spec_for(&self, check: Check) -> GridSpec {
        match self {
            GridSource::Default => GridSpec::default_for(check),
            GridSource::Custom(spec) => spec.clone(),
        }
    }
}

pub fn parse(text: &str) -> Result<GridSpec, String> {
    let file: GridFile = serde_json::from_str(text).map_err(|e| format!("invalid grid file: {e}"))?;
    let spec = GridSpec::from(file);
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

/// `default` or a path to a JSON grid file.
pub fn load(arg: &str) -> Result<GridSource, String> {
    if arg == "default" {
        return Ok(GridSource::Default);
    }
    let text = std::fs::read_to_string(Path::new(arg)).map_err(|e| format!("cannot read grid file {arg}: {e}"))?;
    parse(&text).map(GridSource::Custom)
}
