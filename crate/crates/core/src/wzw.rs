//! Scalar WZW data at a fixed level: q, quantum integers, Casimirs,
//! conformal weights and central charges.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::young::{TheoryParams, YoungDiagram};

/// SU(2) color stored as twice the spin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpinLabel {
    pub twice_j: u32,
}

impl SpinLabel {
    pub const ZERO: SpinLabel = SpinLabel { twice_j: 0 };
    pub const HALF: SpinLabel = SpinLabel { twice_j: 1 };

    pub fn new(twice_j: u32) -> Self {
        Self { twice_j }
    }

    pub fn spin(self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    pub fn is_integrable(self, k: u32) -> bool {
        self.twice_j <= k
    }

    pub fn require_integrable(self, k: u32) -> Result<Self> {
        if self.is_integrable(k) {
            Ok(self)
        } else {
            Err(Error::NonIntegrableColor(format!("2j={} at level {k}", self.twice_j)))
        }
    }

    /// A spin-j color is a single row of 2j boxes.
    pub fn to_diagram(self) -> YoungDiagram {
        YoungDiagram::row(self.twice_j)
    }

    pub fn from_diagram(d: &YoungDiagram) -> Result<Self> {
        let reduced = d.reduce(2)?;
        Ok(Self::new(reduced.first_row()))
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_j.is_multiple_of(2) {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

/// q = exp(2πi/(N+K)).
pub fn root_of_unity(params: TheoryParams) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / f64::from(params.height()))
}

/// [x] = sin(πx/(N+K)) / sin(π/(N+K)).
pub fn quantum_integer(x: f64, params: TheoryParams) -> f64 {
    let h = f64::from(params.height());
    (PI * x / h).sin() / (PI / h).sin()
}

/// Twice the quadratic Casimir, so that h = j(j+1)/(K+2) for SU(2).
pub fn casimir(d: &YoungDiagram, n: u32) -> f64 {
    let n = f64::from(n);
    let r = f64::from(d.box_count());
    let rows: f64 = d
        .rows()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let l = f64::from(l);
            l * (l - 2.0 * (i as f64 + 1.0) + 1.0)
        })
        .sum();
    rows + n * r - r * r / n
}

pub fn conformal_weight(d: &YoungDiagram, params: TheoryParams) -> f64 {
    casimir(d, params.n) / (2.0 * f64::from(params.height()))
}

/// Both sides of the weight sum h(a) + h̃(ã), with the right side evaluated
/// as printed and in the form that the spectrum actually satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightDuality {
    pub lhs: f64,
    pub rhs_printed: f64,
    pub rhs_corrected: f64,
}

impl WeightDuality {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs_corrected).abs()
    }

    pub fn printed_residual(&self) -> f64 {
        (self.lhs - self.rhs_printed).abs()
    }
}

pub fn weight_duality_sum(d: &YoungDiagram, params: TheoryParams) -> Result<WeightDuality> {
    let dual = d.dual_label(params)?;
    let lhs = conformal_weight(d, params) + conformal_weight(&dual, params.dual());
    let r = f64::from(d.box_count());
    let nk = f64::from(params.n * params.k);
    Ok(WeightDuality {
        lhs,
        rhs_printed: 0.5 * r * (1.0 - r / (2.0 * nk)),
        rhs_corrected: r / 2.0 - r * r / (2.0 * nk),
    })
}

/// c = (N²−1)K/(N+K).
pub fn central_charge(params: TheoryParams) -> f64 {
    let n = f64::from(params.n);
    (n * n - 1.0) * f64::from(params.k) / f64::from(params.height())
}

/// Central charge of the K-th unitary minimal model.
pub fn minimal_central_charge(k: u32) -> f64 {
    let k = f64::from(k);
    1.0 - 6.0 / ((k + 2.0) * (k + 3.0))
}
