//! The q → q⁻¹ transposition symmetry of U(N) torus-family invariants:
//! V_a(q⁻¹) = (−1)^l V_ã(q) at fixed λ = q^N, with l the total box count.
//!
//! Inversion at fixed λ is evaluated through the rank-level exchange: the
//! U(N)_K value at q⁻¹ is the conjugate of the U(K)_N value with the same
//! colors, times (−1)^l.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::torus::{unknot_normalized_value, LinkInstance, Topology};
use crate::young::{TheoryParams, YoungDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Unknot,
    Hopf,
    HopfSum,
    Link633,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Unknot, Family::Hopf, Family::HopfSum, Family::Link633];

    pub fn topology(self) -> Topology {
        match self {
            Family::Unknot => Topology::Unknot,
            Family::Hopf => Topology::Hopf,
            Family::HopfSum => Topology::HopfSum,
            Family::Link633 => Topology::SixThreeThree,
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().replace('_', "-").as_str() {
            "unknot" => Ok(Family::Unknot),
            "hopf" => Ok(Family::Hopf),
            "hopf-sum" | "hopfsum" => Ok(Family::HopfSum),
            "link633" | "633" => Ok(Family::Link633),
            _ => Err(Error::UnknownLink(name.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Unknot => "unknot",
            Family::Hopf => "hopf",
            Family::HopfSum => "hopf-sum",
            Family::Link633 => "link633",
        }
    }
}

/// l = Σ r(a_i) over the colors as given.
pub fn sign_exponent(colors: &[YoungDiagram]) -> u32 {
    colors.iter().map(YoungDiagram::box_count).sum()
}

/// Both a and its transpose fit in fewer than N rows with at most K columns.
pub fn transpose_integrable(d: &YoungDiagram, params: TheoryParams) -> bool {
    let fits = |x: &YoungDiagram| (x.num_rows() as u32) < params.n && x.first_row() <= params.k;
    fits(d) && fits(&d.transpose())
}

/// U(N) invariant: the SU(N) value (colors reduced mod N) times the U(1)
/// linking factor q^{Σ_{i<j} w_ij r_i r_j / (2N)}, unknot-normalized.
pub fn u_value(family: Family, colors: &[YoungDiagram], params: TheoryParams) -> Result<Complex64> {
    let link = LinkInstance::new(family.topology(), colors.to_vec())?;
    let su = unknot_normalized_value(&link, params)?;
    let r: Vec<f64> = colors.iter().map(|c| f64::from(c.box_count())).collect();
    let mut exponent = 0.0;
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            exponent += link.crossings[i][j] as f64 * r[i] * r[j];
        }
    }
    let n = f64::from(params.n);
    let angle = 2.0 * PI * exponent / (2.0 * n * f64::from(params.height()));
    Ok(su * Complex64::from_polar(1.0, angle))
}

/// U(N)_K value at q⁻¹ with λ held fixed.
pub fn q_inverted_value(family: Family, colors: &[YoungDiagram], params: TheoryParams) -> Result<Complex64> {
    let sign = if sign_exponent(colors).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * u_value(family, colors, params.dual())?.conj())
}

#[derive(Clone, Debug, Serialize)]
pub struct QInversionReport {
    pub family: Family,
    pub theory: TheoryParams,
    pub colors: Vec<YoungDiagram>,
    pub transposed: Vec<YoungDiagram>,
    pub sign_exponent: u32,
    /// Set when a color or its transpose is not integrable; no comparison is made.
    pub skipped: Option<String>,
    pub inverted: Option<Complex64>,
    pub transposed_value: Option<Complex64>,
    pub residual: Option<f64>,
}

/// Compares V_a(q⁻¹) with (−1)^l V_ã(q).
pub fn q_inversion_check(family: Family, colors: &[YoungDiagram], params: TheoryParams) -> Result<QInversionReport> {
    let transposed: Vec<YoungDiagram> = colors.iter().map(YoungDiagram::transpose).collect();
    let l = sign_exponent(colors);
    let mut report = QInversionReport {
        family,
        theory: params,
        colors: colors.to_vec(),
        transposed: transposed.clone(),
        sign_exponent: l,
        skipped: None,
        inverted: None,
        transposed_value: None,
        residual: None,
    };
    if let Some(bad) = colors.iter().find(|c| !transpose_integrable(c, params)) {
        report.skipped = Some(format!("{bad} or its transpose is not integrable in {params}"));
        return Ok(report);
    }
    let inverted = q_inverted_value(family, colors, params)?;
    let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = sign * u_value(family, &transposed, params)?;
    report.inverted = Some(inverted);
    report.transposed_value = Some(rhs);
    report.residual = Some((inverted - rhs).norm());
    Ok(report)
}

/// Colors with at most `max_boxes` boxes passing `transpose_integrable`.
pub fn transpose_integrable_colors(params: TheoryParams, max_boxes: u32) -> Vec<YoungDiagram> {
    fn partitions(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            partitions(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for boxes in 0..=max_boxes {
        let mut rows = Vec::new();
        partitions(boxes, boxes, &mut Vec::new(), &mut rows);
        out.extend(
            rows.into_iter()
                .map(|r| YoungDiagram::new(r).expect("partition"))
                .filter(|d| transpose_integrable(d, params)),
        );
    }
    out
}

/// Quantum dimension Π_boxes [N + c]/[hook] from box contents, with
/// q^{1/2} and λ^{1/2} = q^{N/2} given independently.
pub fn content_dimension(d: &YoungDiagram, q_half: Complex64, lambda_half: Complex64) -> Complex64 {
    let t = d.transpose();
    let mut value = Complex64::new(1.0, 0.0);
    for (i, &len) in d.rows().iter().enumerate() {
        for j in 0..len as usize {
            let content = j as i32 - i as i32;
            let hook = (len as i32 - j as i32) + (t.row_len(j + 1) as i32 - i as i32) - 1;
            let num = lambda_half * q_half.powi(content) - (lambda_half * q_half.powi(content)).inv();
            let den = q_half.powi(hook) - q_half.powi(-hook);
            value *= num / den;
        }
    }
    value
}
