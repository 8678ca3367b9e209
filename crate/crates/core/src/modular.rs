//! Modular S and T matrices, Verlinde fusion, and the S-matrix and fusion
//! level-rank dualities.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::wzw::{central_charge, conformal_weight};
use crate::young::{delta, sigma_delta_checked, BoxCheck, TheoryParams, YoungDiagram};

const FUSION_TOLERANCE: f64 = 1e-6;

/// All integrable highest weights: fewer than N rows, first row at most K.
/// Ordered by box count, then by rows in descending lexicographic order.
pub fn integrable_reps(params: TheoryParams) -> Vec<YoungDiagram> {
    fn extend(prefix: &mut Vec<u32>, max: u32, left: u32, out: &mut Vec<YoungDiagram>) {
        if left == 0 {
            out.push(YoungDiagram::new(prefix.clone()).expect("rows are non-increasing"));
            return;
        }
        for len in (0..=max).rev() {
            prefix.push(len);
            extend(prefix, len, left - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), params.k, params.n - 1, &mut out);
    out.sort_by(|a, b| a.box_count().cmp(&b.box_count()).then_with(|| b.cmp(a)));
    out
}

#[derive(Clone, Debug)]
pub struct SMatrix {
    pub params: TheoryParams,
    pub labels: Vec<YoungDiagram>,
    pub entries: DMatrix<Complex64>,
}

impl SMatrix {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, d: &YoungDiagram) -> Option<usize> {
        self.labels.iter().position(|l| l == d)
    }

    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.entries[(a, b)]
    }

    /// Quantum dimension S_0a / S_00.
    pub fn quantum_dimension(&self, a: usize) -> f64 {
        (self.entries[(0, a)] / self.entries[(0, 0)]).re
    }
}

/// Shifted weight λ + ρ with the trace removed.
fn shifted_weight(d: &YoungDiagram, n: u32) -> Vec<f64> {
    let n = n as usize;
    let raw: Vec<f64> = (0..n).map(|i| f64::from(d.row_len(i + 1)) + (n - 1 - i) as f64).collect();
    let mean = raw.iter().sum::<f64>() / n as f64;
    raw.into_iter().map(|x| x - mean).collect()
}

/// Kac–Peterson S-matrix: determinants of exp(2πi x_i y_j/(N+K)) over
/// shifted weights, normalized to be unitary with S_00 > 0.
pub fn s_matrix(params: TheoryParams) -> SMatrix {
    let labels = integrable_reps(params);
    let n = params.n as usize;
    let height = f64::from(params.height());
    let weights: Vec<Vec<f64>> = labels.iter().map(|d| shifted_weight(d, params.n)).collect();
    let dim = labels.len();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for a in 0..dim {
        for b in a..dim {
            let block = DMatrix::from_fn(n, n, |i, j| {
                Complex64::from_polar(1.0, 2.0 * PI * weights[a][i] * weights[b][j] / height)
            });
            let det = block.determinant();
            m[(a, b)] = det;
            m[(b, a)] = det;
        }
    }
    let row_norm = m.row(0).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let phase = m[(0, 0)] / m[(0, 0)].norm();
    let entries = m.map(|z| z / (phase * row_norm));
    SMatrix { params, labels, entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TConvention {
    /// e^{2πih}, the framing operator.
    Framing,
    /// e^{−2πi(h−c/24)}, the phase obeying (ST)³ = S² with this S.
    Modular,
}

#[derive(Clone, Debug)]
pub struct TMatrix {
    pub params: TheoryParams,
    pub diag: Vec<Complex64>,
    pub convention: TConvention,
}

pub fn t_matrix(params: TheoryParams, convention: TConvention) -> TMatrix {
    let c = central_charge(params);
    let diag = integrable_reps(params)
        .iter()
        .map(|d| {
            let h = conformal_weight(d, params);
            match convention {
                TConvention::Framing => Complex64::from_polar(1.0, 2.0 * PI * h),
                TConvention::Modular => Complex64::from_polar(1.0, -2.0 * PI * (h - c / 24.0)),
            }
        })
        .collect();
    TMatrix { params, diag, convention }
}

/// Fusion multiplicities N_ab^c indexed by label position.
#[derive(Clone, Debug)]
pub struct FusionTensor {
    pub params: TheoryParams,
    pub labels: Vec<YoungDiagram>,
    entries: Vec<u32>,
}

impl FusionTensor {
    pub fn get(&self, a: usize, b: usize, c: usize) -> u32 {
        let n = self.labels.len();
        self.entries[(a * n + b) * n + c]
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Nonzero entries in label order.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, u32)> {
        let n = self.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let m = self.get(a, b, c);
                    if m > 0 {
                        out.push((a, b, c, m));
                    }
                }
            }
        }
        out
    }
}

fn fusion_from_s(s: &SMatrix) -> Result<FusionTensor> {
    let n = s.dim();
    let mut entries = vec![0u32; n * n * n];
    let mut weighted = vec![Complex64::new(0.0, 0.0); n];
    for a in 0..n {
        for b in 0..n {
            for (m, w) in weighted.iter_mut().enumerate() {
                *w = s.get(a, m) * s.get(b, m) / s.get(0, m);
            }
            for c in 0..n {
                let v: Complex64 = (0..n).map(|m| weighted[m] * s.get(c, m).conj()).sum();
                let rounded = v.re.round();
                if (v - Complex64::new(rounded, 0.0)).norm() > FUSION_TOLERANCE || rounded < 0.0 {
                    return Err(Error::Numerical(format!(
                        "Verlinde sum for ({},{},{}) in {} is {v}, not a non-negative integer",
                        s.labels[a], s.labels[b], s.labels[c], s.params
                    )));
                }
                entries[(a * n + b) * n + c] = rounded as u32;
            }
        }
    }
    Ok(FusionTensor { params: s.params, labels: s.labels.clone(), entries })
}

pub fn verlinde_fusion(params: TheoryParams) -> Result<FusionTensor> {
    fusion_from_s(&s_matrix(params))
}

/// Immutable per-theory cache of S, framing phases and fusion.
#[derive(Debug)]
pub struct ModularData {
    pub params: TheoryParams,
    pub s: SMatrix,
    pub weights: Vec<f64>,
    index: HashMap<YoungDiagram, usize>,
    fusion: OnceLock<Result<FusionTensor>>,
}

impl ModularData {
    fn build(params: TheoryParams) -> Self {
        let s = s_matrix(params);
        let weights = s.labels.iter().map(|d| conformal_weight(d, params)).collect();
        let index = s.labels.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        Self { params, s, weights, index, fusion: OnceLock::new() }
    }

    /// Position of a color after reducing it to an SU(N) label.
    pub fn index(&self, d: &YoungDiagram) -> Result<usize> {
        let reduced =
            d.reduce(self.params.n).map_err(|_| Error::NonIntegrableColor(format!("{d} in {}", self.params)))?;
        self.index.get(&reduced).copied().ok_or_else(|| Error::NonIntegrableColor(format!("{d} in {}", self.params)))
    }

    pub fn fusion(&self) -> Result<&FusionTensor> {
        self.fusion.get_or_init(|| fusion_from_s(&self.s)).as_ref().map_err(Clone::clone)
    }

    /// Framing twist e^{2πih_a}.
    pub fn twist(&self, a: usize) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * self.weights[a])
    }
}

/// Shared, lazily built modular data for SU(N)_K.
pub fn modular_data(params: TheoryParams) -> Arc<ModularData> {
    static CACHE: OnceLock<Mutex<HashMap<TheoryParams, Arc<ModularData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&params) {
        return Arc::clone(hit);
    }
    let built = Arc::new(ModularData::build(params));
    let mut guard = cache.lock().expect("cache poisoned");
    Arc::clone(guard.entry(params).or_insert(built))
}

/// Residuals of the defining properties of S and T.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ModularResiduals {
    pub unitarity: f64,
    pub symmetry: f64,
    pub modular_relation: f64,
    /// Distance of S² from a permutation matrix.
    pub charge_conjugation: f64,
}

impl ModularResiduals {
    pub fn max(&self) -> f64 {
        self.unitarity.max(self.symmetry).max(self.modular_relation).max(self.charge_conjugation)
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn modular_residuals(params: TheoryParams) -> ModularResiduals {
    let s = s_matrix(params).entries;
    let t = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(t_matrix(params, TConvention::Modular).diag));
    let dim = s.nrows();
    let id = DMatrix::<Complex64>::identity(dim, dim);
    let s2 = &s * &s;
    let st = &s * &t;
    let st3 = &st * &st * &st;
    let perm = s2.map(|z| Complex64::new(z.re.round(), 0.0));
    let is_perm = perm.row_iter().all(|r| r.iter().filter(|z| z.re == 1.0).count() == 1)
        && perm.iter().all(|z| z.re == 0.0 || z.re == 1.0);
    ModularResiduals {
        unitarity: max_abs(&(&s * s.adjoint() - &id)),
        symmetry: max_abs(&(&s - s.transpose())),
        modular_relation: max_abs(&(st3 - &s2)),
        charge_conjugation: if is_perm { max_abs(&(&s2 - perm)) } else { f64::INFINITY },
    }
}

/// Max over label pairs of |S_ab − √(K/N) e^{−2πi r_a r_b/(NK)} conj(S̃_ãb̃)|.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SDualityReport {
    pub params: TheoryParams,
    pub pairs: usize,
    pub residual: f64,
}

pub fn verify_s_duality(params: TheoryParams) -> Result<SDualityReport> {
    let here = modular_data(params);
    let there = modular_data(params.dual());
    let scale = (f64::from(params.k) / f64::from(params.n)).sqrt();
    let nk = f64::from(params.n * params.k);
    let duals: Vec<usize> = here.s.labels.iter().map(|d| there.index(&d.dual_label(params)?)).collect::<Result<_>>()?;
    let mut residual: f64 = 0.0;
    let dim = here.s.dim();
    for a in 0..dim {
        for b in 0..dim {
            let ra = f64::from(here.s.labels[a].box_count());
            let rb = f64::from(here.s.labels[b].box_count());
            let phase = Complex64::from_polar(scale, -2.0 * PI * ra * rb / nk);
            let rhs = phase * there.s.get(duals[a], duals[b]).conj();
            residual = residual.max((here.s.get(a, b) - rhs).norm());
        }
    }
    Ok(SDualityReport { params, pairs: dim * dim, residual })
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionMismatch {
    pub a: YoungDiagram,
    pub b: YoungDiagram,
    pub c: YoungDiagram,
    pub multiplicity: u32,
    pub dual_c: YoungDiagram,
    pub dual_multiplicity: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionDualityReport {
    pub params: TheoryParams,
    pub checked: usize,
    pub mismatches: Vec<FusionMismatch>,
    pub box_matches: usize,
    pub box_mismatches: usize,
    pub box_undefined: usize,
}

/// Checks N_ab^c = Ñ_{ã b̃}^{σ^Δ(c)} for every triple with N_ab^c > 0.
pub fn verify_fusion_duality(params: TheoryParams) -> Result<FusionDualityReport> {
    let here = modular_data(params);
    let there = modular_data(params.dual());
    let fusion = here.fusion()?;
    let dual_fusion = there.fusion()?;
    let labels = &here.s.labels;
    let duals: Vec<usize> = labels.iter().map(|d| there.index(&d.dual_label(params)?)).collect::<Result<_>>()?;
    let mut report = FusionDualityReport {
        params,
        checked: 0,
        mismatches: Vec::new(),
        box_matches: 0,
        box_mismatches: 0,
        box_undefined: 0,
    };
    for (a, b, c, multiplicity) in fusion.nonzero() {
        let dlt = delta(&labels[a], &labels[b], &labels[c], params.n)?;
        let shifted = sigma_delta_checked(&labels[c], params, dlt)?;
        match shifted.box_check {
            BoxCheck::Match { .. } => report.box_matches += 1,
            BoxCheck::Mismatch { .. } => report.box_mismatches += 1,
            BoxCheck::Undefined => report.box_undefined += 1,
        }
        let dual_c = there.index(&shifted.image)?;
        let dual_multiplicity = dual_fusion.get(duals[a], duals[b], dual_c);
        report.checked += 1;
        if dual_multiplicity != multiplicity {
            report.mismatches.push(FusionMismatch {
                a: labels[a].clone(),
                b: labels[b].clone(),
                c: labels[c].clone(),
                multiplicity,
                dual_c: shifted.image,
                dual_multiplicity,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(n: u32, k: u32) -> TheoryParams {
        TheoryParams::new(n, k).unwrap()
    }

    fn d(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    fn binomial(n: u32, k: u32) -> usize {
        (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
    }

    #[test]
    fn integrable_rep_counts() {
        assert_eq!(integrable_reps(p(2, 2)), vec![d(&[]), d(&[1]), d(&[2])]);
        for k in 1..8 {
            assert_eq!(integrable_reps(p(2, k)).len(), (k + 1) as usize);
        }
        assert_eq!(integrable_reps(p(3, 2)).len(), 6);
        for n in 1..6 {
            for k in 1..6 {
                assert_eq!(integrable_reps(p(n, k)).len(), binomial(n + k - 1, n - 1));
            }
        }
    }

    #[test]
    fn su2_level_one() {
        let s = s_matrix(p(2, 1));
        let r = 0.5f64.sqrt();
        let expected = [[r, r], [r, -r]];
        for a in 0..2 {
            for b in 0..2 {
                assert_abs_diff_eq!(s.get(a, b).re, expected[a][b], epsilon = 1e-12);
                assert_abs_diff_eq!(s.get(a, b).im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn su2_closed_form() {
        for k in 1..=10 {
            let s = s_matrix(p(2, k));
            let h = f64::from(k + 2);
            for a in 0..=k {
                for b in 0..=k {
                    let closed = (2.0 / h).sqrt() * (PI * f64::from((a + 1) * (b + 1)) / h).sin();
                    let z = s.get(a as usize, b as usize);
                    assert_abs_diff_eq!(z.re, closed, epsilon = 1e-12);
                    assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn quantum_dimension_of_fundamental() {
        let s = s_matrix(p(2, 2));
        assert_abs_diff_eq!(s.quantum_dimension(1), 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn modular_properties() {
        for n in 1..=5 {
            for k in 1..=5 {
                let r = modular_residuals(p(n, k));
                assert!(r.max() < 1e-9, "({n},{k}): {r:?}");
                let s = s_matrix(p(n, k));
                assert!(s.get(0, 0).re > 0.0 && s.get(0, 0).im.abs() < 1e-14);
                for a in 0..s.dim() {
                    assert!(s.quantum_dimension(a) >= 1.0 - 1e-9);
                }
            }
        }
    }

    #[test]
    fn framing_phases() {
        let t = t_matrix(p(2, 2), TConvention::Framing);
        assert_abs_diff_eq!(t.diag[0].re, 1.0, epsilon = 1e-15);
        let expected = Complex64::from_polar(1.0, 2.0 * PI * 3.0 / 16.0);
        assert!((t.diag[1] - expected).norm() < 1e-14);
        for z in &t_matrix(p(3, 4), TConvention::Modular).diag {
            assert_abs_diff_eq!(z.norm(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn fusion_examples() {
        let f = verlinde_fusion(p(2, 2)).unwrap();
        assert_eq!(f.get(1, 1, 0), 1);
        assert_eq!(f.get(1, 1, 2), 1);
        assert_eq!(f.get(1, 1, 1), 0);
        let f = verlinde_fusion(p(2, 1)).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.get(1, 1, 0), 1);
        for (n, k) in [(2, 4), (3, 3), (4, 2)] {
            let f = verlinde_fusion(p(n, k)).unwrap();
            for a in 0..f.dim() {
                for b in 0..f.dim() {
                    assert_eq!(f.get(0, a, b), u32::from(a == b));
                }
            }
        }
    }

    #[test]
    fn fusion_is_associative() {
        for (n, k) in [(2, 5), (3, 3), (4, 2), (3, 4)] {
            let f = verlinde_fusion(p(n, k)).unwrap();
            let dim = f.dim();
            for a in 0..dim {
                for b in 0..dim {
                    for c in 0..dim {
                        for dd in 0..dim {
                            let left: u32 = (0..dim).map(|e| f.get(a, b, e) * f.get(e, c, dd)).sum();
                            let right: u32 = (0..dim).map(|e| f.get(b, c, e) * f.get(a, e, dd)).sum();
                            assert_eq!(left, right);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn s_duality_residuals() {
        assert!(verify_s_duality(p(2, 2)).unwrap().residual < 1e-9);
        assert!(verify_s_duality(p(2, 3)).unwrap().residual < 1e-9);
        let trivial = verify_s_duality(p(1, 4)).unwrap();
        assert_eq!(trivial.pairs, 1);
        assert!(trivial.residual < 1e-12);
    }

    #[test]
    fn fusion_duality_small_cases() {
        let report = verify_fusion_duality(p(2, 2)).unwrap();
        assert!(report.mismatches.is_empty());
        assert_eq!(report.box_mismatches, 0);
        // ½ ⊗ ½ → 0 sheds one row and lands on the spin-1 dual label.
        let shifted = sigma_delta_checked(&d(&[]), p(2, 2), 1).unwrap();
        assert_eq!(shifted.image, d(&[2]));
        let there = verlinde_fusion(p(2, 2)).unwrap();
        assert_eq!(there.get(1, 1, 2), 1);
    }
}
