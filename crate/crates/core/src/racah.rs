//! SU(2)_K recoupling data: quantum 6j symbols, four-point F-moves, the
//! six-point duality matrices between the two pairings of a plat, and the
//! braiding eigenvalues that act diagonally on them.
//!
//! Colors are twice-spins throughout.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::wzw::SpinLabel;
use crate::young::TheoryParams;

/// Levels up to this bound get a dense 6j table on first use.
const TABLE_MAX_LEVEL: u32 = 8;

/// Quantum-integer tables and memoized 6j symbols for one level.
#[derive(Debug)]
pub struct Su2Level {
    pub k: u32,
    qint: Vec<f64>,
    qfact: Vec<f64>,
    table: OnceLock<Vec<f64>>,
}

impl Su2Level {
    fn new(k: u32) -> Self {
        let h = f64::from(k + 2);
        let len = 3 * k as usize + 6;
        let qint: Vec<f64> = (0..len).map(|n| (PI * n as f64 / h).sin() / (PI / h).sin()).collect();
        let mut qfact = vec![1.0; len];
        for n in 1..len {
            qfact[n] = qfact[n - 1] * qint[n];
        }
        Self { k, qint, qfact, table: OnceLock::new() }
    }

    pub fn params(&self) -> TheoryParams {
        TheoryParams { n: 2, k: self.k }
    }

    /// [n] at q = e^{2πi/(K+2)}.
    pub fn qint(&self, n: u32) -> f64 {
        self.qint[n as usize]
    }

    /// Quantum dimension [a+1] of twice-spin a.
    pub fn dim(&self, a: u32) -> f64 {
        self.qint(a + 1)
    }

    /// Triangle condition with level truncation.
    pub fn admissible(&self, a: u32, b: u32, c: u32) -> bool {
        (a + b + c).is_multiple_of(2) && c <= a + b && a <= b + c && b <= a + c && a + b + c <= 2 * self.k
    }

    /// Channels c appearing in a ⊗ b.
    pub fn channels(&self, a: u32, b: u32) -> impl Iterator<Item = u32> + '_ {
        (0..=self.k).filter(move |&c| self.admissible(a, b, c))
    }

    fn triangle(&self, a: u32, b: u32, c: u32) -> f64 {
        let f = &self.qfact;
        let s = ((a + b + c) / 2) as usize;
        (f[s - c as usize] * f[s - b as usize] * f[s - a as usize] / f[s + 1]).sqrt()
    }

    fn six_j_direct(&self, a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> f64 {
        if !(self.admissible(a, b, e)
            && self.admissible(c, d, e)
            && self.admissible(a, d, f)
            && self.admissible(c, b, f))
        {
            return 0.0;
        }
        let t = [(a + b + e) / 2, (c + d + e) / 2, (a + d + f) / 2, (c + b + f) / 2];
        let p = [(a + b + c + d) / 2, (a + c + e + f) / 2, (b + d + e + f) / 2];
        let lo = *t.iter().max().unwrap();
        let hi = *p.iter().min().unwrap();
        let fact = |n: u32| self.qfact[n as usize];
        let mut sum = 0.0;
        for z in lo..=hi {
            let denom: f64 =
                t.iter().map(|&ti| fact(z - ti)).product::<f64>() * p.iter().map(|&pi| fact(pi - z)).product::<f64>();
            let sign = if z % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * fact(z + 1) / denom;
        }
        self.triangle(a, b, e) * self.triangle(c, d, e) * self.triangle(a, d, f) * self.triangle(c, b, f) * sum
    }

    fn table_index(&self, idx: [u32; 6]) -> usize {
        let m = self.k as usize + 1;
        idx.iter().fold(0, |acc, &x| acc * m + x as usize)
    }

    /// Racah–Wigner symbol {a b e; c d f} with triads (a,b,e), (c,d,e),
    /// (a,d,f), (c,b,f). Zero outside fusion support. Arguments must not
    /// exceed the level.
    pub fn six_j(&self, a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> f64 {
        if self.k > TABLE_MAX_LEVEL {
            return self.six_j_direct(a, b, e, c, d, f);
        }
        let table = self.table.get_or_init(|| {
            let m = self.k + 1;
            let mut out = vec![0.0; (m as usize).pow(6)];
            for a in 0..m {
                for b in 0..m {
                    for e in 0..m {
                        if !self.admissible(a, b, e) {
                            continue;
                        }
                        for c in 0..m {
                            for d in 0..m {
                                if !self.admissible(c, d, e) {
                                    continue;
                                }
                                for f in 0..m {
                                    let i = self.table_index([a, b, e, c, d, f]);
                                    out[i] = self.six_j_direct(a, b, e, c, d, f);
                                }
                            }
                        }
                    }
                }
            }
            out
        });
        table[self.table_index([a, b, e, c, d, f])]
    }

    /// F-move between (ab)c → d through e and a(bc) → d through f:
    /// F^{abc}_d[e,f] = (−1)^{(a+b+c+d)/2} √([e+1][f+1]) {a b e; c d f}.
    pub fn f_move(&self, a: u32, b: u32, c: u32, d: u32, e: u32, f: u32) -> f64 {
        let v = self.six_j(a, b, e, c, d, f);
        if v == 0.0 {
            return 0.0;
        }
        let sign = if ((a + b + c + d) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * (self.dim(e) * self.dim(f)).sqrt() * v
    }

    /// Braiding eigenvalue of a ⊗ b in channel c for parallel strands:
    /// (−1)^{(a+b−c)/2} q^{(c(c+2) − a(a+2) − b(b+2))/8}.
    pub fn r_eigen(&self, a: u32, b: u32, c: u32) -> Complex64 {
        let sign = if ((a + b - c) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        let casimirs = f64::from(c * (c + 2)) - f64::from(a * (a + 2)) - f64::from(b * (b + 2));
        let angle = 2.0 * PI * casimirs / (8.0 * f64::from(self.k + 2));
        Complex64::from_polar(sign, angle)
    }

    /// Framing twist θ_a = e^{2πi h_a}.
    pub fn theta(&self, a: u32) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * f64::from(a * (a + 2)) / (4.0 * f64::from(self.k + 2)))
    }
}

/// Shared tables for SU(2)_k.
pub fn su2_level(k: u32) -> Arc<Su2Level> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Su2Level>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cache poisoned");
    Arc::clone(guard.entry(k).or_insert_with(|| Arc::new(Su2Level::new(k))))
}

fn level_for(params: TheoryParams, spins: &[SpinLabel]) -> Result<Arc<Su2Level>> {
    params.require_su2()?;
    for s in spins {
        s.require_integrable(params.k)?;
    }
    Ok(su2_level(params.k))
}

/// {j1 j2 j12; j3 j4 j23}.
pub fn six_j(
    j1: SpinLabel,
    j2: SpinLabel,
    j3: SpinLabel,
    j4: SpinLabel,
    j12: SpinLabel,
    j23: SpinLabel,
    params: TheoryParams,
) -> Result<f64> {
    let level = level_for(params, &[j1, j2, j3, j4, j12, j23])?;
    Ok(level.six_j(j1.twice_j, j2.twice_j, j12.twice_j, j3.twice_j, j4.twice_j, j23.twice_j))
}

fn serialize_matrix<S: Serializer>(m: &DMatrix<f64>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
    rows.serialize(ser)
}

/// Four-point recoupling matrix F^{abc}_d with rows e ∈ a⊗b and columns f ∈ b⊗c.
#[derive(Clone, Debug, Serialize)]
pub struct FMatrix {
    pub external: [SpinLabel; 4],
    pub row_labels: Vec<SpinLabel>,
    pub col_labels: Vec<SpinLabel>,
    #[serde(serialize_with = "serialize_matrix")]
    pub entries: DMatrix<f64>,
}

pub fn f_matrix(a: SpinLabel, b: SpinLabel, c: SpinLabel, d: SpinLabel, params: TheoryParams) -> Result<FMatrix> {
    let level = level_for(params, &[a, b, c, d])?;
    let (a, b, c, d) = (a.twice_j, b.twice_j, c.twice_j, d.twice_j);
    let rows: Vec<u32> = level.channels(a, b).filter(|&e| level.admissible(e, c, d)).collect();
    let cols: Vec<u32> = level.channels(b, c).filter(|&f| level.admissible(a, f, d)).collect();
    let entries = DMatrix::from_fn(rows.len(), cols.len(), |i, j| level.f_move(a, b, c, d, rows[i], cols[j]));
    Ok(FMatrix {
        external: [a, b, c, d].map(SpinLabel::new),
        row_labels: rows.into_iter().map(SpinLabel::new).collect(),
        col_labels: cols.into_iter().map(SpinLabel::new).collect(),
        entries,
    })
}

/// The six external spins of a plat slice, read as three adjacent pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SixPointFrame {
    pub spins: [SpinLabel; 6],
    pub params: TheoryParams,
}

impl SixPointFrame {
    pub fn new(spins: [SpinLabel; 6], params: TheoryParams) -> Result<Self> {
        level_for(params, &spins)?;
        Ok(Self { spins, params })
    }

    pub fn from_twice(spins: [u32; 6], params: TheoryParams) -> Result<Self> {
        Self::new(spins.map(SpinLabel::new), params)
    }

    /// Rows of the frame as printed: (c0 c1 / c2 c3 / c4 c5).
    pub fn pairs(&self) -> [[SpinLabel; 2]; 3] {
        let s = self.spins;
        [[s[0], s[1]], [s[2], s[3]], [s[4], s[5]]]
    }

    fn colors(&self) -> [u32; 6] {
        self.spins.map(|s| s.twice_j)
    }
}

/// Channel labels of a six-point block. In the first pairing (12)(34)(56)
/// they are the pair channels x0, x1 and the channel x2 of (12)(34); in the
/// second pairing (23)(45) they are y0 for (23)(45) and the pair channels y1, y2.
pub type ChannelTriple = [u32; 3];

/// Overlaps between the two pairings of a six-point frame, both expanded
/// in the left-associated tree basis.
#[derive(Clone, Debug)]
pub struct SixPointBases {
    pub frame: SixPointFrame,
    pub tree: Vec<ChannelTriple>,
    pub first: Vec<(ChannelTriple, Vec<f64>)>,
    pub second: Vec<(ChannelTriple, Vec<f64>)>,
}

impl SixPointBases {
    pub fn new(frame: SixPointFrame) -> Self {
        let level = su2_level(frame.params.k);
        let c = frame.colors();
        let k = level.k;
        let adm = |a, b, c| level.admissible(a, b, c);
        let mut tree = Vec::new();
        for e1 in level.channels(c[0], c[1]) {
            for e2 in level.channels(e1, c[2]) {
                for e3 in level.channels(e2, c[3]) {
                    if adm(e3, c[4], c[5]) {
                        tree.push([e1, e2, e3]);
                    }
                }
            }
        }
        let index: HashMap<ChannelTriple, usize> = tree.iter().enumerate().map(|(i, t)| (*t, i)).collect();

        let mut first = Vec::new();
        for x0 in level.channels(c[0], c[1]) {
            for x1 in level.channels(c[2], c[3]) {
                for x2 in level.channels(x0, x1) {
                    if !adm(x2, c[4], c[5]) {
                        continue;
                    }
                    let mut v = vec![0.0; tree.len()];
                    for e2 in 0..=k {
                        if let Some(&i) = index.get(&[x0, e2, x2]) {
                            v[i] += level.f_move(x0, c[2], c[3], x2, e2, x1);
                        }
                    }
                    first.push(([x0, x1, x2], v));
                }
            }
        }

        let mut second = Vec::new();
        for y1 in level.channels(c[1], c[2]) {
            for y2 in level.channels(c[3], c[4]) {
                for y0 in level.channels(y1, y2) {
                    if !adm(c[0], y0, c[5]) {
                        continue;
                    }
                    let mut v = vec![0.0; tree.len()];
                    for g in level.channels(y1, c[3]).filter(|&g| adm(g, c[4], y0)) {
                        let f1 = level.f_move(y1, c[3], c[4], y0, g, y2);
                        for h in level.channels(c[0], g).filter(|&h| adm(h, c[4], c[5])) {
                            let f2 = level.f_move(c[0], g, c[4], c[5], h, y0);
                            for i in level.channels(c[0], y1).filter(|&i| adm(i, c[3], h)) {
                                let f3 = level.f_move(c[0], y1, c[3], h, i, g);
                                for e1 in level.channels(c[0], c[1]).filter(|&e| adm(e, c[2], i)) {
                                    if let Some(&t) = index.get(&[e1, i, h]) {
                                        let f4 = level.f_move(c[0], c[1], c[2], i, e1, y1);
                                        v[t] += f1 * f2 * f3 * f4;
                                    }
                                }
                            }
                        }
                    }
                    second.push(([y0, y1, y2], v));
                }
            }
        }
        Self { frame, tree, first, second }
    }

    pub fn first_vector(&self, label: ChannelTriple) -> Option<&[f64]> {
        self.first.iter().find(|(l, _)| *l == label).map(|(_, v)| v.as_slice())
    }

    pub fn second_vector(&self, label: ChannelTriple) -> Option<&[f64]> {
        self.second.iter().find(|(l, _)| *l == label).map(|(_, v)| v.as_slice())
    }
}

/// a_{(x)(y)} = ⟨first(x) | second(y)⟩ on one frame.
#[derive(Clone, Debug, Serialize)]
pub struct DualityMatrix {
    pub frame: SixPointFrame,
    pub row_labels: Vec<ChannelTriple>,
    pub col_labels: Vec<ChannelTriple>,
    #[serde(serialize_with = "serialize_matrix")]
    pub entries: DMatrix<f64>,
}

impl DualityMatrix {
    pub fn from_bases(bases: &SixPointBases) -> Self {
        let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
        let entries =
            DMatrix::from_fn(bases.first.len(), bases.second.len(), |i, j| dot(&bases.first[i].1, &bases.second[j].1));
        Self {
            frame: bases.frame,
            row_labels: bases.first.iter().map(|(l, _)| *l).collect(),
            col_labels: bases.second.iter().map(|(l, _)| *l).collect(),
            entries,
        }
    }

    pub fn row(&self, label: ChannelTriple) -> Option<usize> {
        self.row_labels.iter().position(|l| *l == label)
    }

    pub fn col(&self, label: ChannelTriple) -> Option<usize> {
        self.col_labels.iter().position(|l| *l == label)
    }

    /// max |A Aᵀ − I| and max |Aᵀ A − I|.
    pub fn orthogonality_residual(&self) -> f64 {
        if self.entries.nrows() != self.entries.ncols() {
            return f64::INFINITY;
        }
        let n = self.entries.nrows();
        let id = DMatrix::<f64>::identity(n, n);
        let a = (&self.entries * self.entries.transpose() - &id).abs().max();
        let b = (self.entries.transpose() * &self.entries - &id).abs().max();
        a.max(b)
    }
}

pub fn duality_matrix(frame: SixPointFrame) -> DualityMatrix {
    DualityMatrix::from_bases(&SixPointBases::new(frame))
}

/// Relative orientation of the two strands at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Parallel,
    Antiparallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Handedness {
    Over,
    Under,
}

/// Eigenvalue picked up by a block in channel m when strands j1, j2 are
/// exchanged. Antiparallel strands carry an extra (−1)^{2 min(j1, j2)}
/// and the under-crossing is the complex conjugate.
pub fn braid_phase(
    m: SpinLabel,
    j1: SpinLabel,
    j2: SpinLabel,
    orientation: Orientation,
    handedness: Handedness,
    params: TheoryParams,
) -> Result<Complex64> {
    let level = level_for(params, &[m, j1, j2])?;
    braid_eigen(&level, m.twice_j, j1.twice_j, j2.twice_j, orientation, handedness)
}

pub(crate) fn braid_eigen(
    level: &Su2Level,
    m: u32,
    a: u32,
    b: u32,
    orientation: Orientation,
    handedness: Handedness,
) -> Result<Complex64> {
    if !level.admissible(a, b, m) {
        return Err(Error::InvalidArgument(format!("channel {m} does not occur in {a} ⊗ {b} at level {}", level.k)));
    }
    let mut lambda = level.r_eigen(a, b, m);
    if orientation == Orientation::Antiparallel && a.min(b) % 2 == 1 {
        lambda = -lambda;
    }
    Ok(match handedness {
        Handedness::Over => lambda,
        Handedness::Under => lambda.conj(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(k: u32) -> TheoryParams {
        TheoryParams::new(2, k).unwrap()
    }

    fn s(x: u32) -> SpinLabel {
        SpinLabel::new(x)
    }

    /// Classical Racah formula with ordinary factorials, kept separate from
    /// the q-deformed code path.
    fn classical_six_j(a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> f64 {
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        let tri = |x: u32, y: u32, z: u32| {
            let sum = (x + y + z) / 2;
            (fact(sum - z) * fact(sum - y) * fact(sum - x) / fact(sum + 1)).sqrt()
        };
        let ok = |x: u32, y: u32, z: u32| (x + y + z).is_multiple_of(2) && z <= x + y && x <= y + z && y <= x + z;
        if !(ok(a, b, e) && ok(c, d, e) && ok(a, d, f) && ok(c, b, f)) {
            return 0.0;
        }
        let t = [(a + b + e) / 2, (c + d + e) / 2, (a + d + f) / 2, (c + b + f) / 2];
        let q = [(a + b + c + d) / 2, (a + c + e + f) / 2, (b + d + e + f) / 2];
        let mut sum = 0.0;
        for z in *t.iter().max().unwrap()..=*q.iter().min().unwrap() {
            let den: f64 =
                t.iter().map(|&x| fact(z - x)).product::<f64>() * q.iter().map(|&x| fact(x - z)).product::<f64>();
            sum += if z % 2 == 0 { 1.0 } else { -1.0 } * fact(z + 1) / den;
        }
        tri(a, b, e) * tri(c, d, e) * tri(a, d, f) * tri(c, b, f) * sum
    }

    #[test]
    fn trivial_spin_collapse() {
        // {0 b b; c f f} reduces to ±1/√([b+1][f+1]).
        let level = su2_level(5);
        for b in 0..=5 {
            for c in 0..=5 {
                for f in level.channels(b, c).collect::<Vec<_>>() {
                    let v = level.six_j(0, b, b, c, f, f);
                    let expected =
                        (if (b + c + f) / 2 % 2 == 0 { 1.0 } else { -1.0 }) / (level.dim(b) * level.dim(f)).sqrt();
                    assert_abs_diff_eq!(v, expected, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn classical_limit() {
        let level = su2_level(200);
        for t in 0..2u32.pow(6) {
            let x: Vec<u32> = (0..6).map(|i| (t >> i) & 1).collect();
            let q = level.six_j(x[0], x[1], x[2], x[3], x[4], x[5]);
            let c = classical_six_j(x[0], x[1], x[2], x[3], x[4], x[5]);
            assert!((q - c).abs() < 1e-4);
        }
        let level = su2_level(2000);
        for t in 0..5u32.pow(6) {
            let x: Vec<u32> = (0..6).map(|i| (t / 5u32.pow(i)) % 5).collect();
            let q = level.six_j(x[0], x[1], x[2], x[3], x[4], x[5]);
            let c = classical_six_j(x[0], x[1], x[2], x[3], x[4], x[5]);
            assert!((q - c).abs() < 1e-4, "{x:?}: {q} vs {c}");
        }
    }

    #[test]
    fn orthogonality_of_six_j() {
        let level = su2_level(4);
        let k = 4;
        for a in 0..=k {
            for b in 0..=k {
                for c in 0..=k {
                    for d in 0..=k {
                        for e in 0..=k {
                            for e2 in 0..=k {
                                let sum: f64 = (0..=k)
                                    .map(|f| {
                                        level.dim(e)
                                            * level.dim(f)
                                            * level.six_j(a, b, e, c, d, f)
                                            * level.six_j(a, b, e2, c, d, f)
                                    })
                                    .sum();
                                let valid = level.admissible(a, b, e) && level.admissible(c, d, e);
                                let expected = if e == e2 && valid { 1.0 } else { 0.0 };
                                let nonempty = (0..=k).any(|f| level.admissible(a, d, f) && level.admissible(c, b, f));
                                if nonempty {
                                    assert_abs_diff_eq!(sum, expected, epsilon = 1e-9);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tetrahedral_symmetry() {
        for k in 1..=6 {
            let level = su2_level(k);
            for t in 0..(k + 1).pow(6) {
                let x: Vec<u32> = (0..6).map(|i| (t / (k + 1).pow(i)) % (k + 1)).collect();
                let (a, b, e, c, d, f) = (x[0], x[1], x[2], x[3], x[4], x[5]);
                let v = level.six_j(a, b, e, c, d, f);
                // Column permutations and exchanging upper and lower entries in two columns.
                for w in [
                    level.six_j(b, a, e, d, c, f),
                    level.six_j(a, e, b, c, f, d),
                    level.six_j(c, d, e, a, b, f),
                    level.six_j(a, d, f, c, b, e),
                ] {
                    assert_abs_diff_eq!(v, w, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn truncation_zeroes() {
        let level = su2_level(2);
        // 1 ⊗ 1 → 2 allowed, but (2,2,2) exceeds level 2.
        assert_eq!(level.six_j(2, 2, 2, 2, 2, 2), 0.0);
        assert!(level.six_j(1, 1, 2, 1, 1, 0).abs() > 0.0);
    }

    #[test]
    fn four_point_matrix() {
        for k in 2..=8 {
            let m = f_matrix(s(1), s(1), s(1), s(1), p(k)).unwrap();
            assert_eq!(m.row_labels, vec![s(0), s(2)]);
            assert_eq!(m.entries.shape(), (2, 2));
            let id = DMatrix::<f64>::identity(2, 2);
            assert!((&m.entries * m.entries.transpose() - id).abs().max() < 1e-12);
            let d = su2_level(k).dim(1);
            assert_abs_diff_eq!(m.entries[(0, 0)].abs(), 1.0 / d, epsilon = 1e-12);
        }
    }

    #[test]
    fn six_point_trivial_frame() {
        let m = duality_matrix(SixPointFrame::from_twice([0; 6], p(3)).unwrap());
        assert_eq!(m.entries.shape(), (1, 1));
        assert_abs_diff_eq!(m.entries[(0, 0)], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn six_point_orthogonality() {
        for k in 1..=6u32 {
            for t in 0..(k + 1).pow(6) {
                let spins: Vec<u32> = (0..6).map(|i| (t / (k + 1).pow(i)) % (k + 1)).collect();
                if (t * 7919) % 5 != 0 && k > 3 {
                    continue;
                }
                let frame = SixPointFrame::from_twice(spins.clone().try_into().unwrap(), p(k)).unwrap();
                let m = duality_matrix(frame);
                if m.row_labels.is_empty() {
                    assert!(m.col_labels.is_empty());
                    continue;
                }
                assert!(m.orthogonality_residual() < 1e-9, "k={k} {spins:?}");
            }
        }
    }

    #[test]
    fn fundamental_six_point_shape() {
        let m = duality_matrix(SixPointFrame::from_twice([1; 6], p(4)).unwrap());
        assert_eq!(m.row_labels.len(), 5);
        assert!(m.orthogonality_residual() < 1e-12);
    }

    #[test]
    fn braid_phases() {
        for k in 1..=6 {
            let params = p(k);
            let one = braid_phase(s(0), s(0), s(0), Orientation::Parallel, Handedness::Over, params).unwrap();
            assert!((one - 1.0).norm() < 1e-15);
            let level = su2_level(k);
            for a in 0..=k {
                for b in 0..=k {
                    for m in level.channels(a, b) {
                        for o in [Orientation::Parallel, Orientation::Antiparallel] {
                            let over = braid_phase(s(m), s(a), s(b), o, Handedness::Over, params).unwrap();
                            let under = braid_phase(s(m), s(a), s(b), o, Handedness::Under, params).unwrap();
                            assert_abs_diff_eq!(over.norm(), 1.0, epsilon = 1e-14);
                            assert!((over * under - 1.0).norm() < 1e-14);
                        }
                    }
                }
            }
        }
        let err = braid_phase(s(2), s(1), s(0), Orientation::Parallel, Handedness::Over, p(3)).unwrap_err();
        assert_eq!(err.code(), "invalid-argument");
    }

    #[test]
    fn twist_matches_ribbon_relation() {
        // Σ_c [c+1] R^{ab}_c² relates to twists: θ_c / (θ_a θ_b) = R^{ab}_c² up to parity.
        let level = su2_level(5);
        for a in 0..=5 {
            for b in 0..=5 {
                for c in level.channels(a, b) {
                    let r2 = level.r_eigen(a, b, c).powi(2);
                    let ratio = level.theta(c) / (level.theta(a) * level.theta(b));
                    assert!((r2 - ratio).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_higher_rank() {
        let err = six_j(s(1), s(1), s(1), s(1), s(0), s(0), TheoryParams::new(3, 2).unwrap()).unwrap_err();
        assert_eq!(err.code(), "unsupported-theory");
        let err = six_j(s(5), s(1), s(1), s(1), s(0), s(0), p(2)).unwrap_err();
        assert_eq!(err.code(), "non-integrable-color");
    }
}
