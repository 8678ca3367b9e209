//! Whitehead link and Borromean rings in SU(2)_K, evaluated as six-strand
//! plats: a chain of braiding eigenvalues sandwiched between duality
//! matrices. Also the duality verdicts for links outside the torus family
//! and the structural classification of invariant build plans.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::closed_braid_invariant;
use crate::racah::{braid_eigen, su2_level, Handedness, Orientation, SixPointBases, SixPointFrame};
use crate::torus::{torus_value, verify_link_duality, Framing, InvariantValue, LinkInstance, Topology};
use crate::wzw::SpinLabel;
use crate::young::{TheoryParams, YoungDiagram};

/// A six-strand plat: three caps on top, a braid word on the six strands,
/// and three cups at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlatWord {
    /// Twice-spins carried by the cap pairs (1,2), (3,4), (5,6).
    pub caps: [u32; 3],
    /// Generators (i, e) with 1 ≤ i ≤ 5 and e = ±1.
    pub word: Vec<(usize, i32)>,
    /// Orientation forced at individual crossings instead of the traced one.
    pub overrides: Vec<Option<Orientation>>,
}

/// Relative orientation at each crossing, the component of each top slot,
/// and per-crossing component pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlatOrientation {
    pub component_of_slot: Vec<usize>,
    pub crossings: Vec<(Orientation, usize, usize)>,
}

/// Traces the components of a six-strand plat and the relative direction
/// of the two strands at every crossing.
pub fn orient_plat(word: &[(usize, i32)]) -> PlatOrientation {
    const W: usize = 6;
    let mut position: Vec<usize> = (0..W).collect();
    let mut at_crossing = Vec::with_capacity(word.len());
    for &(i, _) in word {
        at_crossing.push((position[i - 1], position[i]));
        position.swap(i - 1, i);
    }
    let mut end = [0; W];
    for (slot, &t) in position.iter().enumerate() {
        end[t] = slot;
    }
    let mut component = [usize::MAX; W];
    let mut downward = [true; W];
    let mut count = 0;
    for t0 in 0..W {
        if component[t0] != usize::MAX {
            continue;
        }
        let mut t = t0;
        loop {
            component[t] = count;
            downward[t] = true;
            // Cup at the bottom joins the partner slot, which is climbed back up.
            let partner = position[end[t] ^ 1];
            component[partner] = count;
            downward[partner] = false;
            t = partner ^ 1;
            if t == t0 {
                break;
            }
        }
        count += 1;
    }
    let crossings = at_crossing
        .iter()
        .map(|&(a, b)| {
            let o = if downward[a] == downward[b] { Orientation::Parallel } else { Orientation::Antiparallel };
            (o, component[a], component[b])
        })
        .collect();
    PlatOrientation { component_of_slot: component.to_vec(), crossings }
}

fn bases(frame: [u32; 6], k: u32) -> Arc<SixPointBases> {
    type BasesCache = Mutex<HashMap<(u32, [u32; 6]), Arc<SixPointBases>>>;
    static CACHE: OnceLock<BasesCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("cache poisoned").get(&(k, frame)) {
        return Arc::clone(b);
    }
    let params = TheoryParams { n: 2, k };
    let built = Arc::new(SixPointBases::new(SixPointFrame::from_twice(frame, params).expect("integrable frame")));
    cache.lock().expect("cache poisoned").entry((k, frame)).or_insert(built).clone()
}

/// Pairing whose block basis diagonalizes generator i, and the slot of the
/// channel label it acts on.
fn generator_basis(i: usize) -> (bool, usize) {
    match i {
        1 => (true, 0),
        3 => (true, 1),
        5 => (true, 2),
        2 => (false, 1),
        4 => (false, 2),
        _ => unreachable!("generator index checked"),
    }
}

fn basis_vectors(b: &SixPointBases, first: bool) -> &[([u32; 3], Vec<f64>)] {
    if first {
        &b.first
    } else {
        &b.second
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlatValue {
    /// Value in the blackboard framing of the plat.
    pub raw: Complex64,
    /// Value with every component in zero framing.
    pub framed: Complex64,
}

/// Evaluates a plat in SU(2)_K: prefactor Π[cap+1] times the vacuum-to-vacuum
/// amplitude of the braid word, each generator acting by its eigenvalues in
/// the pairing that diagonalizes it.
pub fn evaluate_plat(plat: &PlatWord, k: u32) -> Result<PlatValue> {
    if plat.word.iter().any(|&(i, e)| !(1..=5).contains(&i) || e.abs() != 1) {
        return Err(Error::InvalidArgument("plat generator out of range".into()));
    }
    if plat.caps.iter().any(|&c| c > k) {
        return Err(Error::NonIntegrableColor(format!("plat colors {:?} at level {k}", plat.caps)));
    }
    let level = su2_level(k);
    let orientation = orient_plat(&plat.word);
    let mut colors = [plat.caps[0], plat.caps[0], plat.caps[1], plat.caps[1], plat.caps[2], plat.caps[2]];
    let start = bases(colors, k);
    let Some(vacuum) = start.first_vector([0, 0, 0]) else {
        return Ok(PlatValue { raw: Complex64::new(0.0, 0.0), framed: Complex64::new(0.0, 0.0) });
    };
    let mut state: Vec<Complex64> = vacuum.iter().map(|&x| Complex64::new(x, 0.0)).collect();

    for (step, &(i, e)) in plat.word.iter().enumerate() {
        let (first, slot) = generator_basis(i);
        let here = bases(colors, k);
        let (a, b) = (colors[i - 1], colors[i]);
        let mut next_colors = colors;
        next_colors.swap(i - 1, i);
        let there = bases(next_colors, k);
        let o = plat.overrides.get(step).copied().flatten().unwrap_or(orientation.crossings[step].0);
        let handedness = if e > 0 { Handedness::Over } else { Handedness::Under };
        let src = basis_vectors(&here, first);
        let dst = basis_vectors(&there, first);
        let terms: Vec<Result<Vec<Complex64>>> = src
            .par_iter()
            .map(|(label, vec)| {
                let overlap: Complex64 = vec.iter().zip(&state).map(|(x, s)| s * x).sum();
                let lambda = braid_eigen(&level, label[slot], a, b, o, handedness)?;
                let target = dst
                    .iter()
                    .find(|(l, _)| l == label)
                    .map(|(_, v)| v.as_slice())
                    .ok_or_else(|| Error::Numerical(format!("channel {label:?} missing after exchange")))?;
                let c = overlap * lambda;
                Ok(target.iter().map(|&x| c * x).collect())
            })
            .collect();
        let mut out = vec![Complex64::new(0.0, 0.0); there.tree.len()];
        for term in terms {
            for (o, t) in out.iter_mut().zip(term?) {
                *o += t;
            }
        }
        state = out;
        colors = next_colors;
    }

    let end = bases(colors, k);
    let amplitude: Complex64 = match end.first_vector([0, 0, 0]) {
        Some(v) => v.iter().zip(&state).map(|(x, s)| s * x).sum(),
        None => Complex64::new(0.0, 0.0),
    };
    let prefactor: f64 = plat.caps.iter().map(|&c| level.dim(c)).product();
    let raw = amplitude * prefactor;

    let component_color: HashMap<usize, u32> =
        (0..3).map(|p| (orientation.component_of_slot[2 * p], plat.caps[p])).collect();
    let mut framed = raw;
    for (step, &(_, e)) in plat.word.iter().enumerate() {
        let (traced, ca, cb) = orientation.crossings[step];
        if ca != cb {
            continue;
        }
        let o = plat.overrides.get(step).copied().flatten().unwrap_or(traced);
        let sign = if o == Orientation::Parallel { e } else { -e };
        framed *= level.theta(component_color[&ca]).powi(-sign);
    }
    Ok(PlatValue { raw, framed })
}

/// Plat presentation of the Whitehead link; components carry j1 (outer caps) and j2.
pub fn whitehead_plat(j1: SpinLabel, j2: SpinLabel) -> PlatWord {
    PlatWord {
        caps: [j1.twice_j, j2.twice_j, j1.twice_j],
        word: vec![(2, -1), (4, -1), (3, 1), (2, -1), (4, -1)],
        overrides: Vec::new(),
    }
}

/// Plat presentation of the Borromean rings.
pub fn borromean_plat(j1: SpinLabel, j2: SpinLabel, j3: SpinLabel) -> PlatWord {
    PlatWord {
        caps: [j2.twice_j, j1.twice_j, j3.twice_j],
        word: vec![(2, 1), (4, 1), (3, -1), (4, 1), (1, 1), (3, -1), (2, 1), (4, 1)],
        overrides: Vec::new(),
    }
}

/// Position in the Borromean word of the crossing whose orientation is
/// not fixed by the channel labels alone.
pub const BORROMEAN_AMBIGUOUS_CROSSING: usize = 6;

fn require_spins(params: TheoryParams, spins: &[SpinLabel]) -> Result<()> {
    params.require_su2()?;
    for s in spins {
        s.require_integrable(params.k)?;
    }
    Ok(())
}

pub fn whitehead_invariant(j1: SpinLabel, j2: SpinLabel, params: TheoryParams) -> Result<InvariantValue> {
    require_spins(params, &[j1, j2])?;
    let v = evaluate_plat(&whitehead_plat(j1, j2), params.k)?;
    Ok(InvariantValue { value: v.framed, framing: Framing::Vertical, theory: params })
}

pub fn borromean_invariant(
    j1: SpinLabel,
    j2: SpinLabel,
    j3: SpinLabel,
    params: TheoryParams,
) -> Result<InvariantValue> {
    borromean_invariant_with(j1, j2, j3, params, None)
}

/// Borromean rings with the orientation at the ambiguous crossing forced.
pub fn borromean_invariant_with(
    j1: SpinLabel,
    j2: SpinLabel,
    j3: SpinLabel,
    params: TheoryParams,
    ambiguous: Option<Orientation>,
) -> Result<InvariantValue> {
    require_spins(params, &[j1, j2, j3])?;
    let mut plat = borromean_plat(j1, j2, j3);
    if let Some(o) = ambiguous {
        plat.overrides = vec![None; plat.word.len()];
        plat.overrides[BORROMEAN_AMBIGUOUS_CROSSING] = Some(o);
    }
    let v = evaluate_plat(&plat, params.k)?;
    Ok(InvariantValue { value: v.framed, framing: Framing::Vertical, theory: params })
}

/// Closed-braid words of the same links, used for the dual side when the
/// dual theory has rank above two.
fn closed_braid(topology: &Topology) -> Option<(Vec<(usize, i32)>, usize)> {
    match topology {
        Topology::Whitehead => Some((vec![(1, 1), (1, 1), (2, -1), (1, 1), (2, -1)], 3)),
        Topology::Borromean => Some(([(1, 1), (2, -1)].repeat(3), 3)),
        _ => None,
    }
}

fn spins_of(colors: &[YoungDiagram]) -> Option<Vec<SpinLabel>> {
    colors.iter().map(|c| (c.num_rows() <= 1).then(|| SpinLabel::new(c.first_row()))).collect()
}

/// Invariant of a Whitehead or Borromean instance in any theory where it
/// is computable: SU(2) for every integrable color, or all-fundamental
/// colors in SU(N).
pub fn hyperbolic_value(link: &LinkInstance, params: TheoryParams) -> Result<Complex64> {
    let fundamental = link.colors.iter().all(|c| c.rows() == [1]);
    if params.n == 2 {
        let spins = spins_of(&link.colors)
            .ok_or_else(|| Error::InvalidRepresentation("SU(2) colors must be single rows".into()))?;
        return match link.topology {
            Topology::Whitehead => Ok(whitehead_invariant(spins[0], spins[1], params)?.value),
            Topology::Borromean => Ok(borromean_invariant(spins[0], spins[1], spins[2], params)?.value),
            _ => Err(Error::UnsupportedLink(link.topology.to_string())),
        };
    }
    let (word, strands) =
        closed_braid(&link.topology).ok_or_else(|| Error::UnsupportedLink(link.topology.to_string()))?;
    if !fundamental {
        return Err(Error::UnsupportedColors(format!(
            "{} in SU({})_{} is available for fundamental colors only",
            link.topology, params.n, params.k
        )));
    }
    for c in &link.colors {
        if !c.is_integrable(params) {
            return Err(Error::NonIntegrableColor(format!("{c} in {params}")));
        }
    }
    closed_braid_invariant(&word, strands, params)
}

/// Ingredients an invariant formula is assembled from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Factor {
    QuantumDimension,
    SMatrixEntry,
    FusionCoefficient,
    Twist,
    BraidEigenvalue,
    DualityMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuildPlan {
    pub link: String,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Torus,
    Hyperbolic,
}

pub fn build_plan(topology: &Topology) -> Result<BuildPlan> {
    use Factor::*;
    let factors = match topology {
        Topology::Unknot => vec![QuantumDimension],
        Topology::Hopf => vec![SMatrixEntry],
        Topology::HopfSum => vec![SMatrixEntry, SMatrixEntry, QuantumDimension],
        Topology::SixThreeThree => vec![Twist, FusionCoefficient, SMatrixEntry],
        Topology::Whitehead => {
            let mut f = vec![QuantumDimension];
            f.extend([BraidEigenvalue; 5]);
            f.extend([DualityMatrix; 4]);
            f
        }
        Topology::Borromean => {
            let mut f = vec![QuantumDimension];
            f.extend([BraidEigenvalue; 8]);
            f.extend([DualityMatrix; 6]);
            f
        }
        Topology::Pd(_) => {
            return Err(Error::UnsupportedLink("a raw diagram has no invariant build plan".into()));
        }
    };
    Ok(BuildPlan { link: topology.name().to_string(), factors })
}

/// Torus if no duality matrix enters the plan, hyperbolic otherwise.
pub fn classify_by_structure(plan: &BuildPlan) -> Classification {
    if plan.factors.contains(&Factor::DualityMatrix) {
        Classification::Hyperbolic
    } else {
        Classification::Torus
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    DualityHolds,
    DualityFails,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::DualityHolds => "duality-holds",
            Verdict::DualityFails => "duality-fails",
            Verdict::Indeterminate => "indeterminate",
        }
    }

    /// Structural class the verdict points to.
    pub fn implied_class(self) -> Option<Classification> {
        match self {
            Verdict::DualityHolds => Some(Classification::Torus),
            Verdict::DualityFails => Some(Classification::Hyperbolic),
            Verdict::Indeterminate => None,
        }
    }
}

/// Residual thresholds: below `holds` the duality holds, above `fails` it fails.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerdictBand {
    pub holds: f64,
    pub fails: f64,
}

impl Default for VerdictBand {
    fn default() -> Self {
        Self { holds: 1e-6, fails: 1e-2 }
    }
}

impl VerdictBand {
    pub fn verdict(&self, residual: f64) -> Verdict {
        if residual < self.holds {
            Verdict::DualityHolds
        } else if residual > self.fails {
            Verdict::DualityFails
        } else {
            Verdict::Indeterminate
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityVerdictReport {
    pub link: String,
    pub theory: TheoryParams,
    pub dual_theory: TheoryParams,
    pub colors: Vec<YoungDiagram>,
    pub dual_colors: Vec<YoungDiagram>,
    pub value: Complex64,
    pub dual_value: Complex64,
    pub factor: Complex64,
    pub residual: f64,
    pub verdict: Verdict,
    pub structure: Classification,
    /// Whether the structural class and the numerical verdict point the same way.
    pub structure_agrees: bool,
}

/// Two-sided duality residual V(N,K) − factor · conj(Ṽ(K,N)) for any
/// built-in named link, with a verdict.
pub fn duality_failure_report(
    link: &LinkInstance,
    params: TheoryParams,
    band: VerdictBand,
) -> Result<DualityVerdictReport> {
    let structure = classify_by_structure(&build_plan(&link.topology)?);
    let (value, dual_colors, dual_value, factor, residual) = if link.topology.is_torus_family() {
        let r = verify_link_duality(link, params)?;
        (r.lhs, r.dual_colors, r.dual_value, r.factor, r.residual)
    } else {
        let value = hyperbolic_value(link, params)?;
        let dual_colors = link.dual_colors(params)?;
        let dual_link = LinkInstance::new(link.topology.clone(), dual_colors.clone())?;
        let dual_value = hyperbolic_value(&dual_link, params.dual()).map_err(|e| match e {
            Error::UnsupportedColors(m) | Error::InvalidRepresentation(m) => Error::UnsupportedColors(m),
            other => other,
        })?;
        let factor = link.duality_phase(params);
        let residual = (value - factor * dual_value.conj()).norm();
        (value, dual_colors, dual_value, factor, residual)
    };
    if !residual.is_finite() {
        return Err(Error::Numerical(format!("non-finite duality residual for {}", link.topology)));
    }
    let verdict = band.verdict(residual);
    Ok(DualityVerdictReport {
        link: link.topology.name().to_string(),
        theory: params,
        dual_theory: params.dual(),
        colors: link.colors.clone(),
        dual_colors,
        value,
        dual_value,
        factor,
        residual,
        verdict,
        structure,
        structure_agrees: verdict.implied_class() == Some(structure),
    })
}

/// Invariant of any named link: torus family from modular data, the others
/// from their plats.
pub fn link_value(link: &LinkInstance, params: TheoryParams) -> Result<InvariantValue> {
    if link.topology.is_torus_family() {
        return torus_value(link, params);
    }
    let value = hyperbolic_value(link, params)?;
    Ok(InvariantValue { value, framing: Framing::Vertical, theory: params })
}
