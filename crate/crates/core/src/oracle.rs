//! Brute-force Kauffman bracket over all smoothings of a planar diagram.
//!
//! Diagrams use the planar-diagram code: each crossing lists its four arc
//! labels counterclockwise, starting at the incoming under-strand.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::young::TheoryParams;

/// Largest diagram the state sum accepts.
pub const MAX_CROSSINGS: usize = 16;

#[derive(Clone, Debug, Deserialize)]
struct RawDiagram {
    crossings: Vec<[u32; 4]>,
    components: usize,
}

/// A link diagram in planar-diagram code with its derived orientation data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct PdDiagram {
    pub crossings: Vec<[u32; 4]>,
    pub components: usize,
    pub writhe: i64,
    #[serde(skip)]
    signs: Vec<i64>,
    /// Component index of the under and over strand at each crossing.
    #[serde(skip)]
    strands: Vec<(usize, usize)>,
    /// Components that pass through at least one crossing.
    #[serde(skip)]
    traced: usize,
}

impl TryFrom<RawDiagram> for PdDiagram {
    type Error = Error;

    fn try_from(raw: RawDiagram) -> Result<Self> {
        Self::new(raw.crossings, raw.components)
    }
}

impl PdDiagram {
    /// Validates the code and traces orientations. `components` counts
    /// every component, including crossingless circles.
    pub fn new(crossings: Vec<[u32; 4]>, components: usize) -> Result<Self> {
        if crossings.len() > MAX_CROSSINGS {
            return Err(Error::OversizeDiagram { crossings: crossings.len(), limit: MAX_CROSSINGS });
        }
        let mut ends: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (slot, &arc) in x.iter().enumerate() {
                ends.entry(arc).or_default().push((c, slot));
            }
        }
        if let Some((arc, e)) = ends.iter().find(|(_, e)| e.len() != 2) {
            return Err(Error::InvalidDiagram(format!("arc {arc} appears {} times", e.len())));
        }
        let (signs, strands, traced) = orient(&crossings, &ends);
        if traced > components {
            return Err(Error::InvalidDiagram(format!("diagram traces {traced} components but declares {components}")));
        }
        if crossings.is_empty() && components == 0 {
            return Err(Error::InvalidDiagram("empty diagram".into()));
        }
        let writhe = signs.iter().sum();
        Ok(Self { crossings, components, writhe, signs, strands, traced })
    }

    pub fn unknot() -> Self {
        Self::new(Vec::new(), 1).expect("valid")
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Sign of each crossing, +1 when the over-strand runs from the fourth
    /// slot to the second.
    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    /// Entry (i, j) sums the signs of crossings between components i and j;
    /// the diagonal holds self-writhes.
    pub fn crossing_matrix(&self) -> Vec<Vec<i64>> {
        let mut w = vec![vec![0; self.components]; self.components];
        for (&s, &(u, o)) in self.signs.iter().zip(&self.strands) {
            if u == o {
                w[u][u] += s;
            } else {
                w[u][o] += s;
                w[o][u] += s;
            }
        }
        w
    }

    pub fn self_writhe(&self) -> i64 {
        self.crossing_matrix().iter().enumerate().map(|(i, r)| r[i]).sum()
    }

    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        self.crossing_matrix()[i][j] / 2
    }

    /// All crossings switched.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[a, b, c, d], &s)| if s > 0 { [d, a, b, c] } else { [b, c, d, a] })
            .collect();
        Self::new(crossings, self.components).expect("mirror of a valid diagram")
    }

    /// Disjoint union with arc labels of `other` shifted past ours.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let offset = self.crossings.iter().flatten().copied().max().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| x.map(|a| a + offset)));
        Self::new(crossings, self.components + other.components)
    }

    fn free_circles(&self) -> usize {
        self.components - self.traced
    }
}

/// Follows each component through its crossings. Returns crossing signs,
/// the (under, over) component at each crossing, and the number of
/// components that touch a crossing.
#[allow(clippy::type_complexity)]
fn orient(crossings: &[[u32; 4]], ends: &HashMap<u32, Vec<(usize, usize)>>) -> (Vec<i64>, Vec<(usize, usize)>, usize) {
    let n = crossings.len();
    // leaves[c][slot]: whether the strand leaves crossing c through slot.
    let mut leaves: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
    let mut comp: Vec<[Option<usize>; 4]> = vec![[None; 4]; n];
    let other_end = |arc: u32, here: (usize, usize)| -> (usize, usize) {
        let e = &ends[&arc];
        if e[0] == here {
            e[1]
        } else {
            e[0]
        }
    };
    let mut count = 0;
    // Start from under-strands, whose direction is fixed by the code, then
    // from any remaining slot using the arc-numbering convention.
    let starts: Vec<(usize, usize, bool)> = (0..n)
        .map(|c| (c, 2, true))
        .chain((0..n).map(|c| {
            let [_, j, _, l] = crossings[c];
            let forward = j == l + 1 || l > j + 1;
            (c, 1, forward)
        }))
        .collect();
    for (c0, s0, out0) in starts {
        if leaves[c0][s0].is_some() {
            continue;
        }
        let id = count;
        count += 1;
        let (mut c, mut s, mut out) = (c0, s0, out0);
        loop {
            if leaves[c][s].is_some() {
                break;
            }
            leaves[c][s] = Some(out);
            leaves[c][(s + 2) % 4] = Some(!out);
            comp[c][s] = Some(id);
            comp[c][(s + 2) % 4] = Some(id);
            // Leave through the outgoing slot and arrive at the far end of that arc.
            let exit = if out { s } else { (s + 2) % 4 };
            let (nc, ns) = other_end(crossings[c][exit], (c, exit));
            // The arc enters (nc, ns), so the strand leaves through the opposite slot.
            c = nc;
            s = (ns + 2) % 4;
            out = true;
        }
    }
    let mut signs = Vec::with_capacity(n);
    let mut strands = Vec::with_capacity(n);
    for c in 0..n {
        let over_forward = leaves[c][1] == Some(true);
        signs.push(if over_forward { 1 } else { -1 });
        strands.push((comp[c][0].expect("traced"), comp[c][1].expect("traced")));
    }
    (signs, strands, count)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Number of states with a given count of A-smoothings and loops.
type StateHistogram = BTreeMap<(usize, usize), u64>;

fn state_histogram(d: &PdDiagram) -> StateHistogram {
    let mut labels: Vec<u32> = d.crossings.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let index: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let dense: Vec<[usize; 4]> = d.crossings.iter().map(|x| x.map(|a| index[&a])).collect();
    let n = dense.len();
    let arcs = labels.len();
    let shard_bits = n.min(6);
    let per_shard = 1u64 << (n - shard_bits);
    let shards: Vec<StateHistogram> = (0..1u64 << shard_bits)
        .into_par_iter()
        .map(|shard| {
            let mut hist = StateHistogram::new();
            for low in 0..per_shard {
                let state = (shard << (n - shard_bits)) | low;
                let mut uf = UnionFind::new(arcs);
                let mut a_count = 0;
                for (i, &[a, b, c, e]) in dense.iter().enumerate() {
                    if state >> i & 1 == 1 {
                        uf.union(b, c);
                        uf.union(e, a);
                    } else {
                        uf.union(a, b);
                        uf.union(c, e);
                        a_count += 1;
                    }
                }
                let loops = (0..arcs).filter(|&x| uf.find(x) == x).count();
                *hist.entry((a_count, loops)).or_default() += 1;
            }
            hist
        })
        .collect();
    let mut total = StateHistogram::new();
    for hist in shards {
        for (key, count) in hist {
            *total.entry(key).or_default() += count;
        }
    }
    total
}

/// ⟨L⟩ = Σ_states A^{#A − #B} δ^{loops − 1}, δ = −A² − A⁻², with ⟨unknot⟩ = 1.
pub fn kauffman_bracket(d: &PdDiagram, a: Complex64) -> Result<Complex64> {
    if d.crossings.len() > MAX_CROSSINGS {
        return Err(Error::OversizeDiagram { crossings: d.crossings.len(), limit: MAX_CROSSINGS });
    }
    let delta = -a * a - a.powi(-2);
    let n = d.crossings.len() as i32;
    let free = d.free_circles() as i32;
    if n == 0 {
        return Ok(delta.powi(free - 1));
    }
    let hist = state_histogram(d);
    let mut sum = Complex64::new(0.0, 0.0);
    for (&(a_count, loops), &count) in &hist {
        let loops = loops as i32 + free;
        sum += count as f64 * a.powi(2 * a_count as i32 - n) * delta.powi(loops - 1);
    }
    Ok(sum)
}

/// Bracket variable at the SU(2) point of the given height: A = e^{iπ/(2(N+K))}, so A⁴ = q.
pub fn bracket_variable(params: TheoryParams) -> Complex64 {
    Complex64::from_polar(1.0, PI / (2.0 * f64::from(params.height())))
}

/// Writhe-normalized bracket (−A³)^{−w}⟨L⟩ at A⁴ = q.
pub fn jones_at_root(d: &PdDiagram, params: TheoryParams) -> Result<Complex64> {
    let a = bracket_variable(params);
    Ok((-a.powi(3)).powi(-(d.writhe as i32)) * kauffman_bracket(d, a)?)
}

/// Spin-½ Chern–Simons invariant in the zero framing of every component,
/// normalized so the unknot gives [2]:
/// (−1)^{c−1} [2] (−A³)^{−w_self} ⟨L⟩.
pub fn fundamental_invariant(d: &PdDiagram, params: TheoryParams) -> Result<Complex64> {
    let a = bracket_variable(params);
    let qdim = -a * a - a.powi(-2);
    let sign = if d.components % 2 == 1 { 1.0 } else { -1.0 };
    let framing = (-a.powi(3)).powi(-(d.self_writhe() as i32));
    Ok(-sign * qdim * framing * kauffman_bracket(d, a)?)
}

/// Closure of a braid on `strands` strands; (i, e) is σ_i^e with i 1-based.
/// Strands run downward and σ_i with e > 0 passes strand i under strand i+1.
pub fn braid_closure(word: &[(usize, i32)], strands: usize) -> Result<PdDiagram> {
    if word.iter().any(|&(i, e)| i == 0 || i >= strands || e.abs() != 1) {
        return Err(Error::InvalidArgument("braid generator out of range".into()));
    }
    let mut next = 0u32;
    let mut fresh = || {
        next += 1;
        next
    };
    let top: Vec<u32> = (0..strands).map(|_| fresh()).collect();
    let mut cur = top.clone();
    let mut crossings = Vec::with_capacity(word.len());
    for &(i, e) in word {
        let (in_left, in_right) = (cur[i - 1], cur[i]);
        let (out_left, out_right) = (fresh(), fresh());
        crossings.push(if e > 0 {
            [in_left, out_left, out_right, in_right]
        } else {
            [in_right, in_left, out_left, out_right]
        });
        cur[i - 1] = out_left;
        cur[i] = out_right;
    }
    let glue: HashMap<u32, u32> = cur.iter().zip(&top).map(|(&b, &t)| (b, t)).collect();
    let mut crossings: Vec<[u32; 4]> = crossings.into_iter().map(|x| x.map(|a| *glue.get(&a).unwrap_or(&a))).collect();
    let mut perm: Vec<usize> = (0..strands).collect();
    for &(i, _) in word {
        perm.swap(i - 1, i);
    }
    relabel(&mut crossings);
    let traced = {
        let mut comps = 0;
        let mut seen = vec![false; strands];
        for s in 0..strands {
            if !seen[s] {
                comps += 1;
                let mut t = s;
                while !seen[t] {
                    seen[t] = true;
                    t = perm[t];
                }
            }
        }
        comps
    };
    PdDiagram::new(crossings, traced)
}

fn relabel(crossings: &mut [[u32; 4]]) {
    let mut map: HashMap<u32, u32> = HashMap::new();
    for x in crossings.iter_mut() {
        for a in x.iter_mut() {
            let len = map.len() as u32;
            *a = *map.entry(*a).or_insert(len + 1);
        }
    }
}

/// Braid generators as (index, exponent ±1).
pub type BraidWord = Vec<(usize, i32)>;

/// Braid words for the built-in diagrams, with strand counts.
pub fn builtin_braids() -> Vec<(&'static str, BraidWord, usize)> {
    vec![
        ("unknot", vec![], 1),
        ("hopf", vec![(1, 1), (1, 1)], 2),
        ("trefoil", vec![(1, 1); 3], 2),
        ("figure8", vec![(1, 1), (2, -1), (1, 1), (2, -1)], 3),
        ("whitehead", vec![(1, 1), (1, 1), (2, -1), (1, 1), (2, -1)], 3),
        ("borromean", [(1, 1), (2, -1)].repeat(3), 3),
        ("633", [(1, 1), (2, 1)].repeat(3), 3),
    ]
}

/// Named PD codes for unknot, Hopf, trefoil, figure-eight, Whitehead,
/// Borromean rings and 6³₃.
pub fn builtin_diagrams() -> BTreeMap<&'static str, PdDiagram> {
    builtin_braids()
        .into_iter()
        .map(|(name, word, strands)| (name, braid_closure(&word, strands).expect("builtin braid")))
        .collect()
}

pub fn builtin_diagram(name: &str) -> Result<PdDiagram> {
    let key = match name.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
        "unknot" | "01" => "unknot",
        "hopf" | "221" => "hopf",
        "trefoil" | "31" => "trefoil",
        "figure8" | "figureeight" | "41" => "figure8",
        "whitehead" | "521" => "whitehead",
        "borromean" | "632" => "borromean",
        "633" | "link633" => "633",
        _ => return Err(Error::UnknownLink(name.to_string())),
    };
    Ok(builtin_diagrams().remove(key).expect("builtin present"))
}
