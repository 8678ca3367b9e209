//! Closed-braid invariants with every strand in the fundamental
//! representation of SU(N)_K, computed as a weighted trace of the
//! fundamental R-matrix on (ℂᴺ)^{⊗n}.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::wzw::conformal_weight;
use crate::young::{TheoryParams, YoungDiagram};

/// Largest tensor space the dense trace will build.
const MAX_DIMENSION: usize = 1 << 14;

/// Strand permutation of a braid word and the component of each strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidComponents {
    pub component_of: Vec<usize>,
    pub count: usize,
    /// Sum of exponents at crossings between strands of the same component.
    pub self_writhe: Vec<i64>,
}

pub fn braid_components(word: &[(usize, i32)], strands: usize) -> BraidComponents {
    let mut position: Vec<usize> = (0..strands).collect();
    let mut pairs = Vec::with_capacity(word.len());
    for &(i, _) in word {
        pairs.push((position[i - 1], position[i]));
        position.swap(i - 1, i);
    }
    // Strand starting at top slot t ends at bottom slot end[t] and continues from top slot end[t].
    let mut end = vec![0; strands];
    for (slot, &t) in position.iter().enumerate() {
        end[t] = slot;
    }
    let mut component_of = vec![usize::MAX; strands];
    let mut count = 0;
    for t in 0..strands {
        if component_of[t] != usize::MAX {
            continue;
        }
        let mut x = t;
        while component_of[x] == usize::MAX {
            component_of[x] = count;
            x = end[x];
        }
        count += 1;
    }
    let mut self_writhe = vec![0; count];
    for (&(a, b), &(_, e)) in pairs.iter().zip(word) {
        if component_of[a] == component_of[b] {
            self_writhe[component_of[a]] += i64::from(e);
        }
    }
    BraidComponents { component_of, count, self_writhe }
}

/// Applies σ_i^{±1} to a dense vector on (ℂᴺ)^{⊗n}.
fn apply_generator(
    v: &[Complex64],
    n: usize,
    strands: usize,
    i: usize,
    e: i32,
    s: Complex64,
    scale: Complex64,
) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    // Digit of strand j has weight n^{strands-1-j}.
    let left = n.pow((strands - i) as u32);
    let right = n.pow((strands - i - 1) as u32);
    let gap = s - s.inv();
    for (idx, &amp) in v.iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let x = idx / left % n;
        let y = idx / right % n;
        let base = idx - x * left - y * right;
        let swapped = base + y * left + x * right;
        let amp = amp * scale;
        if x == y {
            out[idx] += amp * if e > 0 { s } else { s.inv() };
        } else if e > 0 {
            out[swapped] += amp;
            if x > y {
                out[idx] += amp * gap;
            }
        } else {
            out[swapped] += amp;
            if x < y {
                out[idx] -= amp * gap;
            }
        }
    }
    out
}

/// Weighted trace of the braid word with the U(1) part removed, in the
/// blackboard framing of the closure.
pub fn closed_braid_trace(word: &[(usize, i32)], strands: usize, params: TheoryParams) -> Result<Complex64> {
    if strands == 0 || word.iter().any(|&(i, e)| i == 0 || i >= strands || e.abs() != 1) {
        return Err(Error::InvalidArgument("braid generator out of range".into()));
    }
    let n = params.n as usize;
    let dim = n
        .checked_pow(strands as u32)
        .filter(|&d| d <= MAX_DIMENSION)
        .ok_or_else(|| Error::InvalidArgument(format!("tensor space of {strands} strands in SU({n}) is too large")))?;
    let h = f64::from(params.height());
    let s = Complex64::from_polar(1.0, PI / h);
    let q_angle = 2.0 * PI / h;
    let scale_over = Complex64::from_polar(1.0, -q_angle / (2.0 * n as f64));
    let weight: Vec<Complex64> =
        (0..n).map(|i| Complex64::from_polar(1.0, q_angle * (n as f64 - 1.0 - 2.0 * i as f64) / 2.0)).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for basis in 0..dim {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[basis] = Complex64::new(1.0, 0.0);
        for &(i, e) in word {
            let scale = if e > 0 { scale_over } else { scale_over.inv() };
            v = apply_generator(&v, n, strands, i, e, s, scale);
        }
        let mut w = Complex64::new(1.0, 0.0);
        let mut rest = basis;
        for _ in 0..strands {
            w *= weight[rest % n];
            rest /= n;
        }
        total += w * v[basis];
    }
    Ok(total)
}

/// Closed-braid invariant with every component in zero framing.
pub fn closed_braid_invariant(word: &[(usize, i32)], strands: usize, params: TheoryParams) -> Result<Complex64> {
    let raw = closed_braid_trace(word, strands, params)?;
    let h = conformal_weight(&YoungDiagram::row(1), params);
    let self_writhe: i64 = braid_components(word, strands).self_writhe.iter().sum();
    Ok(raw * Complex64::from_polar(1.0, -2.0 * PI * h * self_writhe as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{braid_closure, builtin_braids, fundamental_invariant};
    use crate::torus::hopf_invariant;
    use crate::wzw::quantum_integer;

    fn p(n: u32, k: u32) -> TheoryParams {
        TheoryParams::new(n, k).unwrap()
    }

    #[test]
    fn unknot_gives_quantum_dimension() {
        for n in 1..=5 {
            for k in 1..=5 {
                let v = closed_braid_invariant(&[], 1, p(n, k)).unwrap();
                assert!((v - quantum_integer(f64::from(n), p(n, k))).norm() < 1e-12);
                // A single kink is removed by the framing correction.
                let kink = closed_braid_invariant(&[(1, 1)], 2, p(n, k)).unwrap();
                assert!((kink - v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn components_of_builtin_braids() {
        let expected = [1, 2, 1, 1, 2, 3, 3];
        for ((name, word, strands), count) in builtin_braids().into_iter().zip(expected) {
            assert_eq!(braid_components(&word, strands).count, count, "{name}");
        }
    }

    #[test]
    fn agrees_with_state_sum_at_rank_two() {
        for (name, word, strands) in builtin_braids() {
            let d = braid_closure(&word, strands).unwrap();
            for k in 1..=7 {
                let a = closed_braid_invariant(&word, strands, p(2, k)).unwrap();
                let b = fundamental_invariant(&d, p(2, k)).unwrap();
                assert!((a - b).norm() < 1e-10, "{name} k={k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn hopf_matches_s_matrix() {
        let box1 = YoungDiagram::row(1);
        for n in 2..=4 {
            for k in 1..=4 {
                let a = closed_braid_invariant(&[(1, 1), (1, 1)], 2, p(n, k)).unwrap();
                let b = hopf_invariant(&box1, &box1, p(n, k)).unwrap().value;
                assert!((a - b).norm() < 1e-10 || (a - b.conj()).norm() < 1e-10, "n={n} k={k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn unlinked_braids_are_level_rank_dual() {
        for (name, word, strands) in builtin_braids() {
            if matches!(name, "hopf" | "633") {
                continue;
            }
            for k in 2..=6 {
                let a = closed_braid_invariant(&word, strands, p(2, k)).unwrap();
                let b = closed_braid_invariant(&word, strands, p(k, 2)).unwrap();
                assert!((a - b.conj()).norm() < 1e-10, "{name} k={k}");
            }
        }
    }

    #[test]
    fn rejects_bad_words() {
        assert!(closed_braid_trace(&[(2, 1)], 2, p(2, 2)).is_err());
        assert!(closed_braid_trace(&[(1, 2)], 2, p(2, 2)).is_err());
        assert!(closed_braid_trace(&[], 20, p(3, 2)).is_err());
    }
}
