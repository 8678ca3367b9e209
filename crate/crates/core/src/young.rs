//! Young diagram arithmetic and the cominimal shift used by fusion duality.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Partition-shaped representation label. Rows are non-increasing and
/// trailing zeros are dropped, so the empty diagram is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidRepresentation(format!("rows {rows:?} are not non-increasing")));
        }
        let mut rows = rows;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Single row of `len` boxes (totally symmetric representation).
    pub fn row(len: u32) -> Self {
        if len == 0 {
            Self::empty()
        } else {
            Self { rows: vec![len] }
        }
    }

    /// Single column of `height` boxes (totally antisymmetric representation).
    pub fn column(height: u32) -> Self {
        Self { rows: vec![1; height as usize] }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn first_row(&self) -> u32 {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row `i` counted from 1, zero past the last row.
    pub fn row_len(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    pub fn box_count(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.first_row()).map(|col| self.rows.iter().filter(|&&r| r > col).count() as u32).collect();
        Self { rows }
    }

    /// Strip full columns of height `n`; any column taller than `n` is an error.
    pub fn reduce(&self, n: u32) -> Result<Self> {
        let n = n as usize;
        if self.rows.len() > n {
            return Err(Error::InvalidRepresentation(format!("{self} has a column taller than {n}")));
        }
        if self.rows.len() < n {
            return Ok(self.clone());
        }
        let full = self.rows[n - 1];
        Self::new(self.rows.iter().map(|r| r - full).collect())
    }

    /// Integrable for SU(n) at level k: fewer than n rows after reduction
    /// and a first row no longer than k.
    pub fn is_integrable(&self, params: TheoryParams) -> bool {
        self.reduce(params.n).map(|d| d.first_row() <= params.k).unwrap_or(false)
    }

    /// Level-rank image: transpose, then reduce in the dual rank.
    pub fn dual_label(&self, params: TheoryParams) -> Result<Self> {
        self.transpose().reduce(params.k)
    }

    fn prepend_row(&self, len: u32) -> Result<Self> {
        if self.first_row() > len {
            return Err(Error::ShapeViolation(format!("cannot prepend a row of length {len} to {self}")));
        }
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(len);
        rows.extend_from_slice(&self.rows);
        Self::new(rows)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl TryFrom<Vec<u32>> for YoungDiagram {
    type Error = Error;
    fn try_from(rows: Vec<u32>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<YoungDiagram> for Vec<u32> {
    fn from(d: YoungDiagram) -> Self {
        d.rows
    }
}

/// The pair (N, K) fixing SU(N)_K.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TheoryParams {
    pub n: u32,
    pub k: u32,
}

impl TheoryParams {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidArgument(format!("rank and level must be positive, got N={n}, K={k}")));
        }
        Ok(Self { n, k })
    }

    /// SU(K)_N.
    pub fn dual(self) -> Self {
        Self { n: self.k, k: self.n }
    }

    /// N + K, the denominator of the root of unity.
    pub fn height(self) -> u32 {
        self.n + self.k
    }

    pub fn require_su2(self) -> Result<()> {
        if self.n != 2 {
            return Err(Error::UnsupportedTheory(format!(
                "this construction needs SU(2), got SU({})_{}",
                self.n, self.k
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TheoryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SU({})_{}", self.n, self.k)
    }
}

pub fn box_count(d: &YoungDiagram) -> u32 {
    d.box_count()
}

pub fn transpose(d: &YoungDiagram) -> YoungDiagram {
    d.transpose()
}

pub fn reduce(d: &YoungDiagram, n: u32) -> Result<YoungDiagram> {
    d.reduce(n)
}

/// Number of full rows shed when fusing `a` and `b` into `c`.
pub fn delta(a: &YoungDiagram, b: &YoungDiagram, c: &YoungDiagram, n: u32) -> Result<u32> {
    let excess = i64::from(a.box_count()) + i64::from(b.box_count()) - i64::from(c.box_count());
    if excess < 0 || excess % i64::from(n) != 0 {
        return Err(Error::InconsistentFusionTriple(format!(
            "r({a})+r({b})-r({c}) = {excess} is not a non-negative multiple of {n}"
        )));
    }
    Ok((excess / i64::from(n)) as u32)
}

/// Outcome of the box-count cross-check that accompanies the shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum BoxCheck {
    Match {
        boxes: i64,
    },
    Mismatch {
        expected: i64,
        actual: i64,
    },
    /// The referenced row index falls outside the diagram.
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaDelta {
    pub image: YoungDiagram,
    pub box_check: BoxCheck,
}

/// Cominimal shift into the dual theory: transpose, reduce mod K, then
/// `dlt` rounds of prepending a row of length N and reducing mod K.
pub fn sigma_delta(c: &YoungDiagram, params: TheoryParams, dlt: u32) -> Result<YoungDiagram> {
    let mut d = c.transpose().reduce(params.k)?;
    for _ in 0..dlt {
        d = d.prepend_row(params.n)?.reduce(params.k)?;
    }
    Ok(d)
}

/// Shift plus the predicted box count r(c) + NΔ − K·l̃, where l̃ is row
/// K−Δ of the transposed, unreduced diagram.
pub fn sigma_delta_checked(c: &YoungDiagram, params: TheoryParams, dlt: u32) -> Result<SigmaDelta> {
    let image = sigma_delta(c, params, dlt)?;
    let actual = i64::from(image.box_count());
    let box_check = if dlt >= params.k {
        BoxCheck::Undefined
    } else {
        let row = c.transpose().row_len((params.k - dlt) as usize);
        let expected = i64::from(c.box_count()) + i64::from(params.n * dlt) - i64::from(params.k) * i64::from(row);
        if expected == actual {
            BoxCheck::Match { boxes: actual }
        } else {
            BoxCheck::Mismatch { expected, actual }
        }
    };
    Ok(SigmaDelta { image, box_check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    fn p(n: u32, k: u32) -> TheoryParams {
        TheoryParams::new(n, k).unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(d(&[3, 1]).transpose(), d(&[2, 1, 1]));
        assert_eq!(d(&[]).transpose(), d(&[]));
        assert_eq!(d(&[2, 1]).transpose(), d(&[2, 1]));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(d(&[2, 1, 1]).reduce(3).unwrap(), d(&[1]));
        assert_eq!(d(&[1]).reduce(3).unwrap(), d(&[1]));
        assert_eq!(d(&[2, 2]).reduce(2).unwrap(), d(&[]));
        assert_eq!(d(&[1, 1, 1]).reduce(2).unwrap_err().code(), "invalid-representation");
    }

    #[test]
    fn rejects_increasing_rows() {
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert_eq!(YoungDiagram::new(vec![2, 0, 0]).unwrap(), d(&[2]));
    }

    #[test]
    fn box_counts() {
        assert_eq!(d(&[2, 1]).box_count(), 3);
        assert_eq!(d(&[]).box_count(), 0);
        assert_eq!(d(&[4]).box_count(), 4);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&d(&[1]), &d(&[1]), &d(&[]), 2).unwrap(), 1);
        assert_eq!(delta(&d(&[1]), &d(&[1]), &d(&[2]), 2).unwrap(), 0);
        assert_eq!(delta(&d(&[2]), &d(&[2]), &d(&[1]), 3).unwrap(), 1);
        let err = delta(&d(&[1]), &d(&[]), &d(&[]), 2).unwrap_err();
        assert_eq!(err.code(), "inconsistent-fusion-triple");
    }

    #[test]
    fn sigma_delta_examples() {
        assert_eq!(sigma_delta(&d(&[]), p(2, 2), 1).unwrap(), d(&[2]));
        assert_eq!(sigma_delta(&d(&[2]), p(2, 2), 0).unwrap(), d(&[]));
        for (n, k) in [(2, 2), (3, 4), (5, 3)] {
            assert_eq!(sigma_delta(&d(&[1]), p(n, k), 0).unwrap(), d(&[1]));
        }
    }

    #[test]
    fn sigma_delta_shape_violation() {
        // [1,1,1] transposes to [3], and a row of length N=2 cannot sit above it.
        let err = sigma_delta(&d(&[1, 1, 1]), p(2, 4), 1).unwrap_err();
        assert_eq!(err.code(), "shape-violation");
    }

    #[test]
    fn box_check_on_su2_fusion_triples() {
        // Every SU(2)_K fusion triple either satisfies the box-count formula
        // or falls outside the row range where it is defined.
        for k in 1..=6 {
            let params = p(2, k);
            for a in 0..=k {
                for b in 0..=k {
                    for c in 0..=k {
                        let admissible =
                            (a + b + c) % 2 == 0 && c <= a + b && a <= b + c && b <= a + c && a + b + c <= 2 * k;
                        if !admissible {
                            continue;
                        }
                        let dlt = (a + b - c) / 2;
                        let check = sigma_delta_checked(&YoungDiagram::row(c), params, dlt).unwrap();
                        assert!(
                            !matches!(check.box_check, BoxCheck::Mismatch { .. }),
                            "k={k} ({a},{b},{c}): {:?}",
                            check.box_check
                        );
                    }
                }
            }
        }
    }

    fn diagram_strategy(max_boxes: u32) -> impl Strategy<Value = YoungDiagram> {
        prop::collection::vec(1u32..=6, 0..10).prop_map(move |mut parts| {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let mut total = 0;
            parts.retain(|&r| {
                let keep = total + r <= max_boxes;
                if keep {
                    total += r;
                }
                keep
            });
            YoungDiagram::new(parts).unwrap()
        })
    }

    proptest! {
        #[test]
        fn transpose_is_involution(dg in diagram_strategy(20)) {
            prop_assert!(dg.box_count() <= 20);
            prop_assert_eq!(dg.transpose().transpose(), dg);
        }

        #[test]
        fn transpose_preserves_boxes(dg in diagram_strategy(20)) {
            prop_assert_eq!(dg.transpose().box_count(), dg.box_count());
        }

        #[test]
        fn reduce_is_idempotent(dg in diagram_strategy(20), n in 1u32..9) {
            if let Ok(once) = dg.reduce(n) {
                prop_assert_eq!(once.reduce(n).unwrap(), once.clone());
                prop_assert!(once.num_rows() < n as usize || once.is_empty());
            }
        }
    }
}
