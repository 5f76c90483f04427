//! Orthogonal arrays, row-column factorial designs, and the brute-force
//! verifiers that every construction in this crate is checked against.
//!
//! Verification counts with exact integer counters indexed by mixed-radix
//! tuple encoding; no hashing. For q = 2 a bit-packed counting path is used
//! with observable behavior identical to the generic counter (the test
//! suite cross-checks the two). Witnesses are deterministic: the
//! lexicographically first failing (column subset, tuple) is reported, also
//! under parallel execution.

use crate::error::{Error, Result};
use crate::util::{combinations, for_each_combination};
use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Hard cap on q^k when counting the factorial multiset.
const FACTORIAL_CAP: u128 = 1 << 26;

/// Scan `0..count`, returning the smallest index whose closure yields a
/// failure. Runs in parallel when enabled and `par` is true; the result is
/// independent of the execution mode.
fn scan_min<T: Send>(
    count: usize,
    par: bool,
    f: impl Fn(usize) -> Option<T> + Sync,
) -> Option<(usize, T)> {
    #[cfg(feature = "parallel")]
    if par {
        return (0..count)
            .into_par_iter()
            .filter_map(|i| f(i).map(|t| (i, t)))
            .min_by_key(|(i, _)| *i);
    }
    let _ = par;
    (0..count).find_map(|i| f(i).map(|t| (i, t)))
}

// ---------------------------------------------------------------------------
// Orthogonal arrays
// ---------------------------------------------------------------------------

/// An N x k array over `[q]` with a claimed strength t.
#[derive(Clone, PartialEq, Eq)]
pub struct OrthArray {
    size: usize,
    degree: usize,
    q: usize,
    strength: usize,
    entries: Vec<u8>,
}

impl fmt::Debug for OrthArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OA({}, {}, {}, {})",
            self.size, self.degree, self.q, self.strength
        )
    }
}

impl OrthArray {
    pub fn new(
        size: usize,
        degree: usize,
        q: usize,
        strength: usize,
        entries: Vec<u8>,
    ) -> Result<OrthArray> {
        if entries.len() != size * degree {
            return Err(Error::BadDimension(size, degree, "entry count mismatch"));
        }
        if entries.iter().any(|&e| e as usize >= q) {
            return Err(Error::BadDimension(size, degree, "entry out of range"));
        }
        Ok(OrthArray {
            size,
            degree,
            q,
            strength,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<u8>], q: usize, strength: usize) -> Result<OrthArray> {
        let size = rows.len();
        let degree = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != degree) {
            return Err(Error::BadDimension(size, degree, "ragged rows"));
        }
        let entries = rows.concat();
        Self::new(size, degree, q, strength, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.degree..(i + 1) * self.degree]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.chunks(self.degree)
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.size).map(|i| self.row(i)[j]).collect()
    }

    /// New array on the given columns, in order. The claimed strength is
    /// capped at the new degree.
    pub fn select_columns(&self, cols: &[usize]) -> Result<OrthArray> {
        if cols.iter().any(|&c| c >= self.degree) {
            return Err(Error::BadDimension(self.size, self.degree, "column index"));
        }
        let rows: Vec<Vec<u8>> = self
            .rows()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        Self::from_rows(&rows, self.q, self.strength.min(cols.len()))
    }

    pub fn zero_first_row(&self) -> bool {
        self.size > 0 && self.row(0).iter().all(|&e| e == 0)
    }
}

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

/// Why a strength check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OaFailure {
    /// q^t does not divide the array size, so no uniform count exists.
    SizeNotDivisible { size: usize, q_to_t: usize },
    /// The first (column subset, tuple) whose count is off.
    Tuple {
        columns: Vec<usize>,
        tuple: Vec<u8>,
        count: usize,
        expected: usize,
    },
}

impl fmt::Display for OaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OaFailure::SizeNotDivisible { size, q_to_t } => {
                write!(f, "size {size} is not divisible by q^t = {q_to_t}")
            }
            OaFailure::Tuple {
                columns,
                tuple,
                count,
                expected,
            } => write!(
                f,
                "columns {columns:?}: tuple {tuple:?} occurs {count} times, expected {expected}"
            ),
        }
    }
}

/// Outcome of [`oa_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OaReport {
    pub strength: usize,
    pub failure: Option<OaFailure>,
}

impl OaReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// Outcome of [`rcfd_check`]: three sub-reports, pass iff all pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub strength: usize,
    /// First vector of `[q]^k` whose multiplicity differs from lambda.
    pub factorial_failure: Option<(Vec<u8>, usize, usize)>,
    /// First row that is not an OA of the requested strength.
    pub row_failure: Option<(usize, OaFailure)>,
    /// First column that is not an OA of the requested strength.
    pub col_failure: Option<(usize, OaFailure)>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.factorial_failure.is_none() && self.row_failure.is_none() && self.col_failure.is_none()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "factorial multiset: {}",
            match &self.factorial_failure {
                None => "pass".to_string(),
                Some((v, got, want)) =>
                    format!("FAIL (vector {v:?} occurs {got} times, expected {want})"),
            }
        )?;
        writeln!(
            f,
            "rows strength {}:   {}",
            self.strength,
            match &self.row_failure {
                None => "pass".to_string(),
                Some((i, w)) => format!("FAIL (row {i}: {w})"),
            }
        )?;
        write!(
            f,
            "columns strength {}: {}",
            self.strength,
            match &self.col_failure {
                None => "pass".to_string(),
                Some((j, w)) => format!("FAIL (column {j}: {w})"),
            }
        )
    }
}

// ---------------------------------------------------------------------------
// oa_check
// ---------------------------------------------------------------------------

fn check_subset_generic(a: &OrthArray, cols: &[usize], expected: usize) -> Option<OaFailure> {
    let q = a.q;
    let t = cols.len();
    let mut counts = vec![0usize; q.pow(t as u32)];
    for row in a.rows() {
        let mut idx = 0usize;
        for &c in cols {
            idx = idx * q + row[c] as usize;
        }
        counts[idx] += 1;
    }
    counts
        .iter()
        .enumerate()
        .find(|&(_, &c)| c != expected)
        .map(|(idx, &count)| {
            let mut tuple = vec![0u8; t];
            let mut rest = idx;
            for slot in tuple.iter_mut().rev() {
                *slot = (rest % q) as u8;
                rest /= q;
            }
            OaFailure::Tuple {
                columns: cols.to_vec(),
                tuple,
                count,
                expected,
            }
        })
}

/// Bit-packed columns for q = 2 arrays: one u64 stream per column.
struct PackedColumns {
    words: usize,
    size: usize,
    cols: Vec<Vec<u64>>,
}

impl PackedColumns {
    fn new(a: &OrthArray) -> PackedColumns {
        let words = a.size.div_ceil(64);
        let mut cols = vec![vec![0u64; words]; a.degree];
        for (i, row) in a.rows().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e == 1 {
                    cols[j][i / 64] |= 1u64 << (i % 64);
                }
            }
        }
        PackedColumns {
            words,
            size: a.size,
            cols,
        }
    }

    fn check_subset(&self, cols: &[usize], expected: usize) -> Option<OaFailure> {
        let t = cols.len();
        let tail_bits = self.size % 64;
        for pattern in 0..1usize << t {
            let mut count = 0usize;
            for w in 0..self.words {
                let mut acc = !0u64;
                for (i, &c) in cols.iter().enumerate() {
                    // bit (t-1-i) of the pattern is coordinate i of the tuple
                    let want_one = pattern >> (t - 1 - i) & 1 == 1;
                    let col = self.cols[c][w];
                    acc &= if want_one { col } else { !col };
                }
                if w + 1 == self.words && tail_bits != 0 {
                    acc &= (1u64 << tail_bits) - 1;
                }
                count += acc.count_ones() as usize;
            }
            if count != expected {
                let tuple: Vec<u8> = (0..t).map(|i| (pattern >> (t - 1 - i) & 1) as u8).collect();
                return Some(OaFailure::Tuple {
                    columns: cols.to_vec(),
                    tuple,
                    count,
                    expected,
                });
            }
        }
        None
    }
}

fn oa_check_mode(a: &OrthArray, t: usize, par: bool) -> Result<OaReport> {
    if t > a.degree {
        return Err(Error::StrengthExceedsDegree { t, k: a.degree });
    }
    if t == 0 {
        return Ok(OaReport {
            strength: 0,
            failure: None,
        });
    }
    let q_to_t = a.q.pow(t as u32);
    if !a.size.is_multiple_of(q_to_t) {
        return Ok(OaReport {
            strength: t,
            failure: Some(OaFailure::SizeNotDivisible {
                size: a.size,
                q_to_t,
            }),
        });
    }
    let expected = a.size / q_to_t;
    let subsets = combinations(a.degree, t);

    let failure = if a.q == 2 {
        let packed = PackedColumns::new(a);
        scan_min(subsets.len(), par, |i| {
            packed.check_subset(&subsets[i], expected)
        })
    } else {
        scan_min(subsets.len(), par, |i| {
            check_subset_generic(a, &subsets[i], expected)
        })
    };
    Ok(OaReport {
        strength: t,
        failure: failure.map(|(_, f)| f),
    })
}

/// Check that every t-subset of columns carries every tuple exactly
/// `N / q^t` times.
pub fn oa_check(a: &OrthArray, t: usize) -> Result<OaReport> {
    oa_check_mode(a, t, true)
}

/// Sequential variant of [`oa_check`] (same result, used for benchmarks).
#[doc(hidden)]
pub fn oa_check_seq(a: &OrthArray, t: usize) -> Result<OaReport> {
    oa_check_mode(a, t, false)
}

/// Generic-counter variant of [`oa_check`], bypassing the bit-packed path.
/// Kept as the independent reference the packed path is tested against.
#[doc(hidden)]
pub fn oa_check_reference(a: &OrthArray, t: usize) -> Result<OaReport> {
    if t > a.degree {
        return Err(Error::StrengthExceedsDegree { t, k: a.degree });
    }
    if t == 0 {
        return Ok(OaReport {
            strength: 0,
            failure: None,
        });
    }
    let q_to_t = a.q.pow(t as u32);
    if !a.size.is_multiple_of(q_to_t) {
        return Ok(OaReport {
            strength: t,
            failure: Some(OaFailure::SizeNotDivisible {
                size: a.size,
                q_to_t,
            }),
        });
    }
    let expected = a.size / q_to_t;
    let mut failure = None;
    for_each_combination(a.degree, t, &mut |cols| {
        if failure.is_none() {
            failure = check_subset_generic(a, cols, expected);
        }
    });
    Ok(OaReport {
        strength: t,
        failure,
    })
}

// ---------------------------------------------------------------------------
// Row-column factorial designs
// ---------------------------------------------------------------------------

/// An m x n grid of k-dimensional vectors over `[q]` with claimed strength t.
#[derive(Clone, PartialEq, Eq)]
pub struct RcDesign {
    m: usize,
    n: usize,
    k: usize,
    q: usize,
    t: usize,
    cells: Vec<u8>,
}

impl fmt::Debug for RcDesign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "I_{}({}, {}, {}, {})",
            self.k, self.m, self.n, self.q, self.t
        )
    }
}

impl RcDesign {
    pub fn new(
        m: usize,
        n: usize,
        k: usize,
        q: usize,
        t: usize,
        cells: Vec<u8>,
    ) -> Result<RcDesign> {
        let len = (m as u128) * (n as u128) * (k as u128);
        if len > 1 << 28 {
            return Err(Error::TooLarge {
                rank: k,
                size: len,
                cap: 1 << 28,
            });
        }
        if cells.len() != m * n * k {
            return Err(Error::BadDimension(m, n, "cell buffer length"));
        }
        if cells.iter().any(|&e| e as usize >= q) {
            return Err(Error::BadDimension(m, n, "entry out of range"));
        }
        Ok(RcDesign {
            m,
            n,
            k,
            q,
            t,
            cells,
        })
    }

    /// Fill from a closure mapping (row, col) to the cell vector.
    pub fn from_fn(
        m: usize,
        n: usize,
        k: usize,
        q: usize,
        t: usize,
        mut f: impl FnMut(usize, usize) -> Vec<u8>,
    ) -> Result<RcDesign> {
        if (m as u128) * (n as u128) * (k as u128) > 1 << 28 {
            return Err(Error::TooLarge {
                rank: k,
                size: (m as u128) * (n as u128) * (k as u128),
                cap: 1 << 28,
            });
        }
        let mut cells = Vec::with_capacity(m * n * k);
        for i in 0..m {
            for j in 0..n {
                let v = f(i, j);
                debug_assert_eq!(v.len(), k);
                cells.extend_from_slice(&v);
            }
        }
        Self::new(m, n, k, q, t, cells)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn spec(&self) -> DesignSpec {
        DesignSpec {
            k: self.k,
            m: self.m,
            n: self.n,
            q: self.q,
            t: self.t,
        }
    }

    #[inline]
    pub fn cell(&self, i: usize, j: usize) -> &[u8] {
        let base = (i * self.n + j) * self.k;
        &self.cells[base..base + self.k]
    }

    pub fn set_cell(&mut self, i: usize, j: usize, v: &[u8]) {
        let base = (i * self.n + j) * self.k;
        self.cells[base..base + self.k].copy_from_slice(v);
    }

    /// Row i as an OA(n, k, q, t) candidate.
    pub fn row_array(&self, i: usize) -> OrthArray {
        let rows: Vec<Vec<u8>> = (0..self.n).map(|j| self.cell(i, j).to_vec()).collect();
        OrthArray::from_rows(&rows, self.q, self.t).expect("cells are in range")
    }

    /// Column j as an OA(m, k, q, t) candidate.
    pub fn col_array(&self, j: usize) -> OrthArray {
        let rows: Vec<Vec<u8>> = (0..self.m).map(|i| self.cell(i, j).to_vec()).collect();
        OrthArray::from_rows(&rows, self.q, self.t).expect("cells are in range")
    }

    /// The n x m design with rows and columns swapped.
    pub fn transpose(&self) -> RcDesign {
        RcDesign::from_fn(self.n, self.m, self.k, self.q, self.t, |i, j| {
            self.cell(j, i).to_vec()
        })
        .expect("same cells")
    }

    /// Apply an equivalence operation (never changes the verification verdict).
    pub fn transform(&self, op: &EquivalenceOp) -> Result<RcDesign> {
        match op {
            EquivalenceOp::PermuteRows(p) => {
                check_permutation(p, self.m)?;
                RcDesign::from_fn(self.m, self.n, self.k, self.q, self.t, |i, j| {
                    self.cell(p[i], j).to_vec()
                })
            }
            EquivalenceOp::PermuteColumns(p) => {
                check_permutation(p, self.n)?;
                RcDesign::from_fn(self.m, self.n, self.k, self.q, self.t, |i, j| {
                    self.cell(i, p[j]).to_vec()
                })
            }
            EquivalenceOp::PermuteLevels(p) => {
                let p_usize: Vec<usize> = p.iter().map(|&x| x as usize).collect();
                check_permutation(&p_usize, self.q)?;
                RcDesign::from_fn(self.m, self.n, self.k, self.q, self.t, |i, j| {
                    self.cell(i, j).iter().map(|&v| p[v as usize]).collect()
                })
            }
            EquivalenceOp::PermuteCoordinates(p) => {
                check_permutation(p, self.k)?;
                RcDesign::from_fn(self.m, self.n, self.k, self.q, self.t, |i, j| {
                    let c = self.cell(i, j);
                    p.iter().map(|&r| c[r]).collect()
                })
            }
        }
    }
}

fn check_permutation(p: &[usize], len: usize) -> Result<()> {
    if p.len() != len {
        return Err(Error::BadPermutation {
            want: len,
            got: p.len(),
        });
    }
    let mut seen = vec![false; len];
    for &x in p {
        if x >= len || seen[x] {
            return Err(Error::BadPermutation {
                want: len,
                got: p.len(),
            });
        }
        seen[x] = true;
    }
    Ok(())
}

/// The design equivalences: row/column reorder, global level relabel,
/// global coordinate reorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceOp {
    /// New row i is old row `p[i]`.
    PermuteRows(Vec<usize>),
    /// New column j is old column `p[j]`.
    PermuteColumns(Vec<usize>),
    /// Level v is relabelled `p[v]`, applied globally.
    PermuteLevels(Vec<u8>),
    /// New coordinate r reads old coordinate `p[r]`, applied globally.
    PermuteCoordinates(Vec<usize>),
}

fn rcfd_check_mode(d: &RcDesign, t: usize, par: bool) -> Result<VerifyReport> {
    let qk = (d.q as u128).checked_pow(d.k as u32).unwrap_or(u128::MAX);
    if qk > FACTORIAL_CAP {
        return Err(Error::TooLarge {
            rank: d.k,
            size: qk,
            cap: FACTORIAL_CAP as u64,
        });
    }
    let qk = qk as usize;
    let total = d.m as u128 * d.n as u128;
    if !total.is_multiple_of(qk as u128) {
        return Err(Error::NonIntegralReplication {
            k: d.k,
            m: d.m,
            n: d.n,
            q: d.q,
        });
    }
    let lambda = (total / qk as u128) as usize;

    // factorial multiset
    let mut counts = vec![0usize; qk];
    for i in 0..d.m {
        for j in 0..d.n {
            let mut idx = 0usize;
            for &v in d.cell(i, j) {
                idx = idx * d.q + v as usize;
            }
            counts[idx] += 1;
        }
    }
    let factorial_failure =
        counts
            .iter()
            .enumerate()
            .find(|&(_, &c)| c != lambda)
            .map(|(idx, &count)| {
                let mut v = vec![0u8; d.k];
                let mut rest = idx;
                for slot in v.iter_mut().rev() {
                    *slot = (rest % d.q) as u8;
                    rest /= d.q;
                }
                (v, count, lambda)
            });

    let row_failure = scan_min(d.m, par, |i| {
        oa_check_mode(&d.row_array(i), t, false)
            .expect("t <= k checked by caller")
            .failure
    });
    let col_failure = scan_min(d.n, par, |j| {
        oa_check_mode(&d.col_array(j), t, false)
            .expect("t <= k checked by caller")
            .failure
    });

    Ok(VerifyReport {
        strength: t,
        factorial_failure,
        row_failure,
        col_failure,
    })
}

/// Full verification of a design claim: factorial multiset, every row an
/// OA of strength t, every column an OA of strength t. Total: any grid of
/// cells gets a verdict.
pub fn rcfd_check(d: &RcDesign, t: usize) -> Result<VerifyReport> {
    if t > d.k {
        return Err(Error::StrengthExceedsDegree { t, k: d.k });
    }
    rcfd_check_mode(d, t, true)
}

/// Sequential variant of [`rcfd_check`] (same result, used for benchmarks).
#[doc(hidden)]
pub fn rcfd_check_seq(d: &RcDesign, t: usize) -> Result<VerifyReport> {
    if t > d.k {
        return Err(Error::StrengthExceedsDegree { t, k: d.k });
    }
    rcfd_check_mode(d, t, false)
}

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

/// The parameter 5-tuple (k, m, n, q, t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DesignSpec {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub q: usize,
    pub t: usize,
}

impl fmt::Display for DesignSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "I_{}({}, {}, {}, {})",
            self.k, self.m, self.n, self.q, self.t
        )
    }
}

/// A named necessary condition violated by a parameter tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmissibilityViolation {
    /// t > k.
    StrengthExceedsDegree,
    /// q^t does not divide m.
    RowCountNotDivisible,
    /// q^t does not divide n.
    ColCountNotDivisible,
    /// q^k does not divide m*n.
    ReplicationNotIntegral,
    /// Strength-2 degree bound k <= (m-1)/(q-1) on column arrays.
    DegreeBoundRows,
    /// Strength-2 degree bound k <= (n-1)/(q-1) on row arrays.
    DegreeBoundCols,
    /// Binary strength-3 degree bound k <= m/2.
    BinaryStrength3BoundRows,
    /// Binary strength-3 degree bound k <= n/2.
    BinaryStrength3BoundCols,
}

impl fmt::Display for AdmissibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::StrengthExceedsDegree => "t <= k fails",
            Self::RowCountNotDivisible => "q^t | m fails",
            Self::ColCountNotDivisible => "q^t | n fails",
            Self::ReplicationNotIntegral => "q^k | mn fails",
            Self::DegreeBoundRows => "k <= (m-1)/(q-1) fails",
            Self::DegreeBoundCols => "k <= (n-1)/(q-1) fails",
            Self::BinaryStrength3BoundRows => "k <= m/2 fails (binary strength 3)",
            Self::BinaryStrength3BoundCols => "k <= n/2 fails (binary strength 3)",
        };
        f.write_str(s)
    }
}

/// Result of the admissibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityVerdict {
    Admissible,
    Fails(Vec<AdmissibilityViolation>),
}

impl AdmissibilityVerdict {
    pub fn is_admissible(&self) -> bool {
        matches!(self, AdmissibilityVerdict::Admissible)
    }
}

impl DesignSpec {
    pub fn new(k: usize, m: usize, n: usize, q: usize, t: usize) -> DesignSpec {
        DesignSpec { k, m, n, q, t }
    }

    /// Replication lambda = m*n/q^k, when integral.
    pub fn lambda(&self) -> Option<u128> {
        let qk = (self.q as u128).checked_pow(self.k as u32)?;
        let total = self.m as u128 * self.n as u128;
        total.is_multiple_of(qk).then(|| total / qk)
    }

    pub fn transposed(&self) -> DesignSpec {
        DesignSpec {
            k: self.k,
            m: self.n,
            n: self.m,
            q: self.q,
            t: self.t,
        }
    }

    /// The divisibility conditions plus the strength-2 and binary
    /// strength-3 degree bounds, reported as named violations.
    pub fn admissible(&self) -> AdmissibilityVerdict {
        use AdmissibilityViolation as V;
        let mut v = Vec::new();
        let qt = (self.q as u128).pow(self.t as u32);
        if self.t > self.k {
            v.push(V::StrengthExceedsDegree);
        }
        if !(self.m as u128).is_multiple_of(qt) {
            v.push(V::RowCountNotDivisible);
        }
        if !(self.n as u128).is_multiple_of(qt) {
            v.push(V::ColCountNotDivisible);
        }
        if self.lambda().is_none() {
            v.push(V::ReplicationNotIntegral);
        }
        if self.t == 2 && self.q >= 2 {
            if self.k > (self.m - 1) / (self.q - 1) {
                v.push(V::DegreeBoundRows);
            }
            if self.k > (self.n - 1) / (self.q - 1) {
                v.push(V::DegreeBoundCols);
            }
        }
        if self.t == 3 && self.q == 2 {
            if 2 * self.k > self.m {
                v.push(V::BinaryStrength3BoundRows);
            }
            if 2 * self.k > self.n {
                v.push(V::BinaryStrength3BoundCols);
            }
        }
        if v.is_empty() {
            AdmissibilityVerdict::Admissible
        } else {
            AdmissibilityVerdict::Fails(v)
        }
    }
}
