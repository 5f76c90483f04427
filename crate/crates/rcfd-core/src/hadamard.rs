//! Hadamard matrices and the binary orthogonal arrays derived from them.
//!
//! Builtins cover the Sylvester family for orders 2^a (a <= 6) plus the
//! two embedded order-12 and order-20 matrices the binary strength-2
//! constructions rely on. Other orders can be read from files in the
//! Sloane `+`/`-` format via [`crate::textio::parse_hadamard`].

use crate::array::{oa_check, OrthArray};
use crate::error::{Error, Result};

/// A +1/-1 square matrix H with H * H^T = order * I.
#[derive(Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl std::fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "H({})", self.order)?;
        for i in 0..self.order {
            for j in 0..self.order {
                write!(f, "{}", if self.get(i, j) > 0 { '+' } else { '-' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl HadamardMatrix {
    /// Validates the defining equation; entries are row-major +1/-1.
    pub fn new(entries: Vec<i8>, order: usize) -> Result<HadamardMatrix> {
        if entries.len() != order * order || entries.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::BadDimension(
                order,
                order,
                "not a +1/-1 square matrix",
            ));
        }
        let h = HadamardMatrix { order, entries };
        for i in 0..order {
            for j in i + 1..order {
                let dot: i32 = (0..order)
                    .map(|c| h.get(i, c) as i32 * h.get(j, c) as i32)
                    .sum();
                if dot != 0 {
                    return Err(Error::NotHadamard(order));
                }
            }
        }
        Ok(h)
    }

    fn from_rows_str(rows: &[&str]) -> HadamardMatrix {
        let order = rows.len();
        let entries: Vec<i8> = rows
            .iter()
            .flat_map(|r| r.bytes().map(|b| if b == b'+' { 1i8 } else { -1i8 }))
            .collect();
        HadamardMatrix::new(entries, order).expect("embedded matrix is Hadamard")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.order + j]
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.order).all(|j| self.get(0, j) == 1) && (0..self.order).all(|i| self.get(i, 0) == 1)
    }

    /// Equivalent matrix with all-ones first row and column: columns whose
    /// first entry is -1 are negated left to right, then rows top to bottom.
    pub fn normalize(&self) -> HadamardMatrix {
        let mut m = self.clone();
        for j in 0..m.order {
            if m.get(0, j) == -1 {
                for i in 0..m.order {
                    m.entries[i * m.order + j] *= -1;
                }
            }
        }
        for i in 0..m.order {
            if m.get(i, 0) == -1 {
                for j in 0..m.order {
                    m.entries[i * m.order + j] *= -1;
                }
            }
        }
        m
    }
}

/// Sylvester matrix of order 2^a: entry (i, j) is (-1)^popcount(i & j).
pub fn sylvester(order: usize) -> Result<HadamardMatrix> {
    if order == 0 || !order.is_power_of_two() || order > 64 {
        return Err(Error::ParametersOutOfRange(format!(
            "sylvester order must be a power of two up to 64, got {order}"
        )));
    }
    let entries: Vec<i8> = (0..order * order)
        .map(|idx| {
            let (i, j) = (idx / order, idx % order);
            if (i & j).count_ones() % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    HadamardMatrix::new(entries, order)
}

/// OA(4m, 4m-1, 2, 2) from a normalized Hadamard matrix of order 4m:
/// drop the first column and map -1 to 0.
pub fn oa2_from_hadamard(h: &HadamardMatrix) -> Result<OrthArray> {
    if !h.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if h.order() < 4 || !h.order().is_multiple_of(4) {
        return Err(Error::ParametersOutOfRange(format!(
            "order {} is not 4m >= 4",
            h.order()
        )));
    }
    let rows: Vec<Vec<u8>> = (0..h.order())
        .map(|i| (1..h.order()).map(|j| u8::from(h.get(i, j) > 0)).collect())
        .collect();
    OrthArray::from_rows(&rows, 2, 2)
}

/// OA(8m, 4m, 2, 3) from a normalized Hadamard matrix of order 4m: the
/// rows of `[H | -H]^T` with -1 mapped to 0.
pub fn oa3_from_hadamard(h: &HadamardMatrix) -> Result<OrthArray> {
    if !h.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if h.order() < 4 || !h.order().is_multiple_of(4) {
        return Err(Error::ParametersOutOfRange(format!(
            "order {} is not 4m >= 4",
            h.order()
        )));
    }
    let n = h.order();
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(2 * n);
    // columns of H, then columns of -H
    for j in 0..n {
        rows.push((0..n).map(|i| u8::from(h.get(i, j) > 0)).collect());
    }
    for j in 0..n {
        rows.push((0..n).map(|i| u8::from(h.get(i, j) < 0)).collect());
    }
    OrthArray::from_rows(&rows, 2, 3)
}

/// Doubling step for binary strength-2 arrays with a full-strength tail.
///
/// Input: an OA(N, c, 2, 2) whose final `alpha_cols` columns form an
/// OA(N, alpha, 2, alpha). Output: the OA(2N, 2c+1, 2, 2)
///
/// ```text
///   [ L  L  1 ]
///   [ L* L  0 ]
/// ```
///
/// where L* is the complement of L; its final alpha_cols + 1 columns form
/// a full-strength array again. The tail property of both input and output
/// is verified, not assumed.
pub fn double_oa(l: &OrthArray, alpha_cols: usize) -> Result<OrthArray> {
    let c = l.degree();
    if alpha_cols == 0 || alpha_cols > c {
        return Err(Error::ParametersOutOfRange(format!(
            "alpha_cols = {alpha_cols} out of range"
        )));
    }
    check_tail(l, alpha_cols)?;
    let n = l.size();
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(2 * n);
    for row in l.rows() {
        let mut r = Vec::with_capacity(2 * c + 1);
        r.extend_from_slice(row);
        r.extend_from_slice(row);
        r.push(1);
        rows.push(r);
    }
    for row in l.rows() {
        let mut r: Vec<u8> = row.iter().map(|&b| b ^ 1).collect();
        r.extend_from_slice(row);
        r.push(0);
        rows.push(r);
    }
    let out = OrthArray::from_rows(&rows, 2, 2)?;
    check_tail(&out, alpha_cols + 1)?;
    Ok(out)
}

/// Verify that the final `alpha` columns form an OA(N, alpha, 2, alpha).
pub fn check_tail(a: &OrthArray, alpha: usize) -> Result<()> {
    let cols: Vec<usize> = (a.degree() - alpha..a.degree()).collect();
    let tail = a.select_columns(&cols)?;
    if !oa_check(&tail, alpha)?.pass() {
        return Err(Error::TailNotFullStrength { alpha });
    }
    Ok(())
}

/// Names accepted by [`builtin`].
pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = (0..=6)
        .map(|a| format!("sylvester-{}", 1usize << a))
        .collect();
    names.push("had.12".into());
    names.push("had.20.toncheviv".into());
    names
}

/// Fetch an embedded matrix by name: `sylvester-2^a` for a <= 6, `had.12`,
/// or `had.20.toncheviv`. The returned matrices are bit-exact to the
/// embedded data and already normalized.
pub fn builtin(name: &str) -> Result<HadamardMatrix> {
    if let Some(rest) = name.strip_prefix("sylvester-") {
        let order: usize = rest
            .parse()
            .map_err(|_| Error::UnknownName(name.to_string()))?;
        return sylvester(order).map_err(|_| Error::UnknownName(name.to_string()));
    }
    match name {
        "had.12" => Ok(HadamardMatrix::from_rows_str(&HAD12)),
        "had.20.toncheviv" => Ok(HadamardMatrix::from_rows_str(&HAD20_TONCHEVIV)),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Order-12 Hadamard matrix. Columns 2-9 carry the embedded OA(12, 8, 2, 2)
/// used by the binary strength-2 witnesses (levels complemented, -1 <-> 0);
/// the remaining columns complete it to a normalized Hadamard matrix.
const HAD12: [&str; 12] = [
    "++++++++++++",
    "++++---+-+--",
    "+-+++---+--+",
    "++-+++----+-",
    "+-+-+++--+--",
    "+--+-+++---+",
    "++--+-+++---",
    "+-+--+-++-+-",
    "+--+--+-+++-",
    "+---+--+-+++",
    "++---+--++-+",
    "+++---+---++",
];

/// Order-20 Hadamard matrix. Columns 2-9 carry the embedded transposed
/// 8 x 20 array (up to the documented column permutation); the remaining
/// columns complete it to a normalized Hadamard matrix.
const HAD20_TONCHEVIV: [&str; 20] = [
    "++++++++++++++++++++",
    "+++++++++--+--------",
    "+++++--------++++-+-",
    "++++-+----+-+--+-+-+",
    "+++---++-+---++--+-+",
    "++-+--++-++-+---+-+-",
    "++--++--++--++--+--+",
    "++--++---+++--+--++-",
    "++----+-+--+++-+-++-",
    "++-----++-++--+++--+",
    "+-++----++-+----++++",
    "+-+-+-+-+-+-+-+---++",
    "+-+-+--+--++++--++--",
    "+-+--++--+-++-+++---",
    "+-+--+-++++--+-+--+-",
    "+--++-+--+++-+-+---+",
    "+--++--+++--+-++-+--",
    "+--+-++-+-+--++-++--",
    "+--+-+-+---++++---++",
    "+---++++-------+++++",
];
