//! Exact arithmetic and linear algebra over GF(q) for prime powers q.
//!
//! Field elements are represented as indices in `[q]`. For an extension
//! field GF(p^d) the index encodes the polynomial coefficient vector in
//! base p, with the constant coefficient as the least significant digit.
//! Every field is built from a fixed irreducible polynomial so tables are
//! reproducible across runs.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Default cap on the number of vectors [`GfMatrix::rowspace_enumerate`]
/// will materialize.
pub const ROWSPACE_CAP: u64 = 1 << 20;

/// Fixed irreducible polynomials per (p, degree). Entries are the
/// non-leading coefficients, constant term first, of a monic polynomial.
const IRREDUCIBLE: &[(usize, usize, &[u8])] = &[
    (2, 2, &[1, 1]),             // x^2 + x + 1
    (2, 3, &[1, 1, 0]),          // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0]),       // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0]),    // x^5 + x^2 + 1
    (2, 6, &[1, 1, 0, 0, 0, 0]), // x^6 + x + 1
    (3, 2, &[1, 0]),             // x^2 + 1
    (3, 3, &[1, 2, 0]),          // x^3 + 2x + 1
    (5, 2, &[2, 0]),             // x^2 + 2
    (7, 2, &[1, 0]),             // x^2 + 1
];

/// A prime-power finite field GF(q) with explicit operation tables.
#[derive(Clone)]
pub struct FieldSpec {
    q: usize,
    p: usize,
    deg: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    primitive_element: u8,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(GF({}) = GF({}^{}))", self.q, self.p, self.deg)
    }
}

fn factor_prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut deg = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                deg += 1;
            }
            return if rest == 1 { Some((p, deg)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

impl FieldSpec {
    /// Build GF(q). Fails with [`Error::NotPrimePower`] when q has two
    /// distinct prime factors, and [`Error::UnsupportedField`] when no
    /// irreducible polynomial is built in for the extension degree.
    pub fn new(q: usize) -> Result<FieldSpec> {
        if !(2..=255).contains(&q) {
            return Err(Error::NotPrimePower(q as u64));
        }
        let (p, deg) = factor_prime_power(q).ok_or(Error::NotPrimePower(q as u64))?;

        let (add, mul) = if deg == 1 {
            let mut add = vec![0u8; q * q];
            let mut mul = vec![0u8; q * q];
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = ((a + b) % q) as u8;
                    mul[a * q + b] = ((a * b) % q) as u8;
                }
            }
            (add, mul)
        } else {
            let poly = IRREDUCIBLE
                .iter()
                .find(|&&(ip, id, _)| ip == p && id == deg)
                .map(|&(_, _, c)| c)
                .ok_or(Error::UnsupportedField(q as u64))?;
            Self::extension_tables(p, deg, poly)
        };

        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if a != 0 && mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }

        let mut field = FieldSpec {
            q,
            p,
            deg,
            add,
            mul,
            neg,
            inv,
            primitive_element: 1,
        };
        field.primitive_element = field.find_primitive();
        Ok(field)
    }

    fn extension_tables(p: usize, deg: usize, poly: &[u8]) -> (Vec<u8>, Vec<u8>) {
        let q = p.pow(deg as u32);
        let digits = |mut v: usize| -> Vec<usize> {
            let mut out = vec![0; deg];
            for d in out.iter_mut() {
                *d = v % p;
                v /= p;
            }
            out
        };
        let pack = |c: &[usize]| -> usize { c.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let ca = digits(a);
            for b in 0..q {
                let cb = digits(b);
                let sum: Vec<usize> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&sum) as u8;

                // schoolbook product, then reduce by the irreducible polynomial
                let mut prod = vec![0usize; 2 * deg - 1];
                for (i, &x) in ca.iter().enumerate() {
                    for (j, &y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for i in (deg..prod.len()).rev() {
                    let c = prod[i];
                    if c != 0 {
                        prod[i] = 0;
                        for (j, &pc) in poly.iter().enumerate() {
                            // x^i = x^(i-deg) * (-poly)
                            let sub = c * pc as usize % p;
                            prod[i - deg + j] = (prod[i - deg + j] + p - sub) % p;
                        }
                    }
                }
                mul[a * q + b] = pack(&prod[..deg]) as u8;
            }
        }
        (add, mul)
    }

    fn find_primitive(&self) -> u8 {
        'outer: for g in 1..self.q {
            let mut x = g as u8;
            for _ in 1..self.q - 1 {
                if x == 1 {
                    continue 'outer;
                }
                x = self.mul(x, g as u8);
            }
            if x == 1 {
                return g as u8;
            }
        }
        1
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn primitive_element(&self) -> u8 {
        self.primitive_element
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; zero maps to zero (callers must not rely on it).
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

/// Dense matrix over a [`FieldSpec`], row-major, entries in `[q]`.
#[derive(Clone)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
    field: Arc<FieldSpec>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GfMatrix {}x{} over GF({})",
            self.rows,
            self.cols,
            self.field.q()
        )?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl PartialEq for GfMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field.q() == other.field.q()
            && self.entries == other.entries
    }
}
impl Eq for GfMatrix {}

impl GfMatrix {
    pub fn zero(rows: usize, cols: usize, field: Arc<FieldSpec>) -> GfMatrix {
        GfMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(n: usize, field: Arc<FieldSpec>) -> GfMatrix {
        let mut m = Self::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from explicit rows; every entry must be `< q`.
    pub fn from_rows(rows: &[Vec<u8>], field: Arc<FieldSpec>) -> Result<GfMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::BadDimension(r, c, "ragged rows"));
            }
            for &e in row {
                if e as usize >= field.q() {
                    return Err(Error::BadDimension(r, c, "entry out of range"));
                }
                entries.push(e);
            }
        }
        Ok(GfMatrix {
            rows: r,
            cols: c,
            entries,
            field,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vec<u8>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut out = Self::zero(self.cols, self.rows, self.field.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.rows != other.rows || self.field.q() != other.field.q() {
            return Err(Error::DimensionMismatch("hcat requires equal row counts"));
        }
        let mut out = Self::zero(self.rows, self.cols + other.cols, self.field.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Sub-matrix formed by the given rows and columns, in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GfMatrix {
        let mut out = Self::zero(rows.len(), cols.len(), self.field.clone());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    pub fn mat_mul(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.cols != other.rows || self.field.q() != other.field.q() {
            return Err(Error::DimensionMismatch("mat_mul shape"));
        }
        let f = &self.field;
        let mut out = Self::zero(self.rows, other.cols, self.field.clone());
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u8;
                for l in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, l), other.get(l, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(pr, j));
                m.set(r, j, b);
                m.set(pr, j, a);
            }
            let scale = f.inv(m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.get(r, j), scale));
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let factor = m.get(i, c);
                    for j in 0..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank via Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A `cols x (cols - rank)` matrix whose columns are a basis of the
    /// nullspace {x : Ax = 0}. For A = [I | K] the basis comes out in the
    /// `[-K^T | I]^T` arrangement.
    pub fn nullspace_basis(&self) -> GfMatrix {
        let f = self.field.clone();
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = GfMatrix::zero(self.cols, free.len(), f.clone());
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(fc, bi, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, bi, f.neg(rref.get(r, fc)));
            }
        }
        basis
    }

    /// All `q^rank` vectors of the rowspace, zero vector first, in a
    /// deterministic order: the j-th vector is the combination of the RREF
    /// basis rows whose coefficients are the base-q digits of j, least
    /// significant digit scaling the first basis row.
    pub fn rowspace_enumerate(&self, cap: u64) -> Result<Vec<Vec<u8>>> {
        let f = self.field.clone();
        let q = f.q();
        let (rref, pivots) = self.rref();
        let rank = pivots.len();
        let size = (q as u128).pow(rank as u32);
        if size > cap as u128 {
            return Err(Error::TooLarge { rank, size, cap });
        }
        let basis: Vec<&[u8]> = (0..rank).map(|i| rref.row(i)).collect();
        let size = size as usize;
        let mut out = Vec::with_capacity(size);
        for idx in 0..size {
            let mut v = vec![0u8; self.cols];
            let mut rest = idx;
            for b in basis.iter() {
                let c = (rest % q) as u8;
                rest /= q;
                if c != 0 {
                    for (slot, &e) in v.iter_mut().zip(b.iter()) {
                        *slot = f.add(*slot, f.mul(c, e));
                    }
                }
            }
            out.push(v);
        }
        Ok(out)
    }
}

/// True iff every t-subset of `vectors` is linearly independent.
///
/// With t = 2 this is the usual "pairwise non-parallel and nonzero"
/// condition. Returns the first dependent subset on failure.
pub fn t_independent_witness(
    vectors: &[Vec<u8>],
    t: usize,
    field: &Arc<FieldSpec>,
) -> Option<Vec<usize>> {
    let n = vectors.len();
    if t == 0 || n < t {
        return None;
    }
    let mut found = None;
    crate::util::for_each_combination(n, t, &mut |subset| {
        if found.is_some() {
            return;
        }
        let rows: Vec<Vec<u8>> = subset.iter().map(|&i| vectors[i].clone()).collect();
        let m = GfMatrix::from_rows(&rows, field.clone()).expect("uniform vectors");
        if m.rank() < t {
            found = Some(subset.to_vec());
        }
    });
    found
}

/// Convenience wrapper over [`t_independent_witness`].
pub fn is_t_independent(vectors: &[Vec<u8>], t: usize, field: &Arc<FieldSpec>) -> bool {
    t_independent_witness(vectors, t, field).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: usize) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(q).unwrap())
    }

    #[test]
    fn gf2_addition_is_xor() {
        let f = field(2);
        for a in 0..2u8 {
            for b in 0..2u8 {
                assert_eq!(f.add(a, b), a ^ b);
            }
        }
    }

    #[test]
    fn gf4_primitive_squares_to_alpha_plus_one() {
        // alpha = x (index 2); alpha^2 = alpha + 1 under x^2 + x + 1.
        let f = field(4);
        let alpha = 2u8;
        assert_eq!(f.mul(alpha, alpha), f.add(alpha, 1));
    }

    #[test]
    fn six_is_rejected() {
        assert_eq!(FieldSpec::new(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = field(q);
            for a in 0..q as u8 {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "inverse fails in GF({q}) at {a}");
                }
                for b in 0..q as u8 {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q as u8 {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity fails in GF({q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_large_extensions() {
        for q in [25usize, 27, 32, 49, 64] {
            let f = field(q);
            for a in 0..q as u8 {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "inverse fails in GF({q}) at {a}");
                }
                for b in 0..q as u8 {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q as u8 {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity fails in GF({q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_element_generates_group() {
        for q in [3usize, 4, 5, 8, 9, 16] {
            let f = field(q);
            let g = f.primitive_element();
            let mut seen = vec![false; q];
            let mut x = 1u8;
            for _ in 0..q - 1 {
                x = f.mul(x, g);
                seen[x as usize] = true;
            }
            assert!(
                (1..q).all(|i| seen[i]),
                "primitive element {g} does not generate GF({q})*"
            );
        }
    }

    #[test]
    fn rank_of_identity() {
        let f = field(2);
        assert_eq!(GfMatrix::identity(6, f).rank(), 6);
    }

    #[test]
    fn rank_drops_for_equal_rows() {
        let f = field(3);
        let m = GfMatrix::from_rows(&[vec![1, 2, 0], vec![1, 2, 0], vec![0, 1, 1]], f).unwrap();
        assert!(m.rank() < m.rows());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        let f = field(5);
        let m = GfMatrix::identity(4, f);
        let ns = m.nullspace_basis();
        assert_eq!((ns.rows(), ns.cols()), (4, 0));
    }

    #[test]
    fn nullspace_annihilates_and_has_full_complement_rank() {
        // fixed rank-3 matrix over GF(3)
        let f = field(3);
        let a = GfMatrix::from_rows(
            &[
                vec![1, 0, 2, 1, 0],
                vec![0, 1, 1, 2, 2],
                vec![0, 0, 1, 1, 1],
            ],
            f.clone(),
        )
        .unwrap();
        assert_eq!(a.rank(), 3);
        let b = a.nullspace_basis();
        assert_eq!((b.rows(), b.cols()), (5, 2));
        let prod = a.mat_mul(&b).unwrap();
        assert!((0..prod.rows()).all(|i| prod.row(i).iter().all(|&e| e == 0)));
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn rowspace_order_is_deterministic_with_zero_first() {
        let f = field(2);
        let a = GfMatrix::from_rows(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], f).unwrap();
        let vs = a.rowspace_enumerate(ROWSPACE_CAP).unwrap();
        assert_eq!(
            vs,
            vec![
                vec![0, 0, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![1, 1, 0, 0]
            ]
        );
    }

    #[test]
    fn rowspace_is_closed_under_addition() {
        let f = field(3);
        let a = GfMatrix::from_rows(&[vec![1, 2, 0, 1], vec![0, 1, 1, 1]], f.clone()).unwrap();
        let vs = a.rowspace_enumerate(ROWSPACE_CAP).unwrap();
        assert_eq!(vs.len(), 9);
        let set: std::collections::BTreeSet<Vec<u8>> = vs.iter().cloned().collect();
        assert_eq!(set.len(), 9, "vectors are distinct");
        for u in &vs {
            for v in &vs {
                let sum: Vec<u8> = u.iter().zip(v).map(|(&x, &y)| f.add(x, y)).collect();
                assert!(set.contains(&sum));
            }
        }
    }

    #[test]
    fn rowspace_cap_enforced() {
        let f = field(2);
        let a = GfMatrix::identity(8, f);
        assert!(matches!(
            a.rowspace_enumerate(100),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn t_independence_basics() {
        let f = field(2);
        let rows = GfMatrix::identity(4, f.clone()).row_vectors();
        assert!(is_t_independent(&rows, 4, &f));
        let dup = vec![vec![1, 0, 1], vec![1, 0, 1], vec![0, 1, 1]];
        assert!(!is_t_independent(&dup, 2, &f));
    }

    #[test]
    fn t_independence_monotone_for_nonzero_vectors() {
        let f = field(2);
        // weight-4 cyclic windows in dimension 7, all nonzero
        let vecs: Vec<Vec<u8>> = (0..7)
            .map(|s| (0..7).map(|j| u8::from((j + 7 - s) % 7 < 4)).collect())
            .collect();
        for t in (1..=3).rev() {
            if is_t_independent(&vecs, t + 1, &f) {
                assert!(is_t_independent(&vecs, t, &f));
            }
        }
        assert!(is_t_independent(&vecs, 3, &f));
    }
}
