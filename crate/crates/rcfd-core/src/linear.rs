//! Linear-algebraic grid constructions: the boxplus sum grid, linear
//! orthogonal arrays from generator matrices, the nullspace factorial
//! criterion, and the two-block polynomial construction.

use crate::array::{oa_check, rcfd_check, OaReport, OrthArray, RcDesign};
use crate::combinators::Mode;
use crate::error::{Error, Result};
use crate::gf::{t_independent_witness, FieldSpec, GfMatrix, ROWSPACE_CAP};
use std::fmt::Write as _;
use std::sync::Arc;

/// Seeds of an abelian design `L = C boxplus R`, kept for provenance
/// export next to constructed design files.
#[derive(Clone, Debug)]
pub struct AbelianWitness {
    /// C: the first column of the design.
    pub column_seed: OrthArray,
    /// R: the first row of the design.
    pub row_seed: OrthArray,
    /// Generator A with R = <A>, when R is linear.
    pub row_generator: Option<GfMatrix>,
    /// Nullspace basis of the generator.
    pub row_nullspace: Option<GfMatrix>,
}

impl AbelianWitness {
    /// JSON-like text block for sidecar files.
    pub fn to_text(&self) -> String {
        fn oa_rows(a: &OrthArray) -> String {
            let rows: Vec<String> = a
                .rows()
                .map(|r| {
                    let digits: Vec<String> = r.iter().map(|d| d.to_string()).collect();
                    format!("[{}]", digits.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        }
        fn mat_rows(m: &GfMatrix) -> String {
            let rows: Vec<String> = (0..m.rows())
                .map(|i| {
                    let digits: Vec<String> = m.row(i).iter().map(|d| d.to_string()).collect();
                    format!("[{}]", digits.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        }
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"column_seed\": {},", oa_rows(&self.column_seed));
        let _ = write!(out, "  \"row_seed\": {}", oa_rows(&self.row_seed));
        if let Some(a) = &self.row_generator {
            let _ = write!(out, ",\n  \"row_generator\": {}", mat_rows(a));
        }
        if let Some(p) = &self.row_nullspace {
            let _ = write!(out, ",\n  \"row_nullspace\": {}", mat_rows(p));
        }
        out.push_str("\n}\n");
        out
    }
}

/// The sum grid: cell (i, j) holds C_i + R_j over GF(q). Both seeds must
/// share (k, q) and start with the zero vector, so row 0 reads back R and
/// column 0 reads back C.
pub fn boxplus(c: &OrthArray, r: &OrthArray, field: &FieldSpec) -> Result<RcDesign> {
    if c.degree() != r.degree() {
        return Err(Error::DegreeMismatch(c.degree(), r.degree()));
    }
    if c.q() != r.q() || c.q() != field.q() {
        return Err(Error::DimensionMismatch("boxplus seeds over different q"));
    }
    if !c.zero_first_row() || !r.zero_first_row() {
        return Err(Error::OaInvalid(
            "boxplus seeds must have the zero vector first".into(),
        ));
    }
    let t = c.strength().min(r.strength());
    RcDesign::from_fn(c.size(), r.size(), c.degree(), c.q(), t, |i, j| {
        c.row(i)
            .iter()
            .zip(r.row(j))
            .map(|(&a, &b)| field.add(a, b))
            .collect()
    })
}

/// The rowspace of a full-row-rank generator packaged as a linear
/// OA(q^m, n, q, t). Refuses unless the columns of A are t-independent,
/// reporting the first dependent column subset.
pub fn linear_oa(a: &GfMatrix, t: usize) -> Result<OrthArray> {
    if a.rank() < a.rows() {
        return Err(Error::RankDeficient(a.rows()));
    }
    if let Some(subset) = t_independent_witness(&a.col_vectors(), t, a.field()) {
        return Err(Error::ColumnsNotTIndependent { t, subset });
    }
    let rows = a.rowspace_enumerate(ROWSPACE_CAP)?;
    OrthArray::from_rows(&rows, a.field().q(), t)
}

/// Outcome of the factorial criterion for `G boxplus <A>`.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    /// Nullspace basis of A, as used in the product.
    pub nullspace: GfMatrix,
    /// The m x (k - N) product G * A_perp.
    pub product: GfMatrix,
    /// Full-strength check of the product.
    pub report: OaReport,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.report.pass()
    }
}

/// Decide whether `G boxplus <A>` fills a factorial grid: form G * A_perp
/// and test it as an OA of full strength k - N.
pub fn abelian_check(g: &OrthArray, a: &GfMatrix) -> Result<CriterionReport> {
    let (n_rows, k) = (a.rows(), a.cols());
    if n_rows > k {
        return Err(Error::BadDimension(
            n_rows,
            k,
            "generator has more rows than columns",
        ));
    }
    if a.rank() < n_rows {
        return Err(Error::RankDeficient(n_rows));
    }
    if g.degree() != k || g.q() != a.field().q() {
        return Err(Error::DimensionMismatch("G and A disagree on degree or q"));
    }
    let nullspace = a.nullspace_basis();
    let g_mat = oa_as_matrix(g, a.field().clone())?;
    let product = g_mat.mat_mul(&nullspace)?;
    let product_oa = OrthArray::from_rows(&product.row_vectors(), g.q(), k - n_rows)?;
    let report = oa_check(&product_oa, k - n_rows)?;
    Ok(CriterionReport {
        nullspace,
        product,
        report,
    })
}

fn oa_as_matrix(a: &OrthArray, field: Arc<FieldSpec>) -> Result<GfMatrix> {
    GfMatrix::from_rows(&a.rows().map(|r| r.to_vec()).collect::<Vec<_>>(), field)
}

/// `G boxplus <A>`: a verified I_k(m, q^N, q, t) when G is an
/// OA(m, k, q, t), `<A>` is a linear OA of strength t, and the factorial
/// criterion passes.
pub fn abelian_construct(
    g: &OrthArray,
    a: &GfMatrix,
    t: usize,
    mode: Mode,
) -> Result<(RcDesign, AbelianWitness)> {
    if mode == Mode::Checked {
        let rep = oa_check(g, t)?;
        if !rep.pass() {
            return Err(Error::OaInvalid(format!(
                "G is not an OA of strength {t}: {}",
                rep.failure.unwrap()
            )));
        }
    }
    let r = linear_oa(a, t)?;
    let criterion = abelian_check(g, a)?;
    if !criterion.pass() {
        return Err(Error::OaInvalid(format!(
            "factorial criterion fails: {}",
            criterion.report.failure.unwrap()
        )));
    }
    let design = boxplus(g, &r, a.field())?;
    if mode == Mode::Checked {
        let report = rcfd_check(&design, t)?;
        if !report.pass() {
            return Err(Error::OaInvalid(format!(
                "abelian construction failed verification:\n{report}"
            )));
        }
    }
    let witness = AbelianWitness {
        column_seed: g.clone(),
        row_seed: r,
        row_generator: Some(a.clone()),
        row_nullspace: Some(criterion.nullspace.clone()),
    };
    Ok((design, witness))
}

/// Two-block construction: given A (k x M) and B (k x N) with [A|B] of
/// rank k and both row sets t-independent, coordinate r of cell
/// (row tuple x, column tuple y) is the linear form A_r . x + B_r . y.
/// Returns a verified I_k(q^M, q^N, q, t).
///
/// Rows and columns are labelled by base-q tuples in counting order, the
/// first tuple entry being the least significant digit.
pub fn polynomial_construct(a: &GfMatrix, b: &GfMatrix, t: usize, mode: Mode) -> Result<RcDesign> {
    if a.rows() != b.rows() || a.field().q() != b.field().q() {
        return Err(Error::DimensionMismatch("A and B disagree on k or q"));
    }
    let k = a.rows();
    let combined = a.hcat(b)?;
    if combined.rank() < k {
        return Err(Error::RankDeficient(k));
    }
    if let Some(subset) = t_independent_witness(&a.row_vectors(), t, a.field()) {
        return Err(Error::RowsNotTIndependent {
            side: "A",
            t,
            subset,
        });
    }
    if let Some(subset) = t_independent_witness(&b.row_vectors(), t, b.field()) {
        return Err(Error::RowsNotTIndependent {
            side: "B",
            t,
            subset,
        });
    }
    let field = a.field().clone();
    let q = field.q();
    let (big_m, big_n) = (a.cols(), b.cols());
    let m = q.pow(big_m as u32);
    let n = q.pow(big_n as u32);

    let digits = |mut idx: usize, len: usize| -> Vec<u8> {
        let mut v = vec![0u8; len];
        for slot in v.iter_mut() {
            *slot = (idx % q) as u8;
            idx /= q;
        }
        v
    };

    let design = RcDesign::from_fn(m, n, k, q, t, |i, j| {
        let x = digits(i, big_m);
        let y = digits(j, big_n);
        (0..k)
            .map(|r| {
                let mut acc = 0u8;
                for (c, &xv) in x.iter().enumerate() {
                    acc = field.add(acc, field.mul(a.get(r, c), xv));
                }
                for (c, &yv) in y.iter().enumerate() {
                    acc = field.add(acc, field.mul(b.get(r, c), yv));
                }
                acc
            })
            .collect()
    })?;
    if mode == Mode::Checked {
        let report = rcfd_check(&design, t)?;
        if !report.pass() {
            return Err(Error::OaInvalid(format!(
                "polynomial construction failed verification:\n{report}"
            )));
        }
    }
    Ok(design)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinators::full_factorial_oa;
    use crate::fixtures;

    fn gf2() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(2).unwrap())
    }

    #[test]
    fn boxplus_with_trivial_row_seed_copies_the_column() {
        let f = FieldSpec::new(2).unwrap();
        let c = full_factorial_oa(3, 2);
        let r = OrthArray::from_rows(&[vec![0, 0, 0]], 2, 0).unwrap();
        let d = boxplus(&c, &r, &f).unwrap();
        assert_eq!((d.m(), d.n()), (8, 1));
        for i in 0..8 {
            assert_eq!(d.cell(i, 0), c.row(i));
        }
    }

    #[test]
    fn boxplus_first_row_and_column_reproduce_the_seeds() {
        let f = FieldSpec::new(3).unwrap();
        let c = full_factorial_oa(2, 3);
        let r = full_factorial_oa(2, 3);
        let d = boxplus(&c, &r, &f).unwrap();
        for j in 0..d.n() {
            assert_eq!(d.cell(0, j), r.row(j));
        }
        for i in 0..d.m() {
            assert_eq!(d.cell(i, 0), c.row(i));
        }
    }

    #[test]
    fn linear_oa_from_embedded_generator() {
        // <A> for the embedded 6x8 generator is an OA(64, 8, 2, 2)
        let a = fixtures::example_generator();
        let oa = linear_oa(&a, 2).unwrap();
        assert_eq!((oa.size(), oa.degree()), (64, 8));
        assert!(oa_check(&oa, 2).unwrap().pass());
    }

    #[test]
    fn linear_oa_rejects_duplicate_tail_columns() {
        // [I | K] with two equal K columns
        let f = gf2();
        let mut rows = Vec::new();
        for i in 0..4 {
            let mut r = vec![0u8; 6];
            r[i] = 1;
            r[4] = [1, 0, 1, 1][i];
            r[5] = r[4];
            rows.push(r);
        }
        let a = GfMatrix::from_rows(&rows, f).unwrap();
        match linear_oa(&a, 2) {
            Err(Error::ColumnsNotTIndependent { t: 2, subset }) => {
                assert_eq!(subset, vec![4, 5]);
            }
            other => panic!("expected dependent columns, got {other:?}"),
        }
    }

    #[test]
    fn linear_oa_rejects_weight_one_tail_column() {
        let f = gf2();
        let mut rows = Vec::new();
        for i in 0..4 {
            let mut r = vec![0u8; 6];
            r[i] = 1;
            r[4] = [1, 1, 0, 1][i];
            r[5] = u8::from(i == 2);
            rows.push(r);
        }
        let a = GfMatrix::from_rows(&rows, f).unwrap();
        assert!(matches!(
            linear_oa(&a, 2),
            Err(Error::ColumnsNotTIndependent { .. })
        ));
    }

    #[test]
    fn linear_oa_refusal_matches_brute_force_check() {
        // over small generators: linear_oa succeeds iff the enumerated
        // rowspace passes oa_check
        for q in [2usize, 3] {
            let f = Arc::new(FieldSpec::new(q).unwrap());
            let cases: Vec<Vec<Vec<u8>>> = vec![
                vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2 % q as u8]],
                vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]],
                vec![vec![1, 0, 0, 1], vec![0, 1, 1, 1], vec![0, 0, 1, 1]],
            ];
            for rows in cases {
                let a = GfMatrix::from_rows(&rows, f.clone()).unwrap();
                if a.rank() < a.rows() {
                    continue;
                }
                let direct = a
                    .rowspace_enumerate(ROWSPACE_CAP)
                    .map(|vs| OrthArray::from_rows(&vs, q, 2).unwrap())
                    .unwrap();
                let brute = oa_check(&direct, 2).unwrap().pass();
                assert_eq!(linear_oa(&a, 2).is_ok(), brute);
            }
        }
    }

    #[test]
    fn vacuous_criterion_for_square_generator() {
        let f = gf2();
        let a = GfMatrix::identity(3, f);
        let g = full_factorial_oa(3, 2);
        let rep = abelian_check(&g, &a).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.product.cols(), 0);
    }

    #[test]
    fn criterion_rejects_unbalanced_coset_pattern() {
        // G whose rows sit in only one coset of <A>: product is constant
        let f = gf2();
        let a = GfMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]], f).unwrap();
        let g = OrthArray::from_rows(
            &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]],
            2,
            1,
        )
        .unwrap();
        let rep = abelian_check(&g, &a).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn trivial_abelian_square() {
        let f = gf2();
        let a = GfMatrix::identity(3, f);
        let g = full_factorial_oa(3, 2);
        let (d, _) = abelian_construct(&g, &a, 3, Mode::Checked).unwrap();
        assert_eq!((d.m(), d.n(), d.k()), (8, 8, 3));
        assert!(rcfd_check(&d, 3).unwrap().pass());
    }

    #[test]
    fn polynomial_construct_identity_blocks() {
        let f = gf2();
        let a = GfMatrix::identity(3, f.clone());
        let b = GfMatrix::identity(3, f);
        let d = polynomial_construct(&a, &b, 3, Mode::Checked).unwrap();
        assert_eq!((d.m(), d.n(), d.k(), d.q()), (8, 8, 3, 2));
        assert!(rcfd_check(&d, 3).unwrap().pass());
    }

    #[test]
    fn polynomial_construct_reports_dependent_rows() {
        let f = gf2();
        let a = GfMatrix::from_rows(&[vec![1, 0], vec![1, 0], vec![0, 1]], f.clone()).unwrap();
        let b = GfMatrix::identity(3, f);
        assert!(matches!(
            polynomial_construct(&a, &b, 2, Mode::Checked),
            Err(Error::RowsNotTIndependent { side: "A", .. })
        ));
    }
}
