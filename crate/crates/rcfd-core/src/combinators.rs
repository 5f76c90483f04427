//! Strength-preserving combinators: coordinate projection, row/column
//! gluing, the Kronecker-style level product, and dimension blowup.
//!
//! In [`Mode::Checked`] (the default everywhere in this crate) every
//! combinator re-verifies its output with [`rcfd_check`] before returning
//! it; [`Mode::Fast`] trusts the composition.

use crate::array::{oa_check, rcfd_check, OrthArray, RcDesign};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linear::boxplus;

/// Whether combinator outputs are re-verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Checked,
    Fast,
}

/// Gluing axis for [`glue`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Columns,
}

fn verified(d: RcDesign, t: usize, mode: Mode) -> Result<RcDesign> {
    if mode == Mode::Checked {
        let report = rcfd_check(&d, t)?;
        if !report.pass() {
            return Err(Error::OaInvalid(format!(
                "combinator output failed verification:\n{report}"
            )));
        }
    }
    Ok(d)
}

/// Restrict every cell to its first k' coordinates. The result has
/// strength min(t, k').
pub fn project(d: &RcDesign, k_prime: usize, mode: Mode) -> Result<RcDesign> {
    if k_prime == 0 || k_prime > d.k() {
        return Err(Error::BadDimension(d.m(), d.n(), "projection dimension"));
    }
    let t = d.t().min(k_prime);
    let out = RcDesign::from_fn(d.m(), d.n(), k_prime, d.q(), t, |i, j| {
        d.cell(i, j)[..k_prime].to_vec()
    })?;
    verified(out, t, mode)
}

/// Stack two designs along the given axis. Both must agree on (k, q, t)
/// and on the non-glued dimension.
pub fn glue(d1: &RcDesign, d2: &RcDesign, axis: Axis, mode: Mode) -> Result<RcDesign> {
    if d1.q() != d2.q() {
        return Err(Error::DimensionMismatch("glue operands have different q"));
    }
    if d1.k() != d2.k() {
        return Err(Error::DegreeMismatch(d1.k(), d2.k()));
    }
    if d1.t() != d2.t() {
        return Err(Error::StrengthMismatch(d1.t(), d2.t()));
    }
    let out = match axis {
        Axis::Rows => {
            if d1.n() != d2.n() {
                return Err(Error::DimensionMismatch("glue along rows needs equal n"));
            }
            RcDesign::from_fn(d1.m() + d2.m(), d1.n(), d1.k(), d1.q(), d1.t(), |i, j| {
                if i < d1.m() {
                    d1.cell(i, j).to_vec()
                } else {
                    d2.cell(i - d1.m(), j).to_vec()
                }
            })?
        }
        Axis::Columns => {
            if d1.m() != d2.m() {
                return Err(Error::DimensionMismatch("glue along columns needs equal m"));
            }
            RcDesign::from_fn(d1.m(), d1.n() + d2.n(), d1.k(), d1.q(), d1.t(), |i, j| {
                if j < d1.n() {
                    d1.cell(i, j).to_vec()
                } else {
                    d2.cell(i, j - d1.n()).to_vec()
                }
            })?
        }
    };
    verified(out, d1.t(), mode)
}

/// Level product: an mm' x nn' design over q*q' levels. Cell
/// (x*m' + x', y*n' + y') holds q' * D(x, y) + D'(x', y') coordinatewise
/// over the integers.
pub fn kron(d1: &RcDesign, d2: &RcDesign, mode: Mode) -> Result<RcDesign> {
    if d1.k() != d2.k() {
        return Err(Error::DegreeMismatch(d1.k(), d2.k()));
    }
    if d1.t() != d2.t() {
        return Err(Error::StrengthMismatch(d1.t(), d2.t()));
    }
    let (q1, q2) = (d1.q(), d2.q());
    if q1 * q2 > 255 {
        return Err(Error::ParametersOutOfRange(format!(
            "product level count {} exceeds 255",
            q1 * q2
        )));
    }
    let out = RcDesign::from_fn(
        d1.m() * d2.m(),
        d1.n() * d2.n(),
        d1.k(),
        q1 * q2,
        d1.t(),
        |i, j| {
            let (x, x2) = (i / d2.m(), i % d2.m());
            let (y, y2) = (j / d2.n(), j % d2.n());
            d1.cell(x, y)
                .iter()
                .zip(d2.cell(x2, y2))
                .map(|(&a, &b)| (q2 as u8) * a + b)
                .collect()
        },
    )?;
    verified(out, d1.t(), mode)
}

/// Expand each cell into an m' x n' block of copies (the level product
/// with the all-zero single-level design).
pub fn blowup(d: &RcDesign, m_prime: usize, n_prime: usize, mode: Mode) -> Result<RcDesign> {
    if m_prime == 0 || n_prime == 0 {
        return Err(Error::ParametersOutOfRange(
            "blowup factors must be positive".into(),
        ));
    }
    if m_prime == 1 && n_prime == 1 {
        return Ok(d.clone());
    }
    let out = RcDesign::from_fn(
        d.m() * m_prime,
        d.n() * n_prime,
        d.k(),
        d.q(),
        d.t(),
        |i, j| d.cell(i / m_prime, j / n_prime).to_vec(),
    )?;
    verified(out, d.t(), mode)
}

/// I_k(m, q^k, q, t) from an OA(m, k, q, t) with zero first row: every row
/// of the result is a full factorial.
pub fn full_row_design(c: &OrthArray, mode: Mode) -> Result<RcDesign> {
    if !c.zero_first_row() {
        return Err(Error::OaInvalid(
            "column seed must have the zero vector first".into(),
        ));
    }
    if mode == Mode::Checked {
        let rep = oa_check(c, c.strength())?;
        if !rep.pass() {
            return Err(Error::OaInvalid(format!(
                "column seed is not an OA of strength {}: {}",
                c.strength(),
                rep.failure.unwrap()
            )));
        }
    }
    let field = FieldSpec::new(c.q())?;
    let r = full_factorial_oa(c.degree(), c.q());
    let out = boxplus(c, &r, &field)?;
    verified(out, c.strength(), mode)
}

/// All q^k vectors in counting order (coordinate 0 is the least
/// significant digit, matching rowspace enumeration of the identity).
pub fn full_factorial_oa(k: usize, q: usize) -> OrthArray {
    let total = q.pow(k as u32);
    let rows: Vec<Vec<u8>> = (0..total)
        .map(|idx| {
            let mut v = vec![0u8; k];
            let mut rest = idx;
            for slot in v.iter_mut() {
                *slot = (rest % q) as u8;
                rest /= q;
            }
            v
        })
        .collect();
    OrthArray::from_rows(&rows, q, k).expect("factorial rows are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn project_identity_and_verified_examples() {
        let t1 = fixtures::table1();
        let same = project(&t1, 4, Mode::Checked).unwrap();
        assert_eq!(same, t1);
        let p3 = project(&t1, 3, Mode::Checked).unwrap();
        assert_eq!((p3.k(), p3.m(), p3.n()), (3, 9, 9));
        assert!(rcfd_check(&p3, 2).unwrap().pass());
    }

    #[test]
    fn project_appendix_fixture() {
        let d = fixtures::base_fixture(fixtures::FixtureName::I6x12x16).unwrap();
        let p = project(&d, 5, Mode::Checked).unwrap();
        assert!(rcfd_check(&p, 2).unwrap().pass());
    }

    #[test]
    fn glue_mismatched_q_is_rejected() {
        let a = full_row_design(&full_factorial_oa(2, 2), Mode::Checked).unwrap();
        let b = full_row_design(&full_factorial_oa(2, 3), Mode::Checked).unwrap();
        assert!(matches!(
            glue(&a, &b, Axis::Rows, Mode::Checked),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn self_glue_doubles_columns() {
        let d = full_row_design(&full_factorial_oa(2, 2), Mode::Checked).unwrap();
        let g = glue(&d, &d, Axis::Columns, Mode::Checked).unwrap();
        assert_eq!((g.m(), g.n()), (4, 8));
        assert!(rcfd_check(&g, 2).unwrap().pass());
    }

    #[test]
    fn kron_of_binary_and_ternary_squares() {
        let d2 = full_row_design(&full_factorial_oa(2, 2), Mode::Checked).unwrap();
        let d3 = full_row_design(&full_factorial_oa(2, 3), Mode::Checked).unwrap();
        let p = kron(&d2, &d3, Mode::Checked).unwrap();
        assert_eq!((p.m(), p.n(), p.q()), (36, 36, 6));
        assert!(rcfd_check(&p, 2).unwrap().pass());
    }

    #[test]
    fn kron_with_single_level_design_is_blowup() {
        let d = full_row_design(&full_factorial_oa(2, 2), Mode::Checked).unwrap();
        let ones = RcDesign::from_fn(2, 3, 2, 1, 2, |_, _| vec![0, 0]).unwrap();
        let k = kron(&d, &ones, Mode::Fast).unwrap();
        let b = blowup(&d, 2, 3, Mode::Checked).unwrap();
        assert_eq!(k, b);
    }

    #[test]
    fn blowup_identity() {
        let d = full_row_design(&full_factorial_oa(2, 2), Mode::Checked).unwrap();
        assert_eq!(blowup(&d, 1, 1, Mode::Checked).unwrap(), d);
    }

    #[test]
    fn full_row_design_from_factorial_seeds() {
        // all 8 binary 3-vectors: I_3(8, 8, 2, 3)
        let d = full_row_design(&full_factorial_oa(3, 2), Mode::Checked).unwrap();
        assert_eq!((d.m(), d.n(), d.k()), (8, 8, 3));
        assert!(rcfd_check(&d, 3).unwrap().pass());
    }

    #[test]
    fn full_row_design_rejects_non_oa() {
        let rows = vec![vec![0, 0], vec![0, 1], vec![0, 1], vec![1, 1]];
        let bad = OrthArray::from_rows(&rows, 2, 2).unwrap();
        assert!(matches!(
            full_row_design(&bad, Mode::Checked),
            Err(Error::OaInvalid(_))
        ));
    }

    #[test]
    fn glue_then_project_commutes_with_project_then_glue() {
        let t1 = fixtures::table1();
        let glued_then = project(
            &glue(&t1, &t1, Axis::Rows, Mode::Fast).unwrap(),
            3,
            Mode::Fast,
        )
        .unwrap();
        let p = project(&t1, 3, Mode::Fast).unwrap();
        let then_glued = glue(&p, &p, Axis::Rows, Mode::Fast).unwrap();
        assert_eq!(glued_then, then_glued);
    }
}
