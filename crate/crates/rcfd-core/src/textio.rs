//! Text formats.
//!
//! Designs: header line `RCFD k m n q t`, then m lines each holding n
//! whitespace-separated entries; an entry is a k-character base-q string
//! with the most significant coordinate first. Orthogonal arrays: header
//! `OA N k q t`, then N lines each holding one k-character entry. Lines
//! starting with `#` are comments. Round trips are bit-exact.
//!
//! Hadamard matrices use the Sloane library layout: one line per row made
//! of `+` and `-` characters with no separators; trailing whitespace is
//! tolerated.

use crate::array::{OrthArray, RcDesign};
use crate::error::{Error, Result};
use crate::hadamard::HadamardMatrix;

/// Comment emitted at the top of every file this crate writes.
pub const FORMAT_HEADER: &str = "# rcfd-kit format v1";

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

fn digit_char(v: u8) -> char {
    DIGITS[v as usize] as char
}

fn digit_value(c: char, q: usize, line: usize) -> Result<u8> {
    let v = DIGITS
        .iter()
        .position(|&d| d as char == c)
        .ok_or(Error::Parse {
            line,
            msg: format!("invalid digit `{c}`"),
        })?;
    if v >= q {
        return Err(Error::Parse {
            line,
            msg: format!("digit `{c}` out of range for q = {q}"),
        });
    }
    Ok(v as u8)
}

fn entry_string(v: &[u8]) -> String {
    v.iter().map(|&d| digit_char(d)).collect()
}

fn parse_entry(s: &str, k: usize, q: usize, line: usize) -> Result<Vec<u8>> {
    if s.chars().count() != k {
        return Err(Error::Parse {
            line,
            msg: format!("entry `{s}` does not have {k} characters"),
        });
    }
    s.chars().map(|c| digit_value(c, q, line)).collect()
}

/// Serialize a design.
pub fn write_design(d: &RcDesign) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    out.push_str(&format!(
        "RCFD {} {} {} {} {}\n",
        d.k(),
        d.m(),
        d.n(),
        d.q(),
        d.t()
    ));
    for i in 0..d.m() {
        let row: Vec<String> = (0..d.n()).map(|j| entry_string(d.cell(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Serialize an orthogonal array.
pub fn write_oa(a: &OrthArray) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    out.push_str(&format!(
        "OA {} {} {} {}\n",
        a.size(),
        a.degree(),
        a.q(),
        a.strength()
    ));
    for row in a.rows() {
        out.push_str(&entry_string(row));
        out.push('\n');
    }
    out
}

/// Either kind of array, auto-detected by [`parse_any`].
pub enum Parsed {
    Design(RcDesign),
    Array(OrthArray),
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next line that is neither blank nor a comment, with its 1-based number.
    fn next_data(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                return Some((i + 1, trimmed));
            }
        }
        None
    }
}

fn parse_header_numbers(fields: &[&str], line: usize) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected integer, got `{f}`"),
            })
        })
        .collect()
}

/// Parse a design in the `RCFD` format.
pub fn parse_design(text: &str) -> Result<RcDesign> {
    match parse_any(text)? {
        Parsed::Design(d) => Ok(d),
        Parsed::Array(_) => Err(Error::Parse {
            line: 1,
            msg: "expected an RCFD header, found OA".into(),
        }),
    }
}

/// Parse an orthogonal array in the `OA` format.
pub fn parse_oa(text: &str) -> Result<OrthArray> {
    match parse_any(text)? {
        Parsed::Array(a) => Ok(a),
        Parsed::Design(_) => Err(Error::Parse {
            line: 1,
            msg: "expected an OA header, found RCFD".into(),
        }),
    }
}

/// Parse either format, keyed on the header tag.
pub fn parse_any(text: &str) -> Result<Parsed> {
    let mut lines = Lines::new(text);
    let (hline, header) = lines.next_data().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    match fields.first() {
        Some(&"RCFD") => {
            if fields.len() != 6 {
                return Err(Error::Parse {
                    line: hline,
                    msg: "RCFD header needs 5 parameters: k m n q t".into(),
                });
            }
            let nums = parse_header_numbers(&fields[1..], hline)?;
            let (k, m, n, q, t) = (nums[0], nums[1], nums[2], nums[3], nums[4]);
            let mut cells = Vec::with_capacity(m * n * k);
            for _ in 0..m {
                let (lno, row) = lines.next_data().ok_or(Error::Parse {
                    line: hline,
                    msg: format!("expected {m} design rows"),
                })?;
                let entries: Vec<&str> = row.split_whitespace().collect();
                if entries.len() != n {
                    return Err(Error::Parse {
                        line: lno,
                        msg: format!("expected {n} entries, found {}", entries.len()),
                    });
                }
                for e in entries {
                    cells.extend(parse_entry(e, k, q, lno)?);
                }
            }
            Ok(Parsed::Design(RcDesign::new(m, n, k, q, t, cells)?))
        }
        Some(&"OA") => {
            if fields.len() != 5 {
                return Err(Error::Parse {
                    line: hline,
                    msg: "OA header needs 4 parameters: N k q t".into(),
                });
            }
            let nums = parse_header_numbers(&fields[1..], hline)?;
            let (size, k, q, t) = (nums[0], nums[1], nums[2], nums[3]);
            let mut rows = Vec::with_capacity(size);
            for _ in 0..size {
                let (lno, row) = lines.next_data().ok_or(Error::Parse {
                    line: hline,
                    msg: format!("expected {size} array rows"),
                })?;
                rows.push(parse_entry(row.trim(), k, q, lno)?);
            }
            Ok(Parsed::Array(OrthArray::from_rows(&rows, q, t)?))
        }
        _ => Err(Error::Parse {
            line: hline,
            msg: "unknown header; expected `RCFD ...` or `OA ...`".into(),
        }),
    }
}

/// Serialize a Hadamard matrix in Sloane `+`/`-` row format.
pub fn write_hadamard(h: &HadamardMatrix) -> String {
    let mut out = String::new();
    for i in 0..h.order() {
        for j in 0..h.order() {
            out.push(if h.get(i, j) > 0 { '+' } else { '-' });
        }
        out.push('\n');
    }
    out
}

/// Parse a Hadamard matrix in Sloane `+`/`-` row format. Validates the
/// orthogonality equation.
pub fn parse_hadamard(text: &str) -> Result<HadamardMatrix> {
    let mut rows: Vec<Vec<i8>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim_end();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::with_capacity(trimmed.len());
        for c in trimmed.chars() {
            match c {
                '+' | '1' => row.push(1),
                '-' | '0' => row.push(-1),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("invalid Hadamard character `{c}`"),
                    })
                }
            }
        }
        rows.push(row);
    }
    let order = rows.len();
    if rows.iter().any(|r| r.len() != order) {
        return Err(Error::Parse {
            line: 1,
            msg: "Hadamard matrix must be square".into(),
        });
    }
    HadamardMatrix::new(rows.concat(), order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn design_round_trip_is_bit_exact() {
        let d = RcDesign::from_fn(4, 4, 2, 2, 2, |i, j| {
            vec![(i % 2) as u8, ((i / 2 + j) % 2) as u8]
        })
        .unwrap();
        let text = write_design(&d);
        let back = parse_design(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(write_design(&back), text);
    }

    #[test]
    fn oa_round_trip_and_autodetect() {
        let a =
            OrthArray::from_rows(&[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]], 2, 2).unwrap();
        let text = write_oa(&a);
        match parse_any(&text).unwrap() {
            Parsed::Array(b) => assert_eq!(b, a),
            _ => panic!("expected OA"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# note\n\nRCFD 1 2 2 3 1\n# row comment\n0 1\n2 0\n";
        let d = parse_design(text).unwrap();
        assert_eq!(d.cell(1, 0), &[2]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "RCFD 2 2 2 2 1\n00 01\n00 0x\n";
        match parse_design(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => {
                let _ = other.map(|_| ());
                panic!("expected parse error at line 3")
            }
        }
    }

    #[test]
    fn large_alphabet_entries() {
        let d = RcDesign::from_fn(1, 36, 1, 36, 1, |_, j| vec![j as u8]).unwrap();
        let text = write_design(&d);
        assert!(text.contains('z'));
        assert_eq!(parse_design(&text).unwrap(), d);
    }
}
