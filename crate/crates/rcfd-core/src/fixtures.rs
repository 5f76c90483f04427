//! Embedded reference designs and arrays.
//!
//! The 12-row base designs ship in their pre-rearrangement form: a sum
//! grid whose columns already have strength 2, together with a letter grid
//! describing how entries regroup within each column to make the rows
//! strength 2 as well. [`base_fixture`] applies the regrouping on demand,
//! so both the data and the procedure stay testable.

use crate::array::{OrthArray, RcDesign};
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, GfMatrix};
use crate::strength2::{rearrange_quadruples, CellGrid, QuadruplePartition};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

// --- 9 x 9 ternary design with 4 factors, strength 2 ---------------------

const TABLE_9X9: [&str; 9] = [
    "0000 1011 2022 0112 1120 2101 0221 1202 2210",
    "0111 1122 2100 0220 1201 2212 0002 1010 2021",
    "0222 1200 2211 0001 1012 2020 0110 1121 2102",
    "1021 2002 0010 1100 2111 0122 1212 2220 0201",
    "1102 2110 0121 1211 2222 0200 1020 2001 0012",
    "1210 2221 0202 1022 2000 0011 1101 2112 0120",
    "2012 0020 1001 2121 0102 1110 2200 0211 1222",
    "2120 0101 1112 2202 0210 1221 2011 0022 1000",
    "2201 0212 1220 2010 0021 1002 2122 0100 1111",
];

// --- embedded linear-construction example: generator, seed OA, expected
//     nullspace and product --------------------------------------------------

const EXAMPLE_A: [&str; 6] = [
    "10000010", "01000001", "00100011", "00010010", "00001001", "00000111",
];

const EXAMPLE_G: [&str; 12] = [
    "00000000", "00011101", "10001110", "01000111", "10100011", "11010001", "01101000", "10110100",
    "11011010", "11101101", "01110110", "00111011",
];

const EXAMPLE_A_PERP: [&str; 8] = ["10", "01", "11", "10", "01", "11", "10", "01"];

const EXAMPLE_G_A_PERP: [&str; 12] = [
    "00", "01", "10", "01", "10", "00", "11", "00", "10", "11", "01", "11",
];

// --- OA(12, 7, 2, 2) with a quadruple partition --------------------------

const OA_12_7: [&str; 12] = [
    "1000000", "0110101", "0101110", "1011111", "1011100", "0000101", "0010010", "1110011",
    "0111000", "1101001", "1100110", "0001011",
];

// --- transposed 20 x 8 strength-2 array (stored as its 8 rows) ------------

const OA_20_8_T: [&str; 8] = [
    "11110100001000011110",
    "11000010111100101100",
    "11111111110000000000",
    "11001100100101010101",
    "11001100010010101011",
    "11100011000110011001",
    "11111000001111100000",
    "11010011000001100111",
];

// --- 12 x 8 base design with 5 factors, pre-rearrangement -----------------

const BASE_12X8: [&str; 12] = [
    "00000 10000 01000 11000 00100 10100 01100 11100",
    "00001 10001 01001 11001 00101 10101 01101 11101",
    "00110 10110 01110 11110 00010 10010 01010 11010",
    "01011 11011 00011 10011 01111 11111 00111 10111",
    "01100 11100 00100 10100 01000 11000 00000 10000",
    "01111 11111 00111 10111 01011 11011 00011 10011",
    "11001 01001 10001 00001 11101 01101 10101 00101",
    "11010 01010 10010 00010 11110 01110 10110 00110",
    "10010 00010 11010 01010 10110 00110 11110 01110",
    "10101 00101 11101 01101 10001 00001 11001 01001",
    "10111 00111 11111 01111 10011 00011 11011 01011",
    "11100 01100 10100 00100 11000 01000 10000 00000",
];

const BASE_12X8_LETTERS: [&str; 12] = [
    "ACDBDBAC", "BDCACABD", "CABDBDCA", "DBACACDB", "EGFHHFGE", "FHEGGEHF", "GEHFFHEG", "HFGEEGFH",
    "IKJLJLIK", "JLIKIKJL", "KILJLJKI", "LJKIKILJ",
];

// --- 12 x 12 base design with 4 factors, pre-rearrangement ----------------

const BASE_12X12_BLOCK: [&str; 12] = [
    "0000 0001 1111 1110",
    "0110 0111 1001 1000",
    "1011 1010 0100 0101",
    "1101 1100 0010 0011",
    "0000 0001 1111 1110",
    "0111 0110 1000 1001",
    "0011 0010 1100 1101",
    "0101 0100 1010 1011",
    "1001 1000 0110 0111",
    "1110 1111 0001 0000",
    "1010 1011 0101 0100",
    "1100 1101 0011 0010",
];

const BASE_12X12_LETTERS: [&str; 12] = [
    "ABCDEFGHIJKL",
    "JIABBAEFFEIJ",
    "BADCFEHGJILK",
    "DCBAHGFELKJI",
    "LKKLDCCDHGGH",
    "HGGHLKKLDCCD",
    "CDIJGHABKLEF",
    "IJJIABBAEFFE",
    "KLEFCDIJGHAB",
    "EFFEIJJIABBA",
    "GHLKKLDCCDHG",
    "FEHGJILKBADC",
];

/// The rearranged 12 x 12 design, stored verbatim as the regression target
/// for the regrouping procedure.
const REARRANGED_12X12: [&str; 12] = [
    "0000 1010 1001 0011 0101 0111 1100 1011 1110 1101 0110 0000",
    "0110 0100 1010 1101 1100 1111 0001 0111 1011 0001 0010 1000",
    "1011 0001 0010 1000 0110 0100 1010 1101 1100 1111 0001 0111",
    "1101 0010 0100 1110 0000 1000 0101 1110 0111 1011 0011 1001",
    "0000 1000 0101 1110 0111 1011 0011 1001 1101 0010 0100 1110",
    "0111 1011 0011 1001 1101 0010 0100 1110 0000 1000 0101 1110",
    "0011 1100 1111 0101 1001 0001 1111 0100 1010 0110 1000 0010",
    "0101 0111 1100 1011 1110 1101 0110 0000 0000 1010 1001 0011",
    "1001 0001 1111 0100 1010 0110 1000 0010 0011 1100 1111 0101",
    "1110 1101 0110 0000 0000 1010 1001 0011 0101 0111 1100 1011",
    "1010 0110 1000 0010 0011 1100 1111 0101 1001 0001 1111 0100",
    "1100 1111 0001 0111 1011 0001 0010 1000 0110 0100 1010 1101",
];

// --- 12 x 16 base design with 6 factors, pre-rearrangement ----------------

const BASE_12X16: [&str; 12] = [
    "000000 100000 010000 001000 000100 001100 010100 011000 101000 100100 110000 011100 101100 110100 111000 111100",
    "110101 010101 100101 111101 110001 111001 100001 101101 011101 010001 000101 101001 011001 000001 001101 001001",
    "110010 010010 100010 111010 110110 111110 100110 101010 011010 010110 000010 101110 011110 000110 001010 001110",
    "000011 100011 010011 001011 000111 001111 010111 011011 101011 100111 110011 011111 101111 110111 111011 111111",
    "001100 101100 011100 000100 001000 000000 011000 010100 100100 101000 111100 010000 100000 111000 110100 110000",
    "010101 110101 000101 011101 010001 011001 000001 001101 111101 110001 100101 001001 111001 100001 101101 101001",
    "011110 111110 001110 010110 011010 010010 001010 000110 110110 111010 101110 000010 110010 101010 100110 100010",
    "011011 111011 001011 010011 011111 010111 001111 000011 110011 111111 101011 000111 110111 101111 100011 100111",
    "111000 011000 101000 110000 111100 110100 101100 100000 010000 011100 001000 100100 010100 001100 000000 000100",
    "101001 001001 111001 100001 101101 100101 111101 110001 000001 001101 011001 110101 000101 011101 010001 010101",
    "100110 000110 110110 101110 100010 101010 110010 111110 001110 000010 010110 111010 001010 010010 011110 011010",
    "101111 001111 111111 100111 101011 100011 111011 110111 000111 001011 011111 110011 000011 011011 010111 010011",
];

const BASE_12X16_LETTERS: [&str; 12] = [
    "ABCDADCBCBDBCDAA",
    "BADCBCDADACADCBB",
    "CDABCBADADBDABCC",
    "DCBADABCBCACBADD",
    "EEHFGHFGFGHEHFGE",
    "FHEEHGGFGFGHEEHF",
    "GFGHEFEHEHFFGHEG",
    "HGFGFEHEHEEGFGFH",
    "IJKJKLILILLJKJKI",
    "JIILLJKKKKJIILLJ",
    "KLLIIKJJJJKLLIIK",
    "LKJKJILILIIKJKJL",
];

// --- worked rearrangement template blocks (dimension 5 symbols) -----------

const TEMPLATE_H: [&str; 4] = [
    "1000000 1011100 0110100 0101100 0101000 0110000 1011000 1000100",
    "1011101 1000001 0101001 0110001 0110101 0101101 1000101 1011001",
    "0110110 0101010 1000010 1011010 1011110 1000110 0101110 0110010",
    "0101111 0110011 1011011 1000011 1000111 1011111 0110111 0101011",
];

const TEMPLATE_H_PRIME: [&str; 4] = [
    "0111100 0100000 1001000 1010000 1010100 1001100 0100100 0111000",
    "0100001 0111101 1010101 1001101 1001001 1010001 0111001 0100101",
    "1001010 1010110 0111110 0100110 0100010 0111010 1010010 1001110",
    "1010011 1001111 0100111 0111111 0111011 0100011 1001011 1010111",
];

// ---------------------------------------------------------------------------

fn parse_bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

fn parse_grid(rows: &[&str]) -> CellGrid {
    rows.iter()
        .map(|r| r.split_whitespace().map(parse_bits).collect())
        .collect()
}

fn grid_design(rows: &[&str], q: usize, t: usize) -> RcDesign {
    let grid = parse_grid(rows);
    let (m, n, k) = (grid.len(), grid[0].len(), grid[0][0].len());
    RcDesign::from_fn(m, n, k, q, t, |i, j| grid[i][j].clone()).expect("embedded grid is valid")
}

fn oa_from_strs(rows: &[&str], q: usize, t: usize) -> OrthArray {
    let parsed: Vec<Vec<u8>> = rows.iter().map(|s| parse_bits(s)).collect();
    OrthArray::from_rows(&parsed, q, t).expect("embedded array is valid")
}

fn gf2_matrix(rows: &[&str]) -> GfMatrix {
    let field = Arc::new(FieldSpec::new(2).unwrap());
    let parsed: Vec<Vec<u8>> = rows.iter().map(|s| parse_bits(s)).collect();
    GfMatrix::from_rows(&parsed, field).expect("embedded matrix is valid")
}

/// The embedded I_4(9, 9, 3, 2).
pub fn table1() -> RcDesign {
    grid_design(&TABLE_9X9, 3, 2)
}

/// The embedded 6 x 8 binary generator [I | K].
pub fn example_generator() -> GfMatrix {
    gf2_matrix(&EXAMPLE_A)
}

/// The embedded OA(12, 8, 2, 2) seed used with [`example_generator`].
pub fn example_seed_oa() -> OrthArray {
    oa_from_strs(&EXAMPLE_G, 2, 2)
}

/// The expected 8 x 2 nullspace basis of [`example_generator`].
pub fn example_nullspace() -> GfMatrix {
    gf2_matrix(&EXAMPLE_A_PERP)
}

/// The expected 12 x 2 product of seed and nullspace.
pub fn example_product() -> GfMatrix {
    gf2_matrix(&EXAMPLE_G_A_PERP)
}

/// The embedded OA(12, 7, 2, 2) whose rows split into three quadruples.
pub fn oa_12_7() -> OrthArray {
    oa_from_strs(&OA_12_7, 2, 2)
}

/// Quadruple partition of [`oa_12_7`]: consecutive blocks of four rows.
pub fn oa_12_7_partition() -> QuadruplePartition {
    QuadruplePartition {
        groups: vec![[0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11]],
    }
}

/// The embedded OA(20, 8, 2, 2), stored transposed.
pub fn oa_20_8() -> OrthArray {
    let cols: Vec<Vec<u8>> = OA_20_8_T.iter().map(|s| parse_bits(s)).collect();
    let rows: Vec<Vec<u8>> = (0..20)
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect();
    OrthArray::from_rows(&rows, 2, 2).expect("embedded array is valid")
}

/// Worked 4 x 8 rearrangement template blocks in dimension 5 + 2.
pub fn template_example_blocks() -> (CellGrid, CellGrid) {
    (parse_grid(&TEMPLATE_H), parse_grid(&TEMPLATE_H_PRIME))
}

/// The expected rearranged 12 x 12 design.
pub fn rearranged_12x12() -> RcDesign {
    grid_design(&REARRANGED_12X12, 2, 2)
}

// ---------------------------------------------------------------------------
// Regrouping and fixture access
// ---------------------------------------------------------------------------

/// Regroup entries within each column so that same-letter entries share a
/// row; the class holding the column-0 entry of original row i becomes
/// row i, which keeps the first column fixed.
fn regroup(values: &[&str], letters: &[&str], q: usize, t: usize) -> Result<RcDesign> {
    let grid = parse_grid(values);
    let (m, n, k) = (grid.len(), grid[0].len(), grid[0][0].len());
    let letter_grid: Vec<&[u8]> = letters.iter().map(|s| s.as_bytes()).collect();
    let mut dest = [usize::MAX; 26];
    for (i, row) in letter_grid.iter().enumerate() {
        dest[(row[0] - b'A') as usize] = i;
    }
    let mut cells = vec![0u8; m * n * k];
    for j in 0..n {
        let mut seen = vec![false; m];
        for i in 0..m {
            let d = dest[(letter_grid[i][j] - b'A') as usize];
            if d == usize::MAX || seen[d] {
                return Err(Error::PartitionInvalid(format!(
                    "column {j} letters are not a transversal"
                )));
            }
            seen[d] = true;
            let base = (d * n + j) * k;
            cells[base..base + k].copy_from_slice(&grid[i][j]);
        }
    }
    RcDesign::new(m, n, k, q, t, cells)
}

/// Names of the embedded base designs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureName {
    /// I_5(12, 8, 2, 2)
    I5x12x8,
    /// I_4(12, 12, 2, 2)
    I4x12x12,
    /// I_6(12, 16, 2, 2)
    I6x12x16,
    /// I_7(12, 32, 2, 2)
    I7x12x32,
}

impl FixtureName {
    pub fn all() -> [FixtureName; 4] {
        [
            FixtureName::I5x12x8,
            FixtureName::I4x12x12,
            FixtureName::I6x12x16,
            FixtureName::I7x12x32,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureName::I5x12x8 => "I5_12_8",
            FixtureName::I4x12x12 => "I4_12_12",
            FixtureName::I6x12x16 => "I6_12_16",
            FixtureName::I7x12x32 => "I7_12_32",
        }
    }

    /// Parameters (k, m, n) of the fixture; all are binary strength 2.
    pub fn params(&self) -> (usize, usize, usize) {
        match self {
            FixtureName::I5x12x8 => (5, 12, 8),
            FixtureName::I4x12x12 => (4, 12, 12),
            FixtureName::I6x12x16 => (6, 12, 16),
            FixtureName::I7x12x32 => (7, 12, 32),
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<FixtureName> {
        match s {
            "I5_12_8" => Ok(FixtureName::I5x12x8),
            "I4_12_12" => Ok(FixtureName::I4x12x12),
            "I6_12_16" => Ok(FixtureName::I6x12x16),
            "I7_12_32" => Ok(FixtureName::I7x12x32),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Pre-rearrangement sum grid and letter grid for the three letter-coded
/// fixtures (the fourth is produced by the quadruple rearrangement). The
/// 12 x 12 grid tiles its 12 x 4 block three times.
pub(crate) fn pre_rearrangement(name: FixtureName) -> Option<(Vec<String>, Vec<&'static str>)> {
    let own = |rows: &[&str]| rows.iter().map(|s| s.to_string()).collect::<Vec<String>>();
    match name {
        FixtureName::I5x12x8 => Some((own(&BASE_12X8), BASE_12X8_LETTERS.to_vec())),
        FixtureName::I4x12x12 => Some((
            BASE_12X12_BLOCK
                .iter()
                .map(|row| format!("{row} {row} {row}"))
                .collect(),
            BASE_12X12_LETTERS.to_vec(),
        )),
        FixtureName::I6x12x16 => Some((own(&BASE_12X16), BASE_12X16_LETTERS.to_vec())),
        FixtureName::I7x12x32 => None,
    }
}

/// Fetch an embedded base design by name, applying the stored
/// rearrangement. When the `RCFD_FIXTURES` environment variable names a
/// directory containing `<name>.rcfd`, that file takes precedence.
pub fn base_fixture(name: FixtureName) -> Result<RcDesign> {
    if let Ok(dir) = std::env::var("RCFD_FIXTURES") {
        let path = std::path::Path::new(&dir).join(format!("{}.rcfd", name.as_str()));
        if path.is_file() {
            let text = std::fs::read_to_string(path)?;
            return crate::textio::parse_design(&text);
        }
    }
    match name {
        FixtureName::I7x12x32 => rearrange_quadruples(
            &oa_12_7(),
            &oa_12_7_partition(),
            crate::combinators::Mode::Fast,
        ),
        _ => {
            let (values, letters) = pre_rearrangement(name).expect("letter-coded fixture");
            let value_refs: Vec<&str> = values.iter().map(|s| s.as_str()).collect();
            regroup(&value_refs, &letters, 2, 2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::{oa_check, rcfd_check};
    use crate::combinators::Mode;
    use crate::gf::ROWSPACE_CAP;
    use crate::linear::boxplus;

    #[test]
    fn table1_is_a_verified_design() {
        let d = table1();
        assert_eq!((d.m(), d.n(), d.k(), d.q()), (9, 9, 4, 3));
        assert!(rcfd_check(&d, 2).unwrap().pass());
    }

    #[test]
    fn fixtures_verify_at_strength_2() {
        for name in FixtureName::all() {
            let d = base_fixture(name).unwrap();
            let (k, m, n) = name.params();
            assert_eq!((d.k(), d.m(), d.n()), (k, m, n), "{name}");
            assert!(rcfd_check(&d, 2).unwrap().pass(), "{name} fails");
        }
    }

    #[test]
    fn regrouped_12x12_matches_the_stored_array() {
        let d = base_fixture(FixtureName::I4x12x12).unwrap();
        assert_eq!(d, rearranged_12x12());
    }

    #[test]
    fn base_12x8_is_a_column_seeded_sum_grid() {
        // column 0 is an OA(12, 5, 2, 2); the full grid is that seed
        // boxplus the rowspace of [I_3 | 0]
        let grid = parse_grid(&BASE_12X8);
        let c_rows: Vec<Vec<u8>> = grid.iter().map(|r| r[0].clone()).collect();
        let c = OrthArray::from_rows(&c_rows, 2, 2).unwrap();
        assert!(oa_check(&c, 2).unwrap().pass());

        let field = Arc::new(FieldSpec::new(2).unwrap());
        let gen = GfMatrix::from_rows(
            &[
                vec![1, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0],
            ],
            field.clone(),
        )
        .unwrap();
        let r_rows = gen.rowspace_enumerate(ROWSPACE_CAP).unwrap();
        let r = OrthArray::from_rows(&r_rows, 2, 2).unwrap();
        let sum = boxplus(&c, &r, &field).unwrap();
        for (i, row) in grid.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                assert_eq!(sum.cell(i, j), &cell[..], "cell ({i},{j})");
            }
        }
    }

    #[test]
    fn base_12x16_is_a_sum_grid_of_its_seeds() {
        let grid = parse_grid(&BASE_12X16);
        let c_rows: Vec<Vec<u8>> = grid.iter().map(|r| r[0].clone()).collect();
        let r_rows: Vec<Vec<u8>> = grid[0].clone();
        let field = FieldSpec::new(2).unwrap();
        let c = OrthArray::from_rows(&c_rows, 2, 2).unwrap();
        // the row seed is not itself strength 2; only the columns of the
        // pre-rearrangement grid are
        let r = OrthArray::from_rows(&r_rows, 2, 0).unwrap();
        assert!(oa_check(&c, 2).unwrap().pass());
        let sum = boxplus(&c, &r, &field).unwrap();
        for (i, row) in grid.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                assert_eq!(sum.cell(i, j), &cell[..], "cell ({i},{j})");
            }
        }
    }

    #[test]
    fn embedded_oa_20_8_passes() {
        let a = oa_20_8();
        assert_eq!((a.size(), a.degree()), (20, 8));
        assert!(oa_check(&a, 2).unwrap().pass());
    }

    #[test]
    fn fixture_env_override() {
        let dir = std::env::temp_dir().join("rcfd-fixture-override-test");
        std::fs::create_dir_all(&dir).unwrap();
        // write a tiny (invalid-parameters) design under a fixture name
        let tiny = RcDesign::from_fn(1, 1, 1, 2, 1, |_, _| vec![1]).unwrap();
        std::fs::write(dir.join("I5_12_8.rcfd"), crate::textio::write_design(&tiny)).unwrap();
        std::env::set_var("RCFD_FIXTURES", &dir);
        let got = base_fixture(FixtureName::I5x12x8).unwrap();
        std::env::remove_var("RCFD_FIXTURES");
        std::fs::remove_dir_all(&dir).ok();
        assert_eq!(got, tiny);
        // without the override the real fixture comes back
        let real = base_fixture(FixtureName::I5x12x8).unwrap();
        assert_eq!((real.m(), real.n()), (12, 8));
    }

    #[test]
    fn i7_fixture_comes_from_the_quadruple_rearrangement() {
        let d = base_fixture(FixtureName::I7x12x32).unwrap();
        let direct = rearrange_quadruples(&oa_12_7(), &oa_12_7_partition(), Mode::Checked).unwrap();
        assert_eq!(d, direct);
    }
}
