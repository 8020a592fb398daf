use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, GeneratorMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedCode {
    C1,
    C2,
    C3,
    Hexacode18,
    Golay24,
}

impl NamedCode {
    pub const ALL: [NamedCode; 5] = [
        NamedCode::C1,
        NamedCode::C2,
        NamedCode::C3,
        NamedCode::Hexacode18,
        NamedCode::Golay24,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedCode::C1 => "C1",
            NamedCode::C2 => "C2",
            NamedCode::C3 => "C3",
            NamedCode::Hexacode18 => "hexacode18",
            NamedCode::Golay24 => "golay24",
        }
    }
}

impl fmt::Display for NamedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedCode::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown code name {s:?}")))
    }
}

// The first four rows are shared by all three length-19 codes.
const SHARED_ROWS: [&str; 4] = [
    "0000101010101010101",
    "0000011001100110011",
    "1010000010101100011",
    "0110000001101010110",
];

const C1_TAIL: [&str; 4] = [
    "0001111000000000000",
    "0000000111100000000",
    "0000000000011110000",
    "0000000000000001111",
];

const C2_TAIL: [&str; 3] = [
    "0001111000000000000",
    "0000000111100001111",
    "0000000000011111111",
];

const C3_TAIL: [&str; 3] = [
    "0001111000000001111",
    "0000000111100001111",
    "0000000000011111111",
];

fn from_rows(tail: &[&str]) -> GeneratorMatrix {
    let rows: Vec<&str> = SHARED_ROWS.iter().chain(tail).copied().collect();
    GeneratorMatrix::from_row_strs(&rows).expect("static rows are well formed")
}

/// Product in `F_4 = {a0 + a1 w}` with `w^2 = w + 1`, elements as 2-bit
/// integers `a0 | a1 << 1`.
fn f4_mul(a: u8, b: u8) -> u8 {
    let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
    let c0 = (a0 & b0) ^ (a1 & b1);
    let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
    c0 | c1 << 1
}

/// The `[6, 3]` hexacode over `F_4`, with the six points of a hyperoval in
/// `PG(2, 4)` as columns: the conic `(1, t, t^2)`, its nucleus `(0, 1, 0)`
/// and `(0, 0, 1)`.
fn hexacode_columns() -> Vec<[u8; 3]> {
    let mut cols: Vec<[u8; 3]> = (0..4u8).map(|t| [1, t, f4_mul(t, t)]).collect();
    cols.push([0, 0, 1]);
    cols.push([0, 1, 0]);
    cols
}

/// Hexacode concatenated with the `[3, 2]` simplex code: the symbol
/// `a0 + a1 w` becomes `(a0, a1, a0 + a1)`.
fn hexacode18() -> GeneratorMatrix {
    let cols = hexacode_columns();
    let mut rows = Vec::new();
    for i in 0..3 {
        for scalar in [1u8, 2] {
            let mut bits = Vec::with_capacity(18);
            for col in &cols {
                let s = f4_mul(scalar, col[i]);
                let (a0, a1) = (s & 1 == 1, s >> 1 == 1);
                bits.extend([a0, a1, a0 ^ a1]);
            }
            rows.push(BitVector::from_bits(bits));
        }
    }
    GeneratorMatrix::new(18, rows)
}

/// Extended binary Golay code: the cyclic `[23, 12]` code generated by
/// `1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11`, plus an overall parity bit.
fn golay24() -> GeneratorMatrix {
    const G: [usize; 7] = [0, 2, 4, 5, 6, 10, 11];
    let rows = (0..12)
        .map(|shift| {
            let mut r = BitVector::zeros(24);
            for e in G {
                r.set(e + shift, true);
            }
            // Seven ones: the parity bit is set.
            r.set(23, true);
            r
        })
        .collect();
    GeneratorMatrix::new(24, rows)
}

/// Bit-exact generator matrices of the named codes.
pub fn construct_named(name: NamedCode) -> GeneratorMatrix {
    match name {
        NamedCode::C1 => from_rows(&C1_TAIL),
        NamedCode::C2 => from_rows(&C2_TAIL),
        NamedCode::C3 => from_rows(&C3_TAIL),
        NamedCode::Hexacode18 => hexacode18(),
        NamedCode::Golay24 => golay24(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{line, plane, shorten, switch, PointSet};
    use crate::spectra::{is_divisible, weight_distribution, WeightDistribution};

    fn dist(name: NamedCode) -> WeightDistribution {
        weight_distribution(&construct_named(name)).unwrap()
    }

    #[test]
    fn length_19_distributions() {
        assert_eq!(
            dist(NamedCode::C1).to_string(),
            "(0^1 4^4 8^150 12^100 16^1)"
        );
        assert_eq!(dist(NamedCode::C2).to_string(), "(0^1 4^1 8^75 12^51)");
        assert_eq!(dist(NamedCode::C3).to_string(), "(0^1 8^78 12^48 16^1)");
    }

    #[test]
    fn golay_distribution() {
        assert_eq!(
            dist(NamedCode::Golay24).to_string(),
            "(0^1 8^759 12^2576 16^759 24^1)"
        );
    }

    #[test]
    fn hexacode_concatenation() {
        let g = construct_named(NamedCode::Hexacode18);
        assert_eq!((g.n(), g.rank()), (18, 6));
        let a = dist(NamedCode::Hexacode18);
        assert!(is_divisible(&a, 4));
        assert_eq!((a.get(8), a.get(12)), (45, 18));
        let cols = g.columns();
        let pts = PointSet::new(6, cols.iter().copied()).unwrap();
        assert_eq!(pts.len(), 18);
        for block in cols.chunks(3) {
            assert_eq!(block[0] ^ block[1], block[2]);
        }
    }

    #[test]
    fn shortened_golay() {
        let g = shorten(&construct_named(NamedCode::Golay24), &[0, 5, 9, 17, 23]).unwrap();
        assert_eq!((g.n(), g.k()), (19, 7));
        assert_eq!(weight_distribution(&g).unwrap(), dist(NamedCode::C3));
    }

    /// Switching four lines of a solid into planes with the given extra
    /// directions.
    fn switched(k: usize, dirs: [u64; 4]) -> PointSet {
        let mut p = PointSet::new(k, 1..16).unwrap();
        let lines = [line(1, 2), line(5, 10), line(13, 6), line(9, 14)];
        for (l, d) in lines.iter().zip(dirs) {
            p = switch(&p, l, &plane(l[0], l[1], d)).unwrap();
        }
        p
    }

    #[test]
    fn switching_reproduces_matrices() {
        let cases = [
            (NamedCode::C1, 8, [16, 32, 64, 128]),
            (NamedCode::C2, 7, [16, 32, 64, 96]),
            (NamedCode::C3, 7, [16, 32, 64, 112]),
        ];
        for (name, k, dirs) in cases {
            let g = construct_named(name);
            let expect = PointSet::from_matrix(&g).unwrap();
            assert_eq!(switched(k, dirs), expect, "{name}");
        }
    }
}
