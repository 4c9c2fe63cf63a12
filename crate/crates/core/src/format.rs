//! CSV and JSON encodings of matrices and spectra.
//!
//! CSV floats use C's `%.17g` formatting so every value round-trips exactly.

use serde::{Serialize, Serializer};

use crate::spectral::Spectrum;
use crate::DenseMatrix;

/// Formats `x` the way C's `printf("%.17g", x)` does.
pub fn fmt_g17(x: f64) -> String {
    const PRECISION: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    // `{:.16e}` rounds to 17 significant digits and yields the decimal exponent
    // of the rounded value, which is what %g uses to pick a style.
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Row-major CSV, one matrix row per line, no trailing newline.
pub fn matrix_to_csv(m: &DenseMatrix) -> String {
    m.row_iter()
        .map(|row| {
            row.iter()
                .map(|x| fmt_g17(*x))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// One eigenvalue per line, descending.
pub fn spectrum_to_csv(s: &Spectrum) -> String {
    s.values
        .iter()
        .map(|x| fmt_g17(*x))
        .collect::<Vec<_>>()
        .join("\n")
}

/// JSON shape of a matrix: `{n, kind, data}` with row-major `data`.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub kind: String,
    pub data: Vec<f64>,
}

impl MatrixJson {
    pub fn new(m: &DenseMatrix, kind: impl Into<String>) -> Self {
        MatrixJson {
            n: m.nrows(),
            kind: kind.into(),
            data: row_major(m),
        }
    }

    pub fn to_matrix(&self) -> Option<DenseMatrix> {
        (self.data.len() == self.n * self.n)
            .then(|| DenseMatrix::from_row_slice(self.n, self.n, &self.data))
    }
}

pub fn row_major(m: &DenseMatrix) -> Vec<f64> {
    m.row_iter()
        .flat_map(|r| r.iter().copied().collect::<Vec<_>>())
        .collect()
}

/// Serde adapter writing a matrix as a row-major array of rows.
pub fn serialize_matrix<S: Serializer>(m: &DenseMatrix, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
    rows.serialize(s)
}
