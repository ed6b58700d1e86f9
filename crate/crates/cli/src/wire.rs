//! JSON wire format: complex scalars are `[re, im]` pairs and matrices are
//! row-major nested arrays. Plain numbers are accepted on input as real
//! scalars.

use qcomm_core::{CMatrix, C64};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex(pub C64);

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Pair([f64; 2]),
            Real(f64),
        }
        let z = match Raw::deserialize(d).map_err(|_| {
            serde::de::Error::custom("expected a complex number as [re, im] or a real number")
        })? {
            Raw::Pair([re, im]) => C64::new(re, im),
            Raw::Real(re) => C64::new(re, 0.0),
        };
        Ok(Complex(z))
    }
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Complex(z)
    }
}

pub type Matrix = Vec<Vec<Complex>>;

pub fn scalars(v: &[Complex]) -> Vec<C64> {
    v.iter().map(|z| z.0).collect()
}

pub fn to_wire(v: &[C64]) -> Vec<Complex> {
    v.iter().copied().map(Complex).collect()
}

pub fn matrix_to_wire(m: &CMatrix) -> Matrix {
    (0..m.rows()).map(|r| to_wire(m.row(r))).collect()
}

/// Builds a non-empty square matrix; `what` names it in error messages.
pub fn square_matrix(rows: &[Vec<Complex>], what: &str) -> Result<CMatrix, CliError> {
    if rows.is_empty() {
        return Err(CliError::Invalid(format!("{what} is empty")));
    }
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(CliError::Invalid(format!(
            "{what} must be square with {} rows of {} entries",
            rows.len(),
            rows.len()
        )));
    }
    let data: Vec<Vec<C64>> = rows.iter().map(|r| scalars(r)).collect();
    Ok(CMatrix::from_rows(&data)?)
}
