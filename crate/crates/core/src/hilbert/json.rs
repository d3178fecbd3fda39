//! File formats for states and density matrices.
//!
//! Labels are written as exact rationals (`"-3/2"`, `"1"`) so half-integer
//! labels survive a round trip without float drift.

use serde::{Deserialize, Serialize};

use super::{BasisState, DensityMatrix, Label, StateVector};
use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, C64};

/// Amplitudes at or below this modulus are omitted when writing a state.
pub const JSON_AMPLITUDE_CUTOFF: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub labels: Vec<Label>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub d: usize,
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl StateJson {
    pub fn from_state(psi: &StateVector) -> Self {
        let terms = psi
            .terms(JSON_AMPLITUDE_CUTOFF)
            .into_iter()
            .map(|(b, a)| TermJson {
                labels: b.labels().to_vec(),
                re: a.re,
                im: a.im,
            })
            .collect();
        StateJson {
            d: psi.d(),
            n: psi.n(),
            terms,
        }
    }

    pub fn to_state(&self, normalize: bool) -> Result<StateVector> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.labels.len() != self.n {
                    return Err(Error::ShapeMismatch(format!(
                        "term with {} labels in an N = {} state",
                        t.labels.len(),
                        self.n
                    )));
                }
                Ok((
                    BasisState::new(self.d, t.labels.clone())?,
                    C64::new(t.re, t.im),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        StateVector::from_terms(self.d, self.n, &terms, normalize)
    }
}

/// Dense density matrix, real and imaginary parts stored as row-major nested arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityJson {
    pub d: usize,
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DensityJson {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let rows = |f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        DensityJson {
            d: rho.d(),
            n: rho.n(),
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        let dim = self.re.len();
        if self.im.len() != dim
            || self
                .re
                .iter()
                .chain(self.im.iter())
                .any(|row| row.len() != dim)
        {
            return Err(Error::ShapeMismatch(
                "density matrix rows are ragged".into(),
            ));
        }
        let mat = ComplexMatrix::from_fn(dim, dim, |i, j| C64::new(self.re[i][j], self.im[i][j]));
        DensityMatrix::new(self.d, self.n, mat)
    }
}
