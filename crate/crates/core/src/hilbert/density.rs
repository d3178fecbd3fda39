use super::{space_dim, StateVector};
use crate::error::{Error, Result};
use crate::numkernel::{hermiticity_defect, max_abs_diff, ComplexMatrix, C64};

/// A `d^N x d^N` density operator: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    d: usize,
    n: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity (1e-10), trace (1e-10) and positivity (-1e-9).
    pub fn new(d: usize, n: usize, mat: ComplexMatrix) -> Result<Self> {
        let dim = space_dim(d, n)?;
        if mat.shape() != (dim, dim) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} density matrix for d = {d}, N = {n}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let rho = DensityMatrix { d, n, mat };
        rho.validate()?;
        Ok(rho)
    }

    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        let psi = psi.normalized()?;
        let a = psi.amplitudes();
        Ok(DensityMatrix {
            d: psi.d(),
            n: psi.n(),
            mat: a * a.adjoint(),
        })
    }

    pub fn maximally_mixed(d: usize, n: usize) -> Result<Self> {
        let dim = space_dim(d, n)?;
        Ok(DensityMatrix {
            d,
            n,
            mat: ComplexMatrix::identity(dim, dim).unscale(dim as f64),
        })
    }

    /// Convex combination `sum_i w_i rho_i`; weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::InvalidDensity("empty mixture".into()))?;
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDensity(format!(
                "mixture weights must be nonnegative and sum to 1 (sum {total})"
            )));
        }
        let mut mat = ComplexMatrix::zeros(first.dim(), first.dim());
        for (w, rho) in parts {
            if rho.d != first.d || rho.n != first.n {
                return Err(Error::ShapeMismatch("mixture of different spaces".into()));
            }
            mat += rho.mat.scale(*w);
        }
        DensityMatrix::new(first.d, first.n, mat)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.mat + self.mat.adjoint()).scale(0.5);
        h.symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// Rank at relative threshold `tol` of the largest eigenvalue.
    pub fn rank(&self, tol: f64) -> usize {
        let h = (&self.mat + self.mat.adjoint()).scale(0.5);
        let ev = h.symmetric_eigen().eigenvalues;
        let max = ev.iter().cloned().fold(0.0, f64::max);
        ev.iter().filter(|&&l| l > tol * max).count()
    }

    pub fn validate(&self) -> Result<()> {
        let herm = hermiticity_defect(&self.mat);
        if herm > 1e-10 {
            return Err(Error::InvalidDensity(format!(
                "hermiticity defect {herm:.3e}"
            )));
        }
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let min = self.min_eigenvalue();
        if min < -1e-9 {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }

    /// `U rho U^dagger` for a full-space unitary `U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if u.shape() != self.mat.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} unitary on a {}-dimensional density matrix",
                u.nrows(),
                u.ncols(),
                self.dim()
            )));
        }
        Ok(DensityMatrix {
            d: self.d,
            n: self.n,
            mat: u * &self.mat * u.adjoint(),
        })
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.mat.shape() != other.mat.shape() {
            return Err(Error::ShapeMismatch(
                "density matrices of different size".into(),
            ));
        }
        Ok((&self.mat - &other.mat).norm())
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        max_abs_diff(&self.mat, &other.mat)
    }
}
