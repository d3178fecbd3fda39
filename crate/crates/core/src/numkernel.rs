//! Dense complex linear algebra used throughout the crate.
//!
//! Matrices are `nalgebra` dense matrices over `Complex64`. Everything here is
//! a pure function of its inputs; randomness always comes in through an
//! explicitly passed generator.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

/// Seedable generator used by every randomized routine in the crate.
pub type SeededRng = rand_chacha::ChaCha8Rng;

/// Default relative threshold for null-space extraction.
pub const DEFAULT_TOL: f64 = 1e-9;

pub fn seeded_rng(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Kronecker product; entry `((i1, i2), (j1, j2))` is `a[i1, j1] * b[i2, j2]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Largest entrywise modulus of `a - b`. Panics on shape mismatch.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff: shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn hermiticity_defect(h: &ComplexMatrix) -> f64 {
    if !h.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(h, &h.adjoint())
}

/// Max entry of `|U^dagger U - 1|`.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let n = u.nrows();
    max_abs_diff(&(u.adjoint() * u), &ComplexMatrix::identity(n, n))
}

/// Null space of a matrix together with the spectrum it was cut from.
#[derive(Debug, Clone)]
pub struct NullSpace {
    pub basis: Vec<ComplexVector>,
    /// Singular values, one per column of the input (zero-padded for wide inputs).
    pub singular_values: Vec<f64>,
    /// Absolute cut: `tol * sigma_max`.
    pub threshold: f64,
}

impl NullSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Kernel dimension the same spectrum would give at relative tolerance `tol`.
    pub fn dim_at(&self, tol: f64) -> usize {
        let smax = self.singular_values.iter().cloned().fold(0.0, f64::max);
        if smax == 0.0 {
            return self.singular_values.len();
        }
        self.singular_values
            .iter()
            .filter(|&&s| s <= tol * smax)
            .count()
    }

    /// Whether the dimension is unchanged when `tol` is scaled by 10 and by 1/10.
    pub fn is_stable(&self, tol: f64) -> bool {
        let d = self.dim_at(tol);
        self.dim_at(tol * 10.0) == d && self.dim_at(tol / 10.0) == d
    }
}

/// Orthonormal basis of the right null space of `a`.
///
/// Right-singular vectors whose singular value is at most `tol * sigma_max`
/// span the kernel. A zero matrix (or one with no rows) has the full space
/// as its kernel.
pub fn nullspace(a: &ComplexMatrix, tol: f64) -> Result<Vec<ComplexVector>> {
    Ok(nullspace_detailed(a, tol)?.basis)
}

pub fn nullspace_detailed(a: &ComplexMatrix, tol: f64) -> Result<NullSpace> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let (m, n) = a.shape();
    if n == 0 {
        return Ok(NullSpace {
            basis: Vec::new(),
            singular_values: Vec::new(),
            threshold: 0.0,
        });
    }
    let smax_trivial = a.iter().all(|z| *z == C64::new(0.0, 0.0));
    if m == 0 || smax_trivial {
        return Ok(NullSpace {
            basis: (0..n).map(|j| unit_vector(n, j)).collect(),
            singular_values: vec![0.0; n],
            threshold: 0.0,
        });
    }

    // Wide inputs are padded with zero rows so that V comes out square.
    let padded;
    let a = if m < n {
        let mut p = ComplexMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        padded = p;
        &padded
    } else {
        a
    };

    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let threshold = tol * smax;

    let basis = sv
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= threshold)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect();

    Ok(NullSpace {
        basis,
        singular_values: sv,
        threshold,
    })
}

pub fn unit_vector(n: usize, j: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(n);
    v[j] = C64::new(1.0, 0.0);
    v
}

/// `exp(i h)` for Hermitian `h`, via the spectral decomposition.
pub fn expm_i_hermitian(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let defect = hermiticity_defect(h);
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    // Symmetrize so the eigensolver sees an exactly Hermitian input.
    let hs = (h + h.adjoint()).scale(0.5);
    let eig = hs.symmetric_eigen();
    let phases = ComplexVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| C64::from_polar(1.0, l)),
    );
    let v = &eig.eigenvectors;
    Ok(v * ComplexMatrix::from_diagonal(&phases) * v.adjoint())
}

/// Haar-random element of U(n).
///
/// QR of a complex Ginibre matrix, with each column of Q rescaled by the
/// phase of the matching diagonal entry of R. Without that correction the
/// output is not Haar distributed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    assert!(n >= 1, "haar_unitary: n must be at least 1");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = ComplexMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let rjj = r[(j, j)];
        let norm = rjj.norm();
        let phase = if norm > 0.0 {
            rjj / norm
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-random element of SU(n): a Haar unitary divided by an n-th root of its determinant.
pub fn haar_special_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let u = haar_unitary(n, rng);
    to_special(u)
}

/// Rescale a unitary by the principal n-th root of its determinant.
pub fn to_special(u: ComplexMatrix) -> ComplexMatrix {
    let n = u.nrows();
    let det = u.determinant();
    let root = C64::from_polar(1.0, det.arg() / n as f64);
    u * root.inv()
}
