//! Local and collective generators: spin ladders in the spin-(d-1)/2
//! representation, SU(d) matrix-unit ladders, rotations, the two-site flip
//! operator and level permutations.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hilbert::{digits_of, space_dim, stride, Label, Operator, StateVector};
use crate::numkernel::{expm_i_hermitian, kron, ComplexMatrix, ComplexVector, C64};

/// Largest `d^N` for which a collective operator may be materialized densely.
pub const DENSE_OPERATOR_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Raise,
    Lower,
}

/// A `d x d` single-site operator.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    d: usize,
    matrix: ComplexMatrix,
}

impl LocalOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "local operator must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let d = matrix.nrows();
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(LocalOperator { d, matrix })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn adjoint(&self) -> LocalOperator {
        LocalOperator {
            d: self.d,
            matrix: self.matrix.adjoint(),
        }
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzeros(&self) -> Vec<(usize, usize, C64)> {
        let mut out = Vec::new();
        for col in 0..self.d {
            for row in 0..self.d {
                let v = self.matrix[(row, col)];
                if v != C64::new(0.0, 0.0) {
                    out.push((row, col, v));
                }
            }
        }
        out
    }
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidDimension(d))
    } else {
        Ok(())
    }
}

/// `J+` or `J-` of spin `j = (d-1)/2`, with `<m+1|J+|m> = sqrt(j(j+1) - m(m+1))`.
pub fn spin_ladder(d: usize, direction: Direction) -> Result<LocalOperator> {
    check_d(d)?;
    let mut m = ComplexMatrix::zeros(d, d);
    for (r, c, v) in spin_ladder_entries(d, direction) {
        m[(r, c)] = v;
    }
    Ok(LocalOperator { d, matrix: m })
}

/// Sparse entries of the spin ladder, as `(row, col, value)`.
pub(crate) fn spin_ladder_entries(d: usize, direction: Direction) -> Vec<(usize, usize, C64)> {
    let j = (d as f64 - 1.0) / 2.0;
    // Digit k holds m = j - k; J+ sends digit k to digit k - 1.
    (1..d)
        .map(|k| {
            let m = Label::from_digit(d, k).value();
            let v = C64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
            match direction {
                Direction::Raise => (k - 1, k, v),
                Direction::Lower => (k, k - 1, v),
            }
        })
        .collect()
}

/// `J0 = [J+, J-] / 2`; equals `diag(a)` over the labels.
pub fn spin_j0(d: usize) -> Result<LocalOperator> {
    let jp = spin_ladder(d, Direction::Raise)?;
    let jm = spin_ladder(d, Direction::Lower)?;
    let comm = jp.matrix() * jm.matrix() - jm.matrix() * jp.matrix();
    LocalOperator::new(comm.scale(0.5))
}

/// Hermitian spin components `(Jx, Jy, Jz)`.
pub fn spin_components(d: usize) -> Result<[ComplexMatrix; 3]> {
    let jp = spin_ladder(d, Direction::Raise)?.matrix;
    let jm = spin_ladder(d, Direction::Lower)?.matrix;
    let jx = (&jp + &jm).scale(0.5);
    let jy = (&jp - &jm) * C64::new(0.0, -0.5);
    let jz = spin_j0(d)?.matrix;
    Ok([jx, jy, jz])
}

fn check_levels(d: usize, h: usize, j: usize) -> Result<()> {
    check_d(d)?;
    for level in [h, j] {
        if level >= d {
            return Err(Error::LevelOutOfRange { level, d });
        }
    }
    if h == j {
        return Err(Error::EqualLevels(h));
    }
    Ok(())
}

/// SU(d) ladder between levels `h` and `j` (canonical digits, 0-based).
///
/// `Raise` is the matrix unit `E_{hj}`, taking level `j` to level `h`;
/// `Lower` is its adjoint `E_{jh}`.
pub fn sud_ladder(d: usize, h: usize, j: usize, direction: Direction) -> Result<LocalOperator> {
    check_levels(d, h, j)?;
    let mut m = ComplexMatrix::zeros(d, d);
    match direction {
        Direction::Raise => m[(h, j)] = C64::new(1.0, 0.0),
        Direction::Lower => m[(j, h)] = C64::new(1.0, 0.0),
    }
    Ok(LocalOperator { d, matrix: m })
}

/// All `2 d (d-1)` SU(d) ladders: a raising and a lowering member for every ordered pair `h != j`.
pub fn sud_ladder_family(d: usize) -> Result<Vec<LocalOperator>> {
    check_d(d)?;
    let mut out = Vec::with_capacity(2 * d * (d - 1));
    for direction in [Direction::Raise, Direction::Lower] {
        for h in 0..d {
            for j in 0..d {
                if h != j {
                    out.push(sud_ladder(d, h, j, direction)?);
                }
            }
        }
    }
    Ok(out)
}

/// Sparse entries of the matrix unit `E_{hj}`.
pub(crate) fn matrix_unit_entries(h: usize, j: usize) -> Vec<(usize, usize, C64)> {
    vec![(h, j, C64::new(1.0, 0.0))]
}

/// The `N`-site sum `sum_k 1^{⊗(k-1)} ⊗ A ⊗ 1^{⊗(N-k)}` of a single-site operator `A`.
///
/// Only the nonzero entries of `A` are kept; the `d^N`-dimensional matrix is
/// built on demand by [`CollectiveOperator::matrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveOperator {
    d: usize,
    n: usize,
    entries: Vec<(usize, usize, C64)>,
}

pub fn collective(local: &LocalOperator, n: usize) -> Result<CollectiveOperator> {
    CollectiveOperator::from_entries(local.d(), n, local.nonzeros())
}

impl CollectiveOperator {
    pub fn from_entries(d: usize, n: usize, entries: Vec<(usize, usize, C64)>) -> Result<Self> {
        space_dim(d, n)?;
        if let Some(&(r, c, _)) = entries.iter().find(|(r, c, _)| *r >= d || *c >= d) {
            return Err(Error::LevelOutOfRange { level: r.max(c), d });
        }
        Ok(CollectiveOperator { d, n, entries })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    pub fn local(&self) -> LocalOperator {
        let mut m = ComplexMatrix::zeros(self.d, self.d);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        LocalOperator {
            d: self.d,
            matrix: m,
        }
    }

    /// Image of the basis vector at flat index `idx`, as `(row, value)` pairs.
    /// Rows may repeat.
    pub fn column(&self, idx: usize) -> Vec<(usize, C64)> {
        let digits = digits_of(idx, self.d, self.n);
        let mut out = Vec::new();
        for (k, &g) in digits.iter().enumerate() {
            let s = stride(self.d, self.n, k);
            for &(r, c, v) in &self.entries {
                if c == g {
                    out.push((idx - g * s + r * s, v));
                }
            }
        }
        out
    }

    /// Dense `d^N x d^N` matrix, limited to [`DENSE_OPERATOR_CAP`].
    pub fn matrix(&self) -> Result<ComplexMatrix> {
        let dim = self.dim();
        if dim > DENSE_OPERATOR_CAP {
            return Err(Error::SizeCap {
                d: self.d,
                n: self.n,
                cap: DENSE_OPERATOR_CAP,
            });
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        for col in 0..dim {
            for (row, v) in self.column(col) {
                m[(row, col)] += v;
            }
        }
        Ok(m)
    }
}

impl Operator for CollectiveOperator {
    fn act(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.d() != self.d || psi.n() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "collective operator on (d = {}, N = {}) applied to (d = {}, N = {})",
                self.d,
                self.n,
                psi.d(),
                psi.n()
            )));
        }
        let amps = psi.amplitudes();
        let mut out = ComplexVector::zeros(amps.len());
        for (idx, a) in amps.iter().enumerate() {
            if *a == C64::new(0.0, 0.0) {
                continue;
            }
            for (row, v) in self.column(idx) {
                out[row] += v * a;
            }
        }
        StateVector::from_amplitudes(self.d, self.n, out)
    }
}

/// `exp(i (bx Jx + by Jy + bz Jz))` in the spin-(d-1)/2 representation.
pub fn su2_rotation(d: usize, beta: [f64; 3]) -> Result<ComplexMatrix> {
    let [jx, jy, jz] = spin_components(d)?;
    let h = jx.scale(beta[0]) + jy.scale(beta[1]) + jz.scale(beta[2]);
    expm_i_hermitian(&h)
}

/// Rotation about a uniformly random axis by a uniform angle in `[0, 2π)`.
///
/// This is not Haar measure on SU(2). Invariance under every element only
/// needs a family that reaches a neighbourhood of the identity in all
/// directions, which this provides.
pub fn random_su2_rotation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<ComplexMatrix> {
    su2_rotation(d, random_rotation_parameters(rng))
}

pub fn random_rotation_parameters<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let rho = (1.0 - z * z).sqrt();
    [angle * rho * phi.cos(), angle * rho * phi.sin(), angle * z]
}

/// Haar-distributed SU(2) element in the spin-(d-1)/2 representation.
///
/// A uniform point `(a0, a)` on the 3-sphere is the Haar element
/// `a0 + i a.σ`; its rotation vector is `2 acos(a0) a/|a|`.
pub fn haar_su2_rotation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<ComplexMatrix> {
    let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a0 = (q[0] / norm).clamp(-1.0, 1.0);
    let axis_norm = (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
    if axis_norm == 0.0 {
        return su2_rotation(d, [0.0; 3]);
    }
    let scale = 2.0 * a0.acos() / axis_norm;
    su2_rotation(d, [q[1] * scale, q[2] * scale, q[3] * scale])
}

/// Two-site flip `V |φ>|ψ> = |ψ>|φ>`, a `d^2 x d^2` permutation.
pub fn flip_operator(d: usize) -> Result<ComplexMatrix> {
    check_d(d)?;
    let mut v = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            v[(j * d + i, i * d + j)] = C64::new(1.0, 0.0);
        }
    }
    Ok(v)
}

/// Permutation unitary exchanging levels `h` and `j` (canonical digits).
pub fn level_swap(d: usize, h: usize, j: usize) -> Result<ComplexMatrix> {
    check_levels(d, h, j)?;
    let mut w = ComplexMatrix::identity(d, d);
    w[(h, h)] = C64::new(0.0, 0.0);
    w[(j, j)] = C64::new(0.0, 0.0);
    w[(h, j)] = C64::new(1.0, 0.0);
    w[(j, h)] = C64::new(1.0, 0.0);
    Ok(w)
}

/// `U^{⊗N}` as a dense matrix, limited to [`DENSE_OPERATOR_CAP`].
pub fn tensor_power(u: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    let d = u.nrows();
    let dim = space_dim(d, n)?;
    if dim > DENSE_OPERATOR_CAP {
        return Err(Error::SizeCap {
            d,
            n,
            cap: DENSE_OPERATOR_CAP,
        });
    }
    let mut out = u.clone();
    for _ in 1..n {
        out = kron(&out, u);
    }
    Ok(out)
}
