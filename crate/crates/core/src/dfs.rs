//! A logical qubit stored in the two-dimensional four-qubit dark subspace,
//! exposed to collective noise: one random `U^{⊗N}` per shot, shared by all
//! sites.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::construction::four_qubit_dark_pair;
use crate::error::{Error, Result};
use crate::hilbert::{space_dim, BasisState, DensityMatrix, StateVector};
use crate::numkernel::{c, haar_special_unitary, ComplexMatrix, C64};
use crate::operators::haar_su2_rotation;
use crate::solver::{dark_basis, dark_dimension_oracle};
use crate::verify::Group;

/// Largest `d^N` the qudit feasibility report will solve numerically.
pub const FEASIBILITY_SOLVE_CAP: usize = 4096;

/// Orthonormal pair of dark states used as logical `|0>` and `|1>`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalEncoding {
    basis0: StateVector,
    basis1: StateVector,
}

impl LogicalEncoding {
    pub fn new(basis0: StateVector, basis1: StateVector) -> Result<Self> {
        let g00 = basis0.inner(&basis0)?;
        let g11 = basis1.inner(&basis1)?;
        let g01 = basis0.inner(&basis1)?;
        let one = c(1.0, 0.0);
        if (g00 - one).norm() > 1e-10 || (g11 - one).norm() > 1e-10 || g01.norm() > 1e-10 {
            return Err(Error::Precondition(
                "logical basis is not orthonormal".into(),
            ));
        }
        Ok(LogicalEncoding { basis0, basis1 })
    }

    /// The two printed four-qubit dark states.
    pub fn four_qubit() -> Self {
        let (a, b) = four_qubit_dark_pair();
        LogicalEncoding::new(a, b).expect("dark pair is orthonormal")
    }

    pub fn basis(&self) -> (&StateVector, &StateVector) {
        (&self.basis0, &self.basis1)
    }

    /// `a |0_L> + b |1_L>`, rescaled to unit norm.
    pub fn encode(&self, a: C64, b: C64) -> Result<StateVector> {
        self.basis0.combine(a, &self.basis1, b)?.normalized()
    }

    /// Logical amplitudes `(a, b)` of the dominant state in the code space,
    /// up to a global phase, plus the weight of `rho` inside the code space.
    pub fn decode(&self, rho: &DensityMatrix) -> Result<(C64, C64, f64)> {
        let b = [&self.basis0, &self.basis1];
        let mut logical = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            let rho_bj = b[i].apply(rho.matrix())?;
            for j in 0..2 {
                logical[(j, i)] = b[j].inner(&rho_bj)?;
            }
        }
        let weight = logical.trace().re;
        let eig = logical.symmetric_eigen();
        let top = eig.eigenvalues.imax();
        let v = eig.eigenvectors.column(top);
        // Fix the global phase so the larger component is real and positive.
        let pivot = if v[0].norm() >= v[1].norm() {
            v[0]
        } else {
            v[1]
        };
        let phase = pivot.conj() / pivot.norm();
        Ok((v[0] * phase, v[1] * phase, weight))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Noise {
    /// One Haar-random element of the group per shot, applied to every site.
    Collective(Group),
    /// Identity on every shot; control run.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub noise: Noise,
    pub samples: usize,
}

impl ChannelSpec {
    pub fn new(noise: Noise, samples: usize) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Precondition(
                "channel needs at least one sample".into(),
            ));
        }
        Ok(ChannelSpec { noise, samples })
    }

    fn draw<R: Rng + ?Sized>(&self, d: usize, rng: &mut R) -> Result<ComplexMatrix> {
        match self.noise {
            Noise::Collective(Group::Su2) => haar_su2_rotation(d, rng),
            Noise::Collective(Group::Sud) => Ok(haar_special_unitary(d, rng)),
            Noise::None => Ok(ComplexMatrix::identity(d, d)),
        }
    }
}

fn accumulate(acc: &mut ComplexMatrix, psi: &StateVector, weight: f64) {
    let a = psi.amplitudes();
    *acc += (a * a.adjoint()).scale(weight);
}

/// `(1/K) sum_s U_s^{⊗N} |ψ><ψ| U_s^{⊗N†}`.
pub fn collective_channel<R: Rng + ?Sized>(
    psi: &StateVector,
    spec: &ChannelSpec,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let psi = psi.normalized()?;
    let w = 1.0 / spec.samples as f64;
    let mut acc = ComplexMatrix::zeros(psi.dim(), psi.dim());
    for _ in 0..spec.samples {
        let u = spec.draw(psi.d(), rng)?;
        accumulate(&mut acc, &psi.apply_product(&u)?, w);
    }
    DensityMatrix::new(psi.d(), psi.n(), acc)
}

/// `<ψ|ρ|ψ>`, clipped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    if rho.d() != psi.d() || rho.n() != psi.n() {
        return Err(Error::ShapeMismatch(format!(
            "density matrix on (d = {}, N = {}) against state on (d = {}, N = {})",
            rho.d(),
            rho.n(),
            psi.d(),
            psi.n()
        )));
    }
    let f = psi.inner(&psi.apply(rho.matrix())?)?;
    Ok(f.re.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DfsRecord {
    pub logical: (C64, C64),
    pub encoded_fidelity: f64,
    pub bare_fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DfsReport {
    pub records: Vec<DfsRecord>,
    pub encoded_min_fidelity: f64,
    pub encoded_mean_fidelity: f64,
    pub bare_min_fidelity: f64,
    pub bare_mean_fidelity: f64,
    /// Largest `1 - |<enc|U^{⊗4}|enc>|` over all shots and inputs.
    pub max_shot_deviation: f64,
    pub samples: usize,
    pub noise: Noise,
    /// What the bare-qubit column is compared against.
    pub baseline: String,
}

/// Run every logical input through the same sequence of collective draws,
/// once encoded in the dark subspace and once as a bare qubit
/// `a|+1/2> + b|-1/2>`.
pub fn dfs_experiment<R: Rng + ?Sized>(
    inputs: &[(C64, C64)],
    spec: &ChannelSpec,
    rng: &mut R,
) -> Result<DfsReport> {
    if inputs.is_empty() {
        return Err(Error::Precondition("no logical inputs".into()));
    }
    let code = LogicalEncoding::four_qubit();
    let up = StateVector::basis(&BasisState::from_twice(2, &[1])?)?;
    let down = StateVector::basis(&BasisState::from_twice(2, &[-1])?)?;

    let encoded = inputs
        .iter()
        .map(|&(a, b)| code.encode(a, b))
        .collect::<Result<Vec<_>>>()?;
    let bare = inputs
        .iter()
        .map(|&(a, b)| up.combine(a, &down, b)?.normalized())
        .collect::<Result<Vec<_>>>()?;

    let w = 1.0 / spec.samples as f64;
    let enc_dim = space_dim(2, 4)?;
    let mut enc_acc = vec![ComplexMatrix::zeros(enc_dim, enc_dim); inputs.len()];
    let mut bare_acc = vec![ComplexMatrix::zeros(2, 2); inputs.len()];
    let mut max_shot_deviation: f64 = 0.0;

    for _ in 0..spec.samples {
        let u = spec.draw(2, rng)?;
        for i in 0..inputs.len() {
            let moved = encoded[i].apply_product(&u)?;
            let overlap = encoded[i].inner(&moved)?.norm();
            max_shot_deviation = max_shot_deviation.max(1.0 - overlap);
            accumulate(&mut enc_acc[i], &moved, w);
            accumulate(&mut bare_acc[i], &bare[i].apply_product(&u)?, w);
        }
    }

    let mut records = Vec::with_capacity(inputs.len());
    for (i, &logical) in inputs.iter().enumerate() {
        let rho_enc = DensityMatrix::new(2, 4, std::mem::take(&mut enc_acc[i]))?;
        let rho_bare = DensityMatrix::new(2, 1, std::mem::take(&mut bare_acc[i]))?;
        records.push(DfsRecord {
            logical,
            encoded_fidelity: fidelity(&rho_enc, &encoded[i])?,
            bare_fidelity: fidelity(&rho_bare, &bare[i])?,
        });
    }
    let count = records.len() as f64;
    let min = |f: fn(&DfsRecord) -> f64| records.iter().map(f).fold(f64::INFINITY, f64::min);
    let mean = |f: fn(&DfsRecord) -> f64| records.iter().map(f).sum::<f64>() / count;
    Ok(DfsReport {
        encoded_min_fidelity: min(|r| r.encoded_fidelity),
        encoded_mean_fidelity: mean(|r| r.encoded_fidelity),
        bare_min_fidelity: min(|r| r.bare_fidelity),
        bare_mean_fidelity: mean(|r| r.bare_fidelity),
        max_shot_deviation,
        samples: spec.samples,
        noise: spec.noise,
        baseline: "bare single qubit under the same collective draws".into(),
        records,
    })
}

/// Whether `d^2` qudits carry at least `d` orthogonal dark states, which a
/// logical qudit would need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuditFeasibility {
    pub d: usize,
    pub n: usize,
    pub oracle_dim: u64,
    /// Solver dimension; `None` when `d^N` exceeds [`FEASIBILITY_SOLVE_CAP`].
    pub numeric_dim: Option<usize>,
    pub feasible: bool,
}

pub fn qudit_feasibility(d: usize, tol: f64) -> Result<QuditFeasibility> {
    let n = d * d;
    let oracle_dim = dark_dimension_oracle(n, d)?;
    let small = d
        .checked_pow(n as u32)
        .is_some_and(|dim| dim <= FEASIBILITY_SOLVE_CAP);
    let numeric_dim = if small {
        Some(dark_basis(n, d, tol)?.dim())
    } else {
        None
    };
    let dim = numeric_dim.map(|x| x as u64).unwrap_or(oracle_dim);
    Ok(QuditFeasibility {
        d,
        n,
        oracle_dim,
        numeric_dim,
        feasible: dim >= d as u64,
    })
}
