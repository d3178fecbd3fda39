//! Certification of darkness and semi-darkness.
//!
//! Two independent routes: algebraic (collective ladders annihilate the
//! state) and group-theoretic (the state is invariant under sampled
//! `U^{⊗N}`). Sampled checks are deterministic given the generator.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, StateVector};
use crate::numkernel::{haar_special_unitary, ComplexMatrix, C64};
use crate::operators::{
    collective, random_su2_rotation, spin_ladder, sud_ladder_family, tensor_power, Direction,
};

/// Which single-site group (or ladder family) a check ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    /// Spin-(d-1)/2 image of SU(2); ladders `J+`, `J-`.
    Su2,
    /// All of SU(d); ladders `E_{hj}` for every `h != j`.
    Sud,
}

/// How a pure-state overlap is turned into a deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseConvention {
    /// `1 - |<ψ|U^{⊗N}|ψ>|`: a global phase is ignored.
    #[default]
    Insensitive,
    /// `|1 - <ψ|U^{⊗N}|ψ>|`: eigenvalue exactly 1 required.
    Strict,
}

/// Outcome of a sampled invariance test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub max_deviation: f64,
    /// Index of the trial that produced `max_deviation`.
    pub worst_trial: usize,
    pub trials: usize,
    pub tol: f64,
    pub deviations: Vec<f64>,
}

impl Verdict {
    fn from_deviations(deviations: Vec<f64>, tol: f64) -> Self {
        let (worst_trial, max_deviation) =
            deviations
                .iter()
                .cloned()
                .enumerate()
                .fold(
                    (0, 0.0),
                    |best, (i, x)| if x > best.1 { (i, x) } else { best },
                );
        Verdict {
            pass: max_deviation <= tol,
            max_deviation,
            worst_trial,
            trials: deviations.len(),
            tol,
            deviations,
        }
    }
}

fn check_trials(trials: usize, tol: f64) -> Result<()> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(())
}

fn check_normalized(psi: &StateVector) -> Result<()> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::Precondition(format!(
            "state is not normalized (norm {norm})"
        )));
    }
    Ok(())
}

/// Largest `‖L ψ‖` over the collective ladders of `family`.
pub fn annihilation_residuals(psi: &StateVector, family: Group) -> Result<f64> {
    let d = psi.d();
    let locals = match family {
        Group::Su2 => vec![
            spin_ladder(d, Direction::Raise)?,
            spin_ladder(d, Direction::Lower)?,
        ],
        Group::Sud => sud_ladder_family(d)?,
    };
    let mut worst: f64 = 0.0;
    for l in &locals {
        worst = worst.max(psi.apply(&collective(l, psi.n())?)?.norm());
    }
    Ok(worst)
}

/// One random single-site element of `group`.
pub fn sample_group<R: Rng + ?Sized>(group: Group, d: usize, rng: &mut R) -> Result<ComplexMatrix> {
    match group {
        Group::Sud => Ok(haar_special_unitary(d, rng)),
        Group::Su2 => random_su2_rotation(d, rng),
    }
}

/// Deviation of `psi` from invariance under `U^{⊗N}`.
pub fn pure_deviation(psi: &StateVector, u: &ComplexMatrix, phase: PhaseConvention) -> Result<f64> {
    let overlap = psi.inner(&psi.apply_product(u)?)?;
    Ok(match phase {
        PhaseConvention::Insensitive => (1.0 - overlap.norm()).max(0.0),
        PhaseConvention::Strict => (C64::new(1.0, 0.0) - overlap).norm(),
    })
}

/// Sampled invariance of a normalized pure state under `U^{⊗N}`, `U` drawn from `group`.
pub fn invariance_random<R: Rng + ?Sized>(
    psi: &StateVector,
    group: Group,
    trials: usize,
    tol: f64,
    phase: PhaseConvention,
    rng: &mut R,
) -> Result<Verdict> {
    check_trials(trials, tol)?;
    check_normalized(psi)?;
    let deviations = (0..trials)
        .map(|_| {
            let u = sample_group(group, psi.d(), rng)?;
            pure_deviation(psi, &u, phase)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::from_deviations(deviations, tol))
}

/// Dark test: Haar SU(d) samples, global phase ignored.
pub fn is_dark_random<R: Rng + ?Sized>(
    psi: &StateVector,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<Verdict> {
    invariance_random(
        psi,
        Group::Sud,
        trials,
        tol,
        PhaseConvention::Insensitive,
        rng,
    )
}

/// Semi-dark test: random spin-(d-1)/2 rotations, global phase ignored.
///
/// Rotations use a uniform axis and uniform angle rather than Haar measure;
/// any family reaching every direction near the identity generates SU(2).
pub fn is_semidark_random<R: Rng + ?Sized>(
    psi: &StateVector,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<Verdict> {
    invariance_random(
        psi,
        Group::Su2,
        trials,
        tol,
        PhaseConvention::Insensitive,
        rng,
    )
}

/// Max Frobenius deviation `‖U^{⊗N} ρ U^{⊗N†} - ρ‖` over sampled `U`.
pub fn density_invariance<R: Rng + ?Sized>(
    rho: &DensityMatrix,
    group: Group,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<Verdict> {
    check_trials(trials, tol)?;
    rho.validate()?;
    let deviations = (0..trials)
        .map(|_| {
            let u = sample_group(group, rho.d(), rng)?;
            let full = tensor_power(&u, rho.n())?;
            rho.conjugate_by(&full)?.distance(rho)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::from_deviations(deviations, tol))
}

/// Darkness of the normalized superposition `a1 ψ + a2 φ` of two dark states.
pub fn superposition_closure_check<R: Rng + ?Sized>(
    psi: &StateVector,
    phi: &StateVector,
    coefficients: (C64, C64),
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<Verdict> {
    for (name, s) in [("first", psi), ("second", phi)] {
        if !is_dark_random(s, trials, tol, rng)?.pass {
            return Err(Error::Precondition(format!("{name} state is not dark")));
        }
    }
    let combined = psi.combine(coefficients.0, phi, coefficients.1)?;
    let combined = combined.normalized()?;
    is_dark_random(&combined, trials, tol, rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CollapseOutcome {
    Dark,
    NotDark,
    /// The collapse gave the zero vector; nothing is left to test.
    Vacuous,
}

#[derive(Debug, Clone)]
pub struct CollapseReport {
    /// Unnormalized remnant `<φ_M|ψ_N>`.
    pub remnant: StateVector,
    pub remnant_norm: f64,
    pub outcome: CollapseOutcome,
    /// Darkness verdict on the normalized remnant, when nonzero.
    pub verdict: Option<Verdict>,
}

/// Collapse a dark `ψ_N` onto a dark `φ_M` on `parties` and test whether the
/// `(N-M)`-site remnant is dark. Both inputs are checked first.
pub fn collapse_darkness_check<R: Rng + ?Sized>(
    psi_n: &StateVector,
    phi_m: &StateVector,
    parties: &[usize],
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<CollapseReport> {
    if phi_m.n() >= psi_n.n() {
        return Err(Error::Precondition(format!(
            "projector has {} sites, state has {}",
            phi_m.n(),
            psi_n.n()
        )));
    }
    for (name, s) in [("N-party state", psi_n), ("M-party state", phi_m)] {
        if !is_dark_random(s, trials, tol, rng)?.pass {
            return Err(Error::Precondition(format!("{name} is not dark")));
        }
    }
    let remnant = psi_n.collapse(phi_m, parties)?;
    let remnant_norm = remnant.norm();
    if remnant_norm <= tol {
        return Ok(CollapseReport {
            remnant,
            remnant_norm,
            outcome: CollapseOutcome::Vacuous,
            verdict: None,
        });
    }
    let verdict = is_dark_random(&remnant.normalized()?, trials, tol, rng)?;
    Ok(CollapseReport {
        remnant,
        remnant_norm,
        outcome: if verdict.pass {
            CollapseOutcome::Dark
        } else {
            CollapseOutcome::NotDark
        },
        verdict: Some(verdict),
    })
}
