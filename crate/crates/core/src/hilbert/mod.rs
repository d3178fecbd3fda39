//! Product-basis bookkeeping for N sites of dimension d.
//!
//! The canonical ordering puts site 0 in the most significant digit. Within a
//! site the labels descend, so label `a` sits at digit `(d-1)/2 - a`. Every
//! index computation in the crate goes through [`BasisState::index`] or the
//! stride helpers below.

mod density;
mod json;
mod label;

pub use density::DensityMatrix;
pub use json::{DensityJson, StateJson, TermJson, JSON_AMPLITUDE_CUTOFF};
pub use label::Label;

use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, ComplexVector, C64};

/// Upper bound on `d^N` for dense storage.
pub const MAX_DIM: usize = 1 << 20;

/// `d^n`, checked against [`MAX_DIM`].
pub fn space_dim(d: usize, n: usize) -> Result<usize> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if n == 0 {
        return Err(Error::NoSites);
    }
    let cap = Error::SizeCap { d, n, cap: MAX_DIM };
    let mut dim = 1usize;
    for _ in 0..n {
        dim = dim.checked_mul(d).ok_or(cap.clone())?;
        if dim > MAX_DIM {
            return Err(cap);
        }
    }
    Ok(dim)
}

/// Stride of site `k` in a flat index over `n` sites.
#[inline]
pub(crate) fn stride(d: usize, n: usize, k: usize) -> usize {
    d.pow((n - 1 - k) as u32)
}

pub(crate) fn digits_of(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for k in (0..n).rev() {
        digits[k] = idx % d;
        idx /= d;
    }
    digits
}

pub(crate) fn index_from_digits(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &g| acc * d + g)
}

/// Twice the total label of the basis state at flat index `idx`.
pub(crate) fn twice_label_sum_of_index(idx: usize, d: usize, n: usize) -> i64 {
    digits_of(idx, d, n)
        .into_iter()
        .map(|g| Label::from_digit(d, g).twice() as i64)
        .sum()
}

/// A product basis state `|a^(1), ..., a^(N)>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    d: usize,
    labels: Vec<Label>,
}

impl BasisState {
    pub fn new(d: usize, labels: Vec<Label>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        if labels.is_empty() {
            return Err(Error::NoSites);
        }
        if let Some(bad) = labels.iter().find(|l| !l.is_valid_for(d)) {
            return Err(Error::InvalidLabel {
                label: bad.to_string(),
                d,
            });
        }
        Ok(BasisState { d, labels })
    }

    /// Build from doubled label values, e.g. `[1, -1]` for `|1/2, -1/2>`.
    pub fn from_twice(d: usize, twice: &[i32]) -> Result<Self> {
        Self::new(d, twice.iter().map(|&t| Label::from_twice(t)).collect())
    }

    /// Inverse of [`BasisState::index`].
    pub fn from_index(d: usize, n: usize, idx: usize) -> Result<Self> {
        let dim = space_dim(d, n)?;
        if idx >= dim {
            return Err(Error::ShapeMismatch(format!(
                "index {idx} out of range for dimension {dim}"
            )));
        }
        let labels = digits_of(idx, d, n)
            .into_iter()
            .map(|g| Label::from_digit(d, g))
            .collect();
        Ok(BasisState { d, labels })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn digits(&self) -> Vec<usize> {
        self.labels
            .iter()
            .map(|l| l.digit(self.d).expect("labels validated at construction"))
            .collect()
    }

    /// Flat index in the canonical ordering.
    pub fn index(&self) -> usize {
        index_from_digits(&self.digits(), self.d)
    }

    /// `sum_j a^(j)`.
    pub fn total_label_sum(&self) -> f64 {
        self.twice_label_sum() as f64 / 2.0
    }

    pub fn twice_label_sum(&self) -> i64 {
        self.labels.iter().map(|l| l.twice() as i64).sum()
    }
}

/// Anything that acts linearly on a [`StateVector`].
pub trait Operator {
    fn act(&self, psi: &StateVector) -> Result<StateVector>;
}

impl Operator for ComplexMatrix {
    fn act(&self, psi: &StateVector) -> Result<StateVector> {
        if self.nrows() != psi.dim() || self.ncols() != psi.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} operator on a state of dimension {}",
                self.nrows(),
                self.ncols(),
                psi.dim()
            )));
        }
        Ok(StateVector {
            d: psi.d,
            n: psi.n,
            amps: self * &psi.amps,
        })
    }
}

/// Dense amplitudes over the `d^N` product basis. Not necessarily normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    d: usize,
    n: usize,
    amps: ComplexVector,
}

impl StateVector {
    pub fn zeros(d: usize, n: usize) -> Result<Self> {
        let dim = space_dim(d, n)?;
        Ok(StateVector {
            d,
            n,
            amps: ComplexVector::zeros(dim),
        })
    }

    pub fn from_amplitudes(d: usize, n: usize, amps: ComplexVector) -> Result<Self> {
        let dim = space_dim(d, n)?;
        if amps.len() != dim {
            return Err(Error::ShapeMismatch(format!(
                "{} amplitudes for d = {d}, N = {n} (expected {dim})",
                amps.len()
            )));
        }
        Ok(StateVector { d, n, amps })
    }

    pub fn basis(b: &BasisState) -> Result<Self> {
        let mut psi = Self::zeros(b.d(), b.n())?;
        psi.amps[b.index()] = C64::new(1.0, 0.0);
        Ok(psi)
    }

    /// Assemble a state from `(basis state, coefficient)` terms. Repeated basis
    /// states accumulate.
    pub fn from_terms(
        d: usize,
        n: usize,
        terms: &[(BasisState, C64)],
        normalize: bool,
    ) -> Result<Self> {
        if terms.is_empty() && normalize {
            return Err(Error::ZeroNorm);
        }
        let mut psi = Self::zeros(d, n)?;
        for (b, coeff) in terms {
            if b.d() != d || b.n() != n {
                return Err(Error::ShapeMismatch(format!(
                    "term with d = {}, N = {} in a d = {d}, N = {n} state",
                    b.d(),
                    b.n()
                )));
            }
            psi.amps[b.index()] += coeff;
        }
        if normalize {
            psi.normalized()
        } else {
            Ok(psi)
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amps
    }

    pub fn amplitude(&self, b: &BasisState) -> C64 {
        self.amps[b.index()]
    }

    pub fn into_amplitudes(self) -> ComplexVector {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(C64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, factor: C64) -> Self {
        StateVector {
            d: self.d,
            n: self.n,
            amps: self.amps.map(|z| z * factor),
        }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: C64, other: &StateVector, b: C64) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(StateVector {
            d: self.d,
            n: self.n,
            amps: self.amps.map(|z| z * a) + other.amps.map(|z| z * b),
        })
    }

    fn check_same_shape(&self, other: &StateVector) -> Result<()> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "(d = {}, N = {}) vs (d = {}, N = {})",
                self.d, self.n, other.d, other.n
            )));
        }
        Ok(())
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.check_same_shape(other)?;
        Ok(self.amps.dotc(&other.amps))
    }

    /// `self ⊗ other`; the sites of `other` follow those of `self`.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        if self.d != other.d {
            return Err(Error::ShapeMismatch(format!(
                "tensor of d = {} and d = {}",
                self.d, other.d
            )));
        }
        let n = self.n + other.n;
        space_dim(self.d, n)?;
        let amps = self.amps.kronecker(&other.amps);
        Ok(StateVector { d: self.d, n, amps })
    }

    pub fn apply<O: Operator + ?Sized>(&self, op: &O) -> Result<StateVector> {
        op.act(self)
    }

    /// Apply the single-site matrix `u` on site `site`.
    pub fn apply_local(&self, site: usize, u: &ComplexMatrix) -> Result<StateVector> {
        let d = self.d;
        if u.shape() != (d, d) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} local operator for d = {d}",
                u.nrows(),
                u.ncols()
            )));
        }
        if site >= self.n {
            return Err(Error::SiteOutOfRange { site, n: self.n });
        }
        let s = stride(d, self.n, site);
        let block = s * d;
        let mut out = ComplexVector::zeros(self.dim());
        for base in (0..self.dim()).step_by(block) {
            for inner in 0..s {
                let offset = base + inner;
                for r in 0..d {
                    let mut acc = C64::new(0.0, 0.0);
                    for col in 0..d {
                        acc += u[(r, col)] * self.amps[offset + col * s];
                    }
                    out[offset + r * s] = acc;
                }
            }
        }
        Ok(StateVector {
            d,
            n: self.n,
            amps: out,
        })
    }

    /// `U^{⊗N} |self>`, applied site by site.
    pub fn apply_product(&self, u: &ComplexMatrix) -> Result<StateVector> {
        let mut psi = self.clone();
        for site in 0..self.n {
            psi = psi.apply_local(site, u)?;
        }
        Ok(psi)
    }

    /// Relabel sites: site `k` of `self` becomes site `dest[k]` of the result.
    pub fn permute_sites(&self, dest: &[usize]) -> Result<StateVector> {
        let n = self.n;
        if dest.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "site permutation of length {} for {n} sites",
                dest.len()
            )));
        }
        check_distinct_sites(dest, n)?;
        let mut out = ComplexVector::zeros(self.dim());
        let mut target = vec![0; n];
        for (idx, amp) in self.amps.iter().enumerate() {
            if *amp == C64::new(0.0, 0.0) {
                continue;
            }
            let digits = digits_of(idx, self.d, n);
            for (k, &g) in digits.iter().enumerate() {
                target[dest[k]] = g;
            }
            out[index_from_digits(&target, self.d)] = *amp;
        }
        Ok(StateVector {
            d: self.d,
            n,
            amps: out,
        })
    }

    /// Partial inner product `<phi|_parties |self>`.
    ///
    /// Site `k` of `phi` is contracted against site `parties[k]` of `self`.
    /// The remaining sites keep their relative order. The result is not
    /// normalized and may be zero.
    pub fn collapse(&self, phi: &StateVector, parties: &[usize]) -> Result<StateVector> {
        let n = self.n;
        let m = phi.n;
        if phi.d != self.d {
            return Err(Error::ShapeMismatch(format!(
                "collapse of d = {} onto d = {}",
                self.d, phi.d
            )));
        }
        if m >= n {
            return Err(Error::Precondition(format!(
                "collapse needs fewer sites in the projector ({m}) than in the state ({n})"
            )));
        }
        if parties.len() != m {
            return Err(Error::ShapeMismatch(format!(
                "{} parties for a {m}-site projector",
                parties.len()
            )));
        }
        check_distinct_sites(parties, n)?;

        let d = self.d;
        let remaining: Vec<usize> = (0..n).filter(|k| !parties.contains(k)).collect();
        let mut out = StateVector::zeros(d, n - m)?;
        let mut phi_digits = vec![0; m];
        let mut rem_digits = vec![0; n - m];
        for (idx, amp) in self.amps.iter().enumerate() {
            if *amp == C64::new(0.0, 0.0) {
                continue;
            }
            let digits = digits_of(idx, d, n);
            for (k, &p) in parties.iter().enumerate() {
                phi_digits[k] = digits[p];
            }
            for (k, &r) in remaining.iter().enumerate() {
                rem_digits[k] = digits[r];
            }
            let coeff = phi.amps[index_from_digits(&phi_digits, d)].conj();
            out.amps[index_from_digits(&rem_digits, d)] += coeff * amp;
        }
        Ok(out)
    }

    /// Nonzero terms (above `cutoff` in modulus) in canonical order.
    pub fn terms(&self, cutoff: f64) -> Vec<(BasisState, C64)> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > cutoff)
            .map(|(idx, a)| {
                let b = BasisState::from_index(self.d, self.n, idx)
                    .expect("index within the state's dimension");
                (b, *a)
            })
            .collect()
    }

    /// Whether every basis state carrying weight above `cutoff` has zero total label.
    pub fn has_zero_label_support(&self, cutoff: f64) -> bool {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > cutoff)
            .all(|(idx, _)| twice_label_sum_of_index(idx, self.d, self.n) == 0)
    }
}

pub(crate) fn check_distinct_sites(sites: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &s in sites {
        if s >= n {
            return Err(Error::SiteOutOfRange { site: s, n });
        }
        if seen[s] {
            return Err(Error::DuplicateSite(s));
        }
        seen[s] = true;
    }
    Ok(())
}
