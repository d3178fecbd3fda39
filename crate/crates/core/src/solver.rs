//! Dark and semi-dark subspaces as joint null spaces of collective ladders.
//!
//! Every singlet is annihilated by the collective `J0`, so it lives in the
//! zero-weight sector (basis states with `sum_j a^(j) = 0`). Both solvers
//! restrict the columns of the stacked ladder matrix to that sector before the
//! SVD; the kernel is unchanged and the matrices shrink by a large factor.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{space_dim, twice_label_sum_of_index, Label, StateVector};
use crate::numkernel::{nullspace_detailed, ComplexMatrix, ComplexVector, C64};
use crate::operators::{
    collective, matrix_unit_entries, spin_j0, spin_ladder_entries, sud_ladder_family,
    CollectiveOperator, Direction, LocalOperator,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubspaceKind {
    Dark,
    Semidark,
}

impl std::fmt::Display for SubspaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SubspaceKind::Dark => "dark",
            SubspaceKind::Semidark => "semidark",
        })
    }
}

/// Orthonormal basis of a dark or semi-dark subspace.
#[derive(Debug, Clone)]
pub struct DarkSubspace {
    pub d: usize,
    pub n: usize,
    pub kind: SubspaceKind,
    pub basis: Vec<StateVector>,
    pub tol: f64,
    /// Largest `‖L ψ‖` over basis vectors and the defining ladder family.
    pub max_residual: f64,
    /// Largest `‖J0 ψ‖` over basis vectors; zero is implied, not imposed.
    pub j0_residual: f64,
    /// Dark only: largest residual under all `2d(d-1)` SU(d) ladders.
    pub full_family_residual: Option<f64>,
    /// Whether the dimension survives scaling `tol` by 10 and by 1/10.
    pub tol_stable: bool,
}

impl DarkSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Norm of the component of `psi` orthogonal to the subspace.
    pub fn distance_from(&self, psi: &StateVector) -> Result<f64> {
        let mut rest = psi.clone();
        for b in &self.basis {
            let coeff = b.inner(psi)?;
            rest = rest.combine(C64::new(1.0, 0.0), b, -coeff)?;
        }
        Ok(rest.norm())
    }

    /// Orthogonal projection of `psi` onto the subspace.
    pub fn project(&self, psi: &StateVector) -> Result<StateVector> {
        let mut out = StateVector::zeros(psi.d(), psi.n())?;
        for b in &self.basis {
            let coeff = b.inner(psi)?;
            out = out.combine(C64::new(1.0, 0.0), b, coeff)?;
        }
        Ok(out)
    }

    /// Cosines of the principal angles between two subspaces of equal dimension,
    /// i.e. the singular values of the overlap matrix.
    pub fn principal_cosines(&self, other: &[StateVector]) -> Result<Vec<f64>> {
        if other.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "comparing a {}-dimensional subspace with {} vectors",
                self.dim(),
                other.len()
            )));
        }
        principal_cosines(&self.basis, other)
    }
}

/// Singular values of `<a_i|b_j>` for two orthonormal families.
pub fn principal_cosines(a: &[StateVector], b: &[StateVector]) -> Result<Vec<f64>> {
    let mut overlap = ComplexMatrix::zeros(a.len(), b.len());
    for (i, u) in a.iter().enumerate() {
        for (j, v) in b.iter().enumerate() {
            overlap[(i, j)] = u.inner(v)?;
        }
    }
    if overlap.is_empty() {
        return Ok(Vec::new());
    }
    Ok(overlap.singular_values().iter().cloned().collect())
}

/// Flat indices of basis states with `sum_j 2 a^(j) == twice_m`.
pub fn sector_indices(d: usize, n: usize, twice_m: i64) -> Result<Vec<usize>> {
    let dim = space_dim(d, n)?;
    Ok((0..dim)
        .filter(|&idx| twice_label_sum_of_index(idx, d, n) == twice_m)
        .collect())
}

struct RestrictedKernel {
    basis: Vec<StateVector>,
    stable: bool,
}

/// Joint kernel of `ops` among vectors supported on `columns`.
fn restricted_kernel(
    d: usize,
    n: usize,
    columns: &[usize],
    ops: &[CollectiveOperator],
    tol: f64,
) -> Result<RestrictedKernel> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if columns.is_empty() {
        return Ok(RestrictedKernel {
            basis: Vec::new(),
            stable: true,
        });
    }
    // One block of rows per operator, indexed by the images that occur.
    let mut entries: Vec<(usize, usize, C64)> = Vec::new();
    let mut rows = 0;
    for op in ops {
        let mut row_of: HashMap<usize, usize> = HashMap::new();
        for (col, &idx) in columns.iter().enumerate() {
            for (image, v) in op.column(idx) {
                let next = rows + row_of.len();
                let r = *row_of.entry(image).or_insert(next);
                entries.push((r, col, v));
            }
        }
        rows += row_of.len();
    }
    let mut a = ComplexMatrix::zeros(rows, columns.len());
    for (r, col, v) in entries {
        a[(r, col)] += v;
    }
    let ns = nullspace_detailed(&a, tol)?;
    let dim = space_dim(d, n)?;
    let basis = ns
        .basis
        .iter()
        .map(|v| {
            let mut full = ComplexVector::zeros(dim);
            for (col, &idx) in columns.iter().enumerate() {
                full[idx] = v[col];
            }
            StateVector::from_amplitudes(d, n, full)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RestrictedKernel {
        basis,
        stable: ns.is_stable(tol),
    })
}

fn max_residual(basis: &[StateVector], ops: &[CollectiveOperator]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for psi in basis {
        for op in ops {
            worst = worst.max(psi.apply(op)?.norm());
        }
    }
    Ok(worst)
}

fn spin_ladders(d: usize, n: usize) -> Result<Vec<CollectiveOperator>> {
    [Direction::Raise, Direction::Lower]
        .into_iter()
        .map(|dir| CollectiveOperator::from_entries(d, n, spin_ladder_entries(d, dir)))
        .collect()
}

/// Collective `E_{j,j+1}` and `E_{j+1,j}` for `0 <= j < d-1`.
pub fn adjacent_ladders(d: usize, n: usize) -> Result<Vec<CollectiveOperator>> {
    let mut ops = Vec::with_capacity(2 * (d - 1));
    for j in 0..d - 1 {
        ops.push(CollectiveOperator::from_entries(
            d,
            n,
            matrix_unit_entries(j, j + 1),
        )?);
        ops.push(CollectiveOperator::from_entries(
            d,
            n,
            matrix_unit_entries(j + 1, j),
        )?);
    }
    Ok(ops)
}

fn j0_residual(d: usize, n: usize, basis: &[StateVector]) -> Result<f64> {
    if basis.is_empty() {
        return Ok(0.0);
    }
    let j0 = collective(&spin_j0(d)?, n)?;
    max_residual(basis, &[j0])
}

/// Singlets of the spin-(d-1)/2 representation: `ker J+ ∩ ker J-`.
pub fn semidark_basis(n: usize, d: usize, tol: f64) -> Result<DarkSubspace> {
    space_dim(d, n)?;
    let ops = spin_ladders(d, n)?;
    let columns = sector_indices(d, n, 0)?;
    let kernel = restricted_kernel(d, n, &columns, &ops, tol)?;
    Ok(DarkSubspace {
        d,
        n,
        kind: SubspaceKind::Semidark,
        max_residual: max_residual(&kernel.basis, &ops)?,
        j0_residual: j0_residual(d, n, &kernel.basis)?,
        full_family_residual: None,
        tol_stable: kernel.stable,
        basis: kernel.basis,
        tol,
    })
}

/// States annihilated by every collective SU(d) ladder.
///
/// Solved with the `2(d-1)` adjacent ladders only; products of adjacent
/// matrix units give all the others. The result is then checked against the
/// full `2d(d-1)` family.
pub fn dark_basis(n: usize, d: usize, tol: f64) -> Result<DarkSubspace> {
    space_dim(d, n)?;
    let ops = adjacent_ladders(d, n)?;
    let columns = sector_indices(d, n, 0)?;
    let kernel = restricted_kernel(d, n, &columns, &ops, tol)?;
    let full_family_residual = if kernel.basis.is_empty() {
        0.0
    } else {
        let family = sud_ladder_family(d)?
            .iter()
            .map(|l| collective(l, n))
            .collect::<Result<Vec<_>>>()?;
        max_residual(&kernel.basis, &family)?
    };
    Ok(DarkSubspace {
        d,
        n,
        kind: SubspaceKind::Dark,
        max_residual: max_residual(&kernel.basis, &ops)?,
        j0_residual: j0_residual(d, n, &kernel.basis)?,
        full_family_residual: Some(full_family_residual),
        tol_stable: kernel.stable,
        basis: kernel.basis,
        tol,
    })
}

pub fn solve(kind: SubspaceKind, n: usize, d: usize, tol: f64) -> Result<DarkSubspace> {
    match kind {
        SubspaceKind::Dark => dark_basis(n, d, tol),
        SubspaceKind::Semidark => semidark_basis(n, d, tol),
    }
}

/// Dimension of the joint kernel of an arbitrary family of local operators,
/// taken collectively. With `zero_weight_only` unset the whole space is searched.
pub fn family_kernel_dimension(
    n: usize,
    d: usize,
    family: &[LocalOperator],
    tol: f64,
    zero_weight_only: bool,
) -> Result<usize> {
    let dim = space_dim(d, n)?;
    let ops = family
        .iter()
        .map(|l| collective(l, n))
        .collect::<Result<Vec<_>>>()?;
    let columns = if zero_weight_only {
        sector_indices(d, n, 0)?
    } else {
        (0..dim).collect()
    };
    Ok(restricted_kernel(d, n, &columns, &ops, tol)?.basis.len())
}

/// Multiplicity of each collective spin `j` in `(C^d)^{⊗N}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplet {
    /// `2j`.
    pub twice_j: u32,
    pub multiplicity: usize,
}

impl Multiplet {
    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    pub fn irrep_dim(&self) -> usize {
        self.twice_j as usize + 1
    }
}

/// Highest-weight count: `mult(j) = dim ker(J+)` on the `J0 = j` sector.
/// Sorted by `j` descending; only nonzero multiplicities are listed.
pub fn su2_multiplet_census(n: usize, d: usize, tol: f64) -> Result<Vec<Multiplet>> {
    let dim = space_dim(d, n)?;
    let jp = CollectiveOperator::from_entries(d, n, spin_ladder_entries(d, Direction::Raise))?;
    let mut sectors: HashMap<i64, Vec<usize>> = HashMap::new();
    for idx in 0..dim {
        sectors
            .entry(twice_label_sum_of_index(idx, d, n))
            .or_default()
            .push(idx);
    }
    let mut weights: Vec<i64> = sectors.keys().cloned().filter(|&m| m >= 0).collect();
    weights.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    for m in weights {
        let kernel = restricted_kernel(d, n, &sectors[&m], std::slice::from_ref(&jp), tol)?;
        if !kernel.basis.is_empty() {
            out.push(Multiplet {
                twice_j: m as u32,
                multiplicity: kernel.basis.len(),
            });
        }
    }
    Ok(out)
}

fn prime_exponents_of_factorial(n: u64, exps: &mut HashMap<u64, i64>, sign: i64) {
    for k in 2..=n {
        let mut x = k;
        let mut p = 2;
        while x > 1 {
            while x % p == 0 {
                *exps.entry(p).or_insert(0) += sign;
                x /= p;
            }
            p += 1;
        }
    }
}

fn add_prime_exponents(mut x: u64, exps: &mut HashMap<u64, i64>, sign: i64) {
    let mut p = 2;
    while x > 1 {
        while x.is_multiple_of(p) {
            *exps.entry(p).or_insert(0) += sign;
            x /= p;
        }
        p += 1;
    }
}

/// Number of standard Young tableaux of the `d x (N/d)` rectangle, or zero
/// when `d` does not divide `N`. Independent of the numerical solver; this is
/// the Schur–Weyl count of SU(d) invariants in `(C^d)^{⊗N}`.
pub fn dark_dimension_oracle(n: usize, d: usize) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if n == 0 {
        return Err(Error::NoSites);
    }
    if !n.is_multiple_of(d) {
        return Ok(0);
    }
    let m = n / d;
    // Hook length formula: N! / prod over cells of (arm + leg + 1).
    let mut exps = HashMap::new();
    prime_exponents_of_factorial(n as u64, &mut exps, 1);
    for row in 0..d {
        for col in 0..m {
            let hook = (m - col - 1) + (d - row - 1) + 1;
            add_prime_exponents(hook as u64, &mut exps, -1);
        }
    }
    let mut count: u64 = 1;
    for (p, e) in exps {
        debug_assert!(e >= 0, "hook product divides N!");
        for _ in 0..e {
            count = count
                .checked_mul(p)
                .ok_or(Error::Overflow("dark_dimension_oracle"))?;
        }
    }
    Ok(count)
}

/// Number of spin singlets: `#{M = 0} - #{M = 1}` over product basis states.
pub fn semidark_dimension_oracle(n: usize, d: usize) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if n == 0 {
        return Err(Error::NoSites);
    }
    // counts[s] = number of label strings with sum 2a = s - offset.
    let top = (d - 1) as i64;
    let offset = top * n as i64;
    let mut counts = vec![0u128; (2 * offset + 1) as usize];
    counts[offset as usize] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; counts.len()];
        for (s, &cnt) in counts.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            for l in Label::all(d) {
                let t = s as i64 + l.twice() as i64;
                if t >= 0 && (t as usize) < next.len() {
                    next[t as usize] = next[t as usize]
                        .checked_add(cnt)
                        .ok_or(Error::Overflow("semidark_dimension_oracle"))?;
                }
            }
        }
        counts = next;
    }
    let at = |twice_m: i64| {
        counts
            .get((offset + twice_m) as usize)
            .copied()
            .unwrap_or(0)
    };
    let singlets = at(0) - at(2);
    u64::try_from(singlets).map_err(|_| Error::Overflow("semidark_dimension_oracle"))
}

/// Numerical check of "m orthogonal dark states exist for N = m d".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub d: usize,
    pub m: usize,
    pub n: usize,
    pub numeric_dim: usize,
    pub oracle_dim: u64,
    /// `numeric_dim >= m`.
    pub conjecture_holds: bool,
    pub matches_oracle: bool,
    pub tol_stable: bool,
}

pub fn conjecture_check(d: usize, m: usize, tol: f64) -> Result<ConjectureReport> {
    if m == 0 {
        return Err(Error::NoSites);
    }
    let n = m
        .checked_mul(d)
        .ok_or(Error::Overflow("conjecture_check"))?;
    let sub = dark_basis(n, d, tol)?;
    let oracle_dim = dark_dimension_oracle(n, d)?;
    let numeric_dim = sub.dim();
    Ok(ConjectureReport {
        d,
        m,
        n,
        numeric_dim,
        oracle_dim,
        conjecture_holds: numeric_dim >= m,
        matches_oracle: numeric_dim as u64 == oracle_dim,
        tol_stable: sub.tol_stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{four_qubit_dark_pair, pair_singlet, psi3, qutrit_semidark_example};
    use crate::numkernel::DEFAULT_TOL;

    /// Standard Young tableaux of a `rows x cols` rectangle by direct
    /// enumeration of fillings: place 1..N one at a time, each on the row
    /// whose next free cell keeps the shape a partition.
    fn count_rectangular_syt(rows: usize, cols: usize) -> u64 {
        fn go(lengths: &mut Vec<usize>, cols: usize, left: usize) -> u64 {
            if left == 0 {
                return 1;
            }
            let mut total = 0;
            for r in 0..lengths.len() {
                let ok = lengths[r] < cols && (r == 0 || lengths[r - 1] > lengths[r]);
                if ok {
                    lengths[r] += 1;
                    total += go(lengths, cols, left - 1);
                    lengths[r] -= 1;
                }
            }
            total
        }
        go(&mut vec![0; rows], cols, rows * cols)
    }

    #[test]
    fn oracle_matches_enumeration() {
        for d in 2..=4 {
            for m in 1..=4 {
                assert_eq!(
                    dark_dimension_oracle(d * m, d).unwrap(),
                    count_rectangular_syt(d, m),
                    "d = {d}, m = {m}"
                );
            }
        }
        assert_eq!(dark_dimension_oracle(4, 2).unwrap(), 2);
        assert_eq!(dark_dimension_oracle(6, 2).unwrap(), 5);
        assert_eq!(dark_dimension_oracle(5, 3).unwrap(), 0);
        assert_eq!(dark_dimension_oracle(6, 3).unwrap(), 5);
        assert_eq!(dark_dimension_oracle(12, 2).unwrap(), 132);
    }

    #[test]
    fn semidark_oracle_small_cases() {
        assert_eq!(semidark_dimension_oracle(2, 2).unwrap(), 1);
        assert_eq!(semidark_dimension_oracle(3, 2).unwrap(), 0);
        assert_eq!(semidark_dimension_oracle(4, 2).unwrap(), 2);
        assert_eq!(semidark_dimension_oracle(2, 3).unwrap(), 1);
        assert_eq!(semidark_dimension_oracle(3, 3).unwrap(), 1);
    }

    #[test]
    fn semidark_examples() {
        let s = semidark_basis(2, 2, DEFAULT_TOL).unwrap();
        assert_eq!(s.dim(), 1);
        assert!((s.basis[0].inner(&pair_singlet()).unwrap().norm() - 1.0).abs() < 1e-10);
        assert_eq!(semidark_basis(3, 2, DEFAULT_TOL).unwrap().dim(), 0);
        let s = semidark_basis(2, 3, DEFAULT_TOL).unwrap();
        assert_eq!(s.dim(), 1);
        let overlap = s.basis[0].inner(&qutrit_semidark_example()).unwrap();
        assert!((overlap.norm() - 1.0).abs() < 1e-10);
        assert!(s.j0_residual < 1e-10);
        assert!(s.tol_stable);
    }

    #[test]
    fn dark_examples() {
        assert_eq!(dark_basis(2, 2, DEFAULT_TOL).unwrap().dim(), 1);
        let four = dark_basis(4, 2, DEFAULT_TOL).unwrap();
        assert_eq!(four.dim(), 2);
        let (a, b) = four_qubit_dark_pair();
        let cosines = four.principal_cosines(&[a, b]).unwrap();
        assert!(cosines.iter().all(|c| (c - 1.0).abs() < 1e-9));

        for (n, d) in [(2, 3), (4, 3), (5, 3)] {
            assert_eq!(
                dark_basis(n, d, DEFAULT_TOL).unwrap().dim(),
                0,
                "({n}, {d})"
            );
        }
        let three = dark_basis(3, 3, DEFAULT_TOL).unwrap();
        assert_eq!(three.dim(), 1);
        assert!((three.basis[0].inner(&psi3()).unwrap().norm() - 1.0).abs() < 1e-9);
        assert!(three.full_family_residual.unwrap() < 1e-10);
    }

    #[test]
    fn basis_is_orthonormal_with_small_residuals() {
        for (n, d) in [(4, 2), (6, 2), (3, 3), (4, 4)] {
            for kind in [SubspaceKind::Dark, SubspaceKind::Semidark] {
                let sub = solve(kind, n, d, DEFAULT_TOL).unwrap();
                for (i, u) in sub.basis.iter().enumerate() {
                    for (j, v) in sub.basis.iter().enumerate() {
                        let expected = if i == j { 1.0 } else { 0.0 };
                        assert!((u.inner(v).unwrap() - C64::new(expected, 0.0)).norm() <= 1e-10);
                    }
                }
                assert!(sub.max_residual <= 10.0 * DEFAULT_TOL);
                assert!(sub.j0_residual <= 10.0 * DEFAULT_TOL);
                assert!(sub.tol_stable);
            }
        }
    }

    #[test]
    fn zero_label_support_exhaustive() {
        for (n, d) in [(2, 2), (4, 2), (3, 3)] {
            for kind in [SubspaceKind::Dark, SubspaceKind::Semidark] {
                let sub = solve(kind, n, d, DEFAULT_TOL).unwrap();
                for psi in &sub.basis {
                    assert!(psi.has_zero_label_support(0.0));
                }
            }
        }
    }

    #[test]
    fn prefilter_does_not_change_the_kernel() {
        for (n, d) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3)] {
            let spin: Vec<LocalOperator> = [Direction::Raise, Direction::Lower]
                .into_iter()
                .map(|dir| crate::operators::spin_ladder(d, dir).unwrap())
                .collect();
            let full = family_kernel_dimension(n, d, &spin, DEFAULT_TOL, false).unwrap();
            let restricted = family_kernel_dimension(n, d, &spin, DEFAULT_TOL, true).unwrap();
            assert_eq!(full, restricted, "({n}, {d})");
            assert_eq!(full, semidark_basis(n, d, DEFAULT_TOL).unwrap().dim());
        }
    }

    #[test]
    fn adjacent_ladders_suffice() {
        for d in 2..=4 {
            for n in 1..=4 {
                let adjacent = dark_basis(n, d, DEFAULT_TOL).unwrap().dim();
                let family = sud_ladder_family(d).unwrap();
                let full = family_kernel_dimension(n, d, &family, DEFAULT_TOL, false).unwrap();
                assert_eq!(adjacent, full, "d = {d}, n = {n}");
            }
        }
    }

    #[test]
    fn dark_inside_semidark_and_equal_for_qubits() {
        for (n, d) in [(4, 2), (6, 2), (3, 3), (6, 3)] {
            let dark = dark_basis(n, d, DEFAULT_TOL).unwrap();
            let semi = semidark_basis(n, d, DEFAULT_TOL).unwrap();
            for psi in &dark.basis {
                assert!(semi.distance_from(psi).unwrap() <= 1e-9);
            }
            if d == 2 {
                let cos = semi.principal_cosines(&dark.basis).unwrap();
                assert!(cos.iter().all(|c| (c - 1.0).abs() <= 1e-9));
            }
        }
    }

    #[test]
    fn census() {
        let c = su2_multiplet_census(4, 2, DEFAULT_TOL).unwrap();
        let pairs: Vec<(u32, usize)> = c.iter().map(|m| (m.twice_j, m.multiplicity)).collect();
        assert_eq!(pairs, vec![(4, 1), (2, 3), (0, 2)]);
        let c = su2_multiplet_census(2, 2, DEFAULT_TOL).unwrap();
        let pairs: Vec<(u32, usize)> = c.iter().map(|m| (m.twice_j, m.multiplicity)).collect();
        assert_eq!(pairs, vec![(2, 1), (0, 1)]);
        for (n, d) in [(3, 2), (5, 2), (2, 3), (3, 3), (3, 4), (2, 5)] {
            let c = su2_multiplet_census(n, d, DEFAULT_TOL).unwrap();
            let total: usize = c.iter().map(|m| m.irrep_dim() * m.multiplicity).sum();
            assert_eq!(total, space_dim(d, n).unwrap());
        }
    }

    #[test]
    fn conjecture_small() {
        let r = conjecture_check(2, 1, DEFAULT_TOL).unwrap();
        assert_eq!(
            (r.numeric_dim, r.oracle_dim, r.conjecture_holds),
            (1, 1, true)
        );
        let r = conjecture_check(2, 2, DEFAULT_TOL).unwrap();
        assert_eq!(
            (r.numeric_dim, r.oracle_dim, r.conjecture_holds),
            (2, 2, true)
        );
        let r = conjecture_check(2, 3, DEFAULT_TOL).unwrap();
        assert_eq!((r.numeric_dim, r.oracle_dim), (5, 5));
        assert!(r.matches_oracle);
    }

    #[test]
    fn size_cap_errors() {
        assert!(matches!(
            dark_basis(21, 2, DEFAULT_TOL),
            Err(Error::SizeCap { .. })
        ));
        assert!(matches!(
            semidark_basis(2, 2, 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }
}
