//! Explicit dark, semi-dark and Werner states.
//!
//! Two-level kets printed as `|0>` and `|1>` map to the labels `+1/2` and
//! `-1/2`. Every constructor that claims a dark or semi-dark output screens it
//! for basis terms with nonzero total label, which no such state can carry.

use crate::error::{Error, Result};
use crate::hilbert::{
    check_distinct_sites, space_dim, BasisState, DensityMatrix, Label, StateVector,
};
use crate::numkernel::{c, ComplexMatrix, C64};
use crate::operators::flip_operator;

const SCREEN_CUTOFF: f64 = 1e-12;

fn screened(psi: StateVector) -> Result<StateVector> {
    if psi.has_zero_label_support(SCREEN_CUTOFF) {
        Ok(psi)
    } else {
        Err(Error::NonzeroLabelSum)
    }
}

fn ket(d: usize, twice: &[i32]) -> BasisState {
    BasisState::from_twice(d, twice).expect("hard-coded ket is valid")
}

/// `(|+1/2,-1/2> - |-1/2,+1/2>) / sqrt(2)`.
pub fn pair_singlet() -> StateVector {
    let terms = [
        (ket(2, &[1, -1]), c(1.0, 0.0)),
        (ket(2, &[-1, 1]), c(-1.0, 0.0)),
    ];
    StateVector::from_terms(2, 2, &terms, true).expect("singlet terms are valid")
}

/// Every permutation of `0..k` together with its sign, via Heap's algorithm.
pub(crate) fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    fn heap(k: usize, perm: &mut Vec<usize>, sign: &mut i8, out: &mut Vec<(Vec<usize>, i8)>) {
        if k <= 1 {
            out.push((perm.clone(), *sign));
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, perm, sign, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(j, k - 1);
            *sign = -*sign;
        }
        heap(k - 1, perm, sign, out);
    }
    let mut perm: Vec<usize> = (0..k).collect();
    let mut sign = 1;
    let mut out = Vec::new();
    heap(k, &mut perm, &mut sign, &mut out);
    out
}

/// Full antisymmetrizer applied to the descending label ket
/// `|(d-1)/2, ..., -(d-1)/2>`, normalized by `1/sqrt(d!)`.
///
/// The `d!` terms carry `sgn(π)`. For `d = 3` this reproduces
/// `|1,0,-1> - |1,-1,0> + |0,-1,1> - |0,1,-1> + |-1,1,0> - |-1,0,1>`.
pub fn p_all_state(d: usize) -> Result<StateVector> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    space_dim(d, d)?;
    let terms: Vec<(BasisState, C64)> = signed_permutations(d)
        .into_iter()
        .map(|(perm, sign)| {
            let labels = perm.iter().map(|&g| Label::from_digit(d, g)).collect();
            let b = BasisState::new(d, labels).expect("permuted labels are valid");
            (b, c(sign as f64, 0.0))
        })
        .collect();
    screened(StateVector::from_terms(d, d, &terms, true)?)
}

/// Partial singlet operator: `psi - (psi with sites j and k exchanged)`.
pub fn partial_singlet(psi: &StateVector, j: usize, k: usize) -> Result<StateVector> {
    let n = psi.n();
    check_distinct_sites(&[j, k], n)?;
    let mut dest: Vec<usize> = (0..n).collect();
    dest.swap(j, k);
    let swapped = psi.permute_sites(&dest)?;
    psi.combine(c(1.0, 0.0), &swapped, c(-1.0, 0.0))
}

/// Three-qutrit dark state.
pub fn psi3() -> StateVector {
    p_all_state(3).expect("d = 3 is in range")
}

/// Four-ququart dark state.
pub fn psi4() -> StateVector {
    p_all_state(4).expect("d = 4 is in range")
}

/// The four-ququart state built as `S^(1,2) S^(3,4) S^(1,4)` acting on the
/// three seed kets `|3/2,1/2,-1/2,-3/2>`, `|-1/2,3/2,1/2,-3/2>` and
/// `|1/2,-1/2,3/2,-3/2>`. Unnormalized.
pub fn psi4_from_partial_singlets() -> StateVector {
    let seeds = [
        ket(4, &[3, 1, -1, -3]),
        ket(4, &[-1, 3, 1, -3]),
        ket(4, &[1, -1, 3, -3]),
    ];
    let terms: Vec<_> = seeds.into_iter().map(|b| (b, c(1.0, 0.0))).collect();
    let seed = StateVector::from_terms(4, 4, &terms, false).expect("seed kets are valid");
    let s14 = partial_singlet(&seed, 0, 3).expect("sites in range");
    let s34 = partial_singlet(&s14, 2, 3).expect("sites in range");
    partial_singlet(&s34, 0, 1).expect("sites in range")
}

/// `λ` with `a = λ b` when `a` and `b` are parallel within `tol` (relative).
pub fn proportionality(a: &StateVector, b: &StateVector, tol: f64) -> Result<Option<C64>> {
    let bb = b.inner(b)?;
    if bb.norm() == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let lambda = b.inner(a)? / bb;
    let residual = a.combine(c(1.0, 0.0), b, -lambda)?.norm();
    Ok((residual <= tol * a.norm().max(1.0)).then_some(lambda))
}

/// The two printed orthogonal four-qubit dark states, unnormalized:
/// `|0011>+|1100>+|0110>+|1001>-2|0101>-2|1010>` and `|0011>+|1100>-|0110>-|1001>`.
pub fn four_qubit_dark_pair_unnormalized() -> (StateVector, StateVector) {
    let bits = |s: &str| -> BasisState {
        let twice: Vec<i32> = s.chars().map(|ch| if ch == '0' { 1 } else { -1 }).collect();
        ket(2, &twice)
    };
    let build = |terms: &[(&str, f64)]| {
        let terms: Vec<_> = terms.iter().map(|(s, w)| (bits(s), c(*w, 0.0))).collect();
        StateVector::from_terms(2, 4, &terms, false).expect("four-qubit kets are valid")
    };
    let first = build(&[
        ("0011", 1.0),
        ("1100", 1.0),
        ("0110", 1.0),
        ("1001", 1.0),
        ("0101", -2.0),
        ("1010", -2.0),
    ]);
    let second = build(&[("0011", 1.0), ("1100", 1.0), ("0110", -1.0), ("1001", -1.0)]);
    (first, second)
}

/// Normalized version of [`four_qubit_dark_pair_unnormalized`].
pub fn four_qubit_dark_pair() -> (StateVector, StateVector) {
    let (a, b) = four_qubit_dark_pair_unnormalized();
    (
        screened(a.normalized().expect("nonzero")).expect("zero label sum"),
        screened(b.normalized().expect("nonzero")).expect("zero label sum"),
    )
}

/// Product of qubit singlets on the pairs of a perfect matching.
///
/// For each pair `(p, q)` the singlet's first slot is site `p`; swapping the
/// order flips the sign of that factor.
pub fn pairing_singlet_product(pairs: &[(usize, usize)]) -> Result<StateVector> {
    if pairs.is_empty() {
        return Err(Error::InvalidPairing("no pairs".into()));
    }
    let n = 2 * pairs.len();
    let sites: Vec<usize> = pairs.iter().flat_map(|&(p, q)| [p, q]).collect();
    check_distinct_sites(&sites, n).map_err(|e| Error::InvalidPairing(e.to_string()))?;

    let singlet = pair_singlet();
    let mut product = singlet.clone();
    for _ in 1..pairs.len() {
        product = product.tensor(&singlet)?;
    }
    screened(product.permute_sites(&sites)?)
}

/// `(|1,-1> + |-1,1> - |0,0>) / sqrt(3)`: semi-dark but not dark.
pub fn qutrit_semidark_example() -> StateVector {
    let terms = [
        (ket(3, &[2, -2]), c(1.0, 0.0)),
        (ket(3, &[-2, 2]), c(1.0, 0.0)),
        (ket(3, &[0, 0]), c(-1.0, 0.0)),
    ];
    let psi = StateVector::from_terms(3, 2, &terms, true).expect("qutrit kets are valid");
    screened(psi).expect("zero label sum")
}

/// Range of `β` for which `αI + βV` (with unit trace) is positive semidefinite.
///
/// The flip operator has eigenvalue `+1` on the symmetric and `-1` on the
/// antisymmetric subspace, so the eigenvalues are `α ± β` with
/// `α = (1 - βd) / d^2`.
pub fn werner_beta_range(d: usize) -> (f64, f64) {
    let d = d as f64;
    (-1.0 / (d * (d - 1.0)), 1.0 / (d * (d + 1.0)))
}

/// `α` fixed by `tr ρ = 1` given `tr V = d`.
pub fn werner_alpha(d: usize, beta: f64) -> f64 {
    let d = d as f64;
    (1.0 - beta * d) / (d * d)
}

/// Two-site Werner state `ρ = αI + βV`.
pub fn werner_state(d: usize, beta: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let (min, max) = werner_beta_range(d);
    let slack = 1e-12;
    if !beta.is_finite() || beta < min - slack || beta > max + slack {
        return Err(Error::WernerOutOfRange { beta, d, min, max });
    }
    let alpha = werner_alpha(d, beta);
    let v = flip_operator(d)?;
    let mat = ComplexMatrix::identity(d * d, d * d).scale(alpha) + v.scale(beta);
    DensityMatrix::new(d, 2, mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{haar_special_unitary, haar_unitary, kron, seeded_rng};
    use crate::operators::{collective, spin_ladder, sud_ladder_family, Direction};

    fn annihilated_by_all_sud(psi: &StateVector, tol: f64) -> bool {
        sud_ladder_family(psi.d()).unwrap().iter().all(|l| {
            let op = collective(l, psi.n()).unwrap();
            psi.apply(&op).unwrap().norm() <= tol
        })
    }

    #[test]
    fn singlet_amplitudes() {
        let s = pair_singlet();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitude(&ket(2, &[1, -1])) - c(h, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(&ket(2, &[-1, 1])) - c(-h, 0.0)).norm() < 1e-15);
        assert!((s.inner(&s).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn signed_permutation_count_and_parity() {
        for k in 1..=5 {
            let perms = signed_permutations(k);
            let total: usize = (1..=k).product();
            assert_eq!(perms.len(), total);
            for (perm, sign) in &perms {
                // Parity by counting inversions.
                let inversions = (0..k)
                    .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                    .filter(|&(i, j)| perm[i] > perm[j])
                    .count();
                let expected = if inversions % 2 == 0 { 1 } else { -1 };
                assert_eq!(*sign, expected);
            }
        }
    }

    #[test]
    fn p_all_small_cases() {
        let p2 = p_all_state(2).unwrap();
        assert!((p2.inner(&pair_singlet()).unwrap() - c(1.0, 0.0)).norm() < 1e-14);

        let p3 = psi3();
        let n = 1.0 / 6f64.sqrt();
        let printed = [
            ([2, 0, -2], 1.0),
            ([2, -2, 0], -1.0),
            ([0, -2, 2], 1.0),
            ([0, 2, -2], -1.0),
            ([-2, 2, 0], 1.0),
            ([-2, 0, 2], -1.0),
        ];
        for (labels, sign) in printed {
            assert!((p3.amplitude(&ket(3, &labels)) - c(sign * n, 0.0)).norm() < 1e-15);
        }
        assert_eq!(p3.amplitude(&ket(3, &[0, 0, 0])), c(0.0, 0.0));
        assert_eq!(p3.terms(1e-15).len(), 6);

        let p4 = psi4();
        let terms = p4.terms(1e-15);
        assert_eq!(terms.len(), 24);
        let m = 1.0 / 24f64.sqrt();
        assert!(terms.iter().all(|(_, a)| (a.norm() - m).abs() < 1e-15));
        assert!((p4.norm() - 1.0).abs() < 1e-14);
        assert!(annihilated_by_all_sud(&p4, 1e-10));
        assert!(annihilated_by_all_sud(&p3, 1e-10));
    }

    #[test]
    fn p_all_is_antisymmetric() {
        for d in 2..=4 {
            let p = p_all_state(d).unwrap();
            for j in 0..d {
                for k in j + 1..d {
                    let mut dest: Vec<usize> = (0..d).collect();
                    dest.swap(j, k);
                    let swapped = p.permute_sites(&dest).unwrap();
                    assert!((swapped.amplitudes() + p.amplitudes()).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn p_all_picks_up_determinant() {
        let mut rng = seeded_rng(31);
        for d in 2..=4 {
            let p = p_all_state(d).unwrap();
            for _ in 0..20 {
                let u = haar_unitary(d, &mut rng);
                let det = u.determinant();
                let moved = p.apply_product(&u).unwrap();
                assert!((moved.amplitudes() - p.amplitudes() * det).norm() < 1e-10);

                let su = haar_special_unitary(d, &mut rng);
                let eig = p.inner(&p.apply_product(&su).unwrap()).unwrap();
                assert!((eig - c(1.0, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn partial_singlet_action() {
        let seed = StateVector::basis(&ket(3, &[2, 0, -2])).unwrap();
        let out = partial_singlet(&seed, 0, 2).unwrap();
        assert_eq!(out.amplitude(&ket(3, &[2, 0, -2])), c(1.0, 0.0));
        assert_eq!(out.amplitude(&ket(3, &[-2, 0, 2])), c(-1.0, 0.0));
        assert_eq!(out.terms(0.0).len(), 2);

        let twice = partial_singlet(&out, 0, 2).unwrap();
        assert!((twice.amplitudes() - out.amplitudes() * c(2.0, 0.0)).norm() < 1e-15);
        assert!(partial_singlet(&seed, 1, 1).is_err());
        assert!(partial_singlet(&seed, 0, 3).is_err());
    }

    #[test]
    fn psi4_routes_agree_up_to_scalar() {
        // Brute-force expansion of the partial-singlet route: each S^(j,k)
        // doubles the term count, 3 seeds * 8 = 24 terms, each with
        // coefficient +-1, against p_all's 24 terms of modulus 1/sqrt(24).
        let route = psi4_from_partial_singlets();
        assert_eq!(route.terms(1e-15).len(), 24);
        assert!(route
            .terms(1e-15)
            .iter()
            .all(|(_, a)| (a.norm() - 1.0).abs() < 1e-15));
        let lambda = proportionality(&route, &psi4(), 1e-12)
            .unwrap()
            .expect("parallel");
        assert!((lambda.norm() - 24f64.sqrt()).abs() < 1e-12);
        assert!(lambda.im.abs() < 1e-12);
    }

    #[test]
    fn four_qubit_pair() {
        let (a, b) = four_qubit_dark_pair_unnormalized();
        assert!((a.norm() - 12f64.sqrt()).abs() < 1e-14);
        assert!((b.norm() - 2.0).abs() < 1e-14);
        let (a, b) = four_qubit_dark_pair();
        assert!(a.inner(&b).unwrap().norm() < 1e-12);
        let jp = collective(&spin_ladder(2, Direction::Raise).unwrap(), 4).unwrap();
        let jm = collective(&spin_ladder(2, Direction::Lower).unwrap(), 4).unwrap();
        for s in [&a, &b] {
            assert!(s.apply(&jp).unwrap().norm() < 1e-12);
            assert!(s.apply(&jm).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn pairings() {
        let p12 = pairing_singlet_product(&[(0, 1), (2, 3)]).unwrap();
        let p13 = pairing_singlet_product(&[(0, 2), (1, 3)]).unwrap();
        // Direct expansion: s12 s34 = (|0101>-|0110>-|1001>+|1010>)/2 and
        // s13 s24 = (|0011>-|0110>-|1001>+|1100>)/2 share |0110> and |1001>.
        let overlap = p12.inner(&p13).unwrap();
        assert!((overlap - c(0.5, 0.0)).norm() < 1e-14);
        // Reversing one pair flips one factor.
        let p13r = pairing_singlet_product(&[(0, 2), (3, 1)]).unwrap();
        assert!((p12.inner(&p13r).unwrap() - c(-0.5, 0.0)).norm() < 1e-14);

        let (a, b) = four_qubit_dark_pair();
        for p in [&p12, &p13] {
            let pa = a.inner(p).unwrap();
            let pb = b.inner(p).unwrap();
            let residual = p
                .combine(c(1.0, 0.0), &a, -pa)
                .unwrap()
                .combine(c(1.0, 0.0), &b, -pb)
                .unwrap();
            assert!(residual.norm() <= 1e-10);
        }

        let base = pairing_singlet_product(&[(0, 1)]).unwrap();
        assert_eq!(base, pair_singlet());
        assert!(matches!(
            pairing_singlet_product(&[(0, 0)]),
            Err(Error::InvalidPairing(_))
        ));
        assert!(matches!(
            pairing_singlet_product(&[(0, 1), (1, 2)]),
            Err(Error::InvalidPairing(_))
        ));
        assert!(matches!(
            pairing_singlet_product(&[(0, 5), (1, 2)]),
            Err(Error::InvalidPairing(_))
        ));
        assert!(matches!(
            pairing_singlet_product(&[]),
            Err(Error::InvalidPairing(_))
        ));
    }

    #[test]
    fn qutrit_example_is_spin_singlet() {
        let phi = qutrit_semidark_example();
        assert!((phi.norm() - 1.0).abs() < 1e-15);
        for dir in [Direction::Raise, Direction::Lower] {
            let op = collective(&spin_ladder(3, dir).unwrap(), 2).unwrap();
            assert!(phi.apply(&op).unwrap().norm() <= 1e-12);
        }
        assert!(!annihilated_by_all_sud(&phi, 0.1));
    }

    #[test]
    fn screening_rejects_nonzero_label_sum() {
        let up = StateVector::basis(&ket(2, &[1, 1])).unwrap();
        assert_eq!(screened(up), Err(Error::NonzeroLabelSum));
    }

    #[test]
    fn werner_family() {
        let mm = werner_state(3, 0.0).unwrap();
        assert_eq!(mm, DensityMatrix::maximally_mixed(3, 2).unwrap());

        // |Ψ-><Ψ-| expanded as a matrix, compared with αI + βV at β = -1/2.
        let s = pair_singlet();
        let projector = DensityMatrix::from_pure(&s).unwrap();
        let w = werner_state(2, -0.5).unwrap();
        assert!(w.max_abs_diff(&projector) < 1e-15);
        assert_eq!(werner_alpha(2, -0.5), 0.5);

        assert!(matches!(
            werner_state(2, 0.6),
            Err(Error::WernerOutOfRange { .. })
        ));
        assert!(werner_state(2, -0.51).is_err());
        let (lo, hi) = werner_beta_range(3);
        werner_state(3, lo).unwrap();
        werner_state(3, hi).unwrap();

        let mut rng = seeded_rng(4);
        for d in [2, 3] {
            let w = werner_state(d, werner_beta_range(d).0 * 0.7).unwrap();
            for _ in 0..50 {
                let u = haar_unitary(d, &mut rng);
                let uu = kron(&u, &u);
                let moved = w.conjugate_by(&uu).unwrap();
                assert!(moved.max_abs_diff(&w) <= 1e-10);
            }
        }
    }
}
