use chm_core::cyclotomic::{quadrant_basis_rank, CycloElement, QuadrantBasisVector};
use chm_core::numtheory::euler_phi;
use chm_core::seqcore::{fourier_vector, Sequence};
use chm_core::spectra::{c0_law, coefficients, coefficients_by_reduction, full_spectral_verdict, index_map_check, n_table, IndexSet};
use num_bigint::BigInt;
use proptest::prelude::*;

fn sequence(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Sequence> {
    n.prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n))
        .prop_map(|bits| Sequence::new(bits.into_iter().map(|b| if b { -1 } else { 1 })).unwrap())
}

fn index_set(n: usize) -> impl Strategy<Value = IndexSet> {
    proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n).prop_map(move |m| IndexSet::new(n, m).unwrap())
}

#[test]
fn spectral_verdict_matches_hadamard_exhaustively() {
    for n in [4usize, 8, 12] {
        for mask in 0..1u64 << n {
            let s = Sequence::from_bits(n, mask).unwrap();
            let v = full_spectral_verdict(&s.minus_indices()).unwrap();
            assert_eq!(v.overall, s.is_circulant_hadamard(), "{s}");
            if v.overall {
                // At k = 0 the eigenvalue is n − 2|J|, outside the pair-sum form the law comes from.
                assert!(v.per_k.iter().filter(|k| k.k != 0).all(|k| k.c0_pass), "{s}");
            }
        }
    }
}

#[test]
fn index_set_and_sequence_eigenvalues_agree() {
    for mask in 0..1u64 << 8 {
        let s = Sequence::from_bits(8, mask).unwrap();
        let j = s.minus_indices();
        for k in 0..8 {
            assert!(s.eigenvalue(k).unwrap().zero_equal(&j.eigenvalue(k)).unwrap());
        }
    }
}

/// Rank over GF(p) of a small integer matrix; agrees with the rational rank
/// for all but finitely many primes.
fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[test]
fn basis_rank_matches_modular_rank() {
    const P: i64 = 1_000_000_007;
    for n in (4..=120).step_by(4) {
        let rows: Vec<Vec<i64>> = (0..n / 4)
            .map(|l| {
                let unit = QuadrantBasisVector::new(n, (0..n / 4).map(|i| i64::from(i == l))).unwrap();
                unit.to_cyclo().residue().iter().map(|c| i64::try_from(c).unwrap()).collect()
            })
            .collect();
        let report = quadrant_basis_rank(n).unwrap();
        assert_eq!(report.rank, rank_mod_p(&rows, P), "n = {n}");
        assert_eq!(report.rank as u64, euler_phi(n as u64) / 2, "n = {n}");
    }
}

proptest! {
    #[test]
    fn parseval(s in sequence(1..=24)) {
        let n = s.len();
        let mut total = CycloElement::zero(n).unwrap();
        for k in 0..n {
            total = &total + &s.eigenvalue(k).unwrap().norm_sq();
        }
        prop_assert_eq!(total.as_integer(), Some(BigInt::from(n * n)));
    }

    #[test]
    fn two_norm_routes_agree(s in sequence(1..=24), k in 0usize..24) {
        let k = k % s.len();
        let product = s.eigenvalue(k).unwrap().norm_sq();
        prop_assert!(product.zero_equal(&s.eigenvalue_norm_sq(k).unwrap()).unwrap());
    }

    #[test]
    fn eigen_identity(s in sequence(1..=20), k in 0usize..20) {
        let n = s.len();
        let k = k % n;
        let v = fourier_vector(n, k);
        let lambda = s.eigenvalue(k).unwrap();
        for (lhs, vi) in s.circulant().apply(&v).iter().zip(&v) {
            prop_assert!(lhs.zero_equal(&lambda.try_mul(vi).unwrap()).unwrap());
        }
    }

    #[test]
    fn autocorrelation_shape(s in sequence(1..=32)) {
        let r = s.autocorrelation();
        let n = s.len();
        prop_assert_eq!(r.values()[0], n as i64);
        for t in 1..n {
            prop_assert_eq!(r.values()[t], r.values()[n - t]);
            prop_assert_eq!((r.values()[t] - n as i64).rem_euclid(4), 0);
        }
        prop_assert_eq!(r.values().iter().sum::<i64>(), s.sum() * s.sum());
        prop_assert_eq!(s.is_circulant_hadamard(), s.circulant().is_hadamard());
    }

    #[test]
    fn rotation_and_negation_preserve_verdicts(s in sequence(1..=16), shift in 0usize..16) {
        let t = s.rotated(shift % s.len());
        prop_assert_eq!(t.autocorrelation(), s.autocorrelation());
        prop_assert_eq!(s.negated().autocorrelation(), s.autocorrelation());
        prop_assert_eq!(s.to_string().parse::<Sequence>().unwrap(), s);
    }

    #[test]
    fn coefficient_routes_agree(j in (1usize..=10).prop_flat_map(|m| index_set(4 * m)), k in 0usize..40) {
        let k = k % j.order();
        let counted = coefficients(&n_table(&j, k).unwrap()).unwrap();
        prop_assert_eq!(&counted, &coefficients_by_reduction(&j, k).unwrap());
        prop_assert!(counted.to_cyclo().zero_equal(&j.pair_sum(k)).unwrap());
        prop_assert!(index_map_check(&j, k).unwrap().holds);
    }

    #[test]
    fn n_table_totals(j in (1usize..=10).prop_flat_map(|m| index_set(4 * m)), k in 0usize..40) {
        let k = k % j.order();
        let t = n_table(&j, k).unwrap();
        prop_assert_eq!(t.total(), (j.len() * j.len()) as u64);
        let law = c0_law(&j, k).unwrap();
        prop_assert_eq!(law.holds, law.n_half as i64 == law.required_n_half);
    }
}
