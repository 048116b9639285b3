//! The first-quadrant real basis `{p₀, …, p_{n/4−1}}` with `p₀ = 1` and
//! `p_ℓ = ω^ℓ + ω^{−ℓ} = 2cos(2πℓ/n)`.
//!
//! Real elements are folded onto this basis with
//!
//! * `ω^e` and `ω^{n−e}` pair into `p_e` (conjugate pairing),
//! * `ω^{n/2} = −1 = −p₀`,
//! * `p_r = −p_{n/2−r}` for `r ∈ (n/4, n/2)`,
//! * `p_{n/4} = 2cos(π/2) = 0`.
//!
//! The basis is not always linearly independent: its span is the real
//! subfield of degree `φ(n)/2`, which is smaller than `n/4` whenever `n` has
//! an odd prime factor. [`quadrant_basis_rank`] measures this exactly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{integer_rank, CycloElement, CycloError};
use crate::numtheory::euler_phi;

/// Integer coefficients `C₀ … C_m` over `{p₀, …, p_m}`, `m = n/4 − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadrantBasisVector {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl QuadrantBasisVector {
    pub fn new<T: Into<BigInt>>(n: usize, coeffs: impl IntoIterator<Item = T>) -> Result<Self, CycloError> {
        if n == 0 || !n.is_multiple_of(4) {
            return Err(CycloError::UnsupportedOrder(n));
        }
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if coeffs.len() != n / 4 {
            return Err(CycloError::BasisLength { expected: n / 4, got: coeffs.len() });
        }
        Ok(Self { n, coeffs })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `m = n/4 − 1`, the largest basis index.
    pub fn m(&self) -> usize {
        self.n / 4 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Re-expands `Σ C_ℓ p_ℓ` into `ℤ[ω_n]`.
    pub fn to_cyclo(&self) -> CycloElement {
        let n = self.n;
        let mut out = CycloElement::zero(n).expect("n ≥ 4");
        let coeffs = &mut out.coeffs;
        coeffs[0] = self.coeffs[0].clone();
        for (l, c) in self.coeffs.iter().enumerate().skip(1) {
            coeffs[l] = c.clone();
            coeffs[n - l] = c.clone();
        }
        out
    }

    /// Approximate real value. Diagnostic only.
    pub fn approx(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(l, c)| {
                let p = if l == 0 { 1.0 } else { 2.0 * (std::f64::consts::TAU * l as f64 / self.n as f64).cos() };
                c.to_f64().unwrap_or(f64::NAN) * p
            })
            .sum()
    }
}

/// Folds a conjugation-symmetric element onto the first-quadrant basis.
pub fn reduce_to_quadrant_basis(a: &CycloElement) -> Result<QuadrantBasisVector, CycloError> {
    let n = a.order();
    if !n.is_multiple_of(4) {
        return Err(CycloError::UnsupportedOrder(n));
    }
    if let Some(e) = a.first_asymmetry() {
        return Err(CycloError::NotReal(e, n - e));
    }
    let (quarter, half) = (n / 4, n / 2);
    let src = a.coeffs();
    let mut c = vec![BigInt::default(); quarter];
    c[0] = &src[0] - &src[half];
    // Each e in (0, n/2) stands for the pair ω^e + ω^{n−e} = p_e.
    for (e, v) in src.iter().enumerate().take(half).skip(1) {
        match e.cmp(&quarter) {
            std::cmp::Ordering::Less => c[e] += v,
            std::cmp::Ordering::Equal => {}
            std::cmp::Ordering::Greater => c[half - e] -= v,
        }
    }
    Ok(QuadrantBasisVector { n, coeffs: c })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub n: usize,
    pub basis_size: usize,
    pub rank: usize,
    pub euler_half: usize,
    pub independent: bool,
}

/// Exact rank of `{p₀, …, p_{n/4−1}}` over ℚ.
///
/// Each `p_ℓ` is reduced modulo `Φ_n`, giving an integer row of length
/// `φ(n)`; the rank of that matrix is the dimension of the span.
pub fn quadrant_basis_rank(n: usize) -> Result<RankReport, CycloError> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(CycloError::UnsupportedOrder(n));
    }
    let basis_size = n / 4;
    let rows: Vec<Vec<BigInt>> = (0..basis_size)
        .map(|l| {
            let mut unit = vec![0i64; basis_size];
            unit[l] = 1;
            QuadrantBasisVector::new(n, unit).unwrap().to_cyclo().residue()
        })
        .collect();
    let rank = integer_rank(&rows);
    Ok(RankReport {
        n,
        basis_size,
        rank,
        euler_half: euler_phi(n as u64) as usize / 2,
        independent: rank == basis_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(v: &[i64]) -> CycloElement {
        CycloElement::from_coeffs(v.iter().copied()).unwrap()
    }

    fn roots(n: usize, es: &[usize]) -> CycloElement {
        let mut z = CycloElement::zero(n).unwrap();
        for &e in es {
            z.add_root_multiple(e as i64, 1);
        }
        z
    }

    #[test]
    fn fold_examples() {
        let zero16 = QuadrantBasisVector::new(16, [0; 4]).unwrap();
        assert_eq!(reduce_to_quadrant_basis(&roots(16, &[0, 8])).unwrap(), zero16);
        assert_eq!(reduce_to_quadrant_basis(&roots(16, &[4, 12])).unwrap(), zero16);
        let n = CycloElement::from_integer(16, 16).unwrap();
        assert_eq!(reduce_to_quadrant_basis(&n).unwrap(), QuadrantBasisVector::new(16, [16, 0, 0, 0]).unwrap());
    }

    #[test]
    fn fold_signs() {
        // p_5 + p_6 + p_7 at n = 16 folds to −p_3 − p_2 − p_1.
        let x = roots(16, &[5, 6, 7, 9, 10, 11]);
        let v = reduce_to_quadrant_basis(&x).unwrap();
        assert_eq!(v, QuadrantBasisVector::new(16, [0, -1, -1, -1]).unwrap());
        assert!(v.to_cyclo().zero_equal(&x).unwrap());
    }

    #[test]
    fn fold_errors() {
        assert_eq!(reduce_to_quadrant_basis(&el(&[0, 1, 0, 0])), Err(CycloError::NotReal(1, 3)));
        assert_eq!(reduce_to_quadrant_basis(&el(&[1, 0, 0, 0, 0, 0])), Err(CycloError::UnsupportedOrder(6)));
        assert!(matches!(QuadrantBasisVector::new(16, [1, 2]), Err(CycloError::BasisLength { expected: 4, got: 2 })));
    }

    #[test]
    fn order_four() {
        // m = 0: ω and ω³ vanish as p₁ = 0, ω² = −1.
        let v = reduce_to_quadrant_basis(&el(&[3, 5, 2, 5])).unwrap();
        assert_eq!(v.coeffs(), &[BigInt::from(1)]);
    }

    #[test]
    fn rank_examples() {
        let r = quadrant_basis_rank(4).unwrap();
        assert_eq!((r.rank, r.basis_size, r.euler_half, r.independent), (1, 1, 1, true));
        let r = quadrant_basis_rank(16).unwrap();
        assert_eq!((r.rank, r.basis_size, r.euler_half, r.independent), (4, 4, 4, true));
        let r = quadrant_basis_rank(36).unwrap();
        assert_eq!((r.rank, r.basis_size, r.euler_half, r.independent), (6, 9, 6, false));
        assert_eq!(quadrant_basis_rank(18), Err(CycloError::UnsupportedOrder(18)));
    }

    #[test]
    fn rank_is_real_subfield_degree() {
        for n in (4..=200).step_by(4) {
            let r = quadrant_basis_rank(n).unwrap();
            assert!(r.rank <= r.basis_size.min(r.euler_half), "n = {n}");
            assert_eq!(r.rank, r.euler_half, "n = {n}");
            assert_eq!(r.independent, r.basis_size == r.euler_half, "n = {n}");
        }
    }

    fn symmetric(n: usize) -> impl Strategy<Value = CycloElement> {
        proptest::collection::vec(-9i64..9, n / 2 + 1).prop_map(move |half| {
            let coeffs: Vec<i64> = (0..n).map(|e| half[e.min(n - e)]).collect();
            CycloElement::from_coeffs(coeffs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn fold_round_trip(a in (1usize..17).prop_flat_map(|q| symmetric(4 * q))) {
            let v = reduce_to_quadrant_basis(&a).unwrap();
            prop_assert!(v.to_cyclo().zero_equal(&a).unwrap());
            let (re, im) = a.approx();
            prop_assert!(im.abs() < 1e-6);
            prop_assert!((re - v.approx()).abs() < 1e-6 * (1.0 + re.abs()));
        }

        #[test]
        fn basis_vector_round_trip(q in 1usize..17, seed in proptest::collection::vec(-50i64..50, 16)) {
            let v = QuadrantBasisVector::new(4 * q, seed[..q].iter().copied()).unwrap();
            prop_assert_eq!(reduce_to_quadrant_basis(&v.to_cyclo()).unwrap(), v);
        }
    }
}
