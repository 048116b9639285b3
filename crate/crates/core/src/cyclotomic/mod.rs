//! Exact arithmetic in `ℤ[ω_n]`, the integer combinations of the `n`-th roots
//! of unity.
//!
//! Elements are stored as length-`n` coefficient vectors over the powers
//! `ω⁰ … ω^{n−1}`. That representation is not unique (`1 + ω² = 0` when
//! `n = 4`), so equality is decided on the residue modulo the cyclotomic
//! polynomial `Φ_n`, which is canonical.

mod basis;
mod elim;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

pub use basis::{quadrant_basis_rank, reduce_to_quadrant_basis, QuadrantBasisVector, RankReport};
pub use elim::integer_rank;
pub use poly::{cyclotomic_polynomial, format_poly, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("invalid root order {0}: must be at least 1")]
    InvalidOrder(usize),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("element is not conjugation-symmetric (coefficient of ω^{0} differs from ω^{1})")]
    NotReal(usize, usize),
    #[error("unsupported order {0}: the first-quadrant basis needs 4 | n")]
    UnsupportedOrder(usize),
    #[error("expected {expected} basis coefficients, got {got}")]
    BasisLength { expected: usize, got: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl CycloElement {
    pub fn zero(n: usize) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::InvalidOrder(n));
        }
        Ok(Self { n, coeffs: vec![BigInt::zero(); n] })
    }

    /// The integer `v` embedded in `ℤ[ω_n]`.
    pub fn from_integer(n: usize, v: impl Into<BigInt>) -> Result<Self, CycloError> {
        let mut z = Self::zero(n)?;
        z.coeffs[0] = v.into();
        Ok(z)
    }

    /// `ω_n^{e mod n}`; negative exponents wrap.
    pub fn root(n: usize, e: i64) -> Result<Self, CycloError> {
        let mut z = Self::zero(n)?;
        z.coeffs[e.rem_euclid(n as i64) as usize] = BigInt::from(1);
        Ok(z)
    }

    /// Builds `Σ_e coeffs[e]·ω^e`; the vector length is the order.
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Result<Self, CycloError> {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if coeffs.is_empty() {
            return Err(CycloError::InvalidOrder(0));
        }
        Ok(Self { n: coeffs.len(), coeffs })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Adds `m·ω^e` in place.
    pub fn add_root_multiple(&mut self, e: i64, m: i64) {
        let slot = &mut self.coeffs[e.rem_euclid(self.n as i64) as usize];
        *slot += m;
    }

    fn check_order(&self, other: &Self) -> Result<(), CycloError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(CycloError::OrderMismatch(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { n: self.n, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { n: self.n, coeffs })
    }

    /// Cyclic convolution: exponents add modulo `n`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_order(other)?;
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[(i + j) % n] += a * b;
            }
        }
        Ok(Self { n, coeffs: out })
    }

    pub fn scale(&self, m: impl Into<BigInt>) -> Self {
        let m = m.into();
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c * &m).collect() }
    }

    /// Complex conjugation, `ω^e ↦ ω^{n−e}`.
    pub fn conjugate(&self) -> Self {
        let n = self.n;
        let coeffs = (0..n).map(|e| self.coeffs[(n - e) % n].clone()).collect();
        Self { n, coeffs }
    }

    /// `self · ω^s`: rotates the coefficient vector.
    pub fn shift(&self, s: i64) -> Self {
        let n = self.n;
        let s = s.rem_euclid(n as i64) as usize;
        let coeffs = (0..n).map(|e| self.coeffs[(e + n - s) % n].clone()).collect();
        Self { n, coeffs }
    }

    /// `self · conjugate(self)`.
    pub fn norm_sq(&self) -> Self {
        self.try_mul(&self.conjugate()).expect("same order")
    }

    /// Whether the coefficient vector satisfies `coeffs[e] = coeffs[n−e]`.
    pub fn is_conjugation_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub(crate) fn first_asymmetry(&self) -> Option<usize> {
        let n = self.n;
        (1..n).find(|&e| self.coeffs[e] != self.coeffs[n - e])
    }

    /// Canonical residue modulo `Φ_n`, length `φ(n)`.
    pub fn residue(&self) -> Vec<BigInt> {
        let mut r = self.coeffs.clone();
        poly::reduce_mod_phi(self.n, &mut r);
        r
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        self.residue().iter().all(Zero::is_zero)
    }

    /// Equality as complex numbers.
    pub fn zero_equal(&self, other: &Self) -> Result<bool, CycloError> {
        Ok(self.try_sub(other)?.is_zero())
    }

    /// If the element equals an integer, returns it.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.residue();
        match r.split_first() {
            Some((c0, rest)) if rest.iter().all(Zero::is_zero) => Some(c0.clone()),
            _ => None,
        }
    }

    /// Approximate complex value `(re, im)` in floating point. Diagnostic only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.n as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (e, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let theta = std::f64::consts::TAU * e as f64 / n;
            (re + c * theta.cos(), im + c * theta.sin())
        })
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement({}; {self})", self.n)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| format!("{c}·ω^{e}"))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

// Operator impls panic on an order mismatch; the `try_*` methods report it.
impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: Self) -> CycloElement {
        self.try_add(rhs).unwrap()
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: Self) -> CycloElement {
        self.try_sub(rhs).unwrap()
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: Self) -> CycloElement {
        self.try_mul(rhs).unwrap()
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        self.scale(-1)
    }
}
