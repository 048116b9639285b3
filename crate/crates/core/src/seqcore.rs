//! ±1 sequences and the circulant matrices they generate.
//!
//! A sequence `h = (h₀, …, h_{n−1})` is the first row of the circulant matrix
//! whose row `i` is `h` cyclically shifted right by `i`. That matrix is
//! Hadamard exactly when the periodic autocorrelation of `h` vanishes at every
//! non-zero shift.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::CycloElement;
use crate::numtheory::exact_sqrt;
use crate::spectra::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("empty sequence")]
    Empty,
    #[error("entry {index} is {value}, expected -1 or +1")]
    InvalidEntry { index: usize, value: i64 },
    #[error("invalid character {ch:?} at position {index}, expected '+' or '-'")]
    InvalidChar { index: usize, ch: char },
    #[error("index k = {k} out of range for order {n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("order {0} exceeds the 64-entry bitmask form")]
    TooLongForBits(usize),
}

/// A first row over `{−1, +1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    entries: Vec<i8>,
}

impl Sequence {
    pub fn new(entries: impl IntoIterator<Item = i64>) -> Result<Self, SequenceError> {
        let entries = entries
            .into_iter()
            .enumerate()
            .map(|(index, value)| match value {
                1 => Ok(1),
                -1 => Ok(-1),
                _ => Err(SequenceError::InvalidEntry { index, value }),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        if entries.is_empty() {
            return Err(SequenceError::Empty);
        }
        Ok(Self { entries })
    }

    /// Bit `i` of `mask` set means `h_i = −1`.
    pub fn from_bits(n: usize, mask: u64) -> Result<Self, SequenceError> {
        if n == 0 {
            return Err(SequenceError::Empty);
        }
        if n > 64 {
            return Err(SequenceError::TooLongForBits(n));
        }
        Ok(Self { entries: (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect() })
    }

    pub fn to_bits(&self) -> Result<u64, SequenceError> {
        if self.len() > 64 {
            return Err(SequenceError::TooLongForBits(self.len()));
        }
        Ok(self.entries.iter().enumerate().filter(|(_, &h)| h < 0).fold(0, |m, (i, _)| m | 1 << i))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; sequences have order at least one.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn minus_count(&self) -> usize {
        self.entries.iter().filter(|&&h| h < 0).count()
    }

    /// `Σ h_i`.
    pub fn sum(&self) -> i64 {
        self.entries.iter().map(|&h| h as i64).sum()
    }

    pub fn negated(&self) -> Self {
        Self { entries: self.entries.iter().map(|h| -h).collect() }
    }

    /// Cyclic left rotation: entry `i` of the result is `h_{(i+s) mod n}`.
    pub fn rotated(&self, s: usize) -> Self {
        let n = self.len();
        Self { entries: (0..n).map(|i| self.entries[(i + s) % n]).collect() }
    }

    pub fn autocorrelation(&self) -> AutocorrelationProfile {
        let n = self.len();
        let h = &self.entries;
        let r = (0..n)
            .map(|tau| (0..n).map(|i| (h[i] * h[(i + tau) % n]) as i64).sum())
            .collect();
        AutocorrelationProfile { r }
    }

    /// Periodic autocorrelation vanishes at every shift `τ ≠ 0`.
    pub fn is_circulant_hadamard(&self) -> bool {
        self.autocorrelation().is_perfect()
    }

    /// Row `i` is the sequence cyclically shifted right by `i`.
    pub fn circulant(&self) -> CirculantMatrix {
        let n = self.len();
        let rows = (0..n).map(|i| (0..n).map(|j| self.entries[(j + n - i) % n]).collect()).collect();
        CirculantMatrix { rows }
    }

    fn check_k(&self, k: usize) -> Result<(), SequenceError> {
        if k < self.len() {
            Ok(())
        } else {
            Err(SequenceError::IndexOutOfRange { k, n: self.len() })
        }
    }

    /// `λ_k = Σ_α h_α ω^{kα}`, exactly.
    pub fn eigenvalue(&self, k: usize) -> Result<CycloElement, SequenceError> {
        self.check_k(k)?;
        let n = self.len();
        let mut lambda = CycloElement::zero(n).expect("n ≥ 1");
        for (alpha, &h) in self.entries.iter().enumerate() {
            lambda.add_root_multiple((k * alpha % n) as i64, h as i64);
        }
        Ok(lambda)
    }

    /// `|λ_k|² = Σ_τ r[τ]·ω^{kτ}`, built from the autocorrelation.
    pub fn eigenvalue_norm_sq(&self, k: usize) -> Result<CycloElement, SequenceError> {
        self.check_k(k)?;
        let n = self.len();
        let mut out = CycloElement::zero(n).expect("n ≥ 1");
        for (tau, &r) in self.autocorrelation().values().iter().enumerate() {
            out.add_root_multiple((k * tau % n) as i64, r);
        }
        Ok(out)
    }

    /// Whether `|λ_k|² − n` reduces to zero for every `k`.
    pub fn has_flat_spectrum(&self) -> bool {
        let n = self.len();
        let target = CycloElement::from_integer(n, n as i64).expect("n ≥ 1");
        (0..n).all(|k| self.eigenvalue_norm_sq(k).unwrap().zero_equal(&target).unwrap())
    }

    /// Positions carrying `−1`.
    pub fn minus_indices(&self) -> IndexSet {
        let members = self.entries.iter().enumerate().filter(|(_, &h)| h < 0).map(|(i, _)| i);
        IndexSet::new(self.len(), members).expect("positions are distinct and in range")
    }
}

impl FromStr for Sequence {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .trim()
            .chars()
            .enumerate()
            .map(|(index, ch)| match ch {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(SequenceError::InvalidChar { index, ch }),
            })
            .collect::<Result<Vec<i64>, _>>()?;
        Self::new(entries)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.entries.iter().map(|&h| if h > 0 { '+' } else { '-' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({self})")
    }
}

/// `r[τ] = Σ_i h_i·h_{(i+τ) mod n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutocorrelationProfile {
    r: Vec<i64>,
}

impl AutocorrelationProfile {
    pub fn order(&self) -> usize {
        self.r.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.r
    }

    pub fn is_perfect(&self) -> bool {
        self.r.iter().skip(1).all(|&v| v == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantMatrix {
    rows: Vec<Vec<i8>>,
}

impl CirculantMatrix {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    /// `H·Hᵀ = n·I`, by direct matrix product.
    pub fn is_hadamard(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let dot: i64 = self.rows[i].iter().zip(&self.rows[j]).map(|(&a, &b)| (a * b) as i64).sum();
                dot == if i == j { n as i64 } else { 0 }
            })
        })
    }

    /// `H·v` for a vector of cyclotomic elements.
    pub fn apply(&self, v: &[CycloElement]) -> Vec<CycloElement> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = CycloElement::zero(v[0].order()).expect("non-empty");
                for (&h, x) in row.iter().zip(v) {
                    acc = if h > 0 { &acc + x } else { &acc - x };
                }
                acc
            })
            .collect()
    }
}

/// The Fourier mode `v_k = (1, ω^k, ω^{2k}, …, ω^{(n−1)k})`.
pub fn fourier_vector(n: usize, k: usize) -> Vec<CycloElement> {
    (0..n).map(|j| CycloElement::root(n, (j * k % n) as i64).expect("n ≥ 1")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// `n = 1`: fails the even-order test, yet `(±1)` is a 1×1 Hadamard matrix.
    TrivialException,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Lemma1Verdict {
    pub n: usize,
    pub status: CheckStatus,
    /// Why the check failed, if it did.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

/// Even-order test. Depends on `n` only.
pub fn lemma1_order(n: usize) -> Lemma1Verdict {
    let (status, witness) = match n {
        1 => (CheckStatus::TrivialException, Some("n = 1 is odd, but (±1) is a 1×1 Hadamard matrix".to_string())),
        n if n % 2 == 0 => (CheckStatus::Pass, None),
        n => (CheckStatus::Fail, Some(format!("n = {n} is odd, so h·P(h) is a sum of an odd number of ±1 terms"))),
    };
    Lemma1Verdict { n, status, witness }
}

pub fn lemma1_check(seq: &Sequence) -> Lemma1Verdict {
    lemma1_order(seq.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum WeightCase {
    /// `(n − √n)/2` entries equal to −1.
    Lower,
    /// `(n + √n)/2` entries equal to −1.
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Lemma2Verdict {
    pub n: usize,
    pub sqrt_n: Option<usize>,
    /// The admissible −1 counts `(n ∓ √n)/2`, when `n` is a perfect square.
    pub allowed_minus_counts: Vec<usize>,
    pub minus_count: Option<usize>,
    pub case: Option<WeightCase>,
    pub pass: bool,
}

/// Perfect-square test and the admissible weights. Depends on `n` only.
pub fn lemma2_order(n: usize) -> Lemma2Verdict {
    let sqrt_n = exact_sqrt(n as u64).map(|s| s as usize);
    let allowed_minus_counts = sqrt_n.map(|s| vec![(n - s) / 2, (n + s) / 2]).unwrap_or_default();
    Lemma2Verdict { n, sqrt_n, allowed_minus_counts, minus_count: None, case: None, pass: sqrt_n.is_some() }
}

pub fn lemma2_check(seq: &Sequence) -> Lemma2Verdict {
    let mut v = lemma2_order(seq.len());
    let count = seq.minus_count();
    v.minus_count = Some(count);
    v.case = match v.allowed_minus_counts.as_slice() {
        [lo, _] if count == *lo => Some(WeightCase::Lower),
        [_, hi] if count == *hi => Some(WeightCase::Upper),
        _ => None,
    };
    v.pass = v.case.is_some();
    v
}
