//! Pair-difference counts over an index set and the basis coefficients they
//! induce.
//!
//! For an index set `J ⊆ [0, n)` and a multiplier `k`,
//! `N_ℓ^k = |{(s, t) ∈ J×J : k(s − t) ≡ ℓ (mod n)}|`, and
//! `Σ_{s,t∈J} ω^{k(s−t)} = Σ_ℓ N_ℓ^k ω^ℓ`. When `4 | n` that sum is real and
//! folds onto the first-quadrant basis as `C_ℓ = N_ℓ − N_{n/2−ℓ}`.
//!
//! `J` here is the set of `−1` positions of a sequence. Shifting `J`
//! uniformly (for example by `n/2`) changes none of the counts, so any other
//! choice of representative gives the same tables.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{reduce_to_quadrant_basis, CycloElement, CycloError, QuadrantBasisVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("invalid order 0")]
    InvalidOrder,
    #[error("multiplier k = {k} out of range for order {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("unsupported order {0}: basis coefficients need 4 | n")]
    UnsupportedOrder(usize),
}

impl From<CycloError> for SpectraError {
    fn from(e: CycloError) -> Self {
        match e {
            CycloError::UnsupportedOrder(n) => SpectraError::UnsupportedOrder(n),
            other => unreachable!("unexpected cyclotomic error: {other}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet {
    n: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, SpectraError> {
        if n == 0 {
            return Err(SpectraError::InvalidOrder);
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&index) = members.iter().find(|&&i| i >= n) {
            return Err(SpectraError::IndexOutOfRange { index, n });
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(SpectraError::DuplicateIndex(w[0]));
        }
        Ok(Self { n, members })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn check_k(&self, k: usize) -> Result<(), SpectraError> {
        if k < self.n {
            Ok(())
        } else {
            Err(SpectraError::KOutOfRange { k, n: self.n })
        }
    }

    /// `Σ_{s∈J} ω^{ks}`.
    pub fn root_sum(&self, k: usize) -> CycloElement {
        let mut z = CycloElement::zero(self.n).expect("n ≥ 1");
        for &s in &self.members {
            z.add_root_multiple((k * s % self.n) as i64, 1);
        }
        z
    }

    /// `Σ_{s,t∈J} ω^{k(s−t)}`, computed as `(Σ_s ω^{ks})·conj(Σ_t ω^{kt})`.
    pub fn pair_sum(&self, k: usize) -> CycloElement {
        self.root_sum(k).norm_sq()
    }

    /// `λ_k` of the sequence whose `−1` entries sit at `J`:
    /// `Σ_α ω^{kα} − 2·Σ_{s∈J} ω^{ks}`.
    pub fn eigenvalue(&self, k: usize) -> CycloElement {
        let mut z = self.root_sum(k).scale(-2);
        for alpha in 0..self.n {
            z.add_root_multiple((k * alpha % self.n) as i64, 1);
        }
        z
    }
}

/// `counts[ℓ] = N_ℓ^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NTable {
    pub n: usize,
    pub k: usize,
    pub counts: Vec<u64>,
}

impl NTable {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ_ℓ N_ℓ ω^ℓ`.
    pub fn to_cyclo(&self) -> CycloElement {
        CycloElement::from_coeffs(self.counts.iter().copied()).expect("n ≥ 1")
    }
}

pub fn n_table(j: &IndexSet, k: usize) -> Result<NTable, SpectraError> {
    j.check_k(k)?;
    let n = j.n;
    let mut counts = vec![0u64; n];
    for &s in &j.members {
        for &t in &j.members {
            counts[k * ((s + n - t) % n) % n] += 1;
        }
    }
    Ok(NTable { n, k, counts })
}

/// `C_ℓ = N_ℓ − N_{n/2−ℓ}` for `ℓ ∈ [0, n/4)`.
pub fn coefficients(t: &NTable) -> Result<QuadrantBasisVector, SpectraError> {
    let n = t.n;
    if !n.is_multiple_of(4) {
        return Err(SpectraError::UnsupportedOrder(n));
    }
    let c = (0..n / 4).map(|l| t.counts[l] as i64 - t.counts[n / 2 - l] as i64);
    Ok(QuadrantBasisVector::new(n, c)?)
}

/// The same coefficients through the cyclotomic route: fold
/// `Σ_{s,t} ω^{k(s−t)}` onto the basis.
pub fn coefficients_by_reduction(j: &IndexSet, k: usize) -> Result<QuadrantBasisVector, SpectraError> {
    j.check_k(k)?;
    Ok(reduce_to_quadrant_basis(&j.pair_sum(k))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMapMismatch {
    pub l: usize,
    pub direct: u64,
    pub mapped: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMapVerdict {
    pub n: usize,
    pub k: usize,
    pub holds: bool,
    pub mismatch: Option<IndexMapMismatch>,
}

/// Checks `N_ℓ^k = Σ_{d : kd ≡ ℓ} N_d^1` for every `ℓ`: the `k`-table is the
/// `k = 1` table pushed forward along `d ↦ kd mod n`.
pub fn index_map_check(j: &IndexSet, k: usize) -> Result<IndexMapVerdict, SpectraError> {
    let direct = n_table(j, k)?;
    let base = n_table(j, 1 % j.n)?;
    let n = j.n;
    let mut mapped = vec![0u64; n];
    for (d, &c) in base.counts.iter().enumerate() {
        mapped[k * d % n] += c;
    }
    let mismatch = (0..n)
        .find(|&l| direct.counts[l] != mapped[l])
        .map(|l| IndexMapMismatch { l, direct: direct.counts[l], mapped: mapped[l] });
    Ok(IndexMapVerdict { n, k, holds: mismatch.is_none(), mismatch })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C0LawVerdict {
    pub n: usize,
    pub k: usize,
    pub n_zero: u64,
    pub n_half: u64,
    /// `4(N₀ − N_{n/2}) = n`.
    pub holds: bool,
    /// The `N_{n/2}` that would satisfy the law: `(4N₀ − n)/4`.
    pub required_n_half: i64,
}

pub fn c0_law(j: &IndexSet, k: usize) -> Result<C0LawVerdict, SpectraError> {
    let n = j.n;
    if !n.is_multiple_of(4) {
        return Err(SpectraError::UnsupportedOrder(n));
    }
    let t = n_table(j, k)?;
    let (n_zero, n_half) = (t.counts[0], t.counts[n / 2]);
    Ok(C0LawVerdict {
        n,
        k,
        n_zero,
        n_half,
        holds: 4 * (n_zero as i64 - n_half as i64) == n as i64,
        required_n_half: n_zero as i64 - (n / 4) as i64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KVerdict {
    pub k: usize,
    pub n_zero: u64,
    pub n_half: u64,
    pub c0_pass: bool,
    pub c_vector: Vec<i64>,
    /// Exact `|λ_k|² = n`.
    pub lambda_sq_equals_n: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralVerdict {
    pub n: usize,
    pub j: Vec<usize>,
    pub per_k: Vec<KVerdict>,
    pub overall: bool,
}

fn k_verdict(j: &IndexSet, k: usize) -> KVerdict {
    let n = j.n;
    let table = n_table(j, k).expect("k < n");
    let c = coefficients(&table).expect("4 | n");
    let law = c0_law(j, k).expect("4 | n");
    let target = CycloElement::from_integer(n, n as i64).expect("n ≥ 1");
    let lambda_sq = j.eigenvalue(k).norm_sq();
    KVerdict {
        k,
        n_zero: law.n_zero,
        n_half: law.n_half,
        c0_pass: law.holds,
        c_vector: c.to_i64s().expect("pair counts fit in i64"),
        lambda_sq_equals_n: lambda_sq.zero_equal(&target).expect("same order"),
    }
}

/// Per-`k` analysis for the given multipliers, in ascending `k`.
pub fn spectral_verdict_for(j: &IndexSet, ks: &[usize]) -> Result<SpectralVerdict, SpectraError> {
    let n = j.n;
    if !n.is_multiple_of(4) {
        return Err(SpectraError::UnsupportedOrder(n));
    }
    for &k in ks {
        j.check_k(k)?;
    }
    let per_k: Vec<KVerdict> = ks.par_iter().map(|&k| k_verdict(j, k)).collect();
    let overall = per_k.iter().all(|v| v.lambda_sq_equals_n);
    Ok(SpectralVerdict { n, j: j.members.clone(), per_k, overall })
}

/// `|λ_k|² = n` for every `k ∈ [0, n)`, decided exactly.
///
/// For `k ≠ 0`, `λ_k = −2·Σ_{s∈J} ω^{ks}` and `|λ_k|² = 4·Σ_{s,t} ω^{k(s−t)}`.
/// At `k = 0` the eigenvalue is `n − 2|J|`, so the check there is the weight
/// condition; the pair sum alone would give `4|J|²`.
pub fn full_spectral_verdict(j: &IndexSet) -> Result<SpectralVerdict, SpectraError> {
    let ks: Vec<usize> = (0..j.n).collect();
    spectral_verdict_for(j, &ks)
}
