//! Integer machinery: extended Euclid, linear congruences, Euler's totient,
//! and the order-`4t²` congruence analysis used to probe the `k = n/4 − 1`
//! argument.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,
    #[error("invalid modulus {0}: must be at least 1")]
    InvalidModulus(i64),
    #[error("unsupported order {0}: expected n = 4t² for a positive integer t")]
    UnsupportedOrder(u64),
}

/// Non-negative gcd with the convention `gcd(0, n) = |n|`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Returns `(g, x, y)` with `g = gcd(a, b) > 0` and `a·x + b·y = g`.
pub fn extended_gcd(a: i64, b: i64) -> Result<(i64, i64, i64), NumTheoryError> {
    if a == 0 && b == 0 {
        return Err(NumTheoryError::UndefinedGcd);
    }
    // i128 keeps the Bezout coefficients exact for the full i64 range.
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    Ok((old_r as i64, old_s as i64, old_t as i64))
}

/// Euler's totient by trial division.
pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Outcome of solving `k·j ≡ c (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CongruenceSolution {
    pub k: i64,
    pub c: i64,
    pub n: i64,
    /// `gcd(k, n)`, with `gcd(0, n) = n`.
    pub g: i64,
    pub solvable: bool,
    /// Smallest non-negative solution.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j0: Option<i64>,
    pub solution_count: i64,
}

impl CongruenceSolution {
    /// All solutions in `[0, n)`, ascending: `j0 + t·(n/g)` for `t ∈ [0, g)`.
    pub fn solutions(&self) -> impl Iterator<Item = i64> + '_ {
        let step = if self.g == 0 { 0 } else { self.n / self.g };
        let j0 = self.j0.unwrap_or(0);
        (0..self.solution_count).map(move |t| j0 + t * step)
    }
}

/// Solves `k·j ≡ c (mod n)`. `k` and `c` are reduced modulo `n` first.
pub fn solve_linear_congruence(k: i64, c: i64, n: i64) -> Result<CongruenceSolution, NumTheoryError> {
    if n < 1 {
        return Err(NumTheoryError::InvalidModulus(n));
    }
    let k = k.rem_euclid(n);
    let c = c.rem_euclid(n);
    let g = gcd(k, n);
    if c % g != 0 {
        return Ok(CongruenceSolution { k, c, n, g, solvable: false, j0: None, solution_count: 0 });
    }
    let modulus = n / g;
    // k/g is invertible modulo n/g; when g = n the modulus is 1 and j0 = 0.
    let j0 = if modulus == 1 {
        0
    } else {
        let (_, inv, _) = extended_gcd(k / g, modulus)?;
        let j = (c / g) as i128 * inv as i128;
        j.rem_euclid(modulus as i128) as i64
    };
    Ok(CongruenceSolution { k, c, n, g, solvable: true, j0: Some(j0), solution_count: g })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// The congruence analysis for `n = 4t²` at `k = n/4 − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Lemma3Report {
    pub n: u64,
    pub t: u64,
    pub t_parity: Parity,
    pub k: u64,
    /// `[gcd(k, n), gcd(4, k mod 4)]`.
    pub gcd_chain: Vec<u64>,
    /// Whether the two gcd routes agree.
    pub gcd_chain_consistent: bool,
    /// Solvability of `k·j ≡ n/2 (mod n)`.
    pub solvable: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j0: Option<u64>,
    pub n_over_8_integral: bool,
    /// Orders with even `t` are excluded by Turyn's theorem (recorded, not re-derived).
    pub turyn_excluded: bool,
    /// `k = 0` (only at `n = 4`): `0·j ≡ 2 (mod 4)` has no solution, contrary to a
    /// literal reading of the statement that small orders are solvable for every `k`.
    pub k_zero_anomaly: bool,
}

pub fn lemma3_analyze(n: u64) -> Result<Lemma3Report, NumTheoryError> {
    let t = n.is_multiple_of(4)
        .then(|| exact_sqrt(n / 4))
        .flatten()
        .filter(|&t| t >= 1)
        .ok_or(NumTheoryError::UnsupportedOrder(n))?;
    let k = n / 4 - 1;
    let direct = gcd(k as i64, n as i64) as u64;
    let folded = gcd(4, (k % 4) as i64) as u64;
    let sol = solve_linear_congruence(k as i64, (n / 2) as i64, n as i64)?;
    Ok(Lemma3Report {
        n,
        t,
        t_parity: if t % 2 == 0 { Parity::Even } else { Parity::Odd },
        k,
        gcd_chain: vec![direct, folded],
        gcd_chain_consistent: direct == folded,
        solvable: sol.solvable,
        j0: sol.j0.map(|j| j as u64),
        n_over_8_integral: n.is_multiple_of(8),
        turyn_excluded: t % 2 == 0,
        k_zero_anomaly: k == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GcdChainVerdict {
    pub t_max: u64,
    pub holds: bool,
    /// First `t` where `gcd(n/4 − 1, n) ≠ gcd(4, (n/4 − 1) mod 4)`.
    pub counterexample: Option<u64>,
}

/// Checks `gcd(n/4 − 1, n) = gcd(4, (n/4 − 1) mod 4)` for every `n = 4t²`, `t ∈ [1, t_max]`.
pub fn gcd_chain_identity_check(t_max: u64) -> GcdChainVerdict {
    let counterexample = (1..=t_max).find(|&t| {
        let n = 4 * t * t;
        let k = n / 4 - 1;
        gcd(k as i64, n as i64) != gcd(4, (k % 4) as i64)
    });
    GcdChainVerdict { t_max, holds: counterexample.is_none(), counterexample }
}
