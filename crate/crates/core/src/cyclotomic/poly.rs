//! Cyclotomic polynomials and reduction modulo them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer polynomial, coefficients in ascending degree.
pub type IntPoly = Vec<BigInt>;

type Cache = RwLock<HashMap<usize, Arc<[i64]>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_n` for `n ≥ 1`, computed by dividing `xⁿ − 1` by `Φ_d` for every proper
/// divisor `d` of `n`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: usize) -> IntPoly {
    phi_small(n).iter().map(|&c| BigInt::from(c)).collect()
}

/// Cached `Φ_n` with machine-word coefficients.
pub(crate) fn phi_small(n: usize) -> Arc<[i64]> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cache().read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut num: IntPoly = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let divisor: IntPoly = phi_small(d).iter().map(|&c| BigInt::from(c)).collect();
        num = exact_div_monic(&num, &divisor);
    }
    let small: Arc<[i64]> = num
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
        .collect();
    cache().write().unwrap().entry(n).or_insert(small).clone()
}

/// Quotient of `num` by a monic `den`; the division must be exact.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den[..dn].iter().enumerate() {
            if !dj.is_zero() {
                rem[i - dn + j] -= &c * dj;
            }
        }
        quot[i - dn] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Reduces `coeffs` (ascending powers of x) modulo `Φ_n`, in place, and
/// truncates to length `deg Φ_n`.
pub(crate) fn reduce_mod_phi(n: usize, coeffs: &mut Vec<BigInt>) {
    let phi = phi_small(n);
    let d = phi.len() - 1;
    for i in (d..coeffs.len()).rev() {
        let c = std::mem::take(&mut coeffs[i]);
        if c.is_zero() {
            continue;
        }
        for (j, &pj) in phi[..d].iter().enumerate() {
            let slot = &mut coeffs[i - d + j];
            match pj {
                0 => {}
                1 => *slot -= &c,
                -1 => *slot += &c,
                _ => *slot -= &c * pj,
            }
        }
    }
    coeffs.truncate(d);
    coeffs.resize(d, BigInt::zero());
}

/// Renders a polynomial as `x^2 + 1`.
pub fn format_poly(p: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (e, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match (e, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "x".to_string(),
            (1, false) => format!("{mag}x"),
            (_, true) => format!("x^{e}"),
            (_, false) => format!("{mag}x^{e}"),
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        if terms.is_empty() {
            terms.push(if c.is_negative() { format!("-{body}") } else { body });
        } else {
            terms.push(format!("{sign} {body}"));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn known_forms() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(format_poly(&cyclotomic_polynomial(16)), "x^8 + 1");
        assert_eq!(format_poly(&cyclotomic_polynomial(36)), "x^12 - x^6 + 1");
        assert_eq!(format_poly(&cyclotomic_polynomial(6)), "x^2 - x + 1");
    }

    #[test]
    fn first_nontrivial_coefficient() {
        // Φ_105 is the smallest cyclotomic polynomial with a coefficient of magnitude 2.
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len() - 1, 48);
        assert!(p.iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=40usize {
            let mut prod = ints(&[1]);
            for d in (1..=n).filter(|d| n % d == 0) {
                let f = cyclotomic_polynomial(d);
                let mut out = vec![BigInt::zero(); prod.len() + f.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                prod = out;
            }
            let mut expect = vec![BigInt::zero(); n + 1];
            expect[0] = BigInt::from(-1);
            expect[n] = BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn reduction_of_root_sum() {
        let mut all_ones = ints(&[1; 16]);
        reduce_mod_phi(16, &mut all_ones);
        assert!(all_ones.iter().all(Zero::is_zero));
        let mut v = ints(&[1, 1, 0, 0]);
        reduce_mod_phi(4, &mut v);
        assert_eq!(v, ints(&[1, 1]));
    }
}
