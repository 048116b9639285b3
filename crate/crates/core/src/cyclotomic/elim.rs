use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Rank over ℚ of an integer matrix (rows of equal length), by Bareiss
/// fraction-free elimination. Every intermediate entry is a minor of the
/// input, so the divisions are exact.
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let height = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..width {
        if rank == height {
            break;
        }
        let Some(p) = (rank..height).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for c in col + 1..width {
                let num = pivot * &row[c] - &factor * &pivot_row[c];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                row[c] = q;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}
