//! Bitmask kernels. Bit `i` of a mask is set when entry `i` is `−1`.

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `r[τ] = n − 2·popcount(x ⊕ rot(x, τ))`; by symmetry only `τ ≤ n/2` is checked.
pub(crate) fn is_perfect(mask: u64, n: usize) -> bool {
    let full = full_mask(n);
    (1..=n / 2).all(|tau| {
        let rot = ((mask >> tau) | (mask << (n - tau))) & full;
        2 * (mask ^ rot).count_ones() as usize == n
    })
}

/// Calls `f` on every `bits`-bit value with exactly `k` ones, ascending
/// (Gosper's hack). `bits ≤ 63`.
pub(crate) fn for_each_combination(bits: usize, k: usize, mut f: impl FnMut(u64)) {
    debug_assert!(bits < 64);
    if k > bits {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << bits;
    let mut x = (1u64 << k) - 1;
    while x < limit {
        f(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

/// Exhaustive scan of the completions of `prefix` (low `p` bits).
pub(crate) fn scan_all(n: usize, p: usize, prefix: u64, found: &mut Vec<u64>) -> u64 {
    let rest = n - p;
    let count = 1u64 << rest;
    for tail in 0..count {
        let mask = prefix | tail << p;
        if is_perfect(mask, n) {
            found.push(mask);
        }
    }
    count
}

/// Scan of the completions of `prefix` whose total weight lies in `weights`.
pub(crate) fn scan_weights(n: usize, p: usize, prefix: u64, weights: &[usize], found: &mut Vec<u64>) -> u64 {
    let have = prefix.count_ones() as usize;
    let mut visited = 0;
    for &w in weights {
        let Some(need) = w.checked_sub(have) else { continue };
        for_each_combination(n - p, need, |tail| {
            visited += 1;
            let mask = prefix | tail << p;
            if is_perfect(mask, n) {
                found.push(mask);
            }
        });
    }
    visited
}

/// Depth-first assignment of entries left to right with partial
/// autocorrelation bounds.
///
/// For each shift `τ ∈ [1, n/2]` the running sum over the pairs `(i, i+τ mod n)`
/// whose entries are both assigned is kept. With `m` entries placed, that many
/// pairs are `max(0, m−τ) + max(0, m−(n−τ))`, and each of the remaining pairs
/// contributes `±1`; a node is pruned once `|partial|` exceeds the remaining
/// pair count, since `r[τ] = 0` is then out of reach.
pub(crate) struct PrunedDfs<'a> {
    n: usize,
    half: usize,
    sums: Vec<i32>,
    mask: u64,
    minus: usize,
    weights: Option<&'a [usize]>,
    pub nodes: u64,
    pub found: Vec<u64>,
}

impl<'a> PrunedDfs<'a> {
    pub fn new(n: usize, weights: Option<&'a [usize]>) -> Self {
        Self { n, half: n / 2, sums: vec![0; n / 2 + 1], mask: 0, minus: 0, weights, nodes: 0, found: Vec::new() }
    }

    #[inline]
    fn value(&self, i: usize) -> i32 {
        1 - 2 * (self.mask >> i & 1) as i32
    }

    /// Applies `sign` × (new pair products for position `pos`) to the sums.
    #[inline]
    fn update(&mut self, pos: usize, sign: i32) {
        let v = self.value(pos) * sign;
        for tau in 1..=self.half {
            let mut delta = 0;
            if pos >= tau {
                delta += self.value(pos - tau);
            }
            if pos + tau >= self.n {
                delta += self.value(pos + tau - self.n);
            }
            self.sums[tau] += v * delta;
        }
    }

    #[inline]
    fn feasible(&self, placed: usize) -> bool {
        let remaining_slots = self.n - placed;
        if let Some(ws) = self.weights {
            if !ws.iter().any(|&w| self.minus <= w && w <= self.minus + remaining_slots) {
                return false;
            }
        }
        let n = self.n as i32;
        let m = placed as i32;
        (1..=self.half).all(|tau| {
            let t = tau as i32;
            let determined = (m - t).max(0) + (m - (n - t)).max(0);
            self.sums[tau].abs() <= n - determined
        })
    }

    /// Places entry `pos`; returns whether the node survives the bounds.
    fn push(&mut self, pos: usize, minus: bool) -> bool {
        self.nodes += 1;
        if minus {
            self.mask |= 1 << pos;
            self.minus += 1;
        }
        self.update(pos, 1);
        self.feasible(pos + 1)
    }

    fn pop(&mut self, pos: usize) {
        self.update(pos, -1);
        if self.mask >> pos & 1 == 1 {
            self.mask &= !(1 << pos);
            self.minus -= 1;
        }
    }

    /// Replays a prefix of `p` entries. Returns false if it is already pruned.
    pub fn seed(&mut self, p: usize, prefix: u64) -> bool {
        for pos in 0..p {
            if !self.push(pos, prefix >> pos & 1 == 1) {
                return false;
            }
        }
        true
    }

    /// Explores every completion from position `pos` onward.
    pub fn run(&mut self, pos: usize) {
        if pos == self.n {
            if is_perfect(self.mask, self.n) {
                self.found.push(self.mask);
            }
            return;
        }
        for minus in [false, true] {
            if self.push(pos, minus) {
                self.run(pos + 1);
            }
            self.pop(pos);
        }
    }
}
