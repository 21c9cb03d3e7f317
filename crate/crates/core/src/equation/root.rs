/// `base^exp`, or `None` if the result does not fit in a `u128`.
pub fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

/// Largest `r` with `r^k <= n`, computed by binary search on `[1, n]`.
///
/// Every comparison is an exact integer power; a candidate whose power
/// overflows `u128` is treated as exceeding `n`.
///
/// # Panics
///
/// Panics if `n == 0` or `k == 0`.
pub fn integer_nth_root(n: u128, k: u32) -> u128 {
    assert!(n >= 1, "integer_nth_root: n must be positive");
    assert!(k >= 1, "integer_nth_root: k must be positive");
    if k == 1 {
        return n;
    }
    // invariant: lo^k <= n, hi^k > n (hi may be virtual)
    let mut lo: u128 = 1;
    let mut hi: u128 = n.min(1u128 << (128 / k + 1)).saturating_add(1);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match checked_pow(mid, k) {
            Some(p) if p <= n => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}
