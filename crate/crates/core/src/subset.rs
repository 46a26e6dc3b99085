//! Ground-set subsets as `u64` bitmasks over the canonical labels `0..n-1`.
//!
//! All subset iteration in this crate walks masks in increasing numeric
//! order, which fixes a deterministic order everywhere.

/// Bitmask of the given elements.
pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0u64, |m, &e| m | (1u64 << e))
}

/// Elements of a mask in increasing order.
pub fn elements(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let e = mask.trailing_zeros() as usize;
        out.push(e);
        mask &= mask - 1;
    }
    out
}

/// Cardinality of a mask.
#[inline]
pub fn card(mask: u64) -> u32 {
    mask.count_ones()
}

/// Full ground set of size `n` as a mask.
#[inline]
pub fn full(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        (u64::MAX) >> (64 - n)
    }
}

/// All submasks of `mask`, in increasing numeric order (includes the empty
/// set and `mask` itself).
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    // (s | !mask) + 1, masked back, steps to the numerically next submask.
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

/// `{e}` as a mask.
#[inline]
pub fn singleton(e: usize) -> u64 {
    1u64 << e
}

/// Pretty `{0,2,3}` form, used in error messages.
pub fn format_set(mask: u64) -> String {
    let elems = elements(mask);
    let inner: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
