//! Exact rational scalars and sign bookkeeping helpers.
//!
//! Every coefficient in this crate is a [`Q`] (an arbitrary-precision
//! rational); signs produced by Koszul-style bookkeeping are tracked as
//! machine integers (±1) until they are multiplied into a coefficient.

use num::BigRational;
use num::Zero;
use std::collections::BTreeMap;

/// Exact rational scalar used for all coefficients.
pub type Q = BigRational;

/// The rational `n`.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// The rational `n/d`.
pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// `(−1)^e` as a machine integer.
pub fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Multiply `c` by `(−1)^e`.
pub fn signed(c: Q, e: usize) -> Q {
    if e % 2 == 0 {
        c
    } else {
        -c
    }
}

/// Add `val` to `map[key]`, removing the entry if the sum is zero.
///
/// Keeping maps free of explicit zeros makes equality of linear
/// combinations plain `BTreeMap` equality.
pub fn add_term<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, val: Q) {
    if val.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(val);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += val;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_alternates() {
        assert_eq!(sign(0), 1);
        assert_eq!(sign(1), -1);
        assert_eq!(sign(2), 1);
        assert_eq!(signed(q(3), 5), q(-3));
    }

    #[test]
    fn add_term_cancels_to_empty() {
        let mut m = BTreeMap::new();
        add_term(&mut m, "w", q(2));
        add_term(&mut m, "w", q(-2));
        assert!(m.is_empty());
        add_term(&mut m, "w", q(0));
        assert!(m.is_empty());
    }
}
