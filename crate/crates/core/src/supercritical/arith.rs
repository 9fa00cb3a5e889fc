//! `tower` and `wow` with a symbolic marker for values too large to hold.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Values with more bits than this are kept symbolic.
pub const MATERIALIZE_BITS: u64 = 1 << 20;

/// A non-negative integer, exact below [`MATERIALIZE_BITS`] bits.
///
/// An `Overflow` value is known to exceed `2^MATERIALIZE_BITS`, so it compares
/// greater than every exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BigValue {
    Exact(BigUint),
    Overflow { label: String },
}

impl BigValue {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            BigValue::Exact(v) => Some(v),
            BigValue::Overflow { .. } => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.exact().and_then(ToPrimitive::to_u64)
    }

    pub fn is_overflow(&self) -> bool {
        matches!(self, BigValue::Overflow { .. })
    }

    /// Comparison against a bounded value; always decidable.
    pub fn cmp_bounded(&self, m: &BigUint) -> Ordering {
        match self {
            BigValue::Exact(v) => v.cmp(m),
            BigValue::Overflow { .. } => Ordering::Greater,
        }
    }

    pub fn le_u64(&self, m: u64) -> bool {
        self.cmp_bounded(&BigUint::from(m)) != Ordering::Greater
    }
}

impl PartialOrd for BigValue {
    /// `None` only between two distinct symbolic values.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (BigValue::Exact(a), BigValue::Exact(b)) => Some(a.cmp(b)),
            (BigValue::Exact(_), BigValue::Overflow { .. }) => Some(Ordering::Less),
            (BigValue::Overflow { .. }, BigValue::Exact(_)) => Some(Ordering::Greater),
            (a, b) => (a == b).then_some(Ordering::Equal),
        }
    }
}

impl fmt::Display for BigValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BigValue::Exact(v) if v.bits() <= 64 => write!(f, "{v}"),
            BigValue::Exact(v) => write!(f, "<{}-bit integer>", v.bits()),
            BigValue::Overflow { label } => write!(f, "{label} (too large to materialize)"),
        }
    }
}

fn pow2(e: &BigValue, label: impl FnOnce() -> String) -> BigValue {
    match e.to_u64() {
        Some(k) if k < MATERIALIZE_BITS => BigValue::Exact(BigUint::one() << k),
        _ => BigValue::Overflow { label: label() },
    }
}

/// `tower(1) = 2`, `tower(i+1) = 2^tower(i)`.
pub fn tower(i: u64) -> Result<BigValue> {
    if i == 0 {
        return Err(Error::Parameter("tower is defined from i = 1".into()));
    }
    let mut t = BigValue::Exact(BigUint::from(2u32));
    for j in 1..i {
        if t.is_overflow() {
            return Ok(BigValue::Overflow {
                label: format!("tower({i})"),
            });
        }
        t = pow2(&t, || format!("tower({})", j + 1));
    }
    if let BigValue::Overflow { .. } = t {
        t = BigValue::Overflow {
            label: format!("tower({i})"),
        };
    }
    Ok(t)
}

/// `wow(1) = 2`, `wow(i+1) = tower(wow(i))`.
pub fn wow(i: u64) -> Result<BigValue> {
    if i == 0 {
        return Err(Error::Parameter("wow is defined from i = 1".into()));
    }
    let mut v = BigValue::Exact(BigUint::from(2u32));
    for _ in 1..i {
        v = match v.to_u64() {
            Some(x) => tower(x)?,
            None => {
                return Ok(BigValue::Overflow {
                    label: format!("wow({i})"),
                })
            }
        };
    }
    if v.is_overflow() {
        v = BigValue::Overflow {
            label: format!("wow({i})"),
        };
    }
    Ok(v)
}

/// The largest `x` with `wow(x) ≤ m`; stops as soon as `wow(x+1)` is known
/// to exceed `m`.
pub fn wow_inv(m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Parameter(format!("wow_inv needs m >= 2, got {m}")));
    }
    let mut x = 1;
    while wow(x + 1)?.le_u64(m) {
        x += 1;
    }
    Ok(x)
}

/// `2^i` as a [`BigValue`].
pub fn exp2(i: u64) -> BigValue {
    pow2(&BigValue::Exact(BigUint::from(i)), || format!("2^{i}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_towers() {
        let t: Vec<u64> = (1..=4)
            .map(|i| tower(i).unwrap().to_u64().unwrap())
            .collect();
        assert_eq!(t, vec![2, 4, 16, 65536]);
        let t5 = tower(5).unwrap();
        assert_eq!(t5.exact().unwrap().bits(), 65537);
        assert!(tower(6).unwrap().is_overflow());
        assert!(tower(1_000_000).unwrap().is_overflow());
        assert!(tower(0).is_err());
    }

    #[test]
    fn small_wows() {
        let w: Vec<u64> = (1..=3).map(|i| wow(i).unwrap().to_u64().unwrap()).collect();
        assert_eq!(w, vec![2, 4, 65536]);
        assert!(wow(4).unwrap().is_overflow());
        assert!(wow(4).unwrap() > wow(3).unwrap());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(wow_inv(100).unwrap(), 2);
        assert_eq!(wow_inv(65536).unwrap(), 3);
        assert_eq!(wow_inv(65535).unwrap(), 2);
        assert_eq!(wow_inv(2).unwrap(), 1);
        assert_eq!(wow_inv(3).unwrap(), 1);
        assert_eq!(wow_inv(4).unwrap(), 2);
        assert_eq!(wow_inv(u64::MAX).unwrap(), 3);
        assert!(wow_inv(1).is_err());
    }

    #[test]
    fn inverse_steps_exactly_at_wow_values() {
        for m in 2..70_000u64 {
            let x = wow_inv(m).unwrap();
            assert!(wow(x).unwrap().le_u64(m));
            assert!(!wow(x + 1).unwrap().le_u64(m));
        }
    }

    #[test]
    fn overflow_compares_above_exact() {
        let big = BigValue::Overflow { label: "x".into() };
        assert_eq!(big.cmp_bounded(&BigUint::from(u64::MAX)), Ordering::Greater);
        assert_eq!(
            big.partial_cmp(&BigValue::Overflow { label: "y".into() }),
            None
        );
        assert_eq!(exp2(10).to_u64(), Some(1024));
        assert!(exp2(MATERIALIZE_BITS).is_overflow());
    }
}
