//! Orders in the derivation variable, with a `-infinity` sentinel.
//!
//! The order of the zero operator is `-infinity`, which absorbs under
//! addition and is smaller than every finite value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// An operator order: a finite integer or `-infinity` (order of zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderValue {
    NegInf,
    Finite(i64),
}

impl OrderValue {
    pub fn is_finite(self) -> bool {
        matches!(self, OrderValue::Finite(_))
    }

    /// The finite value, or `None` for `-infinity`.
    pub fn finite(self) -> Option<i64> {
        match self {
            OrderValue::NegInf => None,
            OrderValue::Finite(v) => Some(v),
        }
    }

    /// Unwraps a finite order; panics on `-infinity`.
    pub fn expect_finite(self, what: &str) -> i64 {
        self.finite()
            .unwrap_or_else(|| panic!("{what} is -infinity"))
    }
}

impl From<i64> for OrderValue {
    fn from(v: i64) -> Self {
        OrderValue::Finite(v)
    }
}

impl Add for OrderValue {
    type Output = OrderValue;
    fn add(self, rhs: OrderValue) -> OrderValue {
        match (self, rhs) {
            (OrderValue::Finite(a), OrderValue::Finite(b)) => OrderValue::Finite(a + b),
            _ => OrderValue::NegInf,
        }
    }
}

impl Add<i64> for OrderValue {
    type Output = OrderValue;
    fn add(self, rhs: i64) -> OrderValue {
        self + OrderValue::Finite(rhs)
    }
}

impl PartialOrd for OrderValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (OrderValue::NegInf, OrderValue::NegInf) => Ordering::Equal,
            (OrderValue::NegInf, _) => Ordering::Less,
            (_, OrderValue::NegInf) => Ordering::Greater,
            (OrderValue::Finite(a), OrderValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::NegInf => write!(f, "-infinity"),
            OrderValue::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::OrderValue::{Finite, NegInf};

    #[test]
    fn neg_inf_absorbs_addition() {
        assert_eq!(NegInf + Finite(5), NegInf);
        assert_eq!(Finite(5) + NegInf, NegInf);
        assert_eq!(Finite(2) + Finite(3), Finite(5));
    }

    #[test]
    fn neg_inf_is_minimal() {
        assert!(NegInf < Finite(i64::MIN));
        assert_eq!(NegInf.max(Finite(7)), Finite(7));
        assert_eq!(NegInf.max(NegInf), NegInf);
    }
}
