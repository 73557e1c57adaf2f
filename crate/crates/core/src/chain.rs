//! Labeled, monotonicity-checked sequences of bound values.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One evaluated bound inside a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainEntry<T> {
    pub label: String,
    pub value: T,
}

/// A refinement chain: bound values in evaluation order, weakly decreasing
/// and bounded below by a floor (usually the final, tightest member).
#[derive(Debug, Clone)]
pub struct BoundChain<T> {
    entries: Vec<ChainEntry<T>>,
}

impl<T: Real> BoundChain<T> {
    /// Validate and wrap the entries. Each step may rise above its
    /// predecessor by at most `slack`, and no value may drop below
    /// `floor - slack`.
    pub fn new(entries: Vec<ChainEntry<T>>, floor: T, slack: T) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        for e in &entries {
            if !e.value.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        for pair in entries.windows(2) {
            let rise = pair[1].value - pair[0].value;
            if rise > slack {
                return Err(Error::ChainNotDecreasing {
                    label: pair[1].label.clone(),
                    increase: rise.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        for e in &entries {
            if e.value < floor - slack {
                return Err(Error::ChainBelowFloor {
                    label: e.label.clone(),
                    value: e.value.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[ChainEntry<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> &ChainEntry<T> {
        &self.entries[0]
    }

    pub fn last(&self) -> &ChainEntry<T> {
        &self.entries[self.entries.len() - 1]
    }

    pub fn values(&self) -> Vec<T> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.label.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(label: &str, value: f64) -> ChainEntry<f64> {
        ChainEntry {
            label: label.to_string(),
            value,
        }
    }

    #[test]
    fn accepts_weakly_decreasing() {
        let c = BoundChain::new(
            vec![entry("a", 0.5), entry("b", 0.5), entry("c", 0.25)],
            0.25,
            1e-12,
        )
        .unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.first().label, "a");
        assert_eq!(c.last().value, 0.25);
    }

    #[test]
    fn rejects_increase_beyond_slack() {
        let err =
            BoundChain::new(vec![entry("a", 0.5), entry("b", 0.5 + 1e-6)], 0.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::ChainNotDecreasing { .. }));
    }

    #[test]
    fn rejects_drop_below_floor() {
        let err = BoundChain::new(vec![entry("a", 0.5), entry("b", 0.1)], 0.2, 1e-12).unwrap_err();
        assert!(matches!(err, Error::ChainBelowFloor { .. }));
    }
}
