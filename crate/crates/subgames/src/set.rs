//! Validated subtraction sets and their derived metadata.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of legal removal amounts, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubtractionSet {
    elements: Vec<u64>,
    gcd: u64,
    all_odd: bool,
}

impl SubtractionSet {
    /// Builds a set from arbitrary input, sorting and deduplicating.
    /// Rejects empty input and non-positive entries.
    pub fn new(elems: &[i64]) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::InvalidSet("set must be non-empty".into()));
        }
        let mut elements = Vec::with_capacity(elems.len());
        for &e in elems {
            if e <= 0 {
                return Err(Error::InvalidSet(format!("entry {e} is not positive")));
            }
            elements.push(e as u64);
        }
        elements.sort_unstable();
        elements.dedup();
        let gcd = elements.iter().fold(0u64, |g, &e| g.gcd(&e));
        let all_odd = elements.iter().all(|&e| e % 2 == 1);
        Ok(SubtractionSet {
            elements,
            gcd,
            all_odd,
        })
    }

    pub fn from_u64(elems: &[u64]) -> Result<Self> {
        let signed: Vec<i64> = elems.iter().map(|&e| e as i64).collect();
        Self::new(&signed)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Number of elements, the symbol `t`.
    pub fn t(&self) -> usize {
        self.elements.len()
    }

    /// Largest element, the recurrence order.
    pub fn k_max(&self) -> u64 {
        *self.elements.last().unwrap()
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn all_odd(&self) -> bool {
        self.all_odd
    }

    /// Sum of the elements.
    pub fn element_sum(&self) -> u64 {
        self.elements.iter().sum()
    }

    /// Exponent offsets `d_i = k_max - k_i` for i < t, plus `d_t = k_max`.
    pub fn d_values(&self) -> Vec<u64> {
        let k_max = self.k_max();
        let mut d: Vec<u64> = self.elements[..self.t() - 1]
            .iter()
            .map(|&k| k_max - k)
            .collect();
        d.push(k_max);
        d
    }

    /// The set with its largest element removed. Errors when t = 1.
    pub fn without_max(&self) -> Result<Self> {
        if self.t() == 1 {
            return Err(Error::InvalidSet(
                "cannot remove the only element".into(),
            ));
        }
        Self::from_u64(&self.elements[..self.t() - 1])
    }

    /// Divides every element by the gcd; returns the reduced set and the factor.
    pub fn gcd_reduce(&self) -> (Self, u64) {
        let m = self.gcd;
        if m == 1 {
            return (self.clone(), 1);
        }
        let reduced: Vec<u64> = self.elements.iter().map(|&k| k / m).collect();
        (Self::from_u64(&reduced).unwrap(), m)
    }
}

impl fmt::Display for SubtractionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
