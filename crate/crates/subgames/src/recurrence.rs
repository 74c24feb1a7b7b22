//! Exact and floating evaluation of the win-probability recurrence.
//!
//! For a set S = {k_1,...,k_t} the sequence satisfies
//! `a_n = 1 - (1/t) * sum_i a_{n-k_i}` for n >= k_t, with the first k_t
//! values inherited from the set with its largest element removed,
//! bottoming out at the single-move block formula.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::SubtractionSet;

/// Default cap on the total bit size of an exact value (numerator plus
/// denominator). Exact denominators grow roughly linearly in n, so this
/// bounds how far an exact run can go before erroring out.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float64,
}

/// A computed prefix a_0..a_{n_max} of the sequence for one set.
#[derive(Clone, Debug)]
pub struct SequenceRun {
    pub set: SubtractionSet,
    pub values: Values,
}

#[derive(Clone, Debug)]
pub enum Values {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

impl SequenceRun {
    pub fn n_max(&self) -> u64 {
        (match &self.values {
            Values::Exact(v) => v.len(),
            Values::Float(v) => v.len(),
        } as u64)
            - 1
    }

    pub fn mode(&self) -> Mode {
        match &self.values {
            Values::Exact(_) => Mode::Exact,
            Values::Float(_) => Mode::Float64,
        }
    }

    pub fn float_at(&self, n: u64) -> f64 {
        match &self.values {
            Values::Exact(v) => v[n as usize].to_f64().unwrap(),
            Values::Float(v) => v[n as usize],
        }
    }

    pub fn exact_at(&self, n: u64) -> Option<&BigRational> {
        match &self.values {
            Values::Exact(v) => v.get(n as usize),
            Values::Float(_) => None,
        }
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Single-move game value: 1 when `floor(n/k)` is odd, else 0.
/// The sequence consists of alternating blocks of k zeros and k ones.
pub fn single_move_value(n: u64, k: u64) -> BigRational {
    debug_assert!(k >= 1);
    if (n / k) % 2 == 1 {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

/// The first k_max values a_0..a_{k_max-1}, built by recursion on set size.
/// For t = 1 these come straight from the block formula (all zeros).
pub fn base_values(set: &SubtractionSet) -> Vec<BigRational> {
    let k_max = set.k_max();
    if set.t() == 1 {
        return (0..k_max).map(|n| single_move_value(n, k_max)).collect();
    }
    let reduced = set.without_max().unwrap();
    // The reduced set's own recurrence applies from its k_max upward.
    eval_exact_unchecked(&reduced, k_max - 1)
}

fn check_budget(v: &BigRational, bit_budget: u64, n: u64) -> Result<()> {
    let bits = v.numer().bits() + v.denom().bits();
    if bits > bit_budget {
        return Err(Error::ResourceLimit(format!(
            "exact value at n={n} needs {bits} bits, budget is {bit_budget}"
        )));
    }
    Ok(())
}

fn eval_exact_unchecked(set: &SubtractionSet, n_max: u64) -> Vec<BigRational> {
    eval_exact(set, n_max, u64::MAX).unwrap()
}

/// Exact evaluation of a_0..a_{n_max}, failing when any value's bit size
/// exceeds `bit_budget`.
pub fn eval_exact(set: &SubtractionSet, n_max: u64, bit_budget: u64) -> Result<Vec<BigRational>> {
    let k_max = set.k_max();
    let t = BigInt::from(set.t() as u64);
    let mut values = base_values(set);
    values.truncate(n_max as usize + 1);
    let mut n = values.len() as u64;
    while n <= n_max {
        let mut sum = BigRational::zero();
        for &k in set.elements() {
            sum += &values[(n - k) as usize];
        }
        let v = BigRational::one() - sum / BigRational::from_integer(t.clone());
        check_budget(&v, bit_budget, n)?;
        values.push(v);
        n += 1;
    }
    debug_assert!(values.len() as u64 == n_max + 1 || k_max > n_max);
    Ok(values)
}

/// Double-precision evaluation of a_0..a_{n_max}.
pub fn eval_float(set: &SubtractionSet, n_max: u64) -> Vec<f64> {
    let mut values: Vec<f64> = base_values(set)
        .iter()
        .map(|v| v.to_f64().unwrap())
        .collect();
    values.truncate(n_max as usize + 1);
    let t = set.t() as f64;
    let mut n = values.len() as u64;
    while n <= n_max {
        let sum: f64 = set
            .elements()
            .iter()
            .map(|&k| values[(n - k) as usize])
            .sum();
        values.push(1.0 - sum / t);
        n += 1;
    }
    values
}

pub fn eval_sequence(
    set: &SubtractionSet,
    n_max: u64,
    mode: Mode,
    bit_budget: u64,
) -> Result<SequenceRun> {
    let values = match mode {
        Mode::Exact => Values::Exact(eval_exact(set, n_max, bit_budget)?),
        Mode::Float64 => Values::Float(eval_float(set, n_max)),
    };
    Ok(SequenceRun {
        set: set.clone(),
        values,
    })
}

/// Streaming float evaluation holding only the last k_max values.
/// Yields a_0, a_1, ... in order with O(k_max) memory.
pub struct FloatStream {
    moves: Vec<u64>,
    t: f64,
    window: Vec<f64>, // ring buffer of size k_max
    n: u64,
    base: Vec<f64>,
}

impl FloatStream {
    pub fn new(set: &SubtractionSet) -> Self {
        let base: Vec<f64> = base_values(set)
            .iter()
            .map(|v| v.to_f64().unwrap())
            .collect();
        FloatStream {
            moves: set.elements().to_vec(),
            t: set.t() as f64,
            window: vec![0.0; set.elements().last().copied().unwrap() as usize],
            n: 0,
            base,
        }
    }
}

impl Iterator for FloatStream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let k_max = self.window.len() as u64;
        let v = if self.n < k_max {
            self.base[self.n as usize]
        } else {
            let sum: f64 = self
                .moves
                .iter()
                .map(|&k| self.window[((self.n - k) % k_max) as usize])
                .sum();
            1.0 - sum / self.t
        };
        self.window[(self.n % k_max) as usize] = v;
        self.n += 1;
        Some(v)
    }
}

/// Streaming exact evaluation with the same windowed memory contract.
pub struct ExactStream {
    moves: Vec<u64>,
    t: BigInt,
    window: Vec<BigRational>,
    n: u64,
    base: Vec<BigRational>,
    bit_budget: u64,
}

impl ExactStream {
    pub fn new(set: &SubtractionSet, bit_budget: u64) -> Self {
        ExactStream {
            moves: set.elements().to_vec(),
            t: BigInt::from(set.t() as u64),
            window: vec![BigRational::zero(); set.k_max() as usize],
            n: 0,
            base: base_values(set),
            bit_budget,
        }
    }
}

impl Iterator for ExactStream {
    type Item = Result<BigRational>;

    fn next(&mut self) -> Option<Self::Item> {
        let k_max = self.window.len() as u64;
        let v = if self.n < k_max {
            self.base[self.n as usize].clone()
        } else {
            let mut sum = BigRational::zero();
            for &k in &self.moves {
                sum += &self.window[((self.n - k) % k_max) as usize];
            }
            let v = BigRational::one()
                - sum / BigRational::from_integer(self.t.clone());
            if let Err(e) = check_budget(&v, self.bit_budget, self.n) {
                return Some(Err(e));
            }
            v
        };
        self.window[(self.n % k_max) as usize] = v.clone();
        self.n += 1;
        Some(Ok(v))
    }
}

/// `(-1)^n * (a_n - 1/2)`, the centered alternating deviation.
pub fn signed_deviation(run: &SequenceRun, n: u64) -> Result<BigRational> {
    let exact = run.exact_at(n).ok_or(Error::OutOfRange {
        index: n,
        max: run.n_max(),
    })?;
    let dev = exact - half();
    Ok(if n % 2 == 0 { dev } else { -dev })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(elems: &[i64]) -> SubtractionSet {
        SubtractionSet::new(elems).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_move_examples() {
        assert_eq!(single_move_value(0, 3), rat(0, 1));
        assert_eq!(single_move_value(3, 3), rat(1, 1));
        assert_eq!(single_move_value(7, 2), rat(1, 1));
    }

    #[test]
    fn base_values_examples() {
        let b = base_values(&set(&[3, 5]));
        let expect: Vec<i64> = vec![0, 0, 0, 1, 1];
        assert_eq!(b, expect.iter().map(|&v| rat(v, 1)).collect::<Vec<_>>());

        let b = base_values(&set(&[1, 3]));
        assert_eq!(b, vec![rat(0, 1), rat(1, 1), rat(0, 1)]);

        // t=1: no inductive prefix, the block formula gives zeros below k.
        let b = base_values(&set(&[4]));
        assert!(b.iter().all(|v| v.is_zero()));
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn eval_examples() {
        let v = eval_exact(&set(&[1, 2]), 4, DEFAULT_BIT_BUDGET).unwrap();
        assert_eq!(v, vec![rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 4), rat(5, 8)]);

        let v = eval_exact(&set(&[3, 5]), 9, DEFAULT_BIT_BUDGET).unwrap();
        let expect = [
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(1, 1),
            rat(1, 1),
            rat(1, 1),
            rat(1, 2),
            rat(1, 2),
            rat(0, 1),
            rat(1, 4),
        ];
        assert_eq!(v, expect);

        let v = eval_exact(&set(&[1, 3]), 6, DEFAULT_BIT_BUDGET).unwrap();
        for (n, a) in v.iter().enumerate() {
            assert_eq!(*a, rat((n % 2) as i64, 1));
        }
    }

    #[test]
    fn truncated_run_shorter_than_base() {
        let v = eval_exact(&set(&[3, 5]), 2, DEFAULT_BIT_BUDGET).unwrap();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn bit_budget_enforced() {
        // {1,2} denominators are powers of two growing with n.
        let err = eval_exact(&set(&[1, 2]), 500, 16).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn signed_deviation_examples() {
        let run = eval_sequence(&set(&[1, 3]), 10, Mode::Exact, DEFAULT_BIT_BUDGET).unwrap();
        assert_eq!(signed_deviation(&run, 4).unwrap(), rat(-1, 2));
        assert_eq!(signed_deviation(&run, 5).unwrap(), rat(-1, 2));
        assert!(matches!(
            signed_deviation(&run, 11),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn streams_match_full_evaluation() {
        let s = set(&[2, 5, 9]);
        let full = eval_float(&s, 300);
        let streamed: Vec<f64> = FloatStream::new(&s).take(301).collect();
        assert_eq!(full, streamed);

        let full = eval_exact(&s, 100, DEFAULT_BIT_BUDGET).unwrap();
        let streamed: Vec<BigRational> = ExactStream::new(&s, DEFAULT_BIT_BUDGET)
            .take(101)
            .map(|r| r.unwrap())
            .collect();
        assert_eq!(full, streamed);
    }

    #[test]
    fn parity_forcing_with_one_and_all_odd() {
        for elems in [vec![1, 3], vec![1, 3, 5], vec![1, 5, 9]] {
            let s = set(&elems);
            let v = eval_exact(&s, 2000, DEFAULT_BIT_BUDGET).unwrap();
            for (n, a) in v.iter().enumerate() {
                assert_eq!(*a, rat((n % 2) as i64, 1), "S={s} n={n}");
            }
        }
    }

    fn arb_set() -> impl Strategy<Value = SubtractionSet> {
        proptest::collection::btree_set(1u64..=12, 1..=4)
            .prop_map(|s| SubtractionSet::from_u64(&s.into_iter().collect::<Vec<_>>()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn range_and_recurrence_identity(s in arb_set()) {
            let n_max = 60u64;
            let v = eval_exact(&s, n_max, DEFAULT_BIT_BUDGET).unwrap();
            let t = BigRational::from_integer(BigInt::from(s.t() as u64));
            for (n, a) in v.iter().enumerate() {
                prop_assert!(*a >= BigRational::zero() && *a <= BigRational::one());
                let n = n as u64;
                if n >= s.k_max() {
                    let mut sum = BigRational::zero();
                    for &k in s.elements() {
                        sum += &v[(n - k) as usize];
                    }
                    prop_assert_eq!(a + sum / &t, BigRational::one());
                }
            }
        }

        #[test]
        fn base_consistency(s in arb_set()) {
            prop_assume!(s.t() > 1);
            let reduced = s.without_max().unwrap();
            let full = eval_exact(&s, s.k_max() - 1, DEFAULT_BIT_BUDGET).unwrap();
            let red = eval_exact(&reduced, s.k_max() - 1, DEFAULT_BIT_BUDGET).unwrap();
            prop_assert_eq!(full, red);
        }

        #[test]
        fn gcd_reduction_subsequence(s in arb_set()) {
            let (reduced, m) = s.gcd_reduce();
            prop_assume!(m > 1);
            let n_test = 40u64;
            let full = eval_exact(&s, m * n_test, DEFAULT_BIT_BUDGET).unwrap();
            let red = eval_exact(&reduced, n_test, DEFAULT_BIT_BUDGET).unwrap();
            for n in 0..=n_test {
                prop_assert_eq!(&full[(m * n) as usize], &red[n as usize]);
            }
        }

        #[test]
        fn mode_agreement(s in arb_set()) {
            let exact = eval_exact(&s, 1000, DEFAULT_BIT_BUDGET).unwrap();
            let float = eval_float(&s, 1000);
            for n in 0..=1000usize {
                let e = exact[n].to_f64().unwrap();
                prop_assert!((e - float[n]).abs() < 1e-12);
            }
        }
    }
}
