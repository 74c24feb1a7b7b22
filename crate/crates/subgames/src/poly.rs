//! Integer-coefficient polynomials: the characteristic polynomial of the
//! recurrence, exact division by (x+1), and an exact square-free test.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::set::SubtractionSet;

/// Dense integer polynomial, coefficients in ascending degree order.
/// The zero polynomial is the empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Synthetic division by (x+1): returns (q, r) with self = (x+1)q + r.
    pub fn divide_by_x_plus_one(&self) -> (IntPolynomial, BigInt) {
        let Some(d) = self.degree() else {
            return (IntPolynomial::zero(), BigInt::zero());
        };
        if d == 0 {
            return (IntPolynomial::zero(), self.coeffs[0].clone());
        }
        let mut q = vec![BigInt::zero(); d];
        q[d - 1] = self.coeffs[d].clone();
        for i in (1..d).rev() {
            q[i - 1] = &self.coeffs[i] - &q[i];
        }
        let r = &self.coeffs[0] - &q[0];
        (IntPolynomial::new(q), r)
    }

    fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive_part(&self) -> IntPolynomial {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPolynomial::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    fn scale(&self, f: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * f).collect())
    }

    fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    fn shift(&self, by: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); by];
        out.extend(self.coeffs.iter().cloned());
        IntPolynomial::new(out)
    }

    /// Pseudo-remainder of self by rhs (rhs non-zero, deg self >= deg rhs).
    fn pseudo_rem(&self, rhs: &IntPolynomial) -> IntPolynomial {
        let dr = rhs.degree().unwrap();
        let lc = rhs.leading().unwrap().clone();
        let mut rem = self.clone();
        while let Some(d) = rem.degree() {
            if d < dr {
                break;
            }
            let lead = rem.leading().unwrap().clone();
            rem = rem.scale(&lc).sub(&rhs.scale(&lead).shift(d - dr));
        }
        rem
    }

    /// Gcd over Q up to a constant, via a primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree().unwrap_or(0) < b.degree().unwrap_or(0) {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }
}

impl fmt::Display for IntPolynomial {
    /// Space-separated coefficients, ascending degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The characteristic polynomial `t*x^{k_t} + sum_i x^{k_t - k_i}`.
/// Its support is {0} for i = t, the offsets d_i for i < t, and k_t itself.
pub fn characteristic_poly(set: &SubtractionSet) -> IntPolynomial {
    let k_max = set.k_max() as usize;
    let mut coeffs = vec![BigInt::zero(); k_max + 1];
    for &k in set.elements() {
        coeffs[k_max - k as usize] += BigInt::one();
    }
    coeffs[k_max] += BigInt::from(set.t() as u64);
    IntPolynomial::new(coeffs)
}

/// True iff all complex roots are simple: gcd(p, p') is constant,
/// decided with exact integer arithmetic.
pub fn square_free_test(p: &IntPolynomial) -> bool {
    let g = p.gcd(&p.derivative());
    g.degree() == Some(0)
}

/// Closed-form quotient χ_S / (x+1) for all-odd sets: with the support
/// exponents 0 = s_0 < s_1 < ... < s_t = k_t of χ_S listed ascending, the
/// quotient coefficient at x^i is (m+1)(-1)^i for s_m <= i < s_{m+1}.
/// The identity (x+1)·Q = χ_S is verified by exact multiplication.
pub fn quotient_closed_form(set: &SubtractionSet) -> Result<IntPolynomial> {
    if !set.all_odd() {
        return Err(Error::Precondition(format!(
            "quotient by (x+1) requires an all-odd set, got {set}"
        )));
    }
    let chi = characteristic_poly(set);
    let mut support: Vec<usize> = chi
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .collect();
    support.sort_unstable();
    let k_max = set.k_max() as usize;
    let mut q = Vec::with_capacity(k_max);
    for m in 0..support.len() - 1 {
        for i in support[m]..support[m + 1] {
            let mag = BigInt::from(m as u64 + 1);
            q.push(if i % 2 == 0 { mag } else { -mag });
        }
    }
    let quotient = IntPolynomial::new(q);
    let product = quotient.mul(&IntPolynomial::from_i64(&[1, 1]));
    if product != chi {
        return Err(Error::IdentityCheck(format!(
            "(x+1)*Q != chi_S for {set}: got {product}, want {chi}"
        )));
    }
    Ok(quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn set(elems: &[i64]) -> SubtractionSet {
        SubtractionSet::new(elems).unwrap()
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(
            characteristic_poly(&set(&[3, 5])),
            IntPolynomial::from_i64(&[1, 0, 1, 0, 0, 2])
        );
        assert_eq!(
            characteristic_poly(&set(&[1, 3, 5])),
            IntPolynomial::from_i64(&[1, 0, 1, 0, 1, 3])
        );
        assert_eq!(
            characteristic_poly(&set(&[4])),
            IntPolynomial::from_i64(&[1, 0, 0, 0, 1])
        );
    }

    #[test]
    fn eval_at_minus_one_and_one() {
        let m1 = BigInt::from(-1);
        assert_eq!(
            characteristic_poly(&set(&[3, 5])).eval(&m1),
            BigInt::zero()
        );
        assert_eq!(
            characteristic_poly(&set(&[1, 2])).eval(&m1),
            BigInt::from(2)
        );
        // chi_S(1) = 2t for every S.
        for elems in [vec![3i64, 5], vec![1, 2], vec![2, 4, 7]] {
            let s = set(&elems);
            assert_eq!(
                characteristic_poly(&s).eval(&BigInt::one()),
                BigInt::from(2 * s.t() as u64)
            );
        }
    }

    #[test]
    fn derivative_examples() {
        let chi = characteristic_poly(&set(&[3, 5]));
        let d = chi.derivative();
        assert_eq!(d, IntPolynomial::from_i64(&[0, 2, 0, 0, 10]));
        assert_eq!(d.eval(&BigInt::from(-1)), BigInt::from(8));
        assert_eq!(
            IntPolynomial::from_i64(&[7]).derivative(),
            IntPolynomial::zero()
        );
    }

    #[test]
    fn derivative_at_minus_one_is_element_sum_for_all_odd() {
        for elems in [vec![3i64, 5], vec![1, 3, 5], vec![3, 5, 7], vec![1, 5, 9, 11]] {
            let s = set(&elems);
            let v = characteristic_poly(&s)
                .derivative()
                .eval(&BigInt::from(-1));
            assert_eq!(v, BigInt::from(s.element_sum()));
        }
    }

    #[test]
    fn divide_examples() {
        let (q, r) = characteristic_poly(&set(&[3, 5])).divide_by_x_plus_one();
        assert_eq!(q, IntPolynomial::from_i64(&[1, -1, 2, -2, 2]));
        assert!(r.is_zero());

        let (_, r) = characteristic_poly(&set(&[1, 2])).divide_by_x_plus_one();
        assert!(!r.is_zero());

        let (q, r) = IntPolynomial::from_i64(&[1, 1]).divide_by_x_plus_one();
        assert_eq!(q, IntPolynomial::from_i64(&[1]));
        assert!(r.is_zero());
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(
            quotient_closed_form(&set(&[3, 5])).unwrap(),
            IntPolynomial::from_i64(&[1, -1, 2, -2, 2])
        );
        assert_eq!(
            quotient_closed_form(&set(&[1, 3, 5])).unwrap(),
            IntPolynomial::from_i64(&[1, -1, 2, -2, 3])
        );
        assert_eq!(
            quotient_closed_form(&set(&[3, 5, 7])).unwrap(),
            IntPolynomial::from_i64(&[1, -1, 2, -2, 3, -3, 3])
        );
        assert!(quotient_closed_form(&set(&[1, 2])).is_err());
    }

    #[test]
    fn quotient_agrees_with_synthetic_division() {
        for elems in [vec![3i64, 5], vec![1, 3], vec![1, 3, 5], vec![3, 5, 7, 9], vec![5, 9, 21]] {
            let s = set(&elems);
            let q = quotient_closed_form(&s).unwrap();
            let (q2, r) = characteristic_poly(&s).divide_by_x_plus_one();
            assert!(r.is_zero());
            assert_eq!(q, q2);
        }
    }

    #[test]
    fn square_free_examples() {
        assert!(square_free_test(&characteristic_poly(&set(&[3, 5]))));
        assert!(square_free_test(&characteristic_poly(&set(&[3, 5, 7]))));
        // (x+1)^2
        assert!(!square_free_test(&IntPolynomial::from_i64(&[1, 2, 1])));
        // x^2(x-1)
        assert!(!square_free_test(&IntPolynomial::from_i64(&[0, 0, -1, 1])));
    }

    #[test]
    fn parity_law_exhaustive_small() {
        // chi_S(-1) = 0 iff every element is odd, over all sets from {1..12}, t <= 3.
        let m1 = BigInt::from(-1);
        for t in 1..=3usize {
            for combo in (1i64..=12).combinations(t) {
                let s = set(&combo);
                let is_root = characteristic_poly(&s).eval(&m1).is_zero();
                assert_eq!(is_root, s.all_odd(), "S={s}");
            }
        }
    }

    #[test]
    fn display_roundtrip() {
        let p = IntPolynomial::from_i64(&[1, 0, -2, 3]);
        assert_eq!(p.to_string(), "1 0 -2 3");
    }
}
