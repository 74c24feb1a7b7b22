//! Classification of the limit behaviour of a_n^S, the exact alpha_1 routes,
//! and the scan harnesses for the simplicity conjecture and the alpha_1 != 0
//! question.
//!
//! The direct-sum / quotient route is the authoritative alpha_1 in this
//! crate. The printed two-branch pair formula is kept as an audited
//! secondary: it disagrees with direct summation at (k,l) = (3,5), and the
//! audit surfaces every such mismatch instead of hiding it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{characteristic_poly, quotient_closed_form, square_free_test};
use crate::recurrence::{base_values, single_move_value, FloatStream};
use crate::set::SubtractionSet;

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Limit classification of one sequence.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// t = 1: the 0/1 block pattern with period 2k.
    Periodic { period: u64 },
    /// Some element of the reduced set is even; a_n -> 1/2.
    ConvergesToHalf,
    /// t = 2 all-odd (proved): even/odd subsequences converge to 1/2 +- alpha_1.
    Oscillates {
        alpha1: BigRational,
        even_limit: BigRational,
        odd_limit: BigRational,
    },
    /// t >= 3 all-odd: alpha_1 exact under the simple-roots conjecture,
    /// with the conjecture checked per instance via the exact gcd test.
    ConditionalOscillation {
        alpha1: BigRational,
        simple_roots_verified: bool,
    },
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub input: SubtractionSet,
    pub reduced: SubtractionSet,
    /// gcd factor m; limits apply to the subsequence a_{mn} when m > 1.
    pub reduction_factor: u64,
    pub verdict: Verdict,
}

/// Applies gcd reduction, then the theorems' case split.
pub fn classify(set: &SubtractionSet) -> Classification {
    let (reduced, m) = set.gcd_reduce();
    let verdict = if reduced.t() == 1 {
        Verdict::Periodic {
            period: 2 * reduced.k_max(),
        }
    } else if !reduced.all_odd() {
        Verdict::ConvergesToHalf
    } else if reduced.t() == 2 {
        let elems = reduced.elements();
        let alpha1 = alpha1_pair_sums(elems[0], elems[1]).unwrap();
        debug_assert!(alpha1.is_negative());
        Verdict::Oscillates {
            even_limit: half() + &alpha1,
            odd_limit: half() - &alpha1,
            alpha1,
        }
    } else {
        let alpha1 = alpha1_general(&reduced).unwrap();
        let simple = square_free_test(&characteristic_poly(&reduced));
        Verdict::ConditionalOscillation {
            alpha1,
            simple_roots_verified: simple,
        }
    };
    Classification {
        input: set.clone(),
        reduced,
        reduction_factor: m,
        verdict,
    }
}

/// Even/odd subsequence limits. Convergent and periodic verdicts report
/// (1/2, 1/2) with `oscillates = false`; the periodic t=1 case has no
/// subsequence limits at all but is folded in the same way for reporting.
pub fn subsequence_limits(c: &Classification) -> (BigRational, BigRational, bool) {
    match &c.verdict {
        Verdict::Oscillates {
            even_limit,
            odd_limit,
            ..
        } => (even_limit.clone(), odd_limit.clone(), true),
        Verdict::ConditionalOscillation { alpha1, .. } => {
            (half() + alpha1, half() - alpha1, true)
        }
        _ => (half(), half(), false),
    }
}

fn require_odd_coprime_pair(k: u64, l: u64) -> Result<()> {
    if k >= l || k % 2 == 0 || l % 2 == 0 {
        return Err(Error::Precondition(format!(
            "need odd k < l, got k={k}, l={l}"
        )));
    }
    if num_integer::gcd(k, l) != 1 {
        return Err(Error::Precondition(format!(
            "need coprime k, l; gcd({k},{l}) != 1"
        )));
    }
    Ok(())
}

/// The two alternating sums over the single-move base values, computed by
/// direct summation, alongside the closed forms the analysis states for
/// them. Mismatches are returned, not hidden.
#[derive(Clone, Debug)]
pub struct LemmaSums {
    /// sum_{i=0}^{l-1} (-1)^i a_i, direct.
    pub s1: BigRational,
    /// sum_{i=l-k}^{l-1} (-1)^i a_i, direct.
    pub s2: BigRational,
    pub closed1: BigRational,
    pub closed2: BigRational,
}

impl LemmaSums {
    pub fn agree1(&self) -> bool {
        self.s1 == self.closed1
    }
    pub fn agree2(&self) -> bool {
        self.s2 == self.closed2
    }
}

pub fn lemma_sums(k: u64, l: u64) -> Result<LemmaSums> {
    require_odd_coprime_pair(k, l)?;
    let sign = |i: u64| if i % 2 == 0 { 1i64 } else { -1 };
    let mut s1 = BigRational::zero();
    let mut s2 = BigRational::zero();
    for i in 0..l {
        let term = single_move_value(i, k) * BigRational::from_integer(BigInt::from(sign(i)));
        s1 += &term;
        if i >= l - k {
            s2 += &term;
        }
    }
    let q = (l / k) as i64;
    let (closed1, closed2) = if q % 2 == 0 {
        (
            BigRational::new(BigInt::from(-q), BigInt::from(2)),
            BigRational::from_integer(BigInt::from(-(k as i64) * (q + 1) + l as i64)),
        )
    } else {
        (
            BigRational::new(BigInt::from(-(q - 1)), BigInt::from(2)),
            BigRational::from_integer(BigInt::from(-(l as i64) + k as i64 * q)),
        )
    };
    Ok(LemmaSums {
        s1,
        s2,
        closed1,
        closed2,
    })
}

/// The two-branch closed formula for alpha_1, exactly as printed in the
/// analysis. Audited against `alpha1_pair_sums`; known to disagree at (3,5).
pub fn alpha1_pair_printed(k: u64, l: u64) -> Result<BigRational> {
    require_odd_coprime_pair(k, l)?;
    let q = (l / k) as i64;
    let (k, l) = (k as i64, l as i64);
    let numer = if q % 2 == 0 {
        // -q/2 - k(q+1) + l - 1
        BigRational::new(BigInt::from(-q), BigInt::from(2))
            + BigRational::from_integer(BigInt::from(-k * (q + 1) + l - 1))
    } else {
        // -(q-1)/2 - l + k*q - 1
        BigRational::new(BigInt::from(-(q - 1)), BigInt::from(2))
            + BigRational::from_integer(BigInt::from(-l + k * q - 1))
    };
    Ok(numer / BigRational::from_integer(BigInt::from(l + k)))
}

/// alpha_1 = (S1 + S2 - 1) / (l + k) with S1, S2 the direct alternating
/// sums. Authoritative for t = 2.
pub fn alpha1_pair_sums(k: u64, l: u64) -> Result<BigRational> {
    let sums = lemma_sums(k, l)?;
    Ok((sums.s1 + sums.s2 - BigRational::one())
        / BigRational::from_integer(BigInt::from((l + k) as i64)))
}

/// General quotient route: alpha_1 = (1/sum k_i) * sum_i Q_i (a_i - 1/2),
/// where Q is the closed-form quotient chi_S/(x+1) and a_i the base values.
/// Meaningful under the simple-roots conjecture; callers pair it with the
/// exact square-free test.
pub fn alpha1_general(set: &SubtractionSet) -> Result<BigRational> {
    if !set.all_odd() {
        return Err(Error::Precondition(format!(
            "alpha_1 requires an all-odd set, got {set}"
        )));
    }
    let q = quotient_closed_form(set)?;
    let base = base_values(set);
    let mut acc = BigRational::zero();
    for (i, a) in base.iter().enumerate() {
        let qi = BigRational::from_integer(q.coeff(i));
        acc += qi * (a - half());
    }
    Ok(acc / BigRational::from_integer(BigInt::from(set.element_sum())))
}

/// Tail-window estimate of alpha_1 from the float sequence: mean of
/// (-1)^n (a_n - 1/2) over n in [n_max/2, n_max], plus the max deviation
/// from that mean over the window.
pub fn alpha1_empirical(set: &SubtractionSet, n_max: u64) -> (f64, f64) {
    let start = n_max / 2;
    let mut devs = Vec::with_capacity((n_max - start + 1) as usize);
    for (n, a) in FloatStream::new(set).take(n_max as usize + 1).enumerate() {
        if n as u64 >= start {
            let d = a - 0.5;
            devs.push(if n % 2 == 0 { d } else { -d });
        }
    }
    let mean = devs.iter().sum::<f64>() / devs.len() as f64;
    let spread = devs
        .iter()
        .map(|d| (d - mean).abs())
        .fold(0.0f64, f64::max);
    (mean, spread)
}

/// Picks an index large enough that `gap^(n/2) < target`, clamped to
/// [min_n, max_n]. With all other roots inside the unit circle this bounds
/// the distance of the tail window from the limit.
pub fn adaptive_n_max(spectral_gap: f64, target: f64, min_n: u64, max_n: u64) -> u64 {
    if spectral_gap <= 0.0 || spectral_gap >= 1.0 {
        return max_n;
    }
    let n = 2.0 * target.ln() / spectral_gap.ln();
    (n.ceil() as u64).clamp(min_n, max_n)
}

/// All alpha_1 routes side by side, with agreement flags.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Alpha1Result {
    /// The printed two-branch pair formula (t = 2 only).
    pub via_printed_formula: Option<String>,
    /// Direct-sum route (t = 2 only).
    pub via_sums: Option<String>,
    /// General quotient route.
    pub via_quotient: String,
    pub empirical: f64,
    pub empirical_spread: f64,
    pub empirical_n_max: u64,
    /// via_sums == via_quotient (always expected when both defined).
    pub sums_quotient_agree: bool,
    /// via_printed_formula == via_sums; false flags the audit mismatch.
    pub printed_formula_agrees: bool,
}

/// Runs every alpha_1 route on an all-odd gcd-1 set.
pub fn alpha1_routes(set: &SubtractionSet, empirical_n_max: u64) -> Result<Alpha1Result> {
    let via_quotient = alpha1_general(set)?;
    let (pair_sums, pair_printed) = if set.t() == 2 {
        let e = set.elements();
        (
            Some(alpha1_pair_sums(e[0], e[1])?),
            Some(alpha1_pair_printed(e[0], e[1])?),
        )
    } else {
        (None, None)
    };
    let (empirical, empirical_spread) = alpha1_empirical(set, empirical_n_max);
    let sums_quotient_agree = pair_sums
        .as_ref()
        .map_or(true, |s| *s == via_quotient);
    let printed_formula_agrees = match (&pair_printed, &pair_sums) {
        (Some(p), Some(s)) => p == s,
        _ => true,
    };
    Ok(Alpha1Result {
        via_printed_formula: pair_printed.as_ref().map(rational_string),
        via_sums: pair_sums.as_ref().map(rational_string),
        via_quotient: rational_string(&via_quotient),
        empirical,
        empirical_spread,
        empirical_n_max,
        sums_quotient_agree,
        printed_formula_agrees,
    })
}

/// Enumerates all-odd gcd-1 sets with |S| <= t_max and max <= k_max, in
/// lexicographic (t, max element, elements) order. Deterministic.
pub fn enumerate_all_odd_sets(t_max: usize, k_max: u64) -> Vec<SubtractionSet> {
    use itertools::Itertools;
    let odds: Vec<u64> = (1..=k_max).filter(|k| k % 2 == 1).collect();
    let mut sets = Vec::new();
    for t in 1..=t_max.min(odds.len()) {
        for combo in odds.iter().copied().combinations(t) {
            let s = SubtractionSet::from_u64(&combo).unwrap();
            if s.gcd() == 1 {
                sets.push(s);
            }
        }
    }
    sets.sort_by(|a, b| {
        (a.t(), a.k_max(), a.elements()).cmp(&(b.t(), b.k_max(), b.elements()))
    });
    sets
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjectureEntry {
    pub set: Vec<u64>,
    pub square_free: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub t_max: usize,
    pub k_max: u64,
    pub verified: usize,
    pub failures: Vec<Vec<u64>>,
    pub entries: Vec<ConjectureEntry>,
}

/// Per-instance verification of root simplicity over the enumerated range.
pub fn scan_conjecture(t_max: usize, k_max: u64) -> Result<ConjectureReport> {
    if t_max < 1 || k_max < 1 {
        return Err(Error::Precondition("scan bounds must be >= 1".into()));
    }
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for s in enumerate_all_odd_sets(t_max, k_max) {
        let square_free = square_free_test(&characteristic_poly(&s));
        if !square_free {
            failures.push(s.elements().to_vec());
        }
        entries.push(ConjectureEntry {
            set: s.elements().to_vec(),
            square_free,
        });
    }
    Ok(ConjectureReport {
        t_max,
        k_max,
        verified: entries.iter().filter(|e| e.square_free).count(),
        failures,
        entries,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuestionEntry {
    pub set: Vec<u64>,
    pub alpha1_num: String,
    pub alpha1_den: String,
    pub zero: bool,
    pub negative: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuestionReport {
    pub t_max: usize,
    pub k_max: u64,
    pub zero_count: usize,
    pub all_negative: bool,
    pub min_abs_alpha1: Option<String>,
    pub entries: Vec<QuestionEntry>,
}

/// Exact alpha_1 over the enumerated range, reporting zeros and the
/// smallest |alpha_1| seen. Singleton sets are skipped: alpha_1 concerns
/// the oscillating closed form, which needs t >= 2.
pub fn scan_question(t_max: usize, k_max: u64) -> Result<QuestionReport> {
    if t_max < 1 || k_max < 1 {
        return Err(Error::Precondition("scan bounds must be >= 1".into()));
    }
    let mut entries = Vec::new();
    let mut min_abs: Option<BigRational> = None;
    for s in enumerate_all_odd_sets(t_max, k_max) {
        if s.t() < 2 {
            continue;
        }
        let alpha1 = alpha1_general(&s)?;
        let abs = alpha1.abs();
        if min_abs.as_ref().map_or(true, |m| abs < *m) {
            min_abs = Some(abs);
        }
        entries.push(QuestionEntry {
            set: s.elements().to_vec(),
            alpha1_num: alpha1.numer().to_string(),
            alpha1_den: alpha1.denom().to_string(),
            zero: alpha1.is_zero(),
            negative: alpha1.is_negative(),
        });
    }
    Ok(QuestionReport {
        t_max,
        k_max,
        zero_count: entries.iter().filter(|e| e.zero).count(),
        all_negative: entries.iter().all(|e| e.negative),
        min_abs_alpha1: min_abs.as_ref().map(rational_string),
        entries,
    })
}
