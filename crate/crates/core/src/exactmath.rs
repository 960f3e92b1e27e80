//! Exact big-integer binomial coefficients, exact rationals, and the
//! binomial inequality family used by the shifting arguments, as
//! computable predicates.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::Ratio;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use once_cell::race::OnceBox;

/// Arbitrary-precision non-negative count. Never rounded.
pub type BigCount = BigUint;

/// Rows `a <= MEMO_BOUND` of Pascal's triangle are cached after first use;
/// larger arguments fall back to the multiplicative formula.
pub const MEMO_BOUND: u64 = 512;

static BINOM_ROWS: OnceBox<Vec<OnceBox<Vec<BigUint>>>> = OnceBox::new();

fn binom_row(a: usize) -> &'static [BigUint] {
    let rows = BINOM_ROWS.get_or_init(|| {
        let mut v = Vec::with_capacity(MEMO_BOUND as usize + 1);
        v.resize_with(MEMO_BOUND as usize + 1, OnceBox::new);
        Box::new(v)
    });
    rows[a]
        .get_or_init(|| {
            let mut row = Vec::with_capacity(a + 1);
            let mut entry = BigUint::one();
            row.push(entry.clone());
            for b in 1..=a {
                // row[b] = row[b-1] * (a - b + 1) / b, exact at every step
                entry = entry * BigUint::from(a as u64 - b as u64 + 1) / BigUint::from(b as u64);
                row.push(entry.clone());
            }
            Box::new(row)
        })
        .as_slice()
}

/// Exact binomial coefficient; 0 when `b > a` (the usual combinatorial
/// convention for out-of-range arguments).
pub fn binom(a: u64, b: u64) -> BigCount {
    if b > a {
        return BigUint::zero();
    }
    if a <= MEMO_BOUND {
        return binom_row(a as usize)[b as usize].clone();
    }
    let r = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 1..=r {
        acc = acc * BigUint::from(a - r + i) / BigUint::from(i);
    }
    acc
}

/// Binomial coefficient in u64. Callers must keep `a <= 64` (or otherwise
/// know the value fits); used for ranks and small degree counts.
pub fn binom_u64(a: u64, b: u64) -> u64 {
    binom_u128(a, b) as u64
}

/// Binomial coefficient in u128; exact for all `a <= 128` (backed by a
/// Pascal table, whose additions cannot overflow where the result fits).
pub fn binom_u128(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    if a <= 128 {
        static TABLE: OnceBox<Vec<Vec<u128>>> = OnceBox::new();
        let table = TABLE.get_or_init(|| {
            let mut tri: Vec<Vec<u128>> = Vec::with_capacity(129);
            tri.push(alloc::vec![1u128]);
            for n in 1..=128usize {
                let prev = &tri[n - 1];
                let mut row = Vec::with_capacity(n + 1);
                row.push(1u128);
                for k in 1..n {
                    row.push(prev[k - 1] + prev[k]);
                }
                row.push(1u128);
                tri.push(row);
            }
            Box::new(tri)
        });
        return table[a as usize][b as usize];
    }
    let r = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 1..=r {
        acc = acc * (a - r + i) as u128 / i as u128;
    }
    acc
}

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(Ratio<BigInt>);

impl ExactRatio {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, ExactMathError> {
        if denom.is_zero() {
            return Err(ExactMathError::ZeroDenominator);
        }
        Ok(ExactRatio(Ratio::new(numer, denom)))
    }

    pub fn from_u64s(numer: u64, denom: u64) -> Result<Self, ExactMathError> {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_integer(n: BigInt) -> Self {
        ExactRatio(Ratio::from_integer(n))
    }

    pub fn from_count(n: &BigCount) -> Self {
        ExactRatio(Ratio::from_integer(BigInt::from_biguint(Sign::Plus, n.clone())))
    }

    pub fn zero() -> Self {
        ExactRatio(Ratio::zero())
    }

    pub fn one() -> Self {
        ExactRatio(Ratio::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True iff the value lies in `[0, 1]`.
    pub fn in_unit_interval(&self) -> bool {
        !self.0.is_negative() && self.0 <= Ratio::one()
    }

    pub fn pow(&self, exp: i32) -> Self {
        ExactRatio(Pow::pow(&self.0, exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn complement_from_one(&self) -> Self {
        ExactRatio(Ratio::one() - &self.0)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactRatio({})", self)
    }
}

macro_rules! ratio_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio(self.0.$method(rhs.0))
            }
        }
    };
}

ratio_binop!(Add, add);
ratio_binop!(Sub, sub);
ratio_binop!(Mul, mul);

impl Div for &ExactRatio {
    type Output = ExactRatio;
    fn div(self, rhs: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 / &rhs.0)
    }
}

/// Parses `"a/b"`, a plain integer, or a decimal such as `"0.25"`
/// (interpreted exactly as a power-of-ten rational).
impl FromStr for ExactRatio {
    type Err = ExactMathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n = BigInt::from_str(num.trim()).map_err(|_| ExactMathError::ParseRatio)?;
            let d = BigInt::from_str(den.trim()).map_err(|_| ExactMathError::ParseRatio)?;
            if d <= BigInt::zero() {
                return Err(ExactMathError::ParseRatio);
            }
            return ExactRatio::new(n, d);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let (sign, int_digits) = match int_part.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, int_part),
            };
            let int_digits = if int_digits.is_empty() { "0" } else { int_digits };
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ExactMathError::ParseRatio);
            }
            let mut digits = String::from(int_digits);
            digits.push_str(frac_part);
            let n = BigInt::from_str(&digits).map_err(|_| ExactMathError::ParseRatio)?;
            let d = BigInt::from(10u32).pow(frac_part.len() as u32);
            return ExactRatio::new(BigInt::from(sign) * n, d);
        }
        let n = BigInt::from_str(s).map_err(|_| ExactMathError::ParseRatio)?;
        Ok(ExactRatio::from_integer(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactMathError {
    ZeroDenominator,
    ParseRatio,
    /// A precondition of one of the inequality checks was violated.
    Precondition(&'static str),
}

impl fmt::Display for ExactMathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactMathError::ZeroDenominator => write!(f, "denominator must be non-zero"),
            ExactMathError::ParseRatio => write!(f, "cannot parse rational (expected a/b, integer, or decimal)"),
            ExactMathError::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl core::error::Error for ExactMathError {}

/// Both sides of a binomial inequality, evaluated exactly, plus whether the
/// inequality holds in its stated direction.
#[derive(Debug, Clone)]
pub struct InequalityOutcome {
    pub lhs: ExactRatio,
    pub rhs: ExactRatio,
    pub holds: bool,
}

/// Which binomial inequality to evaluate.
#[derive(Debug, Clone)]
pub enum BinomInequality {
    /// binom(b,r) <= (b/c)^r binom(c,r), for 0 <= b <= c, c >= 1, r >= 0.
    RatioPower { b: u64, c: u64, r: u64 },
    /// sum_i binom(n_i,r) <= (S/M) binom(M,r), for r >= 1, 0 <= n_i <= M.
    CappedSum { values: Vec<u64>, cap: u64, r: u64 },
    /// [binom(b-a,r)+binom(c+a,r)] - [binom(b,r)+binom(c,r)]
    ///   >= (1-(b-a)/c) (ar/(c-r+1)) binom(c,r), for 0 <= a <= b <= c, c >= 1, r >= 2.
    TransferGain { a: u64, b: u64, c: u64, r: u64 },
}

pub fn binom_inequality_check(args: &BinomInequality) -> Result<InequalityOutcome, ExactMathError> {
    match args {
        BinomInequality::RatioPower { b, c, r } => ratio_power_bound(*b, *c, *r),
        BinomInequality::CappedSum { values, cap, r } => {
            let out = capped_sum_bound(values, *cap, *r)?;
            Ok(InequalityOutcome {
                lhs: ExactRatio::from_count(&out.lhs),
                rhs: out.rhs,
                holds: out.holds,
            })
        }
        BinomInequality::TransferGain { a, b, c, r } => transfer_gain_bound(*a, *b, *c, *r),
    }
}

pub fn ratio_power_bound(b: u64, c: u64, r: u64) -> Result<InequalityOutcome, ExactMathError> {
    if c == 0 {
        return Err(ExactMathError::Precondition("ratio-power bound needs c >= 1"));
    }
    if b > c {
        return Err(ExactMathError::Precondition("ratio-power bound needs b <= c"));
    }
    let lhs = ExactRatio::from_count(&binom(b, r));
    let ratio = ExactRatio::from_u64s(b, c)?;
    let rhs = &ratio.pow(r as i32) * &ExactRatio::from_count(&binom(c, r));
    let holds = lhs <= rhs;
    Ok(InequalityOutcome { lhs, rhs, holds })
}

pub fn transfer_gain_bound(a: u64, b: u64, c: u64, r: u64) -> Result<InequalityOutcome, ExactMathError> {
    if !(a <= b && b <= c) {
        return Err(ExactMathError::Precondition("transfer-gain bound needs 0 <= a <= b <= c"));
    }
    if c == 0 {
        return Err(ExactMathError::Precondition("transfer-gain bound needs c >= 1"));
    }
    if r < 2 {
        return Err(ExactMathError::Precondition("transfer-gain bound needs r >= 2"));
    }
    let big = |x: u64| BigInt::from_biguint(Sign::Plus, binom(x, r));
    let lhs_int = big(b - a) + big(c + a) - big(b) - big(c);
    let lhs = ExactRatio::from_integer(lhs_int);
    let cr = binom(c, r);
    // When binom(c,r) vanishes (r > c) the right-hand side is zero; this also
    // sidesteps the c - r + 1 = 0 division that the formula would otherwise hit.
    let rhs = if cr.is_zero() {
        ExactRatio::zero()
    } else {
        let one_minus = ExactRatio::one() - ExactRatio::from_u64s(b - a, c)?;
        let factor = ExactRatio::new(
            BigInt::from(a) * BigInt::from(r),
            BigInt::from(c as i64 - r as i64 + 1),
        )?;
        &(&one_minus * &factor) * &ExactRatio::from_count(&cr)
    };
    let holds = lhs >= rhs;
    Ok(InequalityOutcome { lhs, rhs, holds })
}

/// Outcome of the capped degree-sum bound:
/// `sum_i binom(n_i, r) <= (S/M) binom(M, r)`.
#[derive(Debug, Clone)]
pub struct CappedSumBound {
    pub lhs: BigCount,
    pub rhs: ExactRatio,
    pub holds: bool,
}

pub fn capped_sum_bound(values: &[u64], cap: u64, r: u64) -> Result<CappedSumBound, ExactMathError> {
    if r == 0 {
        return Err(ExactMathError::Precondition("capped-sum bound needs r >= 1"));
    }
    if cap == 0 {
        return Err(ExactMathError::Precondition("capped-sum bound needs M >= 1"));
    }
    if values.iter().any(|&v| v > cap) {
        return Err(ExactMathError::Precondition("capped-sum bound needs n_i <= M"));
    }
    let mut lhs = BigUint::zero();
    let mut total: u64 = 0;
    for &v in values {
        lhs += binom(v, r);
        total += v;
    }
    let rhs = &ExactRatio::from_u64s(total, cap)? * &ExactRatio::from_count(&binom(cap, r));
    let holds = ExactRatio::from_count(&lhs) <= rhs;
    Ok(CappedSumBound { lhs, rhs, holds })
}

/// Total-order comparison helper for sorting by exact value.
pub fn ratio_cmp(a: &ExactRatio, b: &ExactRatio) -> Ordering {
    a.0.cmp(&b.0)
}
