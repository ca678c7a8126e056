//! Exact truncated power series and the named generating functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A power series known exactly through degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    /// Coefficients for degrees `0..=order`; missing ones are zero, extra ones
    /// are dropped.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn from_bigints(coeffs: &[BigInt], order: usize) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_ints(&[1], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::from_ints(&[0, 1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; zero past the order.
    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest degree with a nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs, self.order())
    }

    /// Divides by `x^k`; the result is known through `order - k`.
    fn shift_down(&self, k: usize) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Quotient, cancelling a common power of `x` first. Cancelling `x^v`
    /// lowers the order of the result by `v`.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let order = self.order().min(rhs.order());
        let (num, den) = (self.truncate(order), rhs.truncate(order));
        let v = den
            .valuation()
            .ok_or_else(|| Error::Arithmetic("division by the zero series".into()))?;
        if num.valuation().is_some_and(|nv| nv < v) {
            return Err(Error::Arithmetic(format!(
                "numerator is not divisible by x^{v}, the leading power of the denominator"
            )));
        }
        let (num, den) = (num.shift_down(v), den.shift_down(v));
        let inv_lead = den.coeffs[0].recip();
        let mut q: Vec<BigRational> = Vec::with_capacity(num.coeffs.len());
        for n in 0..num.coeffs.len() {
            let mut acc = num.coeffs[n].clone();
            for k in 1..=n {
                if !den.coeffs[k].is_zero() {
                    acc -= &den.coeffs[k] * &q[n - k];
                }
            }
            q.push(acc * &inv_lead);
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// Square root with constant term 1 of a series with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Arithmetic("sqrt needs constant term 1".into()));
        }
        // r^2 = s gives 2 r_n = s_n - sum_{k=1}^{n-1} r_k r_{n-k}
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut r = vec![BigRational::one()];
        for n in 1..self.coeffs.len() {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc -= &r[k] * &r[n - k];
            }
            r.push(acc * &half);
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Coefficients as integers, failing on any fraction.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Arithmetic(format!("coefficient of x^{n} is {c}, not an integer")))
                }
            })
            .collect()
    }

    /// Integer coefficients for degrees `from..=to`, as `i128` (test helper
    /// for small orders).
    pub fn int_coeffs(&self, from: usize, to: usize) -> Result<Vec<i128>> {
        let ints = self.to_integers()?;
        (from..=to)
            .map(|n| {
                ints.get(n)
                    .ok_or_else(|| Error::Argument(format!("degree {n} is past the order {}", self.order())))?
                    .to_i128()
                    .ok_or_else(|| Error::Arithmetic(format!("coefficient of x^{n} overflows i128")))
            })
            .collect()
    }

    fn binary(&self, rhs: &Self, op: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|n| op(&self.coeffs[n], &rhs.coeffs[n])).collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        self.binary(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.binary(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;

            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = if abs.is_one() && n > 0 { String::new() } else { abs.to_string() };
            match n {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{mag}x")?,
                _ => write!(f, "{mag}x^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Product of integer polynomials given by coefficient lists.
pub fn poly_mul(p: &[i64], q: &[i64]) -> Vec<i64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Product of several polynomials.
pub fn poly_product(factors: &[&[i64]]) -> Vec<i64> {
    factors.iter().fold(vec![1], |acc, f| poly_mul(&acc, f))
}

/// Expansion of `numerator / denominator` through degree `order`.
pub fn expand_rational(numerator: &[i64], denominator: &[i64], order: usize) -> Result<TruncatedSeries> {
    if denominator.first().is_none_or(|&c| c == 0) {
        return Err(Error::Arithmetic("denominator must have a nonzero constant term".into()));
    }
    TruncatedSeries::from_ints(numerator, order).div(&TruncatedSeries::from_ints(denominator, order))
}

/// `sqrt(1 - 4x)`.
pub fn sqrt_one_minus_4x(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_ints(&[1, -4], order)
        .sqrt()
        .expect("constant term is 1")
}

/// `m = x/(1-x)`, nonempty monotone permutations.
pub fn m_series(order: usize) -> TruncatedSeries {
    let mut coeffs = vec![1; order + 1];
    coeffs[0] = 0;
    TruncatedSeries::from_ints(&coeffs, order)
}

/// `c`, the nonempty 312-avoiders, from the closed form
/// `(1 - 2x - sqrt(1-4x)) / (2x)`. The fixed point `c = x(1+c)^2` is
/// iterated separately and the two must agree.
pub fn catalan_c(order: usize) -> Result<TruncatedSeries> {
    // one extra degree because dividing by x costs one
    let num = &TruncatedSeries::from_ints(&[1, -2], order + 1) - &sqrt_one_minus_4x(order + 1);
    let closed = num.div(&TruncatedSeries::from_ints(&[0, 2], order + 1))?;
    let x = TruncatedSeries::x(order);
    let one = TruncatedSeries::one(order);
    let mut fixed = TruncatedSeries::zero(order);
    for _ in 0..=order {
        let s = &one + &fixed;
        fixed = &x * &(&s * &s);
    }
    if closed != fixed {
        return Err(Error::Internal("closed-form and fixed-point Catalan series disagree".into()));
    }
    Ok(closed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGf {
    /// The class `Av(3124, 4312)`.
    FClosed,
    /// Its simple permutations.
    S,
    G1Class,
    G2Class,
    G3Class,
    /// Simple permutations of length at least 4 in each grid class.
    M1,
    M2,
    M3,
    /// Sum and skew decomposable members of the class.
    FSum,
    FSkew,
}

impl NamedGf {
    pub const ALL: [NamedGf; 10] = [
        NamedGf::FClosed,
        NamedGf::S,
        NamedGf::G1Class,
        NamedGf::G2Class,
        NamedGf::G3Class,
        NamedGf::M1,
        NamedGf::M2,
        NamedGf::M3,
        NamedGf::FSum,
        NamedGf::FSkew,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedGf::FClosed => "f_closed",
            NamedGf::S => "S",
            NamedGf::G1Class => "G1_class",
            NamedGf::G2Class => "G2_class",
            NamedGf::G3Class => "G3_class",
            NamedGf::M1 => "M1",
            NamedGf::M2 => "M2",
            NamedGf::M3 => "M3",
            NamedGf::FSum => "f_sum",
            NamedGf::FSkew => "f_skew",
        }
    }
}

impl fmt::Display for NamedGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedGf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "f" {
            return Ok(NamedGf::FClosed);
        }
        NamedGf::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = NamedGf::ALL.iter().map(|g| g.name()).collect();
                Error::Argument(format!("unknown generating function {s:?}; expected f or one of {}", names.join(", ")))
            })
    }
}

/// Polynomial transcriptions, lowest degree first.
mod table {
    pub const S_NUM: &[i64] = &[0, 1, -2, -5, 12, 1, -8, -3];
    pub const F_RATIONAL_PART: &[i64] = &[-1, 9, -26, 28, -16, 8];
    pub const F_SQRT_PART: &[i64] = &[1, -7, 14, -8, 2];
    pub const F_DEN_CUBIC: &[i64] = &[1, -6, 9, -4];
    pub const G1_NUM: &[i64] = &[0, 1, -4, 5];
    pub const G2_NUM: &[i64] = &[0, 1, -7, 19, -22, 9, -1];
    pub const G3_NUM: &[i64] = &[0, 1, -5, 10, -8, 0, 1];
    pub const M1_NUM: &[i64] = &[0, 0, 0, 0, 2];
    pub const M2_NUM_EXTRA: &[i64] = &[2, 1];
    pub const M3_NUM: &[i64] = &[0, 0, 0, 0, 2, 1];

    pub const ONE_MINUS_X: &[i64] = &[1, -1];
    pub const ONE_MINUS_2X: &[i64] = &[1, -2];
    pub const ONE_MINUS_3X: &[i64] = &[1, -3];
    pub const FIB: &[i64] = &[1, -1, -1];
    pub const ONE_MINUS_3X_X2: &[i64] = &[1, -3, 1];
}

/// Closed form of the class series, dividing by `2x^2(1-6x+9x^2-4x^3)`
/// after checking that the numerator vanishes to order 2.
fn f_closed(order: usize) -> Result<TruncatedSeries> {
    let work = order + 2;
    let rational = TruncatedSeries::from_ints(table::F_RATIONAL_PART, work);
    let radical = &TruncatedSeries::from_ints(table::F_SQRT_PART, work) * &sqrt_one_minus_4x(work);
    let num = &rational + &radical;
    if num.valuation().is_some_and(|v| v < 2) {
        return Err(Error::Internal("numerator of the closed form does not vanish to order 2".into()));
    }
    let den = TruncatedSeries::from_ints(&poly_mul(&[0, 0, 2], table::F_DEN_CUBIC), work);
    Ok(num.div(&den)?.truncate(order))
}

pub fn named_gf(name: NamedGf, order: usize) -> Result<TruncatedSeries> {
    use table::*;
    match name {
        NamedGf::FClosed => f_closed(order),
        NamedGf::S => expand_rational(S_NUM, &poly_product(&[ONE_MINUS_2X, FIB, FIB]), order),
        NamedGf::G1Class => expand_rational(G1_NUM, &poly_product(&[ONE_MINUS_X, ONE_MINUS_2X, ONE_MINUS_3X]), order),
        NamedGf::G2Class => expand_rational(
            G2_NUM,
            &poly_product(&[ONE_MINUS_X, ONE_MINUS_2X, ONE_MINUS_3X_X2, ONE_MINUS_3X_X2]),
            order,
        ),
        NamedGf::G3Class => expand_rational(
            G3_NUM,
            &poly_product(&[ONE_MINUS_X, ONE_MINUS_X, ONE_MINUS_2X, ONE_MINUS_3X_X2]),
            order,
        ),
        NamedGf::M1 => expand_rational(M1_NUM, ONE_MINUS_2X, order),
        NamedGf::M2 => expand_rational(
            &poly_product(&[&[0, 0, 0, 0, 1], ONE_MINUS_X, M2_NUM_EXTRA]),
            &poly_mul(FIB, FIB),
            order,
        ),
        NamedGf::M3 => expand_rational(M3_NUM, FIB, order),
        NamedGf::FSum => {
            let f = f_closed(order)?;
            let x = TruncatedSeries::x(order);
            let c = catalan_c(order)?;
            Ok(&(&(&x * &c) + &x) * &f)
        }
        NamedGf::FSkew => {
            let f = f_closed(order)?;
            f_skew_of(&f, order)
        }
    }
}

/// `m(f + c - m)/(1 + m)` for a given `f`.
pub fn f_skew_of(f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    let m = m_series(order);
    let c = catalan_c(order)?;
    let num = &m * &(&(f + &c) - &m);
    num.div(&(&TruncatedSeries::one(order) + &m))
}
