//! Lengths of Z-unary words: polynomials in `w` (standing for omega) with
//! integer coefficients, compared by the sign of the leading coefficient of
//! their difference.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dense polynomial in `w`; `coeffs[i]` is the coefficient of `w^i`.
///
/// Canonical form keeps no trailing zeros, except that the zero polynomial is
/// stored as `[0]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OmegaPoly {
    coeffs: Vec<i128>,
}

impl OmegaPoly {
    pub fn zero() -> Self {
        OmegaPoly { coeffs: vec![0] }
    }

    pub fn constant(c: i128) -> Self {
        OmegaPoly { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The polynomial `w`.
    pub fn omega() -> Self {
        OmegaPoly { coeffs: vec![0, 1] }
    }

    pub fn from_coeffs(coeffs: Vec<i128>) -> Self {
        let mut p = OmegaPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0 {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(0);
        }
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0]
    }

    /// Index of the last nonzero coefficient; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i128 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_positive(&self) -> bool {
        self.leading() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.leading() < 0
    }

    pub fn add(&self, other: &OmegaPoly) -> Result<OmegaPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).checked_add(other.coeff(i)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn neg(&self) -> Result<OmegaPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_neg().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn sub(&self, other: &OmegaPoly) -> Result<OmegaPoly> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, k: i128) -> Result<OmegaPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    /// Product with the linear polynomial `w + q`.
    pub fn mul_omega_plus(&self, q: i64) -> Result<OmegaPoly> {
        let shifted = OmegaPoly::from_coeffs(
            std::iter::once(0).chain(self.coeffs.iter().copied()).collect(),
        );
        shifted.add(&self.scale(q as i128)?)
    }

    /// Horner evaluation at `w = k`.
    pub fn eval(&self, k: i128) -> Result<i128> {
        self.coeffs.iter().rev().try_fold(0i128, |acc, &c| {
            acc.checked_mul(k)
                .and_then(|v| v.checked_add(c))
                .ok_or(Error::Overflow)
        })
    }

    /// Gcd of all coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> u128 {
        self.coeffs
            .iter()
            .fold(0u128, |g, &c| gcd(g, c.unsigned_abs()))
    }

    /// All integer roots, by enumerating divisors of the trailing nonzero
    /// coefficient (rational root test with the sign of either choice).
    pub fn integer_roots(&self) -> Result<Vec<i128>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lowest = self.coeffs.iter().position(|&c| c != 0).unwrap();
        let mut roots = Vec::new();
        if lowest > 0 {
            roots.push(0);
        }
        let c0 = self.coeffs[lowest].unsigned_abs();
        for d in divisors(c0) {
            let d = i128::try_from(d).map_err(|_| Error::Overflow)?;
            for cand in [d, -d] {
                // Evaluation may overflow for large candidates on polynomials
                // that cannot vanish there anyway; treat that as "not a root".
                if let Ok(0) = self.eval(cand) {
                    roots.push(cand);
                }
            }
        }
        roots.sort_unstable();
        roots.dedup();
        Ok(roots)
    }

    /// Exact division by `w + m`; `None` when the remainder is nonzero.
    pub fn div_omega_plus(&self, m: i64) -> Result<Option<OmegaPoly>> {
        if self.degree() == 0 {
            return Ok(if self.is_zero() { Some(Self::zero()) } else { None });
        }
        // Synthetic division by the root -m.
        let r = -(m as i128);
        let n = self.coeffs.len();
        let mut quot = vec![0i128; n - 1];
        let mut carry = 0i128;
        for i in (0..n).rev() {
            let v = self.coeffs[i]
                .checked_add(carry.checked_mul(r).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
            if i == 0 {
                return Ok(if v == 0 { Some(Self::from_coeffs(quot)) } else { None });
            }
            quot[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Exact division by a nonzero integer; `None` when some coefficient is
    /// not divisible.
    pub fn div_int(&self, k: i128) -> Option<OmegaPoly> {
        if k == 0 || self.coeffs.iter().any(|c| c % k != 0) {
            return None;
        }
        Some(Self::from_coeffs(self.coeffs.iter().map(|c| c / k).collect()))
    }

    /// The integer `m` with `0 <= self - m*unit < unit`, if one exists.
    /// `unit` must be positive.
    pub fn floor_div(&self, unit: &OmegaPoly) -> Result<Option<i128>> {
        debug_assert!(unit.is_positive());
        if self.degree() > unit.degree() && !self.is_zero() {
            return Ok(None);
        }
        let guess = if self.degree() < unit.degree() || self.is_zero() {
            0
        } else {
            self.leading().div_euclid(unit.leading())
        };
        for m in [guess - 1, guess, guess + 1, guess - 2, guess + 2] {
            let rest = self.sub(&unit.scale(m)?)?;
            if !rest.is_negative() && rest < *unit {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

impl Ord for OmegaPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.coeffs.len().max(other.coeffs.len());
        for i in (0..n).rev() {
            match self.coeff(i).cmp(&other.coeff(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for OmegaPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OmegaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "w")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for OmegaPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
        if bytes.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let mut coeffs: Vec<i128> = Vec::new();
        let mut i = 0;
        let mut first = true;
        while i < bytes.len() {
            let start = i;
            let mut sign = 1i128;
            match bytes[i] {
                '+' if !first => i += 1,
                '-' => {
                    sign = -1;
                    i += 1
                }
                _ if first => {}
                _ => return Err(err(i, "expected '+' or '-'")),
            }
            first = false;
            let digits_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mag: Option<i128> = if i > digits_start {
                let text: String = bytes[digits_start..i].iter().collect();
                Some(text.parse().map_err(|_| Error::Overflow)?)
            } else {
                None
            };
            let mut power = 0usize;
            if i < bytes.len() && bytes[i] == 'w' {
                i += 1;
                power = 1;
                if i < bytes.len() && bytes[i] == '^' {
                    i += 1;
                    let ps = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == ps {
                        return Err(err(i, "expected exponent after '^'"));
                    }
                    let text: String = bytes[ps..i].iter().collect();
                    power = text.parse().map_err(|_| err(ps, "exponent too large"))?;
                }
            } else if mag.is_none() {
                return Err(err(start, "expected a coefficient or 'w'"));
            }
            let c = sign * mag.unwrap_or(1);
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] = coeffs[power].checked_add(c).ok_or(Error::Overflow)?;
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Positive divisors of `n` in increasing order (`n > 0`).
pub(crate) fn divisors(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
