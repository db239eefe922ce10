//! Quaternions over an arbitrary [`Scalar`], plus the canonical text form of
//! exact quaternions.
//!
//! Literal grammar (no whitespace allowed):
//!
//! ```text
//! quat := '-'? term (('+'|'-') term)* | '0'
//! term := rat unit? | unit
//! unit := 'i' | 'j' | 'k'
//! rat  := digits ('/' digits)?
//! ```
//!
//! Each of the four components may appear at most once. The canonical writer
//! emits terms in the order 1, i, j, k, drops zero terms, omits a unit
//! coefficient of one, and prints `0` for the zero quaternion.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `w + x·i + y·j + z·k` with `i² = j² = k² = ijk = −1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Quat<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Quat<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quat { w, x, y, z }
    }

    pub fn real(w: T) -> Self {
        Quat::new(w, T::zero(), T::zero(), T::zero())
    }

    /// Quaternion with small integer components.
    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quat::new(
            T::from_int(w),
            T::from_int(x),
            T::from_int(y),
            T::from_int(z),
        )
    }

    pub fn i() -> Self {
        Quat::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quat::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quat::from_ints(0, 0, 0, 1)
    }

    pub fn components(&self) -> [&T; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quat::new(
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    /// `w² + x² + y² + z²`, which equals `q·conj(q)`.
    pub fn norm_sq(&self) -> T {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    /// Two-sided inverse `conj(q) / |q|²`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(Quat::new(
            c.w / n.clone(),
            c.x / n.clone(),
            c.y / n.clone(),
            c.z / n,
        ))
    }

    /// Multiplies every component by the real `s` (real scalars are central).
    pub fn scale(&self, s: &T) -> Self {
        Quat::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    /// Divides every component by the real `s`.
    pub fn unscale(&self, s: &T) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Quat::new(
            self.w.clone() / s.clone(),
            self.x.clone() / s.clone(),
            self.y.clone() / s.clone(),
            self.z.clone() / s.clone(),
        ))
    }

    /// Converts the components into another scalar type through `f64`.
    pub fn to_f64(&self) -> Quat<f64> {
        Quat::new(
            self.w.to_f64_lossy(),
            self.x.to_f64_lossy(),
            self.y.to_f64_lossy(),
            self.z.to_f64_lossy(),
        )
    }

    /// Largest absolute component difference, measured in `f64`.
    pub fn max_abs_diff<U: Scalar>(&self, other: &Quat<U>) -> f64 {
        let a = self.to_f64();
        let b = other.to_f64();
        [a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z]
            .iter()
            .fold(0.0f64, |m, d| m.max(d.abs()))
    }

    fn hamilton(a: &Self, b: &Self) -> Self {
        let (a1, b1, c1, d1) = (&a.w, &a.x, &a.y, &a.z);
        let (a2, b2, c2, d2) = (&b.w, &b.x, &b.y, &b.z);
        let m = |p: &T, q: &T| p.clone() * q.clone();
        Quat::new(
            m(a1, a2) - m(b1, b2) - m(c1, c2) - m(d1, d2),
            m(a1, b2) + m(b1, a2) + m(c1, d2) - m(d1, c2),
            m(a1, c2) - m(b1, d2) + m(c1, a2) + m(d1, b2),
            m(a1, d2) + m(b1, c2) - m(c1, b2) + m(d1, a2),
        )
    }
}

impl<'a, T: Scalar> Add<&'a Quat<T>> for &'a Quat<T> {
    type Output = Quat<T>;
    fn add(self, rhs: &'a Quat<T>) -> Quat<T> {
        Quat::new(
            self.w.clone() + rhs.w.clone(),
            self.x.clone() + rhs.x.clone(),
            self.y.clone() + rhs.y.clone(),
            self.z.clone() + rhs.z.clone(),
        )
    }
}

impl<'a, T: Scalar> Sub<&'a Quat<T>> for &'a Quat<T> {
    type Output = Quat<T>;
    fn sub(self, rhs: &'a Quat<T>) -> Quat<T> {
        Quat::new(
            self.w.clone() - rhs.w.clone(),
            self.x.clone() - rhs.x.clone(),
            self.y.clone() - rhs.y.clone(),
            self.z.clone() - rhs.z.clone(),
        )
    }
}

impl<'a, T: Scalar> Mul<&'a Quat<T>> for &'a Quat<T> {
    type Output = Quat<T>;
    fn mul(self, rhs: &'a Quat<T>) -> Quat<T> {
        Quat::hamilton(self, rhs)
    }
}

impl<T: Scalar> Neg for &Quat<T> {
    type Output = Quat<T>;
    fn neg(self) -> Quat<T> {
        Quat::new(
            -self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl<T: Scalar> $tr<Quat<T>> for Quat<T> {
            type Output = Quat<T>;
            fn $method(self, rhs: Quat<T>) -> Quat<T> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, T: Scalar> $tr<&'a Quat<T>> for Quat<T> {
            type Output = Quat<T>;
            fn $method(self, rhs: &'a Quat<T>) -> Quat<T> {
                (&self).$method(rhs)
            }
        }
        impl<'a, T: Scalar> $tr<Quat<T>> for &'a Quat<T> {
            type Output = Quat<T>;
            fn $method(self, rhs: Quat<T>) -> Quat<T> {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for Quat<T> {
    type Output = Quat<T>;
    fn neg(self) -> Quat<T> {
        -&self
    }
}

impl<T: Scalar> AddAssign<&Quat<T>> for Quat<T> {
    fn add_assign(&mut self, rhs: &Quat<T>) {
        *self = &*self + rhs;
    }
}

impl<T: Scalar> SubAssign<&Quat<T>> for Quat<T> {
    fn sub_assign(&mut self, rhs: &Quat<T>) {
        *self = &*self - rhs;
    }
}

impl<T: Scalar> Zero for Quat<T> {
    fn zero() -> Self {
        Quat::real(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.is_real()
    }
}

impl<T: Scalar> One for Quat<T> {
    fn one() -> Self {
        Quat::real(T::one())
    }
}

impl<T: Scalar> Sum for Quat<T> {
    fn sum<I: Iterator<Item = Quat<T>>>(iter: I) -> Self {
        iter.fold(Quat::zero(), |acc, q| &acc + &q)
    }
}

impl<'a, T: Scalar> Sum<&'a Quat<T>> for Quat<T> {
    fn sum<I: Iterator<Item = &'a Quat<T>>>(iter: I) -> Self {
        iter.fold(Quat::zero(), |acc, q| &acc + q)
    }
}

impl Quat<f64> {
    /// Float quaternion with all components finite.
    pub fn finite(w: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        if [w, x, y, z].iter().all(|c| c.is_finite()) {
            Ok(Quat { w, x, y, z })
        } else {
            Err(Error::InvalidArgument(format!(
                "non-finite quaternion component in ({w}, {x}, {y}, {z})"
            )))
        }
    }
}

pub fn q_add<T: Scalar>(a: &Quat<T>, b: &Quat<T>) -> Quat<T> {
    a + b
}

/// Hamilton product `a·b`.
pub fn q_mul<T: Scalar>(a: &Quat<T>, b: &Quat<T>) -> Quat<T> {
    a * b
}

pub fn q_conj<T: Scalar>(a: &Quat<T>) -> Quat<T> {
    a.conj()
}

pub fn q_norm_sq<T: Scalar>(a: &Quat<T>) -> T {
    a.norm_sq()
}

/// `ā / |a|²`; fails on zero.
pub fn q_inv<T: Scalar>(a: &Quat<T>) -> Result<Quat<T>> {
    a.inv()
}

/// Writes `q` with decimal components, e.g. `0.1905+0.2619i+0.0714j-0.0714k`.
pub fn format_decimal<T: Scalar>(q: &Quat<T>, precision: usize) -> String {
    let f = q.to_f64();
    let mut out = String::new();
    for (value, unit) in [(f.w, ""), (f.x, "i"), (f.y, "j"), (f.z, "k")] {
        if value == 0.0 {
            continue;
        }
        if out.is_empty() {
            out.push_str(&format!("{value:.precision$}{unit}"));
        } else if value < 0.0 {
            out.push_str(&format!("-{:.precision$}{unit}", -value));
        } else {
            out.push_str(&format!("+{value:.precision$}{unit}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn write_rational(out: &mut String, r: &BigRational) {
    out.push_str(&r.numer().to_string());
    if !r.denom().is_one() {
        out.push('/');
        out.push_str(&r.denom().to_string());
    }
}

/// Canonical literal of an exact quaternion.
pub fn format_quaternion(q: &Quat<BigRational>) -> String {
    let mut out = String::new();
    for (value, unit) in q.components().into_iter().zip(["", "i", "j", "k"]) {
        if value.is_zero() {
            continue;
        }
        let magnitude = value.abs();
        if value.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if unit.is_empty() || !magnitude.is_one() {
            write_rational(&mut out, &magnitude);
        }
        out.push_str(unit);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Quat<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_quaternion(self))
    }
}

struct LiteralParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl LiteralParser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, message)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).ok()?;
        text.parse().ok()
    }

    /// Parses one term and returns `(component slot, magnitude)`.
    fn term(&mut self) -> Result<(usize, BigRational)> {
        let coefficient = match self.digits() {
            Some(numer) => {
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let denom = self
                        .digits()
                        .ok_or_else(|| self.err("expected a denominator after '/'"))?;
                    if denom.is_zero() {
                        return Err(Error::parse(1, self.pos, "zero denominator"));
                    }
                    Some(BigRational::new(numer, denom))
                } else {
                    Some(BigRational::from_integer(numer))
                }
            }
            None => None,
        };
        let slot = match self.peek() {
            Some(b'i') => Some(1),
            Some(b'j') => Some(2),
            Some(b'k') => Some(3),
            _ => None,
        };
        match (coefficient, slot) {
            (Some(c), Some(s)) => {
                self.pos += 1;
                Ok((s, c))
            }
            (None, Some(s)) => {
                self.pos += 1;
                Ok((s, BigRational::one()))
            }
            (Some(c), None) => Ok((0, c)),
            (None, None) => Err(self.err(match self.peek() {
                Some(c) => format!("unexpected character '{}'", c as char),
                None => "unexpected end of literal".to_string(),
            })),
        }
    }
}

/// Parses a quaternion literal; errors carry the 1-based column.
pub fn parse_quaternion(text: &str) -> Result<Quat<BigRational>> {
    let mut p = LiteralParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    if text.is_empty() {
        return Err(p.err("empty quaternion literal"));
    }
    let mut parts: [Option<BigRational>; 4] = [None, None, None, None];
    let mut negative = false;
    if p.peek() == Some(b'-') {
        negative = true;
        p.pos += 1;
    }
    loop {
        let start = p.pos;
        let (slot, magnitude) = p.term()?;
        if parts[slot].is_some() {
            return Err(Error::parse(1, start + 1, "component given more than once"));
        }
        parts[slot] = Some(if negative { -magnitude } else { magnitude });
        match p.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(c) => return Err(p.err(format!("unexpected character '{}'", c as char))),
        }
        p.pos += 1;
    }
    let [w, x, y, z] = parts.map(|c| c.unwrap_or_else(BigRational::zero));
    Ok(Quat { w, x, y, z })
}

impl FromStr for Quat<BigRational> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_quaternion(s)
    }
}
