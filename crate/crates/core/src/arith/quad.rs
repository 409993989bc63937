use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{format_rational, Rational};

/// An element `a + b·√2` of Q(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl QuadSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self { a, b: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::new(1.into(), 2.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a - b√2`.
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² - 2b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Self::new(c.a / &n, c.b / &n))
    }

    /// Sign of the real number `a + b√2`, decided exactly.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² with 2b²
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2 = Rational::from_integer(2.into()) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.a * r, &self.b * r)
    }
}

impl Add for &QuadSqrt2 {
    type Output = QuadSqrt2;
    fn add(self, rhs: &QuadSqrt2) -> QuadSqrt2 {
        QuadSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadSqrt2 {
    type Output = QuadSqrt2;
    fn sub(self, rhs: &QuadSqrt2) -> QuadSqrt2 {
        QuadSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &QuadSqrt2 {
    type Output = QuadSqrt2;
    fn mul(self, rhs: &QuadSqrt2) -> QuadSqrt2 {
        let two = Rational::from_integer(2.into());
        QuadSqrt2::new(&self.a * &rhs.a + two * &self.b * &rhs.b, &self.a * &rhs.b + &self.b * &rhs.a)
    }
}

impl Neg for &QuadSqrt2 {
    type Output = QuadSqrt2;
    fn neg(self) -> QuadSqrt2 {
        QuadSqrt2::new(-self.a.clone(), -self.b.clone())
    }
}

impl Add for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn add(self, rhs: QuadSqrt2) -> QuadSqrt2 {
        &self + &rhs
    }
}

impl Sub for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn sub(self, rhs: QuadSqrt2) -> QuadSqrt2 {
        &self - &rhs
    }
}

impl Mul for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn mul(self, rhs: QuadSqrt2) -> QuadSqrt2 {
        &self * &rhs
    }
}

impl Neg for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn neg(self) -> QuadSqrt2 {
        -&self
    }
}

impl fmt::Display for QuadSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.a)),
            (true, false) => write!(f, "{}*r2", format_rational(&self.b)),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*r2", format_rational(&self.a), sign, format_rational(&self.b.abs()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(a: (i64, i64), b: (i64, i64)) -> QuadSqrt2 {
        QuadSqrt2::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn product_rule() {
        let x = q((1, 1), (2, 1));
        let y = q((3, 1), (-1, 1));
        // (1+2√2)(3-√2) = 3 - 4 + (-1 + 6)√2
        assert_eq!(&x * &y, q((-1, 1), (5, 1)));
    }

    #[test]
    fn inv_sqrt2_squares_to_half() {
        let s = QuadSqrt2::inv_sqrt2();
        assert_eq!(&s * &s, q((1, 2), (0, 1)));
    }

    #[test]
    fn signum_exact() {
        assert_eq!(q((3, 2), (-1, 1)).signum(), Ordering::Greater);
        assert_eq!(q((-3, 2), (1, 1)).signum(), Ordering::Less);
        assert_eq!(q((1, 1), (-1, 1)).signum(), Ordering::Less);
        assert_eq!(q((0, 1), (0, 1)).signum(), Ordering::Equal);
    }

    #[test]
    fn inverse() {
        let x = q((1, 1), (1, 1));
        assert_eq!(&x * &x.inv().unwrap(), QuadSqrt2::one());
        assert!(QuadSqrt2::zero().inv().is_none());
    }
}
