//! Rational octonions over the basis `{1, e1, …, e7}`.
//!
//! The imaginary units multiply as `e_i e_j = -δ_ij + Σ_k φ_ijk e_k`, where
//! `φ` is completely antisymmetric and equals `+1` on the cyclic rotations of
//! the seven lines
//! `123, 246, 435, 367, 651, 572, 714`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{format_rational, parse_rational, Rational};
use crate::signed_perm::SignedPerm;

/// The seven associative lines, each listed in its positive cyclic order.
pub const FANO_LINES: [[usize; 3]; 7] = [[1, 2, 3], [2, 4, 6], [4, 3, 5], [3, 6, 7], [6, 5, 1], [5, 7, 2], [7, 1, 4]];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OctonionError {
    #[error("triad indices must be distinct and in 1..=7, got ({0}, {1}, {2})")]
    BadTriad(usize, usize, usize),
    #[error("cannot parse octonion {0:?}")]
    Parse(String),
}

/// Completely antisymmetric `φ_ijk`, indices `1..=7` (index 0 unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    phi: [[[i8; 8]; 8]; 8],
}

impl StructureConstants {
    fn generate() -> Self {
        let mut phi = [[[0i8; 8]; 8]; 8];
        for [a, b, c] in FANO_LINES {
            for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
                phi[i][j][k] = 1;
                phi[j][i][k] = -1;
            }
        }
        Self { phi }
    }

    pub fn get() -> &'static Self {
        static PHI: OnceLock<StructureConstants> = OnceLock::new();
        PHI.get_or_init(Self::generate)
    }

    pub fn phi(&self, i: usize, j: usize, k: usize) -> i8 {
        self.phi[i][j][k]
    }

    /// Product of basis elements (0 is the unit): `(sign, index)`.
    pub fn basis_mul(&self, i: usize, j: usize) -> (i8, usize) {
        match (i, j) {
            (0, j) => (1, j),
            (i, 0) => (1, i),
            (i, j) if i == j => (-1, 0),
            (i, j) => (1..=7)
                .find_map(|k| {
                    let s = self.phi[i][j][k];
                    (s != 0).then_some((s, k))
                })
                .expect("every pair of distinct units lies on one line"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriadType {
    Associative,
    AntiAssociative,
}

/// Classifies the triad `{e_i, e_j, e_k}`.
pub fn triad_type(i: usize, j: usize, k: usize) -> Result<TriadType, OctonionError> {
    let ok = |x: usize| (1..=7).contains(&x);
    if !(ok(i) && ok(j) && ok(k)) || i == j || j == k || i == k {
        return Err(OctonionError::BadTriad(i, j, k));
    }
    Ok(if StructureConstants::get().phi(i, j, k) != 0 { TriadType::Associative } else { TriadType::AntiAssociative })
}

/// Whether the signed permutation `e_i → s_i e_{π(i)}` (fixing 1) preserves
/// the octonion product on all pairs of imaginary units.
pub fn is_algebra_automorphism(g: &SignedPerm) -> bool {
    if g.degree() != 7 {
        return false;
    }
    let sc = StructureConstants::get();
    let act = |i: usize| -> (i8, usize) {
        let (s, t) = g.apply(i - 1);
        (s, t + 1)
    };
    for i in 1..=7 {
        let (si, pi) = act(i);
        for j in 1..=7 {
            let (sj, pj) = act(j);
            let (s_lhs, k_lhs) = sc.basis_mul(pi, pj);
            let lhs = (si * sj * s_lhs, k_lhs);
            let (s_ij, k_ij) = sc.basis_mul(i, j);
            let rhs = if k_ij == 0 {
                (s_ij, 0)
            } else {
                let (sk, pk) = act(k_ij);
                (s_ij * sk, pk)
            };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion {
    coeffs: [Rational; 8],
}

impl Octonion {
    pub fn new(coeffs: [Rational; 8]) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        Self { coeffs: c.map(|x| Rational::from_integer(x.into())) }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 8])
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// `1` for index 0, `e_i` for `i` in `1..=7`.
    pub fn basis(i: usize) -> Self {
        let mut c = [0; 8];
        c[i] = 1;
        Self::from_ints(c)
    }

    pub fn coeffs(&self) -> &[Rational; 8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        let mut c = self.coeffs.clone();
        for x in c.iter_mut().skip(1) {
            *x = -x.clone();
        }
        Self { coeffs: c }
    }

    /// `Σ q_i²`.
    pub fn norm(&self) -> Rational {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { coeffs: self.coeffs.clone().map(|c| c * r) }
    }
}

/// `(a·b)·c − a·(b·c)`.
pub fn associator(a: &Octonion, b: &Octonion, c: &Octonion) -> Octonion {
    &(&(a * b) * c) - &(a * &(b * c))
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        let sc = StructureConstants::get();
        let mut out: [Rational; 8] = Default::default();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = sc.basis_mul(i, j);
                let p = a * b;
                if s > 0 {
                    out[k] += p;
                } else {
                    out[k] -= p;
                }
            }
        }
        Octonion { coeffs: out }
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, rhs: &Octonion) -> Octonion {
        let mut c = self.coeffs.clone();
        for (x, y) in c.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
        Octonion { coeffs: c }
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &Octonion) -> Octonion {
        self + &(-rhs)
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion { coeffs: self.coeffs.clone().map(|c| -c) }
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        &self * &rhs
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => format_rational(&mag),
                (_, true) => format!("e{i}"),
                (_, false) => format!("{}*e{i}", format_rational(&mag)),
            };
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for Octonion {
    type Err = OctonionError;

    /// Sums of terms like `e3`, `-e5`, `1/2*e1`, `2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OctonionError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Octonion::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let neg = rest.starts_with('-');
            if neg || rest.starts_with('+') {
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, idx) = match term.find('e') {
                None => (parse_rational(term).ok_or_else(bad)?, 0usize),
                Some(p) => {
                    let head = &term[..p];
                    let coef = if head.is_empty() {
                        Rational::one()
                    } else {
                        parse_rational(head.strip_suffix('*').ok_or_else(bad)?).ok_or_else(bad)?
                    };
                    let idx: usize = term[p + 1..].parse().map_err(|_| bad())?;
                    if !(1..=7).contains(&idx) {
                        return Err(bad());
                    }
                    (coef, idx)
                }
            };
            let coef = if neg { -coef } else { coef };
            out.coeffs[idx] += coef;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    #[test]
    fn basis_products() {
        assert_eq!(&e(1) * &e(2), e(3));
        assert_eq!(&e(5) * &e(5), -&Octonion::one());
        assert_eq!(&e(7) * &e(1), e(4));
        assert_eq!(&e(2) * &e(1), -&e(3));
    }

    #[test]
    fn phi_is_antisymmetric_with_seven_lines() {
        let sc = StructureConstants::get();
        let mut lines = 0;
        for i in 1..=7 {
            for j in 1..=7 {
                for k in 1..=7 {
                    let v = sc.phi(i, j, k);
                    assert_eq!(v, -sc.phi(j, i, k));
                    assert_eq!(v, -sc.phi(i, k, j));
                    assert_eq!(v, sc.phi(j, k, i));
                    if i < j && j < k && v != 0 {
                        lines += 1;
                    }
                }
            }
        }
        assert_eq!(lines, 7);
    }

    #[test]
    fn conjugate_and_norm() {
        assert_eq!(e(3).conj(), -&e(3));
        let x: Octonion = "1 + e1".parse().unwrap();
        assert_eq!(x.norm(), Rational::from_integer(2.into()));
        for i in 1..=7 {
            assert!(e(i).norm().is_one());
        }
    }

    #[test]
    fn associators() {
        assert!(associator(&e(1), &e(2), &e(3)).is_zero());
        assert_eq!(associator(&e(1), &e(2), &e(4)), e(5).scale(&Rational::from_integer((-2).into())));
    }

    #[test]
    fn triads() {
        assert_eq!(triad_type(2, 4, 6), Ok(TriadType::Associative));
        assert_eq!(triad_type(1, 2, 4), Ok(TriadType::AntiAssociative));
        assert!(triad_type(1, 1, 4).is_err());
        assert!(triad_type(0, 1, 4).is_err());
        let mut assoc = 0;
        let mut anti = 0;
        for i in 1..=7 {
            for j in i + 1..=7 {
                for k in j + 1..=7 {
                    match triad_type(i, j, k).unwrap() {
                        TriadType::Associative => assoc += 1,
                        TriadType::AntiAssociative => anti += 1,
                    }
                }
            }
        }
        assert_eq!((assoc, anti), (7, 28));
    }

    #[test]
    fn triad_classification_matches_associator() {
        for i in 1..=7 {
            for j in 1..=7 {
                for k in 1..=7 {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let vanishes = associator(&e(i), &e(j), &e(k)).is_zero();
                    let assoc = triad_type(i, j, k).unwrap() == TriadType::Associative;
                    assert_eq!(vanishes, assoc, "({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let x: Octonion = "1/2*e1 - e3 + 2".parse().unwrap();
        assert_eq!(x.to_string(), "2 + 1/2*e1 - e3");
        assert!("e8".parse::<Octonion>().is_err());
        assert!("e1 +".parse::<Octonion>().is_err());
        assert_eq!(Octonion::zero().to_string(), "0");
    }
}
