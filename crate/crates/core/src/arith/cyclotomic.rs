//! Elements of cyclotomic fields.
//!
//! Canonical form: an element is stored over its *minimal* conductor `N`
//! (never ≡ 2 mod 4, since Q(ζ_2m) = Q(ζ_m) for odd m) as its coordinates in
//! the power basis `1, ζ_N, …, ζ_N^(φ(N)-1)`, i.e. as the remainder of a
//! polynomial in `ζ_N` modulo the cyclotomic polynomial `Φ_N`. The remainder
//! is unique and the minimal conductor is unique, so two values are equal as
//! field elements exactly when their stored forms are identical.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse cyclotomic {input:?}: {reason}")]
pub struct ParseCyclotomicError {
    pub input: String,
    pub reason: String,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `ζ_n^k`. Panics if `n == 0`.
    pub fn root(k: i64, n: u32) -> Self {
        assert!(n >= 1, "root of unity needs n >= 1");
        let mut dense = vec![Rational::zero(); n as usize];
        dense[k.rem_euclid(n as i64) as usize] = Rational::one();
        Self::from_dense(n, dense)
    }

    /// Builds `Σ coeffs[k]·ζ_n^k` from an arbitrary exponent map.
    pub fn from_exponents<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(n >= 1, "conductor must be positive");
        let mut dense = vec![Rational::zero(); n as usize];
        for (k, c) in terms {
            dense[k.rem_euclid(n as i64) as usize] += c;
        }
        Self::from_dense(n, dense)
    }

    /// Minimal conductor of the element.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates over the minimal conductor.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Galois automorphism `ζ → ζ^k`; `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor as i64;
        assert!(k.gcd(&n) == 1, "galois exponent {k} not coprime to conductor {n}");
        if n == 1 {
            return self.clone();
        }
        let mut dense = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[((j as i64) * k).rem_euclid(n) as usize] += c;
            }
        }
        // conductor is Galois-invariant, so only the remainder is needed
        Self { conductor: self.conductor, coeffs: reduce_mod_phi(self.conductor, dense) }
    }

    /// Complex conjugation `ζ → ζ^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Uses `x⁻¹ = (Π_{σ≠1} σ(x)) / N(x)` where `N` is the field norm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::from_rational(r.recip()));
        }
        let n = self.conductor as i64;
        let mut others = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others).to_rational().expect("field norm is rational");
        Some(others.scale(&norm.recip()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Dense exponent vector of length `m` (a multiple of the conductor).
    fn lift(&self, m: u32) -> Vec<Rational> {
        let step = (m / self.conductor) as usize;
        let mut dense = vec![Rational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            dense[j * step] = c.clone();
        }
        dense
    }

    fn from_dense(n: u32, dense: Vec<Rational>) -> Self {
        let reduced = reduce_mod_phi(n, dense);
        canonicalize(n, reduced)
    }
}

/// Reduces a polynomial in `ζ_n` (any length) modulo `Φ_n`.
fn reduce_mod_phi(n: u32, mut dense: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    // fold exponents ≥ n using ζ^n = 1
    if dense.len() > n as usize {
        let tail = dense.split_off(n as usize);
        for (j, c) in tail.into_iter().enumerate() {
            let idx = j % n as usize;
            dense[idx] += c;
        }
    }
    for top in (deg..dense.len()).rev() {
        let c = std::mem::replace(&mut dense[top], Rational::zero());
        if c.is_zero() {
            continue;
        }
        // monic Φ: x^deg = -Σ_{i<deg} phi[i] x^i
        let shift = top - deg;
        for (i, &p) in phi[..deg].iter().enumerate() {
            if p != 0 {
                dense[shift + i] -= &c * Rational::from_integer(p.into());
            }
        }
    }
    dense.truncate(deg);
    dense.resize(deg, Rational::zero());
    dense
}

/// Moves a reduced element of Q(ζ_n) to its minimal conductor.
fn canonicalize(n: u32, x: Vec<Rational>) -> Cyclotomic {
    if n == 1 || x[1..].iter().all(Zero::is_zero) {
        return Cyclotomic::from_rational(x[0].clone());
    }
    for d in divisors(n) {
        if d == 1 || d == n || d % 4 == 2 {
            continue;
        }
        if let Some(c) = descent(n, d).try_descend(&x) {
            return Cyclotomic { conductor: d, coeffs: c };
        }
    }
    // for n ≡ 2 (mod 4) the odd divisor n/2 always succeeds above
    debug_assert!(n % 4 != 2);
    Cyclotomic { conductor: n, coeffs: x }
}

/// Embedding of Q(ζ_d) into Q(ζ_n) together with a left inverse on its image.
struct Descent {
    /// Columns: reduced images of ζ_d^j = ζ_n^{(n/d)j}, j < φ(d).
    embed: Vec<Vec<Rational>>,
    /// Row indices of an invertible φ(d)×φ(d) minor of the embedding.
    pivots: Vec<usize>,
    /// Inverse of that minor.
    minor_inv: Vec<Vec<Rational>>,
}

impl Descent {
    fn build(n: u32, d: u32) -> Self {
        let step = (n / d) as usize;
        let sub_dim = totient(d) as usize;
        let embed: Vec<Vec<Rational>> = (0..sub_dim)
            .map(|j| {
                let mut dense = vec![Rational::zero(); n as usize];
                dense[(j * step) % n as usize] = Rational::one();
                reduce_mod_phi(n, dense)
            })
            .collect();
        let full_dim = embed[0].len();
        // Gaussian elimination on the transposed embedding to pick pivot rows
        let mut pivots = Vec::with_capacity(sub_dim);
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for row in 0..full_dim {
            let mut v: Vec<Rational> = embed.iter().map(|col| col[row].clone()).collect();
            for (b, &p) in basis.iter().zip(lead_positions(&basis).iter()) {
                if !v[p].is_zero() {
                    let f = &v[p] / &b[p];
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= &f * bi;
                    }
                }
            }
            if v.iter().any(|c| !c.is_zero()) {
                basis.push(v);
                pivots.push(row);
                if pivots.len() == sub_dim {
                    break;
                }
            }
        }
        assert_eq!(pivots.len(), sub_dim, "embedding must have full rank");
        let minor: Vec<Vec<Rational>> =
            pivots.iter().map(|&r| embed.iter().map(|col| col[r].clone()).collect()).collect();
        let minor_inv = invert(minor).expect("pivot minor is invertible");
        Self { embed, pivots, minor_inv }
    }

    fn try_descend(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let rhs: Vec<&Rational> = self.pivots.iter().map(|&r| &x[r]).collect();
        let c: Vec<Rational> =
            self.minor_inv.iter().map(|row| row.iter().zip(&rhs).map(|(a, b)| a * *b).sum()).collect();
        for (i, xi) in x.iter().enumerate() {
            let yi: Rational =
                self.embed.iter().zip(&c).filter(|(_, cj)| !cj.is_zero()).map(|(col, cj)| &col[i] * cj).sum();
            if &yi != xi {
                return None;
            }
        }
        Some(c)
    }
}

fn lead_positions(basis: &[Vec<Rational>]) -> Vec<usize> {
    basis.iter().map(|b| b.iter().position(|c| !c.is_zero()).unwrap()).collect()
}

fn invert(mut m: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] = &m[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let a = &f * &m[col][j];
                    m[r][j] -= a;
                    let b = &f * &inv[col][j];
                    inv[r][j] -= b;
                }
            }
        }
    }
    Some(inv)
}

fn descent(n: u32, d: u32) -> Arc<Descent> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Descent>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(n, d)) {
        return hit.clone();
    }
    let built = Arc::new(Descent::build(n, d));
    cache.lock().unwrap().entry((n, d)).or_insert(built).clone()
}

/// Coefficients of `Φ_n`, lowest degree first.
pub(crate) fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            p = exact_div(&p, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().entry(n).or_insert(p).clone()
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd]; // den is monic
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub(crate) fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            let coeffs: Vec<Rational> = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return canonicalize(self.conductor, coeffs);
        }
        let m = lcm(self.conductor, rhs.conductor);
        let mut dense = self.lift(m);
        for (d, c) in dense.iter_mut().zip(rhs.lift(m)) {
            *d += c;
        }
        Cyclotomic::from_dense(m, dense)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        let m = lcm(self.conductor, rhs.conductor) as usize;
        let sa = m / self.conductor as usize;
        let sb = m / rhs.conductor as usize;
        let mut dense = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[(i * sa + j * sb) % m] += a * b;
                }
            }
        }
        Cyclotomic::from_dense(m as u32, dense)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic { (&self).$f(&rhs) }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: &Cyclotomic) -> Cyclotomic { (&self).$f(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + x)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for Cyclotomic {
    /// Ascending exponents, e.g. `-1/2 + z3` or `z7 + z7^2 + z7^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = if k == 0 {
                format_rational(&mag)
            } else {
                let atom = if k == 1 { format!("z{}", self.conductor) } else { format!("z{}^{}", self.conductor, k) };
                if mag.is_one() {
                    atom
                } else {
                    format!("{}*{}", format_rational(&mag), atom)
                }
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for Cyclotomic {
    type Err = ParseCyclotomicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseCyclotomicError { input: s.to_string(), reason: reason.into() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty expression"));
        }
        // split into signed terms; signs only occur at term boundaries
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut neg = false;
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if i == 0 {
                    neg = ch == '-';
                    continue;
                }
                if cur.is_empty() {
                    return Err(err("dangling sign"));
                }
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err("trailing sign"));
        }
        terms.push((neg, cur));

        let mut acc = Cyclotomic::zero();
        for (neg, body) in terms {
            let (coef, atom) = match body.find('z') {
                None => (body.as_str(), None),
                Some(pos) => {
                    let (head, atom) = body.split_at(pos);
                    let head = if head.is_empty() {
                        "1"
                    } else {
                        head.strip_suffix('*').ok_or_else(|| err("expected '*' before atom"))?
                    };
                    (head, Some(atom))
                }
            };
            let mut c = parse_rational(coef).ok_or_else(|| err("bad rational coefficient"))?;
            if neg {
                c = -c;
            }
            let value = match atom {
                None => Cyclotomic::from_rational(c),
                Some(atom) => {
                    let atom = &atom[1..];
                    let (n, k) = match atom.split_once('^') {
                        Some((n, k)) => (n, k),
                        None => (atom, "1"),
                    };
                    let n: u32 = n.parse().map_err(|_| err("bad root order"))?;
                    let k: i64 = k.parse().map_err(|_| err("bad exponent"))?;
                    if n == 0 {
                        return Err(err("root order must be positive"));
                    }
                    Cyclotomic::root(k, n).scale(&c)
                }
            };
            acc = &acc + &value;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn mu() -> Cyclotomic {
        Cyclotomic::root(1, 3)
    }

    fn eta() -> Cyclotomic {
        &(&Cyclotomic::root(1, 7) + &Cyclotomic::root(2, 7)) + &Cyclotomic::root(4, 7)
    }

    #[test]
    fn roots_and_identity() {
        assert_eq!(Cyclotomic::root(0, 7), Cyclotomic::one());
        assert_eq!(Cyclotomic::root(1, 2), Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::root(7, 7), Cyclotomic::one());
        assert_eq!(Cyclotomic::root(1, 4).pow(2), Cyclotomic::from_int(-1));
    }

    #[test]
    fn mu_and_eta_relations() {
        assert_eq!(&mu() + &mu().conj(), Cyclotomic::from_int(-1));
        assert_eq!(&mu() * &mu(), mu().conj());
        assert_eq!(&eta() * &eta().conj(), Cyclotomic::from_int(2));
        assert_eq!(&eta() + &eta().conj(), Cyclotomic::from_int(-1));
    }

    #[test]
    fn rescaled_roots_collapse() {
        // ζ_6 = -ζ_3^2 and ζ_42^6 = ζ_7
        assert_eq!(Cyclotomic::root(1, 6), -Cyclotomic::root(2, 3));
        assert_eq!(Cyclotomic::root(6, 42), Cyclotomic::root(1, 7));
        assert_eq!(Cyclotomic::root(1, 6).conductor(), 3);
        assert_eq!(Cyclotomic::root(3, 12), Cyclotomic::root(1, 4));
        let sum = &Cyclotomic::root(1, 3) + &Cyclotomic::root(2, 3);
        assert_eq!(sum, Cyclotomic::from_int(-1));
        assert!(sum.is_rational());
    }

    #[test]
    fn sqrt2_lives_at_conductor_8() {
        let r2 = &Cyclotomic::root(1, 8) - &Cyclotomic::root(3, 8);
        assert_eq!(&r2 * &r2, Cyclotomic::from_int(2));
        assert_eq!(r2.conductor(), 8);
    }

    #[test]
    fn rendering() {
        assert_eq!(Cyclotomic::one().to_string(), "1");
        assert_eq!(Cyclotomic::zero().to_string(), "0");
        assert_eq!(Cyclotomic::root(1, 3).to_string(), "z3");
        assert_eq!(eta().to_string(), "z7 + z7^2 + z7^4");
        assert_eq!(eta().conj().to_string(), "-1 - z7 - z7^2 - z7^4");
        assert_eq!(Cyclotomic::from_rational(rat(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn parse_round_trip() {
        for x in [eta(), eta().conj(), mu(), -mu().scale(&rat(5, 3)), Cyclotomic::zero()] {
            let s = x.to_string();
            assert_eq!(s.parse::<Cyclotomic>().unwrap(), x, "{s}");
        }
        let half: Cyclotomic = "1/2*z3 - 1/2*z3^2".parse().unwrap();
        assert_eq!(half, &mu().scale(&rat(1, 2)) - &mu().conj().scale(&rat(1, 2)));
        assert!("z0".parse::<Cyclotomic>().is_err());
        assert!("1 +".parse::<Cyclotomic>().is_err());
        assert!("2z3".parse::<Cyclotomic>().is_err());
    }

    #[test]
    fn inverse() {
        let x = &eta() + &Cyclotomic::from_int(3);
        assert_eq!(&x * &x.inv().unwrap(), Cyclotomic::one());
        assert!(Cyclotomic::zero().inv().is_none());
        assert_eq!(Cyclotomic::from_int(4).inv().unwrap(), Cyclotomic::from_rational(rat(1, 4)));
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(168).len() - 1, 48);
        assert_eq!(totient(168), 48);
        let _ = int(0);
    }
}
