//! Quaternions over Q(√2), the binary octahedral group as six cosets of the
//! quaternion group `V0`, and the order-192 group of pairs `[p, q]` acting on
//! quaternions by `h → p h q`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::{Mul, Neg};

use num_traits::Zero;
use thiserror::Error;

use crate::arith::{QuadSqrt2, Rational};
use crate::signed_perm::SignedPerm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuaternionError {
    #[error("pair [{0}] does not map imaginary octonion units to ±units")]
    NotMonomial(String),
}

/// `c[0] + c[1] e1 + c[2] e2 + c[3] e3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub c: [QuadSqrt2; 4],
}

impl Quaternion {
    pub fn new(c: [QuadSqrt2; 4]) -> Self {
        Self { c }
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| QuadSqrt2::zero()))
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// `1, e1, e2, e3` for `i = 0..3`.
    pub fn basis(i: usize) -> Self {
        let mut q = Self::zero();
        q.c[i] = QuadSqrt2::one();
        q
    }

    /// Integer coefficients scaled by `s`.
    pub fn scaled(ints: [i64; 4], s: &QuadSqrt2) -> Self {
        Self::new(ints.map(|k| s.scale(&Rational::from_integer(k.into()))))
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.c;
        Self::new([a.clone(), -b, -c, -d])
    }

    /// `|q|²`.
    pub fn norm(&self) -> QuadSqrt2 {
        self.c.iter().fold(QuadSqrt2::zero(), |acc, x| acc + x * x)
    }

    /// `(sign, i)` when `self = ±basis(i)`.
    pub fn as_signed_unit(&self) -> Option<(i8, usize)> {
        let nz: Vec<usize> = (0..4).filter(|&i| !self.c[i].is_zero()).collect();
        let [i] = nz[..] else { return None };
        let v = &self.c[i];
        if *v == QuadSqrt2::one() {
            Some((1, i))
        } else if *v == -QuadSqrt2::one() {
            Some((-1, i))
        } else {
            None
        }
    }

    /// Sign of the first nonzero coordinate.
    fn leading_sign(&self) -> Ordering {
        self.c.iter().map(QuadSqrt2::signum).find(|s| *s != Ordering::Equal).unwrap_or(Ordering::Equal)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &rhs.c;
        Quaternion::new([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        &self * &rhs
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(self.c.clone().map(|x| -x))
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "e1", "e2", "e3"];
        let mut first = true;
        for (x, name) in self.c.iter().zip(names) {
            if x.is_zero() {
                continue;
            }
            let coeff = if x.b.is_zero() { x.to_string() } else { format!("({x})") };
            let term = match (coeff.as_str(), name) {
                (c, "") => c.to_string(),
                ("1", n) => n.to_string(),
                ("-1", n) => format!("-{n}"),
                (c, n) => format!("{c}*{n}"),
            };
            if first {
                write!(f, "{term}")?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosetLabel {
    V0,
    VPlus,
    VMinus,
    V1,
    V2,
    V3,
}

impl CosetLabel {
    pub const ALL: [CosetLabel; 6] = [Self::V0, Self::VPlus, Self::VMinus, Self::V1, Self::V2, Self::V3];

    pub fn name(self) -> &'static str {
        match self {
            Self::V0 => "V0",
            Self::VPlus => "V+",
            Self::VMinus => "V-",
            Self::V1 => "V1",
            Self::V2 => "V2",
            Self::V3 => "V3",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

use CosetLabel::{VMinus as Vm, VPlus as Vp, V0, V1, V2, V3};

/// Coset of a product, indexed by the cosets of the factors.
pub const COSET_TABLE: [[CosetLabel; 6]; 6] = [
    [V0, Vp, Vm, V1, V2, V3],
    [Vp, Vm, V0, V3, V1, V2],
    [Vm, V0, Vp, V2, V3, V1],
    [V1, V2, V3, V0, Vp, Vm],
    [V2, V3, V1, Vm, V0, Vp],
    [V3, V1, V2, Vp, Vm, V0],
];

/// Coset of `a·b` for `a ∈ s`, `b ∈ t`.
pub fn coset_product(s: CosetLabel, t: CosetLabel) -> CosetLabel {
    COSET_TABLE[s.index()][t.index()]
}

/// The coset of `V0` in the binary octahedral group containing `q`.
pub fn coset_of(q: &Quaternion) -> Option<CosetLabel> {
    let half = QuadSqrt2::from_rational(Rational::new(1.into(), 2.into()));
    let r = QuadSqrt2::inv_sqrt2();
    let nz: Vec<usize> = (0..4).filter(|&i| !q.c[i].is_zero()).collect();
    let magnitude_is = |m: &QuadSqrt2| nz.iter().all(|&i| q.c[i] == *m || q.c[i] == -m);
    match nz.len() {
        1 if magnitude_is(&QuadSqrt2::one()) => Some(V0),
        4 if magnitude_is(&half) => {
            let plus = q.c.iter().filter(|x| x.signum() == Ordering::Greater).count();
            Some(if plus % 2 == 0 { Vp } else { Vm })
        }
        2 if magnitude_is(&r) => match (nz[0], nz[1]) {
            (0, 1) | (2, 3) => Some(V1),
            (0, 2) | (1, 3) => Some(V2),
            (0, 3) | (1, 2) => Some(V3),
            _ => None,
        },
        _ => None,
    }
}

/// The 48 elements of the binary octahedral group with their cosets, listed
/// coset by coset straight from the defining sign patterns.
pub fn binary_octahedral() -> Vec<(Quaternion, CosetLabel)> {
    let one = QuadSqrt2::one();
    let half = QuadSqrt2::from_rational(Rational::new(1.into(), 2.into()));
    let r = QuadSqrt2::inv_sqrt2();
    let mut out = Vec::with_capacity(48);
    for i in 0..4 {
        for s in [1, -1] {
            let mut v = [0; 4];
            v[i] = s;
            out.push((Quaternion::scaled(v, &one), V0));
        }
    }
    for label in [Vp, Vm] {
        for bits in 0..16u32 {
            let v: [i64; 4] = std::array::from_fn(|i| if bits >> i & 1 == 0 { 1 } else { -1 });
            let plus = v.iter().filter(|&&x| x > 0).count();
            if (plus % 2 == 0) == (label == Vp) {
                out.push((Quaternion::scaled(v, &half), label));
            }
        }
    }
    for (label, pairs) in [(V1, [(0, 1), (2, 3)]), (V2, [(0, 2), (3, 1)]), (V3, [(0, 3), (1, 2)])] {
        for (i, j) in pairs {
            for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = [0; 4];
                v[i] = s;
                v[j] = t;
                out.push((Quaternion::scaled(v, &r), label));
            }
        }
    }
    out
}

/// The rotation `h → p h q`, identified with `[-p, -q]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionPair {
    p: Quaternion,
    q: Quaternion,
}

impl QuaternionPair {
    /// Canonical form: the first nonzero coordinate of `p` is positive.
    pub fn new(p: Quaternion, q: Quaternion) -> Self {
        if p.leading_sign() == Ordering::Less {
            Self { p: -p, q: -q }
        } else {
            Self { p, q }
        }
    }

    pub fn p(&self) -> &Quaternion {
        &self.p
    }

    pub fn q(&self) -> &Quaternion {
        &self.q
    }

    pub fn identity() -> Self {
        Self::new(Quaternion::one(), Quaternion::one())
    }

    pub fn apply(&self, h: &Quaternion) -> Quaternion {
        &(&self.p * h) * &self.q
    }

    /// `self` then `other`: `[p, q]·[p', q'] = [p'p, qq']`.
    pub fn then(&self, other: &Self) -> Self {
        Self::new(&other.p * &self.p, &self.q * &other.q)
    }
}

impl fmt::Display for QuaternionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.p, self.q)
    }
}

/// The 192 pairs `[V0,V0] ∪ [V+,V-] ∪ [V-,V+] ∪ [V1,V1] ∪ [V2,V2] ∪ [V3,V3]`,
/// deduplicated under `[p,q] = [-p,-q]`.
pub fn pair_group() -> Vec<QuaternionPair> {
    let elems = binary_octahedral();
    let coset = |l: CosetLabel| elems.iter().filter(move |(_, c)| *c == l).map(|(x, _)| x);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(192);
    for (s, t) in [(V0, V0), (Vp, Vm), (Vm, Vp), (V1, V1), (V2, V2), (V3, V3)] {
        for p in coset(s) {
            for q in coset(t) {
                let pair = QuaternionPair::new(p.clone(), q.clone());
                if seen.insert(pair.clone()) {
                    out.push(pair);
                }
            }
        }
    }
    out
}

/// Octonion indices of the 4-block, matching the quaternion units `1, e1, e2, e3`.
pub const FOUR_BLOCK: [usize; 4] = [7, 4, 5, 6];

/// The degree-7 signed permutation of `[p, q]`: `e_i → p e_i p̄` for
/// `i = 1, 2, 3` and `e7·u → e7·(p u q)` on the block `(e7, e4, e5, e6)`.
pub fn pair_to_signedperm7(g: &QuaternionPair) -> Result<SignedPerm, QuaternionError> {
    let bad = || QuaternionError::NotMonomial(g.to_string());
    let mut image = [0usize; 7];
    let mut signs = [1i8; 7];
    let pbar = g.p.conj();
    for i in 1..=3 {
        let w = &(&g.p * &Quaternion::basis(i)) * &pbar;
        let (s, j) = w.as_signed_unit().filter(|&(_, j)| j != 0).ok_or_else(bad)?;
        image[i - 1] = j - 1;
        signs[i - 1] = s;
    }
    for (u, &oct) in FOUR_BLOCK.iter().enumerate() {
        let w = g.apply(&Quaternion::basis(u));
        let (s, j) = w.as_signed_unit().ok_or_else(bad)?;
        image[oct - 1] = FOUR_BLOCK[j] - 1;
        signs[oct - 1] = s;
    }
    SignedPerm::from_parts(&image, &signs).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(ints: [i64; 4]) -> Quaternion {
        Quaternion::scaled(ints, &QuadSqrt2::one())
    }

    #[test]
    fn units() {
        assert_eq!(&Quaternion::basis(1) * &Quaternion::basis(2), Quaternion::basis(3));
        assert_eq!(&Quaternion::basis(2) * &Quaternion::basis(1), -Quaternion::basis(3));
        assert_eq!(&Quaternion::basis(1) * &Quaternion::basis(1), -Quaternion::one());
        assert_eq!(Quaternion::basis(2).conj(), -Quaternion::basis(2));
    }

    #[test]
    fn v1_element_has_order_eight() {
        let x = Quaternion::scaled([1, 1, 0, 0], &QuadSqrt2::inv_sqrt2());
        let mut acc = Quaternion::one();
        for k in 1..=8 {
            acc = &acc * &x;
            assert_eq!(acc == Quaternion::one(), k == 8);
        }
        assert_eq!(x.norm(), QuadSqrt2::one());
    }

    #[test]
    fn cosets() {
        let half = QuadSqrt2::from_rational(Rational::new(1.into(), 2.into()));
        assert_eq!(coset_of(&Quaternion::scaled([1, 1, 1, 1], &half)), Some(Vp));
        assert_eq!(coset_of(&Quaternion::scaled([0, 0, 1, 1], &QuadSqrt2::inv_sqrt2())), Some(V1));
        assert_eq!(coset_of(&q([1, 1, 0, 0])), None);
        let all = binary_octahedral();
        assert_eq!(all.len(), 48);
        for l in CosetLabel::ALL {
            assert_eq!(all.iter().filter(|(_, c)| *c == l).count(), 8);
        }
        assert!(all.iter().all(|(x, l)| coset_of(x) == Some(*l)));
        assert_eq!(coset_product(Vp, Vp), Vm);
        assert_eq!(coset_product(V0, V2), V2);
        assert_eq!(coset_product(V1, V2), Vp);
    }

    #[test]
    fn pair_canonical_sign_and_display() {
        let a = QuaternionPair::new(-Quaternion::basis(1), -Quaternion::one());
        assert_eq!(a, QuaternionPair::new(Quaternion::basis(1), Quaternion::one()));
        assert_eq!(a.to_string(), "e1, 1");
    }

    #[test]
    fn pair_images() {
        let id = pair_to_signedperm7(&QuaternionPair::identity()).unwrap();
        assert!(id.is_identity());
        let n1 = pair_to_signedperm7(&QuaternionPair::new(Quaternion::one(), -Quaternion::one())).unwrap();
        assert_eq!(n1, SignedPerm::diagonal(&[1, 1, 1, -1, -1, -1, -1]));
        let off = QuaternionPair::new(q([1, 1, 0, 0]), Quaternion::one());
        assert!(pair_to_signedperm7(&off).is_err());
    }
}
