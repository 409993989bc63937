//! Monomial ±1 matrices stored as a permutation plus a sign vector.
//!
//! Points are 0-based internally and 1-based in the text notation
//! (`e1 … en`). An element maps basis vector `i` to `sign[i] · image[i]`.
//!
//! Composition is left to right: `g.compose(&h)` applies `g` first and then
//! `h`. In matrix form this is the row-vector convention, where row `i` of
//! `g.matrix()` holds `sign[i]` in column `image[i]` and
//! `(g.compose(&h)).matrix() == g.matrix() · h.matrix()`. Conjugation is
//! `x^g = g⁻¹ x g`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point e{0} out of range for degree {1}")]
    OutOfRange(usize, usize),
    #[error("inconsistent cycles: e{0} is mapped twice incompatibly")]
    Inconsistent(usize),
    #[error("cycles do not define a bijection (e{0} has two preimages)")]
    NotBijective(usize),
    #[error("malformed signed cycle notation: {0}")]
    Syntax(String),
}

/// A signed permutation of degree `n`.
///
/// The derived ordering compares the image array first and then the sign
/// bitmask; it is the canonical order used for element lists everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    image: Vec<u16>,
    /// Bit `i` set means basis vector `i` picks up a minus sign.
    neg: Vec<u64>,
}

fn mask_words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= u16::MAX as usize, "degree out of range");
        Self { image: (0..n as u16).collect(), neg: vec![0; mask_words(n)] }
    }

    /// Builds from a 0-based image array and ±1 signs.
    pub fn from_parts(image: &[usize], signs: &[i8]) -> Result<Self, PermError> {
        let n = image.len();
        if signs.len() != n {
            return Err(PermError::DegreeMismatch(n, signs.len()));
        }
        let mut seen = vec![false; n];
        for &t in image {
            if t >= n {
                return Err(PermError::OutOfRange(t + 1, n));
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(PermError::NotBijective(t + 1));
            }
        }
        let mut g = Self::identity(n);
        for (i, (&t, &s)) in image.iter().zip(signs).enumerate() {
            g.image[i] = t as u16;
            g.set_sign(i, s);
        }
        Ok(g)
    }

    /// Diagonal element with the given ±1 entries.
    pub fn diagonal(signs: &[i8]) -> Self {
        let n = signs.len();
        let image: Vec<usize> = (0..n).collect();
        Self::from_parts(&image, signs).expect("identity image is a bijection")
    }

    /// Unsigned permutation from a 0-based image array.
    pub fn permutation(image: &[usize]) -> Result<Self, PermError> {
        Self::from_parts(image, &vec![1; image.len()])
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of basis vector `i` as `(sign, index)`.
    #[inline]
    pub fn apply(&self, i: usize) -> (i8, usize) {
        (self.sign(i), self.image[i] as usize)
    }

    #[inline]
    pub fn sign(&self, i: usize) -> i8 {
        if self.neg[i / 64] >> (i % 64) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn image(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    fn set_sign(&mut self, i: usize, s: i8) {
        let bit = 1u64 << (i % 64);
        if s < 0 {
            self.neg[i / 64] |= bit;
        } else {
            self.neg[i / 64] &= !bit;
        }
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// `self` then `other`; panics on degree mismatch.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let mut out = Self::identity(self.degree());
        for i in 0..self.degree() {
            let (s1, t1) = self.apply(i);
            let (s2, t2) = other.apply(t1);
            out.image[i] = t2 as u16;
            out.set_sign(i, s1 * s2);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = Self::identity(self.degree());
        for i in 0..self.degree() {
            let (s, t) = self.apply(i);
            out.image[t] = i as u16;
            out.set_sign(t, s);
        }
        out
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().then(self).then(g)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut sq = base;
        let mut acc = Self::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &t)| i == t as usize) && self.neg.iter().all(|&w| w == 0)
    }

    /// Least `k ≥ 1` with `g^k = 1`: the lcm over cycles of the cycle length,
    /// doubled when the signs around the cycle multiply to −1.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut sign = 1i8;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                let (s, t) = self.apply(p);
                sign *= s;
                p = t;
                len += 1;
            }
            let cyc = if sign < 0 { 2 * len } else { len };
            ord = ord.lcm(&cyc);
        }
        ord
    }

    /// The permutation with all signs dropped.
    pub fn underlying_perm(&self) -> Self {
        Self { image: self.image.clone(), neg: vec![0; self.neg.len()] }
    }

    pub fn is_diagonal(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &t)| i == t as usize)
    }

    /// Trace of the monomial matrix: sum of signs over fixed points.
    pub fn trace(&self) -> i64 {
        (0..self.degree()).filter(|&i| self.image(i) == i).map(|i| self.sign(i) as i64).sum()
    }

    /// Dense matrix in the row-vector convention (see module docs).
    pub fn matrix(&self) -> Vec<Vec<i8>> {
        let n = self.degree();
        (0..n)
            .map(|i| {
                let mut row = vec![0i8; n];
                let (s, t) = self.apply(i);
                row[t] = s;
                row
            })
            .collect()
    }

    /// Parses signed-cycle notation such as `(e1 -e5)(e2 -e3 e4 -e7 -e2 e3 -e4 e7)`.
    ///
    /// Each listed signed point maps to the next one in its cycle. A cycle
    /// also fixes the mirrored images (`x → y` implies `-x → -y`), so the two
    /// signed orbits of one point must agree. Unmentioned points are fixed.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let cycles = parse_cycles(text)?;
        let mut image: Vec<Option<(i8, usize)>> = vec![None; degree];
        for cycle in &cycles {
            for (t, &(s_from, from)) in cycle.iter().enumerate() {
                let (s_to, to) = cycle[(t + 1) % cycle.len()];
                for p in [from, to] {
                    if p == 0 || p > degree {
                        return Err(PermError::OutOfRange(p, degree));
                    }
                }
                let entry = (s_from * s_to, to - 1);
                match image[from - 1] {
                    Some(prev) if prev != entry => return Err(PermError::Inconsistent(from)),
                    _ => image[from - 1] = Some(entry),
                }
            }
        }
        let (targets, signs): (Vec<usize>, Vec<i8>) = image
            .iter()
            .enumerate()
            .map(|(i, e)| match e {
                Some((s, t)) => (*t, *s),
                None => (i, 1),
            })
            .unzip();
        Self::from_parts(&targets, &signs)
    }

    /// Signed-cycle rendering; the identity renders as `()`.
    pub fn to_cycles(&self) -> String {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            let (s0, t0) = self.apply(start);
            if t0 == start && s0 > 0 {
                done[start] = true;
                continue;
            }
            // follow the orbit of +e_start through signed points
            let mut orbit = vec![(1i8, start)];
            let (mut s, mut p) = (1i8, start);
            loop {
                let (gs, gp) = self.apply(p);
                s *= gs;
                p = gp;
                if (s, p) == (1, start) {
                    break;
                }
                orbit.push((s, p));
            }
            for &(_, p) in &orbit {
                done[p] = true;
            }
            out.push('(');
            let parts: Vec<String> =
                orbit.iter().map(|&(s, p)| format!("{}e{}", if s < 0 { "-" } else { "" }, p + 1)).collect();
            out.push_str(&parts.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Stable text key used in reports: `image:signs`, 1-based.
    pub fn encoding(&self) -> String {
        let img: Vec<String> = self.image.iter().map(|t| (t + 1).to_string()).collect();
        let sg: String = (0..self.degree()).map(|i| if self.sign(i) < 0 { '-' } else { '+' }).collect();
        format!("{}:{}", img.join(","), sg)
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<(i8, usize)>>, PermError> {
    let syntax = |m: &str| PermError::Syntax(format!("{m} in {text:?}"));
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_start = rest.strip_prefix('(').ok_or_else(|| syntax("expected '('"))?;
        let close = body_start.find(')').ok_or_else(|| syntax("unclosed cycle"))?;
        let body = &body_start[..close];
        rest = body_start[close + 1..].trim_start();
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (sign, tok) = match tok.strip_prefix('-') {
                Some(t) => (-1i8, t),
                None => (1i8, tok.strip_prefix('+').unwrap_or(tok)),
            };
            let idx = tok
                .strip_prefix('e')
                .or_else(|| tok.strip_prefix('x'))
                .ok_or_else(|| syntax("expected point like e3"))?;
            let idx: usize = idx.parse().map_err(|_| syntax("bad point index"))?;
            cycle.push((sign, idx));
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPerm{}", self.to_cycles())
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

impl FromStr for SignedPerm {
    type Err = PermError;

    /// Parses at degree 7, the degree of every named element.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, 7)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SignedPerm {
        SignedPerm::parse(s, 7).unwrap()
    }

    #[test]
    fn parse_delta() {
        let d = p("(e1 -e5)(e2)(e3 -e7)(e4)(e6)");
        assert_eq!(d.apply(0), (-1, 4));
        assert_eq!(d.apply(4), (-1, 0));
        assert_eq!(d.apply(2), (-1, 6));
        assert_eq!(d.apply(1), (1, 1));
        assert!(d.then(&d).is_identity());
        assert_eq!(d.order(), 2);
    }

    #[test]
    fn parse_alpha_and_empty() {
        let a = p("(e1 e2 e4 e3 e6 e5 e7)");
        assert_eq!(a.order(), 7);
        assert_eq!(a.apply(0), (1, 1));
        assert!(p("").is_identity());
        assert!(p("()").is_identity());
    }

    #[test]
    fn theta_order_and_shape() {
        let t = p("(e1 -e5)(e2 -e3 e4 -e7 -e2 e3 -e4 e7)(e6 -e6)");
        assert_eq!(t.order(), 8);
        assert_eq!(t.underlying_perm(), p("(e1 e5)(e2 e3 e4 e7)"));
        assert!(!t.is_diagonal());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(SignedPerm::parse("(e1 e9)", 7), Err(PermError::OutOfRange(9, 7)));
        assert!(matches!(SignedPerm::parse("(e1 e2)(e1 e3)", 7), Err(PermError::Inconsistent(1))));
        assert!(matches!(
            SignedPerm::parse("(e1 e2)(e3 e2)", 7),
            Err(PermError::NotBijective(_) | PermError::Inconsistent(_))
        ));
        assert!(matches!(SignedPerm::parse("e1 e2", 7), Err(PermError::Syntax(_))));
        // e1 -> -e2 forces -e1 -> e2; listing -e1 -> -e2 contradicts it
        assert!(SignedPerm::parse("(e1 -e2)(-e1 -e2)", 7).is_err());
    }

    #[test]
    fn compose_convention_matches_matrices() {
        let g = p("(e1 -e2 e3)");
        let h = p("(e2 e4)(e5 -e5)");
        let gh = g.compose(&h).unwrap();
        let (mg, mh) = (g.matrix(), h.matrix());
        for i in 0..7 {
            for j in 0..7 {
                let v: i8 = (0..7).map(|k| mg[i][k] * mh[k][j]).sum();
                assert_eq!(gh.matrix()[i][j], v);
            }
        }
        assert!(g.compose(&SignedPerm::identity(3)).is_err());
    }

    #[test]
    fn render_round_trip() {
        for s in ["(e1 -e5)(e3 -e7)", "(e1 e2 e4 e3 e6 e5 e7)", "(e6 -e6)", "(e2 -e3 e4 -e7 -e2 e3 -e4 e7)"] {
            let g = p(s);
            assert_eq!(p(&g.to_cycles()), g);
        }
        assert_eq!(SignedPerm::identity(7).to_cycles(), "()");
        assert_eq!(p("(e1 -e5)(e3 -e7)").to_cycles(), "(e1 -e5)(e3 -e7)");
    }

    #[test]
    fn inverse_and_pow() {
        let a = p("(e1 e2 e4 e3 e6 e5 e7)");
        assert_eq!(a.inverse(), a.pow(6));
        assert_eq!(a.pow(-1), a.inverse());
        let n1 = SignedPerm::diagonal(&[1, 1, 1, -1, -1, -1, -1]);
        assert_eq!(n1.inverse(), n1);
        assert_eq!(n1.trace(), -1);
    }
}
