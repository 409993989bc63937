use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::modp::{inv_mod, is_prime, nullspace, pow_mod, primitive_root, small_sqrt};
use super::{CharacterRow, CharacterTable, ChartabError, ClassInfo};
use crate::arith::{Cyclotomic, Rational};
use crate::group::Group;

/// Structure constants `C_i C_j = Σ_k a_{ijk} C_k` of the class algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAlgebra {
    r: usize,
    coeffs: Vec<u64>,
}

impl ClassAlgebra {
    pub fn class_count(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.coeffs[(i * self.r + j) * self.r + k]
    }
}

/// Counts, for a fixed `z` in each class `C_k`, the pairs `x ∈ C_i, y ∈ C_j`
/// with `xy = z`.
pub fn class_algebra(g: &Group) -> ClassAlgebra {
    let r = g.classes().len();
    let mut coeffs = vec![0u64; r * r * r];
    for (k, cl) in g.classes().iter().enumerate() {
        let z = cl.rep_index;
        for x in 0..g.order() as u32 {
            let y = g.mul_idx(g.inv_idx(x), z);
            coeffs[(g.class_of(x) * r + g.class_of(y)) * r + k] += 1;
        }
    }
    ClassAlgebra { r, coeffs }
}

const PRIME_SEARCH_STEPS: u64 = 100_000;

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2⌊√order⌋`.
pub fn choose_prime(order: u64, exponent: u64) -> Result<u64, ChartabError> {
    let bound = 2 * order.isqrt();
    let first = bound / exponent + 1;
    (first..first + PRIME_SEARCH_STEPS)
        .map(|k| k * exponent + 1)
        .find(|&p| p > bound && is_prime(p))
        .ok_or(ChartabError::NoSuitablePrime(exponent))
}

/// Exact character table by splitting the common eigenspaces of the class
/// matrices over GF(p) and lifting the characters to cyclotomic numbers.
pub fn character_table(g: &Group) -> Result<CharacterTable, ChartabError> {
    let r = g.classes().len();
    let order = g.order() as u64;
    let exponent = g.exponent();
    let p = choose_prime(order, exponent)?;
    let sizes: Vec<u64> = g.classes().iter().map(|c| c.size as u64).collect();
    let alg = class_algebra(g);

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| unit(r, i)).collect()];
    for j in 1..r {
        let m: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|k| alg.get(j, i, k) % p).collect()).collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let pieces = split(&m, &space, p);
            let dim: usize = pieces.iter().map(Vec::len).sum();
            if dim != space.len() {
                return Err(ChartabError::SplitFailure(format!(
                    "class matrix {j} is not diagonalizable on a {}-dimensional space",
                    space.len()
                )));
            }
            next.extend(pieces);
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(ChartabError::SplitFailure(format!("{} common eigenspaces for {r} classes", spaces.len())));
    }

    let inverse_class: Vec<usize> = g.classes().iter().map(|c| g.class_of(g.inv_idx(c.rep_index))).collect();
    // class of z^t for t = 0..ord(z)
    let powers: Vec<Vec<usize>> = g
        .classes()
        .iter()
        .map(|c| {
            let mut acc = g.identity_index();
            (0..c.element_order)
                .map(|_| {
                    let k = g.class_of(acc);
                    acc = g.mul_idx(acc, c.rep_index);
                    k
                })
                .collect()
        })
        .collect();
    let zeta_e = pow_mod(primitive_root(p), (p - 1) / exponent, p);

    let mut irreps = Vec::with_capacity(r);
    for space in &spaces {
        let w0 = &space[0];
        let scale = inv_mod(w0[0], p);
        let w: Vec<u64> = w0.iter().map(|x| x * scale % p).collect();
        let s = (0..r).fold(0, |acc, k| (acc + w[k] * w[inverse_class[k]] % p * inv_mod(sizes[k] % p, p)) % p);
        let d2 = order % p * inv_mod(s, p) % p;
        let d = small_sqrt(d2, p)
            .filter(|&d| d > 0)
            .ok_or_else(|| ChartabError::LiftFailure(format!("{d2} has no small square root mod {p}")))?;
        let chi: Vec<u64> = (0..r).map(|k| d * w[k] % p * inv_mod(sizes[k] % p, p) % p).collect();
        let values = (0..r).map(|k| lift(&chi, &powers[k], d, exponent, zeta_e, p)).collect::<Result<Vec<_>, _>>()?;
        for (k, v) in values.iter().enumerate() {
            if reduce(v, exponent, zeta_e, p) != Some(chi[k]) {
                return Err(ChartabError::LiftFailure(format!("{v} does not reduce to {} mod {p}", chi[k])));
            }
        }
        irreps.push(CharacterRow { degree: d, values });
    }
    irreps.sort_by_cached_key(|row| (row.degree, row.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()));

    let mut primes: Vec<u64> = (2..=exponent).filter(|&q| exponent.is_multiple_of(q) && is_prime(q)).collect();
    if !primes.contains(&2) {
        primes.push(2);
    }
    let power_maps: BTreeMap<u64, Vec<usize>> = primes
        .into_iter()
        .map(|q| (q, (0..r).map(|k| powers[k][(q % powers[k].len() as u64) as usize]).collect()))
        .collect();
    let classes = g
        .classes()
        .iter()
        .map(|c| ClassInfo { representative: c.representative.clone(), size: c.size, element_order: c.element_order })
        .collect();
    Ok(CharacterTable { group_order: g.order(), classes, power_maps, irreps, inverse_class, prime: p })
}

fn unit(r: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// Eigenspaces of `m` inside the invariant subspace spanned by `basis`.
fn split(m: &[Vec<u64>], basis: &[Vec<u64>], p: u64) -> Vec<Vec<Vec<u64>>> {
    let r = m.len();
    let d = basis.len();
    // columns of M·V
    let mv: Vec<Vec<u64>> =
        basis.iter().map(|v| (0..r).map(|i| (0..r).fold(0, |acc, k| (acc + m[i][k] * v[k]) % p)).collect()).collect();
    let mut pieces = Vec::new();
    for lambda in 0..p {
        let rows: Vec<Vec<u64>> =
            (0..r).map(|i| (0..d).map(|c| (mv[c][i] + p - lambda * basis[c][i] % p) % p).collect()).collect();
        let ns = nullspace(&rows, d, p);
        if ns.is_empty() {
            continue;
        }
        let vecs = ns
            .iter()
            .map(|coef| (0..r).map(|i| (0..d).fold(0, |acc, c| (acc + coef[c] * basis[c][i]) % p)).collect())
            .collect();
        pieces.push(vecs);
    }
    pieces
}

/// Recovers `χ(z)` from the values of `χ` mod p on the powers of `z`: the
/// eigenvalue `ζ_o^l` occurs `(1/o) Σ_t χ(z^t) ζ_o^{-lt}` times.
fn lift(chi: &[u64], powers: &[usize], d: u64, exponent: u64, zeta_e: u64, p: u64) -> Result<Cyclotomic, ChartabError> {
    let o = powers.len() as u64;
    let zeta = pow_mod(zeta_e, exponent / o, p);
    let inv_o = inv_mod(o % p, p);
    let mut terms = Vec::new();
    for l in 0..o {
        let step = pow_mod(zeta, (o - l) % o, p);
        let mut acc = 0;
        let mut z = 1;
        for &k in powers {
            acc = (acc + chi[k] * z) % p;
            z = z * step % p;
        }
        let m = acc * inv_o % p;
        if m > d {
            return Err(ChartabError::LiftFailure(format!("multiplicity {m} exceeds degree {d}")));
        }
        if m > 0 {
            terms.push((l as i64, Rational::from_integer(m.into())));
        }
    }
    Ok(Cyclotomic::from_exponents(o as u32, terms))
}

/// Image of `v` in GF(p) under `ζ_e ↦ zeta_e`.
fn reduce(v: &Cyclotomic, exponent: u64, zeta_e: u64, p: u64) -> Option<u64> {
    let n = v.conductor() as u64;
    if !exponent.is_multiple_of(n) {
        return None;
    }
    let zeta = pow_mod(zeta_e, exponent / n, p);
    let pb: num_bigint::BigInt = p.into();
    let mut acc = 0u64;
    let mut z = 1u64;
    for c in v.coeffs() {
        if !c.is_zero() {
            let num = c.numer().mod_floor(&pb).to_u64()?;
            let den = c.denom().mod_floor(&pb).to_u64()?;
            if den == 0 {
                return None;
            }
            acc = (acc + num * inv_mod(den, p) % p * z) % p;
        }
        z = z * zeta % p;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::SignedPerm;

    fn frobenius21() -> Group {
        let p = |s| SignedPerm::parse(s, 7).unwrap();
        Group::close(&[p("(e1 e2 e4 e3 e6 e5 e7)"), p("(e2 e4 e6)(e3 e7 e5)")]).unwrap()
    }

    #[test]
    fn primes() {
        assert_eq!(choose_prime(1344, 168), Ok(337));
        assert_eq!(choose_prime(192, 24), Ok(73));
        assert_eq!(choose_prime(21, 21), Ok(43));
    }

    #[test]
    fn class_algebra_counts() {
        let g = frobenius21();
        let a = class_algebra(&g);
        for j in 0..5 {
            assert_eq!(a.get(0, j, j), 1);
        }
        // the two order-7 classes have size 3
        let weight: u64 = (0..5).map(|k| a.get(3, 4, k) * g.classes()[k].size as u64).sum();
        assert_eq!(weight, 9);
        for i in 0..5 {
            for j in 0..5 {
                let total: u64 = (0..5).map(|k| a.get(i, j, k) * g.classes()[k].size as u64).sum();
                assert_eq!(total, (g.classes()[i].size * g.classes()[j].size) as u64);
            }
        }
    }

    #[test]
    fn frobenius_table() {
        let g = frobenius21();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1, 3, 3]);
        t.check_invariants().unwrap();
        let eta: Cyclotomic = "z7 + z7^2 + z7^4".parse().unwrap();
        assert!(t.irreps.iter().any(|row| row.values.contains(&eta)));
    }

    #[test]
    fn trivial_group() {
        let g = Group::close(&[SignedPerm::identity(3)]).unwrap();
        assert_eq!(class_algebra(&g).get(0, 0, 0), 1);
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), vec![1]);
    }
}
