use std::f64::consts::TAU;

use num_traits::ToPrimitive;
use octgroup::arith::{rat, Cyclotomic, Rational};
use octgroup::catalog::{Catalog, ReferenceData};
use octgroup::chartab::character_table;
use octgroup::group::Group;
use octgroup::octonion::{associator, Octonion};
use octgroup::signed_perm::SignedPerm;
use proptest::prelude::*;

fn complex(z: &Cyclotomic) -> (f64, f64) {
    let n = z.conductor() as f64;
    z.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let c = c.to_f64().unwrap();
        let a = TAU * k as f64 / n;
        (re + c * a.cos(), im + c * a.sin())
    })
}

fn close_to(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (
        prop::sample::select(vec![1u32, 2, 3, 4, 7, 8, 12, 21, 24]),
        prop::collection::vec((0i64..24, -5i64..=5, 1i64..4), 0..5),
    )
        .prop_map(|(n, terms)| Cyclotomic::from_exponents(n, terms.into_iter().map(|(k, a, b)| (k, rat(a, b)))))
}

fn octonion() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-4i64..=4).prop_map(Octonion::from_ints)
}

fn signed_perm(n: usize) -> impl Strategy<Value = SignedPerm> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(prop::bool::ANY, n)).prop_map(
        |(image, neg)| {
            let signs: Vec<i8> = neg.iter().map(|&b| if b { -1 } else { 1 }).collect();
            SignedPerm::from_parts(&image, &signs).unwrap()
        },
    )
}

fn matmul(a: &[Vec<i8>], b: &[Vec<i8>]) -> Vec<Vec<i8>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Octonion product written out from the seven positive triads.
fn triad_product(a: &Octonion, b: &Octonion) -> [Rational; 8] {
    const TRIADS: [[usize; 3]; 7] = [[1, 2, 3], [2, 4, 6], [4, 3, 5], [3, 6, 7], [6, 5, 1], [5, 7, 2], [7, 1, 4]];
    let mut table = [[(0i8, 0usize); 8]; 8];
    for i in 0..8 {
        table[0][i] = (1, i);
        table[i][0] = (1, i);
    }
    for i in 1..8 {
        table[i][i] = (-1, 0);
    }
    for [i, j, k] in TRIADS {
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            table[x][y] = (1, z);
            table[y][x] = (-1, z);
        }
    }
    let mut out: [Rational; 8] = Default::default();
    for i in 0..8 {
        for j in 0..8 {
            let (s, k) = table[i][j];
            out[k] += &a.coeffs()[i] * &b.coeffs()[j] * Rational::from_integer(s.into());
        }
    }
    out
}

proptest! {
    #[test]
    fn cyclotomic_ring_ops_match_complex_values(a in cyclotomic(), b in cyclotomic()) {
        let (za, zb) = (complex(&a), complex(&b));
        let sum = complex(&(&a + &b));
        prop_assert!(close_to(sum, (za.0 + zb.0, za.1 + zb.1)));
        let prod = complex(&(&a * &b));
        prop_assert!(close_to(prod, (za.0 * zb.0 - za.1 * zb.1, za.0 * zb.1 + za.1 * zb.0)));
        let conj = complex(&a.conj());
        prop_assert!(close_to(conj, (za.0, -za.1)));
    }

    #[test]
    fn cyclotomic_canonical_form_is_unique(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
        let parsed: Cyclotomic = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a.clone());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Cyclotomic::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn octonion_norm_is_multiplicative(a in octonion(), b in octonion()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn octonions_are_alternative(a in octonion(), b in octonion()) {
        prop_assert!(associator(&a, &a, &b).is_zero());
        prop_assert!(associator(&a, &b, &b).is_zero());
        prop_assert!(associator(&a, &b, &a).is_zero());
    }

    #[test]
    fn octonion_product_matches_triad_table(a in octonion(), b in octonion()) {
        let product = &a * &b;
        prop_assert_eq!(product.coeffs(), &triad_product(&a, &b));
    }

    #[test]
    fn signed_perm_composition_is_matrix_product(g in signed_perm(7), h in signed_perm(7)) {
        prop_assert_eq!(g.then(&h).matrix(), matmul(&g.matrix(), &h.matrix()));
        prop_assert!(g.then(&g.inverse()).is_identity());
        prop_assert!(g.pow(g.order() as i64).is_identity());
    }

    #[test]
    fn signed_perm_cycle_notation_round_trips(g in signed_perm(7)) {
        prop_assert_eq!(SignedPerm::parse(&g.to_cycles(), 7).unwrap(), g.clone());
        prop_assert_eq!(g.to_string().parse::<SignedPerm>().unwrap(), g);
    }

    #[test]
    fn signed_perm_conjugation_keeps_trace(g in signed_perm(7), h in signed_perm(7)) {
        prop_assert_eq!(g.conjugate_by(&h).trace(), g.trace());
        prop_assert_eq!(g.conjugate_by(&h).order(), g.order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_groups_satisfy_axioms(g in signed_perm(4), h in signed_perm(4)) {
        let grp = Group::close(&[g.clone(), h.clone()]).unwrap();
        grp.check_invariants().unwrap();
        prop_assert_eq!(384 % grp.order(), 0);
        let sizes: usize = grp.classes().iter().map(|c| c.size).sum();
        prop_assert_eq!(sizes, grp.order());
        for x in grp.elements().iter().take(16) {
            prop_assert!(grp.contains(&x.then(&g)));
            prop_assert!(grp.contains(&x.inverse()));
        }
    }

    #[test]
    fn character_tables_are_orthogonal(g in signed_perm(4), h in signed_perm(4)) {
        let grp = Group::close(&[g, h]).unwrap();
        let table = character_table(&grp).unwrap();
        table.check_invariants().unwrap();
        let sum: u64 = table.degrees().iter().map(|d| d * d).sum();
        prop_assert_eq!(sum as usize, grp.order());
        for i in 0..table.irreps.len() {
            prop_assert!([-1, 0, 1].contains(&table.frobenius_schur(i).unwrap()));
        }
    }
}

#[test]
fn roster_tables_pass_invariants() {
    let catalog = Catalog::new(ReferenceData::embedded());
    for name in ["7:3", "2^3:7:3", "PSL2(7)", "4.S4:2", "2^3.S4"] {
        let info = catalog.table(name).unwrap();
        info.table.check_invariants().unwrap();
        catalog.group(name).unwrap().check_invariants().unwrap();
    }
}
