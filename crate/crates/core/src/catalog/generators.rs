use crate::group::{quotient_action_on_labels, Group};
use crate::signed_perm::SignedPerm;

use super::CatalogError;

/// Named generators in signed cycle notation (degree 7).
pub const GENERATORS: [(&str, &str); 18] = [
    ("alpha", "(e1 e2 e4 e3 e6 e5 e7)"),
    ("beta", "(e2 e4 e6)(e3 e7 e5)"),
    ("gamma", "(e1 -e4)(e2 -e5)(e3 -e3)(e7 -e7)"),
    ("theta", "(e1 -e5)(e2 -e3 e4 -e7 -e2 e3 -e4 e7)(e6 -e6)"),
    ("delta", "(e1 -e5)(e3 -e7)"),
    ("A", "(e1 -e7 e3 -e1 e7 -e3)(e2 -e4 -e6 -e2 e4 e6)(e5 -e5)"),
    ("B", "(e2 -e6 -e2 e6)(e3 -e5 -e3 e5)"),
    ("N1", "(e4 -e4)(e5 -e5)(e6 -e6)(e7 -e7)"),
    ("N2", "(e2 -e2)(e3 -e3)(e5 -e5)(e6 -e6)"),
    ("N7", "(e1 -e1)(e3 -e3)(e5 -e5)(e7 -e7)"),
    ("alpha_t", "(e1 e2 e4 e3 e6 e5 e7)"),
    ("beta_t", "(e3 e2 e1)(e4 e6 e5)"),
    ("gamma_t", "(e1 e5)(e3 e7)"),
    ("theta_t", "(e1 e4 e2 e5)(e6 e7)"),
    ("A_t", "(e1 e6 e2)(e3 e5 e4)"),
    ("B_t", "(e1 e3)(e4 e6)"),
    // A with the sign of its e2, e4, e6 cycle corrected at e6
    ("A_corrected", "(e1 -e7 e3 -e1 e7 -e3)(e2 -e4 e6)(e5 -e5)"),
    // gamma_t N6: the involution completing alpha_t, beta_t to the second PSL2(7)
    ("delta_second", "(e1 -e5)(e2 -e2)(e3 e7)(e4 -e4)"),
];

/// Conjugator carrying the image of the quaternion pair group onto
/// `<A_corrected, B>`: `t⁻¹ x t` lies in the latter for every pair image `x`.
pub const PAIR_IDENTIFICATION: &str = "(e1 -e6 -e1 e6)(e3 -e4 -e3 e4)";

pub fn generator(name: &str) -> Result<SignedPerm, CatalogError> {
    let (_, text) =
        GENERATORS.iter().find(|(n, _)| *n == name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    Ok(SignedPerm::parse(text, 7).expect("catalog generators parse"))
}

/// Product of a word read right to left, as in `ab = a∘b` (apply `b` first).
pub fn rtl_product(word: &[&SignedPerm]) -> SignedPerm {
    let n = word.first().map_or(7, |g| g.degree());
    word.iter().rev().fold(SignedPerm::identity(n), |acc, g| acc.then(g))
}

/// The collineation of the Fano plane whose conjugation action on `N1 … N7`
/// is the inverse of the label permutation `tilde`.
pub fn realize_label_action(tilde: &SignedPerm) -> Option<SignedPerm> {
    let labels = diagonal_labels();
    let want = tilde.inverse();
    let collineations =
        Group::close(&[generator("alpha_t").ok()?, generator("beta_t").ok()?, generator("gamma_t").ok()?]).ok()?;
    collineations.elements().iter().find(|p| quotient_action_on_labels(p, &labels).as_ref() == Some(&want)).cloned()
}

/// The seven diagonal elements `N1 … N7`, labeled by the triad on which they
/// are positive: 123, 147, 156, 257, 345, 367, 246.
pub fn diagonal_labels() -> Vec<SignedPerm> {
    const TRIADS: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 7], [1, 5, 6], [2, 5, 7], [3, 4, 5], [3, 6, 7], [2, 4, 6]];
    TRIADS
        .iter()
        .map(|t| {
            let signs: Vec<i8> = (1..=7).map(|i| if t.contains(&i) { 1 } else { -1 }).collect();
            SignedPerm::diagonal(&signs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> SignedPerm {
        generator(name).unwrap()
    }

    #[test]
    fn orders() {
        for (name, order) in [("alpha", 7), ("beta", 3), ("gamma", 2), ("theta", 8), ("delta", 2), ("A", 6), ("B", 4)] {
            assert_eq!(g(name).order(), order, "{name}");
        }
        assert!(matches!(generator("zeta"), Err(CatalogError::UnknownName(_))));
    }

    #[test]
    fn frobenius_relation_reads_right_to_left() {
        let (a, b) = (g("alpha"), g("beta"));
        let bi = b.inverse();
        let a3 = a.pow(3);
        assert!(rtl_product(&[&bi, &a, &b, &a3]).is_identity());
        assert_eq!(bi.then(&a).then(&b), a.pow(2));
    }

    #[test]
    fn label_actions_realized_by_underlying_perms() {
        assert_eq!(realize_label_action(&g("A_t")), Some(g("A").underlying_perm()));
        assert_eq!(realize_label_action(&g("B_t")), Some(g("B").underlying_perm()));
        assert_eq!(realize_label_action(&g("theta_t")), Some(g("theta").underlying_perm()));
    }

    #[test]
    fn corrected_generators() {
        use crate::octonion::is_algebra_automorphism;
        assert!(!is_algebra_automorphism(&g("A")));
        assert!(is_algebra_automorphism(&g("A_corrected")));
        assert_eq!(g("A_corrected").order(), 6);
        let n6 = &diagonal_labels()[5];
        assert_eq!(g("gamma_t").then(&g("delta_second")), *n6);
    }

    #[test]
    fn diagonal_labels_match_named() {
        let n = diagonal_labels();
        assert_eq!(n[0], g("N1"));
        assert_eq!(n[1], g("N2"));
        assert_eq!(n[6], g("N7"));
        assert_eq!(g("N2").then(&g("N7")), n[4]);
    }
}
