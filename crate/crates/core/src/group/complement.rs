use super::{Group, GroupError};

/// Generator profile `(ord x, ord y, ord xy)` of a supported quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplementProfile {
    /// PSL₂(7), (2,3,7)-generated.
    Psl27,
    /// S₄ from `a⁴ = b³ = (ab)² = 1`.
    S4,
}

impl ComplementProfile {
    pub fn orders(self) -> (u64, u64, u64) {
        match self {
            Self::Psl27 => (2, 3, 7),
            Self::S4 => (4, 3, 2),
        }
    }

    pub fn quotient_order(self) -> usize {
        match self {
            Self::Psl27 => 168,
            Self::S4 => 24,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Psl27 => "PSL2(7)",
            Self::S4 => "S4",
        }
    }
}

/// Exhaustive search for `H ≤ G` with `|H| = |G/N|` and `H ∩ N = 1`, over all
/// pairs `(x, y)` outside `N` matching the profile. Returns the first hit in
/// element order.
pub fn find_complement(g: &Group, n: &Group, profile: ComplementProfile) -> Result<Option<Group>, GroupError> {
    if !g.is_normal(n) {
        return Err(GroupError::NotNormal);
    }
    let q = g.order() / n.order();
    if q != profile.quotient_order() {
        return Err(GroupError::UnsupportedProfile(q, profile.name().to_string()));
    }
    let mut in_n = vec![false; g.order()];
    for i in g.indices_of(n)? {
        in_n[i as usize] = true;
    }
    let (ox, oy, oxy) = profile.orders();
    let pick = |o: u64| -> Vec<u32> {
        (0..g.order() as u32).filter(|&i| !in_n[i as usize] && g.element_order(i) == o).collect()
    };
    let xs = pick(ox);
    let ys = pick(oy);
    for &x in &xs {
        for &y in &ys {
            if g.element_order(g.mul_idx(x, y)) != oxy {
                continue;
            }
            let Some(members) = g.closure_indices(&[x, y], q) else {
                continue;
            };
            if members.len() == q && members.iter().all(|&m| m == g.identity_index() || !in_n[m as usize]) {
                return Ok(Some(g.subgroup_from_indices(&members, &[x, y])));
            }
        }
    }
    Ok(None)
}

/// Whether `g⁻¹ H1 g = H2` for some `g ∈ G`, comparing element sets.
pub fn are_conjugate_subgroups(g: &Group, h1: &Group, h2: &Group) -> bool {
    if h1.order() != h2.order() {
        return false;
    }
    let (Ok(a), Ok(b)) = (g.indices_of(h1), g.indices_of(h2)) else {
        return false;
    };
    let mut image = Vec::with_capacity(a.len());
    (0..g.order() as u32).any(|t| {
        image.clear();
        image.extend(a.iter().map(|&x| g.conj_idx(x, t)));
        image.sort_unstable();
        image == b
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::SignedPerm;

    fn p(s: &str) -> SignedPerm {
        SignedPerm::parse(s, 7).unwrap()
    }

    #[test]
    fn s4_complement_in_signed_s4() {
        // all signed permutations of degree 4 split over their diagonal 2⁴
        let cyc = SignedPerm::parse("(e1 e2 e3 e4)", 4).unwrap();
        let swap = SignedPerm::parse("(e1 e2)", 4).unwrap();
        let flip = SignedPerm::diagonal(&[-1, 1, 1, 1]);
        let g = Group::close(&[cyc.clone(), swap, flip.clone()]).unwrap();
        assert_eq!(g.order(), 384);
        let flips: Vec<SignedPerm> = (0..4).map(|k| flip.conjugate_by(&cyc.pow(k))).collect();
        let n = g.subgroup(&flips).unwrap();
        assert_eq!(n.order(), 16);
        let h = find_complement(&g, &n, ComplementProfile::S4).unwrap().unwrap();
        assert_eq!(h.order(), 24);
        assert_eq!(h.elements().iter().filter(|x| n.contains(x)).count(), 1);
        assert_eq!(
            find_complement(&g, &n, ComplementProfile::Psl27).unwrap_err(),
            GroupError::UnsupportedProfile(24, "PSL2(7)".into())
        );
    }

    #[test]
    fn conjugate_subgroups() {
        let g = Group::close(&[p("(e1 e2 e4 e3 e6 e5 e7)"), p("(e2 e4 e6)(e3 e7 e5)")]).unwrap();
        let h = g.subgroup(&[p("(e2 e4 e6)(e3 e7 e5)")]).unwrap();
        assert!(are_conjugate_subgroups(&g, &h, &h));
        let t = p("(e1 e2 e4 e3 e6 e5 e7)");
        let k = g.subgroup(&[p("(e2 e4 e6)(e3 e7 e5)").conjugate_by(&t)]).unwrap();
        assert!(are_conjugate_subgroups(&g, &h, &k));
        let seven = g.subgroup(&[t]).unwrap();
        assert!(!are_conjugate_subgroups(&g, &h, &seven));
    }
}
