use super::{Group, GroupError};
use crate::signed_perm::SignedPerm;

/// The permutation `i → j` with `g⁻¹ labels[i] g = labels[j]`, as an unsigned
/// signed permutation of degree `labels.len()`; `None` if `g` does not
/// permute the labels.
pub fn quotient_action_on_labels(g: &SignedPerm, labels: &[SignedPerm]) -> Option<SignedPerm> {
    let gi = g.inverse();
    let image = labels
        .iter()
        .map(|x| {
            let y = gi.then(x).then(g);
            labels.iter().position(|l| *l == y)
        })
        .collect::<Option<Vec<usize>>>()?;
    SignedPerm::permutation(&image).ok()
}

impl Group {
    /// `G/N`. A diagonal normal subgroup is handled through the conjugation
    /// action on its non-identity elements (in canonical order) when that
    /// action is faithful on the quotient; otherwise `G` acts on the right
    /// cosets of `N`.
    pub fn quotient(&self, n: &Group) -> Result<Group, GroupError> {
        let labels: Vec<SignedPerm> = n.elements().iter().filter(|x| !x.is_identity()).cloned().collect();
        self.quotient_with_labels(n, &labels)
    }

    /// As [`Group::quotient`], numbering the diagonal labels as given.
    pub fn quotient_with_labels(&self, n: &Group, labels: &[SignedPerm]) -> Result<Group, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let target = self.order() / n.order();
        let diagonal = n.order() > 1 && n.elements().iter().all(SignedPerm::is_diagonal);
        let labels_match = labels.len() + 1 == n.order() && labels.iter().all(|l| n.contains(l) && !l.is_identity());
        if diagonal && labels_match {
            let images: Option<Vec<SignedPerm>> =
                self.generators().iter().map(|g| quotient_action_on_labels(g, labels)).collect();
            if let Some(images) = images {
                let q = Group::close(&images)?;
                if q.order() == target {
                    return Ok(q);
                }
            }
        }
        self.coset_action(n)
    }

    fn coset_action(&self, n: &Group) -> Result<Group, GroupError> {
        let n_idx = self.indices_of(n)?;
        let mut coset = vec![usize::MAX; self.order()];
        let mut count = 0;
        for x in 0..self.order() as u32 {
            if coset[x as usize] != usize::MAX {
                continue;
            }
            for &m in &n_idx {
                coset[self.mul_idx(m, x) as usize] = count;
            }
            count += 1;
        }
        let mut reps = vec![0u32; count];
        for x in (0..self.order() as u32).rev() {
            reps[coset[x as usize]] = x;
        }
        let images = self
            .generators()
            .iter()
            .map(|g| {
                let gi = self.index_of(g).expect("generator in group");
                let image: Vec<usize> = reps.iter().map(|&r| coset[self.mul_idx(r, gi) as usize]).collect();
                SignedPerm::permutation(&image).expect("right multiplication permutes cosets")
            })
            .collect::<Vec<_>>();
        Group::close(&images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SignedPerm {
        SignedPerm::parse(s, 7).unwrap()
    }

    #[test]
    fn trivial_quotient_keeps_class_sizes() {
        let g = Group::close(&[p("(e1 e2 e4 e3 e6 e5 e7)"), p("(e2 e4 e6)(e3 e7 e5)")]).unwrap();
        let trivial = g.subgroup(&[SignedPerm::identity(7)]).unwrap();
        let q = g.quotient(&trivial).unwrap();
        assert_eq!(q.order(), 21);
        let sizes = |h: &Group| h.classes().iter().map(|c| c.size).collect::<Vec<_>>();
        let mut a = sizes(&g);
        let mut b = sizes(&q);
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_by_normal_seven() {
        let g = Group::close(&[p("(e1 e2 e4 e3 e6 e5 e7)"), p("(e2 e4 e6)(e3 e7 e5)")]).unwrap();
        let seven = g.subgroup(&[p("(e1 e2 e4 e3 e6 e5 e7)")]).unwrap();
        assert_eq!(g.quotient(&seven).unwrap().order(), 3);
        let three = g.subgroup(&[p("(e2 e4 e6)(e3 e7 e5)")]).unwrap();
        assert_eq!(g.quotient(&three).unwrap_err(), GroupError::NotNormal);
    }
}
