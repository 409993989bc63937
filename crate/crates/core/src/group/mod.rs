//! Finite groups of signed permutations.
//!
//! A [`Group`] owns its full element list in canonical order together with a
//! Cayley table, so every later computation (classes, power maps,
//! subgroup closure, conjugation scans) works on `u32` indices.

mod complement;
mod quotient;

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_integer::Integer;
use thiserror::Error;

use crate::signed_perm::SignedPerm;

pub use complement::{are_conjugate_subgroups, find_complement, ComplementProfile};
pub use quotient::quotient_action_on_labels;

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generators have different degrees")]
    DegreeMismatch,
    #[error("{0} is not an element of the group")]
    NotMember(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("quotient of order {0} does not match the {1} profile")]
    UnsupportedProfile(usize, String),
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Canonical minimum of the class.
    pub representative: SignedPerm,
    pub rep_index: u32,
    pub size: usize,
    pub element_order: u64,
    /// Sorted element indices.
    pub members: Vec<u32>,
}

#[derive(Clone)]
pub struct Group {
    elements: Vec<SignedPerm>,
    index: HashMap<SignedPerm, u32>,
    generators: Vec<SignedPerm>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u64>,
    identity: u32,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group").field("order", &self.order()).field("generators", &self.generators).finish()
    }
}

impl Group {
    /// Breadth-first closure of `generators`.
    pub fn close(generators: &[SignedPerm]) -> Result<Self, GroupError> {
        Self::close_with_cap(generators, DEFAULT_CLOSURE_CAP)
    }

    pub fn close_with_cap(generators: &[SignedPerm], cap: usize) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let n = first.degree();
        if generators.iter().any(|g| g.degree() != n) {
            return Err(GroupError::DegreeMismatch);
        }
        let id = SignedPerm::identity(n);
        let mut seen: HashMap<SignedPerm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut found = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let y = found[i].then(g);
                if !seen.contains_key(&y) {
                    if found.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(found.len());
                    found.push(y);
                }
            }
        }
        Ok(Self::from_elements(found, generators.to_vec()))
    }

    /// Builds the group structure on an element set already known to be closed.
    fn from_elements(mut elements: Vec<SignedPerm>, generators: Vec<SignedPerm>) -> Self {
        elements.sort();
        let index: HashMap<SignedPerm, u32> = elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        let size = elements.len();
        let mut table = vec![0u32; size * size];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                table[i * size + j] = index[&x.then(y)];
            }
        }
        let identity = index[&SignedPerm::identity(elements[0].degree())];
        let mut inverses = vec![0u32; size];
        for i in 0..size {
            let row = &table[i * size..(i + 1) * size];
            inverses[i] = row.iter().position(|&k| k == identity).unwrap() as u32;
        }
        let orders = elements.iter().map(SignedPerm::order).collect();
        let mut g = Self {
            elements,
            index,
            generators,
            table,
            inverses,
            orders,
            identity,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let size = self.order();
        let gens: Vec<u32> = self.generators.iter().map(|g| self.index[g]).collect();
        let mut class_id = vec![u32::MAX; size];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..size as u32 {
            if class_id[start as usize] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            class_id[start as usize] = id;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for &g in &gens {
                    let y = self.conj_idx(x, g);
                    if class_id[y as usize] == u32::MAX {
                        class_id[y as usize] = id;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        let mut classes: Vec<ConjugacyClass> = raw
            .into_iter()
            .map(|members| {
                let rep = members[0];
                ConjugacyClass {
                    representative: self.elements[rep as usize].clone(),
                    rep_index: rep,
                    size: members.len(),
                    element_order: self.orders[rep as usize],
                    members,
                }
            })
            .collect();
        classes.sort_by(|a, b| {
            (a.element_order, a.size, &a.representative).cmp(&(b.element_order, b.size, &b.representative))
        });
        let mut class_of = vec![0u32; size];
        for (c, cl) in classes.iter().enumerate() {
            for &m in &cl.members {
                class_of[m as usize] = c as u32;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &SignedPerm {
        &self.elements[i as usize]
    }

    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }

    pub fn index_of(&self, g: &SignedPerm) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &SignedPerm) -> bool {
        self.index.contains_key(g)
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    /// Index of `x` then `y`.
    #[inline]
    pub fn mul_idx(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.order() + y as usize]
    }

    #[inline]
    pub fn inv_idx(&self, x: u32) -> u32 {
        self.inverses[x as usize]
    }

    /// Index of `g⁻¹ x g`.
    #[inline]
    pub fn conj_idx(&self, x: u32, g: u32) -> u32 {
        self.mul_idx(self.mul_idx(self.inv_idx(g), x), g)
    }

    pub fn pow_idx(&self, x: u32, k: u64) -> u32 {
        let mut acc = self.identity;
        for _ in 0..k % self.orders[x as usize] {
            acc = self.mul_idx(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> u64 {
        self.orders[x as usize]
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    /// Class index of an arbitrary element, if it belongs to the group.
    pub fn class_of_element(&self, g: &SignedPerm) -> Option<usize> {
        self.index_of(g).map(|i| self.class_of(i))
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, o| acc.lcm(o))
    }

    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for &o in &self.orders {
            *h.entry(o).or_insert(0) += 1;
        }
        h
    }

    /// `|C_G(g)|` for the representative of class `c`.
    pub fn centralizer_order(&self, c: usize) -> usize {
        let z = self.classes[c].rep_index;
        (0..self.order() as u32).filter(|&g| self.mul_idx(g, z) == self.mul_idx(z, g)).count()
    }

    /// Class of `g^k` as a function of the class of `g`.
    pub fn power_map(&self, k: i64) -> Vec<usize> {
        let map: Vec<usize> = self.classes.iter().map(|cl| self.class_of(self.pow_signed(cl.rep_index, k))).collect();
        #[cfg(debug_assertions)]
        for (c, cl) in self.classes.iter().enumerate() {
            for &m in &cl.members {
                debug_assert_eq!(self.class_of(self.pow_signed(m, k)), map[c], "power map not class function");
            }
        }
        map
    }

    fn pow_signed(&self, x: u32, k: i64) -> u32 {
        let o = self.orders[x as usize] as i64;
        self.pow_idx(x, k.rem_euclid(o) as u64)
    }

    /// Closure of `gens` inside this group.
    pub fn subgroup(&self, gens: &[SignedPerm]) -> Result<Group, GroupError> {
        for g in gens {
            if !self.contains(g) {
                return Err(GroupError::NotMember(g.to_cycles()));
            }
        }
        Group::close(gens)
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &Group) -> bool {
        other.elements.iter().all(|g| self.contains(g))
    }

    /// `g⁻¹ H g = H` for every generator `g` of `self`; requires `H ⊆ self`.
    pub fn is_normal(&self, h: &Group) -> bool {
        if !self.contains_group(h) {
            return false;
        }
        self.generators.iter().all(|g| h.elements.iter().all(|x| h.contains(&x.conjugate_by(g))))
    }

    /// Sorted indices of `H`'s elements in this group.
    pub fn indices_of(&self, h: &Group) -> Result<Vec<u32>, GroupError> {
        let mut idx = h
            .elements
            .iter()
            .map(|g| self.index_of(g).ok_or_else(|| GroupError::NotMember(g.to_cycles())))
            .collect::<Result<Vec<_>, _>>()?;
        idx.sort_unstable();
        Ok(idx)
    }

    /// Index-level closure of `gens`, giving up once more than `cap` elements appear.
    pub fn closure_indices(&self, gens: &[u32], cap: usize) -> Option<Vec<u32>> {
        let mut seen = vec![false; self.order()];
        seen[self.identity as usize] = true;
        let mut found = vec![self.identity];
        let mut k = 0;
        while k < found.len() {
            let x = found[k];
            for &g in gens {
                let y = self.mul_idx(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    found.push(y);
                    if found.len() > cap {
                        return None;
                    }
                }
            }
            k += 1;
        }
        found.sort_unstable();
        Some(found)
    }

    /// Builds a standalone group from an index set closed under the table.
    pub fn subgroup_from_indices(&self, members: &[u32], gens: &[u32]) -> Group {
        let elements = members.iter().map(|&i| self.elements[i as usize].clone()).collect();
        let generators = gens.iter().map(|&i| self.elements[i as usize].clone()).collect();
        Group::from_elements(elements, generators)
    }

    /// Checks the structural invariants; returns a description of the first failure.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.order();
        if !self.elements.windows(2).all(|w| w[0] < w[1]) {
            return Err("elements not strictly sorted".into());
        }
        let total: usize = self.classes.iter().map(|c| c.size).sum();
        if total != n {
            return Err(format!("class sizes sum to {total}, not {n}"));
        }
        for (c, cl) in self.classes.iter().enumerate() {
            if !n.is_multiple_of(cl.size) {
                return Err(format!("class {c} size {} does not divide {n}", cl.size));
            }
            if cl.size * self.centralizer_order(c) != n {
                return Err(format!("class {c}: |class|·|centralizer| != |G|"));
            }
            if cl.members.iter().any(|&m| self.orders[m as usize] != cl.element_order) {
                return Err(format!("class {c} mixes element orders"));
            }
        }
        if self.classes[0].size != 1 || self.classes[0].rep_index != self.identity {
            return Err("identity is not the first singleton class".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SignedPerm {
        SignedPerm::parse(s, 7).unwrap()
    }

    fn frobenius21() -> Group {
        Group::close(&[p("(e1 e2 e4 e3 e6 e5 e7)"), p("(e2 e4 e6)(e3 e7 e5)")]).unwrap()
    }

    #[test]
    fn closure_of_frobenius_group() {
        let g = frobenius21();
        assert_eq!(g.order(), 21);
        assert_eq!(g.classes().len(), 5);
        g.check_invariants().unwrap();
        let sizes: Vec<usize> = g.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 7, 7, 3, 3]);
    }

    #[test]
    fn errors() {
        assert_eq!(Group::close(&[]).unwrap_err(), GroupError::NoGenerators);
        let mixed = [SignedPerm::identity(3), SignedPerm::identity(4)];
        assert_eq!(Group::close(&mixed).unwrap_err(), GroupError::DegreeMismatch);
        let cyc = p("(e1 e2 e3 e4 e5 e6 e7)");
        assert_eq!(Group::close_with_cap(&[cyc], 3).unwrap_err(), GroupError::CapExceeded(3));
        let g = frobenius21();
        assert!(matches!(g.subgroup(&[p("(e1 e2)")]), Err(GroupError::NotMember(_))));
    }

    #[test]
    fn power_maps() {
        let g = frobenius21();
        let id: Vec<usize> = (0..g.classes().len()).collect();
        assert_eq!(g.power_map(1), id);
        assert!(g.power_map(21).iter().all(|&c| c == 0));
        // {a, a^2, a^4} is closed under squaring; cubing swaps it with {a^3, a^5, a^6}
        assert_eq!(g.power_map(2)[3], 3);
        assert_eq!(g.power_map(3)[3], 4);
    }

    #[test]
    fn normal_subgroups() {
        let g = frobenius21();
        let seven = g.subgroup(&[p("(e1 e2 e4 e3 e6 e5 e7)")]).unwrap();
        assert!(g.is_normal(&seven));
        assert!(g.is_normal(&g));
        let three = g.subgroup(&[p("(e2 e4 e6)(e3 e7 e5)")]).unwrap();
        assert!(!g.is_normal(&three));
    }
}
