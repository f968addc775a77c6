//! Finite abelian group arithmetic and subset machinery.
//!
//! A group is specified as a direct sum of cyclic groups `C_{n₁} ⊕ … ⊕ C_{n_k}`
//! by its list of moduli; an element is a vector of residues, one per modulus.
//! Subsets are stored as bitsets over the mixed-radix element index, so all
//! set operations are deterministic and iterate in a canonical order
//! (lexicographic on coordinates).
//!
//! Pure arithmetic (`add`, `scalar_mul`, element orders) works for any group
//! order that fits in a `u64`. Subset machinery is for desk-scale groups and
//! refuses orders above 2²⁰; operations that enumerate all of `G`
//! (stabilizers, verification campaigns) are additionally bounded by
//! [`Budgets::order_cap`](crate::Budgets).

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::Budgets;
use crate::error::{Error, Result};

/// Hard ceiling on the group order for bitset-backed subset machinery.
const MAX_SET_ORDER: u64 = 1 << 20;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `dst |= delta + src`, all three as bitsets over element indices.
pub(crate) fn or_translated_words(spec: &GroupSpec, src: &[u64], delta: u64, dst: &mut [u64]) {
    for (wi, &w) in src.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros();
            w &= w - 1;
            let j = spec.add_indices(wi as u64 * 64 + b as u64, delta);
            dst[(j / 64) as usize] |= 1 << (j % 64);
        }
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 { 0 } else { a / gcd(a, b) * b }
}

/// A finite abelian group `C_{n₁} ⊕ … ⊕ C_{n_k}`, given by its moduli.
///
/// Moduli are kept exactly as provided (no normalization to invariant
/// factors), so `[2, 4]` and `[4, 2]` are distinct specs describing
/// isomorphic groups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    moduli: Vec<u64>,
    order: u64,
}

impl GroupSpec {
    /// Builds a spec from a list of moduli, each ≥ 2.
    pub fn new(moduli: impl Into<Vec<u64>>) -> Result<Self> {
        let moduli = moduli.into();
        if moduli.is_empty() {
            return Err(Error::InvalidSpec("at least one modulus required".into()));
        }
        let mut order: u64 = 1;
        for &m in &moduli {
            if m < 2 {
                return Err(Error::InvalidSpec(format!("modulus {m} < 2")));
            }
            order = order
                .checked_mul(m)
                .ok_or_else(|| Error::InvalidSpec("group order overflows u64".into()))?;
        }
        Ok(GroupSpec { moduli, order })
    }

    /// The cyclic group `C_n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Least `e ≥ 1` with `e·g = 0` for every `g`, i.e. `lcm` of the moduli.
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, &m| lcm(acc, m))
    }

    /// A group is cyclic iff some element has order `|G|`.
    pub fn is_cyclic(&self) -> bool {
        self.exponent() == self.order
    }

    /// `C₂ ⊕ C₂` up to isomorphism: order 4 and exponent 2.
    pub fn is_klein_four(&self) -> bool {
        self.order == 4 && self.exponent() == 2
    }

    /// The identity element.
    pub fn zero(&self) -> GroupElement {
        GroupElement {
            spec: self.clone(),
            coords: vec![0; self.moduli.len()],
        }
    }

    /// Builds an element from (possibly unreduced, possibly negative)
    /// coordinates.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.moduli.len() {
            return Err(Error::InvalidSpec(format!(
                "element has {} coordinates, group has {} moduli",
                coords.len(),
                self.moduli.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
            .collect();
        Ok(GroupElement {
            spec: self.clone(),
            coords,
        })
    }

    /// Mixed-radix rank of an element; lexicographic coordinate order equals
    /// numeric index order.
    pub fn index_of(&self, g: &GroupElement) -> u64 {
        debug_assert_eq!(g.spec, *self);
        let mut idx = 0u64;
        for (&c, &m) in g.coords.iter().zip(&self.moduli) {
            idx = idx * m + c;
        }
        idx
    }

    /// Inverse of [`GroupSpec::index_of`]. Panics if `index ≥ order`.
    pub fn element_at(&self, index: u64) -> GroupElement {
        assert!(index < self.order, "element index {index} out of range");
        let mut coords = vec![0u64; self.moduli.len()];
        let mut rest = index;
        for (slot, &m) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = rest % m;
            rest /= m;
        }
        GroupElement {
            spec: self.clone(),
            coords,
        }
    }

    /// All elements in canonical (index) order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    /// Index-level addition, avoiding element allocation in hot loops.
    pub(crate) fn add_indices(&self, i: u64, j: u64) -> u64 {
        let mut i = i;
        let mut j = j;
        let mut out = 0u64;
        let mut place = 1u64;
        for &m in self.moduli.iter().rev() {
            let s = (i % m + j % m) % m;
            out += s * place;
            place *= m;
            i /= m;
            j /= m;
        }
        out
    }

    pub(crate) fn neg_index(&self, i: u64) -> u64 {
        let mut i = i;
        let mut out = 0u64;
        let mut place = 1u64;
        for &m in self.moduli.iter().rev() {
            let c = i % m;
            out += if c == 0 { 0 } else { m - c } * place;
            place *= m;
            i /= m;
        }
        out
    }

    /// Index of `c·g` where `g` is given by index. `c` may be negative.
    pub(crate) fn scalar_index(&self, c: i128, i: u64) -> u64 {
        let mut i = i;
        let mut out = 0u64;
        let mut place = 1u64;
        for &m in self.moduli.iter().rev() {
            let cm = c.rem_euclid(m as i128) as u128;
            let s = (cm * (i % m) as u128 % m as u128) as u64;
            out += s * place;
            place *= m;
            i /= m;
        }
        out
    }

    pub(crate) fn check_same(&self, other: &GroupSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch(self.to_string(), other.to_string()))
        }
    }

    fn check_set_order(&self) -> Result<()> {
        if self.order > MAX_SET_ORDER {
            Err(Error::GroupTooLarge(self.order))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("C{m}")).collect();
        write!(f, "{}", parts.join("⊕"))
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({:?})", self.moduli)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("moduli", &self.moduli)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            moduli: Vec<u64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        GroupSpec::new(raw.moduli).map_err(D::Error::custom)
    }
}

/// An element of a [`GroupSpec`], as a vector of reduced residues.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    spec: GroupSpec,
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn index(&self) -> u64 {
        self.spec.index_of(self)
    }

    /// Coordinatewise modular sum. Errors when the specs differ.
    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.spec.check_same(&other.spec)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(&self.spec.moduli)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        Ok(GroupElement {
            spec: self.spec.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(&self.spec.moduli)
            .map(|(&c, &m)| if c == 0 { 0 } else { m - c })
            .collect();
        GroupElement {
            spec: self.spec.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    /// Integer action `c·g`; `c` may be negative and is reduced per
    /// coordinate modulus.
    pub fn scalar_mul(&self, c: i64) -> GroupElement {
        self.scalar_mul_wide(c as i128)
    }

    pub(crate) fn scalar_mul_wide(&self, c: i128) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(&self.spec.moduli)
            .map(|(&x, &m)| {
                let cm = c.rem_euclid(m as i128) as u128;
                (cm * x as u128 % m as u128) as u64
            })
            .collect();
        GroupElement {
            spec: self.spec.clone(),
            coords,
        }
    }

    /// Least `t ≥ 1` with `t·g = 0`: the lcm over coordinates of
    /// `m / gcd(c, m)`.
    pub fn order(&self) -> u64 {
        self.coords
            .iter()
            .zip(&self.spec.moduli)
            .fold(1, |acc, (&c, &m)| lcm(acc, m / gcd(c, m)))
    }

    /// `ord(g) = |G|`, i.e. `g` generates the whole group.
    pub fn is_generator(&self) -> bool {
        self.order() == self.spec.order
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// A finite subset of a group, backed by a bitset over element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct ElementSet {
    spec: GroupSpec,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(spec: &GroupSpec) -> Result<Self> {
        spec.check_set_order()?;
        let words = vec![0u64; spec.order.div_ceil(64) as usize];
        Ok(ElementSet {
            spec: spec.clone(),
            words,
        })
    }

    pub fn full(spec: &GroupSpec) -> Result<Self> {
        let mut set = Self::empty(spec)?;
        for i in 0..spec.order {
            set.insert_index(i);
        }
        Ok(set)
    }

    pub fn singleton(g: &GroupElement) -> Result<Self> {
        let mut set = Self::empty(&g.spec)?;
        set.insert_index(g.index());
        Ok(set)
    }

    pub fn from_elements<'a>(
        spec: &GroupSpec,
        elems: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        let mut set = Self::empty(spec)?;
        for g in elems {
            set.insert(g)?;
        }
        Ok(set)
    }

    pub(crate) fn from_indices(spec: &GroupSpec, indices: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = Self::empty(spec)?;
        for i in indices {
            set.insert_index(i);
        }
        Ok(set)
    }

    pub(crate) fn from_words(spec: &GroupSpec, words: Vec<u64>) -> Result<Self> {
        spec.check_set_order()?;
        debug_assert_eq!(words.len(), spec.order.div_ceil(64) as usize);
        Ok(ElementSet {
            spec: spec.clone(),
            words,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.spec.order
    }

    pub fn insert(&mut self, g: &GroupElement) -> Result<()> {
        self.spec.check_same(&g.spec)?;
        self.insert_index(g.index());
        Ok(())
    }

    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        self.spec.check_same(&g.spec)?;
        Ok(self.contains_index(g.index()))
    }

    pub(crate) fn insert_index(&mut self, i: u64) {
        debug_assert!(i < self.spec.order);
        self.words[(i / 64) as usize] |= 1 << (i % 64);
    }

    pub(crate) fn contains_index(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    /// Indices of the members, ascending.
    pub(crate) fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(wi as u64 * 64 + b as u64)
                }
            })
        })
    }

    /// Members in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.indices().map(|i| self.spec.element_at(i))
    }

    /// Smallest member in the canonical order, if any.
    pub fn min_element(&self) -> Option<GroupElement> {
        self.indices().next().map(|i| self.spec.element_at(i))
    }

    /// `{g + a : a ∈ A}`.
    pub fn translate(&self, g: &GroupElement) -> Result<ElementSet> {
        self.spec.check_same(&g.spec)?;
        let gi = g.index();
        let mut out = ElementSet::empty(&self.spec)?;
        for i in self.indices() {
            out.insert_index(self.spec.add_indices(i, gi));
        }
        Ok(out)
    }

    /// `{a + b : a ∈ A, b ∈ B}`.
    pub fn sumset(&self, other: &ElementSet) -> Result<ElementSet> {
        self.spec.check_same(&other.spec)?;
        let mut out = ElementSet::empty(&self.spec)?;
        for a in self.indices() {
            for b in other.indices() {
                out.insert_index(self.spec.add_indices(a, b));
            }
        }
        Ok(out)
    }

    pub fn union(&self, other: &ElementSet) -> Result<ElementSet> {
        self.spec.check_same(&other.spec)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Ok(ElementSet {
            spec: self.spec.clone(),
            words,
        })
    }

    pub fn intersection(&self, other: &ElementSet) -> Result<ElementSet> {
        self.spec.check_same(&other.spec)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Ok(ElementSet {
            spec: self.spec.clone(),
            words,
        })
    }

    /// `G \ A`.
    pub fn complement(&self) -> ElementSet {
        let mut out = ElementSet {
            spec: self.spec.clone(),
            words: self.words.iter().map(|w| !w).collect(),
        };
        // mask off bits beyond the order
        let tail = self.spec.order % 64;
        if tail != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out
    }

    /// Smallest subgroup containing the set: worklist closure under addition.
    /// The empty set spans the trivial subgroup `{0}`.
    pub fn span(&self) -> ElementSet {
        let mut set = ElementSet::empty(&self.spec).expect("set already exists at this order");
        let mut members: Vec<u64> = Vec::new();
        let mut queue: Vec<u64> = vec![0];
        queue.extend(self.indices());
        while let Some(i) = queue.pop() {
            if set.contains_index(i) {
                continue;
            }
            set.insert_index(i);
            members.push(i);
            for &m in &members {
                queue.push(self.spec.add_indices(i, m));
            }
        }
        set
    }

    /// `⟨A⟩* = ⟨A − a⟩` for any `a ∈ A`: the minimal subgroup having `A`
    /// inside one of its cosets. Errors on the empty set.
    pub fn star_span(&self) -> Result<ElementSet> {
        let a0 = self
            .indices()
            .next()
            .ok_or(Error::EmptySet("star-span"))?;
        let neg = self.spec.neg_index(a0);
        let shifted =
            ElementSet::from_indices(&self.spec, self.indices().map(|i| self.spec.add_indices(i, neg)))?;
        Ok(shifted.span())
    }

    /// `𝖧(A) = {g ∈ G : g + A = A}`, a subgroup; `A` is aperiodic iff this is
    /// trivial. Enumerates all of `G`, so the order cap applies.
    pub fn stabilizer(&self) -> Result<ElementSet> {
        self.stabilizer_with(&Budgets::default())
    }

    pub fn stabilizer_with(&self, budgets: &Budgets) -> Result<ElementSet> {
        if self.is_empty() {
            return Err(Error::EmptySet("stabilizer"));
        }
        if self.spec.order > budgets.order_cap {
            return Err(Error::BudgetExceeded(format!(
                "stabilizer over group of order {} exceeds cap {}",
                self.spec.order, budgets.order_cap
            )));
        }
        let mut stab = ElementSet::empty(&self.spec)?;
        'outer: for g in 0..self.spec.order {
            for a in self.indices() {
                if !self.contains_index(self.spec.add_indices(g, a)) {
                    continue 'outer;
                }
            }
            stab.insert_index(g);
        }
        Ok(stab)
    }

    /// Explicit closure check; subgroup status is never trusted from context.
    pub fn is_subgroup(&self) -> bool {
        if !self.contains_index(0) {
            return false;
        }
        let members: Vec<u64> = self.indices().collect();
        for &a in &members {
            for &b in &members {
                if !self.contains_index(self.spec.add_indices(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Partition of the set by cosets of the subgroup `H`, keyed by the
    /// canonical representative (the lexicographically least element of each
    /// coset). Errors when `H` fails the subgroup check.
    pub fn coset_decompose(&self, h: &ElementSet) -> Result<BTreeMap<GroupElement, ElementSet>> {
        self.spec.check_same(&h.spec)?;
        if !h.is_subgroup() {
            return Err(Error::NotSubgroup(format!(
                "coset decomposition by a non-subgroup of {}",
                self.spec
            )));
        }
        let mut classes: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for a in self.indices() {
            let rep = h
                .indices()
                .map(|x| self.spec.add_indices(a, x))
                .min()
                .expect("subgroup is nonempty");
            classes.entry(rep).or_default().push(a);
        }
        let mut out = BTreeMap::new();
        for (rep, members) in classes {
            out.insert(
                self.spec.element_at(rep),
                ElementSet::from_indices(&self.spec, members)?,
            );
        }
        Ok(out)
    }

    /// `|φ_H(A)|`: the number of `H`-cosets the set meets.
    pub fn coset_count(&self, h: &ElementSet) -> Result<u64> {
        Ok(self.coset_decompose(h)?.len() as u64)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, g) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len() as usize))?;
        for g in self.iter() {
            seq.serialize_element(&g)?;
        }
        seq.end()
    }
}
