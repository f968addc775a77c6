//! Multiset sequences over a finite abelian group.
//!
//! A sequence `S = g₁·…·g_l` is an unordered multiset of group elements,
//! stored as multiplicities `v_g(S)`. Provides length, sum `σ(S)`, support,
//! translation `g + S`, `n`-term subsequence sums `Σ_n(S)`, and the zero-sum
//! predicates.
//!
//! Subsequence enumeration iterates multiplicity vectors (`0..=v_g` per
//! distinct term), never index subsets, so the enumeration budget is
//! `Π (v_g + 1)`. Exceeding it is a hard error, never a silent truncation.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupElement, GroupSpec};

/// A finite multiset of elements of one group.
#[derive(Clone, PartialEq, Eq)]
pub struct GSequence {
    spec: GroupSpec,
    /// element index → multiplicity ≥ 1
    mult: BTreeMap<u64, u64>,
}

impl GSequence {
    pub fn empty(spec: &GroupSpec) -> Self {
        GSequence {
            spec: spec.clone(),
            mult: BTreeMap::new(),
        }
    }

    pub fn from_terms<'a>(
        spec: &GroupSpec,
        terms: impl IntoIterator<Item = (&'a GroupElement, u64)>,
    ) -> Result<Self> {
        let mut s = Self::empty(spec);
        for (g, k) in terms {
            s.push(g, k)?;
        }
        Ok(s)
    }

    pub fn from_elements<'a>(
        spec: &GroupSpec,
        elems: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        let mut s = Self::empty(spec);
        for g in elems {
            s.push(g, 1)?;
        }
        Ok(s)
    }

    pub(crate) fn from_index_terms(
        spec: &GroupSpec,
        terms: impl IntoIterator<Item = (u64, u64)>,
    ) -> Self {
        let mut mult = BTreeMap::new();
        for (i, k) in terms {
            debug_assert!(i < spec.order());
            if k > 0 {
                *mult.entry(i).or_insert(0) += k;
            }
        }
        GSequence {
            spec: spec.clone(),
            mult,
        }
    }

    /// Appends `k` copies of `g`.
    pub fn push(&mut self, g: &GroupElement, k: u64) -> Result<()> {
        self.spec.check_same(g.spec())?;
        if k > 0 {
            *self.mult.entry(g.index()).or_insert(0) += k;
        }
        Ok(())
    }

    /// Removes one copy of `g`; errors if `g` does not occur.
    pub fn remove_one(&self, g: &GroupElement) -> Result<GSequence> {
        self.spec.check_same(g.spec())?;
        let mut out = self.clone();
        match out.mult.get_mut(&g.index()) {
            Some(v) if *v > 1 => *v -= 1,
            Some(_) => {
                out.mult.remove(&g.index());
            }
            None => {
                return Err(Error::OutOfRange {
                    what: "term removal",
                    details: format!("{g} does not occur in the sequence"),
                })
            }
        }
        Ok(out)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// `|S| = Σ v_g(S)`.
    pub fn len(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Multiplicity `v_g(S)`.
    pub fn multiplicity(&self, g: &GroupElement) -> u64 {
        if g.spec() != &self.spec {
            return 0;
        }
        self.mult.get(&g.index()).copied().unwrap_or(0)
    }

    /// Maximum multiplicity `h(S)`.
    pub fn max_multiplicity(&self) -> u64 {
        self.mult.values().copied().max().unwrap_or(0)
    }

    /// `supp(S)` as a set.
    pub fn support(&self) -> ElementSet {
        ElementSet::from_indices(&self.spec, self.mult.keys().copied())
            .expect("sequence spec admits sets")
    }

    pub fn support_size(&self) -> u64 {
        self.mult.len() as u64
    }

    /// Distinct terms with multiplicities, in canonical order.
    pub fn distinct_terms(&self) -> impl Iterator<Item = (GroupElement, u64)> + '_ {
        self.mult
            .iter()
            .map(|(&i, &v)| (self.spec.element_at(i), v))
    }

    pub(crate) fn index_terms(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.mult.iter().map(|(&i, &v)| (i, v))
    }

    /// `σ(S) = Σ v_g(S)·g`; the empty sequence sums to 0.
    pub fn sigma(&self) -> GroupElement {
        let mut acc = self.spec.zero();
        for (&i, &v) in &self.mult {
            let term = self.spec.element_at(i).scalar_mul_wide(v as i128);
            acc = acc.add(&term).expect("same spec");
        }
        acc
    }

    /// `g + S`: every term shifted, multiplicity pattern preserved.
    pub fn translate(&self, g: &GroupElement) -> Result<GSequence> {
        self.spec.check_same(g.spec())?;
        let gi = g.index();
        Ok(GSequence::from_index_terms(
            &self.spec,
            self.mult
                .iter()
                .map(|(&i, &v)| (self.spec.add_indices(i, gi), v)),
        ))
    }

    /// `Σ_n(S)`: sums over all `n`-term subsequences, by a
    /// multiplicity-aware DP. Errors when `n > |S|`.
    pub fn sigma_n(&self, n: u64) -> Result<ElementSet> {
        let len = self.len();
        if n > len {
            return Err(Error::OutOfRange {
                what: "subsequence length",
                details: format!("n = {n} exceeds |S| = {len}"),
            });
        }
        let order = self.spec.order();
        let words = order.div_ceil(64) as usize;
        // dp[c] = bitset of sums achievable with exactly c chosen terms
        let mut dp: Vec<Vec<u64>> = vec![vec![0; words]; (n + 1) as usize];
        dp[0][0] |= 1; // empty selection sums to element index 0
        for (&gi, &v) in &self.mult {
            for c in (1..=n).rev() {
                let take_max = v.min(c);
                let mut acc = vec![0u64; words];
                for t in 1..=take_max {
                    let delta = self.spec.scalar_index(t as i128, gi);
                    crate::group::or_translated_words(
                        &self.spec,
                        &dp[(c - t) as usize],
                        delta,
                        &mut acc,
                    );
                }
                for (w, a) in dp[c as usize].iter_mut().zip(&acc) {
                    *w |= a;
                }
            }
        }
        ElementSet::from_indices(
            &self.spec,
            (0..order).filter(|&i| dp[n as usize][(i / 64) as usize] >> (i % 64) & 1 == 1),
        )
    }

    /// `Σ(S)`: union of `Σ_n(S)` over `n ∈ [1, |S|]`.
    pub fn sigma_all(&self) -> Result<ElementSet> {
        let mut out = ElementSet::empty(&self.spec)?;
        for n in 1..=self.len() {
            out = out.union(&self.sigma_n(n)?)?;
        }
        Ok(out)
    }

    /// `σ(S) = 0`.
    pub fn is_zero_sum(&self) -> bool {
        self.sigma().is_zero()
    }

    /// No nonempty subsequence sums to zero.
    pub fn is_zero_sum_free(&self) -> Result<bool> {
        self.is_zero_sum_free_with(&Budgets::default())
    }

    pub fn is_zero_sum_free_with(&self, budgets: &Budgets) -> Result<bool> {
        let mut free = true;
        self.for_each_submultiset(budgets, |count, sum_index| {
            if count > 0 && sum_index == 0 {
                free = false;
            }
        })?;
        Ok(free)
    }

    /// `σ(S) = 0`, `|S| > 0`, and every proper nonempty subsequence is
    /// zero-sum free.
    pub fn is_minimal_zero_sum(&self) -> Result<bool> {
        self.is_minimal_zero_sum_with(&Budgets::default())
    }

    pub fn is_minimal_zero_sum_with(&self, budgets: &Budgets) -> Result<bool> {
        self.check_enum_budget(budgets)?;
        if self.is_empty() || !self.is_zero_sum() {
            return Ok(false);
        }
        let len = self.len();
        let mut minimal = true;
        self.for_each_submultiset(budgets, |count, sum_index| {
            if count > 0 && count < len && sum_index == 0 {
                minimal = false;
            }
        })?;
        Ok(minimal)
    }

    fn check_enum_budget(&self, budgets: &Budgets) -> Result<()> {
        let mut total: u128 = 1;
        for &v in self.mult.values() {
            total = total.saturating_mul(v as u128 + 1);
            if total > budgets.enum_cap as u128 {
                return Err(Error::BudgetExceeded(format!(
                    "sequence has more than {} sub-multisets; too large to verify",
                    budgets.enum_cap
                )));
            }
        }
        Ok(())
    }

    /// Visits every sub-multiset once (including the empty one), reporting
    /// its term count and the element index of its sum. The enumeration is
    /// an odometer over multiplicity vectors; errors when `Π (v_g + 1)`
    /// exceeds the budget.
    pub(crate) fn for_each_submultiset(
        &self,
        budgets: &Budgets,
        mut f: impl FnMut(u64, u64),
    ) -> Result<()> {
        self.check_enum_budget(budgets)?;
        let terms: Vec<(u64, u64)> = self.index_terms().collect();
        // per-digit increments and rollover corrections, as element indices
        let step: Vec<u64> = terms.iter().map(|&(g, _)| g).collect();
        let rollback: Vec<u64> = terms
            .iter()
            .map(|&(g, v)| self.spec.neg_index(self.spec.scalar_index(v as i128, g)))
            .collect();
        let mut digits = vec![0u64; terms.len()];
        let mut count = 0u64;
        let mut sum = 0u64;
        loop {
            f(count, sum);
            let mut pos = 0;
            loop {
                if pos == terms.len() {
                    return Ok(());
                }
                if digits[pos] < terms[pos].1 {
                    digits[pos] += 1;
                    count += 1;
                    sum = self.spec.add_indices(sum, step[pos]);
                    break;
                }
                // digit rolls over from v_g to 0: subtract v_g·g
                count -= digits[pos];
                sum = self.spec.add_indices(sum, rollback[pos]);
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Parses the text shorthand, e.g. `"0^3 1 3"` over `C₄` or
    /// `"0,0^2 1,1"` over `C₂⊕C₄`.
    pub fn parse(spec: &GroupSpec, text: &str) -> Result<GSequence> {
        let mut s = GSequence::empty(spec);
        for token in text.split_whitespace() {
            let (coords_part, mult) = match token.split_once('^') {
                Some((c, m)) => {
                    let mult: u64 = m
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in '{token}'")))?;
                    (c, mult)
                }
                None => (token, 1),
            };
            if mult == 0 {
                return Err(Error::Parse(format!("multiplicity 0 in '{token}'")));
            }
            let coords_part = coords_part
                .trim_start_matches('(')
                .trim_end_matches(')');
            let coords: Vec<i64> = coords_part
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coordinate in '{token}'")))
                })
                .collect::<Result<_>>()?;
            let g = spec.element(&coords)?;
            s.push(&g, mult)?;
        }
        Ok(s)
    }
}

impl fmt::Display for GSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        let mut first = true;
        for (g, v) in self.distinct_terms() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let coords: Vec<String> = g.coords().iter().map(|c| c.to_string()).collect();
            write!(f, "{}", coords.join(","))?;
            if v > 1 {
                write!(f, "^{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for GSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Term(GroupElement, u64);
        impl Serialize for Term {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("elem", &self.0)?;
                map.serialize_entry("mult", &self.1)?;
                map.end()
            }
        }
        struct Terms<'a>(&'a GSequence);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.support_size() as usize))?;
                for (g, v) in self.0.distinct_terms() {
                    seq.serialize_element(&Term(g, v))?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("GSequence", 2)?;
        st.serialize_field("group", &self.spec)?;
        st.serialize_field("terms", &Terms(self))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct RawTerm {
            elem: Vec<i64>,
            mult: u64,
        }
        #[derive(Deserialize)]
        struct Raw {
            group: GroupSpec,
            terms: Vec<RawTerm>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut s = GSequence::empty(&raw.group);
        for t in raw.terms {
            let g = raw.group.element(&t.elem).map_err(D::Error::custom)?;
            if t.mult == 0 {
                return Err(D::Error::custom("term multiplicity must be positive"));
            }
            s.push(&g, t.mult).map_err(D::Error::custom)?;
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(spec: &GroupSpec, terms: &[(i64, u64)]) -> GSequence {
        let mut s = GSequence::empty(spec);
        for &(c, v) in terms {
            s.push(&spec.element(&[c]).unwrap(), v).unwrap();
        }
        s
    }

    #[test]
    fn sigma_examples() {
        let c6 = GroupSpec::cyclic(6).unwrap();
        assert!(GSequence::empty(&c6).sigma().is_zero());
        // 0^(n-2)·g·(-g) sums to zero
        for g in 1..6i64 {
            let s = GSequence::from_terms(
                &c6,
                [
                    (&c6.element(&[0]).unwrap(), 4),
                    (&c6.element(&[g]).unwrap(), 1),
                    (&c6.element(&[-g]).unwrap(), 1),
                ],
            )
            .unwrap();
            assert!(s.is_zero_sum());
        }
        let s = seq(&c6, &[(1, 2), (3, 1)]);
        assert_eq!(s.sigma(), c6.element(&[5]).unwrap());
    }

    #[test]
    fn translate_examples() {
        let c4 = GroupSpec::cyclic(4).unwrap();
        let s = seq(&c4, &[(0, 3), (2, 1)]);
        assert_eq!(s.translate(&c4.zero()).unwrap(), s);
        let shifted = s.translate(&c4.element(&[1]).unwrap()).unwrap();
        assert_eq!(shifted, seq(&c4, &[(1, 3), (3, 1)]));
        for g in c4.elements() {
            let t = s.translate(&g).unwrap();
            assert_eq!(t.max_multiplicity(), s.max_multiplicity());
            assert_eq!(t.len(), s.len());
            // σ(g + S) = σ(S) + |S|·g
            assert_eq!(
                t.sigma(),
                s.sigma()
                    .add(&g.scalar_mul(s.len() as i64))
                    .unwrap()
            );
        }
    }

    #[test]
    fn sigma_n_examples() {
        let c4 = GroupSpec::cyclic(4).unwrap();
        let s = seq(&c4, &[(0, 1), (1, 1), (2, 1)]);
        let zero_only = ElementSet::from_elements(&c4, &[c4.zero()]).unwrap();
        assert_eq!(s.sigma_n(0).unwrap(), zero_only);
        let expect = ElementSet::from_indices(&c4, [1, 2, 3]).unwrap();
        assert_eq!(s.sigma_n(2).unwrap(), expect);
        assert_eq!(
            s.sigma_n(3).unwrap(),
            ElementSet::singleton(&s.sigma()).unwrap()
        );
        assert!(s.sigma_n(4).is_err());
    }

    #[test]
    fn sigma_n_matches_naive_subset_enumeration() {
        // expand to an explicit term list and enumerate index subsets
        for moduli in [vec![5], vec![2, 4], vec![3, 3]] {
            let spec = GroupSpec::new(moduli).unwrap();
            let order = spec.order();
            let terms: Vec<u64> = (0..10).map(|k| (k * k + 3 * k + 1) % order).collect();
            let s = GSequence::from_index_terms(&spec, terms.iter().map(|&i| (i, 1)));
            let s = {
                // fold duplicates through the multiset
                let mut m = GSequence::empty(&spec);
                for &i in &terms {
                    m.push(&spec.element_at(i), 1).unwrap();
                }
                assert_eq!(m, s);
                m
            };
            for n in 0..=terms.len() as u64 {
                let mut expect = ElementSet::empty(&spec).unwrap();
                for mask in 0u32..1 << terms.len() {
                    if mask.count_ones() as u64 != n {
                        continue;
                    }
                    let mut sum = 0u64;
                    for (k, &t) in terms.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            sum = spec.add_indices(sum, t);
                        }
                    }
                    expect.insert_index(sum);
                }
                assert_eq!(s.sigma_n(n).unwrap(), expect, "n = {n}");
            }
        }
    }

    #[test]
    fn zero_sum_predicates() {
        let c6 = GroupSpec::cyclic(6).unwrap();
        for g in 1..6i64 {
            let s = seq(&c6, &[(g, 1), (-g, 1)]);
            assert!(s.is_minimal_zero_sum().unwrap());
        }
        let with_zero = seq(&c6, &[(0, 1), (2, 1)]);
        assert!(!with_zero.is_minimal_zero_sum().unwrap());

        let klein = GroupSpec::new(vec![2, 2]).unwrap();
        let s = GSequence::from_elements(
            &klein,
            &[
                klein.element(&[1, 0]).unwrap(),
                klein.element(&[0, 1]).unwrap(),
                klein.element(&[1, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert!(s.is_minimal_zero_sum().unwrap());
    }

    #[test]
    fn zero_sum_free_iff_zero_not_in_sigma_all() {
        let spec = GroupSpec::new(vec![2, 4]).unwrap();
        let mut checked = 0;
        for a in 0..spec.order() {
            for b in 0..spec.order() {
                for c in 0..spec.order() {
                    let s = GSequence::from_index_terms(&spec, [(a, 1), (b, 1), (c, 1)]);
                    let free = s.is_zero_sum_free().unwrap();
                    let sums = s.sigma_all().unwrap();
                    assert_eq!(free, !sums.contains_index(0));
                    assert!(sums.contains(&s.sigma()).unwrap());
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 512);
    }

    #[test]
    fn enumeration_budget_is_a_hard_error() {
        let c6 = GroupSpec::cyclic(6).unwrap();
        let s = seq(&c6, &[(1, 7), (2, 7)]);
        let tight = Budgets {
            enum_cap: 32,
            ..Budgets::default()
        };
        assert!(matches!(
            s.is_minimal_zero_sum_with(&tight),
            Err(Error::BudgetExceeded(_))
        ));
        // same sequence passes with the default budget
        assert!(s.is_minimal_zero_sum_with(&Budgets::default()).is_ok());
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let c4 = GroupSpec::cyclic(4).unwrap();
        let s = GSequence::parse(&c4, "0^3 1 3").unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.multiplicity(&c4.zero()), 3);
        assert_eq!(format!("{s}"), "0^3 1 3");

        let spec = GroupSpec::new(vec![2, 4]).unwrap();
        let t = GSequence::parse(&spec, "0,0^2 1,1").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(GSequence::parse(&spec, &format!("{t}")).unwrap(), t);
        assert!(GSequence::parse(&c4, "0^x").is_err());
        assert!(GSequence::parse(&c4, "0^0").is_err());
    }

    #[test]
    fn json_schema_roundtrip() {
        let spec = GroupSpec::new(vec![2, 4]).unwrap();
        let s = GSequence::parse(&spec, "0,0^2 1,1").unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"group":{"moduli":[2,4]},"terms":[{"elem":[0,0],"mult":2},{"elem":[1,1],"mult":1}]}"#
        );
        let back: GSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
