//! Weighted restricted sumsets `W ⊙ S`.
//!
//! `W ⊙ S = {w₁g₁ + … + w_r g_r}` over all `r`-term subsequences
//! `w₁·…·w_r | W` and `g₁·…·g_r | S`, matched bijectively, with
//! `r = min(|W|, |S|)`. Computation normalizes by zero-padding,
//! `W ⊙ S = (W·0^{|S|−r}) ⊙ (S·0^{|W|−r})`, and then runs a DP over bitmasks
//! of weight positions: distinct terms of `S` are processed in canonical
//! order, each consuming `v_g` of the remaining positions, which collapses
//! the permutation symmetry among equal terms. Positions holding equal
//! weights are interchangeable, so each run of equal weights only ever uses
//! its lowest free positions.
//!
//! [`odot_naive`] enumerates subsequences and permutations directly from the
//! definition and serves as the independent oracle for the DP.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::group::{or_translated_words, ElementSet, GroupElement, GroupSpec};
use crate::sequence::GSequence;

/// A finite multiset of integer weights.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightSeq {
    mult: BTreeMap<i64, u64>,
}

impl WeightSeq {
    pub fn empty() -> Self {
        WeightSeq {
            mult: BTreeMap::new(),
        }
    }

    pub fn from_weights(weights: &[i64]) -> Self {
        let mut w = Self::empty();
        for &x in weights {
            w.push(x, 1);
        }
        w
    }

    /// `(start)(start+1)·…·(start+len−1)`, all multiplicities 1.
    pub fn consecutive_run(start: i64, len: u64) -> Result<Self> {
        if len > 0 {
            start
                .checked_add((len - 1) as i64)
                .ok_or_else(|| Error::OutOfRange {
                    what: "weight run",
                    details: format!("run of length {len} from {start} overflows i64"),
                })?;
        }
        let mut w = Self::empty();
        for k in 0..len as i64 {
            w.push(start + k, 1);
        }
        Ok(w)
    }

    pub fn push(&mut self, weight: i64, k: u64) {
        if k > 0 {
            *self.mult.entry(weight).or_insert(0) += k;
        }
    }

    pub fn len(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn multiplicity(&self, weight: i64) -> u64 {
        self.mult.get(&weight).copied().unwrap_or(0)
    }

    /// `σ(W)` as an exact integer.
    pub fn sigma(&self) -> i128 {
        self.mult
            .iter()
            .map(|(&w, &v)| w as i128 * v as i128)
            .sum()
    }

    /// `W + w`: every weight shifted.
    pub fn shifted(&self, w: i64) -> Result<WeightSeq> {
        let mut out = Self::empty();
        for (&x, &v) in &self.mult {
            let shifted = x.checked_add(w).ok_or_else(|| Error::OutOfRange {
                what: "weight shift",
                details: format!("{x} + {w} overflows i64"),
            })?;
            out.push(shifted, v);
        }
        Ok(out)
    }

    pub fn distinct(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.mult.iter().map(|(&w, &v)| (w, v))
    }

    /// Sorted expansion with repeats.
    pub fn expand(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len() as usize);
        for (&w, &v) in &self.mult {
            for _ in 0..v {
                out.push(w);
            }
        }
        out
    }

    /// Parses `"a..b"` (half-open), `"a..=b"` (inclusive), or a
    /// comma/space-separated list with optional `^mult` suffixes.
    pub fn parse(text: &str) -> Result<WeightSeq> {
        let text = text.trim();
        if let Some((lo, hi)) = split_range(text) {
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad range start in '{text}'")))?;
            let (hi, inclusive) = match hi.strip_prefix('=') {
                Some(rest) => (rest, true),
                None => (hi, false),
            };
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad range end in '{text}'")))?;
            let end = if inclusive { hi + 1 } else { hi };
            if end < lo {
                return Err(Error::Parse(format!("empty weight range '{text}'")));
            }
            return WeightSeq::consecutive_run(lo, (end - lo) as u64);
        }
        let mut w = Self::empty();
        for token in text.split(|c| c == ',' || c == ' ').filter(|t| !t.is_empty()) {
            let (value, mult) = match token.split_once('^') {
                Some((v, m)) => {
                    let mult: u64 = m
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in '{token}'")))?;
                    (v, mult)
                }
                None => (token, 1),
            };
            if mult == 0 {
                return Err(Error::Parse(format!("multiplicity 0 in '{token}'")));
            }
            let value: i64 = value
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight '{token}'")))?;
            w.push(value, mult);
        }
        Ok(w)
    }
}

/// Splits `"a..b"` at the range dots, leaving negative signs intact.
fn split_range(text: &str) -> Option<(&str, &str)> {
    let pos = text.find("..")?;
    Some((&text[..pos], &text[pos + 2..]))
}

impl fmt::Display for WeightSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        let mut first = true;
        for (w, v) in self.distinct() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{w}")?;
            if v > 1 {
                write!(f, "^{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeightSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for WeightSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let expanded = self.expand();
        let mut seq = serializer.serialize_seq(Some(expanded.len()))?;
        for w in expanded {
            seq.serialize_element(&w)?;
        }
        seq.end()
    }
}

/// `W ⊙ S` with default budgets.
pub fn odot(w: &WeightSeq, s: &GSequence) -> Result<ElementSet> {
    odot_with(w, s, &Budgets::default())
}

/// `W ⊙ S` via the bitmask DP. Errors when the padded length exceeds the
/// mask budget.
pub fn odot_with(w: &WeightSeq, s: &GSequence, budgets: &Budgets) -> Result<ElementSet> {
    let terms: Vec<(u64, u64)> = s.index_terms().collect();
    let words = odot_kernel(s.spec(), &w.expand(), &terms, budgets)?;
    ElementSet::from_words(s.spec(), words)
}

/// `W ⊙ S` by direct enumeration of subsequences and bijections; the test
/// oracle for [`odot`].
pub fn odot_naive(w: &WeightSeq, s: &GSequence) -> Result<ElementSet> {
    odot_naive_with(w, s, &Budgets::default())
}

pub fn odot_naive_with(w: &WeightSeq, s: &GSequence, budgets: &Budgets) -> Result<ElementSet> {
    let spec = s.spec();
    let ws = w.expand();
    let gs: Vec<u64> = {
        let mut v = Vec::new();
        for (i, k) in s.index_terms() {
            for _ in 0..k {
                v.push(i);
            }
        }
        v
    };
    let r = ws.len().min(gs.len());
    if r as u64 > budgets.perm_cap {
        return Err(Error::BudgetExceeded(format!(
            "naive oracle over r = {r} matched terms; budget is {}",
            budgets.perm_cap
        )));
    }
    let work = binom(ws.len() as u128, r as u128)
        .saturating_mul(binom(gs.len() as u128, r as u128))
        .saturating_mul(factorial(r as u128));
    if work > 100_000_000 {
        return Err(Error::BudgetExceeded(format!(
            "naive oracle needs ~{work} assignments"
        )));
    }
    let mut out = ElementSet::empty(spec)?;
    if r == 0 {
        out.insert_index(0); // empty-sum convention
        return Ok(out);
    }
    let mut w_sel = Vec::with_capacity(r);
    for_each_combination(ws.len(), r, &mut w_sel, &mut |w_sel| {
        let mut s_sel = Vec::with_capacity(r);
        for_each_combination(gs.len(), r, &mut s_sel, &mut |s_sel| {
            assign_all(spec, &ws, &gs, w_sel, s_sel, 0, 0, 0, &mut out);
        });
    });
    Ok(out)
}

/// All bijections between the selected weights and the selected terms.
#[allow(clippy::too_many_arguments)]
fn assign_all(
    spec: &GroupSpec,
    ws: &[i64],
    gs: &[u64],
    w_sel: &[usize],
    s_sel: &[usize],
    t: usize,
    used: u32,
    sum_index: u64,
    out: &mut ElementSet,
) {
    if t == s_sel.len() {
        out.insert_index(sum_index);
        return;
    }
    for (k, &wi) in w_sel.iter().enumerate() {
        if used >> k & 1 == 1 {
            continue;
        }
        let delta = spec.scalar_index(ws[wi] as i128, gs[s_sel[t]]);
        assign_all(
            spec,
            ws,
            gs,
            w_sel,
            s_sel,
            t + 1,
            used | 1 << k,
            spec.add_indices(sum_index, delta),
            out,
        );
    }
}

fn for_each_combination(n: usize, k: usize, scratch: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, scratch: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if scratch.len() == k {
            f(scratch);
            return;
        }
        let need = k - scratch.len();
        for i in start..=n.saturating_sub(need) {
            scratch.push(i);
            rec(n, k, i + 1, scratch, f);
            scratch.pop();
        }
    }
    scratch.clear();
    rec(n, k, 0, scratch, f);
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn factorial(n: u128) -> u128 {
    (1..=n).fold(1u128, |acc, i| acc.saturating_mul(i))
}

/// Checks `(W + w) ⊙ S = W ⊙ S + w·σ(S)`. Refuses unless `|W| ≥ |S|`, where
/// the identity is asserted.
pub fn check_weight_shift(
    w: &WeightSeq,
    s: &GSequence,
    shift: i64,
    budgets: &Budgets,
) -> Result<bool> {
    if w.len() < s.len() {
        return Err(Error::NotApplicable(format!(
            "weight-shift identity needs |W| ≥ |S|, got {} < {}",
            w.len(),
            s.len()
        )));
    }
    let lhs = odot_with(&w.shifted(shift)?, s, budgets)?;
    let delta = s.sigma().scalar_mul(shift);
    let rhs = odot_with(w, s, budgets)?.translate(&delta)?;
    Ok(lhs == rhs)
}

/// Checks `W ⊙ (S + g) = W ⊙ S + σ(W)·g`. Refuses unless `|S| ≥ |W|`.
pub fn check_term_shift(
    w: &WeightSeq,
    s: &GSequence,
    g: &GroupElement,
    budgets: &Budgets,
) -> Result<bool> {
    if s.len() < w.len() {
        return Err(Error::NotApplicable(format!(
            "term-shift identity needs |S| ≥ |W|, got {} < {}",
            s.len(),
            w.len()
        )));
    }
    let lhs = odot_with(w, &s.translate(g)?, budgets)?;
    let delta = g.scalar_mul_wide(w.sigma());
    let rhs = odot_with(w, s, budgets)?.translate(&delta)?;
    Ok(lhs == rhs)
}

/// Core DP shared by the public entry point and the verification campaigns.
/// Takes the raw (unpadded) weight expansion and `(element index, mult)`
/// terms; returns the result as bitset words over `G`.
pub(crate) fn odot_kernel(
    spec: &GroupSpec,
    weights: &[i64],
    terms: &[(u64, u64)],
    budgets: &Budgets,
) -> Result<Vec<u64>> {
    let wn = weights.len() as u64;
    let sn: u64 = terms.iter().map(|&(_, v)| v).sum();
    let padded = wn.max(sn);
    if padded > budgets.mask_bits as u64 || padded > 63 {
        return Err(Error::BudgetExceeded(format!(
            "W ⊙ S needs {padded} weight positions after padding, budget is {}",
            budgets.mask_bits.min(63)
        )));
    }
    let order = spec.order();
    let set_words = order.div_ceil(64) as usize;
    let l = padded as usize;
    if l == 0 {
        let mut words = vec![0u64; set_words];
        words[0] |= 1;
        return Ok(words);
    }

    let mut ws = weights.to_vec();
    ws.resize(l, 0); // zero-pad the weights when |S| > |W|
    ws.sort_unstable();

    // zero-pad the sequence when |W| > |S|, merging with an existing 0 term
    let pad = padded - sn;
    let mut padded_terms: Vec<(u64, u64)> = Vec::with_capacity(terms.len() + 1);
    let zero_mult = pad + terms.iter().find(|&&(i, _)| i == 0).map_or(0, |&(_, v)| v);
    if zero_mult > 0 {
        padded_terms.push((0, zero_mult));
    }
    padded_terms.extend(terms.iter().filter(|&&(i, _)| i != 0));

    // runs of equal weights: interchangeable positions
    let mut runs: Vec<(u32, u32, i64)> = Vec::new();
    for (pos, &w) in ws.iter().enumerate() {
        match runs.last_mut() {
            Some(r) if r.2 == w => r.1 += 1,
            _ => runs.push((pos as u32, 1, w)),
        }
    }

    if order <= 64 && l <= 20 {
        let bits = odot_dense(spec, &runs, &padded_terms, l);
        let mut words = vec![0u64; set_words];
        words[0] = bits;
        Ok(words)
    } else {
        odot_sparse(spec, &runs, &padded_terms, l, set_words)
    }
}

/// Distributes `remaining` picks over the weight runs, lowest free positions
/// first within each run. Emits the picked position mask and the picked
/// weight sum.
fn distribute(
    runs: &[(u32, u32, i64)],
    free: &[u32],
    used: &[u32],
    suffix_free: &[u64],
    ri: usize,
    remaining: u64,
    acc_mask: u64,
    acc_sum: i128,
    emit: &mut impl FnMut(u64, i128),
) {
    if remaining == 0 {
        emit(acc_mask, acc_sum);
        return;
    }
    if ri == runs.len() || suffix_free[ri] < remaining {
        return;
    }
    let (start, _, weight) = runs[ri];
    let max_take = (free[ri] as u64).min(remaining);
    for t in 0..=max_take {
        let bits = ((1u64 << t) - 1) << (start as u64 + used[ri] as u64);
        distribute(
            runs,
            free,
            used,
            suffix_free,
            ri + 1,
            remaining - t,
            acc_mask | bits,
            acc_sum + t as i128 * weight as i128,
            emit,
        );
    }
}

/// Dense DP: group order ≤ 64 (one-word value bitsets) and ≤ 20 positions
/// (flat arrays indexed by mask).
fn odot_dense(spec: &GroupSpec, runs: &[(u32, u32, i64)], terms: &[(u64, u64)], l: usize) -> u64 {
    let order = spec.order() as usize;
    let mut add_tab = vec![0u8; order * order];
    for i in 0..order {
        for j in 0..order {
            add_tab[i * order + j] = spec.add_indices(i as u64, j as u64) as u8;
        }
    }
    let size = 1usize << l;
    let occ_words = size.div_ceil(64);
    let mut cur_val = vec![0u64; size];
    let mut cur_occ = vec![0u64; occ_words];
    let mut next_val = vec![0u64; size];
    let mut next_occ = vec![0u64; occ_words];
    cur_val[0] = 1; // only the empty partial sum, at mask 0
    cur_occ[0] = 1;

    let nruns = runs.len();
    let mut free = vec![0u32; nruns];
    let mut used = vec![0u32; nruns];
    let mut suffix_free = vec![0u64; nruns + 1];

    for &(gi, v) in terms {
        let g_ord = spec.element_at(gi).order() as usize;
        let mut mults = vec![0u8; g_ord];
        for t in 1..g_ord {
            mults[t] = add_tab[mults[t - 1] as usize * order + gi as usize];
        }
        next_occ.iter_mut().for_each(|w| *w = 0);
        for owi in 0..occ_words {
            let mut occw = cur_occ[owi];
            while occw != 0 {
                let b = occw.trailing_zeros() as usize;
                occw &= occw - 1;
                let mask = (owi * 64 + b) as u64;
                let bits = cur_val[mask as usize];
                for (ri, &(start, len, _)) in runs.iter().enumerate() {
                    let u = (mask >> start & ((1u64 << len) - 1)).count_ones();
                    used[ri] = u;
                    free[ri] = len - u;
                }
                for ri in (0..nruns).rev() {
                    suffix_free[ri] = suffix_free[ri + 1] + free[ri] as u64;
                }
                distribute(
                    runs,
                    &free,
                    &used,
                    &suffix_free,
                    0,
                    v,
                    mask,
                    0,
                    &mut |nm, csum| {
                        let delta =
                            mults[csum.rem_euclid(g_ord as i128) as usize] as usize;
                        let mut nb = 0u64;
                        let mut bb = bits;
                        while bb != 0 {
                            let i = bb.trailing_zeros() as usize;
                            bb &= bb - 1;
                            nb |= 1u64 << add_tab[i * order + delta];
                        }
                        let owi = (nm / 64) as usize;
                        let obit = 1u64 << (nm % 64);
                        if next_occ[owi] & obit == 0 {
                            next_occ[owi] |= obit;
                            next_val[nm as usize] = nb;
                        } else {
                            next_val[nm as usize] |= nb;
                        }
                    },
                );
            }
        }
        std::mem::swap(&mut cur_val, &mut next_val);
        std::mem::swap(&mut cur_occ, &mut next_occ);
    }
    debug_assert!(cur_occ[(size - 1) / 64] >> ((size - 1) % 64) & 1 == 1);
    cur_val[size - 1]
}

/// Sparse DP for larger groups or longer weight sequences.
fn odot_sparse(
    spec: &GroupSpec,
    runs: &[(u32, u32, i64)],
    terms: &[(u64, u64)],
    l: usize,
    set_words: usize,
) -> Result<Vec<u64>> {
    let mut cur: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut start_bits = vec![0u64; set_words];
    start_bits[0] = 1;
    cur.insert(0, start_bits);

    let nruns = runs.len();
    let mut free = vec![0u32; nruns];
    let mut used = vec![0u32; nruns];
    let mut suffix_free = vec![0u64; nruns + 1];

    for &(gi, v) in terms {
        let g_ord = spec.element_at(gi).order();
        let mut mults = vec![0u64; g_ord as usize];
        for t in 1..g_ord as usize {
            mults[t] = spec.add_indices(mults[t - 1], gi);
        }
        let mut next: HashMap<u64, Vec<u64>> = HashMap::with_capacity(cur.len());
        for (&mask, bits) in &cur {
            for (ri, &(start, len, _)) in runs.iter().enumerate() {
                let u = (mask >> start & ((1u64 << len) - 1)).count_ones();
                used[ri] = u;
                free[ri] = len - u;
            }
            for ri in (0..nruns).rev() {
                suffix_free[ri] = suffix_free[ri + 1] + free[ri] as u64;
            }
            distribute(
                runs,
                &free,
                &used,
                &suffix_free,
                0,
                v,
                mask,
                0,
                &mut |nm, csum| {
                    let delta = mults[csum.rem_euclid(g_ord as i128) as usize];
                    let entry = next.entry(nm).or_insert_with(|| vec![0u64; set_words]);
                    or_translated_words(spec, bits, delta, entry);
                },
            );
        }
        cur = next;
    }
    let full = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    cur.remove(&full)
        .ok_or_else(|| Error::TheoremViolation("odot DP lost its final state".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn set(spec: &GroupSpec, idx: &[u64]) -> ElementSet {
        let elems: Vec<GroupElement> = idx.iter().map(|&i| spec.element_at(i)).collect();
        ElementSet::from_elements(spec, &elems).unwrap()
    }

    #[test]
    fn run_constructor_and_parse() {
        let w = WeightSeq::consecutive_run(0, 4).unwrap();
        assert_eq!(w.expand(), vec![0, 1, 2, 3]);
        assert_eq!(WeightSeq::parse("0..4").unwrap(), w);
        assert_eq!(WeightSeq::parse("0..=3").unwrap(), w);
        assert_eq!(WeightSeq::parse("0,1,2,3").unwrap(), w);
        assert_eq!(WeightSeq::parse("-2..=2").unwrap().expand(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(WeightSeq::parse("5^2 -1").unwrap().expand(), vec![-1, 5, 5]);
        assert!(WeightSeq::parse("3..1").is_err());
        assert_eq!(w.sigma(), 6);
    }

    #[test]
    fn odot_single_assignments() {
        let c7 = cyc(7);
        let g = c7.element(&[1]).unwrap();
        let s = GSequence::from_elements(&c7, &[g]).unwrap();
        assert_eq!(
            odot(&WeightSeq::from_weights(&[0]), &s).unwrap(),
            set(&c7, &[0])
        );
        assert_eq!(
            odot(&WeightSeq::from_weights(&[5]), &s).unwrap(),
            set(&c7, &[5])
        );
    }

    #[test]
    fn odot_full_length_examples() {
        // run(3) ⊙ 0·1·2 over C₃ misses exactly the zero element
        let c3 = cyc(3);
        let s = GSequence::parse(&c3, "0 1 2").unwrap();
        let w = WeightSeq::consecutive_run(0, 3).unwrap();
        assert_eq!(odot(&w, &s).unwrap(), set(&c3, &[1, 2]));

        // run(4) ⊙ (all four elements) over the Klein group misses exactly 0
        let klein = GroupSpec::new(vec![2, 2]).unwrap();
        let s: GSequence =
            GSequence::from_elements(&klein, &klein.elements().collect::<Vec<_>>()).unwrap();
        let w = WeightSeq::consecutive_run(0, 4).unwrap();
        let got = odot(&w, &s).unwrap();
        assert_eq!(got, set(&klein, &[1, 2, 3]));

        let c5 = cyc(5);
        let s = GSequence::parse(&c5, "0 1^2").unwrap();
        let w = WeightSeq::consecutive_run(0, 3).unwrap();
        assert_eq!(odot(&w, &s).unwrap(), set(&c5, &[1, 2, 3]));
        assert_eq!(odot_naive(&w, &s).unwrap(), set(&c5, &[1, 2, 3]));
    }

    #[test]
    fn odot_empty_conventions() {
        let c5 = cyc(5);
        let empty = GSequence::empty(&c5);
        let w = WeightSeq::from_weights(&[1, 2]);
        assert_eq!(odot(&w, &empty).unwrap(), set(&c5, &[0]));
        assert_eq!(odot_naive(&w, &empty).unwrap(), set(&c5, &[0]));
        let s = GSequence::parse(&c5, "3").unwrap();
        assert_eq!(odot(&WeightSeq::empty(), &s).unwrap(), set(&c5, &[0]));
        assert_eq!(
            odot(&WeightSeq::empty(), &empty).unwrap(),
            set(&c5, &[0])
        );
    }

    #[test]
    fn padding_invariance() {
        let c6 = cyc(6);
        let s = GSequence::parse(&c6, "1 2 4^2").unwrap();
        for wlen in 0..7u64 {
            let w = WeightSeq::consecutive_run(1, wlen).unwrap();
            let r = wlen.min(s.len());
            let mut w_padded = w.clone();
            w_padded.push(0, s.len().saturating_sub(r));
            let mut s_padded = s.clone();
            s_padded.push(&c6.zero(), wlen.saturating_sub(r)).unwrap();
            assert_eq!(
                odot(&w, &s).unwrap(),
                odot(&w_padded, &s_padded).unwrap(),
                "wlen = {wlen}"
            );
        }
    }

    #[test]
    fn dp_matches_naive_on_small_mixed_instances() {
        let specs = [cyc(5), cyc(6), GroupSpec::new(vec![2, 4]).unwrap()];
        let weight_sets: Vec<WeightSeq> = vec![
            WeightSeq::from_weights(&[0, 1, 2]),
            WeightSeq::from_weights(&[-1, -1, 3]),
            WeightSeq::from_weights(&[2, 2, 2, 5]),
            WeightSeq::from_weights(&[7]),
            WeightSeq::consecutive_run(-3, 5).unwrap(),
        ];
        for spec in &specs {
            let order = spec.order();
            let seqs = [
                GSequence::from_index_terms(spec, [(0, 2), (1 % order, 1)]),
                GSequence::from_index_terms(spec, [(1 % order, 3)]),
                GSequence::from_index_terms(spec, [(0, 1), (2 % order, 2), (3 % order, 1)]),
            ];
            for w in &weight_sets {
                for s in &seqs {
                    assert_eq!(
                        odot(w, s).unwrap(),
                        odot_naive(w, s).unwrap(),
                        "spec {spec}, W = {w}, S = {s}"
                    );
                }
            }
        }
    }

    #[test]
    fn sparse_path_agrees_with_naive() {
        // order 70 > 64 forces the sparse kernel
        let c70 = cyc(70);
        let s = GSequence::parse(&c70, "0 1^2 33").unwrap();
        let w = WeightSeq::consecutive_run(0, 4).unwrap();
        assert_eq!(odot(&w, &s).unwrap(), odot_naive(&w, &s).unwrap());
        // 21 padded positions forces the sparse kernel on a small group
        let c5 = cyc(5);
        let s = GSequence::from_index_terms(&c5, [(1, 21)]);
        let w = WeightSeq::from_weights(&[3]);
        assert_eq!(odot(&w, &s).unwrap(), odot_naive(&w, &s).unwrap());
    }

    #[test]
    fn mask_budget_is_enforced() {
        let c5 = cyc(5);
        let s = GSequence::from_index_terms(&c5, [(1, 30)]);
        let w = WeightSeq::from_weights(&[3]);
        assert!(matches!(
            odot(&w, &s),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn weight_shift_identity_example() {
        // (W+1) ⊙ S = W ⊙ S + σ(S) over C₅ with S = 0·1·1
        let c5 = cyc(5);
        let s = GSequence::parse(&c5, "0 1^2").unwrap();
        let w = WeightSeq::consecutive_run(0, 3).unwrap();
        let b = Budgets::default();
        assert!(check_weight_shift(&w, &s, 1, &b).unwrap());
        let lhs = odot(&w.shifted(1).unwrap(), &s).unwrap();
        assert_eq!(lhs, set(&c5, &[0, 3, 4]));
        assert!(check_weight_shift(&w, &s, 0, &b).unwrap());
        for shift in -4..=4 {
            assert!(check_weight_shift(&w, &s, shift, &b).unwrap());
        }
    }

    #[test]
    fn term_shift_identity_example() {
        // W ⊙ (S+1) = W ⊙ S + σ(W)·1 = {1,2,3} + 3 over C₅
        let c5 = cyc(5);
        let s = GSequence::parse(&c5, "0 1^2").unwrap();
        let w = WeightSeq::consecutive_run(0, 3).unwrap();
        let b = Budgets::default();
        let one = c5.element(&[1]).unwrap();
        assert!(check_term_shift(&w, &s, &one, &b).unwrap());
        let lhs = odot(&w, &s.translate(&one).unwrap()).unwrap();
        assert_eq!(lhs, set(&c5, &[4, 0, 1]));
        assert!(check_term_shift(&w, &s, &c5.zero(), &b).unwrap());
    }

    #[test]
    fn shift_checkers_refuse_wrong_lengths() {
        let c5 = cyc(5);
        let s = GSequence::parse(&c5, "0 1 2 3").unwrap();
        let w = WeightSeq::consecutive_run(0, 3).unwrap();
        let b = Budgets::default();
        assert!(matches!(
            check_weight_shift(&w, &s, 1, &b),
            Err(Error::NotApplicable(_))
        ));
        let s2 = GSequence::parse(&c5, "0 1").unwrap();
        assert!(matches!(
            check_term_shift(&w, &s2, &c5.zero(), &b),
            Err(Error::NotApplicable(_))
        ));
    }
}
