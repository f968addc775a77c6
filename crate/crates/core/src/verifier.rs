//! Coverage verification for consecutive-weight sumsets.
//!
//! For `W` a run of `|S|` consecutive integers and `S` a sequence whose
//! terms do not all lie in a coset of a proper subgroup:
//!
//! * `|W ⊙ S| ≥ min(|G| − 1, |S|)`;
//! * `|S| ≥ |G| + 1` forces `W ⊙ S = G`, witnessed by a length-`|G|`
//!   subsequence `S'` with `(0)(1)…(|G|−1) ⊙ S' = G`;
//! * at `|S| = |G|` the failures of `W ⊙ S = G` are exactly two structural
//!   families, detected by [`classify_full_length`] without computing any
//!   sumset: the square-free full-support sequence over `C₂ ⊕ C₂` (missing
//!   exactly 0), and translates `g' + 0^{|G|−2}·g·(−g)` with `ord(g) = |G|`
//!   (missing exactly `½(|G|−1)|G|·g'`).
//!
//! [`verify_group`] checks all of this exhaustively over every admissible
//! sequence up to a given length. Classification is purely structural, so
//! any disagreement with the computed sumset would falsify the law; the
//! verifier records such disagreements as hard failures.

use serde::Serialize;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupElement, GroupSpec};
use crate::sequence::GSequence;
use crate::weights::{odot_kernel, odot_with, WeightSeq};

/// Verdict for a full-length (`|S| = |G|`) sequence.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classification {
    /// `W ⊙ S = G`.
    Full,
    /// `G ≅ C₂ ⊕ C₂` with `S` square-free of support 4; the sumset misses
    /// exactly 0.
    ExceptionKlein { predicted_missing: GroupElement },
    /// `G` cyclic with `(−g' + S) = 0^{|G|−2}·g·(−g)`, `ord(g) = |G|`; the
    /// sumset misses exactly `½(|G|−1)|G|·g'`.
    ExceptionCyclic {
        g: GroupElement,
        g_prime: GroupElement,
        predicted_missing: GroupElement,
    },
    /// The preconditions do not hold for this sequence.
    NotApplicable { reason: String },
}

impl Classification {
    pub fn is_exception(&self) -> bool {
        matches!(
            self,
            Classification::ExceptionKlein { .. } | Classification::ExceptionCyclic { .. }
        )
    }

    pub fn predicted_missing(&self) -> Option<&GroupElement> {
        match self {
            Classification::ExceptionKlein { predicted_missing }
            | Classification::ExceptionCyclic {
                predicted_missing, ..
            } => Some(predicted_missing),
            _ => None,
        }
    }
}

/// `min(|G| − 1, |S|)`, the guaranteed size of `W ⊙ S` for a run of `|S|`
/// consecutive weights. Errors unless the support of `S` star-spans `G`.
pub fn sumset_lower_bound(s: &GSequence) -> Result<u64> {
    let star = s.support().star_span()?;
    if !star.is_full() {
        return Err(Error::NotApplicable(
            "all terms of S lie in a coset of a proper subgroup".into(),
        ));
    }
    Ok((s.spec().order() - 1).min(s.len()))
}

/// Structural classification of a length-`|G|` sequence. Never computes a
/// sumset.
pub fn classify_full_length(s: &GSequence) -> Result<Classification> {
    let terms: Vec<(u64, u64)> = s.index_terms().collect();
    Ok(classify_terms(s.spec(), &terms))
}

fn classify_terms(spec: &GroupSpec, terms: &[(u64, u64)]) -> Classification {
    let order = spec.order();
    let len: u64 = terms.iter().map(|&(_, v)| v).sum();
    if order < 3 {
        return Classification::NotApplicable {
            reason: format!("|G| = {order} < 3 admits no exceptional sequences"),
        };
    }
    if len != order {
        return Classification::NotApplicable {
            reason: format!("|S| = {len} differs from |G| = {order}"),
        };
    }
    if !star_span_indices(spec, terms.iter().map(|&(i, _)| i)).is_full() {
        return Classification::NotApplicable {
            reason: "all terms of S lie in a coset of a proper subgroup".into(),
        };
    }

    if spec.is_klein_four() && terms.len() == 4 {
        return Classification::ExceptionKlein {
            predicted_missing: spec.zero(),
        };
    }

    // candidates g' with v_{g'}(S) ≥ |G| − 2; ties only possible for |G| ≤ 4
    let coefficient = (order as i128) * (order as i128 - 1) / 2;
    for &(gp, v) in terms {
        if v < order - 2 {
            continue;
        }
        let neg_gp = spec.neg_index(gp);
        let mut shifted: Vec<(u64, u64)> = terms
            .iter()
            .map(|&(i, m)| (spec.add_indices(i, neg_gp), m))
            .collect();
        shifted.sort_unstable();
        // pattern 0^{|G|−2}·g·(−g) with ord(g) = |G|
        if shifted.len() != 3 || shifted[0] != (0, order - 2) {
            continue;
        }
        let (a, va) = shifted[1];
        let (b, vb) = shifted[2];
        if va != 1 || vb != 1 || spec.neg_index(a) != b {
            continue;
        }
        let g = spec.element_at(a.min(b));
        if g.order() != order {
            continue;
        }
        let g_prime = spec.element_at(gp);
        let predicted_missing = g_prime.scalar_mul_wide(coefficient);
        return Classification::ExceptionCyclic {
            g,
            g_prime,
            predicted_missing,
        };
    }
    Classification::Full
}

fn star_span_indices(spec: &GroupSpec, indices: impl IntoIterator<Item = u64>) -> ElementSet {
    let idx: Vec<u64> = indices.into_iter().collect();
    let base = spec.neg_index(idx[0]);
    ElementSet::from_indices(spec, idx.iter().map(|&i| spec.add_indices(i, base)))
        .expect("campaign groups admit sets")
        .span()
}

/// A sequence whose computed sumset undercut the guaranteed bound.
#[derive(Clone, Debug, Serialize)]
pub struct ViolationRecord {
    pub sequence: GSequence,
    pub length: u64,
    pub bound: u64,
    pub actual: u64,
}

/// A disagreement between structural prediction and the computed sumset.
#[derive(Clone, Debug, Serialize)]
pub struct MismatchRecord {
    pub sequence: GSequence,
    pub detail: String,
}

/// A full-length sequence whose sumset misses an element, with its
/// classification.
#[derive(Clone, Debug, Serialize)]
pub struct ExceptionRecord {
    pub sequence: GSequence,
    pub classification: Classification,
}

/// Outcome of an exhaustive campaign over one group.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: GroupSpec,
    pub max_len: u64,
    pub sequences_checked: u64,
    pub bound_violations: Vec<ViolationRecord>,
    pub exceptions: Vec<ExceptionRecord>,
    pub mismatches: Vec<MismatchRecord>,
}

impl VerificationReport {
    /// True when no violation and no prediction mismatch was found.
    pub fn ok(&self) -> bool {
        self.bound_violations.is_empty() && self.mismatches.is_empty()
    }
}

/// Exhaustively verifies the coverage law over every sequence of length
/// ≤ `max_len` whose support star-spans the group.
pub fn verify_group(spec: &GroupSpec, max_len: u64, budgets: &Budgets) -> Result<VerificationReport> {
    verify_group_with_progress(spec, max_len, budgets, |_, _| {})
}

pub fn verify_group_with_progress(
    spec: &GroupSpec,
    max_len: u64,
    budgets: &Budgets,
    mut progress: impl FnMut(u64, u64),
) -> Result<VerificationReport> {
    let order = spec.order();
    if order > budgets.order_cap {
        return Err(Error::BudgetExceeded(format!(
            "exhaustive verification over |G| = {order} exceeds cap {}",
            budgets.order_cap
        )));
    }
    if max_len > order + 1 {
        return Err(Error::OutOfRange {
            what: "max_len",
            details: format!("{max_len} exceeds |G| + 1 = {}", order + 1),
        });
    }
    let mut report = VerificationReport {
        group: spec.clone(),
        max_len,
        sequences_checked: 0,
        bound_violations: Vec::new(),
        exceptions: Vec::new(),
        mismatches: Vec::new(),
    };
    let witness_run: Vec<i64> = (0..order as i64).collect();
    for len in 1..=max_len {
        let run: Vec<i64> = (0..len as i64).collect();
        let mut checked_at_len = 0u64;
        let mut terms: Vec<(u64, u64)> = Vec::new();
        for_each_multiset(order, len, &mut terms, &mut |terms| {
            if !star_span_indices(spec, terms.iter().map(|&(i, _)| i)).is_full() {
                return Ok(());
            }
            checked_at_len += 1;
            let words = odot_kernel(spec, &run, terms, budgets)?;
            let count: u64 = words.iter().map(|w| w.count_ones() as u64).sum();
            let bound = (order - 1).min(len);
            if count < bound {
                report.bound_violations.push(ViolationRecord {
                    sequence: GSequence::from_index_terms(spec, terms.iter().copied()),
                    length: len,
                    bound,
                    actual: count,
                });
            }
            let full = count == order;
            if len == order {
                check_full_length(spec, terms, &words, full, &mut report);
            }
            if len == order + 1 {
                if !full {
                    report.mismatches.push(MismatchRecord {
                        sequence: GSequence::from_index_terms(spec, terms.iter().copied()),
                        detail: format!("|S| = |G| + 1 but the sumset misses {} elements", order - count),
                    });
                } else if !has_full_subsequence_witness(spec, terms, &witness_run, budgets)? {
                    report.mismatches.push(MismatchRecord {
                        sequence: GSequence::from_index_terms(spec, terms.iter().copied()),
                        detail: "no length-|G| subsequence S' with W' ⊙ S' = G".into(),
                    });
                }
            }
            Ok(())
        })?;
        report.sequences_checked += checked_at_len;
        progress(len, checked_at_len);
    }
    Ok(report)
}

fn check_full_length(
    spec: &GroupSpec,
    terms: &[(u64, u64)],
    words: &[u64],
    full: bool,
    report: &mut VerificationReport,
) {
    let order = spec.order();
    let seq = || GSequence::from_index_terms(spec, terms.iter().copied());
    if order < 3 {
        if !full {
            report.mismatches.push(MismatchRecord {
                sequence: seq(),
                detail: "|G| < 3 admits no exceptions, yet the sumset is not all of G".into(),
            });
        }
        return;
    }
    let classification = classify_terms(spec, terms);
    match &classification {
        Classification::Full => {
            if !full {
                report.mismatches.push(MismatchRecord {
                    sequence: seq(),
                    detail: "classified Full but the sumset misses an element".into(),
                });
            }
        }
        Classification::ExceptionKlein { predicted_missing }
        | Classification::ExceptionCyclic {
            predicted_missing, ..
        } => {
            if full {
                report.mismatches.push(MismatchRecord {
                    sequence: seq(),
                    detail: "classified exceptional but the sumset is all of G".into(),
                });
                return;
            }
            let missing: Vec<u64> = (0..order)
                .filter(|&i| words[(i / 64) as usize] >> (i % 64) & 1 == 0)
                .collect();
            if missing != vec![predicted_missing.index()] {
                report.mismatches.push(MismatchRecord {
                    sequence: seq(),
                    detail: format!(
                        "predicted missing element {predicted_missing}, sumset misses {missing:?}"
                    ),
                });
                return;
            }
            if let Classification::ExceptionCyclic { .. } = classification {
                // the exceptional sumset still contains every generator of G
                for i in 0..order {
                    if spec.element_at(i).order() == order
                        && words[(i / 64) as usize] >> (i % 64) & 1 == 0
                    {
                        report.mismatches.push(MismatchRecord {
                            sequence: seq(),
                            detail: format!("generator {} missing from the sumset", spec.element_at(i)),
                        });
                        return;
                    }
                }
            }
            report.exceptions.push(ExceptionRecord {
                sequence: seq(),
                classification,
            });
        }
        Classification::NotApplicable { reason } => {
            report.mismatches.push(MismatchRecord {
                sequence: seq(),
                detail: format!("classification unexpectedly not applicable: {reason}"),
            });
        }
    }
}

fn has_full_subsequence_witness(
    spec: &GroupSpec,
    terms: &[(u64, u64)],
    witness_run: &[i64],
    budgets: &Budgets,
) -> Result<bool> {
    let order = spec.order();
    for drop in 0..terms.len() {
        let mut reduced: Vec<(u64, u64)> = Vec::with_capacity(terms.len());
        for (k, &(i, v)) in terms.iter().enumerate() {
            let v = if k == drop { v - 1 } else { v };
            if v > 0 {
                reduced.push((i, v));
            }
        }
        let words = odot_kernel(spec, witness_run, &reduced, budgets)?;
        let count: u64 = words.iter().map(|w| w.count_ones() as u64).sum();
        if count == order {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Enumerates all multisets of the given size over element indices
/// `0..order`, as `(index, multiplicity)` lists with ascending indices.
pub(crate) fn for_each_multiset(
    order: u64,
    len: u64,
    terms: &mut Vec<(u64, u64)>,
    f: &mut impl FnMut(&[(u64, u64)]) -> Result<()>,
) -> Result<()> {
    fn rec(
        order: u64,
        len_left: u64,
        next: u64,
        terms: &mut Vec<(u64, u64)>,
        f: &mut impl FnMut(&[(u64, u64)]) -> Result<()>,
    ) -> Result<()> {
        if len_left == 0 {
            return f(terms);
        }
        if next == order {
            return Ok(());
        }
        rec(order, len_left, next + 1, terms, f)?;
        for take in 1..=len_left {
            terms.push((next, take));
            rec(order, len_left - take, next + 1, terms, f)?;
            terms.pop();
        }
        Ok(())
    }
    terms.clear();
    rec(order, len, 0, terms, f)
}

/// For `S = x·y` with `⟨x, y⟩ = G` and `W` the run `(0)…(L−1)`, checks the
/// guaranteed sumset size — `min(|G|, 2L−3)` when `x = y`, else
/// `min(|G|−1, 2L−2)` — and, for `L ≥ 3`, that `W ⊙ S` star-spans `G`.
pub fn pair_sumset_bounds_hold(x: &GroupElement, y: &GroupElement, run_len: u64) -> Result<bool> {
    let spec = x.spec().clone();
    spec.check_same(y.spec())?;
    if x.is_zero() || y.is_zero() {
        return Err(Error::NotApplicable("x and y must be nonzero".into()));
    }
    if run_len < 2 {
        return Err(Error::OutOfRange {
            what: "run length",
            details: format!("need L ≥ 2, got {run_len}"),
        });
    }
    let generated = ElementSet::from_elements(&spec, &[x.clone(), y.clone()])?.span();
    if !generated.is_full() {
        return Err(Error::NotApplicable("⟨x, y⟩ must be all of G".into()));
    }
    let s = GSequence::from_terms(&spec, [(x, 1u64), (y, 1u64)])?;
    let w = WeightSeq::consecutive_run(0, run_len)?;
    let a = odot_with(&w, &s, &Budgets::default())?;
    let order = spec.order();
    let bound = if x == y {
        order.min(2 * run_len - 3)
    } else {
        (order - 1).min(2 * run_len - 2)
    };
    if a.len() < bound {
        return Ok(false);
    }
    if run_len >= 3 && !a.star_span()?.is_full() {
        return Ok(false);
    }
    Ok(true)
}

/// For distinct `x, y, z` with `⟨{x,y,z}⟩* = G`, `|G| ≥ 5`, and all pairwise
/// differences of order ≥ 3, finds a 4-element subset
/// `X ⊆ (0)(1)(2) ⊙ (x·y·z)` with `⟨X⟩* = G`, at least two elements in the
/// coset `3z + ⟨{x,z}⟩*`, and `|𝖧(X)| ≠ 2` unless `|G| = 6`. The search is
/// exhaustive over 4-subsets; failure would falsify the underlying law and
/// is reported as a theorem violation.
pub fn spanning_four_subset(
    x: &GroupElement,
    y: &GroupElement,
    z: &GroupElement,
) -> Result<ElementSet> {
    let spec = x.spec().clone();
    spec.check_same(y.spec())?;
    spec.check_same(z.spec())?;
    let order = spec.order();
    if order < 5 {
        return Err(Error::NotApplicable(format!("need |G| ≥ 5, got {order}")));
    }
    if x == y || y == z || x == z {
        return Err(Error::NotApplicable("x, y, z must be distinct".into()));
    }
    let support = ElementSet::from_elements(&spec, &[x.clone(), y.clone(), z.clone()])?;
    if !support.star_span()?.is_full() {
        return Err(Error::NotApplicable("⟨{x,y,z}⟩* must be all of G".into()));
    }
    for (a, b) in [(x, z), (y, z), (x, y)] {
        if a.sub(b)?.order() < 3 {
            return Err(Error::NotApplicable(format!(
                "ord({a} − {b}) must be at least 3"
            )));
        }
    }
    let s = GSequence::from_elements(&spec, &[x.clone(), y.clone(), z.clone()])?;
    let w = WeightSeq::consecutive_run(0, 3)?;
    let sumset = odot_with(&w, &s, &Budgets::default())?;
    let target_coset = ElementSet::from_elements(&spec, &[x.clone(), z.clone()])?
        .star_span()?
        .translate(&z.scalar_mul(3))?;

    let members: Vec<u64> = sumset.iter().map(|g| g.index()).collect();
    let n = members.len();
    let mut found: Option<ElementSet> = None;
    let search = |pick: &[usize; 4]| -> Result<bool> {
        let x_set = ElementSet::from_indices(&spec, pick.iter().map(|&k| members[k]))?;
        if !x_set.star_span()?.is_full() {
            return Ok(false);
        }
        if x_set.intersection(&target_coset)?.len() < 2 {
            return Ok(false);
        }
        if order != 6 && x_set.stabilizer()?.len() == 2 {
            return Ok(false);
        }
        Ok(true)
    };
    'outer: for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let pick = [a, b, c, d];
                    if search(&pick)? {
                        found = Some(ElementSet::from_indices(
                            &spec,
                            pick.iter().map(|&k| members[k]),
                        )?);
                        break 'outer;
                    }
                }
            }
        }
    }
    found.ok_or_else(|| {
        Error::TheoremViolation(format!(
            "no qualifying 4-subset of (0)(1)(2) ⊙ ({x}·{y}·{z}) over {spec}"
        ))
    })
}

/// Given `x ∉ A` with `A ∪ {x}` periodic under a subgroup of order ≥ 3,
/// checks that `A ∪ {y}` is aperiodic for every `y ≠ x`.
pub fn punctured_union_aperiodic(a: &ElementSet, x: &GroupElement) -> Result<bool> {
    let spec = a.spec().clone();
    spec.check_same(x.spec())?;
    if a.is_empty() {
        return Err(Error::EmptySet("punctured-union check"));
    }
    if a.contains(x)? {
        return Err(Error::NotApplicable("x must lie outside A".into()));
    }
    let mut with_x = a.clone();
    with_x.insert(x)?;
    let stab = with_x.stabilizer()?;
    if stab.len() < 3 {
        return Err(Error::NotApplicable(format!(
            "A ∪ {{x}} must be H-periodic with |H| ≥ 3; its stabilizer has order {}",
            stab.len()
        )));
    }
    let xi = x.index();
    for yi in 0..spec.order() {
        if yi == xi {
            continue;
        }
        let mut with_y = a.clone();
        with_y.insert_index(yi);
        if with_y.stabilizer()?.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::odot;

    fn cyc(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    #[test]
    fn lower_bound_examples() {
        let c5 = cyc(5);
        let s = GSequence::parse(&c5, "0 1 2").unwrap();
        assert_eq!(sumset_lower_bound(&s).unwrap(), 3);
        let s7 = GSequence::parse(&c5, "0^3 1 2 3 4").unwrap();
        assert_eq!(sumset_lower_bound(&s7).unwrap(), 4);
        let coset_bound = GSequence::parse(&c5, "1^2 1").unwrap();
        assert!(matches!(
            sumset_lower_bound(&coset_bound),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn lower_bound_tight_for_zero_padded_generator() {
        // S = 0^{|S|−1}·g with g a generator: |W ⊙ S| = |S| for |S| ≤ |G|
        for n in 3..=8u64 {
            let spec = cyc(n);
            let g = spec.element(&[1]).unwrap();
            for len in 2..=n {
                let mut s = GSequence::empty(&spec);
                s.push(&spec.zero(), len - 1).unwrap();
                s.push(&g, 1).unwrap();
                let w = WeightSeq::consecutive_run(0, len).unwrap();
                let a = odot(&w, &s).unwrap();
                assert_eq!(a.len(), len, "n = {n}, len = {len}");
                assert_eq!(sumset_lower_bound(&s).unwrap(), (n - 1).min(len));
            }
        }
    }

    #[test]
    fn classify_cyclic_exception() {
        let c4 = cyc(4);
        let s = GSequence::parse(&c4, "0^2 1 3").unwrap();
        match classify_full_length(&s).unwrap() {
            Classification::ExceptionCyclic {
                g,
                g_prime,
                predicted_missing,
            } => {
                assert_eq!(g, c4.element(&[1]).unwrap());
                assert!(g_prime.is_zero());
                assert!(predicted_missing.is_zero());
            }
            other => panic!("expected cyclic exception, got {other:?}"),
        }
        // brute force: the sumset misses exactly 0
        let w = WeightSeq::consecutive_run(0, 4).unwrap();
        let a = odot(&w, &s).unwrap();
        assert_eq!(a.len(), 3);
        assert!(!a.contains(&c4.zero()).unwrap());
    }

    #[test]
    fn classify_klein_exception() {
        let klein = GroupSpec::new(vec![2, 2]).unwrap();
        let s =
            GSequence::from_elements(&klein, &klein.elements().collect::<Vec<_>>()).unwrap();
        match classify_full_length(&s).unwrap() {
            Classification::ExceptionKlein { predicted_missing } => {
                assert!(predicted_missing.is_zero());
            }
            other => panic!("expected Klein exception, got {other:?}"),
        }
    }

    #[test]
    fn classify_full_for_generic_sequence() {
        let c5 = cyc(5);
        let s = GSequence::parse(&c5, "0^2 1 2 3").unwrap();
        assert_eq!(classify_full_length(&s).unwrap(), Classification::Full);
        let w = WeightSeq::consecutive_run(0, 5).unwrap();
        assert!(odot(&w, &s).unwrap().is_full());
    }

    #[test]
    fn classify_rejects_wrong_preconditions() {
        let c5 = cyc(5);
        let short = GSequence::parse(&c5, "0 1").unwrap();
        assert!(matches!(
            classify_full_length(&short).unwrap(),
            Classification::NotApplicable { .. }
        ));
        let c2 = cyc(2);
        let s = GSequence::parse(&c2, "0 1").unwrap();
        assert!(matches!(
            classify_full_length(&s).unwrap(),
            Classification::NotApplicable { .. }
        ));
    }

    #[test]
    fn classification_is_translation_covariant() {
        let c5 = cyc(5);
        let mut terms = Vec::new();
        for_each_multiset(5, 5, &mut terms, &mut |terms| {
            let s = GSequence::from_index_terms(&c5, terms.iter().copied());
            let base = classify_full_length(&s).unwrap();
            for g in c5.elements() {
                let shifted = classify_full_length(&s.translate(&g).unwrap()).unwrap();
                assert_eq!(
                    std::mem::discriminant(&base),
                    std::mem::discriminant(&shifted),
                    "S = {s}, g = {g}"
                );
            }
            Ok(())
        })
        .unwrap();
    }

    #[test]
    fn verify_c5_finds_exactly_the_translated_exceptions() {
        let c5 = cyc(5);
        let report = verify_group(&c5, 6, &Budgets::default()).unwrap();
        assert!(report.ok(), "{report:?}");
        assert!(report.sequences_checked > 0);
        // exceptions are exactly g' + 0³·g·(−g): 2 base patterns × 5 translates
        assert_eq!(report.exceptions.len(), 10);
        let mut expected = Vec::new();
        for gp in 0..5i64 {
            for g in [1i64, 2] {
                let s = GSequence::from_terms(
                    &c5,
                    [
                        (&c5.element(&[gp]).unwrap(), 3u64),
                        (&c5.element(&[gp + g]).unwrap(), 1),
                        (&c5.element(&[gp - g]).unwrap(), 1),
                    ],
                )
                .unwrap();
                expected.push(s);
            }
        }
        for record in &report.exceptions {
            assert!(
                expected.contains(&record.sequence),
                "unexpected exception {}",
                record.sequence
            );
            assert!(matches!(
                record.classification,
                Classification::ExceptionCyclic { .. }
            ));
        }
    }

    #[test]
    fn verify_klein_finds_the_squarefree_exception() {
        let klein = GroupSpec::new(vec![2, 2]).unwrap();
        let report = verify_group(&klein, 5, &Budgets::default()).unwrap();
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.exceptions.len(), 1);
        let record = &report.exceptions[0];
        assert_eq!(record.sequence.support_size(), 4);
        assert_eq!(record.sequence.len(), 4);
        assert!(matches!(
            record.classification,
            Classification::ExceptionKlein { .. }
        ));
    }

    #[test]
    fn verify_c2_has_no_exceptions() {
        let c2 = cyc(2);
        let report = verify_group(&c2, 3, &Budgets::default()).unwrap();
        assert!(report.ok());
        assert!(report.exceptions.is_empty());
    }

    #[test]
    fn verify_rejects_overlong_campaigns() {
        let c5 = cyc(5);
        assert!(matches!(
            verify_group(&c5, 7, &Budgets::default()),
            Err(Error::OutOfRange { .. })
        ));
        let big = cyc(100);
        assert!(matches!(
            verify_group(&big, 2, &Budgets::default()),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn pair_bounds_examples() {
        let c5 = cyc(5);
        let one = c5.element(&[1]).unwrap();
        let two = c5.element(&[2]).unwrap();
        assert!(pair_sumset_bounds_hold(&one, &one, 3).unwrap());
        assert!(pair_sumset_bounds_hold(&one, &two, 3).unwrap());
        assert!(pair_sumset_bounds_hold(&one, &two, 2).unwrap());
        assert!(pair_sumset_bounds_hold(&one, &one, 2).unwrap());
        // x = y = 1, L = 3: W ⊙ S = {1, 2, 3}
        let s = GSequence::parse(&c5, "1^2").unwrap();
        let w = WeightSeq::consecutive_run(0, 3).unwrap();
        assert_eq!(odot(&w, &s).unwrap().len(), 3);
        assert!(matches!(
            pair_sumset_bounds_hold(&c5.zero(), &one, 3),
            Err(Error::NotApplicable(_))
        ));
        let c6 = cyc(6);
        let two6 = c6.element(&[2]).unwrap();
        let four6 = c6.element(&[4]).unwrap();
        assert!(matches!(
            pair_sumset_bounds_hold(&two6, &four6, 3),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn spanning_subset_examples() {
        let c5 = cyc(5);
        let x = spanning_four_subset(
            &c5.element(&[1]).unwrap(),
            &c5.element(&[2]).unwrap(),
            &c5.zero(),
        )
        .unwrap();
        assert_eq!(x.len(), 4);
        assert!(x.star_span().unwrap().is_full());

        let c7 = cyc(7);
        let x = spanning_four_subset(
            &c7.element(&[3]).unwrap(),
            &c7.element(&[5]).unwrap(),
            &c7.zero(),
        )
        .unwrap();
        assert_eq!(x.len(), 4);

        // C₆ admits |𝖧(X)| = 2
        let c6 = cyc(6);
        let x = spanning_four_subset(
            &c6.element(&[1]).unwrap(),
            &c6.element(&[2]).unwrap(),
            &c6.zero(),
        )
        .unwrap();
        assert_eq!(x.len(), 4);
    }

    #[test]
    fn punctured_examples() {
        let c6 = cyc(6);
        let a = ElementSet::from_indices(&c6, [0, 2]).unwrap();
        let x = c6.element(&[4]).unwrap();
        assert!(punctured_union_aperiodic(&a, &x).unwrap());

        let c9 = cyc(9);
        let a = ElementSet::from_indices(&c9, [0, 3]).unwrap();
        let x = c9.element(&[6]).unwrap();
        assert!(punctured_union_aperiodic(&a, &x).unwrap());

        // stabilizer of order 2 is below the precondition threshold
        let c4 = cyc(4);
        let a = ElementSet::from_indices(&c4, [0]).unwrap();
        let x = c4.element(&[2]).unwrap();
        assert!(matches!(
            punctured_union_aperiodic(&a, &x),
            Err(Error::NotApplicable(_))
        ));
    }
}
