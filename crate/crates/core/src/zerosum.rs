//! Maximal-length minimal zero-sum sequences over `C_m ⊕ C_mn`.
//!
//! Over `G ≅ C_m ⊕ C_mn` the longest minimal zero-sum sequences have length
//! `m + mn − 1` and (in the basis-driven form) look like
//! `e_j^{ord e_j − 1} · Π (x_i·e_j + e_k)^{a_i}`, where `{e₁, e₂}` is a basis
//! with `ord e₁ = m`, `ord e₂ = mn`, the multiplicities `a_i ≥ 1` sum to
//! `ord e_k`, and the `x_i` are distinct residues solving
//! `a₁x₁ + … ≡ 1 (mod ord e_j)` after zero-padding the pattern to
//! `ord e_j` coefficients. Construction therefore reduces to the
//! distinct-residue congruence solver, and every result is verified against
//! the brute-force minimality check before it is returned.
//!
//! Achievable support sizes are `[3, m+1]`, except that `m + 1` drops out
//! when `n = 1` and `m ≥ 3`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::budget::Budgets;
use crate::congruence::{construct, CongruenceInstance};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::sequence::GSequence;
use crate::verifier::for_each_multiset;

/// Which basis element plays `e_j` (the high-multiplicity block) and which
/// plays `e_k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum BasisRole {
    /// `(e_j, e_k) = (e₁, e₂)`: `ord e_j = m`, `ord e_k = mn`.
    E1E2,
    /// `(e_j, e_k) = (e₂, e₁)`: `ord e_j = mn`, `ord e_k = m`.
    E2E1,
}

impl BasisRole {
    fn orders(self, m: u64, n: u64) -> (u64, u64) {
        match self {
            BasisRole::E1E2 => (m, m * n),
            BasisRole::E2E1 => (m * n, m),
        }
    }
}

/// A construction request: group parameters, basis role, and the
/// multiplicity pattern `(a₁, …, a_l)` for the non-block terms.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Rank2Target {
    pub m: u64,
    pub n: u64,
    pub role: BasisRole,
    pub pattern: Vec<u64>,
}

impl Rank2Target {
    pub fn new(m: u64, n: u64, role: BasisRole, pattern: Vec<u64>) -> Result<Self> {
        check_group_params(m, n)?;
        let (ord_j, ord_k) = role.orders(m, n);
        if pattern.is_empty() || pattern.iter().any(|&a| a == 0) {
            return Err(Error::OutOfRange {
                what: "multiplicity pattern",
                details: "all pattern entries must be ≥ 1".into(),
            });
        }
        let total: u64 = pattern.iter().sum();
        if total != ord_k {
            return Err(Error::OutOfRange {
                what: "multiplicity pattern",
                details: format!("entries sum to {total}, need ord e_k = {ord_k}"),
            });
        }
        if pattern.len() as u64 > ord_j {
            return Err(Error::OutOfRange {
                what: "multiplicity pattern",
                details: format!(
                    "{} distinct coefficients demanded, only {ord_j} residues exist",
                    pattern.len()
                ),
            });
        }
        Ok(Rank2Target { m, n, role, pattern })
    }
}

fn check_group_params(m: u64, n: u64) -> Result<()> {
    if m < 2 || n < 1 {
        return Err(Error::OutOfRange {
            what: "group parameters",
            details: format!("need m ≥ 2 and n ≥ 1, got m = {m}, n = {n}"),
        });
    }
    m.checked_mul(n).ok_or_else(|| Error::OutOfRange {
        what: "group parameters",
        details: "m·n overflows u64".into(),
    })?;
    Ok(())
}

/// A verified construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Construction {
    pub sequence: GSequence,
    /// The distinct residues `x₁, …, x_l` backing the pattern entries.
    pub witness: Vec<u64>,
    pub length: u64,
    pub support_size: u64,
    /// Always true on return: minimality is re-checked by enumeration.
    pub verified: bool,
}

/// Outcome of a construction request. `Infeasible` is a valid answer, not
/// an error.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ConstructionOutcome {
    Built(Construction),
    Infeasible { reason: String },
}

impl ConstructionOutcome {
    pub fn built(&self) -> Option<&Construction> {
        match self {
            ConstructionOutcome::Built(c) => Some(c),
            ConstructionOutcome::Infeasible { .. } => None,
        }
    }
}

/// Length of the longest minimal zero-sum sequence over `C_m ⊕ C_mn`:
/// `m + mn − 1`.
pub fn max_minimal_zero_sum_length(m: u64, n: u64) -> Result<u64> {
    check_group_params(m, n)?;
    Ok(m + m * n - 1)
}

/// Builds `e_j^{ord e_j − 1} · Π (x_i e_j + e_k)^{a_i}` for the requested
/// pattern, solving the padded congruence `Σ a_i x_i ≡ 1 (mod ord e_j)` for
/// distinct residues. Returns `Infeasible` when the congruence has no
/// solution; a solvable congruence whose sequence fails the minimality
/// check would be a theorem violation.
pub fn construct_from_pattern(
    target: &Rank2Target,
    budgets: &Budgets,
) -> Result<ConstructionOutcome> {
    let (ord_j, ord_k) = target.role.orders(target.m, target.n);
    let mut coeffs: Vec<i64> = target.pattern.iter().map(|&a| a as i64).collect();
    coeffs.resize(ord_j as usize, 0);
    let inst = CongruenceInstance::new(&coeffs, ord_j)?;
    let verdict = construct(&inst, 1, budgets)?;
    let Some(full_witness) = verdict.witness else {
        return Ok(ConstructionOutcome::Infeasible {
            reason: format!(
                "no distinct residues x with Σ a_i·x_i ≡ 1 (mod {ord_j}) for pattern {:?}",
                target.pattern
            ),
        });
    };
    let witness: Vec<u64> = full_witness[..target.pattern.len()].to_vec();

    let spec = GroupSpec::new(vec![target.m, target.m * target.n])?;
    let (e_j, e_k) = match target.role {
        BasisRole::E1E2 => (spec.element(&[1, 0])?, spec.element(&[0, 1])?),
        BasisRole::E2E1 => (spec.element(&[0, 1])?, spec.element(&[1, 0])?),
    };
    let mut sequence = GSequence::empty(&spec);
    sequence.push(&e_j, ord_j - 1)?;
    for (&x, &a) in witness.iter().zip(&target.pattern) {
        let term = e_j.scalar_mul(x as i64).add(&e_k)?;
        sequence.push(&term, a)?;
    }

    let length = sequence.len();
    debug_assert_eq!(length, (ord_j - 1) + ord_k);
    // every x_i·e_j + e_k has nonzero e_k coordinate, so the support is l+1
    let support_size = sequence.support_size();
    debug_assert_eq!(support_size, target.pattern.len() as u64 + 1);
    if !sequence.is_zero_sum() {
        return Err(Error::TheoremViolation(format!(
            "constructed sequence {sequence} does not sum to zero"
        )));
    }
    if !sequence.is_minimal_zero_sum_with(budgets)? {
        return Err(Error::TheoremViolation(format!(
            "constructed sequence {sequence} is not a minimal zero-sum sequence"
        )));
    }
    Ok(ConstructionOutcome::Built(Construction {
        sequence,
        witness,
        length,
        support_size,
        verified: true,
    }))
}

/// Builds a maximal-length minimal zero-sum sequence with exactly `k`
/// distinct terms, choosing the multiplicity pattern that realizes it.
/// Returns `Infeasible` exactly for `k ∉ [3, m+1]`, and for `k = m + 1`
/// when `n = 1` and `m ≥ 3`.
pub fn construct_with_support(
    m: u64,
    n: u64,
    k: u64,
    budgets: &Budgets,
) -> Result<ConstructionOutcome> {
    check_group_params(m, n)?;
    if k < 3 || k > m + 1 {
        return Ok(ConstructionOutcome::Infeasible {
            reason: format!("support size {k} is outside the achievable range [3, {}]", m + 1),
        });
    }
    let pattern: Vec<u64> = if n == 1 {
        if k == m + 1 {
            if m >= 3 {
                return Ok(ConstructionOutcome::Infeasible {
                    reason: format!(
                        "support size m+1 = {k} needs the all-ones pattern, which has no \
                         distinct-residue solution mod {m} when n = 1 and m ≥ 3"
                    ),
                });
            }
            vec![1, 1]
        } else {
            // 1^{l−1} (m − l + 1) with l = k − 1
            let l = k - 1;
            let mut p = vec![1u64; (l - 1) as usize];
            p.push(m - l + 1);
            p
        }
    } else if k == m + 1 {
        if m == 2 {
            vec![m * n - 1, 1]
        } else {
            // 1^{m−2} (2) (mn − m)
            let mut p = vec![1u64; (m - 2) as usize];
            p.push(2);
            p.push(m * n - m);
            p
        }
    } else {
        // 1^{l−1} (mn − l + 1) with l = k − 1
        let l = k - 1;
        let mut p = vec![1u64; (l - 1) as usize];
        p.push(m * n - l + 1);
        p
    };
    let target = Rank2Target::new(m, n, BasisRole::E1E2, pattern)?;
    construct_from_pattern(&target, budgets)
}

/// The support sizes realizable by maximal-length minimal zero-sum
/// sequences over `C_m ⊕ C_mn`: `[3, m+1]`, minus `m+1` when `n = 1` and
/// `m ≥ 3`.
pub fn feasible_support_sizes(m: u64, n: u64) -> Result<BTreeSet<u64>> {
    check_group_params(m, n)?;
    let mut out: BTreeSet<u64> = (3..=m + 1).collect();
    if n == 1 && m >= 3 {
        out.remove(&(m + 1));
    }
    Ok(out)
}

/// Brute-force search: the longest length ≤ `search_up_to` at which some
/// minimal zero-sum sequence over `C_m ⊕ C_mn` exists.
pub fn longest_minimal_zero_sum(
    m: u64,
    n: u64,
    search_up_to: u64,
    budgets: &Budgets,
) -> Result<u64> {
    check_group_params(m, n)?;
    let spec = GroupSpec::new(vec![m, m * n])?;
    let order = spec.order();
    if order > budgets.order_cap {
        return Err(Error::BudgetExceeded(format!(
            "exhaustive zero-sum search over |G| = {order} exceeds cap {}",
            budgets.order_cap
        )));
    }
    let mut best = 0u64;
    for len in 1..=search_up_to {
        let mut terms = Vec::new();
        let mut found = false;
        for_each_multiset(order, len, &mut terms, &mut |terms| {
            if found {
                return Ok(());
            }
            let s = GSequence::from_index_terms(&spec, terms.iter().copied());
            if s.is_zero_sum() && s.is_minimal_zero_sum_with(budgets)? {
                found = true;
            }
            Ok(())
        })?;
        if found {
            best = len;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn max_length_formula() {
        assert_eq!(max_minimal_zero_sum_length(2, 1).unwrap(), 3);
        assert_eq!(max_minimal_zero_sum_length(3, 2).unwrap(), 8);
        assert!(max_minimal_zero_sum_length(1, 1).is_err());
    }

    #[test]
    fn brute_force_confirms_max_length_small() {
        // search one past the claimed maximum: nothing minimal exists there
        for (m, n) in [(2, 1), (3, 1)] {
            let expect = m + m * n - 1;
            assert_eq!(
                longest_minimal_zero_sum(m, n, m + m * n, &b()).unwrap(),
                expect,
                "(m, n) = ({m}, {n})"
            );
        }
    }

    #[test]
    fn pattern_construction_example() {
        // C₃ ⊕ C₆, pattern (1, 2, 3): x₁ + 2x₂ + 3x₃ ≡ 1 (mod 3)
        let target = Rank2Target::new(3, 2, BasisRole::E1E2, vec![1, 2, 3]).unwrap();
        let built = construct_from_pattern(&target, &b()).unwrap();
        let c = built.built().expect("pattern is realizable");
        assert_eq!(c.length, 8);
        assert_eq!(c.support_size, 4);
        assert!(c.verified);
        // witness: distinct residues solving the congruence
        let mut sorted = c.witness.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 3);
        let sum: u64 = c
            .witness
            .iter()
            .zip(&target.pattern)
            .map(|(&x, &a)| x * a)
            .sum();
        assert_eq!(sum % 3, 1);
    }

    #[test]
    fn all_ones_pattern_infeasible_for_m4_n1() {
        let target = Rank2Target::new(4, 1, BasisRole::E1E2, vec![1, 1, 1, 1]).unwrap();
        match construct_from_pattern(&target, &b()).unwrap() {
            ConstructionOutcome::Infeasible { .. } => {}
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn klein_triple_from_all_ones_m2() {
        let target = Rank2Target::new(2, 1, BasisRole::E1E2, vec![1, 1]).unwrap();
        let built = construct_from_pattern(&target, &b()).unwrap();
        let c = built.built().expect("m = 2 all-ones is realizable");
        assert_eq!(c.length, 3);
        assert_eq!(c.support_size, 3);
        // e₁·e₂·(e₁+e₂) up to the congruence witness
        let spec = GroupSpec::new(vec![2, 2]).unwrap();
        let expect = GSequence::from_elements(
            &spec,
            &[
                spec.element(&[1, 0]).unwrap(),
                spec.element(&[0, 1]).unwrap(),
                spec.element(&[1, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(c.sequence, expect);
    }

    #[test]
    fn support_targets() {
        let built = construct_with_support(3, 2, 4, &b()).unwrap();
        let c = built.built().expect("(3,2) reaches support 4");
        assert_eq!(c.support_size, 4);
        assert_eq!(c.length, 8);

        match construct_with_support(3, 1, 4, &b()).unwrap() {
            ConstructionOutcome::Infeasible { .. } => {}
            other => panic!("expected infeasible, got {other:?}"),
        }

        let klein = construct_with_support(2, 1, 3, &b()).unwrap();
        assert_eq!(klein.built().unwrap().length, 3);

        let c42 = construct_with_support(4, 2, 3, &b()).unwrap();
        let c = c42.built().expect("(4,2) reaches support 3");
        assert_eq!(c.support_size, 3);
        assert_eq!(c.length, 11);

        // out-of-range requests are infeasible, not errors
        assert!(matches!(
            construct_with_support(3, 2, 2, &b()).unwrap(),
            ConstructionOutcome::Infeasible { .. }
        ));
        assert!(matches!(
            construct_with_support(3, 2, 9, &b()).unwrap(),
            ConstructionOutcome::Infeasible { .. }
        ));
    }

    #[test]
    fn feasible_sets() {
        let sizes = |m, n| feasible_support_sizes(m, n).unwrap();
        assert_eq!(sizes(3, 1), BTreeSet::from([3]));
        assert_eq!(sizes(3, 2), BTreeSet::from([3, 4]));
        assert_eq!(sizes(2, 1), BTreeSet::from([3]));
        assert_eq!(sizes(5, 1), BTreeSet::from([3, 4, 5]));
        assert_eq!(sizes(4, 2), BTreeSet::from([3, 4, 5]));
    }

    #[test]
    fn pattern_validation() {
        assert!(Rank2Target::new(3, 2, BasisRole::E1E2, vec![1, 2, 2]).is_err());
        assert!(Rank2Target::new(3, 2, BasisRole::E1E2, vec![0, 6]).is_err());
        assert!(Rank2Target::new(3, 2, BasisRole::E1E2, vec![1, 1, 1, 1, 1, 1]).is_err());
        assert!(Rank2Target::new(3, 2, BasisRole::E2E1, vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn swapped_role_constructs_too() {
        // (e_j, e_k) = (e₂, e₁): ord e_j = 6, ord e_k = 3 over C₃ ⊕ C₆
        let target = Rank2Target::new(3, 2, BasisRole::E2E1, vec![1, 2]).unwrap();
        let built = construct_from_pattern(&target, &b()).unwrap();
        let c = built.built().expect("swapped role realizable");
        assert_eq!(c.length, 8);
        assert_eq!(c.support_size, 3);
    }
}
