//! Distinct-residue solutions to linear congruences.
//!
//! For `a₁x₁ + … + a_rx_r ≡ α (mod n)` with `r ≤ n`, a solution with all
//! `x_i` distinct modulo `n` exists iff one exists after zero-padding the
//! coefficients to length `n`, in which case `(x₁, …, x_n)` ranges over
//! permutations of the residues `[0, n−1]`.
//!
//! For `n ≥ 3` solvability is arithmetic: with `c = n(n−1)/2`,
//!
//! * generally, solvable ⟺ `α ∈ c·a₁ + gcd(a₂−a₁, …, a_n−a₁, n)·ℤ`;
//! * except for one family — distinct `j, k, l` with
//!   `a_j − a_l ≡ −(a_k − a_l) (mod n)`, `gcd(a_j − a_l, n) = 1`, and all
//!   other `a_i ≡ a_l` — where solvable ⟺ `α ≢ c·a_l (mod n)`.
//!
//! `n = 2` is a three-case lookup table. All residue arithmetic is exact;
//! `c` is computed as an integer before reduction, which is where the parity
//! distinctions for even `n` live.

use std::collections::HashSet;

use serde::Serialize;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::group::gcd;

/// A normalized congruence: coefficients zero-padded to length `n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CongruenceInstance {
    modulus: u64,
    original_len: usize,
    /// all `n` coefficients, reduced mod `n`; entries `original_len..` are
    /// the padding zeros
    reduced: Vec<u64>,
    /// the coefficients as given
    original: Vec<i64>,
}

impl CongruenceInstance {
    /// Normalizes `r` coefficients modulo `n`, padding with `n − r` zeros.
    /// Requires `2 ≤ r ≤ n` — more than `n` slots cannot hold distinct
    /// residues.
    pub fn new(coeffs: &[i64], modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::OutOfRange {
                what: "modulus",
                details: format!("need n ≥ 2, got {modulus}"),
            });
        }
        let r = coeffs.len();
        if r < 2 {
            return Err(Error::OutOfRange {
                what: "coefficient count",
                details: format!("need at least 2 coefficients, got {r}"),
            });
        }
        if r as u64 > modulus {
            return Err(Error::OutOfRange {
                what: "coefficient count",
                details: format!("{r} coefficients cannot take distinct residues mod {modulus}"),
            });
        }
        let mut reduced: Vec<u64> = coeffs
            .iter()
            .map(|&a| a.rem_euclid(modulus as i64) as u64)
            .collect();
        reduced.resize(modulus as usize, 0);
        Ok(CongruenceInstance {
            modulus,
            original_len: r,
            reduced,
            original: coeffs.to_vec(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of coefficients before padding.
    pub fn original_len(&self) -> usize {
        self.original_len
    }

    pub fn original_coeffs(&self) -> &[i64] {
        &self.original
    }

    /// All `n` coefficients, reduced.
    pub fn reduced_coeffs(&self) -> &[u64] {
        &self.reduced
    }

    /// `n(n−1)/2 mod n`, the weight-sum offset common to every permutation.
    fn half_sum(&self) -> u64 {
        let n = self.modulus as u128;
        (n * (n - 1) / 2 % n) as u64
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.modulus as u128) as u64
    }
}

/// Which characterization applied.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum Branch {
    /// Membership in the coset `c·a₁ + d·ℤ` with
    /// `d = gcd(a₂−a₁, …, a_n−a₁, n)`.
    GeneralGcd { gcd: u64 },
    /// The exceptional family; solvable for every `α` except one residue.
    SpecialFamily { j: usize, k: usize, l: usize },
}

/// Solvability verdict, with the arithmetic facts that decided it and an
/// optional witness permutation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CongruenceVerdict {
    pub solvable: bool,
    pub branch: Branch,
    /// `n(n−1)/2 · a_ref mod n` — the coset offset (`a₁` for the general
    /// branch, `a_l` for the special family).
    pub base_term: u64,
    /// A permutation of `[0, n−1]` with `Σ a_i x_i ≡ α`, when requested and
    /// solvable.
    pub witness: Option<Vec<u64>>,
}

/// Verdict for the every-`α` question.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AllAlphaVerdict {
    pub all_solvable: bool,
    /// Some unreachable residue when not all `α` are solvable.
    pub unreachable_alpha: Option<u64>,
    pub branch: Branch,
}

/// Finds the exceptional coefficient family, if present: distinct `j, k, l`
/// with `a_j − a_l ≡ −(a_k − a_l)`, `gcd(a_j − a_l, n) = 1`, and every other
/// coefficient ≡ `a_l`. Search order is deterministic (smallest `l`, then
/// the two outside indices in order).
pub fn detect_special_family(inst: &CongruenceInstance) -> Option<(usize, usize, usize)> {
    let n = inst.modulus;
    if n < 3 {
        return None;
    }
    let a = &inst.reduced;
    for l in 0..a.len() {
        let outside: Vec<usize> = (0..a.len()).filter(|&i| a[i] != a[l]).collect();
        if outside.len() != 2 {
            continue;
        }
        let (p, q) = (outside[0], outside[1]);
        for (j, k) in [(p, q), (q, p)] {
            let dj = (a[j] + n - a[l]) % n;
            let dk = (a[k] + n - a[l]) % n;
            if gcd(dj, n) == 1 && (dj + dk) % n == 0 {
                return Some((j, k, l));
            }
        }
    }
    None
}

fn general_gcd(inst: &CongruenceInstance) -> u64 {
    let n = inst.modulus;
    let a = &inst.reduced;
    let mut d = n;
    for &ai in &a[1..] {
        d = gcd(d, (ai + n - a[0]) % n);
    }
    d
}

/// Decides solvability of `Σ a_i x_i ≡ α (mod n)` over permutations
/// `(x₁, …, x_n)` of `[0, n−1]`, without constructing a witness.
pub fn decide(inst: &CongruenceInstance, alpha: i64) -> CongruenceVerdict {
    let n = inst.modulus;
    let alpha_red = alpha.rem_euclid(n as i64) as u64;
    if n == 2 {
        // the three coefficient classes mod 2
        let (a0, a1) = (inst.reduced[0], inst.reduced[1]);
        let solvable = match (a0.min(a1), a0.max(a1)) {
            (0, 0) => alpha_red == 0,
            (0, 1) => true,
            _ => alpha_red == 1,
        };
        let d = gcd((a1 + 2 - a0) % 2, 2);
        let base = inst.mul_mod(inst.half_sum(), a0);
        debug_assert_eq!(solvable, (alpha_red + n - base) % n % d == 0);
        return CongruenceVerdict {
            solvable,
            branch: Branch::GeneralGcd { gcd: d },
            base_term: base,
            witness: None,
        };
    }
    let c = inst.half_sum();
    if let Some((j, k, l)) = detect_special_family(inst) {
        let base = inst.mul_mod(c, inst.reduced[l]);
        CongruenceVerdict {
            solvable: alpha_red != base,
            branch: Branch::SpecialFamily { j, k, l },
            base_term: base,
            witness: None,
        }
    } else {
        let d = general_gcd(inst);
        let base = inst.mul_mod(c, inst.reduced[0]);
        CongruenceVerdict {
            solvable: (alpha_red + n - base) % n % d == 0,
            branch: Branch::GeneralGcd { gcd: d },
            base_term: base,
            witness: None,
        }
    }
}

/// Decides and, when solvable, reconstructs a witness permutation by a DP
/// over used-residue masks with the smallest-residue-first tie break. A
/// solvable verdict with no reachable witness is a hard failure.
pub fn construct(inst: &CongruenceInstance, alpha: i64, budgets: &Budgets) -> Result<CongruenceVerdict> {
    let mut verdict = decide(inst, alpha);
    if !verdict.solvable {
        return Ok(verdict);
    }
    let n = inst.modulus;
    if n > budgets.mask_bits as u64 || n > 63 {
        return Err(Error::BudgetExceeded(format!(
            "witness search over {n} residues; budget is {}",
            budgets.mask_bits.min(63)
        )));
    }
    let target = alpha.rem_euclid(n as i64) as u64;
    let mut dead = DeadStates::new(n);
    let mut witness = Vec::with_capacity(n as usize);
    if !search(inst, 0, 0, 0, target, &mut witness, &mut dead) {
        return Err(Error::TheoremViolation(format!(
            "decide says α = {alpha} is solvable mod {n}, but no witness exists"
        )));
    }
    let check: u128 = witness
        .iter()
        .zip(&inst.reduced)
        .map(|(&x, &a)| x as u128 * a as u128)
        .sum();
    if check % n as u128 != target as u128 {
        return Err(Error::TheoremViolation(
            "witness fails substitution".into(),
        ));
    }
    verdict.witness = Some(witness);
    Ok(verdict)
}

/// Memo of `(used-residue mask, partial sum)` states already shown fruitless.
/// Dense bitmap when `2^n · n` is small, hash set otherwise.
enum DeadStates {
    Dense { n: u64, words: Vec<u64> },
    Sparse(HashSet<(u64, u64)>),
}

impl DeadStates {
    fn new(n: u64) -> Self {
        if n <= 16 {
            let bits = (1u64 << n) * n;
            DeadStates::Dense {
                n,
                words: vec![0; bits.div_ceil(64) as usize],
            }
        } else {
            DeadStates::Sparse(HashSet::new())
        }
    }

    fn contains(&self, used: u64, sum: u64) -> bool {
        match self {
            DeadStates::Dense { n, words } => {
                let bit = used * n + sum;
                words[(bit / 64) as usize] >> (bit % 64) & 1 == 1
            }
            DeadStates::Sparse(set) => set.contains(&(used, sum)),
        }
    }

    fn insert(&mut self, used: u64, sum: u64) {
        match self {
            DeadStates::Dense { n, words } => {
                let bit = used * *n + sum;
                words[(bit / 64) as usize] |= 1 << (bit % 64);
            }
            DeadStates::Sparse(set) => {
                set.insert((used, sum));
            }
        }
    }
}

fn search(
    inst: &CongruenceInstance,
    slot: usize,
    used: u64,
    sum: u64,
    target: u64,
    witness: &mut Vec<u64>,
    dead: &mut DeadStates,
) -> bool {
    let n = inst.modulus;
    if slot == n as usize {
        return sum == target;
    }
    if dead.contains(used, sum) {
        return false;
    }
    for x in 0..n {
        if used >> x & 1 == 1 {
            continue;
        }
        let next = (sum + inst.mul_mod(inst.reduced[slot], x)) % n;
        witness.push(x);
        if search(inst, slot + 1, used | 1 << x, next, target, witness, dead) {
            return true;
        }
        witness.pop();
    }
    dead.insert(used, sum);
    false
}

/// Whether every `α` admits a distinct-residue solution. The special family
/// always leaves one residue unreachable; otherwise the answer is
/// `gcd(a₂−a₁, …, a_n−a₁, n) = 1`.
pub fn decide_all_alpha(inst: &CongruenceInstance) -> Result<AllAlphaVerdict> {
    let n = inst.modulus;
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "modulus",
            details: format!("the every-α characterization needs n ≥ 3, got {n}"),
        });
    }
    let c = inst.half_sum();
    if let Some((j, k, l)) = detect_special_family(inst) {
        let base = inst.mul_mod(c, inst.reduced[l]);
        return Ok(AllAlphaVerdict {
            all_solvable: false,
            unreachable_alpha: Some(base),
            branch: Branch::SpecialFamily { j, k, l },
        });
    }
    let d = general_gcd(inst);
    let base = inst.mul_mod(c, inst.reduced[0]);
    Ok(AllAlphaVerdict {
        all_solvable: d == 1,
        unreachable_alpha: if d == 1 { None } else { Some((base + 1) % n) },
        branch: Branch::GeneralGcd { gcd: d },
    })
}

/// The `α = 1` three-case verdict: for `n` odd or some coefficient even,
/// solvable ⟺ the difference gcd is 1; for `n ≡ 0 (mod 4)` with all
/// coefficients odd, never solvable; for `n ≡ 2 (mod 4)` with all odd,
/// solvable ⟺ the difference gcd is 2.
pub fn decide_alpha_one(inst: &CongruenceInstance) -> bool {
    let n = inst.modulus;
    if n == 2 {
        return inst.reduced[0] != inst.reduced[1] || inst.reduced[0] == 1;
    }
    let d = general_gcd(inst);
    let some_even = inst.reduced.iter().any(|&a| a % 2 == 0);
    if n % 2 == 1 || some_even {
        d == 1
    } else if n % 4 == 0 {
        false
    } else {
        d == 2
    }
}

/// Brute-force oracle: the set of reachable targets over all permutations.
/// `result[α]` is true iff `Σ a_i x_i ≡ α` for some permutation.
pub fn achievable_targets(inst: &CongruenceInstance) -> Result<Vec<bool>> {
    let n = inst.modulus;
    if n > 10 {
        return Err(Error::BudgetExceeded(format!(
            "permutation oracle over {n}! assignments"
        )));
    }
    let mut reachable = vec![false; n as usize];
    fn rec(inst: &CongruenceInstance, slot: usize, used: u64, sum: u64, out: &mut [bool]) {
        let n = inst.modulus;
        if slot == n as usize {
            out[sum as usize] = true;
            return;
        }
        for x in 0..n {
            if used >> x & 1 == 0 {
                rec(
                    inst,
                    slot + 1,
                    used | 1 << x,
                    (sum + inst.mul_mod(inst.reduced[slot], x)) % n,
                    out,
                );
            }
        }
    }
    rec(inst, 0, 0, 0, &mut reachable);
    Ok(reachable)
}

/// Oracle counterpart of [`decide`].
pub fn brute_force_solvable(inst: &CongruenceInstance, alpha: i64) -> Result<bool> {
    let n = inst.modulus;
    Ok(achievable_targets(inst)?[alpha.rem_euclid(n as i64) as usize])
}
