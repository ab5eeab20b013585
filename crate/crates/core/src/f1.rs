//! The category of finite pointed sets and finite `F_1[[t]]`-modules
//! (pointed sets with nilpotent endomorphism), with subobject enumeration
//! and the {0,1}-matrix counting oracle.
//!
//! A morphism of pointed sets preserves the basepoint and is injective away
//! from the basepoint preimage, so a nilpotent endomorphism makes the
//! underlying functional graph a disjoint union of chains feeding into the
//! basepoint; the isomorphism type is the partition of chain lengths.
//! Subobjects are the action-invariant pointed subsets, and admissible epis
//! collapse such a subset to the basepoint.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::Int;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Size bound for `F_1[[t]]`-module constructions.
pub const F1T_SIZE_BOUND: u32 = 20;

/// Size bound for the {0,1}-matrix count.
pub const MATRIX_SIZE_BOUND: u32 = 12;

/// A finite pointed set `{*, 1, …, n}`, carrying only its size.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PointedSet {
    pub size: u32,
}

/// A finite `F_1[[t]]`-module: a pointed set `{*, 1, …, n}` with a nilpotent
/// endomorphism, stored as `action[i-1]` = image of `i` (0 encodes `*`).
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(transparent)]
pub struct F1tModule {
    action: Vec<u32>,
}

impl<'de> serde::Deserialize<'de> for F1tModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let action = Vec::<u32>::deserialize(d)?;
        F1tModule::new(action).map_err(serde::de::Error::custom)
    }
}

impl F1tModule {
    pub fn new(action: Vec<u32>) -> Result<Self> {
        let n = action.len() as u32;
        if n > F1T_SIZE_BOUND {
            return Err(Error::BoundExceeded(format!(
                "F_1[[t]]-module on {n} elements exceeds bound {F1T_SIZE_BOUND}"
            )));
        }
        if action.iter().any(|&img| img > n) {
            return Err(Error::InvalidArgument("action image out of range".into()));
        }
        let m = F1tModule { action };
        // nilpotence: iterating the action reaches * from everywhere
        for start in 1..=n {
            let mut x = start;
            let mut steps = 0;
            while x != 0 {
                x = m.apply(x);
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidArgument(
                        "endomorphism is not nilpotent".into(),
                    ));
                }
            }
        }
        // morphism condition: injective away from the basepoint preimage
        for target in 1..=n {
            let preimages = (1..=n).filter(|&x| m.apply(x) == target).count();
            if preimages > 1 {
                return Err(Error::InvalidArgument(format!(
                    "two elements map to {target}: not a Vect_F1 endomorphism"
                )));
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> u32 {
        self.action.len() as u32
    }

    /// Image of element `x` (1-based; 0 is the basepoint and is fixed).
    pub fn apply(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.action[(x - 1) as usize]
        }
    }

    /// The dual module: reverse all edges of the forest.
    pub fn dual(&self) -> F1tModule {
        let n = self.size();
        let mut action = vec![0u32; n as usize];
        for x in 1..=n {
            let y = self.apply(x);
            if y != 0 {
                action[(y - 1) as usize] = x;
            }
        }
        F1tModule { action }
    }
}

/// Isomorphism type of a module: the decreasingly sorted chain lengths.
pub fn f1t_type(m: &F1tModule) -> Partition {
    let n = m.size();
    let mut has_preimage = vec![false; (n + 1) as usize];
    for x in 1..=n {
        let y = m.apply(x);
        if y != 0 {
            has_preimage[y as usize] = true;
        }
    }
    let mut lengths = Vec::new();
    for tip in 1..=n {
        if !has_preimage[tip as usize] {
            let mut len = 0u32;
            let mut x = tip;
            while x != 0 {
                len += 1;
                x = m.apply(x);
            }
            lengths.push(len);
        }
    }
    Partition::from_unsorted(lengths)
}

/// The canonical module of type `λ`: chains ordered by decreasing length,
/// elements numbered chain by chain with each chain's root first.
pub fn f1t_module_of_type(lambda: &Partition) -> Result<F1tModule> {
    if lambda.size() > F1T_SIZE_BOUND {
        return Err(Error::BoundExceeded(format!(
            "type {lambda} exceeds size bound {F1T_SIZE_BOUND}"
        )));
    }
    let mut action = Vec::with_capacity(lambda.size() as usize);
    let mut offset = 0u32;
    for &len in lambda.parts() {
        action.push(0); // chain root maps to *
        for j in 1..len {
            action.push(offset + j);
        }
        offset += len;
    }
    F1tModule::new(action)
}

/// An invariant pointed subset, as a sorted list of nonzero elements.
pub type SubCarrier = Vec<u32>;

/// All subobjects of `m`: action-invariant pointed subsets, optionally
/// filtered by subobject type and quotient type. Deterministic order by
/// carrier list.
pub fn f1t_enumerate_submodules(
    m: &F1tModule,
    sub_type: Option<&Partition>,
    quot_type: Option<&Partition>,
) -> Result<Vec<SubCarrier>> {
    let n = m.size();
    if n > F1T_SIZE_BOUND {
        return Err(Error::BoundExceeded("module too large".into()));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let contains = |x: u32| x == 0 || mask & (1 << (x - 1)) != 0;
        let invariant = (1..=n).filter(|&x| contains(x)).all(|x| contains(m.apply(x)));
        if !invariant {
            continue;
        }
        let carrier: SubCarrier = (1..=n).filter(|&x| contains(x)).collect();
        if let Some(t) = sub_type {
            if f1t_sub_type(m, &carrier) != *t {
                continue;
            }
        }
        if let Some(t) = quot_type {
            if f1t_quotient_type(m, &carrier) != *t {
                continue;
            }
        }
        out.push(carrier);
    }
    out.sort();
    Ok(out)
}

/// Type of an invariant subset, via the induced action.
pub fn f1t_sub_type(m: &F1tModule, carrier: &[u32]) -> Partition {
    let index: BTreeMap<u32, u32> = carrier
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i as u32 + 1))
        .collect();
    let action: Vec<u32> = carrier
        .iter()
        .map(|&x| {
            let y = m.apply(x);
            if y == 0 {
                0
            } else {
                *index.get(&y).expect("carrier is invariant")
            }
        })
        .collect();
    f1t_type(&F1tModule { action })
}

/// Type of the quotient collapsing the subset to the basepoint.
pub fn f1t_quotient_type(m: &F1tModule, carrier: &[u32]) -> Partition {
    let in_carrier = |x: u32| carrier.binary_search(&x).is_ok();
    let rest: Vec<u32> = (1..=m.size()).filter(|&x| !in_carrier(x)).collect();
    let index: BTreeMap<u32, u32> = rest
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i as u32 + 1))
        .collect();
    let action: Vec<u32> = rest
        .iter()
        .map(|&x| {
            let y = m.apply(x);
            if y == 0 || in_carrier(y) {
                0
            } else {
                index[&y]
            }
        })
        .collect();
    f1t_type(&F1tModule { action })
}

/// Structure constant of `Hall(F_1[[t]])`: subobjects of type `ν` with
/// quotient of type `μ` in the canonical module of type `λ`.
pub fn f1t_hall_constant(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Int> {
    if mu.size() + nu.size() != lambda.size() {
        return Ok(Int::zero());
    }
    let m = f1t_module_of_type(lambda)?;
    Ok(Int::from(
        f1t_enumerate_submodules(&m, Some(nu), Some(mu))?.len() as u64,
    ))
}

/// Flag count in `Hall(F_1[[t]])`: chains `M = K_0 ⊇ … ⊇ K_s = {*}` with
/// `type(K_{i-1}/K_i) = quots[i-1]`.
pub fn f1t_flag_count(lambda: &Partition, quots: &[Partition]) -> Result<Int> {
    let m = f1t_module_of_type(lambda)?;
    let full: SubCarrier = (1..=m.size()).collect();
    fn rec(m: &F1tModule, current: &SubCarrier, quots: &[Partition]) -> Result<Int> {
        match quots.split_first() {
            None => Ok(if current.is_empty() {
                Int::one()
            } else {
                Int::zero()
            }),
            Some((first, rest)) => {
                // subobjects of the current carrier, as subsets of the ambient
                let sub = restrict_module(m, current);
                let mut acc = Int::zero();
                for inner in f1t_enumerate_submodules(&sub, None, Some(first))? {
                    let carrier: SubCarrier =
                        inner.iter().map(|&i| current[(i - 1) as usize]).collect();
                    acc += rec(m, &carrier, rest)?;
                }
                Ok(acc)
            }
        }
    }
    rec(&m, &full, quots)
}

fn restrict_module(m: &F1tModule, carrier: &[u32]) -> F1tModule {
    let index: BTreeMap<u32, u32> = carrier
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i as u32 + 1))
        .collect();
    let action: Vec<u32> = carrier
        .iter()
        .map(|&x| {
            let y = m.apply(x);
            if y == 0 {
                0
            } else {
                index.get(&y).copied().unwrap_or(0)
            }
        })
        .collect();
    F1tModule { action }
}

/// Structure constant of `Hall(Vect_F1)`: the number of m-element subobjects
/// of the pointed set on `n + m` elements, enumerated subset by subset; must
/// equal `C(n+m, m)`.
pub fn f1_hall_constant(n: u32, m: u32) -> Result<Int> {
    let total = n + m;
    if total > F1T_SIZE_BOUND {
        return Err(Error::BoundExceeded(format!(
            "pointed set on {total} elements exceeds bound {F1T_SIZE_BOUND}"
        )));
    }
    let mut count = Int::zero();
    for mask in 0u64..(1 << total) {
        if mask.count_ones() == m {
            count += Int::one();
        }
    }
    Ok(count)
}

/// `a_{λμ}`: the number of {0,1}-matrices with column sums `λ` and row sums
/// `μ`, by column-wise backtracking memoized on the multiset of remaining
/// row sums.
pub fn count_zero_one_matrices(col_sums: &Partition, row_sums: &Partition) -> Result<Int> {
    if col_sums.size() != row_sums.size() {
        return Ok(Int::zero());
    }
    if col_sums.size() > MATRIX_SIZE_BOUND {
        return Err(Error::BoundExceeded(format!(
            "matrix count bound |λ| ≤ {MATRIX_SIZE_BOUND} exceeded by {col_sums}"
        )));
    }
    let mut memo: BTreeMap<(usize, Vec<u32>), Int> = BTreeMap::new();
    let mut remaining: Vec<u32> = row_sums.parts().to_vec();
    remaining.sort_unstable_by(|a, b| b.cmp(a));
    fn rec(
        cols: &[u32],
        idx: usize,
        remaining: &[u32],
        memo: &mut BTreeMap<(usize, Vec<u32>), Int>,
    ) -> Int {
        if idx == cols.len() {
            return if remaining.iter().all(|&r| r == 0) {
                Int::one()
            } else {
                Int::zero()
            };
        }
        let key = (idx, remaining.to_vec());
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        // choose a sub-multiset of rows of size cols[idx], grouped by equal
        // remaining value; the count of matrices depends only on the multiset.
        let mut groups: Vec<(u32, u32)> = Vec::new(); // (value, count)
        for &r in remaining {
            match groups.last_mut() {
                Some((v, c)) if *v == r => *c += 1,
                _ => groups.push((r, 1)),
            }
        }
        let need = cols[idx];
        let mut acc = Int::zero();
        let mut takes = vec![0u32; groups.len()];
        fn assign(
            groups: &[(u32, u32)],
            takes: &mut [u32],
            gi: usize,
            left: u32,
            cols: &[u32],
            idx: usize,
            memo: &mut BTreeMap<(usize, Vec<u32>), Int>,
            acc: &mut Int,
        ) {
            if gi == groups.len() {
                if left != 0 {
                    return;
                }
                let mut next: Vec<u32> = Vec::new();
                let mut ways = Int::one();
                for (g, &(v, c)) in groups.iter().enumerate() {
                    let t = takes[g];
                    ways *= binomial(c, t);
                    for _ in 0..t {
                        next.push(v - 1);
                    }
                    for _ in 0..(c - t) {
                        next.push(v);
                    }
                }
                next.sort_unstable_by(|a, b| b.cmp(a));
                let sub = rec(cols, idx + 1, &next, memo);
                *acc += ways * sub;
                return;
            }
            let (v, c) = groups[gi];
            let max_take = if v == 0 { 0 } else { c.min(left) };
            for t in 0..=max_take {
                takes[gi] = t;
                assign(groups, takes, gi + 1, left - t, cols, idx, memo, acc);
            }
            takes[gi] = 0;
        }
        assign(&groups, &mut takes, 0, need, cols, idx, memo, &mut acc);
        memo.insert(key, acc.clone());
        acc
    }
    Ok(rec(col_sums.parts(), 0, &remaining, &mut memo))
}

fn binomial(n: u32, k: u32) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Explicitly enumerates {0,1}-matrices with the given row sums (positional,
/// a composition) and column sums (a partition, columns indexed by value).
/// Rows may have zero sums. Used by the Zelevinsky statistic.
pub fn enumerate_zero_one_matrices(row_sums: &[u32], col_sums: &Partition) -> Vec<Vec<Vec<bool>>> {
    let rows = row_sums.len();
    let cols = col_sums.len();
    let mut out = Vec::new();
    let mut matrix = vec![vec![false; cols]; rows];
    let mut remaining: Vec<u32> = row_sums.to_vec();
    fn rec(
        col: usize,
        cols: usize,
        col_sums: &Partition,
        matrix: &mut Vec<Vec<bool>>,
        remaining: &mut Vec<u32>,
        out: &mut Vec<Vec<Vec<bool>>>,
    ) {
        if col == cols {
            if remaining.iter().all(|&r| r == 0) {
                out.push(matrix.clone());
            }
            return;
        }
        let need = col_sums.part(col);
        let rows = remaining.len();
        fn choose(
            start: usize,
            need: u32,
            rows: usize,
            col: usize,
            cols: usize,
            col_sums: &Partition,
            matrix: &mut Vec<Vec<bool>>,
            remaining: &mut Vec<u32>,
            out: &mut Vec<Vec<Vec<bool>>>,
        ) {
            if need == 0 {
                rec(col + 1, cols, col_sums, matrix, remaining, out);
                return;
            }
            if rows - start < need as usize {
                return;
            }
            for r in start..rows {
                if remaining[r] == 0 {
                    continue;
                }
                matrix[r][col] = true;
                remaining[r] -= 1;
                choose(r + 1, need - 1, rows, col, cols, col_sums, matrix, remaining, out);
                remaining[r] += 1;
                matrix[r][col] = false;
            }
        }
        choose(0, need, rows, col, cols, col_sums, matrix, remaining, out);
    }
    rec(0, cols, col_sums, &mut matrix, &mut remaining, &mut out);
    out
}

/// Expansion of `u_{(1^{λ_1})} u_{(1^{λ_2})} …` in the `u_μ` basis, computed
/// two ways — iterated subobject products and {0,1}-matrix counts — and
/// checked for equality.
pub fn elementary_product_expansion(lambda: &Partition) -> Result<BTreeMap<Partition, Int>> {
    // route 1: iterated Hall products of the column generators
    let mut acc: BTreeMap<Partition, Int> = BTreeMap::new();
    acc.insert(Partition::empty(), Int::one());
    for &part in lambda.parts() {
        let gen = Partition::column(part);
        let mut next: BTreeMap<Partition, Int> = BTreeMap::new();
        for (mu, coeff) in &acc {
            let total = mu.size() + part;
            for pi in crate::partition::partitions_of(total)? {
                let g = f1t_hall_constant(&pi, mu, &gen)?;
                if !g.is_zero() {
                    *next.entry(pi).or_insert_with(Int::zero) += coeff.clone() * g;
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    // route 2: matrix counts
    let mut by_matrices: BTreeMap<Partition, Int> = BTreeMap::new();
    for mu in crate::partition::partitions_of(lambda.size())? {
        let a = count_zero_one_matrices(lambda, &mu)?;
        if !a.is_zero() {
            by_matrices.insert(mu, a);
        }
    }
    if acc != by_matrices {
        return Err(Error::CrossCheckMismatch(format!(
            "elementary product of {lambda}: subobject route {acc:?} vs matrix route {by_matrices:?}"
        )));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn module_validation() {
        assert!(F1tModule::new(vec![0, 1]).is_ok()); // chain 2 -> 1 -> *
        assert!(F1tModule::new(vec![2, 1]).is_err()); // 2-cycle, not nilpotent
        assert!(F1tModule::new(vec![0, 1, 1]).is_err()); // branching at 1
        assert!(F1tModule::new(vec![5]).is_err()); // out of range
    }

    #[test]
    fn type_examples() {
        assert_eq!(f1t_type(&F1tModule::new(vec![]).unwrap()), p(&[]));
        // the 8-element module with branches 3, 2, 2, 1
        let m = f1t_module_of_type(&p(&[3, 2, 2, 1])).unwrap();
        assert_eq!(f1t_type(&m), p(&[3, 2, 2, 1]));
        // everything maps straight to *
        let m = F1tModule::new(vec![0, 0, 0, 0]).unwrap();
        assert_eq!(f1t_type(&m), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn canonical_module_round_trips() {
        for n in 0..=8u32 {
            for la in crate::partition::partitions_of(n).unwrap() {
                let m = f1t_module_of_type(&la).unwrap();
                assert_eq!(f1t_type(&m), la);
            }
        }
    }

    #[test]
    fn dual_preserves_type() {
        for n in 0..=8u32 {
            for la in crate::partition::partitions_of(n).unwrap() {
                let m = f1t_module_of_type(&la).unwrap();
                assert_eq!(f1t_type(&m.dual()), la);
            }
        }
    }

    #[test]
    fn subobject_examples() {
        // type (1,1): each singleton branch is invariant
        let m = f1t_module_of_type(&p(&[1, 1])).unwrap();
        let subs = f1t_enumerate_submodules(&m, Some(&p(&[1])), Some(&p(&[1]))).unwrap();
        assert_eq!(subs.len(), 2);
        // type (2): only the image of t is invariant
        let m = f1t_module_of_type(&p(&[2])).unwrap();
        let subs = f1t_enumerate_submodules(&m, Some(&p(&[1])), Some(&p(&[1]))).unwrap();
        assert_eq!(subs.len(), 1);
        // the full module is its own subobject with empty quotient
        let m = f1t_module_of_type(&p(&[2, 1])).unwrap();
        let subs = f1t_enumerate_submodules(&m, None, Some(&p(&[]))).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0], vec![1, 2, 3]);
    }

    #[test]
    fn hall_constants_match_q_one_values() {
        assert_eq!(
            f1t_hall_constant(&p(&[1, 1]), &p(&[1]), &p(&[1])).unwrap(),
            Int::from(2)
        );
        assert_eq!(
            f1t_hall_constant(&p(&[2]), &p(&[1]), &p(&[1])).unwrap(),
            Int::from(1)
        );
        assert_eq!(
            f1t_hall_constant(&p(&[1, 1, 1]), &p(&[1, 1]), &p(&[1])).unwrap(),
            Int::from(3)
        );
    }

    #[test]
    fn commutativity_small() {
        for n in 0..=6u32 {
            for la in crate::partition::partitions_of(n).unwrap() {
                for a in 0..=n {
                    for mu in crate::partition::partitions_of(a).unwrap() {
                        for nu in crate::partition::partitions_of(n - a).unwrap() {
                            assert_eq!(
                                f1t_hall_constant(&la, &mu, &nu).unwrap(),
                                f1t_hall_constant(&la, &nu, &mu).unwrap(),
                                "λ={la} μ={mu} ν={nu}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f1_vect_constants() {
        assert_eq!(f1_hall_constant(1, 1).unwrap(), Int::from(2));
        assert_eq!(f1_hall_constant(5, 0).unwrap(), Int::from(1));
        assert_eq!(f1_hall_constant(2, 2).unwrap(), Int::from(6));
        for total in 0..=12u32 {
            for m in 0..=total {
                assert_eq!(
                    f1_hall_constant(total - m, m).unwrap(),
                    binomial(total, m),
                    "n+m={total}, m={m}"
                );
            }
        }
    }

    #[test]
    fn matrix_count_examples() {
        assert_eq!(
            count_zero_one_matrices(&p(&[1]), &p(&[1])).unwrap(),
            Int::one()
        );
        assert_eq!(
            count_zero_one_matrices(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(),
            Int::from(3)
        );
        assert_eq!(
            count_zero_one_matrices(&p(&[2, 1]), &p(&[2, 1])).unwrap(),
            Int::one()
        );
        // size mismatch vanishes
        assert_eq!(
            count_zero_one_matrices(&p(&[2]), &p(&[1])).unwrap(),
            Int::zero()
        );
    }

    #[test]
    fn matrix_count_matches_literal_enumeration() {
        for n in 0..=6u32 {
            for la in crate::partition::partitions_of(n).unwrap() {
                for mu in crate::partition::partitions_of(n).unwrap() {
                    let fast = count_zero_one_matrices(&la, &mu).unwrap();
                    let slow = enumerate_zero_one_matrices(mu.parts(), &la).len();
                    assert_eq!(fast, Int::from(slow as u64), "λ={la} μ={mu}");
                }
            }
        }
    }

    #[test]
    fn unitriangularity() {
        // ã_{λμ} = a_{λ'μ}: diagonal 1, support below λ in dominance
        for n in 0..=8u32 {
            for la in crate::partition::partitions_of(n).unwrap() {
                let conj = la.conjugate();
                assert_eq!(
                    count_zero_one_matrices(&conj, &la).unwrap(),
                    Int::one(),
                    "diagonal at λ={la}"
                );
                for mu in crate::partition::partitions_of(n).unwrap() {
                    let a = count_zero_one_matrices(&conj, &mu).unwrap();
                    if !a.is_zero() {
                        assert!(
                            crate::partition::dominance_leq(&mu, &la),
                            "support violation: ã_({la})({mu}) = {a}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn elementary_expansion_examples() {
        let e = elementary_product_expansion(&p(&[1])).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[&p(&[1])], Int::one());

        let e = elementary_product_expansion(&p(&[1, 1])).unwrap();
        assert_eq!(e[&p(&[1, 1])], Int::from(2));
        assert_eq!(e[&p(&[2])], Int::one());

        let e = elementary_product_expansion(&p(&[2, 1])).unwrap();
        assert_eq!(e[&p(&[1, 1, 1])], Int::from(3));
        assert_eq!(e[&p(&[2, 1])], Int::one());
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn flag_counts_agree_with_iterated_products() {
        // flags of length 3 vs double sums of pairwise constants
        let quots = [p(&[1]), p(&[1]), p(&[1])];
        for la in crate::partition::partitions_of(3).unwrap() {
            let direct = f1t_flag_count(&la, &quots).unwrap();
            let mut via = Int::zero();
            for tau in crate::partition::partitions_of(2).unwrap() {
                via += f1t_hall_constant(&tau, &quots[0], &quots[1]).unwrap()
                    * f1t_hall_constant(&la, &tau, &quots[2]).unwrap();
            }
            assert_eq!(direct, via, "λ={la}");
        }
    }

    #[test]
    fn module_json_round_trip() {
        let m = f1t_module_of_type(&p(&[2, 1])).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[0,1,0]");
        assert_eq!(serde_json::from_str::<F1tModule>(&s).unwrap(), m);
    }
}
