//! Partitions, β-sets, `e`-cores and `e`-quotients on the abacus, `ell`-core
//! towers, and the bounded enumerations that drive label enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    /// Sorts the parts descending and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// β-set `{λ_i + (len - i)}` of the given length.
    pub fn beta_set(&self, len: usize) -> Result<BetaSet> {
        if len < self.parts.len() {
            return Err(Error::BetaSetTooShort {
                len,
                parts: self.parts.len(),
            });
        }
        let elems = (0..len)
            .map(|i| self.parts.get(i).copied().unwrap_or(0) + (len - 1 - i) as u32)
            .collect();
        Ok(BetaSet { elems })
    }

    /// Whether the partition has no hook of length `e`.
    pub fn is_core(&self, e: u32) -> bool {
        let beta = self.beta_set(self.len()).expect("length suffices");
        beta.elems.iter().all(|&x| x < e || beta.contains(x - e))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of naturals, stored strictly decreasing.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BetaSet {
    elems: Vec<u32>,
}

impl BetaSet {
    pub fn new(mut elems: Vec<u32>) -> Result<Self> {
        elems.sort_unstable_by(|a, b| b.cmp(a));
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedLabel(format!(
                "repeated entry in β-set {elems:?}"
            )));
        }
        Ok(BetaSet { elems })
    }

    pub(crate) fn from_sorted_desc(elems: Vec<u32>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] > w[1]));
        BetaSet { elems }
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.elems.iter().map(|&x| x as u64).sum()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search_by(|probe| x.cmp(probe)).is_ok()
    }

    /// The shift `X^{+t} = {x + t : x ∈ X} ∪ {0, …, t-1}`.
    pub fn shift(&self, t: u32) -> BetaSet {
        let mut elems: Vec<u32> = self.elems.iter().map(|&x| x + t).collect();
        elems.extend((0..t).rev());
        BetaSet { elems }
    }

    /// Inverse of a shift by one; requires `0` in the set.
    pub(crate) fn unshift(&self) -> Option<BetaSet> {
        if self.elems.last() != Some(&0) {
            return None;
        }
        let n = self.elems.len() - 1;
        Some(BetaSet {
            elems: self.elems[..n].iter().map(|&x| x - 1).collect(),
        })
    }

    pub fn to_partition(&self) -> Partition {
        let len = self.elems.len();
        Partition::new(
            self.elems
                .iter()
                .enumerate()
                .map(|(i, &x)| x - (len - 1 - i) as u32)
                .collect(),
        )
    }
}

impl fmt::Debug for BetaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.elems.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

pub type EQuotient = Vec<Partition>;

/// Splits a set of bead positions onto `e` runners: returns, per runner,
/// the levels `x div e` of the beads with `x mod e = runner`, descending.
pub(crate) fn runner_levels(positions: &[u32], e: u32) -> Vec<Vec<u32>> {
    let mut runners = vec![Vec::new(); e as usize];
    for &x in positions {
        runners[(x % e) as usize].push(x / e);
    }
    for r in runners.iter_mut() {
        r.sort_unstable_by(|a, b| b.cmp(a));
    }
    runners
}

/// `e`-core and `e`-quotient. Runner `j` of the quotient holds the beads
/// congruent to `j` mod `e` in a β-set whose length is a multiple of `e`.
pub fn e_core_quotient(p: &Partition, e: u32) -> (Partition, EQuotient) {
    assert!(e >= 1);
    let len = p.len().div_ceil(e as usize) * e as usize;
    let beta = p.beta_set(len).expect("length suffices");
    let runners = runner_levels(&beta.elems, e);
    let quotient = runners
        .iter()
        .map(|levels| BetaSet::from_sorted_desc(levels.clone()).to_partition())
        .collect();
    let mut core_positions: Vec<u32> = runners
        .iter()
        .enumerate()
        .flat_map(|(j, levels)| (0..levels.len() as u32).map(move |lv| lv * e + j as u32))
        .collect();
    core_positions.sort_unstable_by(|a, b| b.cmp(a));
    (
        BetaSet::from_sorted_desc(core_positions).to_partition(),
        quotient,
    )
}

pub fn e_core(p: &Partition, e: u32) -> Partition {
    e_core_quotient(p, e).0
}

/// The unique partition with the given `e`-core and `e`-quotient,
/// `e = quotient.len()`.
pub fn from_core_quotient(core: &Partition, quotient: &[Partition]) -> Result<Partition> {
    let e = quotient.len() as u32;
    if e == 0 {
        return Err(Error::MalformedLabel("empty quotient tuple".into()));
    }
    if !core.is_core(e) {
        return Err(Error::NotACore(format!("{core:?} has a {e}-hook")));
    }
    let mut len = core.len().div_ceil(e as usize) * e as usize;
    loop {
        let beta = core.beta_set(len)?;
        let runners = runner_levels(&beta.elems, e);
        if runners
            .iter()
            .zip(quotient)
            .all(|(r, part)| r.len() >= part.len())
        {
            let mut positions = Vec::with_capacity(len);
            for (j, (r, part)) in runners.iter().zip(quotient).enumerate() {
                let levels = part.beta_set(r.len())?;
                positions.extend(levels.elems.iter().map(|&lv| lv * e + j as u32));
            }
            return BetaSet::new(positions).map(|b| b.to_partition());
        }
        len += e as usize;
    }
}

/// The `ell`-core tower of a partition: level `δ` is an `ell^δ`-tuple of
/// `ell`-cores. Trailing all-empty levels are not stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoreTower {
    levels: Vec<Vec<Partition>>,
}

impl CoreTower {
    pub fn empty() -> Self {
        CoreTower::default()
    }

    /// Builds a tower from explicit levels, checking shape and that every
    /// entry is an `ell`-core.
    pub fn from_levels(mut levels: Vec<Vec<Partition>>, ell: u32) -> Result<Self> {
        for (d, level) in levels.iter().enumerate() {
            if level.len() != (ell as usize).pow(d as u32) {
                return Err(Error::MalformedLabel(format!(
                    "tower level {d} has {} entries, expected {}",
                    level.len(),
                    (ell as usize).pow(d as u32)
                )));
            }
            if let Some(bad) = level.iter().find(|p| !p.is_core(ell)) {
                return Err(Error::NotACore(format!("{bad:?} is not a {ell}-core")));
            }
        }
        while levels
            .last()
            .is_some_and(|l| l.iter().all(Partition::is_empty))
        {
            levels.pop();
        }
        Ok(CoreTower { levels })
    }

    pub fn levels(&self) -> &[Vec<Partition>] {
        &self.levels
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `Σ_δ ell^δ · |level δ|`.
    pub fn weight(&self, ell: u32) -> u32 {
        self.levels
            .iter()
            .enumerate()
            .map(|(d, level)| ell.pow(d as u32) * level.iter().map(Partition::size).sum::<u32>())
            .sum()
    }

    pub fn to_partition(&self, ell: u32) -> Result<Partition> {
        tower_to_partition(self, ell)
    }
}

impl fmt::Debug for CoreTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.levels.iter()).finish()
    }
}

pub fn core_tower(p: &Partition, ell: u32) -> CoreTower {
    assert!(ell >= 2);
    if p.is_empty() {
        return CoreTower::empty();
    }
    let (core, quotient) = e_core_quotient(p, ell);
    let mut levels = vec![vec![core]];
    let subtowers: Vec<CoreTower> = quotient.iter().map(|q| core_tower(q, ell)).collect();
    let depth = subtowers.iter().map(|t| t.levels.len()).max().unwrap_or(0);
    for d in 0..depth {
        let width = (ell as usize).pow(d as u32);
        let mut level = Vec::with_capacity(width * ell as usize);
        for t in &subtowers {
            match t.levels.get(d) {
                Some(l) => level.extend(l.iter().cloned()),
                None => level.extend(std::iter::repeat_n(Partition::empty(), width)),
            }
        }
        levels.push(level);
    }
    while levels
        .last()
        .is_some_and(|l| l.iter().all(Partition::is_empty))
    {
        levels.pop();
    }
    CoreTower { levels }
}

pub fn tower_to_partition(t: &CoreTower, ell: u32) -> Result<Partition> {
    // `levels[d]` has `ell^d` entries; child `j` owns the `j`-th block of
    // `ell^(d-1)` entries at each depth `d ≥ 1`
    fn build(levels: &[&[Partition]], ell: u32) -> Result<Partition> {
        let Some(top) = levels.first() else {
            return Ok(Partition::empty());
        };
        if levels.len() == 1 {
            return Ok(top[0].clone());
        }
        let quotient = (0..ell as usize)
            .map(|j| {
                let child: Vec<&[Partition]> = levels[1..]
                    .iter()
                    .map(|l| {
                        let w = l.len() / ell as usize;
                        &l[j * w..(j + 1) * w]
                    })
                    .collect();
                build(&child, ell)
            })
            .collect::<Result<Vec<_>>>()?;
        from_core_quotient(&top[0], &quotient)
    }
    for (d, level) in t.levels.iter().enumerate() {
        if level.len() != (ell as usize).pow(d as u32) {
            return Err(Error::MalformedLabel(format!(
                "tower level {d} has wrong width"
            )));
        }
    }
    let levels: Vec<&[Partition]> = t.levels.iter().map(Vec::as_slice).collect();
    build(&levels, ell)
}

/// All partitions of `m`, in decreasing lexicographic order.
pub fn enumerate_partitions(m: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for part in (1..=max.min(rem)).rev() {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// All `e`-cores of size at most `max_size`, ordered by size then
/// decreasing lexicographically.
pub fn enumerate_e_cores(e: u32, max_size: u32) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(enumerate_partitions)
        .filter(|p| p.is_core(e))
        .collect()
}

/// Every ordered `k`-tuple of partitions of total size `w`: first
/// component largest first, each component in partition order.
pub fn enumerate_tuples(k: usize, w: u32) -> Vec<Vec<Partition>> {
    fn rec(k: usize, w: u32, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if k == 0 {
            if w == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if k == 1 {
            for p in enumerate_partitions(w) {
                cur.push(p);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for first in (0..=w).rev() {
            for p in enumerate_partitions(first) {
                cur.push(p);
                rec(k - 1, w - first, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, w, &mut Vec::new(), &mut out);
    out
}

/// Every `ell`-core tower of weight exactly `w`.
pub fn enumerate_towers(ell: u32, w: u32) -> Vec<CoreTower> {
    let cores = enumerate_e_cores(ell, w);
    let mut slots = Vec::new(); // (depth, multiplier) for each slot in order
    let mut d = 0u32;
    while ell.pow(d) <= w.max(1) && (w > 0 || d == 0) {
        for _ in 0..(ell as usize).pow(d) {
            slots.push(d);
        }
        d += 1;
    }
    let depth = d as usize;
    fn rec(
        idx: usize,
        rem: u32,
        slots: &[u32],
        cores: &[Partition],
        ell: u32,
        cur: &mut Vec<Partition>,
        out: &mut Vec<Vec<Partition>>,
    ) {
        if idx == slots.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mult = ell.pow(slots[idx]);
        for c in cores {
            let cost = mult * c.size();
            if cost > rem {
                continue;
            }
            cur.push(c.clone());
            rec(idx + 1, rem - cost, slots, cores, ell, cur, out);
            cur.pop();
        }
    }
    let mut flat = Vec::new();
    rec(0, w, &slots, &cores, ell, &mut Vec::new(), &mut flat);
    flat.into_iter()
        .map(|entries| {
            let mut levels = Vec::with_capacity(depth);
            let mut it = entries.into_iter();
            for d in 0..depth {
                levels.push(it.by_ref().take((ell as usize).pow(d as u32)).collect());
            }
            CoreTower::from_levels(levels, ell).expect("entries are cores")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec())
    }

    #[test]
    fn beta_set_examples() {
        assert_eq!(part(&[2, 1]).beta_set(2).unwrap().elems(), &[3, 1]);
        assert_eq!(Partition::empty().beta_set(3).unwrap().elems(), &[2, 1, 0]);
        assert!(part(&[2, 1]).beta_set(1).is_err());
        for p in enumerate_partitions(7) {
            for extra in 0..4 {
                assert_eq!(p.beta_set(p.len() + extra).unwrap().to_partition(), p);
            }
        }
    }

    #[test]
    fn shift_and_unshift() {
        let b = part(&[3, 1]).beta_set(2).unwrap();
        let s = b.shift(2);
        assert_eq!(s.elems(), &[6, 3, 1, 0]);
        assert_eq!(s.to_partition(), part(&[3, 1]));
        assert_eq!(s.unshift().unwrap().unshift().unwrap(), b);
        assert!(b.unshift().is_none());
    }

    #[test]
    fn core_quotient_examples() {
        let (c, q) = e_core_quotient(&part(&[2, 1]), 2);
        assert_eq!(c, part(&[2, 1]));
        assert!(q.iter().all(Partition::is_empty));
        for e in 1..5 {
            let (c, q) = e_core_quotient(&Partition::empty(), e);
            assert!(c.is_empty());
            assert_eq!(q.len(), e as usize);
            assert!(q.iter().all(Partition::is_empty));
        }
        let (c, q) = e_core_quotient(&part(&[2]), 2);
        assert!(c.is_empty());
        assert_eq!(q.iter().map(Partition::size).sum::<u32>(), 1);
        assert_eq!(from_core_quotient(&c, &q).unwrap(), part(&[2]));
        assert_eq!(
            from_core_quotient(
                &Partition::empty(),
                &[Partition::empty(), Partition::empty()]
            )
            .unwrap(),
            Partition::empty()
        );
    }

    #[test]
    fn from_core_quotient_rejects_non_cores() {
        assert!(
            from_core_quotient(&part(&[2]), &[Partition::empty(), Partition::empty()]).is_err()
        );
    }

    #[test]
    fn hook_lengths_agree_with_core_test() {
        // direct hook-length computation
        fn has_hook(p: &Partition, e: u32) -> bool {
            let conj: Vec<u32> = (0..p.parts().first().copied().unwrap_or(0))
                .map(|j| p.parts().iter().filter(|&&x| x > j).count() as u32)
                .collect();
            p.parts().iter().enumerate().any(|(i, &row)| {
                (0..row).any(|j| {
                    let arm = row - j - 1;
                    let leg = conj[j as usize] - i as u32 - 1;
                    arm + leg + 1 == e
                })
            })
        }
        for m in 0..10 {
            for p in enumerate_partitions(m) {
                for e in 1..6 {
                    assert_eq!(p.is_core(e), !has_hook(&p, e), "{p:?} e={e}");
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..8).map(|m| enumerate_partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        let t = enumerate_tuples(2, 2);
        assert_eq!(
            t,
            vec![
                vec![part(&[2]), Partition::empty()],
                vec![part(&[1, 1]), Partition::empty()],
                vec![part(&[1]), part(&[1])],
                vec![Partition::empty(), part(&[2])],
                vec![Partition::empty(), part(&[1, 1])],
            ]
        );
        for k in 1..5 {
            assert_eq!(enumerate_tuples(k, 0).len(), 1);
        }
        // 2-cores are staircases
        let cores = enumerate_e_cores(2, 10);
        assert_eq!(
            cores,
            vec![
                Partition::empty(),
                part(&[1]),
                part(&[2, 1]),
                part(&[3, 2, 1]),
                part(&[4, 3, 2, 1])
            ]
        );
    }

    #[test]
    fn tower_examples() {
        for ell in [2, 3, 5] {
            assert!(core_tower(&Partition::empty(), ell).is_empty());
        }
        let t = core_tower(&part(&[1]), 3);
        assert_eq!(t.levels(), &[vec![part(&[1])]]);
        // (3) has 3-core ∅ and quotient with a single (1) somewhere
        let t = core_tower(&part(&[3]), 3);
        assert_eq!(t.levels().len(), 2);
        assert!(t.levels()[0][0].is_empty());
        assert_eq!(t.weight(3), 3);
        assert_eq!(t.to_partition(3).unwrap(), part(&[3]));
    }

    #[test]
    fn towers_count_partitions() {
        // towers of weight w are in bijection with partitions of w
        for ell in [2u32, 3, 5] {
            for w in 0..9 {
                let towers = enumerate_towers(ell, w);
                assert_eq!(
                    towers.len(),
                    enumerate_partitions(w).len(),
                    "ell={ell} w={w}"
                );
                let mut images: Vec<Partition> = towers
                    .iter()
                    .map(|t| t.to_partition(ell).unwrap())
                    .collect();
                images.sort();
                let mut parts = enumerate_partitions(w);
                parts.sort();
                assert_eq!(images, parts);
            }
        }
    }

    #[test]
    fn core_quotient_counting_identity() {
        // p(m) = Σ_{e-cores c, |c| ≡ m mod e} #{e-tuples of weight (m-|c|)/e}
        for e in 1..=4u32 {
            for m in 0..=12u32 {
                let expected: usize = enumerate_e_cores(e, m)
                    .iter()
                    .filter(|c| (m - c.size()) % e == 0)
                    .map(|c| enumerate_tuples(e as usize, (m - c.size()) / e).len())
                    .sum();
                assert_eq!(enumerate_partitions(m).len(), expected, "e={e} m={m}");
            }
        }
    }

    fn arb_partition() -> impl proptest::strategy::Strategy<Value = Partition> {
        proptest::collection::vec(0u32..8, 0..8).prop_map(Partition::new)
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn core_quotient_round_trip(p in arb_partition(), e in 1u32..6) {
            let (c, q) = e_core_quotient(&p, e);
            prop_assert!(c.is_core(e));
            prop_assert_eq!(
                c.size() + e * q.iter().map(Partition::size).sum::<u32>(),
                p.size()
            );
            prop_assert_eq!(from_core_quotient(&c, &q).unwrap(), p);
        }

        #[test]
        fn tower_round_trip(p in arb_partition(), ell in prop::sample::select(vec![2u32, 3, 5, 7])) {
            let t = core_tower(&p, ell);
            prop_assert_eq!(t.to_partition(ell).unwrap(), p.clone());
            prop_assert_eq!(CoreTower::from_levels(t.levels().to_vec(), ell).unwrap(), t);
        }

        #[test]
        fn quotient_from_any_core(
            cidx in 0usize..6,
            q in proptest::collection::vec(arb_partition(), 3),
        ) {
            let cores = enumerate_e_cores(3, 8);
            let c = &cores[cidx % cores.len()];
            let p = from_core_quotient(c, &q).unwrap();
            prop_assert_eq!(e_core_quotient(&p, 3), (c.clone(), q));
        }
    }
}
