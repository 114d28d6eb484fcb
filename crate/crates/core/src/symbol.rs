//! Lusztig symbols: normal form, rank and defect, `e`-hook and `e`-cohook
//! cores and quotients, ordered symbols and quotients, the reconstruction
//! operators `κ*(Q,i)` and `(κ,i)*(Q,j)`, and enumeration by rank.
//!
//! Cores and quotients are read off a canonical shift of the symbol. In hook
//! mode each row carries its own `e` runners (`x mod e`) and the
//! representative is the least shift making the longer row a multiple of
//! `e` long. In cohook mode the two rows share `2e` runners indexed by
//! `(row + x div e mod 2, x mod e)`; a cohook is a one-level drop on such a
//! runner, and the representative is the least shift making the total bead
//! count `0` or `1` mod `4e`. Quotients are aligned with the rows of the
//! core's normal form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldctx::Sign;
use crate::partition::{enumerate_partitions, BetaSet, Partition};

/// How `e`-cores of symbols are taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoreMode {
    Hook,
    Cohook,
}

impl CoreMode {
    /// Hooks for a linear prime, cohooks for a unitary one.
    pub fn for_sign(epsilon: Sign) -> Self {
        match epsilon {
            Sign::Plus => CoreMode::Hook,
            Sign::Minus => CoreMode::Cohook,
        }
    }
}

/// An unordered pair of β-sets modulo simultaneous shift, stored in normal
/// form: `0` is not in both rows, and `rows[0] <= rows[1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[BetaSet; 2]", into = "[BetaSet; 2]")]
pub struct LSymbol {
    rows: [BetaSet; 2],
}

impl TryFrom<[BetaSet; 2]> for LSymbol {
    type Error = Error;

    fn try_from(rows: [BetaSet; 2]) -> Result<Self> {
        let [x, y] = rows;
        Ok(LSymbol::from_beta(x, y))
    }
}

impl From<LSymbol> for [BetaSet; 2] {
    fn from(s: LSymbol) -> Self {
        s.rows
    }
}

impl LSymbol {
    pub fn empty() -> Self {
        LSymbol {
            rows: [BetaSet::default(), BetaSet::default()],
        }
    }

    pub fn from_beta(x: BetaSet, y: BetaSet) -> Self {
        let (mut x, mut y) = (x, y);
        while let (Some(ux), Some(uy)) = (x.unshift(), y.unshift()) {
            x = ux;
            y = uy;
        }
        if x > y {
            std::mem::swap(&mut x, &mut y);
        }
        LSymbol { rows: [x, y] }
    }

    pub fn from_rows(x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        Ok(LSymbol::from_beta(BetaSet::new(x)?, BetaSet::new(y)?))
    }

    pub fn rows(&self) -> &[BetaSet; 2] {
        &self.rows
    }

    pub fn rank(&self) -> u64 {
        let n = (self.rows[0].len() + self.rows[1].len()) as u64;
        let sum = self.rows[0].sum() + self.rows[1].sum();
        let offset = if n == 0 { 0 } else { (n - 1) * (n - 1) / 4 };
        sum - offset
    }

    pub fn defect(&self) -> u32 {
        self.rows[0].len().abs_diff(self.rows[1].len()) as u32
    }

    pub fn is_degenerate(&self) -> bool {
        self.rows[0] == self.rows[1]
    }

    /// Shifts both rows by `t`; the result is not normalized.
    pub fn shifted_rows(&self, t: u32) -> [BetaSet; 2] {
        [self.rows[0].shift(t), self.rows[1].shift(t)]
    }
}

impl fmt::Debug for LSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?},{:?}]", self.rows[0], self.rows[1])
    }
}

/// A symbol with an orientation; both orientations coincide when the
/// symbol is degenerate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderedSymbol {
    base: LSymbol,
    orient: u8,
}

impl OrderedSymbol {
    pub fn new(base: LSymbol, orient: u8) -> Self {
        let orient = if base.is_degenerate() { 0 } else { orient % 2 };
        OrderedSymbol { base, orient }
    }

    pub fn base(&self) -> &LSymbol {
        &self.base
    }

    pub fn orient(&self) -> u8 {
        self.orient
    }

    /// Rows with the orientation applied.
    fn ordered_rows(&self) -> (&BetaSet, &BetaSet) {
        let [a, b] = &self.base.rows;
        if self.orient == 0 {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// An unordered pair of `e`-tuples of partitions, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymQuotient {
    pair: [Vec<Partition>; 2],
}

impl SymQuotient {
    pub fn new(a: Vec<Partition>, b: Vec<Partition>) -> Self {
        assert_eq!(a.len(), b.len(), "quotient halves differ in length");
        if a <= b {
            SymQuotient { pair: [a, b] }
        } else {
            SymQuotient { pair: [b, a] }
        }
    }

    pub fn pair(&self) -> &[Vec<Partition>; 2] {
        &self.pair
    }

    pub fn e(&self) -> usize {
        self.pair[0].len()
    }

    pub fn size(&self) -> u32 {
        self.pair.iter().flatten().map(Partition::size).sum()
    }

    pub fn is_degenerate(&self) -> bool {
        self.pair[0] == self.pair[1]
    }

    pub fn oriented(&self, orient: u8) -> OrderedSymQuotient {
        let [a, b] = &self.pair;
        if orient.is_multiple_of(2) {
            OrderedSymQuotient::from_halves(a, b)
        } else {
            OrderedSymQuotient::from_halves(b, a)
        }
    }
}

/// A sequence of `2e` partitions; orientation `0` when the first half is
/// the smaller one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderedSymQuotient {
    seq: Vec<Partition>,
}

impl OrderedSymQuotient {
    pub fn new(seq: Vec<Partition>) -> Result<Self> {
        if !seq.len().is_multiple_of(2) || seq.is_empty() {
            return Err(Error::MalformedLabel(format!(
                "ordered quotient needs an even positive length, got {}",
                seq.len()
            )));
        }
        Ok(OrderedSymQuotient { seq })
    }

    pub fn from_halves(a: &[Partition], b: &[Partition]) -> Self {
        assert_eq!(a.len(), b.len());
        OrderedSymQuotient {
            seq: a.iter().chain(b).cloned().collect(),
        }
    }

    pub fn seq(&self) -> &[Partition] {
        &self.seq
    }

    pub fn halves(&self) -> (&[Partition], &[Partition]) {
        self.seq.split_at(self.seq.len() / 2)
    }

    pub fn orient(&self) -> u8 {
        let (a, b) = self.halves();
        u8::from(a > b)
    }

    pub fn flip(&self) -> Self {
        let (a, b) = self.halves();
        OrderedSymQuotient::from_halves(b, a)
    }

    pub fn base(&self) -> SymQuotient {
        let (a, b) = self.halves();
        SymQuotient::new(a.to_vec(), b.to_vec())
    }

    pub fn size(&self) -> u32 {
        self.seq.iter().map(Partition::size).sum()
    }
}

/// Least shift putting a pair of rows at the canonical runner alignment.
fn base_shift(lens: [usize; 2], e: u32, mode: CoreMode) -> u32 {
    match mode {
        CoreMode::Hook => {
            let m = lens[0].max(lens[1]) as u32;
            (e - m % e) % e
        }
        CoreMode::Cohook => {
            let n = (lens[0] + lens[1]) as u32;
            (0..2 * e)
                .find(|t| (n + 2 * t) % (4 * e) <= 1)
                .expect("some shift below 2e aligns")
        }
    }
}

/// Shift step preserving runner labels.
fn period(e: u32, mode: CoreMode) -> u32 {
    match mode {
        CoreMode::Hook => e,
        CoreMode::Cohook => 2 * e,
    }
}

/// Runner index and level of a bead. Hook runners are `0..e` per row,
/// cohook runners `0..2e` shared.
fn runner_of(row: usize, x: u32, e: u32, mode: CoreMode) -> (usize, usize, u32) {
    let level = x / e;
    let rho = (x % e) as usize;
    match mode {
        CoreMode::Hook => (row, rho, level),
        CoreMode::Cohook => {
            let c = (row + level as usize) % 2;
            (c, rho, level)
        }
    }
}

/// Inverse of `runner_of`: the row and position at a runner level.
fn place(half: usize, rho: usize, level: u32, e: u32, mode: CoreMode) -> (usize, u32) {
    let x = level * e + rho as u32;
    match mode {
        CoreMode::Hook => (half, x),
        CoreMode::Cohook => ((half + level as usize) % 2, x),
    }
}

/// Bead levels on each runner, `[half][rho]`, sorted descending.
fn abacus(rows: [&BetaSet; 2], e: u32, mode: CoreMode) -> [Vec<Vec<u32>>; 2] {
    let mut runners = [vec![Vec::new(); e as usize], vec![Vec::new(); e as usize]];
    for (r, row) in rows.iter().enumerate() {
        for &x in row.elems() {
            let (half, rho, level) = runner_of(r, x, e, mode);
            runners[half][rho].push(level);
        }
    }
    for half in runners.iter_mut() {
        for levels in half.iter_mut() {
            levels.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    runners
}

/// Places beads on runners: per `[half][rho]`, a list of levels.
fn from_abacus(runners: &[Vec<Vec<u32>>; 2], e: u32, mode: CoreMode) -> [BetaSet; 2] {
    let mut rows = [Vec::new(), Vec::new()];
    for (half, tuple) in runners.iter().enumerate() {
        for (rho, levels) in tuple.iter().enumerate() {
            for &level in levels {
                let (r, x) = place(half, rho, level, e, mode);
                rows[r].push(x);
            }
        }
    }
    let [x, y] = rows;
    [
        BetaSet::new(x).expect("runner positions are distinct"),
        BetaSet::new(y).expect("runner positions are distinct"),
    ]
}

/// Core and aligned quotient: `tuples[k]` belongs with `core.rows()[k]`
/// (hook) or with runner half `k` of the core's first row (cohook).
pub(crate) fn decompose(s: &LSymbol, e: u32, mode: CoreMode) -> (LSymbol, [Vec<Partition>; 2]) {
    assert!(e >= 1);
    let t = base_shift([s.rows[0].len(), s.rows[1].len()], e, mode);
    let [a, b] = s.shifted_rows(t);
    let runners = abacus([&a, &b], e, mode);
    let tuples = runners.clone().map(|half| {
        half.into_iter()
            .map(|levels| {
                BetaSet::new(levels)
                    .expect("distinct levels")
                    .to_partition()
            })
            .collect::<Vec<_>>()
    });
    let pushed = runners.map(|half| {
        half.into_iter()
            .map(|levels| (0..levels.len() as u32).rev().collect::<Vec<_>>())
            .collect::<Vec<_>>()
    });
    let [mut ca, mut cb] = from_abacus(&pushed, e, mode);
    while let (Some(ua), Some(ub)) = (ca.unshift(), cb.unshift()) {
        ca = ua;
        cb = ub;
    }
    let [ta, tb] = tuples;
    if ca > cb {
        (LSymbol { rows: [cb, ca] }, [tb, ta])
    } else {
        (LSymbol { rows: [ca, cb] }, [ta, tb])
    }
}

/// Places the quotient halves on the runners of an ordered pair of core
/// rows, shifting by whole periods until every runner has enough beads.
fn attach(
    rows: (&BetaSet, &BetaSet),
    first: &[Partition],
    second: &[Partition],
    e: u32,
    mode: CoreMode,
) -> Result<LSymbol> {
    if first.len() != e as usize || second.len() != e as usize {
        return Err(Error::MalformedLabel(format!(
            "quotient halves of lengths {} and {} for e = {e}",
            first.len(),
            second.len()
        )));
    }
    let halves = [first, second];
    let mut t = base_shift([rows.0.len(), rows.1.len()], e, mode);
    loop {
        let a = rows.0.shift(t);
        let b = rows.1.shift(t);
        let runners = abacus([&a, &b], e, mode);
        let fits =
            (0..2).all(|h| (0..e as usize).all(|r| runners[h][r].len() >= halves[h][r].len()));
        if fits {
            let mut placed = [Vec::new(), Vec::new()];
            for h in 0..2 {
                for r in 0..e as usize {
                    let levels = halves[h][r].beta_set(runners[h][r].len())?;
                    placed[h].push(levels.elems().to_vec());
                }
            }
            let [x, y] = from_abacus(&placed, e, mode);
            return Ok(LSymbol::from_beta(x, y));
        }
        t += period(e, mode);
    }
}

/// Whether no `e`-hook (or `e`-cohook) can be removed.
pub fn is_sym_core(s: &LSymbol, e: u32, mode: CoreMode) -> bool {
    let [a, b] = &s.rows;
    match mode {
        CoreMode::Hook => [a, b]
            .iter()
            .all(|row| row.elems().iter().all(|&x| x < e || row.contains(x - e))),
        CoreMode::Cohook => [(a, b), (b, a)]
            .iter()
            .all(|(row, other)| row.elems().iter().all(|&x| x < e || other.contains(x - e))),
    }
}

pub fn sym_core_quotient(s: &LSymbol, e: u32, mode: CoreMode) -> (LSymbol, SymQuotient) {
    let (core, [ta, tb]) = decompose(s, e, mode);
    (core, SymQuotient::new(ta, tb))
}

pub fn sym_core(s: &LSymbol, e: u32, mode: CoreMode) -> LSymbol {
    decompose(s, e, mode).0
}

/// The quotient of `s` flattened with the half belonging to the core's
/// first row first.
pub fn aligned_quotient(s: &LSymbol, e: u32, mode: CoreMode) -> (LSymbol, OrderedSymQuotient) {
    let (core, [ta, tb]) = decompose(s, e, mode);
    (core, OrderedSymQuotient::from_halves(&ta, &tb))
}

fn check_core(core: &LSymbol, e: u32, mode: CoreMode) -> Result<()> {
    if is_sym_core(core, e, mode) {
        Ok(())
    } else {
        Err(Error::NotACore(format!(
            "{core:?} is not an {e}-core in {mode:?} mode"
        )))
    }
}

/// All symbols with the given core and quotient: one or two of them.
pub fn from_core_quotient_sym(
    core: &LSymbol,
    q: &SymQuotient,
    e: u32,
    mode: CoreMode,
) -> Result<Vec<LSymbol>> {
    check_core(core, e, mode)?;
    let [a, b] = &core.rows;
    let [qa, qb] = &q.pair;
    let mut out = vec![
        attach((a, b), qa, qb, e, mode)?,
        attach((a, b), qb, qa, e, mode)?,
    ];
    out.sort();
    out.dedup();
    Ok(out)
}

/// `κ*(Q,i)`: the first half of `oq` goes with the first row of `κ`.
pub fn star_plain(
    core: &LSymbol,
    oq: &OrderedSymQuotient,
    e: u32,
    mode: CoreMode,
) -> Result<LSymbol> {
    check_core(core, e, mode)?;
    let (first, second) = oq.halves();
    attach((&core.rows[0], &core.rows[1]), first, second, e, mode)
}

/// `(κ,i)*(Q,j)`: the first half of `oq` goes with the first row of the
/// oriented core. Defined for non-degenerate cores only.
pub fn star_oriented(
    oc: &OrderedSymbol,
    oq: &OrderedSymQuotient,
    e: u32,
    mode: CoreMode,
) -> Result<LSymbol> {
    if oc.base.is_degenerate() {
        return Err(Error::MalformedLabel(format!(
            "oriented reconstruction over degenerate core {:?}",
            oc.base
        )));
    }
    check_core(&oc.base, e, mode)?;
    let (first, second) = oq.halves();
    attach(oc.ordered_rows(), first, second, e, mode)
}

/// Every symbol of the given rank whose defect satisfies `pred`, sorted by
/// defect and then by symbol.
pub fn enumerate_symbols(rank: u64, pred: impl Fn(u32) -> bool) -> Vec<LSymbol> {
    let mut out = Vec::new();
    let mut d = 0u32;
    while (d as u64 * d as u64) / 4 <= rank {
        if pred(d) {
            let rest = (rank - (d as u64 * d as u64) / 4) as u32;
            let mut batch = Vec::new();
            for k in 0..=rest {
                for alpha in enumerate_partitions(k) {
                    for beta in enumerate_partitions(rest - k) {
                        let len = alpha.len().max(beta.len()) + 1;
                        let x = alpha.beta_set(len + d as usize).expect("length suffices");
                        let y = beta.beta_set(len).expect("length suffices");
                        let s = LSymbol::from_beta(x, y);
                        debug_assert_eq!(s.rank(), rank);
                        debug_assert_eq!(s.defect(), d);
                        batch.push(s);
                    }
                }
            }
            batch.sort();
            batch.dedup();
            out.extend(batch);
        }
        d += 1;
    }
    out
}
