//! Labels for `Sp_2n(q)` at the prime `ell`: semisimple classes of the dual
//! group `SO_2n+1(q)`, blocks `(s, κ, i)`, Brauer characters `(s, λ, j)`,
//! and weights in the `Q`-form (ordered quotients) and the `K`-form
//! (`ell`-core towers per branch).

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_classes, is_ell_prime_order, GaloisField, PolyClass};
use crate::fieldctx::{FieldContext, Sign};
use crate::partition::{
    core_tower, e_core, e_core_quotient, enumerate_partitions, enumerate_towers, enumerate_tuples,
    CoreTower, Partition,
};
use crate::symbol::{
    aligned_quotient, enumerate_symbols, sym_core, CoreMode, LSymbol, OrderedSymQuotient,
};

/// An elementary divisor as a map key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Divisor {
    XMinus1,
    XPlus1,
    Other(PolyClass),
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Divisor::XMinus1 => s.serialize_str("X-1"),
            Divisor::XPlus1 => s.serialize_str("X+1"),
            Divisor::Other(c) => c.gamma().coeffs().serialize(s),
        }
    }
}

/// Data indexed by elementary divisors: `A` at `X-1` and `X+1`, `B` at the
/// classes in `F1 ∪ F2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorMap<A, B> {
    pub minus: A,
    pub plus: A,
    pub other: BTreeMap<PolyClass, B>,
}

impl<A: Serialize, B: Serialize> Serialize for DivisorMap<A, B> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entry<'a, B> {
            class: &'a PolyClass,
            value: &'a B,
        }
        impl<B: Serialize> Serialize for Entry<'_, B> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut st = s.serialize_struct("Entry", 2)?;
                st.serialize_field("poly", self.class.gamma().coeffs())?;
                st.serialize_field("value", self.value)?;
                st.end()
            }
        }
        let entries: Vec<Entry<'_, B>> = self
            .other
            .iter()
            .map(|(class, value)| Entry { class, value })
            .collect();
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("X-1", &self.minus)?;
        m.serialize_entry("X+1", &self.plus)?;
        m.serialize_entry("other", &entries)?;
        m.end()
    }
}

/// Multiplicities `m_Γ(s)` with the types at `X±1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SemisimpleLabel {
    pub mult: DivisorMap<u32, u32>,
    #[serde(rename = "etaXplus", skip_serializing_if = "Option::is_none")]
    pub eta_plus: Option<Sign>,
    #[serde(rename = "etaXminus")]
    pub eta_minus: Sign,
}

impl SemisimpleLabel {
    /// `η_{X+1}`, read as `+1` when `X+1` is absent.
    pub fn eta_plus_or_default(&self) -> Sign {
        self.eta_plus.unwrap_or(Sign::Plus)
    }
}

pub type CoreMap = DivisorMap<LSymbol, Partition>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BlockLabel {
    pub s: SemisimpleLabel,
    pub kappa: CoreMap,
    pub i: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IBrLabel {
    pub s: SemisimpleLabel,
    pub lambda: CoreMap,
    pub j: u8,
}

pub type QMap = DivisorMap<OrderedSymQuotient, Vec<Partition>>;
pub type KMap = DivisorMap<Vec<CoreTower>, Vec<CoreTower>>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeightLabelQ {
    pub block: BlockLabel,
    pub q: QMap,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeightLabelK {
    pub block: BlockLabel,
    pub k: KMap,
}

/// One factor of a radical subgroup: `t` copies of the basic subgroup at
/// `(Γ, δ, branch)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ShapeEntry {
    pub gamma: Divisor,
    pub delta: u32,
    pub branch: usize,
    pub t: u32,
}

/// Which symbols are admissible at `X±1` for a given multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum SymbolFamily {
    /// Odd defect, at `X-1`.
    Odd,
    /// Defect `0` or `2` mod 4 at `X+1`, per `η_{X+1}`.
    Even(Sign),
}

impl SymbolFamily {
    fn admits(self, defect: u32) -> bool {
        match self {
            SymbolFamily::Odd => defect % 2 == 1,
            SymbolFamily::Even(Sign::Plus) => defect.is_multiple_of(4),
            SymbolFamily::Even(Sign::Minus) => defect % 4 == 2,
        }
    }
}

type Buckets<T> = BTreeMap<T, Vec<T>>;

/// Everything needed to enumerate labels for one `(q, ell, n)`.
#[derive(Debug)]
pub struct LabelSpace {
    ctx: FieldContext,
    fq: GaloisField,
    n: u32,
    mode: CoreMode,
    eta_constant: Sign,
    classes: Vec<PolyClass>,
    ell_prime: BTreeMap<PolyClass, bool>,
    frobenius: BTreeMap<PolyClass, PolyClass>,
    partitions: BTreeMap<(u64, u32), Buckets<Partition>>,
    symbols: BTreeMap<(SymbolFamily, u64), Buckets<LSymbol>>,
}

impl LabelSpace {
    pub fn new(ctx: &FieldContext, n: u32) -> Result<Self> {
        Self::with_eta_constant(ctx, n, Sign::Plus)
    }

    /// `eta_constant` is the global factor `c` in
    /// `η_{X-1} = c · η_{X+1} · Π ε_Γ^{m_Γ}`.
    pub fn with_eta_constant(ctx: &FieldContext, n: u32, eta_constant: Sign) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedLabel("rank n must be positive".into()));
        }
        ctx.check_rank(n)?;
        let fq = GaloisField::for_context(ctx)?;
        let classes = enumerate_classes(ctx, &fq, 2 * n)?;
        let ell_prime = classes
            .iter()
            .map(|c| Ok((c.clone(), is_ell_prime_order(ctx, &fq, c)?)))
            .collect::<Result<_>>()?;
        let frobenius = classes
            .iter()
            .map(|c| Ok((c.clone(), c.frobenius(ctx, &fq, 1)?)))
            .collect::<Result<_>>()?;
        let e = ctx.e as u32;
        let mode = CoreMode::for_sign(ctx.epsilon);

        let mut partitions = BTreeMap::new();
        for c in &classes {
            for m in 0..=(2 * n + 1) / c.degree() {
                partitions.entry((c.e_gamma(), m)).or_insert_with(|| {
                    let mut b: Buckets<Partition> = BTreeMap::new();
                    for p in enumerate_partitions(m) {
                        b.entry(e_core(&p, c.e_gamma() as u32)).or_default().push(p);
                    }
                    b
                });
            }
        }
        let mut symbols = BTreeMap::new();
        for family in [
            SymbolFamily::Odd,
            SymbolFamily::Even(Sign::Plus),
            SymbolFamily::Even(Sign::Minus),
        ] {
            for rank in 0..=n as u64 {
                let mut b: Buckets<LSymbol> = BTreeMap::new();
                for s in enumerate_symbols(rank, |d| family.admits(d)) {
                    b.entry(sym_core(&s, e, mode)).or_default().push(s);
                }
                symbols.insert((family, rank), b);
            }
        }
        Ok(LabelSpace {
            ctx: *ctx,
            fq,
            n,
            mode,
            eta_constant,
            classes,
            ell_prime,
            frobenius,
            partitions,
            symbols,
        })
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn field(&self) -> &GaloisField {
        &self.fq
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mode(&self) -> CoreMode {
        self.mode
    }

    pub fn e(&self) -> u32 {
        self.ctx.e as u32
    }

    /// The `F1` and `F2` classes that can occur in rank `n`.
    pub fn classes(&self) -> &[PolyClass] {
        &self.classes
    }

    /// Image of a class under `x -> x^(p^i)`.
    pub fn frobenius_image(&self, c: &PolyClass, i: u32) -> PolyClass {
        let mut out = c;
        for _ in 0..i % self.ctx.f {
            out = &self.frobenius[out];
        }
        out.clone()
    }

    fn eta_minus_for(&self, mult: &DivisorMap<u32, u32>, eta_plus: Sign) -> Sign {
        mult.other
            .iter()
            .fold(self.eta_constant * eta_plus, |acc, (c, &m)| {
                acc * c.sign().pow(m as u64)
            })
    }

    /// All semisimple labels of `SO_2n+1(q)`, optionally only those of
    /// `ell'`-order.
    pub fn enumerate_semisimple(&self, ell_prime_only: bool) -> Vec<SemisimpleLabel> {
        let classes: Vec<&PolyClass> = self
            .classes
            .iter()
            .filter(|c| !ell_prime_only || self.ell_prime[*c])
            .collect();
        fn distribute(
            classes: &[&PolyClass],
            budget: u32,
            cur: &mut BTreeMap<PolyClass, u32>,
            out: &mut Vec<BTreeMap<PolyClass, u32>>,
        ) {
            let Some((first, rest)) = classes.split_first() else {
                if budget == 0 {
                    out.push(cur.clone());
                }
                return;
            };
            let d = first.degree();
            for m in 0..=budget / d {
                if m > 0 {
                    cur.insert((*first).clone(), m);
                }
                distribute(rest, budget - m * d, cur, out);
                cur.remove(*first);
            }
        }
        let total = 2 * self.n + 1;
        let mut out = Vec::new();
        for minus in (1..=total).step_by(2) {
            for plus in (0..=total - minus).step_by(2) {
                let mut others = Vec::new();
                distribute(
                    &classes,
                    total - minus - plus,
                    &mut BTreeMap::new(),
                    &mut others,
                );
                for other in others {
                    let mult = DivisorMap { minus, plus, other };
                    let etas: &[Option<Sign>] = if plus > 0 {
                        &[Some(Sign::Plus), Some(Sign::Minus)]
                    } else {
                        &[None]
                    };
                    for &eta_plus in etas {
                        let eta_minus = self.eta_minus_for(&mult, eta_plus.unwrap_or(Sign::Plus));
                        out.push(SemisimpleLabel {
                            mult: mult.clone(),
                            eta_plus,
                            eta_minus,
                        });
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_ell_prime(&self, s: &SemisimpleLabel) -> bool {
        s.mult
            .other
            .keys()
            .all(|c| self.ell_prime.get(c).copied().unwrap_or(false))
    }

    fn symbol_buckets(&self, family: SymbolFamily, rank: u64) -> &Buckets<LSymbol> {
        &self.symbols[&(family, rank)]
    }

    fn minus_buckets(&self, s: &SemisimpleLabel) -> &Buckets<LSymbol> {
        self.symbol_buckets(SymbolFamily::Odd, (s.mult.minus / 2) as u64)
    }

    fn plus_buckets(&self, s: &SemisimpleLabel) -> &Buckets<LSymbol> {
        self.symbol_buckets(
            SymbolFamily::Even(s.eta_plus_or_default()),
            (s.mult.plus / 2) as u64,
        )
    }

    fn partition_buckets(&self, c: &PolyClass, m: u32) -> &Buckets<Partition> {
        &self.partitions[&(c.e_gamma(), m)]
    }

    /// `w_Γ` for every divisor in the support of the block.
    pub fn weights(&self, b: &BlockLabel) -> Result<DivisorMap<u32, u32>> {
        let e = self.ctx.e;
        let solve = |m: u64, base: u64, step: u64, what: &str| -> Result<u32> {
            if m < base || !(m - base).is_multiple_of(step) {
                return Err(Error::MalformedLabel(format!(
                    "no weight at {what}: multiplicity {m}, core contribution {base}, step {step}"
                )));
            }
            Ok(((m - base) / step) as u32)
        };
        let minus = solve(
            b.s.mult.minus as u64,
            2 * b.kappa.minus.rank() + 1,
            2 * e,
            "X-1",
        )?;
        let plus = solve(b.s.mult.plus as u64, 2 * b.kappa.plus.rank(), 2 * e, "X+1")?;
        if b.kappa.other.keys().ne(b.s.mult.other.keys()) {
            return Err(Error::MalformedLabel(
                "core support differs from the semisimple support".into(),
            ));
        }
        let other =
            b.s.mult
                .other
                .iter()
                .map(|(c, &m)| {
                    let size = b.kappa.other[c].size() as u64;
                    Ok((
                        c.clone(),
                        solve(m as u64, size, c.e_gamma(), "F1/F2 class")?,
                    ))
                })
                .collect::<Result<_>>()?;
        Ok(DivisorMap { minus, plus, other })
    }

    pub fn weight_of(&self, b: &BlockLabel, gamma: &Divisor) -> Result<u32> {
        let w = self.weights(b)?;
        match gamma {
            Divisor::XMinus1 => Ok(w.minus),
            Divisor::XPlus1 => Ok(w.plus),
            Divisor::Other(c) => w
                .other
                .get(c)
                .copied()
                .ok_or_else(|| Error::MalformedLabel(format!("{c:?} not in the support"))),
        }
    }

    /// Blocks with the given semisimple part.
    pub fn blocks_of(&self, s: &SemisimpleLabel) -> Vec<BlockLabel> {
        let minus: Vec<LSymbol> = self.minus_buckets(s).keys().cloned().collect();
        let plus: Vec<LSymbol> = self.plus_buckets(s).keys().cloned().collect();
        let other: Vec<(PolyClass, Vec<Partition>)> = s
            .mult
            .other
            .iter()
            .map(|(c, &m)| {
                (
                    c.clone(),
                    self.partition_buckets(c, m).keys().cloned().collect(),
                )
            })
            .collect();
        let mut out = Vec::new();
        for kappa in product(&minus, &plus, &other) {
            let is = if kappa.plus.is_degenerate() {
                0..1
            } else {
                0..2
            };
            for i in is {
                out.push(BlockLabel {
                    s: s.clone(),
                    kappa: kappa.clone(),
                    i,
                });
            }
        }
        out
    }

    /// All blocks, in canonical order.
    pub fn enumerate_blocks(&self) -> Vec<BlockLabel> {
        self.enumerate_semisimple(true)
            .iter()
            .flat_map(|s| self.blocks_of(s))
            .collect()
    }

    /// Brauer character labels of a block: `λ` ranges over the labels with
    /// core `κ`; `j = i` unless `κ_{X+1}` is degenerate.
    pub fn enumerate_ibr(&self, b: &BlockLabel) -> Vec<IBrLabel> {
        let pick =
            |buckets: &Buckets<LSymbol>, k: &LSymbol| buckets.get(k).cloned().unwrap_or_default();
        let minus = pick(self.minus_buckets(&b.s), &b.kappa.minus);
        let plus = pick(self.plus_buckets(&b.s), &b.kappa.plus);
        let other: Vec<(PolyClass, Vec<Partition>)> =
            b.s.mult
                .other
                .iter()
                .map(|(c, &m)| {
                    let lambdas = self.partition_buckets(c, m).get(&b.kappa.other[c]).cloned();
                    (c.clone(), lambdas.unwrap_or_default())
                })
                .collect();
        let mut out = Vec::new();
        for lambda in product(&minus, &plus, &other) {
            if b.kappa.plus.is_degenerate() {
                let js = if lambda.plus.is_degenerate() {
                    0..1
                } else {
                    0..2
                };
                for j in js {
                    out.push(IBrLabel {
                        s: b.s.clone(),
                        lambda: lambda.clone(),
                        j,
                    });
                }
            } else {
                assert!(
                    !lambda.plus.is_degenerate(),
                    "degenerate symbol over non-degenerate core {:?}",
                    b.kappa.plus
                );
                out.push(IBrLabel {
                    s: b.s.clone(),
                    lambda,
                    j: b.i,
                });
            }
        }
        out
    }

    /// Every `(s, λ, j)` with `s` of `ell'`-order, regardless of blocks.
    pub fn enumerate_ibr_universe(&self) -> Vec<IBrLabel> {
        let mut out = Vec::new();
        for s in self.enumerate_semisimple(true) {
            let all = |b: &Buckets<LSymbol>| b.values().flatten().cloned().collect::<Vec<_>>();
            let minus = all(self.minus_buckets(&s));
            let plus = all(self.plus_buckets(&s));
            let other: Vec<(PolyClass, Vec<Partition>)> = s
                .mult
                .other
                .iter()
                .map(|(c, &m)| (c.clone(), enumerate_partitions(m)))
                .collect();
            for lambda in product(&minus, &plus, &other) {
                let js = if lambda.plus.is_degenerate() {
                    0..1
                } else {
                    0..2
                };
                for j in js {
                    out.push(IBrLabel {
                        s: s.clone(),
                        lambda: lambda.clone(),
                        j,
                    });
                }
            }
        }
        out
    }

    /// The block containing a Brauer character: take cores.
    pub fn block_of(&self, ib: &IBrLabel) -> BlockLabel {
        let e = self.e();
        let kappa = DivisorMap {
            minus: sym_core(&ib.lambda.minus, e, self.mode),
            plus: sym_core(&ib.lambda.plus, e, self.mode),
            other: ib
                .lambda
                .other
                .iter()
                .map(|(c, l)| (c.clone(), e_core(l, c.e_gamma() as u32)))
                .collect(),
        };
        let i = if kappa.plus.is_degenerate() { 0 } else { ib.j };
        BlockLabel {
            s: ib.s.clone(),
            kappa,
            i,
        }
    }

    /// Weights of a block as ordered quotients: `β_Γ e_Γ`-tuples of total
    /// size `w_Γ`.
    pub fn enumerate_weights_q(&self, b: &BlockLabel) -> Result<Vec<WeightLabelQ>> {
        let w = self.weights(b)?;
        let e = self.e() as usize;
        let seqs = |w: u32| -> Vec<OrderedSymQuotient> {
            enumerate_tuples(2 * e, w)
                .into_iter()
                .map(|t| OrderedSymQuotient::new(t).expect("even length"))
                .collect()
        };
        let other: Vec<(PolyClass, Vec<Vec<Partition>>)> = w
            .other
            .iter()
            .map(|(c, &wc)| (c.clone(), enumerate_tuples(c.branches(), wc)))
            .collect();
        Ok(product(&seqs(w.minus), &seqs(w.plus), &other)
            .into_iter()
            .map(|q| WeightLabelQ {
                block: b.clone(),
                q,
            })
            .collect())
    }

    /// Weights of a block as `ell`-core towers per branch, with
    /// `Σ_b Σ_δ ell^δ |level δ of branch b| = w_Γ`.
    pub fn enumerate_weights_k(&self, b: &BlockLabel) -> Result<Vec<WeightLabelK>> {
        let w = self.weights(b)?;
        let ell = self.ctx.ell as u32;
        let mut cache: BTreeMap<u32, Vec<CoreTower>> = BTreeMap::new();
        let mut branchwise = |branches: usize, w: u32| -> Vec<Vec<CoreTower>> {
            for k in 0..=w {
                cache.entry(k).or_insert_with(|| enumerate_towers(ell, k));
            }
            branch_towers(branches, w, &cache)
        };
        let e = self.e() as usize;
        let minus = branchwise(2 * e, w.minus);
        let plus = branchwise(2 * e, w.plus);
        let other: Vec<(PolyClass, Vec<Vec<CoreTower>>)> = w
            .other
            .iter()
            .map(|(c, &wc)| (c.clone(), branchwise(c.branches(), wc)))
            .collect();
        Ok(product(&minus, &plus, &other)
            .into_iter()
            .map(|k| WeightLabelK {
                block: b.clone(),
                k,
            })
            .collect())
    }

    pub fn k_to_q(&self, wk: &WeightLabelK) -> Result<WeightLabelQ> {
        let ell = self.ctx.ell as u32;
        let seq = |towers: &[CoreTower]| -> Result<Vec<Partition>> {
            towers.iter().map(|t| t.to_partition(ell)).collect()
        };
        let q = DivisorMap {
            minus: OrderedSymQuotient::new(seq(&wk.k.minus)?)?,
            plus: OrderedSymQuotient::new(seq(&wk.k.plus)?)?,
            other: wk
                .k
                .other
                .iter()
                .map(|(c, t)| Ok((c.clone(), seq(t)?)))
                .collect::<Result<_>>()?,
        };
        Ok(WeightLabelQ {
            block: wk.block.clone(),
            q,
        })
    }

    pub fn q_to_k(&self, wq: &WeightLabelQ) -> WeightLabelK {
        let ell = self.ctx.ell as u32;
        let towers = |parts: &[Partition]| -> Vec<CoreTower> {
            parts.iter().map(|p| core_tower(p, ell)).collect()
        };
        let k = DivisorMap {
            minus: towers(wq.q.minus.seq()),
            plus: towers(wq.q.plus.seq()),
            other: wq
                .q
                .other
                .iter()
                .map(|(c, t)| (c.clone(), towers(t)))
                .collect(),
        };
        WeightLabelK {
            block: wq.block.clone(),
            k,
        }
    }

    /// The factors `(Γ, δ, branch, t)` of the radical subgroup, `t > 0`.
    pub fn radical_shape(&self, wk: &WeightLabelK) -> Vec<ShapeEntry> {
        let mut out = Vec::new();
        let mut push = |gamma: Divisor, towers: &[CoreTower]| {
            for (branch, tower) in towers.iter().enumerate() {
                for (delta, level) in tower.levels().iter().enumerate() {
                    let t: u32 = level.iter().map(Partition::size).sum();
                    if t > 0 {
                        out.push(ShapeEntry {
                            gamma: gamma.clone(),
                            delta: delta as u32,
                            branch,
                            t,
                        });
                    }
                }
            }
        };
        push(Divisor::XMinus1, &wk.k.minus);
        push(Divisor::XPlus1, &wk.k.plus);
        for (c, towers) in &wk.k.other {
            push(Divisor::Other(c.clone()), towers);
        }
        out
    }

    /// Checks `Σ_Γ deg Γ · (m_Γ(s_0) + β_Γ e_Γ Σ ell^δ t) = 2n + 1`, where
    /// `s_0` carries the core and the shape carries the rest.
    pub fn dimension_audit(&self, wk: &WeightLabelK) -> bool {
        let ell = self.ctx.ell;
        let kappa = &wk.block.kappa;
        let mut base: BTreeMap<Divisor, (u64, u64, u64)> = BTreeMap::new();
        base.insert(
            Divisor::XMinus1,
            (1, 2 * kappa.minus.rank() + 1, 2 * self.ctx.e),
        );
        base.insert(Divisor::XPlus1, (1, 2 * kappa.plus.rank(), 2 * self.ctx.e));
        for (c, k) in &kappa.other {
            base.insert(
                Divisor::Other(c.clone()),
                (c.degree() as u64, k.size() as u64, c.e_gamma()),
            );
        }
        let mut total: u64 = base.values().map(|(deg, m0, _)| deg * m0).sum();
        for entry in self.radical_shape(wk) {
            let Some((deg, _, step)) = base.get(&entry.gamma) else {
                return false;
            };
            total += deg * step * ell.pow(entry.delta) * entry.t as u64;
        }
        total == 2 * self.n as u64 + 1
    }

    /// The aligned quotient of a symbol at `X±1`, for use by the bijection.
    pub fn symbol_quotient(&self, s: &LSymbol) -> (LSymbol, OrderedSymQuotient) {
        aligned_quotient(s, self.e(), self.mode)
    }

    pub fn partition_quotient(&self, c: &PolyClass, p: &Partition) -> (Partition, Vec<Partition>) {
        e_core_quotient(p, c.e_gamma() as u32)
    }
}

/// Every map with one choice per divisor.
fn product<A: Clone, B: Clone>(
    minus: &[A],
    plus: &[A],
    other: &[(PolyClass, Vec<B>)],
) -> Vec<DivisorMap<A, B>> {
    let mut others: Vec<BTreeMap<PolyClass, B>> = vec![BTreeMap::new()];
    for (c, options) in other {
        others = others
            .into_iter()
            .flat_map(|m| {
                options.iter().map(move |o| {
                    let mut m = m.clone();
                    m.insert(c.clone(), o.clone());
                    m
                })
            })
            .collect();
    }
    let mut out = Vec::with_capacity(minus.len() * plus.len() * others.len());
    for a in minus {
        for b in plus {
            for o in &others {
                out.push(DivisorMap {
                    minus: a.clone(),
                    plus: b.clone(),
                    other: o.clone(),
                });
            }
        }
    }
    out
}

/// Ordered choices of one tower per branch with total weight `w`.
fn branch_towers(
    branches: usize,
    w: u32,
    towers: &BTreeMap<u32, Vec<CoreTower>>,
) -> Vec<Vec<CoreTower>> {
    if branches == 0 {
        return if w == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=w).rev() {
        let tails = branch_towers(branches - 1, w - first, towers);
        for t in &towers[&first] {
            for tail in &tails {
                let mut v = Vec::with_capacity(branches);
                v.push(t.clone());
                v.extend(tail.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldctx::make_context;

    fn space(p: u64, f: u32, ell: u64, n: u32) -> LabelSpace {
        LabelSpace::new(&make_context(p, f, ell).unwrap(), n).unwrap()
    }

    /// Number of monic irreducibles of degree `d` over `F_q`.
    fn necklace(q: u64, d: u64) -> u64 {
        let s: i64 = (1..=d)
            .filter(|k| d.is_multiple_of(*k))
            .map(|k| mobius(k) * q.pow((d / k) as u32) as i64)
            .sum();
        (s / d as i64) as u64
    }

    /// Self-reciprocal monic irreducibles of degree `k` over `F_q`, `q` odd,
    /// counting `X±1` at `k = 1`.
    fn self_reciprocal(q: u64, k: u64) -> u64 {
        if k == 1 {
            return 2;
        }
        if k % 2 == 1 {
            return 0;
        }
        let d = k / 2;
        let sum: i64 = (1..=d)
            .filter(|j| d.is_multiple_of(*j) && j % 2 == 1)
            .map(|j| mobius(j) * (q.pow((d / j) as u32) as i64 - 1))
            .sum();
        (sum / (2 * d as i64)) as u64
    }

    fn mobius(mut k: u64) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= k {
            if k.is_multiple_of(p) {
                k /= p;
                if k.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if k > 1 {
            -sign
        } else {
            sign
        }
    }

    /// Number of classes in `F1 ∪ F2` of degree `2d`: self-reciprocal
    /// irreducibles of degree `2d` plus pairs `{Δ, Δ*}` of degree `d`.
    fn class_count(q: u64, d: u64) -> u64 {
        let x = u64::from(d == 1);
        self_reciprocal(q, 2 * d) + (necklace(q, d) - x - self_reciprocal(q, d)) / 2
    }

    /// Coefficient of `x^(2n+1)` in
    /// `x/(1-x^2) · (1 + 2x^2/(1-x^2)) · Π_Γ 1/(1-x^deg Γ)`.
    fn semisimple_count(q: u64, n: u64) -> u64 {
        let top = (2 * n + 1) as usize;
        let mut series = vec![0u64; top + 1];
        for m in (1..=top).step_by(2) {
            series[m] = 1;
        }
        let mut with_plus = vec![0u64; top + 1];
        for (i, &a) in series.iter().enumerate() {
            for m in (0..=top - i).step_by(2) {
                with_plus[i + m] += a * if m == 0 { 1 } else { 2 };
            }
        }
        series = with_plus;
        for d in 1..=n {
            let deg = 2 * d as usize;
            for _ in 0..class_count(q, d) {
                for i in deg..=top {
                    series[i] += series[i - deg];
                }
            }
        }
        series[top]
    }

    #[test]
    fn class_counts_match_formula() {
        for (p, f) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let s = space(p, f, if p == 5 { 3 } else { 5 }, 2);
            let q = s.ctx().q;
            for d in 1..=2u64 {
                let ours = s
                    .classes()
                    .iter()
                    .filter(|c| c.degree() as u64 == 2 * d)
                    .count() as u64;
                assert_eq!(ours, class_count(q, d), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn semisimple_count_matches_generating_function() {
        for (p, f, ell, n) in [
            (3, 1, 5, 1),
            (3, 1, 5, 2),
            (5, 1, 3, 2),
            (3, 1, 5, 3),
            (7, 1, 3, 1),
            (3, 2, 5, 1),
        ] {
            let s = space(p, f, ell, n);
            let labels = s.enumerate_semisimple(false);
            let q = s.ctx().q;
            assert_eq!(
                labels.len() as u64,
                semisimple_count(q, n as u64),
                "q={q} n={n}"
            );
            let mut sorted = labels.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), labels.len());
            for l in &labels {
                let dim: u32 = l.mult.minus
                    + l.mult.plus
                    + l.mult
                        .other
                        .iter()
                        .map(|(c, m)| c.degree() * m)
                        .sum::<u32>();
                assert_eq!(dim, 2 * n + 1);
                assert_eq!(l.mult.minus % 2, 1);
                assert_eq!(l.mult.plus % 2, 0);
                assert_eq!(l.eta_plus.is_some(), l.mult.plus > 0);
            }
        }
    }

    #[test]
    fn semisimple_examples_sp2_q3() {
        let s = space(3, 1, 5, 1);
        let labels = s.enumerate_semisimple(false);
        let identity = labels
            .iter()
            .find(|l| l.mult.minus == 3 && l.mult.plus == 0 && l.mult.other.is_empty());
        assert!(identity.is_some());
        let with_minus_one: Vec<_> = labels
            .iter()
            .filter(|l| l.mult.minus == 1 && l.mult.plus == 2)
            .collect();
        assert_eq!(with_minus_one.len(), 2);
        assert_ne!(with_minus_one[0].eta_plus, with_minus_one[1].eta_plus);
    }

    #[test]
    fn weight_equations() {
        let s = space(3, 1, 5, 2);
        for b in s.enumerate_blocks() {
            let w = s.weights(&b).unwrap();
            let e = s.e();
            assert_eq!(
                b.s.mult.minus as u64,
                2 * b.kappa.minus.rank() + 1 + 2 * e as u64 * w.minus as u64
            );
            assert_eq!(
                b.s.mult.plus as u64,
                2 * b.kappa.plus.rank() + 2 * e as u64 * w.plus as u64
            );
            for (c, &m) in &b.s.mult.other {
                assert_eq!(m, b.kappa.other[c].size() + c.e_gamma() as u32 * w.other[c]);
            }
        }
    }

    #[test]
    fn weight_of_examples() {
        let s = space(3, 1, 5, 2);
        assert_eq!(s.e(), 2);
        let mut block = s.enumerate_blocks().into_iter().next().unwrap();
        let w = |b: &BlockLabel, g| s.weight_of(b, &g);
        block.s.mult.minus = 3;
        block.kappa.minus = LSymbol::from_rows(vec![1], vec![]).unwrap();
        assert_eq!(w(&block, Divisor::XMinus1).unwrap(), 0);
        block.s.mult.minus = 5;
        assert!(w(&block, Divisor::XMinus1).is_err());
        block.s.mult.minus = 1;
        block.kappa.minus = LSymbol::from_rows(vec![0], vec![]).unwrap();
        block.s.mult.plus = 4;
        block.kappa.plus = LSymbol::empty();
        assert_eq!(w(&block, Divisor::XPlus1).unwrap(), 1);
        block.s.mult.plus = 2;
        assert!(w(&block, Divisor::XPlus1).is_err());
    }

    #[test]
    fn kappa_is_existential_core() {
        // cores by filtering against the closed form for partitions
        let s = space(3, 1, 5, 2);
        for b in s.enumerate_blocks() {
            for (c, k) in &b.kappa.other {
                let e = c.e_gamma() as u32;
                let m = b.s.mult.other[c];
                assert!(k.is_core(e));
                assert!(k.size() <= m && (m - k.size()) % e == 0);
            }
        }
    }

    #[test]
    fn degenerate_plus_core_collapses_i() {
        let s = space(3, 1, 5, 2);
        let blocks = s.enumerate_blocks();
        for b in &blocks {
            let twin = BlockLabel {
                i: 1 - b.i,
                ..b.clone()
            };
            assert_eq!(blocks.contains(&twin), !b.kappa.plus.is_degenerate());
        }
    }

    #[test]
    fn ibr_matches_filter_oracle() {
        for (p, ell, n) in [(3, 5, 2), (3, 7, 2), (5, 3, 1)] {
            let s = space(p, 1, ell, n);
            let universe = s.enumerate_ibr_universe();
            let mut total = 0;
            for b in s.enumerate_blocks() {
                let ibr = s.enumerate_ibr(&b);
                let filtered = universe.iter().filter(|x| s.block_of(x) == b).count();
                assert_eq!(ibr.len(), filtered, "{b:?}");
                for x in &ibr {
                    assert_eq!(s.block_of(x), b);
                }
                total += ibr.len();
            }
            assert_eq!(total, universe.len());
        }
    }

    #[test]
    fn brauer_counts_match_regular_class_counts() {
        // with ell coprime to |G| every class is ell-regular: SL2(q) has
        // q + 4 classes and Sp4(q) has q^2 + 5q + 10 for odd q
        for (p, f, ell) in [
            (3, 1, 5),
            (3, 1, 7),
            (5, 1, 7),
            (7, 1, 5),
            (3, 2, 7),
            (11, 1, 7),
        ] {
            let s = space(p, f, ell, 1);
            assert_eq!(
                s.enumerate_ibr_universe().len() as u64,
                s.ctx().q + 4,
                "q={}",
                s.ctx().q
            );
        }
        for (p, ell) in [(3, 7), (3, 13), (5, 7), (7, 11)] {
            let s = space(p, 1, ell, 2);
            let q = s.ctx().q;
            assert_eq!(
                s.enumerate_ibr_universe().len() as u64,
                q * q + 5 * q + 10,
                "q={q}"
            );
        }
        // Sp4(3) has one class each of elements of order 5 and 10
        assert_eq!(space(3, 1, 5, 2).enumerate_ibr_universe().len(), 34 - 2);
        // ell | q - 1: drop the split-torus classes of ell-singular elements
        for (p, ell, regular) in [(7, 3, 11 - 2), (11, 5, 15 - 4), (13, 3, 17 - 4)] {
            assert_eq!(
                space(p, 1, ell, 1).enumerate_ibr_universe().len(),
                regular,
                "q={p}"
            );
        }
    }

    #[test]
    fn weight_forms_agree() {
        for (p, ell, n) in [(3, 5, 2), (3, 7, 2), (5, 3, 2)] {
            let s = space(p, 1, ell, n);
            for b in s.enumerate_blocks() {
                let wq = s.enumerate_weights_q(&b).unwrap();
                let wk = s.enumerate_weights_k(&b).unwrap();
                assert_eq!(wq.len(), wk.len());
                let w = s.weights(&b).unwrap();
                let e = s.e() as usize;
                let count = |k: usize, w: u32| enumerate_tuples(k, w).len();
                let expected = count(2 * e, w.minus)
                    * count(2 * e, w.plus)
                    * w.other
                        .iter()
                        .map(|(c, &x)| count(c.branches(), x))
                        .product::<usize>();
                assert_eq!(wq.len(), expected);
                let mut images: Vec<WeightLabelQ> =
                    wk.iter().map(|k| s.k_to_q(k).unwrap()).collect();
                images.sort();
                let mut sorted = wq.clone();
                sorted.sort();
                assert_eq!(images, sorted);
                for x in &wq {
                    assert_eq!(&s.k_to_q(&s.q_to_k(x)).unwrap(), x);
                }
                for k in &wk {
                    assert_eq!(&s.q_to_k(&s.k_to_q(k).unwrap()), k);
                    assert!(s.dimension_audit(k));
                }
            }
        }
    }

    #[test]
    fn trivial_weights() {
        let s = space(3, 1, 5, 1);
        for b in s.enumerate_blocks() {
            let w = s.weights(&b).unwrap();
            if w.minus == 0 && w.plus == 0 && w.other.values().all(|&x| x == 0) {
                assert_eq!(s.enumerate_ibr(&b).len(), 1);
                let wk = s.enumerate_weights_k(&b).unwrap();
                assert_eq!(wk.len(), 1);
                assert!(s.radical_shape(&wk[0]).is_empty());
                assert_eq!(s.enumerate_weights_q(&b).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn serialization_shape() {
        let s = space(3, 1, 5, 1);
        let b = &s.enumerate_blocks()[0];
        let v = serde_json::to_value(b).unwrap();
        assert!(v["s"]["mult"]["X-1"].is_u64());
        assert!(v["s"]["mult"]["other"].is_array());
        assert!(v["kappa"]["X-1"].is_array());
        assert!(v["i"].is_u64());
        let blocks = s.enumerate_blocks();
        let with_other = blocks.iter().find(|b| !b.s.mult.other.is_empty()).unwrap();
        let v = serde_json::to_value(with_other).unwrap();
        assert!(v["s"]["mult"]["other"][0]["poly"].is_array());
    }

    #[test]
    fn block_order_is_deterministic() {
        let a = serde_json::to_string(&space(3, 1, 5, 2).enumerate_blocks()).unwrap();
        let b = serde_json::to_string(&space(3, 1, 5, 2).enumerate_blocks()).unwrap();
        assert_eq!(a, b);
    }
}
