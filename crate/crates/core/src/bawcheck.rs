//! The explicit bijection between Brauer character labels and weight
//! labels of a block, the field and diagonal automorphism actions on every
//! label kind, and per-block verification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labels::{
    BlockLabel, DivisorMap, IBrLabel, LabelSpace, SemisimpleLabel, WeightLabelK, WeightLabelQ,
};
use crate::partition::from_core_quotient;
use crate::symbol::{star_oriented, star_plain, OrderedSymQuotient, OrderedSymbol};

/// A generator of the automorphisms acting on labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AutAction {
    /// The field automorphism `x -> x^(p^i)`.
    Field(u32),
    /// The diagonal outer automorphism.
    Diagonal,
}

impl fmt::Display for AutAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutAction::Field(i) => write!(f, "field({i})"),
            AutAction::Diagonal => write!(f, "diagonal"),
        }
    }
}

fn relabel<A: Clone, B: Clone>(
    space: &LabelSpace,
    i: u32,
    m: &DivisorMap<A, B>,
) -> DivisorMap<A, B> {
    DivisorMap {
        minus: m.minus.clone(),
        plus: m.plus.clone(),
        other: m
            .other
            .iter()
            .map(|(c, v)| (space.frobenius_image(c, i), v.clone()))
            .collect(),
    }
}

pub fn act_on_semisimple(space: &LabelSpace, a: AutAction, s: &SemisimpleLabel) -> SemisimpleLabel {
    match a {
        AutAction::Field(i) => SemisimpleLabel {
            mult: relabel(space, i, &s.mult),
            ..s.clone()
        },
        AutAction::Diagonal => s.clone(),
    }
}

pub fn act_on_block(space: &LabelSpace, a: AutAction, b: &BlockLabel) -> BlockLabel {
    match a {
        AutAction::Field(i) => BlockLabel {
            s: act_on_semisimple(space, a, &b.s),
            kappa: relabel(space, i, &b.kappa),
            i: b.i,
        },
        AutAction::Diagonal => {
            let i = if b.kappa.plus.is_degenerate() {
                b.i
            } else {
                1 - b.i
            };
            BlockLabel { i, ..b.clone() }
        }
    }
}

pub fn act_on_ibr(space: &LabelSpace, a: AutAction, x: &IBrLabel) -> IBrLabel {
    match a {
        AutAction::Field(i) => IBrLabel {
            s: act_on_semisimple(space, a, &x.s),
            lambda: relabel(space, i, &x.lambda),
            j: x.j,
        },
        AutAction::Diagonal => {
            let j = if x.lambda.plus.is_degenerate() {
                x.j
            } else {
                1 - x.j
            };
            IBrLabel { j, ..x.clone() }
        }
    }
}

pub fn act_on_weight_q(space: &LabelSpace, a: AutAction, w: &WeightLabelQ) -> WeightLabelQ {
    let block = act_on_block(space, a, &w.block);
    match a {
        AutAction::Field(i) => WeightLabelQ {
            block,
            q: relabel(space, i, &w.q),
        },
        AutAction::Diagonal => {
            let mut q = w.q.clone();
            q.plus = q.plus.flip();
            WeightLabelQ { block, q }
        }
    }
}

pub fn act_on_weight_k(space: &LabelSpace, a: AutAction, w: &WeightLabelK) -> WeightLabelK {
    let block = act_on_block(space, a, &w.block);
    match a {
        AutAction::Field(i) => WeightLabelK {
            block,
            k: relabel(space, i, &w.k),
        },
        AutAction::Diagonal => {
            let mut k = w.k.clone();
            let e = space.e() as usize;
            k.plus.rotate_left(e);
            WeightLabelK { block, k }
        }
    }
}

fn mismatch(what: &str, detail: impl fmt::Debug) -> Error {
    Error::Reconstruction(format!("{what}: {detail:?}"))
}

/// The weight attached to a Brauer character: `e_Γ`-quotients at `F1` and
/// `F2`, and at `X±1` the quotient oriented so that the star operator
/// reproduces `λ`.
pub fn brauer_to_weight(space: &LabelSpace, x: &IBrLabel) -> Result<WeightLabelQ> {
    let block = space.block_of(x);
    let mut other = BTreeMap::new();
    for (c, lambda) in &x.lambda.other {
        let (_, quotient) = space.partition_quotient(c, lambda);
        other.insert(c.clone(), quotient);
    }
    let (e, mode) = (space.e(), space.mode());

    let (_, minus) = space.symbol_quotient(&x.lambda.minus);
    if star_plain(&block.kappa.minus, &minus, e, mode)? != x.lambda.minus {
        return Err(mismatch("X-1 reconstruction", &x.lambda.minus));
    }

    let (_, aligned) = space.symbol_quotient(&x.lambda.plus);
    let plus = if block.kappa.plus.is_degenerate() {
        let q = aligned.base().oriented(x.j);
        if star_plain(&block.kappa.plus, &q, e, mode)? != x.lambda.plus {
            return Err(mismatch("X+1 reconstruction", &x.lambda.plus));
        }
        q
    } else {
        let q = if block.i == 0 {
            aligned
        } else {
            aligned.flip()
        };
        let oc = OrderedSymbol::new(block.kappa.plus.clone(), block.i);
        if star_oriented(&oc, &q, e, mode)? != x.lambda.plus {
            return Err(mismatch("X+1 oriented reconstruction", &x.lambda.plus));
        }
        q
    };
    Ok(WeightLabelQ {
        block,
        q: DivisorMap { minus, plus, other },
    })
}

/// Inverse of `brauer_to_weight`.
pub fn weight_to_brauer(space: &LabelSpace, w: &WeightLabelQ) -> Result<IBrLabel> {
    let b = &w.block;
    let weights = space.weights(b)?;
    let (e, mode) = (space.e(), space.mode());
    let check = |what: &str, q: &OrderedSymQuotient, expected: u32| -> Result<()> {
        if q.seq().len() != 2 * e as usize || q.size() != expected {
            return Err(Error::MalformedLabel(format!(
                "{what} quotient of length {} and size {} in a block of weight {expected}",
                q.seq().len(),
                q.size()
            )));
        }
        Ok(())
    };
    check("X-1", &w.q.minus, weights.minus)?;
    check("X+1", &w.q.plus, weights.plus)?;
    if w.q.other.keys().ne(b.kappa.other.keys()) {
        return Err(Error::MalformedLabel(
            "quotient support differs from the block".into(),
        ));
    }
    let mut other = BTreeMap::new();
    for (c, tuple) in &w.q.other {
        let size: u32 = tuple.iter().map(|p| p.size()).sum();
        if tuple.len() != c.branches() || size != weights.other[c] {
            return Err(Error::MalformedLabel(format!(
                "quotient at {c:?} has the wrong shape"
            )));
        }
        other.insert(c.clone(), from_core_quotient(&b.kappa.other[c], tuple)?);
    }
    let minus = star_plain(&b.kappa.minus, &w.q.minus, e, mode)?;
    let (plus, j) = if b.kappa.plus.is_degenerate() {
        (
            star_plain(&b.kappa.plus, &w.q.plus, e, mode)?,
            w.q.plus.orient(),
        )
    } else {
        let oc = OrderedSymbol::new(b.kappa.plus.clone(), b.i);
        (star_oriented(&oc, &w.q.plus, e, mode)?, b.i)
    };
    Ok(IBrLabel {
        s: b.s.clone(),
        lambda: DivisorMap { minus, plus, other },
        j,
    })
}

/// Counts and flags for one block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCheck {
    pub n_ibr: usize,
    pub n_weights_q: usize,
    pub n_weights_k: usize,
    /// `brauer_to_weight` is injective with image exactly the `Q`-form
    /// weights of the block.
    pub bijective: bool,
    /// `weight_to_brauer` is a two-sided inverse.
    pub inverse_ok: bool,
    /// `K`-form and `Q`-form weights correspond under the tower maps.
    pub k_matches_q: bool,
}

impl BlockCheck {
    pub fn passed(&self) -> bool {
        self.n_ibr == self.n_weights_q
            && self.n_weights_q == self.n_weights_k
            && self.bijective
            && self.inverse_ok
            && self.k_matches_q
    }
}

pub fn verify_block(space: &LabelSpace, b: &BlockLabel) -> Result<BlockCheck> {
    let ibr = space.enumerate_ibr(b);
    let wq = space.enumerate_weights_q(b)?;
    let wk = space.enumerate_weights_k(b)?;

    let images: Vec<Option<WeightLabelQ>> = ibr
        .iter()
        .map(|x| brauer_to_weight(space, x).ok())
        .collect();
    let image_set: BTreeSet<&WeightLabelQ> = images.iter().flatten().collect();
    let target: BTreeSet<&WeightLabelQ> = wq.iter().collect();
    let bijective =
        images.iter().all(Option::is_some) && image_set.len() == ibr.len() && image_set == target;

    let forward = ibr.iter().zip(&images).all(|(x, w)| {
        w.as_ref()
            .is_some_and(|w| weight_to_brauer(space, w).is_ok_and(|back| &back == x))
    });
    let backward = wq.iter().all(|w| {
        weight_to_brauer(space, w)
            .and_then(|x| brauer_to_weight(space, &x))
            .is_ok_and(|again| &again == w)
    });

    let k_images: Option<BTreeSet<WeightLabelQ>> =
        wk.iter().map(|k| space.k_to_q(k).ok()).collect();
    let k_matches_q = k_images
        .is_some_and(|set| set.len() == wk.len() && set.iter().eq(target.iter().copied()))
        && wq
            .iter()
            .all(|w| space.k_to_q(&space.q_to_k(w)).is_ok_and(|back| &back == w));

    Ok(BlockCheck {
        n_ibr: ibr.len(),
        n_weights_q: wq.len(),
        n_weights_k: wk.len(),
        bijective,
        inverse_ok: forward && backward,
        k_matches_q,
    })
}

/// Which commuting square failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `brauer_to_weight(a·x) ≠ a·brauer_to_weight(x)`.
    Bijection,
    /// `block_of(a·x) ≠ a·block_of(x)`.
    BlockMembership,
    /// The action on `K`-form weights disagrees with the `Q`-form.
    WeightForms,
    /// The bijection failed outright on `x` or its image.
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub action: AutAction,
    pub kind: ViolationKind,
    pub ibr: IBrLabel,
}

/// Equivariance failures on the Brauer characters of one block.
pub fn block_violations(
    space: &LabelSpace,
    b: &BlockLabel,
    generators: &[AutAction],
) -> Vec<Violation> {
    let mut out = Vec::new();
    for x in space.enumerate_ibr(b) {
        for &a in generators {
            let mut flag = |kind| {
                out.push(Violation {
                    action: a,
                    kind,
                    ibr: x.clone(),
                })
            };
            let ax = act_on_ibr(space, a, &x);
            if space.block_of(&ax) != act_on_block(space, a, b) {
                flag(ViolationKind::BlockMembership);
            }
            match (brauer_to_weight(space, &x), brauer_to_weight(space, &ax)) {
                (Ok(w), Ok(aw)) => {
                    let expected = act_on_weight_q(space, a, &w);
                    if aw != expected {
                        flag(ViolationKind::Bijection);
                    }
                    let via_k = act_on_weight_k(space, a, &space.q_to_k(&w));
                    if space.k_to_q(&via_k).ok().as_ref() != Some(&expected) {
                        flag(ViolationKind::WeightForms);
                    }
                }
                _ => flag(ViolationKind::Undefined),
            }
        }
    }
    out
}

/// Every violation over all blocks, checked in parallel, in block order.
pub fn verify_equivariance(space: &LabelSpace, generators: &[AutAction]) -> Vec<Violation> {
    let blocks = space.enumerate_blocks();
    blocks
        .par_iter()
        .map(|b| block_violations(space, b, generators))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldctx::make_context;

    fn space(p: u64, f: u32, ell: u64, n: u32) -> LabelSpace {
        LabelSpace::new(&make_context(p, f, ell).unwrap(), n).unwrap()
    }

    fn all_ibr(s: &LabelSpace) -> Vec<IBrLabel> {
        s.enumerate_blocks()
            .iter()
            .flat_map(|b| s.enumerate_ibr(b))
            .collect()
    }

    fn all_weights(s: &LabelSpace) -> Vec<WeightLabelQ> {
        s.enumerate_blocks()
            .iter()
            .flat_map(|b| s.enumerate_weights_q(b).unwrap())
            .collect()
    }

    #[test]
    fn every_block_is_bijective() {
        for (p, f, ell, n) in [
            (3, 1, 5, 1),
            (3, 1, 5, 2),
            (3, 1, 7, 2),
            (5, 1, 3, 2),
            (3, 2, 5, 1),
            (7, 1, 3, 2),
            (3, 1, 13, 3),
        ] {
            let s = space(p, f, ell, n);
            for b in s.enumerate_blocks() {
                let check = verify_block(&s, &b).unwrap();
                assert!(check.passed(), "{b:?}: {check:?}");
            }
        }
    }

    #[test]
    fn all_zero_weight_block_is_trivial() {
        let s = space(3, 1, 5, 1);
        let b = s
            .enumerate_blocks()
            .into_iter()
            .find(|b| {
                let w = s.weights(b).unwrap();
                w.minus == 0 && w.plus == 0 && w.other.values().all(|&x| x == 0)
            })
            .unwrap();
        let check = verify_block(&s, &b).unwrap();
        assert_eq!(
            (check.n_ibr, check.n_weights_q, check.n_weights_k),
            (1, 1, 1)
        );
        assert!(check.bijective);
        let w = &s.enumerate_weights_q(&b).unwrap()[0];
        let x = weight_to_brauer(&s, w).unwrap();
        assert_eq!(x.lambda, b.kappa);
    }

    #[test]
    fn malformed_weights_rejected() {
        let s = space(3, 1, 5, 2);
        let b = s
            .enumerate_blocks()
            .into_iter()
            .find(|b| s.weights(b).unwrap().minus > 0)
            .unwrap();
        let mut w = s.enumerate_weights_q(&b).unwrap().remove(0);
        w.q.minus = OrderedSymQuotient::new(vec![Default::default(); 2 * s.e() as usize]).unwrap();
        assert!(weight_to_brauer(&s, &w).is_err());
    }

    #[test]
    fn equivariance_holds() {
        for (p, f, ell, n) in [
            (3, 1, 5, 2),
            (3, 1, 7, 2),
            (3, 2, 5, 1),
            (3, 2, 7, 1),
            (7, 1, 3, 2),
            (5, 2, 3, 1),
        ] {
            let s = space(p, f, ell, n);
            let gens = [
                AutAction::Field(0),
                AutAction::Field(1),
                AutAction::Diagonal,
            ];
            let v = verify_equivariance(&s, &gens);
            assert!(v.is_empty(), "{:?}", &v[..v.len().min(3)]);
        }
    }

    #[test]
    fn field_action_is_nontrivial_over_f9() {
        let s = space(3, 2, 5, 1);
        let moved = s
            .enumerate_semisimple(false)
            .iter()
            .filter(|x| act_on_semisimple(&s, AutAction::Field(1), x) != **x)
            .count();
        assert!(moved > 0);
    }

    #[test]
    fn action_laws() {
        let s = space(3, 2, 5, 1);
        let f = s.ctx().f;
        let ibr = all_ibr(&s);
        let weights = all_weights(&s);
        let d = AutAction::Diagonal;
        for x in &ibr {
            assert_eq!(&act_on_ibr(&s, AutAction::Field(0), x), x);
            assert_eq!(&act_on_ibr(&s, d, &act_on_ibr(&s, d, x)), x);
            for i in 0..=f {
                for j in 0..=f {
                    let composed = act_on_ibr(
                        &s,
                        AutAction::Field(i),
                        &act_on_ibr(&s, AutAction::Field(j), x),
                    );
                    assert_eq!(composed, act_on_ibr(&s, AutAction::Field(i + j), x));
                }
                let a = act_on_ibr(&s, d, &act_on_ibr(&s, AutAction::Field(i), x));
                let b = act_on_ibr(&s, AutAction::Field(i), &act_on_ibr(&s, d, x));
                assert_eq!(a, b);
            }
            assert_eq!(act_on_ibr(&s, d, x) == *x, x.lambda.plus.is_degenerate());
        }
        for w in &weights {
            assert_eq!(&act_on_weight_q(&s, d, &act_on_weight_q(&s, d, w)), w);
            assert_eq!(&act_on_weight_q(&s, AutAction::Field(f), w), w);
            let k = s.q_to_k(w);
            assert_eq!(act_on_weight_k(&s, d, &act_on_weight_k(&s, d, &k)), k);
            let shape = s.radical_shape(&k);
            let moved = s.radical_shape(&act_on_weight_k(&s, AutAction::Field(1), &k));
            let relabeled: Vec<_> = shape
                .iter()
                .map(|e| match &e.gamma {
                    crate::labels::Divisor::Other(c) => crate::labels::ShapeEntry {
                        gamma: crate::labels::Divisor::Other(s.frobenius_image(c, 1)),
                        ..e.clone()
                    },
                    _ => e.clone(),
                })
                .collect();
            let (mut a, mut b) = (relabeled, moved);
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    /// Sizes of the orbits of the group generated by `gens` on `items`.
    fn orbit_sizes<T: Ord + Clone>(
        items: &[T],
        act: impl Fn(AutAction, &T) -> T,
        gens: &[AutAction],
    ) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut sizes = Vec::new();
        for x in items {
            if seen.contains(x) {
                continue;
            }
            let mut orbit = BTreeSet::from([x.clone()]);
            let mut frontier = vec![x.clone()];
            while let Some(y) = frontier.pop() {
                for &g in gens {
                    let z = act(g, &y);
                    if orbit.insert(z.clone()) {
                        frontier.push(z);
                    }
                }
            }
            sizes.push(orbit.len());
            seen.extend(orbit);
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn orbit_sizes_match() {
        for (p, f, ell, n) in [(3, 1, 5, 2), (3, 2, 5, 1), (7, 1, 3, 2)] {
            let s = space(p, f, ell, n);
            let ibr = all_ibr(&s);
            let weights = all_weights(&s);
            for gens in [
                vec![AutAction::Diagonal],
                vec![AutAction::Field(1)],
                vec![AutAction::Diagonal, AutAction::Field(1)],
            ] {
                let a = orbit_sizes(&ibr, |g, x| act_on_ibr(&s, g, x), &gens);
                let b = orbit_sizes(&weights, |g, w| act_on_weight_q(&s, g, w), &gens);
                assert_eq!(a, b, "{gens:?}");
            }
        }
    }

    #[test]
    fn degeneracy_transport() {
        let s = space(3, 1, 5, 2);
        let d = AutAction::Diagonal;
        for b in s.enumerate_blocks() {
            let fixed = act_on_block(&s, d, &b) == b;
            assert_eq!(fixed, b.kappa.plus.is_degenerate());
            let ibr: BTreeSet<_> = s.enumerate_ibr(&b).into_iter().collect();
            let moved: BTreeSet<_> = ibr.iter().map(|x| act_on_ibr(&s, d, x)).collect();
            assert_eq!(ibr == moved, fixed);
            let wq: BTreeSet<_> = s.enumerate_weights_q(&b).unwrap().into_iter().collect();
            let moved: BTreeSet<_> = wq.iter().map(|w| act_on_weight_q(&s, d, w)).collect();
            assert_eq!(wq == moved, fixed);
        }
    }

    #[test]
    fn degenerate_symbol_maps_to_degenerate_quotient() {
        let s = space(3, 1, 5, 2);
        let mut found = false;
        for b in s
            .enumerate_blocks()
            .iter()
            .filter(|b| b.kappa.plus.is_degenerate())
        {
            for x in s.enumerate_ibr(b) {
                if x.lambda.plus.is_degenerate() && !x.lambda.plus.rows()[0].is_empty() {
                    let w = brauer_to_weight(&s, &x).unwrap();
                    assert!(w.q.plus.base().is_degenerate());
                    found = true;
                }
            }
        }
        assert!(found);
    }
}
