//! Label-level combinatorics for the modular representation theory of the
//! finite symplectic groups `Sp_2n(q)`, `q` odd, at odd primes `ell ≠ p`.
//!
//! The crate enumerates semisimple classes of the dual group `SO_2n+1(q)`,
//! block labels, Brauer character labels and weight labels, implements an
//! explicit bijection between Brauer characters and weights of each block,
//! and checks that bijection against the field and diagonal automorphisms.

pub mod bawcheck;
pub mod error;
pub mod ffpoly;
pub mod fieldctx;
pub mod labels;
pub mod partition;
pub mod symbol;

pub use error::{Error, Result};
pub use ffpoly::{classify, star, Family, FqPoly, GaloisField, PolyClass};
pub use fieldctx::{make_context, order_mod, FieldContext, Sign};
pub use labels::{
    BlockLabel, CoreMap, Divisor, DivisorMap, IBrLabel, LabelSpace, SemisimpleLabel, WeightLabelK,
    WeightLabelQ,
};
pub use partition::{BetaSet, CoreTower, Partition};
pub use symbol::{CoreMode, LSymbol, OrderedSymQuotient, OrderedSymbol, SymQuotient};
