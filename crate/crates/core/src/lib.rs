//! Free averaging groups on bracketed words.
//!
//! An *averaging operator* on a group `G` is a map `A: G -> G` with
//! `A(g)A(h) = A(A(g)h) = A(gA(h))`. This crate provides:
//!
//! * [`words`]: bracketed words (elements of the free operated group), their
//!   text syntax, free reduction, metrics and evaluation into operated groups;
//! * [`normalform`]: the averaging normal-form predicate and a rewriting
//!   normalizer used as an independent oracle;
//! * [`avgroup`]: the product `⋄` and operator `A_X` on normal words,
//!   homomorphism extension and random normal words;
//! * [`structures`]: finite averaging groups given by tables, operator search,
//!   disemigroups, racks and the pointed-operator consequences;
//! * [`linearalg`]: exact rational group algebras (averaging Hopf operators)
//!   and averaging Lie algebras with their Leibniz brackets.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod avgroup;
pub mod linearalg;
pub mod normalform;
pub mod structures;
pub mod words;

pub use crate::avgroup::{
    diamond, extend_hom, inverse, op_apply, op_iter, random_normal_word, FreeAveragingGroup, GenParams, Mutation,
    WordSampler,
};
pub use crate::normalform::{is_normal, oracle_normalize, NormalWord, Oracle, Strategy};
pub use crate::words::{Factor, Generator, OperatedGroup, ParseError, Sign, Word, WordMetrics};
