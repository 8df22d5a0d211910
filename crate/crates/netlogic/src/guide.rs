//! The book chapters from `book/`, included here so their code examples
//! compile and run under `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/nets.md")]
pub mod nets {}

#[doc = include_str!("../../../book/src/logics.md")]
pub mod logics {}

#[doc = include_str!("../../../book/src/arithmetic.md")]
pub mod arithmetic {}

#[doc = include_str!("../../../book/src/engines.md")]
pub mod engines {}

#[doc = include_str!("../../../book/src/gadgets.md")]
pub mod gadgets {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
