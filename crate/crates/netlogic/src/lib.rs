//! Model checking of first-order and modal properties of Petri net
//! reachability graphs.
//!
//! The library is organized around a pipeline:
//!
//! - [`net`] — Petri net structure, firing semantics, textual format.
//! - [`logic`] — first-order and modal formula ASTs, parsers, fragment
//!   classification, syntactic transforms.
//! - [`presburger`] — linear-arithmetic formulas over naturals, quantifier
//!   elimination, semilinear sets, and the symbolic pre-image operator.
//! - [`statespace`] — explicit exploration, boundedness, coverability, and
//!   desk-scale reachability oracles.
//! - [`engines`] — one decision procedure per decidable fragment, plus the
//!   explicit-state oracle and a router.
//! - [`gadgets`] — reduction constructions pairing nets with fixed formulas.
//!
//! ```
//! use netlogic::net::parse_net;
//! use netlogic::logic::parse_fo;
//! use netlogic::engines::{explicit_fo, Verdict};
//! use netlogic::statespace::{explore, transitive_closure};
//!
//! let net = parse_net("net a\nplace p init 1\ntrans t\nin p:1").unwrap();
//! let f = parse_fo("forall x . exists y . x -> y").unwrap();
//! let g = explore(&net, 100);
//! let closure = transitive_closure(&g).unwrap();
//! let v = explicit_fo(&g, &closure, &f).unwrap();
//! assert_eq!(v.verdict, Verdict::Fails); // the token drains into a deadlock
//! ```

pub mod engines;
pub mod gadgets;
pub mod guide;
pub mod logic;
pub mod net;
pub mod presburger;
pub mod statespace;
pub mod testkit;
