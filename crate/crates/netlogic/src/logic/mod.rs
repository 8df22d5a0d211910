//! Formula ASTs, parsers, fragment classification, and syntactic
//! transforms for the first-order and modal property languages.

mod classify;
mod fo;
mod ml;
mod parse;
mod transform;

pub use classify::{classify, FragmentReport};
pub use fo::{
    fo_and, fo_and_all, fo_exists, fo_forall, fo_implies, fo_not, fo_or, FoFormula, Pred,
};
pub use ml::{
    ml_and, ml_box, ml_boxinv, ml_dia, ml_diainv, ml_implies, ml_not, ml_or, MlFormula,
};
pub use parse::{parse_fo, parse_fo_sentence, parse_ml};
pub use transform::{modal_to_fo, relativize, RelGuard};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LogicError {
    #[error("syntax error at offset {at}: {msg}")]
    Syntax { at: usize, msg: String },
    #[error("unbound variable `{0}` in a sentence")]
    UnboundVariable(String),
    #[error("relativization anchor `{0}` is already bound in the formula")]
    VariableCapture(String),
    #[error("constraint atoms have no first-order translation here")]
    PamlPresent,
    #[error("quantifiers are not allowed inside `{{...}}` constraints")]
    QuantifierInConstraint,
}
