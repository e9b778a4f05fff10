//! Free-group words, presentations, Fox calculus and derived groups of
//! permutation representations given by a homomorphism into an abelian
//! operator group.

mod derived;
mod fox;
mod operator;
mod word;

pub use derived::{
    delta_rewrite, expand_normal_form, normal_form, parse_derived_word, Action, Coord,
    DerivedLetter, DerivedWord, Gamma, Segment,
};
pub use fox::{fox_derivative, GroupRingElement};
pub use operator::{
    hnn_free_reduction, is_free_basis, kill_orbits, operator_presentation, rs_kernel,
    transversal_generator, HnnReduction, Killed, OperatorPresentation,
};
pub use word::{is_valid_name, parse_word, Letter, Presentation, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("generator '{0}' listed twice")]
    DuplicateGenerator(String),
    #[error("generator '{0}' has no image")]
    NoImage(String),
    #[error("homomorphism to Z is not onto (image is {0}Z)")]
    NotSurjective(i64),
    #[error("operator group: {0}")]
    Gamma(String),
    #[error("not an HNN presentation: {0}")]
    NotHnnForm(String),
}

impl GroupError {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        GroupError::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn offset(self, by: usize) -> Self {
        match self {
            GroupError::Parse { pos, msg } => GroupError::Parse { pos: pos + by, msg },
            e => e,
        }
    }
}
