//! Modules induced from the one-dimensional `a_z`-module `C_m`:
//! `V_m` (over the positive part), `W_m` (over the Borel subalgebra) and
//! `Ind_{z,theta}` (over the whole algebra), on exact truncated bases.

mod character;
mod element;
mod engine;
pub mod linalg;
mod ops;

pub use character::{CharacterCheck, CharacterParams, Conditions};
pub use element::{BasisKey, Bounds, ModElt, Space};
pub use engine::InducedModule;
pub use ops::{
    check_reducible_restriction, eigen_matrix, kernel, reaches_generator, solve_affine,
    solve_system, AffineSolution, ReachBudget, RestrictionCheck, TruncatedOperator,
};

use thiserror::Error;

use crate::coeff::CoeffError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("mode l({mode}) does not act on the {space} module")]
    InadmissibleMode { mode: i64, space: Space },
    #[error("the central element does not act on the {0} module")]
    CentralNotInAlgebra(Space),
    #[error("basis vector {key} lies outside the bounds {bounds}")]
    Overflow { key: String, bounds: Bounds },
    #[error("element of the {found} module used where the {expected} module is required")]
    SpaceMismatch { expected: Space, found: Space },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
