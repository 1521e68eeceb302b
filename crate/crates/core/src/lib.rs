//! Finite p-group computations: power-commutator presentations, the
//! p-quotient algorithm, Schur multipliers and exponent-law relator search.

pub mod error;
pub mod format;
pub mod linalg;
pub mod minimize;
pub mod pc;
pub mod pquotient;
pub mod schur;
pub mod subgroup;
pub mod word;

#[doc(hidden)]
pub mod testing;

pub use format::QuotientState;
pub use error::{PcError, QuotientError, WordError};
pub use pc::{Definition, NormalWord, PcBuilder, PcPresentation};
pub use pquotient::{
    extend_one_class, initial_quotient, p_covering_group, pquotient, CoverResult, ExponentLaw,
    Extension, QuotientSystem, Stage,
};
pub use subgroup::{PcSubgroup, SubgroupBuilder};
pub use word::{FreeWord, GroupOps, Presentation, RelatorExpr};
