//! Order-decreasing transformation monoids on a finite chain: concrete maps,
//! presentations, normal forms with proof logging, and exhaustive checks that
//! each presentation defines its monoid.
//!
//! Maps act on the right and compose left to right: `x(ab) = (xa)b`.

pub mod cayley;
pub mod chain_maps;
pub mod congruence;
pub mod error;
pub mod normal_forms;
pub mod presentations;
pub mod verification;
pub mod words;

pub use chain_maps::{ChainSize, Family, PartialMap};
pub use error::{Error, Result};
pub use normal_forms::{Derivation, Direction, NormalForm, RewriteStep};
pub use presentations::{Presentation, Relation};
pub use words::{GeneratorSymbol, LetterKind, Word};

/// Checks run once before any computation: the composition convention and
/// the side-condition audit of every presentation at a small size.
pub fn startup_checks() -> Result<()> {
    chain_maps::composition_convention_self_test()?;
    let n = ChainSize::new(4)?;
    for fam in Family::PRESENTED {
        for item in presentations::audit_side_conditions(fam, n)? {
            if item.outcome == presentations::ExclusionOutcome::Unresolved {
                return Err(Error::Validation(format!(
                    "{fam}: excluded instance {} = {} of {} is neither unsound nor derivable",
                    item.lhs, item.rhs, item.schema
                )));
            }
        }
    }
    Ok(())
}
