//! Shortest homotopically and homologically nontrivial edge loops.

mod homology;
mod search;

pub use homology::Z2HomologyBasis;
pub use search::{
    homological_systole, homological_systole_with, homotopy_systole, is_contractible,
    is_nonseparating, shorten_to_simple, Systole,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystoleError {
    #[error("surface must be closed")]
    NotClosed,
    #[error("surface has no nontrivial loops")]
    GenusZero,
    #[error("loop is null-homologous")]
    TrivialClass,
    #[error("loop is not simple")]
    NotSimple,
    #[error("loop has length {0}; at least 3 is needed")]
    TooShort(usize),
    #[error("({0}, {1}) is not an edge of the surface")]
    EdgeNotInSurface(usize, usize),
}
