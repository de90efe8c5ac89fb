//! Cut-and-cone genus reduction, the coned prism ball, glue-back into a
//! 3-dimensional filling, and combinatorial Dehn twists.

mod ball;
pub(crate) mod cut;
mod fill;
mod glue;
mod stage;
mod twist;

pub use ball::{cone_ball, prism_shell};
pub use cut::CutError;
pub use fill::{fill, FillingReport};
pub use glue::{glue_back, Filling3Complex};
pub use stage::{cone_boundaries, cut_along, cut_and_cone_step, CutRecord, PendingCut};
pub use twist::dehn_twist;

use crate::complex::{SurfaceError, TetError};
use crate::systole::SystoleError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurgeryError {
    #[error("surface must be closed")]
    NotClosed,
    #[error("surface must be orientable")]
    NotOrientable,
    #[error("surface has genus 0; there is nothing to cut")]
    GenusZero,
    #[error("surface is not a sphere")]
    NotSphere,
    #[error("cutting along the loop disconnects the surface")]
    SeparatingLoop,
    #[error("loop is one-sided")]
    OneSidedLoop,
    #[error("twist offset {offset} is out of range for a loop of length {length}")]
    InvalidOffset { offset: usize, length: usize },
    #[error(
        "cut surface has boundary circles of lengths {found:?}, expected two of length {expected}"
    )]
    BadBoundary { expected: usize, found: Vec<usize> },
    #[error("coning produced an invalid surface: {0}")]
    ConingCollision(SurfaceError),
    #[error("stage {stage}: {detail}")]
    SimplicialityViolation { stage: usize, detail: String },
    #[error("stage {stage}: cone disk is not part of the current boundary")]
    MissingDisk { stage: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Tet(#[from] TetError),
    #[error(transparent)]
    Systole(#[from] SystoleError),
}
