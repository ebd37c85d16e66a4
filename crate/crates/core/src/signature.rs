//! The three homology signatures of a finite space.
//!
//! * mccord: homology of the order complex of the specialization preorder;
//! * shape: homology of the Čech nerve of the cover by minimal opens, which
//!   refines every open cover;
//! * qsh: homology of the levelwise components of the McCord hypercovering.
//!
//! All three truncate at depth `max_degree + 1`.

use std::sync::Arc;

use thiserror::Error;

use crate::homology::{homology, HomologyError, HomologyGroups};
use crate::hypercover::{gamma, mccord_hypercover, HypercoverError};
use crate::simplicial::{cech_nerve, normalized_chains, order_complex, SimplicialError, T0Mode};
use crate::space::{FiniteSpace, OpenCover};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Hypercover(#[from] HypercoverError),
}

pub type Result<T, E = SignatureError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signatures {
    pub mccord: HomologyGroups,
    pub shape: HomologyGroups,
    pub qsh: HomologyGroups,
}

pub fn mccord_signature(space: &FiniteSpace, max_degree: usize) -> Result<HomologyGroups> {
    let k = order_complex(&space.specialization_preorder(), max_degree + 1, T0Mode::Quotient)?;
    Ok(homology(&normalized_chains(&k.set, max_degree)?, max_degree)?)
}

pub fn nerve_signature(cover: &OpenCover, max_degree: usize) -> Result<HomologyGroups> {
    let n = cech_nerve(cover, max_degree + 1)?;
    Ok(homology(&normalized_chains(&n, max_degree)?, max_degree)?)
}

pub fn shape_signature(space: &Arc<FiniteSpace>, max_degree: usize) -> Result<HomologyGroups> {
    nerve_signature(&OpenCover::finest(space), max_degree)
}

pub fn qsh_signature(space: &Arc<FiniteSpace>, max_degree: usize) -> Result<HomologyGroups> {
    let g = gamma(&mccord_hypercover(space, max_degree + 1)?)?;
    Ok(homology(&normalized_chains(&g.set, max_degree)?, max_degree)?)
}

pub fn signatures(space: &Arc<FiniteSpace>, max_degree: usize) -> Result<Signatures> {
    Ok(Signatures {
        mccord: mccord_signature(space, max_degree)?,
        shape: shape_signature(space, max_degree)?,
        qsh: qsh_signature(space, max_degree)?,
    })
}
