//! Path algebras with relations and their finite-dimensional modules.
//!
//! Modules are right modules on row vectors, and a path `a*b` means `a`
//! then `b`. Injectives are duals of projectives over the opposite algebra.

pub mod algebra;
pub mod decompose;
pub mod ext;
pub mod hom;
pub mod module;
pub mod names;
pub mod resolution;
pub mod structure;
pub mod submodules;

use std::sync::Arc;

pub use algebra::{Algebra, AlgebraSpec, Path};
pub use decompose::{assembly_matrix, decompose, decompose_module, endo_central_idempotents, Decomposition, EndoCentral, Summand};
pub use ext::{ext1, extension_module, Ext1};
pub use hom::{end_algebra, find_isomorphism, hom_space, is_isomorphic};
pub use module::{direct_sum, Module, ModuleMap};
pub use names::resolve_module;
pub use resolution::{min_inj_resolution, InjResolution, ResolutionStatus, DEFAULT_MAX_TERMS};
pub use structure::{
    injective, injective_envelope, is_essential_mono, projective, simple, socle_radical, spectral_image,
    structure_modules, torsion_part, Envelope, SocleRadical, SpectralObject, StructureModules,
};
pub use submodules::{submodules_enumerate, DEFAULT_BUDGET};

use crate::boolring::BoolRing;
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug)]
pub struct RealizedLattice<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    /// Atoms are the simple modules.
    pub lattice: Arc<BoolRing>,
    /// Number of central idempotents of the algebra, `2^n`.
    pub central_idempotent_count: u128,
}

/// `k^n`, whose central idempotents form the Boolean lattice on `n` atoms.
pub fn realize_boolean_lattice<F: Field>(n: usize, field: &F, seed: u64) -> Result<RealizedLattice<F>> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("need at least one atom".into()));
    }
    let algebra = Arc::new(AlgebraSpec::semisimple(n).build(field)?);
    let reg = Module::regular(algebra.clone());
    let ec = endo_central_idempotents(&reg, seed)?;
    if ec.central_lattice.atom_count() != n || !ec.endo_mod_rad.is_commutative() {
        return Err(Error::InvalidAlgebra("central idempotents do not match the atoms".into()));
    }
    let lattice = BoolRing::new(algebra.vertices().iter().map(|v| format!("S{v}")))?;
    Ok(RealizedLattice { central_idempotent_count: lattice.size(), algebra, lattice })
}
