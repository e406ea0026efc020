//! Finite models of proto-exact categories: quiver representations over F_q,
//! pointed sets (the F_1 model), Waldhausen cells with 2-Segal counting checks,
//! and double-coset Hecke algebras.

mod enumerate;
mod filtered;
mod hecke;
mod homext;
mod quiver;
mod subobjects;
mod waldhausen;

pub use enumerate::{dimension_vectors, enumerate_reps, gl_alpha_order, ClassKey, IsoClassTable, RepCategory};
pub use homext::{automorphism_count, automorphisms, ext1_dim, ext1_dim_cokernel, hom_dim};
pub use quiver::{Quiver, QuiverRep};
pub use subobjects::{
    closed_subspace_tuples, count_quotients, image_in_quotient, is_arrow_closed, quotient, restrict,
    subobjects, subobjects_of_dim, subquotient, Subobject,
};
pub use filtered::{flags_of_type, FilteredSpace, PointedSet};
pub use hecke::{double_cosets, hecke_convolution_oracle, hecke_structure_constants, HeckeAlgebra};
pub use waldhausen::{
    verify_2segal_counting, waldhausen_cells, CellComponent, ExactModel, FiniteGroupoidSummary, PointedSetModel,
    RepModel, SegalEntry, SegalMap, SegalReport,
};
