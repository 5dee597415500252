//! Square-tiled translation surfaces: saddle connections by exact ray
//! tracing, the `SL(2, Z)` action on permutation pairs, and the thin-cone
//! minimum `Psi` of holonomy real parts.

mod experiment;
mod holonomy;
mod origami;
mod trace;

pub use experiment::{psi_sheared, psi_sheared_as_printed, sc_experiment, shear_grid_point, SurfaceExperiment};
pub use holonomy::{act_matrix, enumerate_holonomies, primitive_vectors, psi, HolonomySet, SurfaceCone};
pub use origami::{Corner, Generator, Origami};
pub use trace::{min_multiple, min_multiple_traced, saddle_connections, SaddleConnection};
