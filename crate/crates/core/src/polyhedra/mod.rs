pub mod height;
pub mod hull;
pub mod linalg;
pub mod lp;
pub mod mixed;
pub mod oracle;
pub mod support;
pub mod svg;
pub mod triangulation;

pub use height::Height;
pub use hull::{LowerFacet, MixedCell};
pub use mixed::{
    induced_subdivision, is_mixed_tuple, lower_facets, mixed_cells, mixed_lower_facets, mixed_volume,
    mixed_volume_of_supports, MixedCheck, MixedVolume, Subdivision,
};
pub use oracle::mixed_volume_polarization_oracle;
pub use support::{LiftedInput, LiftedSupport, Point, Support};
pub use triangulation::{circuit_relation, circuit_triangulation, coherent_triangulation, Triangulation};
