//! The localization pipeline.
//!
//! Starting from `T_0 = S_0`, each level multiplies the previous complex by a
//! truncated ray and attaches every `(n+1)`-simplex `s` of `S`, spread out
//! through the telescope of `T_n|(s × ℕ^n)`, at the height `c_{n+1}(s)` given by
//! a proper coloring of the intersection graph.

pub mod bounds;
pub mod coloring;
pub mod grow;
pub mod mapping_telescope;
pub mod telescope;
pub mod tower;

pub use bounds::{bounds, BoundsTable};
pub use coloring::{first_fit_coloring, Coloring, ColoringTable};
pub use grow::{grow_edges, GrownComplex};
pub use mapping_telescope::{mapping_telescope, mapping_telescope_of, MappingTelescope};
pub use telescope::telescope;
pub use tower::{build_t_next, build_t_prime, localize, projection_map, Localization, RayPolicy, Tower};
