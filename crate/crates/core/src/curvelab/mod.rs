//! Curve models, section spaces of twists, pencils, discriminants and point search.

pub mod discriminant;
pub mod model;
pub mod pencil;
pub mod points;
pub mod sections;

pub use discriminant::{certify_smooth_ordinary, BranchReport};
pub use model::{
    derive_seed, impose_nodes, random_curve, random_node_points, CurveFile, CurveModel, TensorStore,
};
pub use pencil::{minimal_pencils, pencil, type_i_check, Pencil, PencilAxis};
pub use points::rational_points;
pub use sections::{mult_tensor, section_space, SectionSpace};
