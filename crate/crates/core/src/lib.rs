//! Centers of n-simplices: barycentric geometry from edge lengths, pedal and
//! related simplices, generalized Apollonian spheres and isodynamic points,
//! Fermat-Torricelli points and isogonic points.

pub mod apollonian;
pub mod bary;
pub mod edges;
pub mod error;
pub mod fermat;
pub mod isogonic;
pub mod pedal;
pub mod simplex;

pub use apollonian::{
    apollonian_sphere, apollonian_spheres, isodynamic_points, restrict_to_facet, yiu_triangle_test, ApollonianSphere,
    IsodynamicResult, YiuVerdict,
};
pub use bary::{barycentric_square, BarycentricPoint, CoordMode};
pub use edges::{embed_points, EdgeLengthTable};
pub use error::{GeometryError, Result};
pub use fermat::{
    fermat_point, total_distance, weiszfeld_step_q, weiszfeld_step_r, z_correspondent, FermatOptions, FermatSolution,
    IterationTrace, WeiszfeldMethod,
};
pub use isogonic::{
    enumerate_isogonic, enumerate_isogonic_with, is_isogonic, isogonal_conjugate, pedal_equiareal_iteration,
    triad_angle_check, IsogonicCatalog, IsogonicCheck, IsogonicEntry, IterationStatus, PedalIterationOptions,
    SeedStrategy,
};
pub use pedal::{antipedal_simplex, inversive_image, pedal_simplex, polar_simplex, ConstructionKind, PedalResult};
pub use simplex::{equiareal_deviation, ClassicalCenters, Hyperplane, SimplexModel, Sphere};
