//! Geometric realizations: exact hyperplane arrangements and numeric balls.

pub mod ball;
pub mod hyperplane;
pub mod lp;

pub use ball::{
    build_ball_realization, build_ball_realization_with, sphere_intersection, verify_ball_realization, Ball,
    BallOptions, BallRealization, BallVerdict,
};
pub use hyperplane::{
    build_hyperplane_realization, build_hyperplane_realization_with, nondegeneracy_margin,
    verify_hyperplane_realization, Discrepancy, FeasibilityMethod, GeometryError, Halfspace,
    HyperplaneOptions, HyperplaneRealization, Side, StepTrace,
};
