//! Pairs of pants, their shear coordinates, and closed surfaces glued from
//! them.

mod assemble;
mod develop;
mod lamination;
mod surface;

pub use assemble::{
    assemble_from_spec, assemble_surface, solve_twist, twist_deform, CurveGluing, CurveSide,
    DevelopedSurface, GluingQuadruple, LENGTH_RTOL,
};
pub use develop::{
    develop_pants, develop_pants_from, BoundaryDevelopment, DevelopedPants, LeafQuadruple, Lift,
};
pub use lamination::{
    boundary_lengths, end_sum, shear_violations, shears_for_lengths, validate_shears, FanStep,
    LaminationType, PantsLamination, PantsShearing, SideGluing,
};
pub use surface::{
    CurveInfo, CurveSpec, PantsInfo, PantsSpec, ShearMap, ShortArcSpec, Slot, SurfaceSpec,
    SurfaceTopology,
};
