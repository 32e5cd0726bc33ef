//! Curves on punctured spheres in normal coordinates.

pub mod arrange;
pub mod curve;
pub mod cut;
pub mod forgetful;
pub mod piece;
pub mod triangulation;
pub mod twist;

pub use arrange::geometric_intersection;
pub use curve::{curve_from_word, reduce_word, CurveClass, NormalMultiCurve, SurfaceSpec};
pub use cut::{cut_along, curve_around, CutSurface, Hole, Location, Piece};
pub use forgetful::ForgetfulMap;
pub use piece::Marking;
pub use twist::dehn_twist;
pub use triangulation::{EdgeId, Triangulation, TriId, Vertex, TRIANGULATION_LAYOUT_VERSION};
