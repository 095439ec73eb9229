//! Exact geometry of toppings on a cake: maximal expansion, hole analysis
//! and the blank-count bounds for rectangle, rectilinear, plane and convex
//! arrangements.

pub mod analyze;
pub mod arrangement;
pub mod bounds;
pub mod error;
pub mod expansion;
pub mod format;
pub mod fuzz;
pub mod generators;
pub mod geom;
pub mod holes;
pub mod par;
pub mod plane;
pub mod render;
pub mod transforms;

pub use arrangement::{Arrangement, Cake, Toppings};
pub use error::{Error, Result};
pub use geom::rational::Rational;
pub use geom::shapes::{Point, Rect};
