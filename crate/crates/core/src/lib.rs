//! Upper bounds on the number of rational points of curves over finite
//! fields, computed in exact arithmetic over `Q(√D)`.

pub mod bounds;
pub mod classical;
pub mod error;
pub mod order3;
pub mod qext;
pub mod refine2;
pub mod verify;

pub use bounds::{best, evaluate, EvalOptions};
pub use classical::{BoundReport, CurveParams, Method, TraceBound};
pub use error::{BoundError, Result};
pub use qext::{Quad, Rational};
