//! Polynomial homotopy continuation with lazily evaluated solution sets.
//!
//! Solution sets are represented by [`lazy::ResultIterator`]s: a homotopy,
//! tracker settings, a re-iterable source of start solutions and an optional
//! bitmask. No path is tracked until the iterator is consumed, and consumers
//! such as counting or searching hold one path result at a time.
//!
//! ```
//! use hciter::lazy::{conditional_count, solve_iter, StartKind};
//! use hciter::{PolySystem, TrackOptions, C64};
//!
//! # fn main() -> hciter::Result<()> {
//! let f = PolySystem::parse(r#"{"variables":["x","y"],"polynomials":[
//!     [{"c":[1,0],"e":[2,0]},{"c":[1,0],"e":[0,1]},{"c":[-1,0],"e":[0,0]}],
//!     [{"c":[1,0],"e":[2,0]},{"c":[1,0],"e":[0,2]},{"c":[-4,0],"e":[0,0]}]
//! ]}"#)?;
//! let it = solve_iter(&f, StartKind::TotalDegree { gamma: C64::from_polar(1.0, 1.3) },
//!                     TrackOptions::default())?;
//! assert_eq!(it.instrumentation().paths_tracked(), 0);
//! let real = conditional_count(|r| r.is_success() && r.is_real(1e-6), &it);
//! assert_eq!(real, 2);
//! # Ok(())
//! # }
//! ```

pub mod compress;
pub mod error;
pub mod homotopy;
pub mod lazy;
pub mod linalg;
pub mod polyhedral;
pub mod polysys;
pub mod startsys;
pub mod tracker;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use homotopy::Homotopy;
pub use lazy::{Bitmask, Instrumentation, ResultIterator, StartKind};
pub use polysys::{
    cyclic_system, parse_system, serialize_system, Monomial, PolySystem, Polynomial,
};
pub use tracker::{track, PathResult, PathStatus, TrackOptions};

use rand::Rng;

/// A uniformly random point on the complex unit circle.
pub fn random_gamma<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU)
}
