//! Dynamics of finite Blaschke products on the unit disk.
//!
//! The crate covers four layers that build on each other:
//!
//! * plane primitives: Möbius maps, cross-ratio, hyperbolic distance and a
//!   dense polynomial root finder ([`moebius`], [`hyperbolic`], [`poly`]);
//! * finite Blaschke products with Denjoy-Wolff classification, Julia set
//!   dichotomy and backward-orbit sampling ([`blaschke`]);
//! * the unicritical family `B_w(z) = ((z-w)/(1-conj(w) z))^d` whose parabolic
//!   locus is an epicycloid, with membership and classification over the
//!   parameter disk ([`unicritical`]), and the analogous central component of
//!   the degree-d Multibrot set ([`multibrot`]);
//! * the degree-2 normal form: critical point as hyperbolic midpoint of the
//!   zeros, the conjugacy invariant lambda and an explicit conjugator
//!   ([`degree2`]).
//!
//! Rasters over parameter rectangles run in parallel when the `parallel`
//! feature (on by default) is enabled; the sequential entry points remain
//! available either way.

pub mod blaschke;
pub mod complex;
pub mod curve;
pub mod degree2;
pub mod error;
pub mod hyperbolic;
pub mod moebius;
pub mod multibrot;
pub mod poly;
pub mod raster;
pub mod tol;
pub mod unicritical;
pub mod wire;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
