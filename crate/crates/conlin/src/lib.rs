//! Exact-arithmetic toolkit for vector and set optimization over a partially
//! ordered vector space `Z = R^m` with a polyhedral ordering cone `C`.
//!
//! The central objects are closed convex *upper sets* `A = A + C` represented
//! by finite systems of halfspaces with exact rational data. They form a
//! complete lattice under reverse inclusion, with a residuated addition. On
//! top of that sit piecewise-linear set-valued maps, their one-sided
//! directional derivatives, and certifiers for minimality and
//! variational-inequality conditions together with an implication harness.

pub mod rational;
pub mod extreal;
pub mod lp;
pub mod poly;
pub mod cone;
pub mod upperset;

pub use extreal::ExtReal;
pub use rational::Rational;
