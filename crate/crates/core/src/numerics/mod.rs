//! Numerical building blocks: adaptive quadrature, series acceleration and
//! special functions.

pub mod quadrature;
pub mod series;
pub mod special;

pub use quadrature::{Integral, Integrator};
pub use series::{SeriesOptions, SeriesSum};
