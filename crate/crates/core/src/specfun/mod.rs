//! Special functions and quadrature kernels.

mod elliptic;
mod quad;

pub use elliptic::{
    agm, ellipj, ellipk, lemniscate_angle, lemniscate_period, sn_imag_unit, sn_imag_unit_jet,
    EllipticTriple,
};
pub use quad::{cumulative_integral, gauss_legendre, integrate, integrate_2d, QuadTable, GL_ORDER};
