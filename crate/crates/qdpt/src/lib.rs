//! Relativistic bound states of the q-deformed hyperbolic modified
//! Pöschl-Teller potential.
//!
//! The library solves the s-wave Klein-Gordon problem with equal scalar and
//! vector potentials V(r) = −D/cosh²_q(αr) in closed form — energy levels from
//! the implicit quantization condition, wavefunctions in terms of Gegenbauer
//! polynomials — and verifies every closed-form result against independent
//! numerical oracles (a finite-difference eigensolver, adaptive quadrature for
//! normalization, and a high-precision ODE-residual check).

pub mod dd;
pub mod oracle;
pub mod potential;
pub mod serialize;
pub mod special;
pub mod spectrum;
pub mod wavefunction;
