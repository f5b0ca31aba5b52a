//! Casimir-Polder potential of a laser-driven two-level atom in front of a
//! perfectly conducting mirror.
//!
//! Two independent routes are provided: a perturbative route built on the
//! atomic polarizability at the laser frequency, and a Bloch-equation route
//! that weights ground- and excited-state potentials by the Rabi-oscillating
//! populations. Both reduce to closed forms in the scattering Green's tensor
//! of the mirror, plus one imaginary-frequency integral for the nonresonant
//! part.

pub mod bloch;
pub mod error;
pub mod figures;
pub mod greens;
pub mod oracle;
pub mod params;
pub mod polarizability;
pub mod potentials;
pub mod quadrature;

pub use error::{Error, Result};
pub use params::{
    build_driven_system, field_to_intensity, intensity_to_field, Alignment, AtomParams,
    DrivenSystem, LaserParams, PhysicalConstants,
};
