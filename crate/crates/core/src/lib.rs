//! # chordiv
//!
//! Divergences built from the graph of a strictly convex generator `F`:
//!
//! | Divergence | Gap measured at `theta1` against |
//! |------------|----------------------------------|
//! | [`bregman::bregman`] | tangent at `theta2` |
//! | [`bregman::bregman_tangent`] | tangent at `(theta1 theta2)_alpha` |
//! | [`bregman::bregman_chord`] | chord through `(theta1 theta2)_alpha`, `(theta1 theta2)_beta` |
//! | [`jensen::jensen_chord`] | two nested chords (inside the epigraph) |
//!
//! plus Csiszar f-divergences on finite measures ([`fdiv`]), a biskew
//! operator, divergence k-means ([`clustering`]) and an `(alpha, beta)` sweep
//! engine ([`numerics::sweep`]).
//!
//! Generators, divergences and f-generators are strategies selected by name
//! at runtime through [`GeneratorRegistry`], [`DivergenceRegistry`] and
//! [`fdiv::FGeneratorRegistry`].
//!
//! ```
//! use chordiv_core::{bregman::{bregman, bregman_chord, ChordParams}, make_builtin};
//!
//! let f = make_builtin("shannon_negentropy", 1).unwrap();
//! let (p, q) = (0.2.into(), 0.8.into());
//! let chord = bregman_chord(f.as_ref(), &p, &q, ChordParams::new(0.999, 1.0).unwrap()).unwrap();
//! let exact = bregman(f.as_ref(), &p, &q).unwrap();
//! assert!(chord <= exact && exact - chord < 1e-3);
//! ```

pub mod bregman;
pub mod clustering;
pub mod divergence;
pub mod error;
pub mod fdiv;
pub mod generators;
pub mod jensen;
pub mod numerics;
pub mod point;
pub mod verify;

pub use divergence::{DivParams, Divergence, DivergenceRegistry};
pub use error::{Error, Result};
pub use generators::{make_builtin, ConvexGenerator, Domain, GeneratorRegistry};
pub use point::ParamPoint;
