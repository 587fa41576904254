//! Homological algebra in weakly exact categories.
//!
//! The [`category::Category`] trait describes an instance: a category with a
//! zero object and a class of deflations. Generic constructions (snake
//! lemma, 3×3 lemmas, cohomology and its long exact sequence) live in
//! [`engine`] and [`chain`], axiom checking in [`axioms`]. Two instances
//! ship with the crate: finitely presented abelian groups ([`fgab`]) and
//! finite pointed sets ([`pointed`]).

pub mod axioms;
pub mod category;
pub mod chain;
pub mod engine;
pub mod error;
pub mod fgab;
pub mod gen;
pub mod hom;
pub mod matrix;
pub mod pointed;

pub use category::{Category, CategoryExt, ShortExactSequence};
pub use error::{Error, Result};
pub use fgab::{AbMorphism, Fgab, FpAbelianGroup};
pub use matrix::IntMatrix;
pub use pointed::{DeflationClass, PointedMap, PointedSet, PointedSets};
