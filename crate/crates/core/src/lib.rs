//! Exact computations with finite-dimensional algebras and their modules.

pub mod algebra;
pub mod duality;
pub mod error;
pub mod gallery;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod random;
pub mod scalar;
pub mod triangular;
pub mod verdict;

pub use algebra::{Algebra, AlgebraPresentation};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use module::{Bimodule, Module, ModuleMap, Side};
pub use scalar::{Field, FieldSpec, Fp, Rational};
pub use verdict::{Certificate, Status, Verdict, Witness};

/// Matrices over the rationals.
pub type QMatrix = Matrix<Rational>;
pub type QAlgebra = Algebra<Rational>;
pub type QModule = Module<Rational>;
pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
