pub mod cover;
pub mod error;
pub mod gl;
pub mod glrep;
pub mod index;
pub mod kac;
pub mod linalg;
pub mod lincomb;
pub mod module;
pub mod omega;
pub mod param;
pub mod pbw;
pub mod pi;
pub mod scalar;
pub mod suites;
pub mod superpoly;
pub mod tensor;
pub mod ubar;
pub mod weight;
pub mod weyl;
pub mod witt;

pub use error::{Error, ParseError, Result};
pub use index::{binom, tau, Dims, MultiIndex, OddSet};
pub use lincomb::LinComb;
pub use param::{Coeff, ParamPoly, WeightParam};
pub use scalar::Scalar;
pub use superpoly::{apply_deriv, DerivSymbol, Monomial, SuperPoly};
pub use ubar::{u_bracket, u_product, x_elem, UElem, UWord};
pub use weight::Weight;
pub use witt::{ExtWittElem, WittElem, WittTerm};
