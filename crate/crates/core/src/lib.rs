//! Exact weak Lefschetz property decisions for Artinian monomial algebras
//! `K[x, y, z]/I`, through triangular regions, lozenge tilings and integer
//! determinants.

pub mod formulas;
pub mod ideal;
pub mod linalg;
mod matching;
pub mod region;
pub mod tiling;
pub mod wlp;

pub use ideal::{parse_ideal, HilbertFunction, Monomial, MonomialIdeal, ParseError, SocleProfile, Var, VarPerm};
pub use linalg::{IntMatrix, LatticePoints};
pub use region::{build_region, Balance, BalanceKind, Puncture, TriangularRegion};
pub use tiling::{PathFamily, SignedEnumeration, Tiling};
pub use wlp::{DegreeReport, Method, Type2Form, WlpReport};

