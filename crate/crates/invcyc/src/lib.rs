//! Exact integer arithmetic for inverse ternary cyclotomic polynomials
//! Psi_pqr = (x^pqr - 1) / Phi_pqr, specialized to the family
//! r = alpha*p + beta*q with alpha, beta > 0 and r <= phi(pq).
//!
//! The crate provides O(1)-per-coefficient closed forms, a closed-form
//! height with explicit witness exponents, a four-condition flatness
//! criterion, enumeration and export over the family, and brute-force
//! polynomial oracles that everything else is checked against:
//!
//! - [`numtheory`]: primality, modular inverses, and the two
//!   decompositions the formulas consume.
//! - [`polyoracle`]: exact dense polynomials, cyclotomic and inverse
//!   cyclotomic construction, the product form, the auxiliary factor.
//! - [`coeffengine`]: the coefficient engines (closed form, summation,
//!   full polynomial) and the factorization engine for r > phi(pq).
//! - [`heightflat`]: height formula, witnesses, flatness, the 1996 bound.
//! - [`search`]: family enumeration, the flat set S(p, q), q = tp + 1
//!   progressions, ratio experiments, CSV/JSON export.
//! - [`verify`]: the cross-engine self-check sweep.
//! - [`parallel`]: data-parallel map, sequential without the `parallel`
//!   feature.
//!
//! ```
//! use invcyc::coeffengine::{c_coeff, EvalMethod};
//! use invcyc::heightflat::{height_formula, is_flat};
//! use invcyc::numtheory::FamilyTriple;
//!
//! let t = FamilyTriple::new(3, 11, 17)?;
//! assert_eq!(t.n(), 561);
//! assert_eq!(height_formula(&t), 2);
//! assert_eq!(c_coeff(&t, 17, EvalMethod::ClosedForm)?, -2);
//! assert!(!is_flat(&t).flat);
//! # Ok::<(), invcyc::Error>(())
//! ```

pub mod coeffengine;
pub mod error;
pub mod heightflat;
pub mod numtheory;
pub mod parallel;
pub mod polyoracle;
pub mod search;
pub mod verify;

pub use coeffengine::EvalMethod;
pub use error::{Error, Result};
pub use heightflat::{FlatnessVerdict, HeightReport};
pub use numtheory::FamilyTriple;
pub use polyoracle::IntPolynomial;
pub use search::SearchRecord;
