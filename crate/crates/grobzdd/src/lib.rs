//! Gröbner bases for Boolean polynomials stored as zero-suppressed decision
//! diagrams, standard bases over `Z/m`, and encoders that turn verification
//! problems into polynomial systems.
//!
//! ```
//! use grobzdd::boolpoly::{BoolRing, Ordering};
//! use grobzdd::boolgb::{buchberger, Strategy};
//!
//! let ring = BoolRing::new(&["x", "y"], Ordering::Lex).unwrap();
//! let f = ring.parse("x*y + 1").unwrap();
//! let gb = buchberger(&[f], &Strategy::default());
//! let shown: Vec<String> = gb.iter().map(|p| p.to_string()).collect();
//! assert_eq!(shown, ["x + 1", "y + 1"]);
//! ```

pub mod boolgb;
pub mod boolpoly;
pub mod encode;
pub mod error;
pub mod interp;
pub mod ringstd;
pub mod text;
pub mod zdd;

pub use error::{Error, Result};
