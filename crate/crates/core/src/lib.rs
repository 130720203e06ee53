//! Finite-precision p-adic q-analogs.
//!
//! The crate evaluates `ι_q(z) = (q^z - 1)/(q - 1)` on truncated p-adic
//! integers, describes its kernel and image, decides and enumerates its
//! fixed points modulo `p^n`, and (for `p = 3`) computes the correspondence
//! between a parameter `q ≡ 4, 7 (mod 9)` and the 3-adic fixed point of
//! `ι_q`.
//!
//! ```
//! use qiota::{cocycle, Exponent, QParameter};
//!
//! let q = QParameter::from_int(4, 3, 8).unwrap();
//! let v = cocycle::iota_eval(&q, &Exponent::from(2), 4).unwrap();
//! assert_eq!(v.to_u64(), Some(5));
//! ```

pub mod cocycle;
pub mod correspondence;
mod coset;
pub mod error;
pub mod fixed_points;
pub mod limits;
pub mod oracle;
pub mod padic;

pub use cocycle::{Exponent, ImageDescription, KernelOrder};
pub use coset::CosetDescriptor;
pub use error::{Error, Result};
pub use padic::{Literal, Mod9Class, PadicInt, QParameter, Valuation};
