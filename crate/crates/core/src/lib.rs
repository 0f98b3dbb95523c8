//! Exact computation of the invariant factors (Smith normal forms) of
//! s-form and Shapovalov-form Gram matrices on rings of symmetric functions.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, no floating point anywhere. Every headline computation is
//! backed by a second, independent algorithm or a closed-form prediction,
//! and the cross-checks are part of the public contracts.
//!
//! ```
//! use shapoform::divisors::{predicted_prime_power, InvariantMultiset};
//! use shapoform::forms::gram_s_form;
//! use shapoform::partitions::Prime;
//! use shapoform::snf::smith_normal_form;
//!
//! let p = Prime::new(2)?;
//! let x = gram_s_form(2, 3)?; // both algorithms, agreement enforced
//! let snf = smith_normal_form(&x.mat, false);
//! assert_eq!(InvariantMultiset::from(&snf), predicted_prime_power(p, 1, 3));
//! # Ok::<(), shapoform::Error>(())
//! ```

pub mod bases;
pub mod divisors;
pub mod error;
pub mod forms;
pub mod matrix;
pub mod partitions;
pub mod snf;
pub mod symfunc;

pub use error::{Error, Result};
pub use partitions::{Multipartition, Partition, Prime};
