//! Exact q-series arithmetic for eta products and Ramanujan congruences
//! `c(ell n + a) = 0 (mod ell)`.
//!
//! ```
//! use etaq::{congruence, expand_product, Integers, PrimeField, ProductSpec};
//!
//! let spec: ProductSpec = "1^-1 2^-1".parse().unwrap();
//! let c = expand_product(Integers, &spec, 6).unwrap();
//! assert_eq!(c.to_string(), "1 + 1*q + 3*q^2 + 4*q^3 + 9*q^4 + 12*q^5 + O(q^6)");
//!
//! // c(3n + 2) vanishes mod 3 as far as we look
//! let mod3 = expand_product(PrimeField::new(3).unwrap(), &spec, 3000).unwrap();
//! assert!(mod3.ap_extract(3, 2).unwrap().is_zero());
//!
//! let cert = congruence::certify(&spec, 13, 5, 10_000).unwrap();
//! assert_eq!(cert.route, congruence::Route::Refuted);
//! ```

pub mod congruence;
pub mod eisenstein;
pub mod error;
pub mod filtration;
pub mod product;
pub mod ring;
pub mod series;

pub use congruence::{Certificate, CongruenceCandidate, Route, Status, Witness};
pub use eisenstein::{FormWithWeight, Rational};
pub use error::{CongruenceError, FormError, SeriesError, SpecError};
pub use filtration::{ThetaCase, ThetaCycleReport};
pub use product::{euler_series, expand_product, ProductSpec};
pub use ring::{Integers, PrimeField, Rationals, Ring};
pub use series::TruncatedSeries;

/// Series with arbitrary-precision integer coefficients.
pub type IntSeries = TruncatedSeries<Integers>;
/// Series with exact rational coefficients.
pub type RatSeries = TruncatedSeries<Rationals>;
/// Series with coefficients in `F_ell`.
pub type ModSeries = TruncatedSeries<PrimeField>;
