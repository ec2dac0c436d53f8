//! Exact arithmetic foundations.

pub mod dvr;
pub mod ffactor;
pub mod field;
pub mod hensel;
pub mod matrix;
pub mod poly;
pub mod series;
pub mod valued;

pub use dvr::{dvr_image_hnf, dvr_smith, DvrMatrixForm};
pub use field::{
    field_make, Field, FieldCtx, FiniteField, GaloisField, GaussianRationals, PrimeField, Rationals,
};
pub use series::{SeriesRing, TruncSeries};
pub use valued::{VElem, ValuedFrac};
