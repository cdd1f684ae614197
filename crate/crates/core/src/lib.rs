pub mod error;
pub mod exterior;
pub mod dual;
pub mod extmat;
pub mod field;
pub mod golden;
pub mod lines;
pub mod moduli_checks;
pub mod monad;
pub mod normal_forms;
pub mod p1_cohomology;
pub mod reproduce;
pub mod restriction_scroll;
pub mod sample;
pub mod syzygy;

pub use error::{Error, Result};
pub use exterior::{Blade, Multivector, Variance};
pub use extmat::{BinaryForm, ExtMatrix, ScalarMatrix};
pub use field::{Field, Scalar};
pub use monad::{Monad, ValidationReport};
pub use syzygy::SyzygySpace;
