pub mod arith;
pub mod conic;
pub mod error;
pub mod golden;
pub mod magnus;
pub mod massey;
pub mod redei;
pub mod residue;
pub mod ring;
pub mod search;
pub mod tower;

pub use error::{Error, Result};
pub use residue::{Kind, Place, PrimeIdeal};
pub use ring::{QuadField, RingElement};
