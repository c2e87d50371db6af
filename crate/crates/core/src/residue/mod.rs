//! Prime ideals, residue fields, and quadratic residue and Hilbert symbols.

mod dyadic;
mod field;
mod ideal;
mod symbol;

pub use dyadic::dyadic_hilbert;
pub use field::{sqrt_in, ResidueElement, ResidueField};
pub use ideal::{normalized_generator, reduce, splitting_type, sqrt_mod, Kind, NormFlags, PrimeIdeal};
pub use symbol::{hilbert_symbol, local_symbols, place_symbol, product_formula_check, quad_symbol, LocalSymbol, Place};

pub(crate) use ideal::{primes_above, unit_window};
