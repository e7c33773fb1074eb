//! Cobordism words over sector boundaries, their canonical permutation
//! TQFT, and the functor from diagram morphisms.

mod functor;
mod screen;
mod tqft;
mod word;

pub use functor::{
    blocks_boundary, commuting_square_check, functor_f, square_against, SectorValues, SquareReport, SquareWitness,
};
pub use screen::{
    bit_permutation, encode_commutes, encode_commutes_with, hab_eigenvalue, ln2_floor, ln2_strict, EncodeCheck,
    Encodings, HolographicScreen, InteractionSpec,
};
pub use tqft::{decode, encode, generator_map, sector_value, tqft_eval, Assignment, TqftMap};
pub use word::{apply_generator, check_boundary, register_dim, Boundary, Cobordism, Generator, Sector, MAX_SLOTS};

#[cfg(test)]
mod tests;
