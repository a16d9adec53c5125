//! Inductively pierced neural codes.
//!
//! Construction and certification of inductively pierced codes: the piercing
//! operation and its recovery, simplicial and polar complexes (shelling,
//! vertex decomposability, clique test), canonical forms of neural ideals,
//! toric ideals with Buchberger's algorithm, and realizations of codes by
//! half-spaces (exact rational arithmetic) and by balls (floating point).
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod code;
pub mod complex;
pub mod geometry;
pub mod ideal;
pub mod piercing;
pub mod toric;

pub use code::{compare, restrict, sort_codewords, CodeError, Codeword, NeuralCode};
pub use piercing::{
    enumerate_pierced_codes, is_pierceable, pierce, recover_piercing_sequence, Detection, PiercingError,
    PiercingSequence, PiercingStep,
};
