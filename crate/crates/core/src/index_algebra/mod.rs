//! Indices, binary words, the harmonic and shuffle products, and the
//! regularization recursions with formal MZV coefficients.

mod index;
mod lincomb;
mod products;
mod regularize;
mod symbol;

pub use index::{Index, Letter, Word};
pub use lincomb::{IndexCombination, LinComb, WordCombination};
pub use products::{harmonic_product, harmonic_product_indices, shuffle_product, shuffle_product_words};
pub use regularize::{reg_harm, reg_harm_star, reg_shuffle, RegEngine};
pub use symbol::{e_poly, Monomial, MzvSymbolPoly, SymbolExpr};

/// `W(K)`.
pub fn index_to_word(k: &Index) -> Word {
    k.to_word()
}

/// Inverse of [`index_to_word`] on words that are empty or end in `y`.
pub fn word_to_index(w: &Word) -> crate::Result<Index> {
    w.to_index()
}
