//! Lexicographically least square-free extensions of finite words over ℕ,
//! together with the morphisms and named words that describe them.

pub mod harness;
pub mod inducer;
pub mod lexicon;
pub mod lexleast;
pub mod morphism;
pub mod square;
pub mod word;

pub use lexleast::{compute_l_prefix, generates, is_irreducible, LexGenerator, LexStream};
pub use morphism::{builtin, Builtin, Morphism};
pub use square::{has_square, has_square_suffix, square_endpoints};
pub use word::{Letter, Word};
