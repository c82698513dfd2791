//! Words, finite presentations, the parser, and the bundled corpus.

pub mod corpus;
pub mod parse;
pub mod presentation;
pub mod tietze;
pub mod words;

pub use parse::{parse, parse_presentation, parse_word, ParseError, ParseErrorKind, PresentationFile};
pub use presentation::{
    central_extension, direct_product, quotient_extend, signed_letter, GeneratorSymbol,
    Presentation, PresentationError,
};
pub use words::{free_reduce, Letter, Word};
