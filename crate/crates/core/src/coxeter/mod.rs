mod datum;
mod group;

pub use datum::{pair, validate_cartan, CartanType, Root, RootDatum, RootId};
pub use group::{format_word, parse_word, WeylElem, WeylGroup};
