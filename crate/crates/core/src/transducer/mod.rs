//! Letter-to-letter transducers and the compiler from FO-translations.

mod compile;
mod nft;
pub mod types;

pub use compile::{compile_fo_translation, compile_transform, CompileOptions, CompiledTranslation};
pub use nft::Nft;
pub use types::{
    build_type_monoid, build_type_monoid_with, rank_type, type_key, RankType, TypeKey, TypeMonoid, Vocabulary,
    DEFAULT_TYPE_BUDGET, MAX_RANK,
};
