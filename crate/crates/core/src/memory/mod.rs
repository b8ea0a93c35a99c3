//! Memory items, source priors and cosine top-k retrieval.

mod embed;
mod io;
mod similarity;
mod store;

pub use embed::{embed_text, tokenize, Embedder, HashingEmbedder, MIN_EMBED_DIMENSION};
pub use io::{read_memory_dump, read_registry, write_memory_dump, RegistryFile};
pub use similarity::cosine_similarity;
pub use store::{MemoryId, MemoryItem, MemoryStore, Modality, Retrieved, SourceRegistry};
