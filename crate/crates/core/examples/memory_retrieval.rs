//! Build a small store, retrieve by cosine similarity and dump it as JSONL.
//!
//! ```text
//! cargo run --example memory_retrieval -- "where did Ana park"
//! ```

use mma::memory::{
    write_memory_dump, Embedder, HashingEmbedder, MemoryItem, MemoryStore, Modality, SourceRegistry,
};

fn main() -> mma::Result<()> {
    let query = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "where did Ana park the car".to_owned());
    let embedder = HashingEmbedder::new(128)?;
    let registry = SourceRegistry::new(0.5)?
        .with_prior("ana", 0.9)?
        .with_prior("ben", 0.4)?;
    let mut store = MemoryStore::new(embedder.dimension(), registry)?;
    let notes = [
        ("m1", "ana", "Ana parked the car on level 3 of the garage"),
        (
            "m2",
            "ben",
            "Ben thinks Ana parked the car outside on the street",
        ),
        ("m3", "ana", "Ana bought oat milk and coffee beans"),
        ("m4", "ben", "The garage closes at midnight on weekdays"),
    ];
    for (i, (id, source, text)) in notes.into_iter().enumerate() {
        store.insert(MemoryItem {
            id: id.into(),
            content: text.to_owned(),
            source: source.to_owned(),
            timestamp: 1_700_000_000 + 3600 * i as u64,
            modality: Modality::Text,
            embedding: embedder.embed(text)?,
        })?;
    }

    println!("query: {query}");
    for hit in store.retrieve_topk(&embedder.embed(&query)?, 3)? {
        println!(
            "  {:.4}  {:<3} {}",
            hit.similarity,
            hit.item.id.as_str(),
            hit.item.content
        );
    }

    let mut dump = Vec::new();
    write_memory_dump(&store, &mut dump)?;
    println!("\n{} items, {} bytes as JSONL", store.len(), dump.len());
    Ok(())
}
