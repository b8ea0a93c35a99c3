//! Score conflicting memories under each component mask and show how the
//! top answer and the abstention decision change.

use mma::confidence::{
    abstain_decision, rerank, score_all, AbstainPolicy, ConfidenceConfig, TemporalConfig, Variant,
};
use mma::memory::{Embedder, HashingEmbedder, MemoryItem, MemoryStore, Modality, SourceRegistry};

const DAY: u64 = 86_400;

fn main() -> mma::Result<()> {
    let now = 1_720_000_000;
    let embedder = HashingEmbedder::new(128)?;
    let registry = SourceRegistry::new(0.5)?
        .with_prior("mechanic", 0.9)?
        .with_prior("forum", 0.2)?;
    let mut store = MemoryStore::new(embedder.dimension(), registry)?;
    let notes = [
        (
            "a",
            "mechanic",
            40,
            "the van needs a new timing belt before winter",
        ),
        (
            "b",
            "forum",
            1,
            "the van timing belt is fine and needs nothing",
        ),
        (
            "c",
            "mechanic",
            10,
            "the van timing belt shows cracks and needs replacing",
        ),
        ("d", "forum", 2, "someone said the van timing belt is fine"),
    ];
    for (id, source, age_days, text) in notes {
        store.insert(MemoryItem {
            id: id.into(),
            content: text.to_owned(),
            source: source.to_owned(),
            timestamp: now - age_days * DAY,
            modality: Modality::Text,
            embedding: embedder.embed(text)?,
        })?;
    }
    let query = embedder.embed("does the van need a timing belt")?;

    for variant in [Variant::Full, Variant::St, Variant::Tc, Variant::Cs] {
        let cfg = ConfidenceConfig::default().with_variant(variant);
        let temporal = TemporalConfig::from_days(30.0, now)?;
        let reports = score_all(
            &store,
            &query,
            4,
            &cfg.weights()?,
            &temporal,
            &cfg.consensus(),
        )?;
        println!("{variant}:");
        for r in rerank(&reports) {
            println!(
                "  {}  combined {:.3}  S {:.2}  T {:.2}  C {:+.3}",
                r.id.as_str(),
                r.combined,
                r.source,
                r.time,
                r.consensus
            );
        }
        println!(
            "  decision: {:?}",
            abstain_decision(&reports, &AbstainPolicy::default())
        );
    }
    Ok(())
}
