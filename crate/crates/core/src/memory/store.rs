use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cosine_similarity;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MemoryId(pub String);

impl MemoryId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MemoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for MemoryId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Modality {
    Text,
    VisionCaption,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryItem {
    pub id: MemoryId,
    pub content: String,
    pub source: String,
    /// Seconds since the epoch.
    pub timestamp: u64,
    pub modality: Modality,
    pub embedding: Vec<f64>,
}

impl MemoryItem {
    fn validate(&self, dimension: usize) -> Result<()> {
        if self.embedding.len() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                actual: self.embedding.len(),
            });
        }
        let norm_sq: f64 = self.embedding.iter().map(|x| x * x).sum();
        if !(norm_sq > 0.0 && norm_sq.is_finite()) {
            return Err(Error::InvalidItem {
                id: self.id.0.clone(),
                reason: "embedding must have a finite nonzero norm".into(),
            });
        }
        Ok(())
    }
}

/// Trust priors per source id, with a fallback for unregistered sources.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceRegistry {
    entries: BTreeMap<String, f64>,
    default_prior: f64,
}

impl Default for SourceRegistry {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
            default_prior: 0.5,
        }
    }
}

fn check_prior(source: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::PriorOutOfRange {
            source_id: source.to_owned(),
            value,
        })
    }
}

impl SourceRegistry {
    pub fn new(default_prior: f64) -> Result<Self> {
        check_prior("<default>", default_prior)?;
        Ok(Self {
            entries: BTreeMap::new(),
            default_prior,
        })
    }

    pub fn with_prior(mut self, source: impl Into<String>, prior: f64) -> Result<Self> {
        self.set(source, prior)?;
        Ok(self)
    }

    pub fn set(&mut self, source: impl Into<String>, prior: f64) -> Result<()> {
        let source = source.into();
        check_prior(&source, prior)?;
        self.entries.insert(source, prior);
        Ok(())
    }

    /// Registered prior, or the default for unknown sources.
    pub fn prior(&self, source: &str) -> f64 {
        self.entries
            .get(source)
            .copied()
            .unwrap_or(self.default_prior)
    }

    pub fn is_registered(&self, source: &str) -> bool {
        self.entries.contains_key(source)
    }

    pub fn default_prior(&self) -> f64 {
        self.default_prior
    }

    pub fn entries(&self) -> &BTreeMap<String, f64> {
        &self.entries
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Retrieved<'a> {
    pub item: &'a MemoryItem,
    pub similarity: f64,
}

/// Flat, ingest-then-read memory store.
#[derive(Debug, Clone)]
pub struct MemoryStore {
    dimension: usize,
    items: Vec<MemoryItem>,
    ids: HashSet<MemoryId>,
    registry: SourceRegistry,
}

impl MemoryStore {
    pub fn new(dimension: usize, registry: SourceRegistry) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidConfig(
                "store dimension must be positive".into(),
            ));
        }
        Ok(Self {
            dimension,
            items: Vec::new(),
            ids: HashSet::new(),
            registry,
        })
    }

    pub fn insert(&mut self, item: MemoryItem) -> Result<()> {
        item.validate(self.dimension)?;
        if !self.ids.insert(item.id.clone()) {
            return Err(Error::DuplicateId(item.id.0));
        }
        self.items.push(item);
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn items(&self) -> &[MemoryItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, id: &MemoryId) -> Option<&MemoryItem> {
        self.items.iter().find(|i| &i.id == id)
    }

    pub fn registry(&self) -> &SourceRegistry {
        &self.registry
    }

    pub fn registry_mut(&mut self) -> &mut SourceRegistry {
        &mut self.registry
    }

    /// The `k` most similar items, similarity descending, ties by ascending id.
    pub fn retrieve_topk(&self, query: &[f64], k: usize) -> Result<Vec<Retrieved<'_>>> {
        if k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if query.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: query.len(),
            });
        }
        let mut scored = self
            .items
            .iter()
            .map(|item| {
                Ok(Retrieved {
                    item,
                    similarity: cosine_similarity(query, &item.embedding)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        scored.sort_by(|a, b| {
            b.similarity
                .total_cmp(&a.similarity)
                .then_with(|| a.item.id.cmp(&b.item.id))
        });
        scored.truncate(k);
        Ok(scored)
    }
}
