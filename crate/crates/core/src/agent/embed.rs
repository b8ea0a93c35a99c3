use crate::bench::{FactSpec, Verdict};
use crate::memory::{tokenize, Embedder, HashingEmbedder};
use crate::Result;

/// Hashed bag of tokens plus one stance axis for the disputed fact.
///
/// The stance coordinate is `+weight` when a text names User B's value but
/// not User A's, `-weight` for the reverse, and 0 otherwise, so that the two
/// sides of the dispute have negative support factors.
#[derive(Debug, Clone, PartialEq)]
pub struct StanceEmbedder {
    bag: HashingEmbedder,
    weight: f64,
    value_a: String,
    value_b: String,
}

impl StanceEmbedder {
    pub fn new(bag_dimension: usize, weight: f64, fact: &FactSpec) -> Result<Self> {
        Ok(Self {
            bag: HashingEmbedder::new(bag_dimension)?,
            weight,
            value_a: fact.value_a.to_lowercase(),
            value_b: fact.value_b.to_lowercase(),
        })
    }

    /// TRUE for texts backing User B's value, FALSE for User A's.
    pub fn stance(&self, text: &str) -> Option<Verdict> {
        let (mut a, mut b) = (false, false);
        for t in tokenize(text) {
            a |= t == self.value_a;
            b |= t == self.value_b;
        }
        match (a, b) {
            (false, true) => Some(Verdict::True),
            (true, false) => Some(Verdict::False),
            _ => None,
        }
    }
}

impl Embedder for StanceEmbedder {
    fn dimension(&self) -> usize {
        self.bag.dimension() + 1
    }

    fn embed(&self, text: &str) -> Result<Vec<f64>> {
        let mut v = self.bag.embed(text)?;
        v.push(match self.stance(text) {
            Some(Verdict::True) => self.weight,
            Some(Verdict::False) => -self.weight,
            _ => 0.0,
        });
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::cosine_similarity;

    fn fact() -> FactSpec {
        FactSpec {
            subject: "Maya's bicycle".into(),
            attribute: "color".into(),
            value_a: "red".into(),
            value_b: "blue".into(),
            distractors: vec![],
        }
    }

    #[test]
    fn stances() {
        let e = StanceEmbedder::new(64, 1.0, &fact()).unwrap();
        assert_eq!(e.stance("it is Blue."), Some(Verdict::True));
        assert_eq!(e.stance("it is red"), Some(Verdict::False));
        assert_eq!(e.stance("red or blue?"), None);
        assert_eq!(e.stance("bluebird"), None);
    }

    #[test]
    fn opposing_claims_disagree() {
        let e = StanceEmbedder::new(256, 1.5, &fact()).unwrap();
        let a = e.embed("the color of Maya's bicycle is red").unwrap();
        let b = e.embed("the color of Maya's bicycle is blue").unwrap();
        let a2 = e
            .embed("I still say the color of Maya's bicycle is red")
            .unwrap();
        assert!(cosine_similarity(&a, &b).unwrap() < 0.0);
        assert!(cosine_similarity(&a, &a2).unwrap() > 0.5);
        assert_eq!(e.dimension(), 257);
    }
}
