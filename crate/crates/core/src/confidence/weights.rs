use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Component {
    Source,
    Time,
    Consensus,
}

/// The set of components that take part in the combined score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentMask {
    pub source: bool,
    pub time: bool,
    pub consensus: bool,
}

impl ComponentMask {
    pub const ALL: Self = Self {
        source: true,
        time: true,
        consensus: true,
    };

    pub fn from_components(components: &[Component]) -> Self {
        let has = |c| components.contains(&c);
        Self {
            source: has(Component::Source),
            time: has(Component::Time),
            consensus: has(Component::Consensus),
        }
    }

    pub fn contains(&self, c: Component) -> bool {
        match c {
            Component::Source => self.source,
            Component::Time => self.time,
            Component::Consensus => self.consensus,
        }
    }

    pub fn without(mut self, c: Component) -> Self {
        match c {
            Component::Source => self.source = false,
            Component::Time => self.time = false,
            Component::Consensus => self.consensus = false,
        }
        self
    }
}

/// Named ablation variants. The letters list the components that are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    /// Source + Time (no consensus).
    St,
    /// Time + Consensus (no source).
    Tc,
    /// Source + Consensus (no time).
    Cs,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Full, Variant::St, Variant::Tc, Variant::Cs];

    pub fn mask(self) -> ComponentMask {
        match self {
            Variant::Full => ComponentMask::ALL,
            Variant::St => ComponentMask::ALL.without(Component::Consensus),
            Variant::Tc => ComponentMask::ALL.without(Component::Source),
            Variant::Cs => ComponentMask::ALL.without(Component::Time),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::St => "st",
            Variant::Tc => "tc",
            Variant::Cs => "cs",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Variant::Full),
            "st" => Ok(Variant::St),
            "tc" => Ok(Variant::Tc),
            "cs" => Ok(Variant::Cs),
            _ => Err(Error::UnknownVariant(s.to_owned())),
        }
    }
}

/// Raw component weights and the enabled set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceWeights {
    source: f64,
    time: f64,
    consensus: f64,
    enabled: ComponentMask,
}

impl Default for ConfidenceWeights {
    fn default() -> Self {
        Self {
            source: 1.0,
            time: 1.0,
            consensus: 1.0,
            enabled: ComponentMask::ALL,
        }
    }
}

impl ConfidenceWeights {
    pub fn new(source: f64, time: f64, consensus: f64, enabled: ComponentMask) -> Result<Self> {
        for (name, w) in [("source", source), ("time", time), ("consensus", consensus)] {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "{name} weight must be a nonnegative finite number, got {w}"
                )));
            }
        }
        let w = Self {
            source,
            time,
            consensus,
            enabled,
        };
        if w.enabled_total() <= 0.0 {
            return Err(Error::AllComponentsMasked);
        }
        Ok(w)
    }

    pub fn for_variant(variant: Variant) -> Self {
        Self {
            enabled: variant.mask(),
            ..Self::default()
        }
    }

    pub fn enabled(&self) -> ComponentMask {
        self.enabled
    }

    pub fn raw(&self, c: Component) -> f64 {
        match c {
            Component::Source => self.source,
            Component::Time => self.time,
            Component::Consensus => self.consensus,
        }
    }

    /// Same weights with all raw values multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.source * factor,
            self.time * factor,
            self.consensus * factor,
            self.enabled,
        )
    }

    /// Copy with `c` disabled. May leave no usable component.
    pub fn without(&self, c: Component) -> Self {
        Self {
            enabled: self.enabled.without(c),
            ..*self
        }
    }

    fn enabled_total(&self) -> f64 {
        [Component::Source, Component::Time, Component::Consensus]
            .into_iter()
            .filter(|c| self.enabled.contains(*c))
            .map(|c| self.raw(c))
            .sum()
    }

    /// Normalised weight `w'_k`; zero for disabled components.
    pub fn normalized(&self, c: Component) -> f64 {
        let total = self.enabled_total();
        if !self.enabled.contains(c) || total <= 0.0 {
            0.0
        } else {
            self.raw(c) / total
        }
    }
}

/// Self-normalising weighted sum over the enabled components, clamped to `[0, 1]`.
pub fn combined_confidence(
    source: f64,
    time: f64,
    consensus: f64,
    weights: &ConfidenceWeights,
) -> Result<f64> {
    let parts = [
        (Component::Source, source),
        (Component::Time, time),
        (Component::Consensus, consensus),
    ];
    let mut num = 0.0;
    let mut den = 0.0;
    for (c, value) in parts {
        if weights.enabled.contains(c) {
            let w = weights.raw(c);
            num += w * value;
            den += w;
        }
    }
    if den <= 0.0 {
        return Err(Error::AllComponentsMasked);
    }
    Ok((num / den).clamp(0.0, 1.0))
}
