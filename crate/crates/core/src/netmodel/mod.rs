//! Reaction networks: the text format, the network data model and the
//! matrices (Γ, B, N, W) that define the steady-state systems.
//!
//! The text format has one reaction per line:
//!
//! ```text
//! # calcium transfer
//! 0 <-> X1 ; k1, k2
//! X1 + X2 -> 2 X1 ; k3
//! X1 + X3 <-> X4 ; k4, k5
//! X4 -> X2 + X3 ; k6
//! ```
//!
//! Complexes are `+`-separated terms `coef species`, `coef*species` or just
//! `species`; `0` is the empty complex. Rate labels follow `;` and may be
//! omitted, in which case reaction `i` (1-based) is labelled `ki`.

mod matrices;
mod parser;

pub use matrices::NetworkMatrices;
pub use parser::parse_network;

use std::collections::BTreeMap;
use std::fmt;

/// Nonnegative integer combination of species, keyed by species index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Complex {
    coefficients: BTreeMap<usize, u64>,
}

impl Complex {
    pub fn empty() -> Self {
        Complex::default()
    }

    /// Zero coefficients are dropped; repeated species are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut coefficients = BTreeMap::new();
        for (species, coef) in terms {
            if coef > 0 {
                *coefficients.entry(species).or_insert(0) += coef;
            }
        }
        Complex { coefficients }
    }

    pub fn coefficient(&self, species: usize) -> u64 {
        self.coefficients.get(&species).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coefficients.iter().map(|(&s, &c)| (s, c))
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn molecularity(&self) -> u64 {
        self.coefficients.values().sum()
    }

    pub fn render(&self, species: &[String]) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(s, c)| match c {
                1 => species[s].clone(),
                _ => format!("{c} {}", species[s]),
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Reaction {
    pub reactant: Complex,
    pub product: Complex,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactionNetwork {
    species: Vec<String>,
    reactions: Vec<Reaction>,
}

impl ReactionNetwork {
    /// Validates the network invariants: unique species and labels, no
    /// self-loops, every species used, at least one reaction.
    pub fn new(species: Vec<String>, reactions: Vec<Reaction>) -> crate::Result<Self> {
        use crate::Error;
        if reactions.is_empty() {
            return Err(Error::InvalidInput("network has no reactions".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &species {
            if !seen.insert(name) {
                return Err(Error::InvalidInput(format!("duplicate species {name}")));
            }
        }
        let mut labels = std::collections::BTreeSet::new();
        let mut used = vec![false; species.len()];
        for (i, r) in reactions.iter().enumerate() {
            if r.reactant == r.product {
                return Err(Error::InvalidInput(format!("reaction {} is a self-loop", i + 1)));
            }
            if !labels.insert(&r.label) {
                return Err(Error::InvalidInput(format!("duplicate rate label {}", r.label)));
            }
            for (s, _) in r.reactant.terms().chain(r.product.terms()) {
                if s >= species.len() {
                    return Err(Error::InvalidInput(format!("reaction {} uses unknown species {s}", i + 1)));
                }
                used[s] = true;
            }
        }
        if let Some(s) = used.iter().position(|u| !u) {
            return Err(Error::InvalidInput(format!("species {} occurs in no reaction", species[s])));
        }
        Ok(ReactionNetwork { species, reactions })
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn num_reactions(&self) -> usize {
        self.reactions.len()
    }

    /// One reaction as `A + 2 B -> C ; k1`.
    pub fn render_reaction(&self, i: usize) -> String {
        let r = &self.reactions[i];
        format!(
            "{} -> {} ; {}",
            r.reactant.render(&self.species),
            r.product.render(&self.species),
            r.label
        )
    }

    /// Text form that parses back to an identical network.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.reactions.len() {
            out.push_str(&self.render_reaction(i));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ReactionNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Γ, B and the row and conservation bases of a parsed network.
pub fn build_matrices(net: &ReactionNetwork) -> NetworkMatrices {
    NetworkMatrices::from_network(net)
}
