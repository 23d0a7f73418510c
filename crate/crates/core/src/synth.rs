//! Synthetic networks for property tests and scaling runs.

use rand::Rng;

use crate::netmodel::{Complex, Reaction, ReactionNetwork};

/// Random network with at most `max_species` species and between 1 and
/// `max_reactions` reactions. Complexes use coefficients 0 to 2; species
/// that end up unused are dropped.
pub fn random_network<R: Rng>(rng: &mut R, max_species: usize, max_reactions: usize) -> ReactionNetwork {
    assert!(max_species >= 1 && max_reactions >= 1);
    let n = rng.random_range(1..=max_species);
    let r = rng.random_range(1..=max_reactions);
    let random_complex = |rng: &mut R| {
        Complex::from_terms((0..n).filter_map(|s| {
            if rng.random_bool(0.35) {
                Some((s, rng.random_range(1..=2)))
            } else {
                None
            }
        }))
    };
    let mut reactions = Vec::with_capacity(r);
    while reactions.len() < r {
        let reactant = random_complex(rng);
        let product = random_complex(rng);
        if reactant != product {
            reactions.push((reactant, product));
        }
    }

    let mut used = vec![false; n];
    for (a, b) in &reactions {
        for (s, _) in a.terms().chain(b.terms()) {
            used[s] = true;
        }
    }
    let mut new_index = vec![usize::MAX; n];
    let mut species = Vec::new();
    for s in 0..n {
        if used[s] {
            new_index[s] = species.len();
            species.push(format!("S{}", species.len() + 1));
        }
    }
    let remap = |c: &Complex| Complex::from_terms(c.terms().map(|(s, k)| (new_index[s], k)));
    let reactions = reactions
        .iter()
        .enumerate()
        .map(|(i, (a, b))| Reaction {
            reactant: remap(a),
            product: remap(b),
            label: format!("k{}", i + 1),
        })
        .collect();
    ReactionNetwork::new(species, reactions).expect("generated network is valid")
}

/// Linear chain `0 -> X1 -> X2 -> … -> Xn -> 0` with the first `reversed`
/// internal steps made reversible. `n` species and `n + 1 + reversed`
/// reactions.
pub fn chain_network(n: usize, reversed: usize) -> ReactionNetwork {
    assert!(n >= 1 && reversed < n);
    let species: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let single = |s: usize| Complex::from_terms([(s, 1)]);
    let mut steps = vec![(Complex::empty(), single(0))];
    for i in 0..n - 1 {
        steps.push((single(i), single(i + 1)));
    }
    steps.push((single(n - 1), Complex::empty()));
    for i in 0..reversed {
        steps.push((single(i + 1), single(i)));
    }
    let reactions = steps
        .into_iter()
        .enumerate()
        .map(|(i, (reactant, product))| Reaction {
            reactant,
            product,
            label: format!("k{}", i + 1),
        })
        .collect();
    ReactionNetwork::new(species, reactions).expect("chain network is valid")
}
