//! Seeded random digraphs with independent pair states.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hemireco_core::{Digraph, Error, PairState, Result};

/// Probabilities of the four states of a pair `{i, j}`, `i < j`, read as `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairWeights {
    pub forward: f64,
    pub backward: f64,
    pub full: f64,
    pub void: f64,
}

impl PairWeights {
    pub const UNIFORM: PairWeights = PairWeights {
        forward: 0.25,
        backward: 0.25,
        full: 0.25,
        void: 0.25,
    };

    pub const TOURNAMENT: PairWeights = PairWeights {
        forward: 0.5,
        backward: 0.5,
        full: 0.0,
        void: 0.0,
    };

    fn as_array(self) -> [f64; 4] {
        [self.forward, self.backward, self.full, self.void]
    }

    pub fn validate(self) -> Result<()> {
        let w = self.as_array();
        if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Usage("pair weights must be finite and nonnegative".into()));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Usage(format!("pair weights must sum to 1, got {sum}")));
        }
        Ok(())
    }
}

const STATES: [PairState; 4] = [
    PairState::Forward,
    PairState::Backward,
    PairState::Full,
    PairState::Void,
];

/// Draws the pairs in lexicographic order from a ChaCha8 stream seeded with `seed`.
pub fn random_digraph(n: usize, seed: u64, weights: PairWeights) -> Result<Digraph> {
    weights.validate()?;
    let dist = WeightedIndex::new(weights.as_array())
        .map_err(|e| Error::Usage(format!("pair weights rejected: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match STATES[dist.sample(&mut rng)] {
                PairState::Forward => arcs.push((i, j)),
                PairState::Backward => arcs.push((j, i)),
                PairState::Full => arcs.extend([(i, j), (j, i)]),
                PairState::Void => {}
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}
