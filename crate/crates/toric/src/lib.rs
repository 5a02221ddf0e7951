//! Toggle dynamics on graph labelings.
//!
//! A labeling assigns the labels `1..=n` bijectively to the vertices of a
//! simple graph. The toggle of two labels swaps them when they sit on
//! nonadjacent vertices. Composing toggles yields promotion (the
//! consecutive sweep), toric promotion (the sweep plus the wrap-around
//! toggle), its reorderings by a permutation, and jeu-de-taquin slide
//! realizations. This crate implements those operators together with their
//! supporting combinatorics — acyclic orientations with flip and
//! double-flip moves, friends-and-strangers components, orbit censuses —
//! and exhaustive verification suites that exercise the structure theorems
//! on every graph of desk scale.
//!
//! State spaces grow factorially, so every enumeration is capped; see
//! [`Caps`].

pub mod error;
pub mod fs;
pub mod graph;
pub mod labeling;
pub mod ops;
pub mod orbit;
pub mod orient;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, GraphFamily, VertexPartition};
pub use labeling::Labeling;
pub use ops::OperatorSpec;
pub use orbit::{Census, CensusReport, Verdict};
pub use orient::{AcyclicOrientation, MoveKind, OrientationPartition};
pub use verify::{IdentityScope, VerificationScope, DEFAULT_SEED};

/// Enumeration caps. Everything downstream of a cap refuses to run rather
/// than degrade: `n!`-sized state spaces stop being interactive quickly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for exhaustive labeled-tree enumeration.
    pub max_tree_n: usize,
    /// Largest `n` for exhaustive forest enumeration.
    pub max_forest_n: usize,
    /// Largest `n` for friends-and-strangers component searches.
    pub max_fs_n: usize,
    /// Largest `n` for full censuses and linear-extension scans.
    pub max_census_n: usize,
    /// Largest edge count for acyclic-orientation enumeration.
    pub max_orientation_edges: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_tree_n: 8,
            max_forest_n: 7,
            max_fs_n: 8,
            max_census_n: 10,
            max_orientation_edges: 24,
        }
    }
}

/// Name of the environment variable that overrides every vertex-count cap.
pub const CAP_ENV_VAR: &str = "TORIC_MAX_N";

impl Caps {
    /// Default caps, with every vertex-count cap overridden by
    /// [`CAP_ENV_VAR`] when that variable holds a positive integer.
    pub fn from_env() -> Caps {
        let mut caps = Caps::default();
        if let Ok(text) = std::env::var(CAP_ENV_VAR) {
            if let Ok(n) = text.trim().parse::<usize>() {
                if n > 0 {
                    caps.set_max_n(n);
                }
            }
        }
        caps
    }

    /// Sets every vertex-count cap to `n` (edge caps are untouched).
    pub fn set_max_n(&mut self, n: usize) {
        self.max_tree_n = n;
        self.max_forest_n = n;
        self.max_fs_n = n;
        self.max_census_n = n;
    }
}
