//! Möbius function of the permutation pattern poset.
//!
//! Permutations and containment live in [`perm`], intervals `[1, π]` in
//! [`interval`], the Möbius engine and length sweeps in [`mobius`], balloon
//! constructions and reductions in [`balloon`], chain enumeration and the
//! parity-reversing involutions in [`chains`], the persistent memo in
//! [`store`], and reproducible checks of the known results in [`verify`].

pub mod balloon;
pub mod chains;
pub mod error;
pub mod interval;
pub mod mobius;
pub mod perm;
pub mod store;
pub mod verify;

pub use balloon::{balloon_2413, balloon_general, core, pi_sequence, unballoon_2413, GeneralBalloonSpec, RedMask};
pub use chains::{Chain, ChainClass};
pub use error::{Error, Result};
pub use interval::Interval;
pub use mobius::{mu, mu_principal, Method, MuOptions, MuResult};
pub use perm::{contains, Permutation};
pub use store::MuCache;
