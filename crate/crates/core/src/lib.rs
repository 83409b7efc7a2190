//! Multipartite quantum correlations and multiport dense coding for
//! three-qubit pure states.
//!
//! The crate computes the generalized geometric measure, the three-tangle and
//! the discord monogamy score of a state together with its multiport
//! dense-coding advantage, and checks the complementarity relations between
//! them against the maximally dense coding capable (MDCC) family
//! `|000> + |111> + α(|101> + |010>)`.
//!
//! ```
//! use mdcckit::{complementarity, states, Party};
//!
//! let s = states::mdcc(0.5).unwrap();
//! let rec = complementarity::measure_state(
//!     &s, 0, complementarity::ClassTag::Mdcc, Some(0.5), &Default::default(),
//! ).unwrap().record;
//! assert!((rec.ggm - 0.1).abs() < 1e-12);
//! assert!(complementarity::ggm_bound_slack(&rec).unwrap().abs() < 1e-10);
//! # let _ = Party::A;
//! ```

pub mod batch;
pub mod complementarity;
pub mod densecoding;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod optimize;
pub mod party;
pub mod states;

pub use error::{Error, Result};
pub use party::{Party, PartySet};
pub use states::PureState3Q;
