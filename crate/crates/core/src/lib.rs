//! Max-distance network creation game.
//!
//! Agents buy edges at price `α` and pay their eccentricity in the induced
//! graph. This crate computes costs exactly (rational `α`, an absorbing
//! infinity for disconnection), decides Nash equilibrium by exhaustive best
//! response, enumerates and searches equilibria, audits the structural
//! properties that equilibrium graphs must satisfy, and computes social
//! optima and the price of anarchy.
//!
//! ```
//! use ncg::{game::{GameConfig, StrategyProfile}, equilibrium::is_nash, rational::int};
//!
//! let config = GameConfig::new(3, int(5)).unwrap();
//! let star = StrategyProfile::from_purchases(3, [(0, 1), (2, 1)]).unwrap();
//! assert!(is_nash(&config, &star).unwrap().is_nash);
//! ```
#![forbid(unsafe_code)]

mod bitgame;
pub mod equilibrium;
pub mod error;
pub mod format;
pub mod game;
pub mod harness;
pub mod optimum;
pub mod rational;
pub mod structure;

pub use error::{Error, ParseError, ParseErrorKind, Result};
