//! Sarcasm target extraction.
//!
//! Given a sarcastic sentence, return the words that are the target of
//! ridicule, or `Outside` when the target is not mentioned. Two extractors
//! propose candidates: nine linguistic rules combined by weighted majority,
//! and a per-word linear classifier. An integrator fuses them by union or
//! intersection. The [`evaluation`] module scores systems with exact match
//! and Dice, per rule and per slice, with k-fold cross-validation.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod pipeline;
pub mod rules;
pub mod sentiment;
pub mod statistical;
pub mod text;

pub use error::{Error, Result};
