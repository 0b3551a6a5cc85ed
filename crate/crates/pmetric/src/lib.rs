//! Exact-arithmetic partial metric spaces.
//!
//! A partial metric allows nonzero self-distance, which makes open-ball
//! membership asymmetric and splits denseness into two inequivalent
//! notions. This crate works with finite spaces and with the Kahn domain
//! of words and streams, entirely over exact rationals: axiom checking,
//! open balls and denseness, sequence classification, the asymmetric
//! one-point extension, Cauchy-sequence completions, and small-instance
//! search.

pub mod completion;
pub mod extension;
pub mod isometry;
pub mod kahn;
pub mod pms;
pub mod rational;
pub mod report;
pub mod repro;
pub mod search;
pub mod seq;
pub mod space;
