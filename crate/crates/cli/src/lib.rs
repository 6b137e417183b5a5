//! Command line front end: argument parsing, the result document, and the
//! on-disk cache.

pub mod cache;
pub mod document;
pub mod pipeline;
pub mod run;
