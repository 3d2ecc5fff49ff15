//! File formats, SVG output, threading and the command-line front end for
//! the `cyclo5` crate.

pub mod cli;
pub mod io;
pub mod json;
pub mod parallel;
pub mod render;
