//! File formats, rendering and the command-line front end for
//! [`softcs_core`].

pub mod cli;
pub mod formats;
pub mod render;
