//! Command-line front end for `robin-square`.

pub mod args;
pub mod commands;
pub mod figures;
pub mod output;
pub mod svg;
pub mod verify;
