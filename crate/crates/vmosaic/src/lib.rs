//! File formats, SVG rendering, catalog files and the command line for
//! virtual knot mosaics.

pub mod catalogs;
pub mod cli;
pub mod corpus;
pub mod parallel;
pub mod svg;
pub mod text;
