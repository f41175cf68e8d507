//! File formats, the bundled dataset, Monte Carlo studies and the command
//! line front end for [`betamodel_core`].

pub mod cli;
pub mod config;
pub mod datasets;
mod error;
pub mod io;
pub mod montecarlo;
pub mod reproduce;

pub use error::{Error, Result};
