pub mod cli;
pub mod degeneration;
pub mod error;
pub mod heisenberg;
pub mod kummer;
pub mod poly;
pub mod siegel;
pub mod theta;
