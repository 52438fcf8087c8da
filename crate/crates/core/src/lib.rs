//! A workbench for the calculus of problems and classical propositions.

pub mod cli;
pub mod decision;
pub mod enumerate;
pub mod fixtures;
pub mod formula;
pub mod groupoid;
pub mod kernel;
pub mod kripke;
pub mod medvedev;
pub mod modal;
pub mod translations;
