//! Verification toolkit for Engel structures on complex surfaces.

pub mod catalog;
pub mod engelcheck;
pub mod framecalc;
pub mod geiges;
pub mod report;
pub mod trigring;
