pub mod catalog;
pub mod lattice;
pub mod report;
pub mod root_datum;
pub mod subset;
pub mod weyl;
pub mod classification;
pub mod hecke_gl2;
pub mod scalars;
pub mod satake_param;
pub mod selftest;
