//! Family specs and the pmf file format used by the `idlattice` binary.

pub mod family;
pub mod pmf_file;
