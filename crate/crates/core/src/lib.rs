//! Border bases in commutative polynomial rings and in the rational Weyl
//! algebra, with tools for Pfaffian systems and their gauge transforms.

pub mod field;
pub mod weyl;
pub mod order;
pub mod matrix;
pub mod division;
pub mod basis;
pub mod connect;
pub mod hilbert;
pub mod text;
