//! Supercharacters and Heisenberg characters of unitriangular groups over
//! finite fields: orbit oracles, lattice-path and set-partition models, and
//! the counting polynomials that tie them together.

pub mod gf;
pub mod bijections;
pub mod combinat;
pub mod counting;
pub mod linalg;
pub mod oracle;
