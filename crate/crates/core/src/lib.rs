//! Exact symbolic computation for the Virasoro algebra and the modules
//! induced from its codimension-one subalgebras `a_z`.

pub mod algebra;
pub mod checks;
pub mod coeff;
pub mod order;
pub mod rep;
pub mod subalg;
