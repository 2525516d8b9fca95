pub mod error;
pub mod laurent;
pub mod monodromy;
pub mod root_datum;
pub mod hecke;
pub mod extended;
pub mod ratfunc;
pub mod parabolic;
pub mod subexpr;
pub mod expr;
pub mod oracle;
pub mod verify;
