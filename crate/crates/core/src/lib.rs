pub mod arith;
pub mod catalog;
pub mod chartab;
pub mod cli;
pub mod group;
pub mod octonion;
pub mod quaternion;
pub mod signed_perm;
