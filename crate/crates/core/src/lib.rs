pub mod algebra;
pub mod error;
pub mod field;
pub mod hermitian;
pub mod local;
pub mod orders;
pub mod phs;
pub mod quaternion;
pub mod suites;
pub mod surface;
pub mod symbolic;
