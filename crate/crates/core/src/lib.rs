pub mod error;
pub mod linalg;
pub mod matrix;
pub mod s6;
pub mod canon;
pub mod colored;
pub mod spectral;
pub mod spectrum;
pub mod generator;
pub mod census;
pub mod three_ev;
pub mod equiangular;
pub mod verify;
