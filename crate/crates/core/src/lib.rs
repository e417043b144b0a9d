pub mod cli;
pub mod dermodel;
pub mod fistab;
pub mod gradedlie;
pub mod models;
mod oncemap;
pub mod ratlinalg;
pub mod reptheory;
