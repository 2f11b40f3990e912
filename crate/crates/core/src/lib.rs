pub mod analyze;
pub mod catalog;
pub mod circuit;
pub mod classify;
pub mod compose;
pub mod gate;
pub mod manifest;
pub mod model;
pub mod qasm;
pub mod report;
pub mod run;
pub mod sim;
