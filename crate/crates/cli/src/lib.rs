pub mod bench;
pub mod commands;
pub mod report;
