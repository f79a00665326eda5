//! Library half of the `pointbound` command: records snapshots, row
//! builders and rendering.

pub mod output;
pub mod records;
pub mod rows;
