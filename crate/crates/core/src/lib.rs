pub mod algebra;
pub mod catalog;
pub mod designs;
pub mod differences;
pub mod error;
pub mod format;
pub mod lifting;
pub mod ooc;

pub use error::{Error, Result};
