pub mod error;
pub mod algebra;
pub mod classgroup;
pub mod coeffring;
pub mod ideal;
pub mod intlin;
pub mod io;
pub mod monoid;
pub mod subint;
pub mod verify;

pub use error::{Error, Result};
