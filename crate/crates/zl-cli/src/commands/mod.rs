pub mod bounds;
pub mod chain;
pub mod search;
pub mod verify;
