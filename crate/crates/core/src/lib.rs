pub mod basket;
pub mod birationality;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod sample;
pub mod series;
pub mod verify;

pub use basket::{
    canonical_point, local_contribution, BasketPoint, FormalBasket, PlurigenusProfile, Rational,
};
pub use error::{Error, Result};
