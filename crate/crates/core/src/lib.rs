pub mod lf;
pub mod lexicon;
pub mod grammar;
pub mod input;
pub mod derivation;
pub mod composer;
pub mod resolver;
pub mod analysis;
pub mod cli;
