pub mod exact;
pub mod chow;
pub mod chern;
pub mod rr;
pub mod theorems;
pub mod bottcases;
pub mod cli;
