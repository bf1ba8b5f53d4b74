#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod exactlin;
pub mod quiveralg;
pub mod bimodcx;
pub mod gallery;
pub mod rootpair;
pub mod completion;
pub mod cluster;
pub mod sample;
