// Every chapter becomes a module so `cargo test --doc` runs its listings and a failing
// listing is reported under the chapter it came from.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("src/modules.md")]
pub mod modules {}
#[doc = include_str!("src/linear-spaces.md")]
pub mod linear_spaces {}
#[doc = include_str!("src/blowups.md")]
pub mod blowups {}
#[doc = include_str!("src/finite-maps.md")]
pub mod finite_maps {}
#[doc = include_str!("src/verification.md")]
pub mod verification {}
