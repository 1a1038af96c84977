pub mod alg;
pub mod hensel;
pub mod idem;
pub mod poly;
pub mod ring;
pub mod tower;
pub mod uda;
