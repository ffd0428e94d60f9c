pub mod edges;
pub mod fim;
pub mod quad;
pub mod solve;
