pub mod grid;
pub mod polygon;
pub mod rational;
pub mod shapes;
