pub mod type_a;
