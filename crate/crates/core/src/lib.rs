pub mod algebra;
pub mod cli;
pub mod diagrams;
pub mod groups;
pub mod invariants;
pub mod representations;
