//! Fixed-size and variable-size sliding-window models, streaming algorithms
//! with explicit state encodings, space measurement and Mealy reductions.

pub mod algorithm;
pub mod mealy;
pub mod window;

pub use algorithm::{
    fixed_space_profile, reference_variable_algorithm, trivial_fixed_algorithm,
    variable_space_profile, ReferenceVariable, Runner, Simulation, SpaceProfile,
    StreamingAlgorithm, TrivialFixed,
};
pub use mealy::{left_transduce, reduce_via_mealy, BooleanProduct, MealyMachine, MealyReduction};
pub use window::{last_n, parse_stream, wnd, FixedWindowSpec, Model, StreamToken};
