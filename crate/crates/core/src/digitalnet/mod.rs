//! Base-2 Sobol' nets, linear scrambling and net-quality checks.

mod direction;
mod netcheck;
mod scramble;
mod sobol;

pub use direction::{DimensionEntry, DirectionNumbers, MAX_DEGREE};
pub use netcheck::{check_net, min_t};
pub use scramble::{scramble, LinearScramble, ScrambleRealization};
pub use sobol::{sobol_points, unit_from_digits, DigitalNet, PointSet, MAX_RESOLUTION, OUTPUT_BITS};
