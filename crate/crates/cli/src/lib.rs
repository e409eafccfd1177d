//! Command-line front end for `quadric-core`: the verification suite,
//! the equivalence deciders, constructors and trefoil plots.

pub mod commands;
pub mod plot;
pub mod report;
pub mod suite;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// A decider answered in the negative.
    pub const NOT: u8 = 1;
    /// A check or construction failed to verify.
    pub const FAILED: u8 = 2;
    /// A check ran out of its internal budget.
    pub const BUDGET: u8 = 3;
    pub const INCONCLUSIVE: u8 = 4;
    /// Bad flags, parse errors, violated parameter constraints.
    pub const USAGE: u8 = 5;
    pub const IO: u8 = 6;
}
