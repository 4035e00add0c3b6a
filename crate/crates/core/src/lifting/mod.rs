//! Lifting a type-2 or type-4 SDF over `G` to a relative difference family
//! over `G × F_q`.

pub mod fixperm;
pub mod forms;
pub mod qbound;
pub mod solver;
pub mod template;
pub mod witness;

pub use fixperm::{brute_force_fix_permutation, fix_permutation};
pub use forms::{Gaussian, LinearForm, UnitGroup};
pub use qbound::{cyclotomic_solutions, qbound, QBound};
pub use solver::{
    constraint_residues, degenerate_pairs, evaluate, solve_assignment, solve_assignment_with, RepairInfo, SolveOutcome,
    SolveReport, SolverOptions,
};
pub use template::{build_type2_template, build_type4_template, SymbolicPoint, Variable, WitnessTemplate};
pub use witness::{
    default_representatives, is_lift_transversal, lift_to_df, lift_to_df_with, verify_type_witness, WitnessCollection,
};
