//! Executable checks of the spacing limit, the zero inequalities, the
//! large-`k` gap limit and the simplicity of the combination zeros.

mod inequalities;
mod limits;
mod spacing;

pub use inequalities::{
    check_inequality, hypothesis_grid, theorem2_suite, theorem3_suite, InequalityCase, InequalityReport, InequalityRow,
    INEQUALITY_SLACK,
};
pub use limits::{
    gap_limit, gap_limit_grid, lemma_simplicity_check, simplicity, theorem4_suite, zero_properties, zero_property_grid,
    zero_property_suite, GapLimitReport, SimplicityReport, SimplicityRow, ZeroPropertyReport, GAP_LIMIT_BOUND,
    GAP_NOISE_FLOOR,
};
pub use spacing::{
    measured_gap, spacing_verdict, target_subsequence, theorem1_experiment, theorem1_with_table, zero_rows,
    SpacingReport, SpacingRow, TargetHit, Verdict, ZeroRow,
};
