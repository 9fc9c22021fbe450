//! Weak coloring numbers: scores, exact values and LP-based editing.

pub mod exact;
pub mod lp;
pub mod score;

pub use exact::{exact_wcol, exact_wcol_ordering, wcol_at_most, wcol_by_permutations};
pub use lp::{
    check_beta_feasible, path_catalog, round_wc, wc_beta, wc_edit, BetaFeasibility, WcEditOutcome,
    WcLp, WcRounded,
};
pub use score::{wcol_score, WcolScore};
