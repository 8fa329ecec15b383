//! The reduction calculus for finitely presented groups: group terms as
//! atoms, reduction expressions recording rewrite history, the
//! structural reduction operators, and a normalizing strategy with
//! abbreviated trace output.

mod rewrite;
mod term;

pub use rewrite::{
    alg_normalize, ass_apply, ass_element, ass_rewrites, id_apply, id_element, id_rewrites,
    inv_apply, inv_element, inv_rewrites, relator_apply, relator_element, relator_rewrites,
    trace_render, NormalizeError, NormalizeStatus, Redex, RedexKind, Reduction, ReductionStep,
    RelatorIndexError, StepLabel, TraceStyle,
};
pub use term::{
    parse_term, parse_term_with, Dir, GroupTerm, Path, Presentation, PresentationError,
};
